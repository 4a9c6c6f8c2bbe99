import numpy as np
import pytest

from debruijn_process.errors import BudgetError, DomainError
from debruijn_process.graph import TransitionSpec
from debruijn_process.oracle import (
    EnumerationBudget,
    enumerate_joint,
    oracle_acf,
    oracle_runlength,
    oracle_stationary,
)
from debruijn_process.verify import check_spec, random_ergodic_spec, run_verification

DBP4 = TransitionSpec(2, [0.1, 0.9, 0.1, 0.9])


def test_joint_sums_to_one(rng):
    for m in (1, 2, 3, 4):
        spec = TransitionSpec(m, rng.uniform(0.05, 0.95, 2**m))
        for n in (1, m, 7):
            assert sum(enumerate_joint(spec, n).values()) == pytest.approx(1.0, abs=1e-12)


def test_joint_examples():
    assert enumerate_joint(DBP4, 3)[(1, 0, 1)] == pytest.approx(0.005, abs=1e-15)
    table = enumerate_joint(TransitionSpec(2, [0.5] * 4), 5)
    assert np.allclose(list(table.values()), 2.0**-5)


def test_oracle_acf_examples():
    assert oracle_acf(TransitionSpec(2, [0.5] * 4), 3) == pytest.approx(0.0, abs=1e-15)
    assert oracle_acf(DBP4, 1) == pytest.approx(0.8, abs=1e-12)


def test_oracle_runlength_example():
    assert oracle_runlength(DBP4, 2) == pytest.approx(0.09, abs=1e-15)
    assert oracle_runlength(DBP4, 1, horizon=6) == pytest.approx(0.1, abs=1e-15)
    with pytest.raises(DomainError):
        oracle_runlength(DBP4, 0)
    with pytest.raises(DomainError):
        oracle_runlength(DBP4, 5, horizon=3)


def test_oracle_stationary():
    assert np.allclose(oracle_stationary(DBP4), [0.45, 0.05, 0.05, 0.45], atol=1e-12)


def test_budget_limits():
    small = EnumerationBudget(max_length=5, max_lag=2, max_m=2)
    with pytest.raises(BudgetError):
        enumerate_joint(DBP4, 6, small)
    with pytest.raises(BudgetError):
        oracle_acf(DBP4, 3, small)
    with pytest.raises(BudgetError):
        enumerate_joint(TransitionSpec(3, [0.5] * 8), 3, small)
    with pytest.raises(BudgetError):
        EnumerationBudget(max_length=30).check_length(25)
    with pytest.raises(DomainError):
        enumerate_joint(DBP4, 0)


def test_oracle_imports_only_graph():
    import ast
    import inspect

    from debruijn_process import oracle

    tree = ast.parse(inspect.getsource(oracle))
    local = {node.module for node in ast.walk(tree) if isinstance(node, ast.ImportFrom) and node.level == 1}
    assert local <= {"graph", "errors"}


def test_verification_helpers(rng):
    spec = random_ergodic_spec(rng, 2)
    errs = check_spec(spec, max_length=8, max_lag=4)
    assert max(errs.values()) < 1e-12
    result = run_verification(n_specs=3, seed=1, max_length=8)
    assert result["passed"]
    assert result["failures"] == 0
