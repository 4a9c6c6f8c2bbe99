"""Self-check: analytic modules against the enumeration oracles on random specs."""
from __future__ import annotations

import numpy as np

from .distributions import acf, is_ergodic, joint_probability, stationary
from .graph import TransitionSpec
from .oracle import EnumerationBudget, enumerate_joint, oracle_acf, oracle_runlength_table
from .runlength import run_length_model


def random_ergodic_spec(rng: np.random.Generator, m: int, low: float = 0.02, high: float = 0.98) -> TransitionSpec:
    while True:
        spec = TransitionSpec(m, rng.uniform(low, high, 2**m))
        if is_ergodic(spec):
            return spec


def check_spec(spec: TransitionSpec, max_length: int = 12, max_lag: int = 6) -> dict[str, float]:
    """Largest absolute disagreement per quantity."""
    budget = EnumerationBudget(max_length=max_length, max_lag=max_lag)
    pi = stationary(spec)
    joint = 0.0
    for n in range(1, max_length + 1):
        for seq, p in enumerate_joint(spec, n, budget).items():
            joint = max(joint, abs(float(np.exp(joint_probability(spec, seq, pi).log)) - p))
    a = acf(spec, max_lag).correlation
    acf_err = max(abs(a[k - 1] - oracle_acf(spec, k, budget)) for k in range(1, max_lag + 1))
    model = run_length_model(spec)
    r = np.arange(1, max_length + 1)
    rl = float(np.max(np.abs(model.pdf(r) - oracle_runlength_table(spec, max_length, budget))))
    return {"joint": joint, "acf": float(acf_err), "runlength": rl, "normalisation": abs(model.total_mass() - 1.0)}


def run_verification(n_specs: int = 20, seed: int = 0, max_length: int = 12, tol: float = 1e-12, orders=(1, 2, 3)) -> dict:
    rng = np.random.default_rng(seed)
    worst = {"joint": 0.0, "acf": 0.0, "runlength": 0.0, "normalisation": 0.0}
    failures = 0
    for i in range(n_specs):
        spec = random_ergodic_spec(rng, orders[i % len(orders)])
        errs = check_spec(spec, max_length)
        failures += any(v >= tol for v in errs.values())
        for k, v in errs.items():
            worst[k] = max(worst[k], v)
    return {"n_specs": n_specs, "seed": seed, "max_length": max_length, "tolerance": tol, "max_abs_error": worst, "failures": failures, "passed": failures == 0}
