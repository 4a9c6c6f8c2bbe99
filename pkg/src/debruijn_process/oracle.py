"""Brute-force enumeration oracles.

Deliberately slow and literal: every probability is a per-path product, and
the stationary distribution comes from an eigen-decomposition rather than the
linear solve used by the analytic modules.  Only the graph module is shared.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import BudgetError, DomainError
from .graph import TransitionSpec, build_matrix


@dataclass(frozen=True)
class EnumerationBudget:
    max_length: int = 12
    max_lag: int = 12
    max_m: int = 4
    max_states: int = 1_000_000

    def check_length(self, n: int) -> None:
        if n > self.max_length or 2**n > self.max_states:
            raise BudgetError(f"enumerating 2^{n} sequences exceeds the budget (max length {self.max_length})")

    def check_order(self, m: int) -> None:
        if m > self.max_m:
            raise BudgetError(f"word length {m} exceeds the oracle budget ({self.max_m})")


DEFAULT_BUDGET = EnumerationBudget()


def oracle_stationary(spec: TransitionSpec) -> np.ndarray:
    """Left Perron eigenvector of the dense transition matrix."""
    tmat = build_matrix(spec, dense=True)
    vals, vecs = np.linalg.eig(tmat.T)
    k = int(np.argmin(np.abs(vals - 1.0)))
    v = np.real(vecs[:, k])
    return v / v.sum()


def _step_probability(spec: TransitionSpec, word: int, letter: int) -> float:
    return float(spec.q[word]) if letter == 1 else float(1.0 - spec.q[word])


def _path_probability(spec: TransitionSpec, pi: np.ndarray, seq: tuple[int, ...]) -> float:
    m = spec.m
    word = 0
    for b in seq[:m]:
        word = word * 2 + b
    prob = float(pi[word])
    for b in seq[m:]:
        prob *= _step_probability(spec, word, b)
        word = (word * 2 + b) % (2**m)
    return prob


def enumerate_joint(spec: TransitionSpec, n: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> dict[tuple[int, ...], float]:
    """Probability of every length-``n`` letter sequence under a stationary start."""
    if n < 1:
        raise DomainError("sequence length must be >= 1")
    budget.check_length(n)
    budget.check_order(spec.m)
    pi = oracle_stationary(spec)
    m = spec.m
    table = {}
    if n >= m:
        for seq in product((0, 1), repeat=n):
            table[seq] = _path_probability(spec, pi, seq)
    else:
        for seq in product((0, 1), repeat=n):
            total = 0.0
            for prefix in product((0, 1), repeat=m - n):
                total += _path_probability(spec, pi, prefix + seq)
            table[seq] = total
    return table


def oracle_autocovariance(spec: TransitionSpec, k: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> float:
    if k < 1 or k > budget.max_lag:
        raise BudgetError(f"lag {k} outside the oracle budget")
    table = enumerate_joint(spec, k + 1, budget)
    both = sum(p for seq, p in table.items() if seq[0] == 1 and seq[-1] == 1)
    p1 = sum(p for seq, p in table.items() if seq[-1] == 1)
    return both - p1 * p1


def oracle_acf(spec: TransitionSpec, k: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> float:
    """Lag-``k`` autocorrelation by summing over all ``(k+1)``-letter windows."""
    table = enumerate_joint(spec, 1, budget)
    p1 = table[(1,)]
    return oracle_autocovariance(spec, k, budget) / (p1 * (1.0 - p1))


def oracle_runlength_table(spec: TransitionSpec, horizon: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> np.ndarray:
    """``P(R = r)`` for ``r = 1..horizon`` by enumerating every continuation path.

    Runs start from each word ending in ``01`` (for m = 1, the word ``1``
    entered from a ``0``), weighted by its stationary probability.  Every
    ``horizon``-letter continuation is enumerated and its probability credited
    to the run length it realises.
    """
    budget.check_length(horizon)
    budget.check_order(spec.m)
    m = spec.m
    pi = oracle_stationary(spec)
    if m == 1:
        starts = {1: 1.0}
    else:
        starts = {w: float(pi[w]) for w in range(2**m) if w % 4 == 1}
    total = sum(starts.values())
    out = np.zeros(horizon + 1)
    for w, weight in starts.items():
        for cont in product((0, 1), repeat=horizon):
            prob = weight / total
            word = w
            for b in cont:
                prob *= _step_probability(spec, word, b)
                word = (word * 2 + b) % (2**m)
            # run = the starting 1 plus the leading 1's of the continuation
            if 0 in cont:
                r = cont.index(0) + 1
                out[r] += prob
    return out[1:]


def oracle_runlength(spec: TransitionSpec, r: int, horizon: int | None = None, budget: EnumerationBudget = DEFAULT_BUDGET) -> float:
    if r < 1:
        raise DomainError("run length must be >= 1")
    horizon = r if horizon is None else horizon
    if horizon < r:
        raise DomainError("horizon must be at least the run length")
    return float(oracle_runlength_table(spec, horizon, budget)[r - 1])
