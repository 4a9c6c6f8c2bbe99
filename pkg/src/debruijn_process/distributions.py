"""Stationary distribution, letter marginals, joint probabilities and the analytic ACF."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Sequence

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .errors import DomainError, ModelError
from .graph import TransitionSpec, build_matrix, word_of

SOLVE_RESIDUAL_TOL = 1e-12
_CLIP_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class StationaryDistribution:
    m: int
    pi: np.ndarray

    def __getitem__(self, i):
        return self.pi[i]

    def __len__(self) -> int:
        return self.pi.size


class LetterMarginals(NamedTuple):
    p0: float
    p1: float


class JointProbability(NamedTuple):
    log: float
    value: float


class ACF(NamedTuple):
    """Lagged moments for lags ``1..kmax`` (index 0 is lag 1)."""

    covariance: np.ndarray
    correlation: np.ndarray


def _positive_graph(spec: TransitionSpec):
    mat = build_matrix(spec)
    mat.eliminate_zeros()
    return mat


def _period(adj: sparse.csr_matrix) -> int:
    # BFS levels; the period is the gcd of level[u] + 1 - level[v] over all edges.
    n = adj.shape[0]
    order, preds = csgraph.breadth_first_order(adj, 0, directed=True, return_predecessors=True)
    level = np.full(n, -1, dtype=np.int64)
    level[0] = 0
    for v in order[1:]:
        level[v] = level[preds[v]] + 1
    g = 0
    coo = adj.tocoo()
    for u, v in zip(coo.row, coo.col):
        g = gcd(g, int(abs(level[u] + 1 - level[v])))
    return g


def check_ergodic(spec: TransitionSpec) -> None:
    """Raise ``ModelError`` unless the positive-probability graph is irreducible and aperiodic."""
    adj = _positive_graph(spec)
    ncomp, labels = csgraph.connected_components(adj, directed=True, connection="strong")
    if ncomp > 1:
        groups = [np.flatnonzero(labels == c).tolist() for c in range(ncomp)]
        raise ModelError(f"transition spec is not irreducible; strongly connected classes: {groups}")
    period = _period(adj)
    if period != 1:
        raise ModelError(f"transition spec is periodic with period {period}")


def is_ergodic(spec: TransitionSpec) -> bool:
    try:
        check_ergodic(spec)
    except ModelError:
        return False
    return True


def stationary(spec: TransitionSpec, check: bool = True) -> StationaryDistribution:
    """Stationary word distribution by a direct linear solve of ``pi (T - I) = 0, sum(pi) = 1``.

    With ``check=False`` the ergodicity test is skipped; a chain with a single
    closed class still has a unique solution, anything else fails the solve.
    """
    if check:
        check_ergodic(spec)
    size = spec.size
    tmat = build_matrix(spec)
    a = (tmat.T - sparse.identity(size, format="csr")).tolil()
    a[size - 1, :] = np.ones(size)
    rhs = np.zeros(size)
    rhs[-1] = 1.0
    try:
        if size <= 1024:
            pi = np.linalg.solve(a.toarray(), rhs)
        else:
            from scipy.sparse.linalg import spsolve

            pi = spsolve(a.tocsc(), rhs)
    except np.linalg.LinAlgError as exc:
        raise ModelError("stationary distribution is not unique") from exc
    if not np.all(np.isfinite(pi)):
        raise ModelError("stationary distribution is not unique")
    if np.any(pi < -_CLIP_TOL):
        raise ModelError(f"stationary solve produced negative mass at words {np.flatnonzero(pi < -_CLIP_TOL).tolist()}")
    pi = np.clip(pi, 0.0, None)
    pi /= pi.sum()
    residual = np.max(np.abs(tmat.T @ pi - pi))
    if residual > SOLVE_RESIDUAL_TOL:
        raise ModelError(f"stationary solve residual {residual:.3g} exceeds tolerance")
    pi.setflags(write=False)
    return StationaryDistribution(spec.m, pi)


def _pi_array(spec: TransitionSpec, pi) -> np.ndarray:
    if pi is None:
        return stationary(spec).pi
    arr = pi.pi if isinstance(pi, StationaryDistribution) else np.asarray(pi, dtype=float)
    if arr.size != spec.size:
        raise DomainError(f"stationary vector has {arr.size} entries, spec has {spec.size} words")
    return arr


def balance_residuals(spec: TransitionSpec, pi) -> dict[str, float]:
    """Largest violation of each of the closed-form word balance relations (m >= 2)."""
    m = spec.m
    if m < 2:
        raise DomainError("balance relations are stated for m >= 2")
    p = _pi_array(spec, pi)
    q = spec.q
    half = 1 << (m - 1)
    full = 1 << m
    out = {
        # pi(0) * q(0) = pi(2^{m-1}) * (1 - q(2^{m-1}))
        "all_zeros": abs(p[0] * q[0] - (1.0 - q[half]) * p[half]),
        "first_one": abs(p[1] - p[half]),
        "last_zero": abs(p[full - 2] - p[half - 1]),
        # pi(2^m - 1) * (1 - q(2^m - 1)) = pi(2^{m-1} - 1) * q(2^{m-1} - 1)
        "all_ones": abs(p[full - 1] * (1.0 - q[full - 1]) - q[half - 1] * p[half - 1]),
    }
    flow = [abs(p[i] + p[i + half] - p[2 * i] - p[2 * i + 1]) for i in range(1, half - 1)]
    out["flow"] = max(flow, default=0.0)
    return out


def letter_marginals(spec: TransitionSpec, pi=None) -> LetterMarginals:
    p = _pi_array(spec, pi)
    p1 = float(np.dot(spec.q, p))
    return LetterMarginals(1.0 - p1, p1)


def marginalize_words(pi, k: int) -> np.ndarray:
    """Distribution of the last ``k`` letters of a stationary word."""
    arr = pi.pi if isinstance(pi, StationaryDistribution) else np.asarray(pi, dtype=float)
    m = arr.size.bit_length() - 1
    if not 1 <= k <= m:
        raise DomainError(f"sub-word length must be in [1, {m}], got {k}")
    return np.bincount(np.arange(arr.size) % (1 << k), weights=arr, minlength=1 << k)


def joint_probability(spec: TransitionSpec, x: Sequence[int], pi=None) -> JointProbability:
    """Probability of observing the letters ``x`` in a stationary de Bruijn process."""
    bits = [int(b) for b in x]
    n = len(bits)
    if n < 1:
        raise DomainError("sequence must contain at least one letter")
    p = _pi_array(spec, pi)
    m = spec.m
    if n < m:
        val = float(marginalize_words(p, n)[word_of(bits)])
        return JointProbability(float(np.log(val)) if val > 0 else -np.inf, val)
    w = word_of(bits[:m])
    with np.errstate(divide="ignore"):
        logp = float(np.log(p[w]))
        mask = spec.size - 1
        for b in bits[m:]:
            step = spec.q[w] if b else 1.0 - spec.q[w]
            logp += float(np.log(step))
            w = ((w << 1) | b) & mask
    return JointProbability(logp, float(np.exp(logp)))


def acf(spec: TransitionSpec, kmax: int, pi=None) -> ACF:
    """Analytic lag-``k`` covariance and correlation of the letters for ``k = 1..kmax``."""
    if kmax < 1:
        raise DomainError(f"kmax must be >= 1, got {kmax}")
    p = _pi_array(spec, pi)
    tmat = build_matrix(spec)
    ends_in_one = (np.arange(spec.size) & 1).astype(float)
    p1 = float(np.dot(p, ends_in_one))
    v = p * ends_in_one
    cov = np.empty(kmax)
    for k in range(kmax):
        v = tmat.T @ v
        cov[k] = float(np.dot(v, ends_in_one)) - p1 * p1
    var = p1 * (1.0 - p1)
    corr = cov / var if var > 0 else np.full(kmax, np.nan)
    return ACF(cov, corr)
