"""Run-length distribution of consecutive 1's, its moments and generating functions.

A run starts when the current word ends in ``01`` (for ``m = 1``: when the
word ``1`` follows a ``0``).  From the start word the walk appends 1's until a
0 is drawn; after ``m - 1`` appended 1's the walk sits in the all-ones word and
the remaining length is geometric with ratio ``q[2**m - 1]``.  Everything is
conditional on a run existing.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import NamedTuple

import numpy as np

from .distributions import StationaryDistribution, stationary
from .errors import DomainError, ModelError
from .graph import TransitionSpec


def start_words(m: int) -> np.ndarray:
    """Words at which a run of 1's begins."""
    if m == 1:
        return np.array([1])
    words = np.arange(1 << m)
    return words[(words & 3) == 1]


@dataclass(frozen=True, eq=False)
class RunLengthModel:
    """``a[r-1] = P(R = r)`` for ``r = 1..m``; beyond ``m`` each step multiplies by ``tail_ratio``."""

    m: int
    a: np.ndarray
    tail_ratio: float
    start_weights: np.ndarray

    def pdf(self, r) -> np.ndarray | float:
        r_arr = np.asarray(r)
        if np.any(r_arr < 1) or np.any(r_arr != np.floor(r_arr)):
            raise DomainError("run length must be an integer >= 1")
        r_int = r_arr.astype(np.int64)
        head = self.a[np.minimum(r_int, self.m) - 1]
        out = np.where(r_int <= self.m, head, self.a[-1] * self.tail_ratio ** np.maximum(r_int - self.m, 0))
        return float(out) if np.ndim(out) == 0 else out

    def tail_mass(self) -> float:
        """Total probability of runs of length ``>= m``."""
        self._require_convergent()
        return float(self.a[-1] / (1.0 - self.tail_ratio))

    def total_mass(self) -> float:
        return float(self.a[:-1].sum()) + self.tail_mass()

    def _require_convergent(self) -> None:
        if self.tail_ratio >= 1.0:
            raise ModelError("all-ones word is absorbing; run-length distribution diverges")

    def raw_moment(self, k: int) -> float:
        """``E[R**k]`` with the geometric tail summed in closed form."""
        self._require_convergent()
        head = sum(r**k * self.a[r - 1] for r in range(1, self.m))
        sums = _geometric_power_sums(self.tail_ratio, k)
        tail = sum(comb(k, i) * self.m ** (k - i) * sums[i] for i in range(k + 1))
        return float(head + self.a[-1] * tail)

    def mean(self) -> float:
        return self.raw_moment(1)

    def factorial_moment2(self) -> float:
        """``E[R(R-1)]``."""
        return self.raw_moment(2) - self.raw_moment(1)

    def variance(self) -> float:
        mu = self.mean()
        return self.factorial_moment2() + mu - mu * mu

    def cumulants(self) -> tuple[float, float, float, float]:
        """First four cumulants, i.e. the derivatives of the CGF at 0."""
        m1, m2, m3, m4 = (self.raw_moment(k) for k in range(1, 5))
        k2 = m2 - m1**2
        k3 = m3 - 3 * m2 * m1 + 2 * m1**3
        k4 = m4 - 4 * m3 * m1 - 3 * m2**2 + 12 * m2 * m1**2 - 6 * m1**4
        return m1, k2, k3, k4

    def pgf(self, y: float) -> float:
        """``E[y**R]``, valid while ``|tail_ratio * y| < 1``."""
        if abs(self.tail_ratio * y) >= 1.0:
            raise DomainError(f"pgf argument {y} outside the radius of convergence")
        head = sum(self.a[r - 1] * y**r for r in range(1, self.m))
        return float(head + self.a[-1] * y**self.m / (1.0 - self.tail_ratio * y))

    def mgf(self, s: float) -> float:
        if self.tail_ratio > 0 and s >= -np.log(self.tail_ratio):
            raise DomainError(f"mgf argument {s} outside the radius of convergence")
        return self.pgf(float(np.exp(s)))

    def cgf(self, s: float) -> float:
        return float(np.log(self.mgf(s)))


def _eulerian(k: int) -> list[int]:
    row = [1]
    for n in range(1, k + 1):
        row = [(i + 1) * (row[i] if i < len(row) else 0) + (n - i) * (row[i - 1] if i >= 1 else 0) for i in range(n)]
    return row


def _geometric_power_sums(t: float, kmax: int) -> list[float]:
    """``S_k = sum_{j>=0} j**k t**j`` for ``k = 0..kmax``."""
    out = [1.0 / (1.0 - t)]
    for k in range(1, kmax + 1):
        eul = _eulerian(k)
        num = sum(c * t ** (i + 1) for i, c in enumerate(eul))
        out.append(num / (1.0 - t) ** (k + 1))
    return out


def run_length_model(spec: TransitionSpec, pi: StationaryDistribution | np.ndarray | None = None) -> RunLengthModel:
    """Boundary coefficients and tail ratio of the run-length distribution of 1's."""
    if pi is None:
        pi = stationary(spec)
    p = pi.pi if isinstance(pi, StationaryDistribution) else np.asarray(pi, dtype=float)
    m = spec.m
    q = spec.q
    mask = spec.size - 1
    starts = start_words(m)
    weights = p[starts].astype(float)
    total = weights.sum()
    if total <= 0:
        raise ModelError("no run of 1's can start under this spec")
    weights = weights / total

    a = np.zeros(m)
    for w, wt in zip(starts, weights):
        state, reach = int(w), 1.0
        for r in range(1, m + 1):
            a[r - 1] += wt * reach * (1.0 - q[state])
            reach *= q[state]
            state = ((state << 1) | 1) & mask
    return RunLengthModel(m, a, float(q[mask]), weights)


def run_length_pdf(spec: TransitionSpec, pi, r):
    return run_length_model(spec, pi).pdf(r)


def run_lengths_of_zeros(spec: TransitionSpec, r, pi=None):
    """Run-length pdf of consecutive 0's, via the letter-swapped spec."""
    flipped = spec.flipped()
    fpi = None
    if pi is not None:
        arr = pi.pi if isinstance(pi, StationaryDistribution) else np.asarray(pi, dtype=float)
        fpi = arr[np.arange(spec.size) ^ (spec.size - 1)]
    return run_length_model(flipped, fpi).pdf(r)


def expected_run_length(model: RunLengthModel) -> float:
    return model.mean()


def run_length_variance(model: RunLengthModel) -> float:
    return model.variance()


class SampleSds(NamedTuple):
    sd_mean: float
    sd_variance: float
    fourth_cumulant: float
    fourth_central_moment: float


def kurtosis_and_sample_sds(model: RunLengthModel, n_runs: int, fourth: str = "cumulant") -> SampleSds:
    """Standard deviations of the sample mean and sample variance of ``n_runs`` run lengths.

    ``sd_variance = sqrt(mu4 / n - var**2 (n - 3) / (n (n - 1)))``.  With
    ``fourth="cumulant"`` (default) ``mu4`` is the fourth derivative of the CGF
    at zero, which reproduces the published two-sd bands; ``fourth="central"``
    uses the fourth central moment, the exact sampling sd for i.i.d. runs.
    """
    if n_runs < 2:
        raise DomainError("need at least two runs")
    if fourth not in ("cumulant", "central"):
        raise DomainError(f"fourth must be 'cumulant' or 'central', got {fourth!r}")
    _, var, _, k4 = model.cumulants()
    mu4 = k4 + 3 * var**2
    n = n_runs
    sd_mean = np.sqrt(var / n)
    inner = (k4 if fourth == "cumulant" else mu4) / n - var**2 * (n - 3) / (n * (n - 1))
    return SampleSds(float(sd_mean), float(np.sqrt(max(inner, 0.0))), float(k4), float(mu4))


def geometric_pmf(p: float, r) -> np.ndarray:
    """Geometric distribution on ``{1, 2, ...}`` with success probability ``p``."""
    r = np.asarray(r, dtype=float)
    return p * (1.0 - p) ** (r - 1)
