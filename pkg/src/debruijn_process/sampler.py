"""Seeded simulation of de Bruijn processes and empirical sequence statistics."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .distributions import stationary
from .errors import DataError, DomainError
from .graph import TransitionSpec, string_to_word


@dataclass(eq=False)
class BitSequence:
    """Ordered binary observations, optionally with one timestamp per letter."""

    bits: np.ndarray
    timestamps: list | None = None
    label: str | None = None

    def __post_init__(self):
        arr = np.asarray(self.bits)
        if arr.ndim != 1 or arr.size < 1:
            raise DataError("a bit sequence needs at least one letter")
        if not np.all((arr == 0) | (arr == 1)):
            raise DataError("bit sequences may only contain 0 and 1")
        self.bits = arr.astype(np.uint8)
        if self.timestamps is not None and len(self.timestamps) != arr.size:
            raise DataError("timestamps must match the number of letters")

    @classmethod
    def from_string(cls, text: str, **kwargs) -> "BitSequence":
        return cls(np.array([int(c) for c in text if c in "01"], dtype=np.uint8), **kwargs)

    def __len__(self) -> int:
        return int(self.bits.size)

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)


def as_bits(x) -> np.ndarray:
    if isinstance(x, BitSequence):
        return x.bits
    if isinstance(x, str):
        return BitSequence.from_string(x).bits
    return BitSequence(np.asarray(x)).bits


@dataclass(frozen=True)
class SimulationConfig:
    """Length, seed and initialisation of a simulation.

    ``start`` is ``"stationary"`` (first word drawn from the stationary
    distribution), a fixed word given as an index or binary string, or
    ``"burnin=K"`` (uniform first word, then ``K`` discarded letters).
    """

    n: int
    seed: int = 0
    start: str | int = "stationary"

    def burnin(self) -> int | None:
        if isinstance(self.start, str) and self.start.startswith("burnin="):
            k = int(self.start.split("=", 1)[1])
            if k < 0:
                raise DomainError("burn-in length must be non-negative")
            return k
        return None


def _run_chain(q: np.ndarray, m: int, first_word: int, steps: int, u: np.ndarray) -> np.ndarray:
    mask = (1 << m) - 1
    out = np.empty(steps, dtype=np.uint8)
    ql = q.tolist()
    ul = u.tolist()
    w = first_word
    for t in range(steps):
        b = 1 if ul[t] < ql[w] else 0
        out[t] = b
        w = ((w << 1) | b) & mask
    return out


def _word_bits(w: int, m: int) -> np.ndarray:
    return np.array([(w >> (m - 1 - j)) & 1 for j in range(m)], dtype=np.uint8)


def simulate(spec: TransitionSpec, config: SimulationConfig) -> BitSequence:
    """Draw ``config.n`` letters; identical ``(spec, config)`` gives identical output."""
    m = spec.m
    if config.n < m:
        raise DomainError(f"sequence length {config.n} shorter than word length {m}")
    rng = np.random.default_rng(config.seed)
    burn = config.burnin()
    if burn is not None:
        first = int(rng.integers(0, spec.size))
    elif config.start == "stationary":
        pi = stationary(spec).pi
        first = int(rng.choice(spec.size, p=pi))
        burn = 0
    else:
        first = config.start if isinstance(config.start, int) else string_to_word(config.start, m)
        if not 0 <= first < spec.size:
            raise DomainError(f"start word {first} out of range for m={m}")
        burn = 0
    steps = burn + config.n - m
    tail = _run_chain(spec.q, m, first, steps, rng.random(steps))
    bits = np.concatenate([_word_bits(first, m), tail])[burn:]
    return BitSequence(bits)


def simulate_bernoulli(p: float, config: SimulationConfig) -> BitSequence:
    """Word length 0: independent Bernoulli(``p``) letters."""
    if not 0.0 <= p <= 1.0:
        raise DomainError("probability must lie in [0, 1]")
    if config.n < 1:
        raise DomainError("sequence length must be >= 1")
    rng = np.random.default_rng(config.seed)
    return BitSequence((rng.random(config.n) < p).astype(np.uint8))


def replicate_seeds(seed: int, count: int) -> list[int]:
    """Independent child seeds for replicate simulations."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]


def empirical_run_lengths(x, letter: int = 1, include_censored: bool = False) -> list[int]:
    """Lengths of maximal runs of ``letter``; runs touching either end are censored by default."""
    bits = as_bits(x)
    hit = (bits == letter).astype(np.int8)
    edges = np.diff(np.concatenate([[0], hit, [0]]))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    runs = []
    for s, e in zip(starts, ends):
        if not include_censored and (s == 0 or e == bits.size):
            continue
        runs.append(int(e - s))
    return runs


def run_length_histogram(runs: Iterable[int], r_max: int | None = None) -> np.ndarray:
    """Counts indexed by run length (index 0 unused)."""
    runs = list(runs)
    top = max(runs, default=0) if r_max is None else r_max
    counts = np.zeros(top + 1, dtype=np.int64)
    for r in runs:
        if r <= top:
            counts[r] += 1
    return counts


def empirical_acf(x, kmax: int) -> np.ndarray:
    """Sample autocorrelation for lags ``1..kmax`` (biased covariance estimator)."""
    bits = as_bits(x).astype(float)
    n = bits.size
    if not 1 <= kmax < n:
        raise DomainError(f"kmax must lie in [1, {n - 1}]")
    d = bits - bits.mean()
    c0 = float(np.dot(d, d)) / n
    if c0 == 0.0:
        raise DataError("autocorrelation of a constant sequence is undefined")
    return np.array([float(np.dot(d[:-k], d[k:])) / n / c0 for k in range(1, kmax + 1)])


def word_indices(x, m: int) -> np.ndarray:
    """Index of every sliding ``m``-letter window."""
    bits = as_bits(x).astype(np.int64)
    n = bits.size
    if n < m:
        raise DomainError(f"sequence of length {n} has no words of length {m}")
    idx = np.zeros(n - m + 1, dtype=np.int64)
    for j in range(m):
        idx = (idx << 1) | bits[j : n - m + 1 + j]
    return idx


def empirical_word_frequencies(x, m: int) -> np.ndarray:
    idx = word_indices(x, m)
    return np.bincount(idx, minlength=1 << m) / idx.size


def concatenate(parts: Sequence[BitSequence]) -> BitSequence:
    return BitSequence(np.concatenate([p.bits for p in parts]))
