"""Binary de Bruijn words, adjacency and the transition parameterisation.

Words of length ``m`` are indexed by their binary value with the oldest letter
as the most significant bit, so appending letter ``b`` to word ``i`` gives
``(2*i + b) mod 2**m`` and the string ``"010"`` is word 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import sparse

from .errors import DomainError

#: Largest word length considered by the order-selection search paths.
MAX_SEARCH_ORDER = 10


def n_words(m: int) -> int:
    return 1 << m


def _check_order(m: int) -> None:
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise DomainError(f"word length must be an integer >= 1, got {m!r}")


def _check_word(i: int, m: int) -> None:
    _check_order(m)
    if not 0 <= i < (1 << m):
        raise DomainError(f"word index {i} out of range for m={m}")


def successor(i: int, b: int, m: int) -> int:
    """Word reached from word ``i`` after appending letter ``b``."""
    _check_word(i, m)
    if b not in (0, 1):
        raise DomainError(f"letter must be 0 or 1, got {b!r}")
    return (2 * i + b) % (1 << m)


def predecessors(i: int, m: int) -> tuple[int, int]:
    """The two words that can transition into word ``i``."""
    _check_word(i, m)
    return i >> 1, (i >> 1) + (1 << (m - 1))


def bitflip(i: int, m: int) -> int:
    """Word obtained by swapping every 0 and 1 in word ``i``."""
    return i ^ ((1 << m) - 1)


def word_to_string(i: int, m: int) -> str:
    _check_word(i, m)
    return format(i, f"0{m}b")


def string_to_word(text: str, m: int | None = None) -> int:
    """Parse an ``m``-letter binary word, oldest letter first."""
    text = text.strip()
    if not text or any(c not in "01" for c in text):
        raise DomainError(f"word must be a non-empty string over {{0,1}}, got {text!r}")
    if m is not None and len(text) != m:
        raise DomainError(f"word {text!r} has length {len(text)}, expected {m}")
    return int(text, 2)


def word_of(bits: Sequence[int]) -> int:
    """Word index of a sequence of letters (oldest first)."""
    w = 0
    for b in bits:
        w = 2 * w + int(b)
    return w


@dataclass(frozen=True, eq=False)
class TransitionSpec:
    """Word length ``m`` plus the append-1 probability ``q[i]`` of every word ``i``."""

    m: int
    q: np.ndarray

    def __post_init__(self):
        _check_order(self.m)
        q = np.array(self.q, dtype=float).reshape(-1)
        if q.size != n_words(self.m):
            raise DomainError(f"expected {n_words(self.m)} probabilities for m={self.m}, got {q.size}")
        if not np.all(np.isfinite(q)) or np.any(q < 0.0) or np.any(q > 1.0):
            raise DomainError("transition probabilities must lie in [0, 1]")
        q.setflags(write=False)
        object.__setattr__(self, "q", q)

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "TransitionSpec":
        """Build a spec from ``2**m`` probabilities, inferring ``m``."""
        k = len(values)
        m = k.bit_length() - 1
        if k < 2 or (1 << m) != k:
            raise DomainError(f"number of probabilities must be a power of two >= 2, got {k}")
        return cls(m, np.asarray(values, dtype=float))

    @property
    def size(self) -> int:
        return n_words(self.m)

    def stay_probability(self, i: int) -> float:
        """Probability of a self-loop (only the all-zeros and all-ones words have one)."""
        if i == 0:
            return float(1.0 - self.q[0])
        if i == self.size - 1:
            return float(self.q[i])
        return 0.0

    def flipped(self) -> "TransitionSpec":
        """Spec of the process with letters 0 and 1 exchanged."""
        idx = np.arange(self.size) ^ (self.size - 1)
        return TransitionSpec(self.m, 1.0 - self.q[idx])

    def edge_probabilities(self) -> np.ndarray:
        """Probabilities of the ``2**(m+1)`` edges; edge ``k`` leaves word ``k // 2`` appending ``k % 2``."""
        out = np.empty(2 * self.size)
        out[0::2] = 1.0 - self.q
        out[1::2] = self.q
        return out

    def __repr__(self) -> str:
        vals = ", ".join(f"{v:g}" for v in self.q)
        return f"TransitionSpec(m={self.m}, q=[{vals}])"


def build_matrix(spec: TransitionSpec, dense: bool = False):
    """Row-stochastic ``2**m x 2**m`` transition matrix, CSR unless ``dense``."""
    size = spec.size
    rows = np.repeat(np.arange(size), 2)
    cols = np.empty(2 * size, dtype=np.int64)
    cols[0::2] = (2 * np.arange(size)) % size
    cols[1::2] = (2 * np.arange(size) + 1) % size
    vals = spec.edge_probabilities()
    mat = sparse.csr_matrix((vals, (rows, cols)), shape=(size, size))
    return mat.toarray() if dense else mat
