"""Likelihood, estimation, conjugate posteriors and word-length selection."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import special, stats

from .distributions import StationaryDistribution, stationary
from .errors import DomainError
from .graph import MAX_SEARCH_ORDER, TransitionSpec, word_of
from .sampler import as_bits, word_indices

#: Fallback estimate for words never visited in the data.
UNIDENTIFIED_FALLBACK = 0.5
#: Largest sequence length accepted by the Fisher information computation.
FISHER_MAX_N = 20
#: Evidence differences below this are treated as ties (smaller order wins).
TIE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class TransitionCounts:
    """``n1[i]`` / ``n0[i]``: transitions out of word ``i`` appending a 1 / a 0."""

    m: int
    n0: np.ndarray
    n1: np.ndarray

    @property
    def visits(self) -> np.ndarray:
        return self.n0 + self.n1

    @property
    def total(self) -> int:
        return int(self.visits.sum())

    def edge_counts(self) -> np.ndarray:
        """Counts of the ``2**(m+1)`` edges, edge ``k`` leaving word ``k // 2`` with letter ``k % 2``."""
        out = np.empty(2 * self.n0.size, dtype=np.int64)
        out[0::2] = self.n0
        out[1::2] = self.n1
        return out

    def __add__(self, other: "TransitionCounts") -> "TransitionCounts":
        if other.m != self.m:
            raise DomainError("cannot add counts of different word lengths")
        return TransitionCounts(self.m, self.n0 + other.n0, self.n1 + other.n1)


def count_transitions(x, m: int) -> TransitionCounts:
    bits = as_bits(x)
    if bits.size < m + 1:
        raise DomainError(f"need at least {m + 1} letters to count transitions for m={m}, got {bits.size}")
    words = word_indices(bits[:-1], m)
    nxt = bits[m:].astype(bool)
    size = 1 << m
    n1 = np.bincount(words[nxt], minlength=size)
    n0 = np.bincount(words[~nxt], minlength=size)
    return TransitionCounts(m, n0, n1)


def log_likelihood(counts: TransitionCounts, spec: TransitionSpec, first_word: int | None = None, pi=None) -> float:
    """Transition log-likelihood, conditional on the first word unless ``first_word`` is given.

    Returns ``-inf`` when a positive count meets a zero probability.
    """
    if counts.m != spec.m:
        raise DomainError(f"counts for m={counts.m} do not match spec with m={spec.m}")
    ll = float(np.sum(special.xlogy(counts.n1, spec.q)) + np.sum(special.xlogy(counts.n0, 1.0 - spec.q)))
    if first_word is not None:
        p = stationary(spec).pi if pi is None else (pi.pi if isinstance(pi, StationaryDistribution) else np.asarray(pi))
        with np.errstate(divide="ignore"):
            ll += float(np.log(p[first_word]))
    return ll


@dataclass(frozen=True, eq=False)
class MLEstimate:
    """Closed-form MLE; entries of unvisited words are unidentified and hold the fallback value."""

    m: int
    q: np.ndarray
    identified: np.ndarray

    @property
    def spec(self) -> TransitionSpec:
        return TransitionSpec(self.m, self.q)


def mle(counts: TransitionCounts) -> MLEstimate:
    visits = counts.visits
    ok = visits > 0
    q = np.full(visits.size, UNIDENTIFIED_FALLBACK)
    q[ok] = counts.n1[ok] / visits[ok]
    return MLEstimate(counts.m, q, ok)


def _edge_pattern_bits(k: int, m: int) -> list[int]:
    src = k >> 1
    return [(src >> (m - 1 - j)) & 1 for j in range(m)] + [k & 1]


def fisher_information(
    spec: TransitionSpec,
    n: int,
    k: int,
    prefactor: str = "squared",
    method: str = "patterns",
    pi=None,
) -> float:
    """Fisher information of edge probability ``p_k`` for a length-``n`` stationary sequence.

    ``I(p_k) = E[n_k] / p_k**2`` where ``n_k`` counts occurrences of edge ``k``
    (word ``k // 2`` followed by letter ``k % 2``).  ``prefactor="linear"``
    gives ``E[n_k] / p_k`` instead, for comparison.  ``method="enumerate"``
    obtains ``E[n_k]`` by summing over all ``2**n`` sequences.
    """
    from .distributions import joint_probability

    m = spec.m
    if not 0 <= k < 2 * spec.size:
        raise DomainError(f"edge index {k} out of range for m={m}")
    if n > FISHER_MAX_N:
        raise DomainError(f"Fisher information is capped at n={FISHER_MAX_N}, got {n}")
    if n < m + 1:
        raise DomainError(f"sequence length must exceed the word length, got n={n}")
    pk = float(spec.edge_probabilities()[k])
    if pk == 0.0:
        raise DomainError(f"edge {k} has zero probability")
    p = stationary(spec).pi if pi is None else pi
    pattern = _edge_pattern_bits(k, m)
    if method == "patterns":
        per_position = joint_probability(spec, pattern, p).value
        expected = (n - m) * per_position
    elif method == "enumerate":
        expected = 0.0
        for code in range(1 << n):
            bits = [(code >> (n - 1 - j)) & 1 for j in range(n)]
            hits = sum(1 for t in range(n - m) if bits[t : t + m + 1] == pattern)
            if hits:
                expected += hits * joint_probability(spec, bits, p).value
    else:
        raise DomainError(f"unknown method {method!r}")
    if prefactor == "squared":
        return expected / pk**2
    if prefactor == "linear":
        return expected / pk
    raise DomainError(f"unknown prefactor {prefactor!r}")


def observed_information(counts: TransitionCounts, spec: TransitionSpec, k: int) -> float:
    """``-d^2 log L / d p_k^2`` treating the edge probabilities as free parameters."""
    return float(counts.edge_counts()[k] / spec.edge_probabilities()[k] ** 2)


def _as_hyper(value, size: int, name: str) -> np.ndarray:
    arr = np.broadcast_to(np.asarray(value, dtype=float), (size,)).copy()
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError(f"prior {name} must be positive")
    return arr


def _log_beta_ratio(n1, n0, alpha, beta) -> np.ndarray:
    return special.betaln(n1 + alpha, n0 + beta) - special.betaln(alpha, beta)


@dataclass(frozen=True, eq=False)
class PosteriorModel:
    """Independent Beta posteriors of the append-1 probabilities."""

    m: int
    alpha: np.ndarray
    beta: np.ndarray
    post_alpha: np.ndarray
    post_beta: np.ndarray
    log_evidence: float

    def mean(self) -> np.ndarray:
        return self.post_alpha / (self.post_alpha + self.post_beta)

    def mean_spec(self) -> TransitionSpec:
        return TransitionSpec(self.m, self.mean())

    def credible_interval(self, level: float = 0.95) -> np.ndarray:
        return credible_interval(self, level)

    def sample(self, seed) -> TransitionSpec:
        return posterior_sample(self, seed)


def posterior(counts: TransitionCounts, alpha=1.0, beta=1.0) -> PosteriorModel:
    """Conjugate Beta update; evidence includes the prior normalising constants."""
    size = counts.n0.size
    a = _as_hyper(alpha, size, "alpha")
    b = _as_hyper(beta, size, "beta")
    log_ev = float(np.sum(_log_beta_ratio(counts.n1, counts.n0, a, b)))
    return PosteriorModel(counts.m, a, b, a + counts.n1, b + counts.n0, log_ev)


def log_evidence(counts: TransitionCounts, alpha=1.0, beta=1.0) -> float:
    return posterior(counts, alpha, beta).log_evidence


def posterior_sample(post: PosteriorModel, seed) -> TransitionSpec:
    rng = np.random.default_rng(seed)
    return TransitionSpec(post.m, rng.beta(post.post_alpha, post.post_beta))


def credible_interval(post: PosteriorModel, level: float = 0.95) -> np.ndarray:
    """Equal-tailed intervals, one ``(lower, upper)`` row per word."""
    if not 0.0 < level < 1.0:
        raise DomainError(f"credible level must lie in (0, 1), got {level}")
    tail = (1.0 - level) / 2.0
    lo = stats.beta.ppf(tail, post.post_alpha, post.post_beta)
    hi = stats.beta.ppf(1.0 - tail, post.post_alpha, post.post_beta)
    return np.column_stack([lo, hi])


def profile_log_likelihood(counts: TransitionCounts) -> float:
    """Log of the likelihood integrated edge by edge over uniform priors, ``prod 1/(n_e + 1)``."""
    return -float(np.sum(np.log(counts.edge_counts() + 1.0)))


def profile_aic(x, m: int) -> float:
    counts = count_transitions(x, m)
    return float(2 ** (m + 1) - 2.0 * profile_log_likelihood(counts))


@dataclass
class ModelSelectionReport:
    orders: list[int]
    aic: dict[int, float]
    log_evidence: dict[int, float]
    log_bayes_factors: np.ndarray
    selected: dict[str, int]
    criterion: str
    skipped: list[int] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.selected[self.criterion]

    def log_bayes_factor(self, mi: int, mj: int) -> float:
        """``log P(x | mi) - log P(x | mj)``."""
        return self.log_evidence[mi] - self.log_evidence[mj]

    def to_dict(self) -> dict:
        return {
            "orders": self.orders,
            "aic": {str(k): v for k, v in self.aic.items()},
            "log_evidence": {str(k): v for k, v in self.log_evidence.items()},
            "log_bayes_factors": self.log_bayes_factors.tolist(),
            "selected": self.selected,
            "criterion": self.criterion,
            "skipped": self.skipped,
        }


def _argbest(orders: Sequence[int], scores: dict[int, float], higher_is_better: bool) -> int:
    best = orders[0]
    for m in orders[1:]:
        diff = scores[m] - scores[best]
        if not higher_is_better:
            diff = -diff
        if diff > TIE_TOL:
            best = m
    return best


def select_order(x, max_m: int = MAX_SEARCH_ORDER, criterion: str = "bayes_factor", alpha=1.0, beta=1.0) -> ModelSelectionReport:
    """Score word lengths ``1..max_m`` by profile AIC and by model evidence."""
    if criterion in ("bayes", "bf"):
        criterion = "bayes_factor"
    if criterion not in ("aic", "bayes_factor"):
        raise DomainError(f"unknown criterion {criterion!r}")
    if not 1 <= max_m <= MAX_SEARCH_ORDER:
        raise DomainError(f"max_m must lie in [1, {MAX_SEARCH_ORDER}]")
    bits = as_bits(x)
    orders = [m for m in range(1, max_m + 1) if bits.size >= m + 1]
    skipped = [m for m in range(1, max_m + 1) if bits.size < m + 1]
    if not orders:
        raise DomainError("sequence too short for any word length")
    aic, ev = {}, {}
    for m in orders:
        counts = count_transitions(bits, m)
        aic[m] = float(2 ** (m + 1) - 2.0 * profile_log_likelihood(counts))
        a = alpha(m) if callable(alpha) else alpha
        b = beta(m) if callable(beta) else beta
        ev[m] = log_evidence(counts, a, b)
    le = np.array([ev[m] for m in orders])
    lbf = le[:, None] - le[None, :]
    selected = {
        "aic": _argbest(orders, aic, higher_is_better=False),
        "bayes_factor": _argbest(orders, ev, higher_is_better=True),
    }
    return ModelSelectionReport(orders, aic, ev, lbf, selected, criterion, skipped)


def independent_word_weights(p1: float, m: int) -> np.ndarray:
    """Word weights treating the letters as independent Bernoulli(``p1``)."""
    words = np.arange(1 << m)
    ones = np.array([bin(w).count("1") for w in words])
    return p1**ones * (1.0 - p1) ** (m - ones)


def predict_next(spec: TransitionSpec, context, pi=None, word_weights=None) -> float:
    """Probability that the next letter is 1 given the most recent letters ``context``.

    With at least ``m`` letters of context this is ``q`` of the last word.  With
    fewer, ``q`` is averaged over the words consistent with the context,
    weighted by ``word_weights`` (default: the stationary distribution).
    """
    if context is None or len(context) == 0:
        bits = []
    else:
        bits = [int(b) for b in as_bits(context)]
    m = spec.m
    if len(bits) >= m:
        return float(spec.q[word_of(bits[-m:])])
    if word_weights is None:
        word_weights = stationary(spec).pi if pi is None else (pi.pi if isinstance(pi, StationaryDistribution) else pi)
    w = np.asarray(word_weights, dtype=float)
    k = len(bits)
    if k == 0:
        keep = np.ones(spec.size, dtype=bool)
    else:
        keep = (np.arange(spec.size) % (1 << k)) == word_of(bits)
    wk = w[keep]
    if wk.sum() <= 0:
        raise DomainError("context has zero probability under the supplied weights")
    return float(np.dot(wk, spec.q[keep]) / wk.sum())
