"""Automated comment-quality metrics and statistics.

Reference-based scores (ROUGE-L, BLEU-4) are lexical; embedding and judge
scores depend on external capability and degrade to :class:`Unavailable`
rather than fabricating numbers when that capability is absent.
"""

from __future__ import annotations

import hashlib
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import numpy as np

BLEU_EPSILON = 1e-9
BIAS_GATE_THRESHOLD = 0.95


class EvalError(Exception):
    pass


@dataclass(frozen=True)
class Unavailable:
    """A score that could not be computed; carries the reason for audit."""
    reason: str

    def __bool__(self) -> bool:
        return False


Score = "float | Unavailable"


_TOKEN_RE = re.compile(r"\w+")


def metric_tokens(text: str) -> list[str]:
    """Lowercased tokens split at whitespace and punctuation."""
    return _TOKEN_RE.findall(text.lower())


# ---------------------------------------------------------------------------
# ROUGE-L


def rouge_l(candidate: str, reference: str) -> float:
    """LCS F-measure: P = LCS/|cand|, R = LCS/|ref|, F = 2PR/(P+R)."""
    ref = metric_tokens(reference)
    if not ref:
        raise EvalError("rouge_l: empty reference (recall undefined)")
    cand = metric_tokens(candidate)
    if not cand:
        return 0.0
    lcs = _lcs_length(cand, ref)
    p = lcs / len(cand)
    r = lcs / len(ref)
    if p + r == 0.0:
        return 0.0
    return 2.0 * p * r / (p + r)


def _lcs_length(a: list[str], b: list[str]) -> int:
    # two-row dynamic program; O(len(a) * len(b)) time, O(len(b)) space
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0] * (len(b) + 1)
        for j, y in enumerate(b, start=1):
            if x == y:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = max(prev[j], cur[j - 1])
        prev = cur
    return prev[-1]


# ---------------------------------------------------------------------------
# BLEU-4


def bleu_4(candidate: str, reference: str) -> float:
    """Geometric mean of modified 1..4-gram precisions with brevity penalty.

    Zero n-gram matches are smoothed to BLEU_EPSILON; n-gram orders the
    candidate is too short to form are skipped so that bleu_4(x, x) = 1
    for every non-empty x.
    """
    cand = metric_tokens(candidate)
    ref = metric_tokens(reference)
    if not cand:
        return 0.0
    if not ref:
        raise EvalError("bleu_4: empty reference")
    log_sum = 0.0
    orders = 0
    for n in range(1, 5):
        cand_ngrams = _ngrams(cand, n)
        if not cand_ngrams:
            break
        ref_counts = Counter(_ngrams(ref, n))
        cand_counts = Counter(cand_ngrams)
        clipped = sum(min(count, ref_counts[gram]) for gram, count in cand_counts.items())
        precision = max(clipped, BLEU_EPSILON) / len(cand_ngrams)
        log_sum += math.log(precision)
        orders += 1
    if orders == 0:
        return 0.0
    geo_mean = math.exp(log_sum / orders)
    bp = math.exp(1.0 - len(ref) / len(cand)) if len(cand) < len(ref) else 1.0
    return min(bp * geo_mean, 1.0)


def _ngrams(tokens: list[str], n: int) -> list[tuple[str, ...]]:
    return [tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]


# ---------------------------------------------------------------------------
# embedding similarity (greedy token matching)


class TokenEmbedder(Protocol):
    """Maps a token sequence to one vector per token."""

    def embed(self, tokens: Sequence[str]) -> np.ndarray: ...


class HashedEmbedder:
    """Deterministic per-token vectors seeded from a token digest.

    NON-SEMANTIC: equal tokens get identical vectors, different tokens get
    (almost surely) dissimilar ones. Exists so tests and offline runs can
    exercise the similarity plumbing without a real embedding model.
    """

    name = "hashed"

    def __init__(self, dim: int = 64):
        self.dim = dim

    def embed(self, tokens: Sequence[str]) -> np.ndarray:
        vectors = np.empty((len(tokens), self.dim))
        for i, token in enumerate(tokens):
            digest = hashlib.sha256(token.encode("utf-8")).digest()
            seed = int.from_bytes(digest[:8], "big")
            rng = np.random.default_rng(seed)
            v = rng.standard_normal(self.dim)
            vectors[i] = v / np.linalg.norm(v)
        return vectors


def embed_similarity(candidate: str, reference: str,
                     embedder: TokenEmbedder | None) -> float | Unavailable:
    """Greedy-match F-score over token embeddings.

    Precision is the mean over candidate tokens of the best cosine against
    any reference token; recall is symmetric. Negative cosines are floored
    at zero so the score stays in [0, 1].
    """
    if embedder is None:
        return Unavailable("no embedder configured")
    cand = metric_tokens(candidate)
    ref = metric_tokens(reference)
    if not cand or not ref:
        return Unavailable("empty text after tokenization")
    try:
        cv = np.asarray(embedder.embed(cand), dtype=float)
        rv = np.asarray(embedder.embed(ref), dtype=float)
    except Exception as exc:  # embedder failure must not fabricate a score
        return Unavailable(f"embedder failed: {exc}")
    cn = np.linalg.norm(cv, axis=1, keepdims=True)
    rn = np.linalg.norm(rv, axis=1, keepdims=True)
    if not (cn > 0).all() or not (rn > 0).all():
        return Unavailable("embedder produced a zero vector")
    sim = (cv / cn) @ (rv / rn).T
    precision = max(float(sim.max(axis=1).mean()), 0.0)
    recall = max(float(sim.max(axis=0).mean()), 0.0)
    if precision + recall == 0.0:
        return 0.0
    return min(2.0 * precision * recall / (precision + recall), 1.0)


# ---------------------------------------------------------------------------
# judge score


JUDGE_RUBRIC = (
    "You are reviewing a code comment for a maintenance team.\n"
    "Rate how useful the comment is for someone who must modify the code,\n"
    "on a scale from 0 (useless or misleading) to 100 (exactly the context\n"
    "a maintainer needs). Reply with the number only.\n\n"
    "Code:\n{code}\n\nComment:\n{comment}\n"
)

_NUMBER_RE = re.compile(r"\d+(?:\.\d+)?")


def judge_score(candidate: str, code: str, judge) -> float | Unavailable:
    """Ask a judge model to rate usefulness 0-100; map to [0, 1].

    ``judge`` is any callable taking the rubric prompt and returning the
    model's reply text (see llmclient.make_judge). Unparseable replies
    yield Unavailable with the raw reply retained.
    """
    if judge is None:
        return Unavailable("no judge configured")
    prompt = JUDGE_RUBRIC.format(code=code, comment=candidate)
    try:
        reply = judge(prompt)
    except Exception as exc:
        return Unavailable(f"judge failed: {exc}")
    m = _NUMBER_RE.search(reply)
    if m is None:
        return Unavailable(f"no numeric rating in judge reply: {reply!r}")
    value = float(m.group(0))
    return max(0.0, min(value / 100.0, 1.0))


# ---------------------------------------------------------------------------
# completeness ratio


_WS_RE = re.compile(r"\s+")


def completeness_ratio(generated_file: str, original_file: str) -> float:
    """Size ratio of generated to original after removing comments and whitespace."""
    from .corpus import strip_comments

    if not generated_file or not original_file:
        raise EvalError("completeness_ratio requires non-empty inputs")
    gen = _WS_RE.sub("", strip_comments(generated_file))
    orig = _WS_RE.sub("", strip_comments(original_file))
    orig_bytes = len(orig.encode("utf-8"))
    if orig_bytes == 0:
        raise EvalError("original file is empty after removing comments and whitespace")
    return len(gen.encode("utf-8")) / orig_bytes


# ---------------------------------------------------------------------------
# bias gate


@dataclass(frozen=True)
class BiasGateReport:
    fraction_passing: float
    per_variant: list[tuple[float, bool]] = field(default_factory=list)


def bias_gate(base_text: str, variant_texts: list[str],
              embedder: TokenEmbedder | None,
              threshold: float = BIAS_GATE_THRESHOLD) -> BiasGateReport | Unavailable:
    """Robustness check: variant output must stay embedding-similar to base.

    A variant passes when similarity >= threshold (default 0.95). The gate
    cannot run without an embedder; Unavailable propagates.
    """
    if not variant_texts:
        raise EvalError("bias_gate requires at least one variant")
    per_variant: list[tuple[float, bool]] = []
    for text in variant_texts:
        sim = embed_similarity(base_text, text, embedder)
        if isinstance(sim, Unavailable):
            return sim
        per_variant.append((sim, sim >= threshold))
    passing = sum(1 for _, ok in per_variant if ok)
    return BiasGateReport(passing / len(per_variant), per_variant)


# ---------------------------------------------------------------------------
# chi-square test


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    dof: int
    p_value: float


def chi_square_two_tailed(table: Sequence[Sequence[float]]) -> ChiSquareResult:
    """Pearson chi-square test of independence on an r x c count table."""
    rows = [list(map(float, row)) for row in table]
    r = len(rows)
    if r < 2 or any(len(row) != len(rows[0]) for row in rows):
        raise EvalError("chi_square: table must be rectangular with >= 2 rows")
    c = len(rows[0])
    if c < 2:
        raise EvalError("chi_square: table must have >= 2 columns")
    row_sums = [sum(row) for row in rows]
    col_sums = [sum(rows[i][j] for i in range(r)) for j in range(c)]
    total = sum(row_sums)
    for i, s in enumerate(row_sums):
        if s == 0:
            raise EvalError(f"chi_square: row {i} has zero marginal")
    for j, s in enumerate(col_sums):
        if s == 0:
            raise EvalError(f"chi_square: column {j} has zero marginal")
    statistic = 0.0
    for i in range(r):
        for j in range(c):
            expected = row_sums[i] * col_sums[j] / total
            diff = rows[i][j] - expected
            statistic += diff * diff / expected
    dof = (r - 1) * (c - 1)
    return ChiSquareResult(statistic, dof, chi_square_sf(statistic, dof))


def chi_square_sf(statistic: float, dof: int) -> float:
    """Survival function P(X >= statistic) for chi-square with ``dof`` d.f."""
    if statistic < 0 or dof < 1:
        raise EvalError("chi_square_sf: need statistic >= 0 and dof >= 1")
    return _regularized_gamma_q(dof / 2.0, statistic / 2.0)


def _regularized_gamma_q(s: float, x: float) -> float:
    """Upper regularized incomplete gamma Q(s, x) = Gamma(s, x)/Gamma(s)."""
    if x == 0.0:
        return 1.0
    if x < s + 1.0:
        return max(0.0, min(1.0, 1.0 - _gamma_p_series(s, x)))
    return max(0.0, min(1.0, _gamma_q_contfrac(s, x)))


def _gamma_p_series(s: float, x: float, max_iter: int = 500, eps: float = 1e-15) -> float:
    # lower regularized P(s, x) by series expansion around x = 0
    term = 1.0 / s
    total = term
    a = s
    for _ in range(max_iter):
        a += 1.0
        term *= x / a
        total += term
        if abs(term) < abs(total) * eps:
            break
    return total * math.exp(-x + s * math.log(x) - math.lgamma(s))


def _gamma_q_contfrac(s: float, x: float, max_iter: int = 500, eps: float = 1e-15) -> float:
    # upper regularized Q(s, x) by Lentz continued fraction, stable for x > s+1
    tiny = 1e-300
    b = x + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, max_iter + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            break
    return h * math.exp(-x + s * math.log(x) - math.lgamma(s))
