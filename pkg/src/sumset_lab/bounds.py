"""Exact lower bounds for sumsets of normalized sets, and progression tests.

Every verdict here is computed in exact arithmetic.  Half-integral
bounds ride on :class:`fractions.Fraction`; the golden-ratio bound is
kept symbolically as ``(p + q*sqrt(5)) / 2`` and compared through its
defining quadratic, so no floating-point rounding can flip a verdict.

Throughout, ``k`` is the cardinality of a normalized set and ``l`` its
largest element, so ``l >= k - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Union

from .core import (
    IntegerSet,
    NormalizedSet,
    SetDomainError,
    restricted_sumset,
    sumset,
)

__all__ = [
    "GoldenValue",
    "Bound",
    "BoundEntry",
    "BoundReport",
    "doubling_bound",
    "freiman_bound",
    "freiman_lev_bound",
    "halved_span_bound",
    "golden_ratio_bound",
    "narrow_window_bound",
    "bound_satisfied",
    "bound_attained",
    "evaluate_bounds",
    "is_arithmetic_progression",
    "ap_cover_length",
    "is_union_two_aps_same_diff",
]


def _require_dimensions(k: int, l: int, k_floor: int = 3) -> None:
    if k < k_floor:
        raise SetDomainError(f"bound needs k >= {k_floor}, got k={k}")
    if l < k - 1:
        raise SetDomainError(f"a k-set spanning [0, l] needs l >= k-1, got k={k}, l={l}")


@dataclass(frozen=True)
class GoldenValue:
    """The exact number (p + q*sqrt(5)) / 2 with integers p and q >= 0."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 0:
            raise SetDomainError("GoldenValue needs q >= 0")

    def leq_int(self, n: int) -> bool:
        """Whether self <= n, decided by the defining quadratic."""
        d = 2 * n - self.p
        if d < 0:
            return False
        return 5 * self.q * self.q <= d * d

    def eq_int(self, n: int) -> bool:
        """Whether self == n exactly (impossible unless q == 0)."""
        return self.q == 0 and self.p == 2 * n

    def ceil(self) -> int:
        """Smallest integer n with self <= n."""
        n = (self.p + isqrt(5 * self.q * self.q)) // 2
        while not self.leq_int(n):
            n += 1
        return n

    def __float__(self) -> float:
        return (self.p + self.q * 5 ** 0.5) / 2.0


Bound = Union[int, Fraction, GoldenValue]


def doubling_bound(k: int) -> int:
    """Floor for |A + A| over all k-sets: 2k - 1."""
    if k < 1:
        raise SetDomainError(f"doubling bound needs k >= 1, got {k}")
    return 2 * k - 1


def freiman_bound(k: int, l: int) -> int:
    """Floor for |A + A| by span: l + k when l <= 2k - 3, else 3k - 3."""
    _require_dimensions(k, l)
    return l + k if l <= 2 * k - 3 else 3 * k - 3


def freiman_lev_bound(k: int, l: int) -> int:
    """Conjectured floor for the restricted sumset.

    l + k - 2 when l <= 2k - 5, else 3k - 7.  Stated for k > 7; the
    formula itself is defined for all k >= 3 so desk sweeps can probe
    the small cases too.
    """
    _require_dimensions(k, l)
    return l + k - 2 if l <= 2 * k - 5 else 3 * k - 7


def halved_span_bound(k: int, l: int) -> Fraction:
    """Proven half-integral floor for the restricted sumset.

    (l + 3k - 7) / 2 when l <= 2k - 3, else (5k - 10) / 2.
    """
    _require_dimensions(k, l)
    if l <= 2 * k - 3:
        return Fraction(l + 3 * k - 7, 2)
    return Fraction(5 * k - 10, 2)


def golden_ratio_bound(k: int, l: int) -> Bound:
    """Proven floor for the restricted sumset with a golden-ratio slope.

    l + k - 2 when l <= 2k - 5, else (t + 1)k - 6 where t is the golden
    ratio (1 + sqrt(5)) / 2.  The second branch is returned as an exact
    :class:`GoldenValue` ((3k - 12) + k*sqrt(5)) / 2.
    """
    _require_dimensions(k, l)
    if l <= 2 * k - 5:
        return l + k - 2
    return GoldenValue(3 * k - 12, k)


def narrow_window_bound(k: int, l: int) -> int:
    """Proven floor 3k - 7 for the restricted sumset when k >= 5 and
    2k - 4 <= l <= 2k - 3."""
    _require_dimensions(k, l, k_floor=5)
    if not 2 * k - 4 <= l <= 2 * k - 3:
        raise SetDomainError(f"narrow window needs 2k-4 <= l <= 2k-3, got k={k}, l={l}")
    return 3 * k - 7


def bound_satisfied(bound: Bound, n: int) -> bool:
    """Whether the integer cardinality n meets the bound (n >= bound)."""
    if isinstance(bound, GoldenValue):
        return bound.leq_int(n)
    return n >= bound


def bound_attained(bound: Bound, n: int) -> bool:
    """Whether n equals the bound exactly (never true for irrational bounds)."""
    if isinstance(bound, GoldenValue):
        return bound.eq_int(n)
    return n == bound


@dataclass(frozen=True)
class BoundEntry:
    """One bound evaluated against one set.

    ``bound_x2`` is the exact bound scaled by 2 (half-integral bounds
    stay integral); it is ``None`` for irrational bounds, which are
    carried only through their verdicts and ``bound_approx``.
    """

    target: str  # "double" or "restricted"
    bound_x2: Optional[int]
    bound_approx: float
    satisfied: bool
    tight: bool

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "bound_x2": self.bound_x2,
            "bound_approx": self.bound_approx,
            "satisfied": self.satisfied,
            "tight": self.tight,
        }


@dataclass(frozen=True)
class BoundReport:
    """All applicable bounds evaluated against one normalized set."""

    k: int
    l: int
    card_double: int
    card_restricted: int
    entries: dict[str, BoundEntry]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "card_double": self.card_double,
            "card_restricted": self.card_restricted,
            "bounds": {name: e.to_dict() for name, e in sorted(self.entries.items())},
        }


def _entry(target: str, bound: Bound, n: int) -> BoundEntry:
    if isinstance(bound, GoldenValue):
        bound_x2 = None
        approx = float(bound)
    elif isinstance(bound, Fraction):
        bound_x2 = int(bound * 2)
        approx = float(bound)
    else:
        bound_x2 = 2 * bound
        approx = float(bound)
    return BoundEntry(target, bound_x2, approx, bound_satisfied(bound, n), bound_attained(bound, n))


def evaluate_bounds(a: NormalizedSet) -> BoundReport:
    """Evaluate every applicable lower bound against ``a``.

    Requires k >= 3.  The narrow-window entry appears only when its
    hypothesis (k >= 5 and 2k - 4 <= l <= 2k - 3) holds.
    """
    k, l = a.k, a.l
    if k < 3:
        raise SetDomainError(f"bound report needs k >= 3, got k={k}")
    nd = len(sumset(a, a))
    nr = len(restricted_sumset(a))
    entries = {
        "doubling": _entry("double", doubling_bound(k), nd),
        "freiman": _entry("double", freiman_bound(k, l), nd),
        "halved_span": _entry("restricted", halved_span_bound(k, l), nr),
        "golden_ratio": _entry("restricted", golden_ratio_bound(k, l), nr),
        "freiman_lev": _entry("restricted", freiman_lev_bound(k, l), nr),
    }
    if k >= 5 and 2 * k - 4 <= l <= 2 * k - 3:
        entries["narrow_window"] = _entry("restricted", narrow_window_bound(k, l), nr)
    return BoundReport(k, l, nd, nr, entries)


def is_arithmetic_progression(a: "IntegerSet | NormalizedSet") -> tuple[bool, Optional[int]]:
    """Whether the elements form an arithmetic progression.

    Returns ``(True, step)`` for k >= 2, ``(True, None)`` for k == 1,
    and ``(False, None)`` otherwise.
    """
    elems = a.elements
    if not elems:
        raise SetDomainError("empty set has no progression structure")
    if len(elems) == 1:
        return True, None
    d = elems[1] - elems[0]
    for prev, cur in zip(elems, elems[1:]):
        if cur - prev != d:
            return False, None
    return True, d


def ap_cover_length(a: NormalizedSet) -> int:
    """Length of the shortest arithmetic progression containing ``a``.

    A covering progression's difference divides every element; with 0
    present and gcd 1 that difference is 1, so the cover is [0, l] and
    the length is l + 1.
    """
    return a.l + 1


def is_union_two_aps_same_diff(
    a: "IntegerSet | NormalizedSet",
) -> tuple[bool, Optional[int]]:
    """Whether ``a`` splits into two arithmetic progressions sharing one
    common difference, and the smallest workable difference.

    For a fixed difference d, decompose ``a`` into maximal d-runs (an
    element starts a run exactly when ``v - d`` is absent).  Any
    progression with step d inside ``a`` lies within a single maximal
    run, and each maximal run is itself such a progression, so a
    two-progression split exists iff there are at most two runs.
    Singletons count as (length-1) progressions.
    """
    elems = a.elements
    if len(elems) < 2:
        raise SetDomainError("two-progression test needs at least two elements")
    if len(elems) == 2:
        return True, 1
    have = set(elems)
    span = elems[-1] - elems[0]
    for d in range(1, span + 1):
        runs = sum(1 for v in elems if v - d not in have)
        if runs <= 2:
            return True, d
    return False, None
