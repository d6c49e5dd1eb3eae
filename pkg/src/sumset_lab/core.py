"""Bit-mask kernels for sumsets of finite sets of nonnegative integers.

A set is carried in two synchronized forms: an ascending tuple of
elements and an arbitrary-precision integer mask whose bit ``v`` is set
exactly when ``v`` is in the set.  On this carrier the pair sumset
``A + B`` is an OR of shifted masks, and the restricted sumset (sums of
two *distinct* elements of ``A``) falls out of the same sweep: while the
shifts accumulate, any value produced by two different shifts is a sum
of two distinct elements, so collecting the overlap plane is enough.

Why the overlap plane is exactly the restricted sumset: a value
``x = a + a'`` with ``a != a'`` is produced by both the shift-by-``a``
plane and the shift-by-``a'`` plane, so it lands in the overlap; a
doubled value ``2a`` with no other representation is produced by the
single shift-by-``a`` plane only, so it stays out.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Optional, Sequence

__all__ = [
    "MAX_ELEMENT",
    "SetDomainError",
    "IntegerSet",
    "NormalizedSet",
    "SumsetProfile",
    "mask_of",
    "elements_of",
    "double_mask",
    "restricted_mask",
    "double_size",
    "restricted_size",
    "sumset",
    "restricted_sumset",
    "normalize",
    "reflect",
    "profile",
    "parse_set_literal",
    "format_set_literal",
]

# Largest element accepted from external input.  Internal results (sumsets)
# may exceed it.  Reassign before constructing sets if you need more room.
MAX_ELEMENT = 4096


class SetDomainError(ValueError):
    """An input set violates a precondition of the requested operation."""


def mask_of(elements: Iterable[int]) -> int:
    """Pack elements into a bit mask (bit v set iff v is present)."""
    m = 0
    for v in elements:
        m |= 1 << v
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    """Unpack a bit mask into an ascending tuple of elements."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def double_mask(mask: int, elements: Iterable[int]) -> int:
    """Mask of {x + e : bit x set in mask, e in elements}."""
    acc = 0
    for v in elements:
        acc |= mask << v
    return acc


def restricted_mask(mask: int, elements: Iterable[int]) -> int:
    """Mask of sums of two distinct elements (elements must match mask)."""
    acc = 0
    twice = 0
    for v in elements:
        sh = mask << v
        twice |= acc & sh
        acc |= sh
    return twice


def double_size(elements: Sequence[int]) -> int:
    """|A + A| straight from an element sequence (hot path for sweeps)."""
    m = mask_of(elements)
    return double_mask(m, elements).bit_count()


def restricted_size(elements: Sequence[int]) -> int:
    """|{a + a' : a != a' in A}| straight from an element sequence."""
    m = mask_of(elements)
    return restricted_mask(m, elements).bit_count()


class IntegerSet:
    """Immutable finite set of nonnegative integers.

    Keeps the ascending element tuple and the bit mask in sync.  Empty
    sets are allowed (several derived sets, such as the low missing-sum
    window, can be empty); most kernels require more.
    """

    __slots__ = ("_elements", "_mask")

    def __init__(self, elements: Iterable[int] = ()):
        elems = tuple(sorted({int(v) for v in elements}))
        if elems:
            if elems[0] < 0:
                raise SetDomainError(f"elements must be nonnegative, got {elems[0]}")
            if elems[-1] > MAX_ELEMENT:
                raise SetDomainError(
                    f"element {elems[-1]} exceeds the supported maximum {MAX_ELEMENT}"
                )
        self._elements = elems
        self._mask = mask_of(elems)

    @classmethod
    def _from_trusted(cls, elements: tuple[int, ...], mask: int) -> "IntegerSet":
        """Internal constructor for data already in canonical form."""
        obj = cls.__new__(cls)
        obj._elements = elements
        obj._mask = mask
        return obj

    @classmethod
    def from_mask(cls, mask: int) -> "IntegerSet":
        """Build from a bit mask.  Trusted path: no range re-check."""
        if mask < 0:
            raise SetDomainError("mask must be nonnegative")
        return cls._from_trusted(elements_of(mask), mask)

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elements

    @property
    def mask(self) -> int:
        return self._mask

    @property
    def min(self) -> int:
        if not self._elements:
            raise SetDomainError("empty set has no minimum")
        return self._elements[0]

    @property
    def max(self) -> int:
        if not self._elements:
            raise SetDomainError("empty set has no maximum")
        return self._elements[-1]

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self._elements)

    def __contains__(self, value: object) -> bool:
        return isinstance(value, int) and 0 <= value and bool(self._mask >> value & 1)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntegerSet):
            return self._mask == other._mask
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._mask)

    def __repr__(self) -> str:
        return f"IntegerSet({format_set_literal(self)})"


class NormalizedSet:
    """An IntegerSet in hypothesis form: smallest element 0 and gcd 1.

    ``k`` is the cardinality and ``l`` the largest element, so the set
    spans ``[0, l]`` and every covering arithmetic progression has
    difference 1.
    """

    __slots__ = ("_inner",)

    def __init__(self, elements: "Iterable[int] | IntegerSet"):
        inner = elements if isinstance(elements, IntegerSet) else IntegerSet(elements)
        if len(inner) < 2:
            raise SetDomainError("a normalized set needs at least two elements")
        if inner.min != 0:
            raise SetDomainError(f"a normalized set starts at 0, got min {inner.min}")
        g = 0
        for v in inner.elements:
            g = gcd(g, v)
        if g != 1:
            raise SetDomainError(f"a normalized set has gcd 1, got gcd {g}")
        self._inner = inner

    @property
    def inner(self) -> IntegerSet:
        return self._inner

    @property
    def elements(self) -> tuple[int, ...]:
        return self._inner.elements

    @property
    def mask(self) -> int:
        return self._inner.mask

    @property
    def k(self) -> int:
        return len(self._inner)

    @property
    def l(self) -> int:
        return self._inner.max

    def __len__(self) -> int:
        return len(self._inner)

    def __iter__(self) -> Iterator[int]:
        return iter(self._inner)

    def __contains__(self, value: object) -> bool:
        return value in self._inner

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NormalizedSet):
            return self._inner == other._inner
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._inner)

    def __repr__(self) -> str:
        return f"NormalizedSet({format_set_literal(self)})"


def _carrier(a: "IntegerSet | NormalizedSet") -> IntegerSet:
    return a.inner if isinstance(a, NormalizedSet) else a


def sumset(a: "IntegerSet | NormalizedSet", b: "IntegerSet | NormalizedSet") -> IntegerSet:
    """Full pair sumset {x + y : x in a, y in b}."""
    a, b = _carrier(a), _carrier(b)
    if not len(a) or not len(b):
        raise SetDomainError("sumset of an empty set is undefined")
    if len(a) < len(b):
        a, b = b, a
    return IntegerSet.from_mask(double_mask(a.mask, b.elements))


def restricted_sumset(a: "IntegerSet | NormalizedSet") -> IntegerSet:
    """Sums of two distinct elements of a."""
    a = _carrier(a)
    if len(a) < 2:
        raise SetDomainError("restricted sumset needs at least two elements")
    return IntegerSet.from_mask(restricted_mask(a.mask, a.elements))


def normalize(a: "IntegerSet | NormalizedSet") -> tuple[NormalizedSet, int, int]:
    """Translate the minimum to 0 and divide out the gcd of the rest.

    Returns ``(normalized, offset, scale)`` with
    ``a = {scale * v + offset : v in normalized}``.  Cardinalities of
    sumsets are invariant under this affine change, so every bound and
    classification can be computed on the normalized form.
    """
    a = _carrier(a)
    if len(a) < 2:
        raise SetDomainError("normalization needs at least two elements")
    offset = a.min
    shifted = [v - offset for v in a.elements]
    scale = 0
    for v in shifted:
        scale = gcd(scale, v)
    elems = tuple(v // scale for v in shifted)
    norm = NormalizedSet(IntegerSet._from_trusted(elems, mask_of(elems)))
    return norm, offset, scale


def reflect(a: NormalizedSet) -> NormalizedSet:
    """Mirror through the span: the normalized form of {l - v : v in a}.

    Reflection preserves the cardinality of both sumsets, so extremal
    families come in mirror pairs.
    """
    mirrored = IntegerSet(a.l - v for v in a.elements)
    return normalize(mirrored)[0]


@dataclass(frozen=True)
class SumsetProfile:
    """Sumset data of one normalized set.

    ``exceptional`` lists the values in ``[1, 2k-4]`` that the
    restricted sumset of the set *minus its largest element* fails to
    reach; it is ``None`` for k < 3 where that window is empty.
    """

    source: NormalizedSet
    double: IntegerSet
    restricted: IntegerSet
    exceptional: Optional[IntegerSet]


def exceptional_mask(elements: Sequence[int], k: int) -> int:
    """Mask of [1, 2k-4] minus the restricted sumset of elements[:-1]."""
    head = elements[:-1]
    reach = restricted_mask(mask_of(head), head)
    window = ((1 << (2 * k - 3)) - 1) ^ 1
    return window & ~reach


def profile(a: NormalizedSet) -> SumsetProfile:
    """Compute both sumsets and the low missing-sum window of ``a``."""
    double = sumset(a, a)
    restricted = restricted_sumset(a)
    exceptional = None
    if a.k >= 3:
        exceptional = IntegerSet.from_mask(exceptional_mask(a.elements, a.k))
    return SumsetProfile(a, double, restricted, exceptional)


def parse_set_literal(text: str) -> IntegerSet:
    """Parse a brace literal such as "{0, 1, 4, 9}" into an IntegerSet."""
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise SetDomainError(f"set literal must be brace-delimited, got {text!r}")
    body = s[1:-1].strip()
    if not body:
        return IntegerSet()
    try:
        values = [int(p.strip()) for p in body.split(",")]
    except ValueError:
        raise SetDomainError(f"set literal holds a non-integer part: {text!r}") from None
    return IntegerSet(values)


def format_set_literal(a: "IntegerSet | NormalizedSet") -> str:
    """Render as a canonical brace literal, ascending, no spaces."""
    return "{%s}" % ",".join(str(v) for v in _carrier(a).elements)
