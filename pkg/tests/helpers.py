"""Independent oracles the test suite trusts over the library under test.

Everything here is deliberately naive: quadratic set arithmetic,
exponential bipartition search, high-precision decimal arithmetic.
Expected values frozen into tests were computed with these (or by hand)
before the corresponding library code was exercised.
"""

from decimal import Decimal, getcontext
from itertools import combinations
from math import gcd


def naive_double(elements) -> set[int]:
    """{a + b : a, b in A} by double loop."""
    return {a + b for a in elements for b in elements}


def naive_restricted(elements) -> set[int]:
    """{a + b : a != b in A} by pair enumeration."""
    return {a + b for a, b in combinations(sorted(set(elements)), 2)}


def is_ap(elements) -> bool:
    e = sorted(elements)
    if len(e) <= 1:
        return True
    d = e[1] - e[0]
    return all(y - x == d for x, y in zip(e, e[1:]))


def _is_d_progression(elements, d: int) -> bool:
    e = sorted(elements)
    if len(e) <= 1:
        return True
    return all(y - x == d for x, y in zip(e, e[1:]))


def brute_two_ap(elements) -> tuple[bool, int | None]:
    """Bipartition oracle: try every 2-coloring of the set and every
    common difference; report the smallest difference that admits a
    split into two progressions (either part may be empty)."""
    e = sorted(set(elements))
    n = len(e)
    span = e[-1] - e[0] if n > 1 else 1
    for d in range(1, span + 1):
        for bits in range(1 << (n - 1)):  # fix e[0] in part 0; halves symmetry
            p0 = [e[0]] + [e[i + 1] for i in range(n - 1) if bits >> i & 1]
            p1 = [e[i + 1] for i in range(n - 1) if not bits >> i & 1]
            if _is_d_progression(p0, d) and _is_d_progression(p1, d):
                return True, d
    return False, None


def golden_leq_oracle(p: int, q: int, n: int) -> bool:
    """(p + q*sqrt(5)) / 2 <= n via 60-digit decimal arithmetic."""
    getcontext().prec = 60
    value = (Decimal(p) + Decimal(q) * Decimal(5).sqrt()) / 2
    return value <= Decimal(n)


def count_normalized_sets(k: int, l: int, need_gcd_one: bool = True) -> int:
    """Count normalized k-sets with span exactly l by raw combinations."""
    total = 0
    for interior in combinations(range(1, l), k - 2):
        if need_gcd_one:
            g = l
            for v in interior:
                g = gcd(g, v)
            if g != 1:
                continue
        total += 1
    return total


def enumerate_bruteforce(k: int, l: int, constraints=()) -> list[tuple[int, ...]]:
    """All normalized k-sets with span exactly l matching the named
    constraints, by unpruned combinations filtering, in lexicographic
    order."""
    cons = set(constraints)
    out = []
    for interior in combinations(range(1, l), k - 2):
        tup = (0,) + interior + (l,)
        if "gcd_one" in cons:
            g = 0
            for v in tup:
                g = gcd(g, v)
            if g != 1:
                continue
        if "growth_a_i_lt_2i" in cons and any(
            tup[i] >= 2 * i for i in range(1, k - 1)
        ):
            continue
        if "interior_lt_2k_minus_4" in cons and any(
            v >= 2 * k - 4 for v in interior
        ):
            continue
        if "last_ge_2k_minus_2" in cons and l < 2 * k - 2:
            continue
        if "last_eq_2k_minus_3" in cons and l != 2 * k - 3:
            continue
        out.append(tup)
    return out
