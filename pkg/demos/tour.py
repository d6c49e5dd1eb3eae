"""A guided tour of the library: one set from every angle.

Run:  python3 demos/tour.py
"""

from sumset_lab import (
    FamilySpec,
    IntegerSet,
    NormalizedSet,
    decompose,
    evaluate_bounds,
    extremal_catalog,
    find_admissible_split,
    gap_patterns,
    gen_mod3_wide,
    normalize,
    profile,
    restricted_sumset,
    split_at,
    sumset,
    witness_profile,
)


def section(title: str) -> None:
    print()
    print(title)
    print("-" * len(title))


# -- sumsets ---------------------------------------------------------------

section("Sumsets of {0, 1, 4, 9}")
a = IntegerSet((0, 1, 4, 9))
print("A          ", a.elements)
print("2A = A + A ", sumset(a, a).elements)
print("2^A        ", restricted_sumset(a).elements, "(distinct summands only)")

# -- normalization and bounds ------------------------------------------------

section("Normalization and lower bounds")
raw = IntegerSet((6, 10, 14, 26, 42))
ns, offset, scale = normalize(raw)
print(f"{raw.elements} normalizes to {ns.elements} (offset {offset}, scale {scale})")
prof = profile(ns)
print(f"k={ns.k}, span={ns.l}, |2A|={len(prof.double)}, |2^A|={len(prof.restricted)}")
for name, entry in evaluate_bounds(ns).to_dict()["bounds"].items():
    tag = "tight" if entry["tight"] else ("ok" if entry["satisfied"] else "VIOLATED")
    print(f"  {name:<14} {entry['target']:<10} >= {entry['bound_approx']:<8g} {tag}")

# -- extremal families -------------------------------------------------------

section("Extremal families at k = 6")
for s in extremal_catalog(6):
    print(" ", s.elements, "|2^A| =", len(restricted_sumset(s)))
print("one member by name:", FamilySpec("even_odd", 6, 3).member().elements)
print("the wide generator:", gen_mod3_wide(6).elements, "(span 2k-2, not 2k-3)")

# -- the split argument ------------------------------------------------------

section("Splitting a set with a fast interior element")
b = NormalizedSet((0, 2, 3, 5, 7, 10))
pos = find_admissible_split(b)
st = split_at(b, pos)
print("set        ", b.elements)
print("split at   ", pos, "->", st.left.elements, "+", st.right.elements)
print(f"|2^left| = {st.card_left}, |2^right| = {st.card_right}, "
      f"floor {st.lower_bound} <= |2^A| = {st.card_restricted}")

# -- exceptional values and gaps ----------------------------------------------

section("Missing low sums and the gap window")
g = gen_mod3_wide(6)
gp = gap_patterns(g)
print("set        ", g.elements)
print("window     ", gp.window, "missing", gp.missing.elements)

# -- witnesses and the grid-orbit decomposition -------------------------------

section("Witness decomposition")
c = NormalizedSet((0, 1, 4, 5, 7, 8, 11, 12))
wp = witness_profile(c)
print("set        ", c.elements)
print("witnesses  ", wp.values.elements, "modulus", wp.modulus)
dec = decompose(c, wp.w1, wp.w2)
print("seeds      ", dec.seeds, "x_max", dec.x_max)
print("orbits     ", {v: o.elements for v, o in dec.orbits.items()})
print("rebuilt    ", dec.reconstructed)
