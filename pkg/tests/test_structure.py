"""Structural checkers: exceptional sets, gap patterns, witnesses, splits."""

from fractions import Fraction

import pytest

from sumset_lab.core import IntegerSet, NormalizedSet, SetDomainError, restricted_size
from sumset_lab.families import gen_mod3_wide
from sumset_lab.structure import (
    check_exceptional_points,
    decompose,
    diff3_exception_case,
    exceptional_growth_ok,
    exceptional_profile,
    find_admissible_split,
    gap_patterns,
    has_dense_prefix,
    matches_consecutive_exception,
    offset_count_bound,
    split_at,
    tail_pair_counts_ok,
    top_gap_candidates,
    top_gap_structure,
    witness_profile,
)

GEN6 = NormalizedSet((0, 1, 3, 4, 7, 10))
# k=13 set whose window misses a distance-3 pair (found by search, frozen)
DIFF3_13 = NormalizedSet((0, 1, 3, 4, 6, 9, 10, 12, 13, 15, 18, 21, 24))
# consecutive-gap set from the k=8 sweep (frozen)
CONSEC_8 = NormalizedSet((0, 1, 2, 5, 6, 7, 11, 14))


# ---------------------------------------------------------------------------
# dense-prefix gate


def test_has_dense_prefix():
    assert has_dense_prefix(GEN6)
    assert not has_dense_prefix(NormalizedSet((0, 1, 4, 5, 6, 9)))  # top too low
    assert not has_dense_prefix(NormalizedSet((0, 2, 3, 5, 7, 10)))  # a_1 = 2 >= 2


def test_checkers_reject_out_of_regime():
    with pytest.raises(SetDomainError):
        exceptional_profile(NormalizedSet((0, 1, 4, 5, 6, 9)))


# ---------------------------------------------------------------------------
# exceptional profile and pointwise laws


def test_exceptional_profile_frozen():
    prof = exceptional_profile(GEN6)
    assert prof.b_values.elements == (2, 6)
    assert prof.m == 2
    # offsets measured against b_{m-1} = 2: 8+1=9 missed, 8+2=10 covered
    assert prof.d_values.elements == (2,)
    assert prof.c_values.elements == (1,)


def test_exceptional_profile_single_b_has_no_offsets():
    prof = exceptional_profile(NormalizedSet((0, 1, 4)))
    assert prof.b_values.elements == (2,)
    assert prof.m == 1
    assert prof.d_values.elements == () and prof.c_values.elements == ()


def test_check_exceptional_points_clean():
    assert check_exceptional_points(GEN6) == []
    assert check_exceptional_points(NormalizedSet((0, 1, 4))) == []
    assert check_exceptional_points(DIFF3_13) == []


def test_exceptional_growth_frozen():
    assert exceptional_growth_ok(GEN6)  # (2, 6): 6 >= 2*2+2
    assert exceptional_growth_ok(DIFF3_13)  # (2, 8, 20)


def test_tail_pair_counts_frozen():
    # b=2 < k-2=4, u=1: 2k-4+u = 9 missed, interval [3,6] holds {3,4}
    assert tail_pair_counts_ok(GEN6, 2, 1) is True
    # u=2: 2k-4+u = 10 is covered -> vacuous
    assert tail_pair_counts_ok(GEN6, 2, 2) is True
    # out of hypothesis: b=6 is not below k-2
    assert tail_pair_counts_ok(GEN6, 6, 1) is None
    # out of hypothesis: b not in B
    assert tail_pair_counts_ok(GEN6, 4, 1) is None
    assert tail_pair_counts_ok(GEN6, 2, 3) is None  # u > b


# ---------------------------------------------------------------------------
# gap patterns and their exceptional shapes


def test_gap_patterns_frozen():
    gp = gap_patterns(GEN6)
    assert gp.window == (9, 10)
    assert gp.missing.elements == (9,)
    assert not (gp.has_consecutive or gp.has_diff2 or gp.has_diff3)


def test_gap_patterns_need_two_exceptional_values():
    with pytest.raises(SetDomainError):
        gap_patterns(NormalizedSet((0, 1, 4)))


def test_diff3_case_frozen():
    gp = gap_patterns(DIFF3_13)
    assert gp.window == (23, 30)
    assert gp.missing.elements == (26, 29)
    assert gp.has_diff3 and not gp.has_diff2 and not gp.has_consecutive
    assert diff3_exception_case(DIFF3_13) == 1
    assert diff3_exception_case(GEN6) is None


def test_consecutive_exception_frozen():
    gp = gap_patterns(CONSEC_8)
    assert gp.has_consecutive
    assert matches_consecutive_exception(CONSEC_8)
    # three exceptional values -> wrong arity for the consecutive shape
    assert not matches_consecutive_exception(DIFF3_13)


def test_offset_count_bound():
    assert offset_count_bound(2) == Fraction(1)
    assert offset_count_bound(8) == Fraction(6)
    assert offset_count_bound(6) == Fraction(4)


# ---------------------------------------------------------------------------
# top-gap characterization


def test_top_gap_candidates_frozen():
    names = {c.name: c for c in top_gap_candidates(5)}
    assert set(names) == {"two_blocks_odd"}
    assert names["two_blocks_odd"].head == (0, 1, 3, 4)
    assert names["two_blocks_odd"].b_values == (2, 6)
    names6 = {c.name: c for c in top_gap_candidates(6)}
    assert set(names6) == {"three_blocks_mod0"}
    assert names6["three_blocks_mod0"].head == (0, 1, 3, 4, 6)
    names7 = {c.name: c for c in top_gap_candidates(7)}
    assert set(names7) == {"two_blocks_odd", "three_blocks_mod1"}
    assert names7["three_blocks_mod1"].head == (0, 1, 3, 4, 7, 8)
    assert names7["two_blocks_odd"].head == (0, 1, 2, 5, 6, 7)


def test_top_gap_structure_frozen():
    # the two-block odd shape at k=5 with any admissible top
    a = NormalizedSet((0, 1, 3, 4, 8))
    gap, case = top_gap_structure(a)
    assert gap and case == "two_blocks_odd"
    # gen6 covers 2k-2+b: no double gap
    gap, case = top_gap_structure(GEN6)
    assert not gap and case == "none"


# ---------------------------------------------------------------------------
# witnesses and the grid-orbit decomposition


def test_witness_profile_frozen():
    wp = witness_profile(NormalizedSet((0, 1, 4, 5, 6, 9)))
    assert wp.values.elements == (3, 8)
    assert (wp.w1, wp.w2, wp.modulus) == (3, 8, 1)


def test_witness_profile_empty():
    wp = witness_profile(NormalizedSet((0, 1, 2, 3)))
    assert wp.values.elements == () and wp.w1 is None


def test_decompose_modulus_one_frozen():
    a = NormalizedSet((0, 1, 4, 5, 6, 9))
    dec = decompose(a, 3, 8)
    assert dec.modulus == 1
    assert dec.seeds == (4,)
    assert dec.x_max == 4
    assert dec.orbit_tables[4] == ((4, 0), (0, 1), (5, 1), (1, 2), (6, 2))
    assert dec.orbits[4].elements == (0, 1, 4, 5, 6)
    assert dec.residues.elements == ()
    assert dec.reconstructed


def test_decompose_modulus_four_frozen():
    # from the k=8 witness sweep: W = {2, 10}, top 12, m = gcd(8, 12) = 4
    a = NormalizedSet((0, 1, 4, 5, 7, 8, 11, 12))
    wp = witness_profile(a)
    assert wp.values.elements == (2, 10) and wp.modulus == 4
    dec = decompose(a, 2, 10)
    assert dec.modulus == 4
    assert dec.seeds == (5, 11)
    assert dec.x_max == 1
    assert dec.grid.elements == (0, 4, 8)
    assert dec.residues.elements == (0,)
    assert dec.orbits[5].elements == (1, 5)
    assert dec.orbits[11].elements == (7, 11)
    assert dec.reconstructed


def test_decompose_validates_witness_pair():
    a = NormalizedSet((0, 1, 4, 5, 6, 9))
    with pytest.raises(SetDomainError):
        decompose(a, 8, 3)  # unordered
    with pytest.raises(SetDomainError):
        decompose(a, 2, 8)  # not the witness pair


# ---------------------------------------------------------------------------
# split machinery


def test_split_at_frozen():
    a = NormalizedSet((0, 2, 3, 5, 7, 10))
    s = find_admissible_split(a)
    assert s == 2
    st = split_at(a, s)
    assert st.left.elements == (0, 2, 3, 5)
    assert st.right.elements == (2, 3, 5, 7, 10)
    assert st.overlap.elements == (5, 7, 8)
    assert (st.card_left, st.card_right) == (5, 9)
    assert st.lower_bound == 11
    assert st.card_restricted == 11  # tight here
    assert st.right_shifted.elements == (0, 1, 3, 5, 8)


def test_split_premise_checked():
    a = NormalizedSet((0, 2, 3, 5, 7, 10))
    with pytest.raises(SetDomainError):
        split_at(a, 3)  # a_2 = 3 != 4


def test_find_admissible_split_none_when_all_slow():
    # gen6 is inside the regime but every interior grows slowly
    assert find_admissible_split(GEN6) is None


def test_find_admissible_split_regime_gate():
    with pytest.raises(SetDomainError):
        find_admissible_split(NormalizedSet((0, 1, 9, 10)))  # a_{k-2} >= 2k-4
    # all-slow interiors: no split position exists
    assert find_admissible_split(NormalizedSet((0, 1, 2, 3, 11))) is None


def test_split_positions_agree_with_restricted_size():
    # every admissible split yields a valid lower bound on the full set
    for elems in ((0, 2, 3, 4, 7, 12), (0, 1, 2, 5, 6, 12), (0, 2, 3, 6, 7, 8, 13)):
        a = NormalizedSet(elems)
        s = find_admissible_split(a)
        if s is None:
            continue
        st = split_at(a, s)
        assert st.lower_bound <= restricted_size(elems)
        assert st.lower_bound >= 3 * len(elems) - 7
