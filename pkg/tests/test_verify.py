"""Enumeration engine, certificates, and verification drivers."""

import json

import pytest

from sumset_lab.core import SetDomainError
from sumset_lab.families import extremal_catalog
from sumset_lab.verify import (
    DEFAULT_BUDGET,
    KNOWN_CONSTRAINTS,
    SCHEMA_VERSION,
    TOOL_VERSION,
    BudgetExceeded,
    Certificate,
    EnumerationQuery,
    classify_extremal,
    enumerate_sets,
    enumerate_tuples,
    shard_prefixes,
    sweep_structure,
    verify_conjecture,
    verify_dense_prefix,
    verify_low_second_max,
    verify_span_classification,
)

from helpers import count_normalized_sets, enumerate_bruteforce

PAYLOAD_KEYS = [
    "schema_version", "claim", "query", "outcome", "counterexamples",
    "observations", "missing", "spurious", "extremal_sets", "counts",
    "cap", "tool_version", "wall_time_ms",
]


def _strip_time(payload: dict) -> dict:
    out = dict(payload)
    out.pop("wall_time_ms")
    return out


# ---------------------------------------------------------------------------
# EnumerationQuery


def test_query_validation():
    with pytest.raises(SetDomainError):
        EnumerationQuery(1, 3, 5)
    with pytest.raises(SetDomainError):
        EnumerationQuery(4, 2, 5)  # l_min below k-1
    with pytest.raises(SetDomainError):
        EnumerationQuery(4, 6, 5)  # empty range
    with pytest.raises(SetDomainError):
        EnumerationQuery(4, 3, 5, budget=0)
    with pytest.raises(SetDomainError):
        EnumerationQuery(4, 3, 5, mask=-1)
    with pytest.raises(SetDomainError):
        EnumerationQuery(4, 3, 5, constraints=("no_such_rule",))


def test_query_normalizes_constraints():
    q = EnumerationQuery(4, 3, 5, constraints=("gcd_one", "gcd_one", "growth_a_i_lt_2i"))
    assert q.constraints == ("gcd_one", "growth_a_i_lt_2i")
    assert set(KNOWN_CONSTRAINTS) >= set(q.constraints)


def test_query_exact_and_to_dict():
    q = EnumerationQuery.exact(5, 7, ("gcd_one",), budget=123)
    assert (q.l_min, q.l_max) == (7, 7)
    assert q.to_dict() == {
        "k": 5, "l_min": 7, "l_max": 7, "constraints": ["gcd_one"],
        "mask": None, "budget": 123,
    }
    assert EnumerationQuery(2, 1, 1).budget == DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# enumeration: frozen streams and brute-force equivalence


def test_enumerate_frozen_k3():
    q = EnumerationQuery.exact(3, 4, ("gcd_one",))
    assert list(enumerate_tuples(q)) == [(0, 1, 4), (0, 3, 4)]


def test_enumerate_lexicographic_order():
    q = EnumerationQuery(4, 3, 5)
    tups = list(enumerate_tuples(q))
    assert tups == sorted(tups)
    assert tups[0] == (0, 1, 2, 3)
    assert tups[-1] == (0, 3, 4, 5)


def test_enumerate_sets_wrapping():
    q = EnumerationQuery.exact(3, 4, ("gcd_one",))
    sets = list(enumerate_sets(q))
    assert [s.elements for s in sets] == [(0, 1, 4), (0, 3, 4)]
    assert sets[0].mask == 0b10011


def test_enumerate_mask_filter():
    # only even elements allowed outside {1}: mask keeps 0,1,2,4,6
    q = EnumerationQuery(3, 2, 6, mask=0b1010111)
    tups = list(enumerate_tuples(q))
    assert all(all(0b1010111 >> v & 1 for v in t) for t in tups)
    assert (0, 1, 2) in tups and (0, 2, 3) not in tups


BRUTE_GRID = [
    (4, 7, ()),
    (4, 7, ("gcd_one",)),
    (5, 8, ("gcd_one",)),
    (5, 7, ("gcd_one", "last_eq_2k_minus_3",)),
    (6, 10, ("gcd_one", "growth_a_i_lt_2i", "last_ge_2k_minus_2")),
    (6, 12, ("gcd_one", "interior_lt_2k_minus_4", "last_ge_2k_minus_2")),
    (7, 11, ("gcd_one", "last_eq_2k_minus_3")),
    (7, 13, ("growth_a_i_lt_2i",)),
]


@pytest.mark.parametrize("k,l,cons", BRUTE_GRID)
def test_enumerate_matches_bruteforce(k, l, cons):
    q = EnumerationQuery.exact(k, l, cons)
    assert list(enumerate_tuples(q)) == enumerate_bruteforce(k, l, cons)


def test_enumerate_range_is_union_of_exact_spans():
    q = EnumerationQuery(5, 6, 9, ("gcd_one",))
    got = list(enumerate_tuples(q))
    expected = []
    for l in range(6, 10):
        expected += enumerate_bruteforce(5, l, ("gcd_one",))
    # range streams interleave by interior prefix, so compare as sets
    assert sorted(got) == sorted(expected)
    assert len(got) == len(expected)


@pytest.mark.parametrize("k,l", [(4, 9), (5, 9), (6, 11)])
def test_enumeration_counts_match_raw_combinations(k, l):
    q = EnumerationQuery.exact(k, l, ("gcd_one",))
    assert sum(1 for _ in enumerate_tuples(q)) == count_normalized_sets(k, l)


# ---------------------------------------------------------------------------
# sharding


@pytest.mark.parametrize("depth", [0, 1, 2])
def test_shards_concatenate_to_sequential_stream(depth):
    q = EnumerationQuery(6, 9, 11, ("gcd_one",))
    sequential = list(enumerate_tuples(q))
    sharded = []
    for p in shard_prefixes(q, depth):
        sharded += list(enumerate_tuples(q, prefix=p))
    assert sharded == sequential


def test_shard_depth_validation():
    q = EnumerationQuery(4, 5, 6)
    with pytest.raises(SetDomainError):
        shard_prefixes(q, 3)  # only k-2 = 2 interior slots
    with pytest.raises(SetDomainError):
        shard_prefixes(q, -1)


def test_bad_prefix_rejected():
    q = EnumerationQuery(5, 7, 7, ("growth_a_i_lt_2i",))
    with pytest.raises(SetDomainError):
        list(enumerate_tuples(q, prefix=(2,)))  # a_1 must stay below 2
    with pytest.raises(SetDomainError):
        list(enumerate_tuples(q, prefix=(1, 2, 3, 4)))  # too long


# ---------------------------------------------------------------------------
# budget


def test_budget_exceeded_mid_stream():
    full = list(enumerate_tuples(EnumerationQuery(6, 9, 11, ("gcd_one",))))
    q = EnumerationQuery(6, 9, 11, ("gcd_one",), budget=40)
    got = []
    with pytest.raises(BudgetExceeded) as exc:
        for t in enumerate_tuples(q):
            got.append(t)
    assert exc.value.nodes == 41
    # everything yielded before the failure is a prefix of the full stream
    assert got == full[: len(got)]
    assert 0 < len(got) < len(full)


def test_shared_counter_draws_one_budget():
    counter = [0]
    q1 = EnumerationQuery.exact(4, 6, budget=30)
    list(enumerate_tuples(q1, counter=counter))
    used = counter[0]
    assert used > 0
    q2 = EnumerationQuery.exact(4, 7, budget=used + 5)
    with pytest.raises(BudgetExceeded):
        list(enumerate_tuples(q2, counter=counter))


# ---------------------------------------------------------------------------
# certificates


def test_certificate_payload_and_json():
    cert = Certificate(claim="demo", query={"k": 3}, outcome="verified")
    payload = cert.to_payload()
    assert list(payload) == PAYLOAD_KEYS
    assert payload["schema_version"] == SCHEMA_VERSION
    assert payload["tool_version"] == TOOL_VERSION
    text = cert.to_json()
    assert text.endswith("}\n")
    assert json.loads(text) == payload
    # canonical: keys sorted, two-space indent
    assert text == json.dumps(payload, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# drivers: frozen reduced-scope results


def test_verify_conjecture_frozen():
    cert = verify_conjecture(7, 18)
    assert cert.outcome == "verified"
    assert cert.counterexamples == []
    assert cert.counts == {
        "enumerated": 30647, "extremal": 596, "nodes": 74857, "truncated": False,
    }
    assert cert.cap == 18
    assert len(cert.observations) == 11
    assert cert.observations[0] == (
        "below-threshold k=7 l=10: {0,1,4,5,6,9,10} has restricted size 13 < 14"
    )
    assert all("k=7" in o for o in cert.observations)


def test_verify_conjecture_validation():
    with pytest.raises(SetDomainError):
        verify_conjecture(2)
    with pytest.raises(SetDomainError):
        verify_conjecture(8, 5)


def test_verify_low_second_max_frozen():
    cert = verify_low_second_max(6)
    assert cert.outcome == "verified"
    assert cert.counts == {
        "enumerated": 441, "extremal": 9, "nodes": 1610,
        "splits_validated": 243, "truncated": False,
    }
    assert cert.cap == 18
    assert cert.claim == "low_second_max_floor"


def test_verify_dense_prefix_frozen():
    cert = verify_dense_prefix(7)
    assert cert.outcome == "verified"
    assert cert.counts == {
        "enumerated": 576, "extremal": 2, "nodes": 1458, "truncated": False,
    }
    assert cert.extremal_sets == ["{0,1,3,4,6,9,12}", "{0,1,3,4,7,10}"]
    assert cert.observations == [
        "k=6: equality occurs at top values [10]",
        "k=7: equality occurs at top values [12]",
    ]
    assert cert.missing == [] and cert.spurious == []


def test_verify_span_classification_frozen():
    cert = verify_span_classification(6)
    assert cert.outcome == "verified"
    assert cert.counts == {
        "enumerated": 96, "extremal": 21, "nodes": 264, "truncated": False,
    }
    assert cert.missing == [] and cert.spurious == []
    assert len(cert.extremal_sets) == 21
    assert cert.observations == [
        "flagged catalog entry {0,3,4,6,10,11,13,14,17} matches no enumerated "
        "extremal set; recorded as a catalog typo"
    ]


def test_verify_span_classification_validation():
    with pytest.raises(SetDomainError):
        verify_span_classification(3)
    with pytest.raises(SetDomainError):
        verify_span_classification(13)


def test_sweep_structure_frozen():
    cert = sweep_structure(8)
    assert cert.outcome == "verified"
    assert cert.counterexamples == []
    assert cert.counts == {
        "enumerated": 3480, "extremal": 27, "nodes": 9550,
        "witness_pairs": 33, "truncated": False,
    }
    assert cert.cap == 22


def test_classify_extremal_matches_catalog():
    got = [s.elements for s in classify_extremal(6, 9)]
    assert got == [s.elements for s in extremal_catalog(6)]
    assert len(got) == 13
    with pytest.raises(SetDomainError):
        classify_extremal(3, 3)


def test_driver_budget_exhaustion():
    cert = verify_conjecture(7, 18, budget=500)
    assert cert.outcome == "budget_exhausted"
    assert cert.counts["truncated"] is True
    assert cert.counterexamples == []


def test_dense_prefix_truncation_is_not_refutation():
    # a truncated sweep that never reached the expected equality sets must
    # report budget_exhausted, not refuted: absence only counts on a
    # complete enumeration
    cert = verify_dense_prefix(7, budget=100)
    assert cert.outcome == "budget_exhausted"
    assert cert.counts["truncated"] is True
    assert cert.counterexamples == []
    assert len(cert.spurious) == 2  # both expected sets unreached, still listed


def test_classification_truncation_is_not_refutation():
    cert = verify_span_classification(6, budget=50)
    assert cert.outcome == "budget_exhausted"
    assert cert.counts["truncated"] is True
    assert cert.counterexamples == []
    assert cert.spurious != []  # unreached catalog entries stay informational


def test_driver_determinism_and_jobs_invariance():
    a = _strip_time(verify_dense_prefix(7).to_payload())
    b = _strip_time(verify_dense_prefix(7).to_payload())
    c = _strip_time(verify_dense_prefix(7, jobs=2).to_payload())
    assert a == b == c
