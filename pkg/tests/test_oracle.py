import itertools
import json

import pytest

from gknormal import smallgroup as sg
from gknormal.enumerate import enumerate_paper_index8, enumerate_paper_index10
from gknormal.errors import BudgetExceededError
from gknormal.oracle import (
    brute_force_kernels,
    cross_check_paper,
    dedup_crosscheck,
    same_kernel,
    scan,
    surjective_assignments,
    word_separation_oracle,
)
from gknormal.quotients import GeneratorAssignment, canonical_descriptor, verify_descriptor

D4 = sg.catalog_group("D4")
D5 = sg.catalog_group("D5")
K8 = sg.catalog_group("K8")


# generating n-tuples, counted by inclusion-exclusion over maximal subgroups
def d4_surjective(n):
    return 6**n - 2 * 4**n + 2**n


def d5_surjective(n):
    return 6**n - 5 * 2**n + 4


def k8_surjective(n):
    return 8**n - 7 * 4**n + 14 * 2**n - 8


@pytest.mark.parametrize("k", [1, 2, 3])
def test_surjective_counts_match_inclusion_exclusion(k):
    n = k + 1
    assert len(list(surjective_assignments(k, D4))) == d4_surjective(n)
    assert len(list(surjective_assignments(k, D5))) == d5_surjective(n)
    assert len(list(surjective_assignments(k, K8))) == k8_surjective(n)


@pytest.mark.parametrize(
    "k, order, expected",
    [(1, 8, 1), (2, 8, 13), (1, 10, 1), (2, 10, 9), (3, 8, 115), (3, 10, 61)],
)
def test_brute_force_counts(k, order, expected):
    assert len(brute_force_kernels(k, order)) == expected


def test_k2_index8_split():
    s = scan(2, 8)
    by = {q.iso_label: len(q.descriptors) for q in s.quotients if q.descriptors}
    assert by == {"D4": 12, "K8": 1}


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("order", [8, 10])
def test_orbit_size_law(k, order):
    for q in scan(k, order).quotients:
        assert q.surjective == q.aut_order * len(q.descriptors)


def test_scan_descriptors_equal_canonical_descriptor():
    for G in (D4, K8):
        descs = {canonical_descriptor(GeneratorAssignment(G, a)) for a in surjective_assignments(2, G)}
        assert descs == {d for d in brute_force_kernels(2, 8) if d.iso_label == G.iso_label}


@pytest.mark.parametrize("k, order, classes", [(1, 8, 1), (2, 10, 9), (1, 10, 1)])
def test_dedup_crosscheck_examples(k, order, classes):
    r = dedup_crosscheck(k, order)
    assert r.agree and r.total_classes == classes


def test_same_kernel():
    b, ab, a3b, a2 = (D4.label_to_id(s) for s in ("b", "ab", "a^3b", "a^2"))
    assert same_kernel(D4, (b, ab), (ab, b))
    assert same_kernel(D4, (b, ab), (b, a3b))
    assert not same_kernel(D4, (b, ab, 0), (b, ab, a2))


def test_word_separation_examples():
    ids = lambda *s: tuple(D4.label_to_id(x) for x in s)
    f = GeneratorAssignment(D4, ids("b", "ab"))
    assert word_separation_oracle(f, GeneratorAssignment(D4, ids("ab", "b")), 8).equal
    assert word_separation_oracle(f, f, 8).equal
    g = GeneratorAssignment(D4, ids("b", "a^3b"))
    same = canonical_descriptor(f) == canonical_descriptor(g)
    assert word_separation_oracle(f, g, 8).equal == same
    h = GeneratorAssignment(D4, ids("b", "ab", "a^2"))
    r = word_separation_oracle(GeneratorAssignment(D4, ids("b", "ab", "e")), h, 8)
    assert not r.equal and r.word is not None and r.word.letters == (3,)


@pytest.mark.parametrize("G", [D4, D5])
def test_word_separation_agrees_with_descriptors_k1(G):
    epis = [GeneratorAssignment(G, a) for a in surjective_assignments(1, G)]
    for f, g in itertools.combinations(epis, 2):
        same = canonical_descriptor(f) == canonical_descriptor(g)
        assert word_separation_oracle(f, g, 8).equal == same


def test_budget_exceeded_is_explicit():
    # order 8 scans Z8, Z4xZ2, K8, ... ; K8 alone needs 8^3 = 512 at k=2
    with pytest.raises(BudgetExceededError) as exc:
        brute_force_kernels(2, 8, budget=100)
    assert isinstance(exc.value.partial, frozenset)
    with pytest.raises(BudgetExceededError) as exc:
        brute_force_kernels(2, 8, budget=600)
    assert {d.iso_label for d in exc.value.partial} == {"K8"}


def test_worker_count_does_not_change_output():
    one = cross_check_paper(3, 8, workers=1).to_json()
    two = cross_check_paper(3, 8, workers=2).to_json()
    assert json.dumps(one) == json.dumps(two)
    assert scan(2, 10, chunks=1).descriptors == scan(2, 10, chunks=7).descriptors


@pytest.mark.parametrize("k", [1, 2, 3])
def test_containment(k):
    assert enumerate_paper_index8(k).descriptors <= brute_force_kernels(k, 8)
    assert enumerate_paper_index10(k).descriptors <= brute_force_kernels(k, 10)


def test_oracle_descriptors_verify():
    for order in (8, 10):
        for d in brute_force_kernels(2, order):
            assert verify_descriptor(d, max_len=6, samples=200).passed


def test_cross_check_examples():
    r = cross_check_paper(1, 8).to_json()
    assert (r["paper_family_count"], r["oracle_count"], r["formula_value"]) == (1, 1, 8)
    assert r["paper_subset_of_oracle"] and r["oracle_subset_of_paper"]
    assert r["verdicts"]["formula_equals_oracle_count"] is False

    r = cross_check_paper(2, 8).to_json()
    assert r["paper_subset_of_oracle"] and not r["oracle_subset_of_paper"]
    assert (r["oracle_count"], r["paper_family_count"], r["formula_value"]) == (13, 7, 222)
    assert r["paper_families"] == {"D4": 6, "R": 1}
    assert len(r["missing_from_paper"]) == 6

    r = cross_check_paper(2, 10).to_json()
    assert r["paper_subset_of_oracle"]
    assert (r["oracle_count"], r["paper_family_count"], r["formula_value"]) == (9, 6, 12)
    assert r["labeled_count"] == 12 and r["verdicts"]["formula_equals_labeled_count"]


def test_comparison_report_schema():
    r = cross_check_paper(2, 10).to_json()
    for key in (
        "k", "index", "oracle_count", "paper_family_count", "labeled_count", "formula_value",
        "paper_subset_of_oracle", "oracle_subset_of_paper", "missing_from_paper", "notes",
    ):
        assert key in r
    assert r["missing_from_paper"][0].keys() == {"quotient", "index", "images"}
