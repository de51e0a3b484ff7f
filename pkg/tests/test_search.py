from math import factorial

import pytest

from k3lattice import linalg, search
from k3lattice.errors import BadResidue, OddRootCount
from k3lattice.named import E
from k3lattice.roots import (
    _coords_of_norm,
    classify_root_subsystem,
    e8_frame,
    positive_root_supports,
    roots_orthogonal_to,
    vectors_of_norm,
    weight_vector,
)


def test_qpb_reports():
    r = search.qpb_report(12, search.K3_DIM)
    assert (r.weight, r.is_cusp, r.low_weight, r.canonical_weight) == (18, True, True, False)
    r = search.qpb_report(0, search.K3_DIM)
    assert (r.weight, r.is_cusp, r.low_weight) == (12, False, True)
    r = search.qpb_report(14, search.K3_DIM)
    assert (r.weight, r.low_weight, r.canonical_weight) == (19, False, True)
    r = search.qpb_report(16, search.HILB2_DIM)
    assert (r.weight, r.canonical_weight) == (20, True)
    with pytest.raises(OddRootCount):
        search.qpb_report(13, search.K3_DIM)
    with pytest.raises(OddRootCount):
        search.qpb_report(-2, search.K3_DIM)


# --- dominant chamber -------------------------------------------------------

WEYL_ORDER = {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600}


def weyl_order(desc):
    n = 1
    for fam, rank in desc.components:
        if fam == "A":
            n *= factorial(rank + 1)
        elif fam == "D":
            n *= 2 ** (rank - 1) * factorial(rank)
        else:
            n *= WEYL_ORDER[fam, rank]
    return n


def stabiliser_order(c):
    zero = [i for i, x in enumerate(c) if x == 0]
    roots = [E(8).vector(r) for r in _coords_of_norm(E(8), 2)
             if all(r[i] == 0 for i in range(8) if i not in zero)]
    return weyl_order(classify_root_subsystem(roots))


@pytest.mark.parametrize("d", range(1, 8))
def test_dominant_orbits_cover_shell(d):
    # orbit-stabiliser: the dominant representatives account for every vector
    W = e8_frame().weight_gram
    total = sum(WEYL_ORDER["E", 8] // stabiliser_order(c)
                for c in search.dominant_coefficients(W, 2 * d))
    assert total == len(vectors_of_norm(E(8), 2 * d))


def test_dominant_coefficients_order_and_norm():
    W = e8_frame().weight_gram
    cs = list(search.dominant_coefficients(W, 40))
    assert cs == sorted(cs)
    for c in cs:
        assert weight_vector(c).norm == 40


def test_subdiagram_count_matches_direct_count():
    W = e8_frame().weight_gram
    for c in search.dominant_coefficients(W, 24):
        v = weight_vector(c)
        assert search._subdiagram_roots(c, 8) == len(roots_orthogonal_to(E(8), [v]))


# --- searches: weyl and full agree ------------------------------------------

WINDOWS = [(2, 12), (14, 14), (0, 240), (40, 60), (2, 2), (100, 126)]


def full_counts(vectors_list):
    return {search._orth_root_count(vs) for vs in vectors_list}


@pytest.mark.parametrize("d", range(1, 7))
def test_k3_weyl_matches_full_scan(d):
    counts = full_counts([[v] for v in search._positive_reps(2 * d)])
    for lo, hi in WINDOWS:
        a = search.k3_search(d, lo, hi, method="weyl")
        assert (a is not None) == any(lo <= c <= hi for c in counts), (d, lo, hi)
        if a:
            assert a.verify()
            assert lo <= a.report.root_count <= hi
            assert a.vectors[0].norm == 2 * d


@pytest.mark.parametrize("d", [2, 4])
def test_k3_full_method(d):
    w = search.k3_search(d, 0, 240, method="full")
    assert w.verify() and w.vectors[0].norm == 2 * d


@pytest.mark.parametrize("d", range(1, 7))
def test_split_weyl_matches_full_scan(d):
    # the full scan uses a different root than the weyl method
    root = search._coords_of_norm(E(8), 2)[0]
    G = E(8).gram
    gr = linalg.matvec(G, root)
    perp = [v for v in search._positive_reps(2 * d) if sum(a * b for a, b in zip(v, gr)) == 0]
    counts = full_counts([[root, v] for v in perp])
    for lo, hi in [(2, 14), (16, 16), (0, 126), (20, 40)]:
        a = search.hilb2_split_search(d, hi, lo, method="weyl")
        assert (a is not None) == any(lo <= c <= hi for c in counts), (d, lo, hi)
        b = search.hilb2_split_search(d, hi, lo, method="full")
        assert (a is None) == (b is None)
        for wit in (a, b):
            if wit:
                assert wit.verify()
                r, l = wit.vectors
                assert r.norm == 2 and l.norm == 2 * d and r.pair(l) == 0


def test_highest_root():
    r = search.highest_root()
    assert r.norm == 2
    assert r.coords == (2, 3, 4, 6, 5, 4, 3, 2)
    assert max(positive_root_supports(8), key=sum) == r.coords


# --- non-split --------------------------------------------------------------

def all_pairs_min_roots(d):
    """Minimum orthogonal root count over every v with v^2 = (d+1)/2, (a, v) = -1."""
    G = E(8).gram
    roots = _coords_of_norm(E(8), 2)
    a = roots[0]
    Gr = [linalg.matvec(G, r) for r in roots]
    ga = linalg.matvec(G, a)
    perp_a = [g for r, g in zip(roots, Gr) if sum(x * y for x, y in zip(a, g)) == 0]
    best = None
    for v in _coords_of_norm(E(8), (d + 1) // 2):
        if sum(x * y for x, y in zip(v, ga)) != -1:
            continue
        n = sum(1 for g in perp_a if sum(x * y for x, y in zip(v, g)) == 0)
        best = n if best is None else min(best, n)
    return best


@pytest.mark.parametrize("d", [3, 7, 11, 15])
def test_nonsplit_small_d_has_no_witness(d):
    assert search.nonsplit_search(d) is None
    assert all_pairs_min_roots(d) >= 24


@pytest.mark.parametrize("d", [39, 47])
def test_nonsplit_witness(d):
    w = search.nonsplit_search(d)
    assert w is not None and w.verify()
    assert w.report.root_count == 14
    a, v = w.vectors
    assert linalg.det([[a.norm, a.pair(v)], [a.pair(v), v.norm]]) == d
    assert a.pair(v) == -1


def test_half_plus_candidates():
    for d in (3, 7, 39, 47):
        for x in search.half_plus_candidates(d):
            assert all(t % 2 == 1 for t in x)
            assert list(x) == sorted(x, reverse=True)
            assert sum(t * t for t in x) == 2 * (d + 1) - 2
    with pytest.raises(BadResidue):
        list(search.half_plus_candidates(5))


# --- verdicts ---------------------------------------------------------------

def test_classify_k3():
    v = search.classify("K3", 46)
    assert v.kind == "GeneralType"
    assert v.witness.report.root_count == 12
    assert str(v.witness.orthogonal_roots) == "A2+3A1"
    assert search.classify("K3", 41).kind == "Inconclusive"


def test_classify_errors():
    with pytest.raises(BadResidue):
        search.classify("Hilb2NonSplit", 5)
    with pytest.raises(ValueError):
        search.classify("K3^[3]", 5)
    with pytest.raises(ValueError):
        search.k3_search(0)
    with pytest.raises(ValueError):
        search.k3_search(5, method="magic")


def test_searches_are_deterministic():
    a = search.classify("K3", 58).to_dict()
    b = search.classify("K3", 58).to_dict()
    assert a == b
    assert a["witness"]["roots"] == 10


def test_witness_round_trip():
    w = search.hilb2_split_search(12)
    d = w.to_dict()
    assert d["roots"] == w.report.root_count
    assert d["weight"] == 12 + d["roots"] // 2
    assert d["norms"] == [2, 24]


@pytest.mark.parametrize("d", [40, 41, 46, 58, 75])
def test_k3_search_monotone_in_max_roots(d):
    found = [search.k3_search(d, 2, k) is not None for k in range(2, 32, 2)]
    # once a witness exists, widening the window keeps one
    assert found == sorted(found)


def test_split_small_d_has_no_witness():
    for d in range(1, 12):
        assert search.hilb2_split_search(d) is None
