from fractions import Fraction
from math import gcd
import pytest
from hypothesis import assume, given, settings, strategies as st

from k3lattice.errors import EmptyGroup, InvalidOrder
from k3lattice.reidtai import (
    IsotropyElement,
    group_verdict,
    induced_element,
    modified_rt_sum,
    quasi_reflection_power,
    rt_sum,
    sigma_prime_from,
)


@st.composite
def elements(draw, max_order=60, max_dim=12):
    m = draw(st.integers(1, max_order))
    n = draw(st.integers(1, max_dim))
    exps = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    return IsotropyElement.reduced(m, exps)


@st.composite
def with_quasi_reflection_power(draw):
    """Order m = s k with g^k acting only on one coordinate, by construction."""
    s = draw(st.integers(2, 12))
    k = draw(st.integers(2, 60 // s))
    m = s * k
    n = draw(st.integers(2, 12))
    rest = draw(st.lists(st.integers(0, k - 1), min_size=n - 1, max_size=n - 1))
    last = draw(st.integers(1, m - 1).filter(lambda a: gcd(a, s) == 1))
    pos = draw(st.integers(0, n - 1))
    exps = [s * b for b in rest]
    exps.insert(pos, last)
    return IsotropyElement.reduced(m, exps)


def cyclic_group(g):
    return [g.power(j) for j in range(g.order)]


# --- examples ---------------------------------------------------------------

def test_rt_sum_examples():
    assert rt_sum(IsotropyElement(2, [1, 1])) == 1
    assert rt_sum(IsotropyElement(1, [0, 0, 0])) == 1
    assert rt_sum(IsotropyElement(4, [1, 1, 2])) == 1
    assert rt_sum(IsotropyElement(5, [1, 2])) == Fraction(3, 5)


def test_modified_examples():
    v = modified_rt_sum(IsotropyElement(4, [1, 2]))
    assert (v.k, v.s, v.sigma_prime, v.passes) == (2, 2, 1, True)
    v = modified_rt_sum(IsotropyElement(2, [0, 0, 1]))
    assert v.is_reflection and v.is_quasi_reflection
    assert v.sigma_prime == 1 and v.passes
    v = modified_rt_sum(IsotropyElement(3, [1, 1, 1]))
    assert not v.is_quasi_reflection
    assert v.sigma_prime == v.sigma == 1 and v.passes
    v = modified_rt_sum(IsotropyElement(3, [0, 1]))
    assert v.is_quasi_reflection and not v.is_reflection


def test_invalid_elements():
    with pytest.raises(InvalidOrder):
        IsotropyElement(4, [2, 2])
    with pytest.raises(InvalidOrder):
        IsotropyElement(0, [1])
    with pytest.raises(InvalidOrder):
        IsotropyElement(3, [])
    assert IsotropyElement.reduced(4, [2, 2]) == IsotropyElement(2, [1, 1])
    assert IsotropyElement(5, [7, -1]).exponents == (2, 4)


def test_group_verdict_examples():
    one = IsotropyElement(1, [0, 0])
    assert group_verdict([one, IsotropyElement(2, [1, 1])]) == "Canonical"
    assert group_verdict([one, IsotropyElement(2, [0, 1])]) == "Canonical"
    g = IsotropyElement(5, [1, 2])
    five = [IsotropyElement(1, [0, 0])] + [IsotropyElement(5, e) for e in ([1, 2], [2, 4], [3, 1], [4, 3])]
    assert sorted(five, key=lambda x: x.exponents) == sorted(cyclic_group(g), key=lambda x: x.exponents)
    assert group_verdict(five) == "NotCanonical"


def test_reflection_groups_are_canonical():
    # diagonal reflection groups (Z/2)^k and mu_m acting on one coordinate
    for n in (2, 3, 4):
        elems = []
        for mask in range(2 ** n):
            exps = [(mask >> i) & 1 for i in range(n)]
            elems.append(IsotropyElement.reduced(2, exps))
        assert any(e.is_reflection for e in elems)
        assert group_verdict(elems) == "Canonical"
    for m in (3, 4, 7):
        g = IsotropyElement(m, [0, 0, 1])
        assert group_verdict(cyclic_group(g)) == "Canonical"
    # reflection times a non-reflection element of order 2 on two more coordinates
    g = IsotropyElement(2, [1, 0, 0])
    h = IsotropyElement(2, [0, 1, 1])
    gh = IsotropyElement(2, [1, 1, 1])
    assert group_verdict([IsotropyElement(1, [0, 0, 0]), g, h, gh]) == "Canonical"


def test_group_verdict_edge_cases():
    with pytest.raises(EmptyGroup):
        group_verdict([])
    g = IsotropyElement(5, [1, 2])
    assert group_verdict([g], contains_all_elements=False) == "Unknown"
    with pytest.raises(ValueError):
        group_verdict([g])  # powers missing
    with pytest.raises(ValueError):
        group_verdict([IsotropyElement(1, [0]), IsotropyElement(1, [0, 0])])
    # g^3 = (3, 0) is a reflection and g fails the modified sum: no verdict
    g = IsotropyElement(6, [1, 2])
    assert g.power(3).is_reflection
    assert not modified_rt_sum(g).passes
    assert group_verdict(cyclic_group(g)) == "Unknown"


# --- properties -------------------------------------------------------------

@settings(max_examples=1500)
@given(elements())
def test_conjugate_sum_identity(g):
    moving = sum(1 for a in g.exponents if a)
    if g.is_identity:
        assert rt_sum(g) == 1
    else:
        assert rt_sum(g) + rt_sum(g.inverse()) == moving


def quotient_sum(g, l):
    """Reid-Tai sum of g^l acting on C^n / <g^k>, from the eigenvalues directly."""
    k, last = quasi_reflection_power(g)
    s = g.order // k
    return sum((Fraction((l * a * (s if i == last else 1)) % g.order, g.order)
                for i, a in enumerate(g.exponents)), Fraction(0))


@settings(max_examples=1500)
@given(with_quasi_reflection_power(), st.integers(1, 59))
def test_quotient_by_quasi_reflection(g, l):
    k, last = quasi_reflection_power(g)
    assume(last is not None and k > 1)
    assume(l % k)  # g^l not in <h>, h = g^k
    s = g.order // k
    induced = induced_element(g, l)
    assert not induced.is_identity
    assert rt_sum(induced) == quotient_sum(g, l)
    # the modified sum of g^l, taken with g's s and special coordinate
    assert sigma_prime_from(g.power(l), s, last) == rt_sum(induced)
    if l == 1:
        assert modified_rt_sum(g).sigma_prime == rt_sum(induced)


def test_quotient_sum_uses_the_generator_data():
    # <g> holds quasi-reflections on both axes: g^2 = (4, 0), g^3 = (0, 3)
    g = IsotropyElement(6, [2, 3])
    assert quasi_reflection_power(g) == (2, 0)
    induced = induced_element(g, 3)
    assert rt_sum(induced) == Fraction(1, 2)
    assert sigma_prime_from(g.power(3), 3, 0) == Fraction(1, 2)
    # on its own, g^3 is a quasi-reflection and gets the smooth-quotient value 1
    assert modified_rt_sum(g.power(3)).sigma_prime == 1


@settings(max_examples=1000)
@given(elements(), st.randoms())
def test_permutation_invariance(g, rnd):
    perm = list(range(g.dim))
    rnd.shuffle(perm)
    h = IsotropyElement(g.order, [g.exponents[i] for i in perm])
    assert rt_sum(h) == rt_sum(g)
    a, b = modified_rt_sum(g), modified_rt_sum(h)
    assert (a.sigma_prime, a.k, a.s, a.passes) == (b.sigma_prime, b.k, b.s, b.passes)


@settings(max_examples=500)
@given(elements())
def test_verdict_fields(g):
    v = modified_rt_sum(g)
    assert not v.is_reflection or v.is_quasi_reflection
    assert v.k * v.s == g.order
    assert v.passes == (v.sigma_prime >= 1)
    assert 0 <= v.sigma <= g.dim
