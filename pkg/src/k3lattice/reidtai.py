"""Reid-Tai sums for finite-order linear maps given by eigenvalue exponents.

An element of order ``m`` acting on ``C^n`` is recorded by exponents
``a_1..a_n`` (eigenvalues ``zeta^{a_i}``, ``zeta = exp(2 pi i / m)``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import EmptyGroup, InvalidOrder


@dataclass(frozen=True)
class IsotropyElement:
    order: int
    exponents: Tuple[int, ...]

    def __init__(self, order: int, exponents: Iterable[int]):
        order = int(order)
        if order < 1:
            raise InvalidOrder(f"order must be positive, got {order}")
        exps = tuple(int(a) % order for a in exponents)
        if not exps:
            raise InvalidOrder("need at least one exponent")
        if order > 1 and gcd(order, *exps) != 1:
            raise InvalidOrder(f"exponents {exps} have true order below {order}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def reduced(cls, order: int, exponents: Iterable[int]) -> "IsotropyElement":
        """Build from possibly non-reduced data by dividing out the common factor."""
        exps = [int(a) % order for a in exponents]
        g = gcd(order, *exps)
        return cls(order // g, [a // g for a in exps])

    @property
    def dim(self) -> int:
        return len(self.exponents)

    @property
    def is_identity(self) -> bool:
        return self.order == 1

    def power(self, k: int) -> "IsotropyElement":
        return IsotropyElement.reduced(self.order, [k * a for a in self.exponents])

    @property
    def nontrivial_indices(self) -> List[int]:
        return [i for i, a in enumerate(self.exponents) if a]

    @property
    def is_quasi_reflection(self) -> bool:
        return len(self.nontrivial_indices) == 1

    @property
    def is_reflection(self) -> bool:
        if not self.is_quasi_reflection:
            return False
        (i,) = self.nontrivial_indices
        return 2 * self.exponents[i] == self.order

    def inverse(self) -> "IsotropyElement":
        return IsotropyElement(self.order, [-a for a in self.exponents])


def _frac(a: int, m: int) -> Fraction:
    return Fraction(a % m, m)


def rt_sum(g: IsotropyElement) -> Fraction:
    """Sum of fractional parts ``{a_i / m}``; the identity gets 1 by convention."""
    if g.is_identity:
        return Fraction(1)
    return sum((_frac(a, g.order) for a in g.exponents), Fraction(0))


@dataclass(frozen=True)
class RtVerdict:
    sigma: Fraction
    sigma_prime: Fraction
    is_quasi_reflection: bool
    is_reflection: bool
    passes: bool
    k: int  # smallest k with g^k a quasi-reflection or the identity
    s: int  # order / k
    last: Optional[int]  # index carrying the eigenvalue of g^k that is not 1


def quasi_reflection_power(g: IsotropyElement) -> Tuple[int, Optional[int]]:
    """Smallest ``k >= 1`` with ``g^k`` a quasi-reflection or 1, and its special index."""
    m = g.order
    for k in range(1, m + 1):
        if m % k:
            continue  # the minimal k always divides m
        moving = [i for i, a in enumerate(g.exponents) if (k * a) % m]
        if len(moving) <= 1:
            return k, (moving[0] if moving else None)
    raise AssertionError("unreachable: g^m is the identity")


def sigma_prime_from(g: IsotropyElement, s: int, last: Optional[int]) -> Fraction:
    """``{s a_last / m} + sum_{i != last} {a_i / m}``."""
    m = g.order
    total = Fraction(0)
    for i, a in enumerate(g.exponents):
        total += _frac(s * a, m) if i == last else _frac(a, m)
    return total


def modified_rt_sum(g: IsotropyElement) -> RtVerdict:
    sigma = rt_sum(g)
    qr = g.is_quasi_reflection
    if g.is_identity or qr:
        # quotient by <g> is smooth; use the identity-coset value 1
        k, last = (1, None) if g.is_identity else (1, g.nontrivial_indices[0])
        return RtVerdict(sigma, Fraction(1), qr, g.is_reflection, True, k, g.order // k, last)
    k, last = quasi_reflection_power(g)
    s = g.order // k
    sp = sigma_prime_from(g, s, last) if last is not None else sigma
    return RtVerdict(sigma, sp, False, False, sp >= 1, k, s, last)


def induced_element(g: IsotropyElement, l: int) -> IsotropyElement:
    """Action of ``g^l <h>`` on ``C^n / <h>``, where ``h = g^k`` is the quasi-reflection power.

    The quotient coordinate along the special eigenvector is ``z^s``, so its
    exponent is multiplied by ``s``.
    """
    k, last = quasi_reflection_power(g)
    s = g.order // k
    exps = [l * a * (s if i == last else 1) for i, a in enumerate(g.exponents)]
    return IsotropyElement.reduced(g.order, exps)


GROUP_VERDICTS = ("Canonical", "NotCanonical", "Unknown")


def group_verdict(elements: Sequence[IsotropyElement], contains_all_elements: bool = True) -> str:
    """Decide canonicity of ``C^n / G`` from the listed elements.

    Without quasi-reflections the Reid-Tai criterion is an equivalence; with
    them only the modified sum's sufficient condition is available, so a
    failure there yields ``Unknown``. If the list is not the whole group no
    conclusion is drawn.
    """
    if not elements:
        raise EmptyGroup("group element list is empty")
    dims = {g.dim for g in elements}
    if len(dims) != 1:
        raise ValueError(f"elements act on spaces of different dimensions {sorted(dims)}")
    if not contains_all_elements:
        return "Unknown"
    present = set(elements)
    for g in elements:
        for j in range(1, g.order):
            if g.power(j) not in present:
                raise ValueError(f"list is not closed under powers: missing {g.power(j)}")
    if not any(g.is_quasi_reflection for g in elements):
        return "Canonical" if all(rt_sum(g) >= 1 for g in elements) else "NotCanonical"
    return "Canonical" if all(modified_rt_sum(g).passes for g in elements) else "Unknown"
