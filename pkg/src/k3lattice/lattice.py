"""Integral lattices given by Gram matrices, and their arithmetic invariants."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from . import linalg
from .errors import (
    DegenerateLattice,
    DegenerateSpan,
    NonPrimitive,
    ZeroVector,
)


def _as_gram(gram: Iterable[Iterable[int]]) -> Tuple[Tuple[int, ...], ...]:
    rows = tuple(tuple(int(x) for x in row) for row in gram)
    n = len(rows)
    if n == 0:
        raise DegenerateLattice("empty Gram matrix")
    if any(len(r) != n for r in rows):
        raise DegenerateLattice("Gram matrix is not square")
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise DegenerateLattice("Gram matrix is not symmetric")
    return rows


@dataclass(frozen=True)
class IntegralLattice:
    """A nondegenerate integral lattice, stored as its Gram matrix."""

    gram: Tuple[Tuple[int, ...], ...]
    label: Optional[str] = field(default=None, compare=False)

    def __init__(self, gram, label: Optional[str] = None):
        rows = _as_gram(gram)
        object.__setattr__(self, "gram", rows)
        object.__setattr__(self, "label", label)
        if self.det == 0:
            raise DegenerateLattice(f"Gram determinant is zero ({label or 'lattice'})")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return linalg.det(self.gram)

    @cached_property
    def signature(self) -> Tuple[int, int]:
        p, q, _ = linalg.signature(self.gram)
        return p, q

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_positive_definite(self) -> bool:
        return self.signature == (self.rank, 0)

    def pair(self, x: Sequence, y: Sequence):
        return linalg.bilinear(self.gram, x, y)

    def norm(self, x: Sequence):
        return linalg.bilinear(self.gram, x, x)

    def vector(self, coords: Sequence[int]) -> "LatticeVector":
        return LatticeVector(self, coords)

    def scaled(self, m: int) -> "IntegralLattice":
        label = f"{self.label}({m})" if self.label else None
        return IntegralLattice([[m * x for x in row] for row in self.gram], label)

    def __add__(self, other: "IntegralLattice") -> "IntegralLattice":
        return direct_sum(self, other)

    def __repr__(self) -> str:
        name = self.label or "lattice"
        return f"IntegralLattice({name}, rank={self.rank}, det={self.det})"

    @cached_property
    def _dual_data(self):
        diag, P, Q = linalg.smith_normal_form(self.gram)
        return diag, P, Q


def direct_sum(*lattices: IntegralLattice) -> IntegralLattice:
    n = sum(L.rank for L in lattices)
    G = [[0] * n for _ in range(n)]
    o = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                G[o + i][o + j] = L.gram[i][j]
        o += L.rank
    labels = [L.label for L in lattices]
    label = "+".join(labels) if all(labels) else None
    return IntegralLattice(G, label)


@dataclass(frozen=True)
class LatticeVector:
    lattice: IntegralLattice
    coords: Tuple[int, ...]

    def __init__(self, lattice: IntegralLattice, coords: Sequence[int]):
        coords = tuple(int(c) for c in coords)
        if len(coords) != lattice.rank:
            raise ValueError(f"expected {lattice.rank} coordinates, got {len(coords)}")
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "coords", coords)

    @property
    def norm(self) -> int:
        return self.lattice.norm(self.coords)

    def pair(self, other: "LatticeVector | Sequence[int]") -> int:
        y = other.coords if isinstance(other, LatticeVector) else other
        return self.lattice.pair(self.coords, y)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_primitive(self) -> bool:
        return linalg.vector_gcd(self.coords) == 1

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(self.lattice, [-c for c in self.coords])

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.lattice, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(self.lattice, [a - b for a, b in zip(self.coords, other.coords)])

    def __rmul__(self, k: int) -> "LatticeVector":
        return LatticeVector(self.lattice, [k * c for c in self.coords])

    def __repr__(self) -> str:
        return f"LatticeVector({list(self.coords)}, norm={self.norm})"


@dataclass(frozen=True)
class LatticeInfo:
    det: int
    abs_det: int
    signature: Tuple[int, int]
    even: bool


def lattice_info(L: IntegralLattice) -> LatticeInfo:
    return LatticeInfo(L.det, abs(L.det), L.signature, L.is_even)


def divisor_of(v: LatticeVector) -> int:
    """Positive generator of the ideal ``(v, L)``."""
    if v.is_zero:
        raise ZeroVector("divisor of the zero vector is undefined")
    return linalg.vector_gcd(linalg.matvec(v.lattice.gram, v.coords))


@dataclass(frozen=True)
class OrthogonalComplement:
    sublattice: IntegralLattice
    embedding: Tuple[Tuple[int, ...], ...]  # rows: basis vectors in ambient coordinates


def orthogonal_complement(L: IntegralLattice, S: Sequence[LatticeVector]) -> OrthogonalComplement:
    """Primitive sublattice ``{x in L : (x, s) = 0 for s in S}``.

    The basis is the row Hermite normal form of the integer kernel, so the
    output is deterministic.
    """
    rows = [list(s.coords) for s in S]
    if rows:
        if linalg.rank(rows) != len(rows):
            raise DegenerateSpan("constraint vectors are linearly dependent")
        restricted = [[L.pair(a, b) for b in rows] for a in rows]
        if linalg.det(restricted) == 0:
            raise DegenerateSpan("form restricted to span(S) is degenerate")
    A = [linalg.matvec(L.gram, r) for r in rows]
    B = linalg.integer_kernel(A, L.rank)
    gram = linalg.matmul(linalg.matmul(B, L.gram), linalg.transpose(B))
    label = L.label if not rows else None
    return OrthogonalComplement(IntegralLattice(gram, label), tuple(tuple(r) for r in B))


def _mod2(q: Fraction, modulus: int) -> Fraction:
    q = Fraction(q)
    return q - modulus * (q // modulus)


@dataclass(frozen=True)
class DiscriminantGroup:
    """``L^dual / L`` as a product of cyclic groups.

    ``generators`` are rational coordinate vectors (in the lattice basis)
    of dual-lattice representatives, one per invariant factor. For an even
    lattice ``qform_values`` live in ``Q/2Z``; for an odd one in ``Q/Z``
    (``modulus`` records which).
    """

    invariant_factors: Tuple[int, ...]
    generators: Tuple[Tuple[Fraction, ...], ...]
    qform_values: Tuple[Fraction, ...]
    modulus: int
    lattice: IntegralLattice = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def class_of(self, x: Sequence) -> Tuple[int, ...]:
        """Coordinates in ``prod Z/d_i`` of a dual vector given in lattice coordinates."""
        L = self.lattice
        y = linalg.matvec(L.gram, [Fraction(c) for c in x])
        if any(Fraction(c).denominator != 1 for c in y):
            raise ValueError("vector is not in the dual lattice")
        diag, P, _ = L._dual_data
        z = linalg.matvec(P, [int(c) for c in y])
        k = len(diag) - len(self.invariant_factors)
        return tuple(int(z[k + i]) % d for i, d in enumerate(self.invariant_factors))

    def q(self, x: Sequence) -> Fraction:
        return _mod2(self.lattice.norm([Fraction(c) for c in x]), self.modulus)


def discriminant_group(L: IntegralLattice) -> DiscriminantGroup:
    diag, _, Q = L._dual_data
    factors, gens, qvals = [], [], []
    for j, d in enumerate(diag):
        if d == 1:
            continue
        g = tuple(Fraction(Q[i][j], d) for i in range(L.rank))
        factors.append(d)
        gens.append(g)
    modulus = 2 if L.is_even else 1
    qvals = [_mod2(L.norm(g), modulus) for g in gens]
    return DiscriminantGroup(tuple(factors), tuple(gens), tuple(qvals), modulus, L)


REFLECTION_KINDS = ("Identity", "MinusIdentity", "Other", "NotIntegral")


def reflect(L: IntegralLattice, r: Sequence, x: Sequence) -> List[Fraction]:
    """``x - 2 (x, r) / (r, r) * r`` in rational coordinates."""
    f = Fraction(2 * L.pair(x, r), L.norm(r))
    return [Fraction(a) - f * b for a, b in zip(x, r)]


def reflection_action(L: IntegralLattice, r: LatticeVector) -> str:
    """Classify the reflection in ``r`` by its action on the discriminant group.

    Returns one of ``Identity``, ``MinusIdentity``, ``Other``, ``NotIntegral``.
    When ``D(L)`` is 2-elementary the two signs agree and ``Identity`` wins.
    """
    if r.is_zero:
        raise ZeroVector("cannot reflect in the zero vector")
    if not r.is_primitive:
        raise NonPrimitive(f"{list(r.coords)} is not primitive")
    n2 = r.norm
    if n2 == 0:
        raise ZeroVector("reflection vector is isotropic")
    div = divisor_of(r)
    integral = (2 * div) % n2 == 0
    if not integral:
        return "NotIntegral"
    # div(r) | r^2 | 2 div(r) for a primitive reflective vector
    assert n2 % div == 0, (n2, div)

    D = discriminant_group(L)
    plus = minus = True
    for g in D.generators:
        s = reflect(L, r.coords, g)
        if D.class_of([a - b for a, b in zip(s, g)]) != D.class_of([0] * L.rank):
            plus = False
        if any(D.class_of([a + b for a, b in zip(s, g)])):
            minus = False
    if plus:
        return "Identity"
    if minus:
        return "MinusIdentity"
    return "Other"


@dataclass(frozen=True)
class EichlerInvariant:
    norm: int
    star_class: Tuple[int, ...]
    divisor: int


def eichler_invariant(L: IntegralLattice, v: LatticeVector) -> EichlerInvariant:
    """``(v^2, class of v/div(v) in D(L))``.

    Equal invariants mean one orbit of the stable orthogonal group only when
    ``L`` contains two orthogonal hyperbolic planes; that hypothesis is not
    checked here.
    """
    if v.is_zero:
        raise ZeroVector("zero vector has no Eichler invariant")
    if not v.is_primitive:
        raise NonPrimitive(f"{list(v.coords)} is not primitive")
    div = divisor_of(v)
    D = discriminant_group(L)
    star = [Fraction(c, div) for c in v.coords]
    return EichlerInvariant(v.norm, D.class_of(star), div)


def change_basis(L: IntegralLattice, U: Sequence[Sequence[int]]) -> IntegralLattice:
    """Gram matrix in the basis given by the rows of ``U`` (need not be unimodular)."""
    return IntegralLattice(linalg.matmul(linalg.matmul(U, L.gram), linalg.transpose(U)), L.label)
