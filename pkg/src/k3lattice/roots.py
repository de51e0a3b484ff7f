"""Short vectors, root subsystems and the E8 fundamental-weight frame."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .errors import NotARootSet, NotPositiveDefinite, UnrecognisedComponent, ZeroVector
from .lattice import IntegralLattice, LatticeVector
from .named import E, E8_CARTAN


# --- enumeration -----------------------------------------------------------

def _quadratic_decomposition(gram) -> Tuple[List[Fraction], List[List[Fraction]]]:
    """Write ``x^T G x = sum_i q_i (x_i + sum_{j>i} mu_ij x_j)^2`` exactly."""
    n = len(gram)
    q = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    diag = [q[i][i] for i in range(n)]
    mu = [[q[i][j] if j > i else Fraction(0) for j in range(n)] for i in range(n)]
    return diag, mu


def _integer_window(centre: Fraction, radius_sq: Fraction) -> Tuple[int, int]:
    """Integers ``x`` with ``(x - centre)^2 <= radius_sq``, as a closed range."""
    m = round(centre)
    if (m - centre) ** 2 > radius_sq:
        return 1, 0
    r = isqrt(radius_sq.numerator // radius_sq.denominator)  # r <= sqrt(radius_sq)
    lo = min(m, (centre - r).__ceil__())
    hi = max(m, (centre + r).__floor__())
    while (lo - 1 - centre) ** 2 <= radius_sq:
        lo -= 1
    while (hi + 1 - centre) ** 2 <= radius_sq:
        hi += 1
    return lo, hi


def _check_definite(L: IntegralLattice) -> None:
    if not L.is_positive_definite:
        raise NotPositiveDefinite(f"{L.label or 'lattice'} has signature {L.signature}")


def short_vectors(L: IntegralLattice, bound: int) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """Yield ``(coords, norm)`` for every nonzero ``v`` with ``0 < (v, v) <= bound``.

    Fincke-Pohst recursion from the last coordinate down, with every bound
    evaluated in exact rationals. Order of the output is unspecified.
    """
    _check_definite(L)
    n = L.rank
    q, mu = _quadratic_decomposition(L.gram)
    x = [0] * n
    bound = Fraction(bound)

    def rec(i: int, remaining: Fraction):
        centre = -sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        lo, hi = _integer_window(centre, remaining / q[i])
        for xi in range(lo, hi + 1):
            x[i] = xi
            rest = remaining - q[i] * (xi - centre) ** 2
            if i == 0:
                yield tuple(x)
            else:
                yield from rec(i - 1, rest)
        x[i] = 0

    for v in rec(n - 1, bound):
        if any(v):
            yield v, L.norm(v)


def vectors_of_norm(L: IntegralLattice, n: int) -> List[LatticeVector]:
    """All ``v`` with ``(v, v) = n``, sorted lexicographically by coordinates."""
    if n <= 0:
        raise ValueError("norm must be positive")
    return [LatticeVector(L, c) for c in _coords_of_norm(L, n)]


@lru_cache(maxsize=256)
def _coords_of_norm(L: IntegralLattice, n: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(sorted(c for c, m in short_vectors(L, n) if m == n))


def roots_orthogonal_to(L: IntegralLattice, S: Sequence[LatticeVector]) -> List[LatticeVector]:
    _check_definite(L)
    GS = [linalg.matvec(L.gram, s.coords) for s in S]
    out = []
    for c in _coords_of_norm(L, 2):
        if all(sum(a * b for a, b in zip(c, g)) == 0 for g in GS):
            out.append(LatticeVector(L, c))
    return out


# --- ADE classification ----------------------------------------------------

@dataclass(frozen=True)
class RootSubsystemDescriptor:
    components: Tuple[Tuple[str, int], ...]  # (family, rank), ordered by family then rank desc
    total_roots: int

    def __str__(self) -> str:
        if not self.components:
            return "0"
        counts = Counter(self.components)
        parts = []
        for comp in sorted(counts, key=_component_key):
            k = counts[comp]
            parts.append(f"{k if k > 1 else ''}{comp[0]}{comp[1]}")
        return "+".join(parts)

    @classmethod
    def parse(cls, text: str) -> "RootSubsystemDescriptor":
        comps = []
        if text.strip() not in ("", "0"):
            for part in text.replace(" ", "").split("+"):
                i = 0
                while part[i].isdigit():
                    i += 1
                k = int(part[:i] or 1)
                comps.extend([(part[i], int(part[i + 1:]))] * k)
        comps.sort(key=_component_key)
        return cls(tuple(comps), sum(root_count(f, r) for f, r in comps))


def _component_key(comp: Tuple[str, int]):
    return comp[0], -comp[1]


def root_count(family: str, rank: int) -> int:
    if family == "A":
        return rank * (rank + 1)
    if family == "D":
        return 2 * rank * (rank - 1)
    return {6: 72, 7: 126, 8: 240}[rank]


def _identify(rank: int, count: int) -> Tuple[str, int]:
    # (rank, #roots) is a complete invariant for simply-laced irreducible systems
    # up to rank 8 once D3 is read as A3; E_n never collides with A_n or D_n.
    if count == rank * (rank + 1):
        return ("A", rank)
    if rank >= 4 and count == 2 * rank * (rank - 1):
        return ("D", rank)
    if rank in (6, 7, 8) and count == root_count("E", rank):
        return ("E", rank)
    raise UnrecognisedComponent(f"no ADE type with rank {rank} and {count} roots")


def classify_root_subsystem(roots: Sequence[LatticeVector]) -> RootSubsystemDescriptor:
    if not roots:
        return RootSubsystemDescriptor((), 0)
    L = roots[0].lattice
    coords = {r.coords for r in roots}
    if len(coords) != len(roots):
        raise NotARootSet("duplicate vectors")
    for r in roots:
        if r.norm != 2:
            raise NotARootSet(f"{list(r.coords)} has norm {r.norm}, expected 2")
        if tuple(-c for c in r.coords) not in coords:
            raise NotARootSet(f"{list(r.coords)} appears without its negative")
    positive = sorted(c for c in coords if c > tuple(-x for x in c))
    n = len(positive)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    G = L.gram
    Gp = [linalg.matvec(G, c) for c in positive]
    for i in range(n):
        for j in range(i + 1, n):
            if sum(a * b for a, b in zip(positive[i], Gp[j])) != 0:
                parent[find(i)] = find(j)
    groups: Dict[int, List[Tuple[int, ...]]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(positive[i])
    comps = []
    for members in groups.values():
        comps.append(_identify(linalg.rank(members), 2 * len(members)))
    comps.sort(key=_component_key)
    return RootSubsystemDescriptor(tuple(comps), 2 * n)


# --- E8 frame --------------------------------------------------------------

H = Fraction(1, 2)


def _e(i: int) -> List[Fraction]:
    v = [Fraction(0)] * 8
    v[i - 1] = Fraction(1)
    return v


def _simple_roots_euclidean() -> List[Tuple[Fraction, ...]]:
    a1 = [H if i in (1, 8) else -H for i in range(1, 9)]
    a2 = [x + y for x, y in zip(_e(1), _e(2))]
    out = [a1, a2]
    for k in range(3, 9):
        out.append([x - y for x, y in zip(_e(k - 1), _e(k - 2))])
    return [tuple(v) for v in out]


def _dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def in_e8_euclidean(v: Sequence) -> bool:
    """Membership in ``D8 u (D8 + (1/2, ..., 1/2))``."""
    v = [Fraction(x) for x in v]
    if all(x.denominator == 1 for x in v):
        return sum(v) % 2 == 0
    if all(x.denominator == 2 for x in v):
        return sum(x - H for x in v) % 2 == 0
    return False


@dataclass(frozen=True)
class E8Frame:
    """Simple roots and fundamental weights of E8 in Euclidean coordinates.

    Lattice coordinates elsewhere in the package are with respect to the
    simple roots, so ``lattice`` has Gram matrix equal to the Cartan matrix.
    """

    simple_roots: Tuple[Tuple[Fraction, ...], ...]
    fundamental_weights: Tuple[Tuple[Fraction, ...], ...]
    weight_gram: Tuple[Tuple[int, ...], ...]
    lattice: IntegralLattice

    def to_euclidean(self, coords: Sequence[int]) -> Tuple[Fraction, ...]:
        return tuple(sum(c * a[k] for c, a in zip(coords, self.simple_roots)) for k in range(8))

    def from_euclidean(self, v: Sequence) -> LatticeVector:
        """Coordinates in the simple-root basis; raises if ``v`` is not in E8."""
        if not in_e8_euclidean(v):
            raise ValueError(f"{[str(x) for x in v]} is not in E8")
        # (v, omega_j) is the j-th simple-root coordinate
        coords = [_dot(v, w) for w in self.fundamental_weights]
        assert all(c.denominator == 1 for c in coords)
        return LatticeVector(self.lattice, [int(c) for c in coords])

    def weight_to_root_coords(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sum(self.weight_gram[i][j] * coeffs[j] for j in range(8)) for i in range(8))


@lru_cache(maxsize=1)
def e8_frame() -> E8Frame:
    alphas = _simple_roots_euclidean()
    cartan = tuple(tuple(int(_dot(a, b)) for b in alphas) for a in alphas)
    assert cartan == E8_CARTAN
    inv = linalg.rational_inverse(cartan)
    assert all(x.denominator == 1 for row in inv for x in row)
    wgram = tuple(tuple(int(x) for x in row) for row in inv)
    # E8 Cartan matrix is symmetric, so omega_j = sum_i (C^{-1})_{ij} alpha_i
    omegas = tuple(
        tuple(sum(wgram[i][j] * alphas[i][k] for i in range(8)) for k in range(8))
        for j in range(8)
    )
    return E8Frame(tuple(alphas), omegas, wgram, E(8))


def weight_vector(coeffs: Sequence[int]) -> LatticeVector:
    """``sum c_i omega_i`` as a vector of E8 in simple-root coordinates."""
    if len(coeffs) != 8:
        raise ValueError("need 8 coefficients")
    if any(c < 0 for c in coeffs):
        raise ValueError("weight coefficients must be nonnegative")
    if not any(coeffs):
        raise ZeroVector("all weight coefficients are zero")
    F = e8_frame()
    return LatticeVector(F.lattice, F.weight_to_root_coords(coeffs))


def e8_roots() -> List[LatticeVector]:
    return vectors_of_norm(E(8), 2)


@lru_cache(maxsize=None)
def positive_root_supports(n: int = 8) -> Tuple[Tuple[int, ...], ...]:
    """Simple-root coordinates of the positive roots of E_n (n = 6, 7, 8)."""
    return tuple(c for c in _coords_of_norm(E(n), 2) if all(x >= 0 for x in c))
