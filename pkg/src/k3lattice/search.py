"""Low-weight cusp form searches: quasi pull-back bookkeeping and E8/E7 scans.

A polarisation lattice is realised inside ``II_{2,26}`` by sending the
generator of its negative definite part into one ``E8(-1)`` summand, so the
(-2)-roots orthogonal to it are the E8 roots orthogonal to a set ``S`` of
vectors in E8. The quasi pull-back of the weight 12 Borcherds form then
has weight ``12 + #roots / 2``.

The default ``method="weyl"`` scans only dominant vectors: every vector of
E8 (resp. E7) is Weyl-conjugate to exactly one dominant one and the number
of orthogonal roots is Weyl-invariant, so the scan is exhaustive. For a
dominant ``l = sum c_i omega_i`` the orthogonal roots are those of the
sub-diagram on ``{i : c_i = 0}``. ``method="full"`` walks every vector of
the given norm instead and is only practical for small ``d``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import linalg
from .errors import BadResidue, OddRootCount
from .lattice import LatticeVector
from .named import E
from .roots import (
    RootSubsystemDescriptor,
    _coords_of_norm,
    classify_root_subsystem,
    e8_frame,
    positive_root_supports,
    roots_orthogonal_to,
    weight_vector,
)

K3_DIM = 19
HILB2_DIM = 20


@dataclass(frozen=True)
class QpbReport:
    root_count: int
    n_half: int
    weight: int
    is_cusp: bool
    domain_dim: int
    low_weight: bool
    canonical_weight: bool


def qpb_report(root_count: int, domain_dim: int) -> QpbReport:
    if root_count < 0 or root_count % 2:
        raise OddRootCount(f"root count {root_count} must be even and nonnegative")
    if domain_dim < 3:
        raise ValueError("domain dimension must be at least 3")
    n_half = root_count // 2
    weight = 12 + n_half
    return QpbReport(
        root_count=root_count,
        n_half=n_half,
        weight=weight,
        is_cusp=root_count > 0,
        domain_dim=domain_dim,
        low_weight=weight < domain_dim,
        canonical_weight=weight == domain_dim,
    )


@dataclass(frozen=True)
class SearchWitness:
    vectors: Tuple[LatticeVector, ...]
    orthogonal_roots: RootSubsystemDescriptor
    report: QpbReport
    extra: Dict = field(default_factory=dict, compare=False)

    def verify(self) -> bool:
        """Recount the orthogonal roots from scratch."""
        roots = roots_orthogonal_to(E(8), list(self.vectors))
        return (len(roots) == self.orthogonal_roots.total_roots == self.report.root_count
                and classify_root_subsystem(roots) == self.orthogonal_roots)

    def to_dict(self) -> Dict:
        out = {
            "vectors": [list(v.coords) for v in self.vectors],
            "norms": [v.norm for v in self.vectors],
            "roots": self.report.root_count,
            "root_system": str(self.orthogonal_roots),
            "weight": self.report.weight,
        }
        out.update(self.extra)
        return out


VERDICTS = ("GeneralType", "KodairaNonNegative", "Inconclusive")


@dataclass(frozen=True)
class Verdict:
    kind: str
    witness: Optional[SearchWitness] = None

    def to_dict(self) -> Dict:
        return {"verdict": self.kind, "witness": self.witness.to_dict() if self.witness else None}


def _make_witness(vectors: Sequence[LatticeVector], domain_dim: int, **extra) -> SearchWitness:
    roots = roots_orthogonal_to(E(8), list(vectors))
    desc = classify_root_subsystem(roots)
    return SearchWitness(tuple(vectors), desc, qpb_report(len(roots), domain_dim), extra)


# --- dominant-chamber enumeration -------------------------------------------

def dominant_coefficients(inverse_cartan: Sequence[Sequence], norm: int) -> Iterator[Tuple[int, ...]]:
    """Nonnegative ``c`` with ``c^T W c = norm``, lexicographically ascending.

    ``W`` (inverse Cartan matrix) has positive entries, so partial sums only
    grow and the recursion can stop as soon as they overshoot.
    """
    W = [[Fraction(x) for x in row] for row in inverse_cartan]
    n = len(W)
    c = [0] * n
    target = Fraction(norm)

    def rec(i: int, partial: Fraction):
        if i == n:
            if partial == target:
                yield tuple(c)
            return
        k = 0
        while True:
            # norm with c_i = k and c_{>i} = 0
            cross = 2 * sum((W[i][j] * c[j] for j in range(i)), Fraction(0))
            value = partial + k * cross + k * k * W[i][i]
            if value > target:
                break
            c[i] = k
            yield from rec(i + 1, value)
            k += 1
        c[i] = 0

    yield from rec(0, Fraction(0))


def _subdiagram_roots(coeffs: Sequence[int], rank: int) -> int:
    zero = {i for i, x in enumerate(coeffs) if x == 0}
    return 2 * sum(1 for r in positive_root_supports(rank)
                   if all(i in zero for i, x in enumerate(r) if x))


@lru_cache(maxsize=None)
def _inverse_cartan(rank: int):
    return tuple(tuple(row) for row in linalg.rational_inverse(E(rank).gram))


def _positive_reps(norm: int) -> List[Tuple[int, ...]]:
    """One vector per +- pair (the lexicographically larger), ascending."""
    return [v for v in _coords_of_norm(E(8), norm) if v > tuple(-x for x in v)]


def _orth_root_count(vectors: Sequence[Sequence[int]]) -> int:
    G = E(8).gram
    GS = [linalg.matvec(G, s) for s in vectors]
    return sum(1 for r in _coords_of_norm(E(8), 2)
               if all(sum(a * b for a, b in zip(r, g)) == 0 for g in GS))


# --- searches ----------------------------------------------------------------

def k3_search(d: int, min_roots: int = 2, max_roots: int = 12,
              method: str = "weyl") -> Optional[SearchWitness]:
    """First ``l`` in E8 with ``l^2 = 2d`` orthogonal to between min and max roots."""
    if d < 1:
        raise ValueError("d must be positive")
    if not 0 <= min_roots <= max_roots:
        raise ValueError("need 0 <= min_roots <= max_roots")
    if method == "weyl":
        W = e8_frame().weight_gram
        for c in dominant_coefficients(W, 2 * d):
            if min_roots <= _subdiagram_roots(c, 8) <= max_roots:
                return _make_witness([weight_vector(c)], K3_DIM, d=d, weight_coefficients=list(c))
        return None
    if method == "full":
        for v in _positive_reps(2 * d):
            if min_roots <= _orth_root_count([v]) <= max_roots:
                return _make_witness([LatticeVector(E(8), v)], K3_DIM, d=d)
        return None
    raise ValueError(f"unknown method {method!r}")


def highest_root() -> LatticeVector:
    """``omega_8``: orthogonal to alpha_1..alpha_7, so its complement is E7 = <alpha_1..alpha_7>."""
    return weight_vector((0, 0, 0, 0, 0, 0, 0, 1))


def hilb2_split_search(d: int, max_roots: int = 14, min_roots: int = 2,
                       method: str = "weyl",
                       root: Optional[LatticeVector] = None) -> Optional[SearchWitness]:
    """First ``l`` in ``E7 = r^perp`` with ``l^2 = 2d`` and ``min <= #R({r, l}^perp) <= max``.

    ``weyl`` fixes ``r`` to the highest root. ``full`` uses ``root`` (default:
    the lexicographically first E8 root) and scans every vector of norm 2d.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if max_roots % 2 or not 0 <= min_roots <= max_roots:
        raise ValueError("need even max_roots >= min_roots >= 0")
    if method == "weyl":
        if root is not None:
            raise ValueError("the weyl method always uses the highest root")
        r = highest_root()
        W7 = _inverse_cartan(7)
        for c in dominant_coefficients(W7, 2 * d):
            x = [sum(W7[i][j] * c[j] for j in range(7)) for i in range(7)]
            if any(v.denominator != 1 for v in x):
                continue  # weight of E7 outside the root lattice
            if min_roots <= _subdiagram_roots(c, 7) <= max_roots:
                l = LatticeVector(E(8), [int(v) for v in x] + [0])
                return _make_witness([r, l], HILB2_DIM, d=d, e7_weight_coefficients=list(c))
        return None
    if method == "full":
        if root is None:
            root = LatticeVector(E(8), _coords_of_norm(E(8), 2)[0])
        G = E(8).gram
        gr = linalg.matvec(G, root.coords)
        for v in _positive_reps(2 * d):
            if sum(a * b for a, b in zip(v, gr)) != 0:
                continue
            if min_roots <= _orth_root_count([root.coords, v]) <= max_roots:
                return _make_witness([root, LatticeVector(E(8), v)], HILB2_DIM, d=d)
        return None
    raise ValueError(f"unknown method {method!r}")


def half_plus_candidates(d: int) -> Iterator[Tuple[int, ...]]:
    """Nonincreasing odd ``(x3, ..., x8)`` with ``sum x_i^2 = 8c - 2``, ``c = (d+1)/4``.

    Ascending lexicographic order. Membership in E8 is not checked here.
    """
    if d % 4 != 3:
        raise BadResidue(f"non-split polarisations need d = 3 mod 4, got {d}")
    target = 2 * (d + 1) - 2
    out: List[Tuple[int, ...]] = []

    def rec(prefix: List[int], rem: int, cap: int):
        left = 6 - len(prefix)
        if left == 0:
            if rem == 0:
                out.append(tuple(prefix))
            return
        x = 1
        while x <= cap and x * x + (left - 1) <= rem:
            rec(prefix + [x], rem - x * x, x)
            x += 2

    rec([], target, target)
    return iter(sorted(out))


def nonsplit_search(d: int, max_roots: int = 14, min_roots: int = 2) -> Optional[SearchWitness]:
    """Half-integral embeddings ``<e2 - e1, v>`` of the binary form of determinant d.

    ``v = 1/2 (e1 - e2 + x3 e3 + ... + x8 e8)`` with odd ``x_i``; the Gram
    matrix of the pair is ``[[2, -1], [-1, (d+1)/2]]``.
    """
    if d % 4 != 3:
        raise BadResidue(f"non-split polarisations need d = 3 mod 4, got {d}")
    F = e8_frame()
    h = Fraction(1, 2)
    a = F.from_euclidean([-1, 1, 0, 0, 0, 0, 0, 0])
    for x in half_plus_candidates(d):
        euclid = [h, -h] + [Fraction(t, 2) for t in x]
        try:
            v = F.from_euclidean(euclid)
        except ValueError:
            continue
        gram = [[a.norm, a.pair(v)], [v.pair(a), v.norm]]
        assert linalg.det(gram) == d and gram[0][1] == -1
        n = _orth_root_count([a.coords, v.coords])
        if min_roots <= n <= max_roots:
            return _make_witness([a, v], HILB2_DIM, d=d, x=list(x),
                                 euclidean=[str(t) for t in euclid], gram=gram)
    return None


CASES = ("K3", "Hilb2Split", "Hilb2NonSplit")


def classify(case: str, d: int) -> Verdict:
    """One-sided verdict: ``Inconclusive`` never claims non-general type."""
    if case == "K3":
        w = k3_search(d, 2, 12)
        if w:
            return Verdict("GeneralType", w)
        w = k3_search(d, 14, 14)
        return Verdict("KodairaNonNegative", w) if w else Verdict("Inconclusive")
    if case == "Hilb2Split":
        search = lambda lo, hi: hilb2_split_search(d, max_roots=hi, min_roots=lo)
    elif case == "Hilb2NonSplit":
        if d % 4 != 3:
            raise BadResidue(f"non-split polarisations need d = 3 mod 4, got {d}")
        search = lambda lo, hi: nonsplit_search(d, max_roots=hi, min_roots=lo)
    else:
        raise ValueError(f"unknown case {case!r}")
    # weight 12 + #roots/2 against dimension 20
    w = search(2, 14)
    if w:
        return Verdict("GeneralType", w)
    w = search(16, 16)
    return Verdict("KodairaNonNegative", w) if w else Verdict("Inconclusive")
