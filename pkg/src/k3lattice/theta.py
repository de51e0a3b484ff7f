"""Representation numbers of definite lattices and the E7/E6/D6 inequality.

For the root lattices D_n, E6, E7, E8 the theta coefficients come from the
Euclidean model ``E8 = D8 u (D8 + h)``, ``h = (1/2, ..., 1/2)``, in which

* ``E7 = {x in E8 : x7 = x8}``        (orthogonal complement of ``e7 - e8``)
* ``E6 = {x in E8 : x6 = x7 = -x8}``  (orthogonal complement of an A2)

so every count reduces to sums of squares over integers or odd integers.
Any other positive definite lattice is handled by direct enumeration.
Both routes are exact.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotARoot
from .lattice import IntegralLattice, LatticeVector
from .named import D, E
from .roots import e8_roots, short_vectors, _check_definite

log = logging.getLogger(__name__)


def _power_series(terms: Dict[int, int], power: int, bound: int) -> List[int]:
    """Coefficients up to ``bound`` of ``(sum_k terms[k] q^k) ** power``."""
    out = [0] * (bound + 1)
    out[0] = 1
    for _ in range(power):
        new = [0] * (bound + 1)
        for i, a in enumerate(out):
            if a:
                for k, b in terms.items():
                    if i + k > bound:
                        continue
                    new[i + k] += a * b
        out = new
    return out


@lru_cache(maxsize=None)
def sums_of_squares(k: int, bound: int) -> Tuple[int, ...]:
    """``r_k(N)`` = #{x in Z^k : sum x_i^2 = N} for N <= bound."""
    terms: Dict[int, int] = {0: 1}
    t = 1
    while t * t <= bound:
        terms[t * t] = 2
        t += 1
    return tuple(_power_series(terms, k, bound))


@lru_cache(maxsize=None)
def sums_of_odd_squares(k: int, bound: int) -> Tuple[int, ...]:
    """#{y in (2Z+1)^k : sum y_i^2 = M} for M <= bound."""
    terms: Dict[int, int] = {}
    t = 1
    while t * t <= bound:
        terms[t * t] = 2
        t += 2
    return tuple(_power_series(terms, k, bound))


def _dn_series(n: int, bound: int) -> List[int]:
    # sum(x) and sum(x^2) have the same parity, so for even N the D_n
    # condition is automatic and odd N never occurs.
    r = sums_of_squares(n, bound)
    return [r[N] if N % 2 == 0 else 0 for N in range(bound + 1)]


def _e8_series(bound: int) -> List[int]:
    r8 = sums_of_squares(8, bound)
    o8 = sums_of_odd_squares(8, 4 * bound)
    out = [0] * (bound + 1)
    for N in range(0, bound + 1, 2):
        # half-integral part: y = 2x odd, sum(y) = 0 mod 4 keeps half the sign patterns
        out[N] = r8[N] + o8[4 * N] // 2
    return out


def _sliced_series(k: int, weight: int, bound: int) -> List[int]:
    """E8 vectors with ``k`` free coordinates plus one coordinate of weight ``weight``.

    ``weight = 2`` gives E7 (x7 = x8 = t), ``weight = 3`` gives E6
    (x6 = x7 = -x8 = t); the norm is ``|x|^2 + weight * t^2``.
    """
    rk = sums_of_squares(k, bound)
    ok = sums_of_odd_squares(k, 4 * bound)
    out = [0] * (bound + 1)
    for N in range(0, bound + 1, 2):
        total = 0
        t = 0
        while weight * t * t <= N:
            total += rk[N - weight * t * t] * (1 if t == 0 else 2)
            t += 1
        s = 1
        while weight * s * s <= 4 * N:
            # +-s, and the sum condition mod 4 keeps half the sign patterns
            total += ok[4 * N - weight * s * s]
            s += 2
        out[N] = total
    return out


def _closed_form(L: IntegralLattice):
    """Series builder if ``L`` is literally one of our root lattice Grams."""
    if L.gram == E(8).gram:
        return _e8_series
    if L.gram == E(7).gram:
        return lambda b: _sliced_series(6, 2, b)
    if L.gram == E(6).gram:
        return lambda b: _sliced_series(5, 3, b)
    if L.rank >= 2 and L.gram == D(L.rank).gram:
        return lambda b: _dn_series(L.rank, b)
    return None


@dataclass
class ThetaTable:
    """Counts ``N_L(m)`` for ``0 < m <= bound`` (index 0 unused)."""

    lattice: IntegralLattice
    bound: int
    coeffs: List[int]

    def __getitem__(self, m: int) -> int:
        if m > self.bound:
            raise KeyError(m)
        return self.coeffs[m]

    def to_json(self) -> str:
        return json.dumps({
            "gram": [list(r) for r in self.lattice.gram],
            "counts": {str(m): c for m, c in enumerate(self.coeffs) if m > 0},
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text: str, lattice: IntegralLattice) -> "ThetaTable":
        obj = json.loads(text)
        if [list(r) for r in lattice.gram] != obj["gram"]:
            raise ValueError("cached theta table belongs to a different Gram matrix")
        counts = {int(k): int(v) for k, v in obj["counts"].items()}
        bound = max(counts, default=0)
        return cls(lattice, bound, [0] + [counts.get(m, 0) for m in range(1, bound + 1)])


def build_theta_table(L: IntegralLattice, bound: int) -> ThetaTable:
    _check_definite(L)
    f = _closed_form(L)
    coeffs = [0] * (bound + 1)
    if f is not None:
        coeffs = f(bound)
        coeffs[0] = 0
    else:
        for _, m in short_vectors(L, bound):
            coeffs[m] += 1
    return ThetaTable(L, bound, coeffs)


_TABLES: Dict[Tuple, ThetaTable] = {}
_CACHE_DIR: Optional[str] = None


def set_cache_dir(path: Optional[str]) -> None:
    global _CACHE_DIR
    _CACHE_DIR = path
    if path:
        os.makedirs(path, exist_ok=True)


def _cache_path(L: IntegralLattice) -> str:
    # str hashes are salted per process, so use a stable digest
    key = ",".join(str(x) for row in L.gram for x in row)
    digest = hashlib.sha1(key.encode()).hexdigest()[:16]
    return os.path.join(_CACHE_DIR, f"theta_{len(L.gram)}_{digest}.json")


def theta_table(L: IntegralLattice, bound: int) -> ThetaTable:
    """Memoised table, grown to at least ``bound``; keyed by the Gram matrix."""
    t = _TABLES.get(L.gram)
    if t is not None and t.bound >= bound:
        if _CACHE_DIR and not os.path.exists(_cache_path(L)):
            _write_cache(t)
        return t
    if _CACHE_DIR:
        path = _cache_path(L)
        if os.path.exists(path):
            with open(path) as fh:
                try:
                    cached = ThetaTable.from_json(fh.read(), L)
                except ValueError:
                    cached = None
            if cached is not None and cached.bound >= bound:
                _TABLES[L.gram] = cached
                return cached
    t = build_theta_table(L, bound)
    _TABLES[L.gram] = t
    if _CACHE_DIR:
        _write_cache(t)
    return t


def _write_cache(t: ThetaTable) -> None:
    with open(_cache_path(t.lattice), "w") as fh:
        fh.write(t.to_json())


def rep_number(L: IntegralLattice, n: int) -> int:
    """#{v in L : (v, v) = n}. Odd n on an even lattice gives 0."""
    if n <= 0:
        raise ValueError("n must be positive")
    _check_definite(L)
    if n % 2 and L.is_even:
        return 0
    known = _TABLES.get(L.gram)
    if known is None or known.bound < n:
        # grow geometrically so scans do not rebuild the table per n
        theta_table(L, max(n, 2 * known.bound if known else n))
    return _TABLES[L.gram][n]


@dataclass(frozen=True)
class InequalityCheck:
    d: int
    lhs: int
    rhs: int
    holds: bool


def mainineq_check(d: int) -> InequalityCheck:
    """``4 N_E7(2d) > 28 N_E6(2d) + 63 N_D6(2d)``."""
    if d < 1:
        raise ValueError("d must be >= 1")
    n = 2 * d
    lhs = 4 * rep_number(E(7), n)
    rhs = 28 * rep_number(E(6), n) + 63 * rep_number(D(6), n)
    return InequalityCheck(d, lhs, rhs, lhs > rhs)


def mainineq_failure_scan(d_max: int) -> List[int]:
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    for L in (E(7), E(6), D(6)):
        theta_table(L, 2 * d_max)
    return [d for d in range(1, d_max + 1) if not mainineq_check(d).holds]


@dataclass(frozen=True)
class BouquetCheck:
    e7_roots: int
    a2_copies: int
    central: int


def bouquet_check(r: LatticeVector) -> BouquetCheck:
    """Split the E8 roots into ``r``-perp, ``{r, -r}`` and A2 triples through ``r``."""
    L = E(8)
    if r.lattice.gram != L.gram:
        raise NotARoot("vector does not live in E8")
    if r.norm != 2:
        raise NotARoot(f"{list(r.coords)} has norm {r.norm}")
    roots = [v.coords for v in e8_roots()]
    rc = r.coords
    neg = tuple(-x for x in rc)
    perp = central = 0
    copies = set()
    for s in roots:
        p = L.pair(s, rc)
        if s == rc or s == neg:
            central += 1
        elif p == 0:
            perp += 1
        else:
            # s lies in the A2 spanned by r and s: {+-r, +-s, +-(s - p r)}
            t = tuple(a - p * b for a, b in zip(s, rc))
            members = frozenset({s, tuple(-x for x in s), t, tuple(-x for x in t)})
            copies.add(members)
    assert all(len(c) == 4 for c in copies)
    assert perp + central + 4 * len(copies) == len(roots)
    return BouquetCheck(perp, len(copies), central)
