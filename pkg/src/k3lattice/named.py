"""Standard lattices and the lattice literal mini-language.

Grammar (whitespace ignored)::

    spec    := term ('+' term)*
    term    := [count] atom ['(' int ')']
    atom    := 'U' | 'A' n | 'D' n | 'E6' | 'E7' | 'E8' | '<' expr '>'
    expr    := ['-'] [int] [name]        e.g. -2d, 6, -d

``2U`` means ``U+U``; ``E8(-1)`` rescales the form by -1. Names inside
``<...>`` are looked up in the keyword arguments to :func:`parse_lattice`.
A JSON object ``{"gram": [[...]]}`` is accepted as well.
"""
from __future__ import annotations

import json
import re
from typing import Dict, List

from .errors import LatticeSyntaxError
from .lattice import IntegralLattice, direct_sum

# Cartan matrix of E8 with the labelling alpha_1 - alpha_3 - alpha_4 - ... - alpha_8,
# alpha_2 attached to alpha_4. E7 and E6 are the leading principal blocks.
E8_CARTAN = (
    (2, 0, -1, 0, 0, 0, 0, 0),
    (0, 2, 0, -1, 0, 0, 0, 0),
    (-1, 0, 2, -1, 0, 0, 0, 0),
    (0, -1, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)


def hyperbolic_plane() -> IntegralLattice:
    return IntegralLattice([[0, 1], [1, 0]], "U")


def rank_one(k: int) -> IntegralLattice:
    return IntegralLattice([[k]], f"<{k}>")


def A(n: int) -> IntegralLattice:
    if n < 1:
        raise LatticeSyntaxError("A_n needs n >= 1")
    G = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
    return IntegralLattice(G, f"A{n}")


def D(n: int) -> IntegralLattice:
    # chain 1-2-...-(n-1), node n attached to node n-2
    if n < 2:
        raise LatticeSyntaxError("D_n needs n >= 2")
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = 2
    for i in range(n - 2):
        G[i][i + 1] = G[i + 1][i] = -1
    if n >= 3:
        G[n - 3][n - 1] = G[n - 1][n - 3] = -1
    return IntegralLattice(G, f"D{n}")


def E(n: int) -> IntegralLattice:
    if n not in (6, 7, 8):
        raise LatticeSyntaxError(f"E{n} is not an exceptional root lattice")
    return IntegralLattice([row[:n] for row in E8_CARTAN[:n]], f"E{n}")


def k3_lattice() -> IntegralLattice:
    return parse_lattice("3U+2E8(-1)")


def l2d(d: int) -> IntegralLattice:
    """``2U + 2E8(-1) + <-2d>``, the complement of a degree-2d polarisation."""
    return parse_lattice("2U+2E8(-1)+<-2d>", d=d)


def k3n_lattice(n: int) -> IntegralLattice:
    """Beauville lattice ``3U + 2E8(-1) + <-(2n-2)>`` of K3^[n]-type manifolds."""
    return parse_lattice("3U+2E8(-1)+<-k>", k=2 * n - 2)


def l22d(d: int) -> IntegralLattice:
    """Split K3^[2] complement ``2U + 2E8(-1) + <-2> + <-2d>``."""
    return parse_lattice("2U+2E8(-1)+<-2>+<-2d>", d=d)


def q_binary(d: int) -> IntegralLattice:
    """Negative definite binary form of determinant d (d = 3 mod 4)."""
    if d % 4 != 3:
        raise LatticeSyntaxError("Q(d) needs d = 3 mod 4")
    return IntegralLattice([[-2, 1], [1, -(d + 1) // 2]], f"Q({d})")


def lq_lattice(d: int) -> IntegralLattice:
    """Non-split K3^[2] complement ``2U + 2E8(-1) + Q(d)``."""
    return direct_sum(parse_lattice("2U+2E8(-1)"), q_binary(d))


_TERM = re.compile(
    r"""(?P<count>\d+)?
        (?:(?P<U>U)|(?P<A>A)(?P<an>\d+)|(?P<D>D)(?P<dn>\d+)|E(?P<en>\d+)
           |<(?P<inner>[^>]*)>)
        (?:\((?P<scale>[-+]?\d+)\))?$""",
    re.X,
)
_EXPR = re.compile(r"^(?P<sign>[-+]?)(?P<coef>\d*)(?P<name>[A-Za-z_]\w*)?$")


def _eval_expr(text: str, params: Dict[str, int]) -> int:
    m = _EXPR.match(text.strip())
    if not m or (not m.group("coef") and not m.group("name")):
        raise LatticeSyntaxError(f"bad rank-one entry <{text}>")
    value = int(m.group("coef")) if m.group("coef") else 1
    name = m.group("name")
    if name:
        if name not in params:
            raise LatticeSyntaxError(f"unbound parameter {name!r} in <{text}>")
        value *= int(params[name])
    return -value if m.group("sign") == "-" else value


def _split_terms(spec: str) -> List[str]:
    terms, depth, cur = [], 0, ""
    for ch in spec:
        if ch in "<(":
            depth += 1
        elif ch in ">)":
            depth -= 1
        if ch == "+" and depth == 0:
            terms.append(cur)
            cur = ""
        else:
            cur += ch
    terms.append(cur)
    return terms


def parse_lattice(spec: str, **params: int) -> IntegralLattice:
    text = spec.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
            return IntegralLattice(obj["gram"], obj.get("label"))
        except (ValueError, KeyError, TypeError) as exc:
            raise LatticeSyntaxError(f"bad JSON lattice: {exc}") from exc
    text = re.sub(r"\s+", "", text)
    if not text:
        raise LatticeSyntaxError("empty lattice spec")
    parts = []
    for term in _split_terms(text):
        m = _TERM.match(term)
        if not m:
            raise LatticeSyntaxError(f"cannot parse lattice term {term!r}")
        if m.group("U"):
            base = hyperbolic_plane()
        elif m.group("A"):
            base = A(int(m.group("an")))
        elif m.group("D"):
            base = D(int(m.group("dn")))
        elif m.group("en") is not None:
            base = E(int(m.group("en")))
        else:
            base = rank_one(_eval_expr(m.group("inner"), params))
        if m.group("scale"):
            base = base.scaled(int(m.group("scale")))
        count = int(m.group("count") or 1)
        if count < 1:
            raise LatticeSyntaxError(f"multiplicity must be positive in {term!r}")
        parts.extend([base] * count)
    L = direct_sum(*parts)
    return IntegralLattice(L.gram, text if not params else L.label)


def format_spec(L: IntegralLattice) -> str:
    """A literal that re-parses to exactly ``L.gram``."""
    return json.dumps({"gram": [list(r) for r in L.gram]}, separators=(",", ":"))
