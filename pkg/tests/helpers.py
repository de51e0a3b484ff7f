"""Sample lattices and hypothesis strategies shared by the property tests."""
import itertools
from math import gcd

from hypothesis import strategies as st

from k3lattice.named import parse_lattice

EVEN_SAMPLES = [
    "U+<-2>",
    "U+A2",
    "A2+<-4>",
    "U+U(2)+<6>",
    "D4",
    "A3+<-2>",
    "U+<2>+<-6>",
    "A1+A1+<-10>",
    "U(3)+A2",
    "E6",
    "U+D4(-1)",
    "A2+A2(-1)+<4>",
]

ODD_SAMPLES = ["<1>+<-1>+<3>", "<1>+<1>+<1>+<-5>", "<3>+A2"]


def sample(spec):
    return parse_lattice(spec)


even_lattices = st.sampled_from(EVEN_SAMPLES).map(sample)
any_lattices = st.sampled_from(EVEN_SAMPLES + ODD_SAMPLES).map(sample)


def primitive(coords):
    g = 0
    for c in coords:
        g = gcd(g, c)
    return [c // g for c in coords] if g else list(coords)


@st.composite
def lattice_and_vector(draw, lattices=even_lattices, lo=-6, hi=6):
    L = draw(lattices)
    v = draw(st.lists(st.integers(lo, hi), min_size=L.rank, max_size=L.rank))
    return L, v


@st.composite
def unimodular(draw, n, steps=12):
    """Product of random elementary integer matrices and signed swaps."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    if n == 1:
        return [[draw(st.sampled_from([1, -1]))]]
    for _ in range(draw(st.integers(1, steps))):
        i, j = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
        kind = draw(st.sampled_from(["add", "swap", "neg"]))
        if kind == "add":
            q = draw(st.integers(-3, 3))
            M[i] = [a + q * b for a, b in zip(M[i], M[j])]
        elif kind == "swap":
            M[i], M[j] = M[j], M[i]
        else:
            M[i] = [-a for a in M[i]]
    return M


def box(n, r):
    return itertools.product(range(-r, r + 1), repeat=n)
