"""Representation matrices and block maps for the two-factor case (e = 2).

For A x A the symmetric matrix attached to a degree-k class block-
diagonalizes along the irreducible pieces det(W)^l (x) Sym^m W of the k-th
exterior power of W^(+n).  Each block is a linear function of the class's
monomial coordinates x_{l1,l2,l3} (the coefficients of t1^l1 t2^l2 l^l3) and
is computed symbolically once per (k, label):

  1. evaluate det(g)^l * rho_{Sym^m}(g) * D on a symbolic symmetric
     g = (a, b; b, d), where D = diag(C(m, i)) makes the product symmetric;
  2. read each entry as sum_t t_{l1,l2,l3} a^l1 d^l2 b^l3;
  3. the block entry is sum_t t_{l1,l2,l3} / multinomial(k; l1,l2,l3) * x_{l1,l2,l3}.

With this normalization the block applied to the coefficients of beta^k is
exactly det(g_beta)^l * rho_{Sym^m}(g_beta) * D, with g_beta the symmetric
2x2 matrix of the divisor class beta.  Positive rescalings never change PSD
status or rank, which is all the cone tests consume; the classical printed
forms of these blocks for k = 2, 3, 4 are kept in PRINTED_BLOCK_FIXTURES
together with their (positive) scale relative to this normalization.

Sym^k W carries the basis w1^(k-i) w2^i, i = 0..k; matrices act on columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .algebra import ClassPoly, monomials_of_degree
from .linalg import SymMatrix, mat_rank


XTriple = tuple[int, int, int]  # exponents of (a, d, b) alias (t1, t2, l)


class Poly3:
    """Sparse polynomial in the entries (a, b, d) of a symmetric 2x2 matrix.

    Keys are (power of a, power of d, power of b), matching the monomial
    coordinates x_{l1,l2,l3}.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[XTriple, Fraction] | None = None):
        self.terms = {}
        if terms:
            for key, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    self.terms[tuple(key)] = c

    @classmethod
    def const(cls, c) -> "Poly3":
        return cls({(0, 0, 0): Fraction(c)})

    @classmethod
    def var(cls, name: str) -> "Poly3":
        key = {"a": (1, 0, 0), "d": (0, 1, 0), "b": (0, 0, 1)}[name]
        return cls({key: Fraction(1)})

    def __add__(self, other):
        if not isinstance(other, Poly3):
            other = Poly3.const(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return Poly3(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly3({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly3) else Poly3.const(-Fraction(other)))

    def __mul__(self, other):
        if not isinstance(other, Poly3):
            return Poly3({k: c * Fraction(other) for k, c in self.terms.items()})
        out: dict[XTriple, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return Poly3(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly3.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Poly3) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        names = ("a", "d", "b")
        bits = []
        for key in sorted(self.terms, reverse=True):
            mono = "*".join(
                f"{n}^{p}" if p > 1 else n for n, p in zip(names, key) if p
            )
            bits.append(f"{self.terms[key]}*{mono}" if mono else str(self.terms[key]))
        return " + ".join(bits)


def _apply_to_sym_power(k: int, col0, col1):
    """Matrix of the induced map on Sym^k W from images of w1, w2.

    col0/col1 are length-2 vectors (images of w1 and w2) over any commutative
    scalar; returns the (k+1)x(k+1) matrix over the basis w1^(k-i) w2^i.
    """
    symbolic = isinstance(col0[0], Poly3)
    one = Poly3.const(1) if symbolic else Fraction(1)
    zero = Poly3() if symbolic else Fraction(0)
    cols = []
    for j in range(k + 1):
        # expand (col0)^(k-j) * (col1)^j over the w1^(k-i) w2^i basis
        vec = [one] + [zero] * k
        for factor in [col0] * (k - j) + [col1] * j:
            new = [zero] * (k + 1)
            for i in range(k):
                new[i] = new[i] + vec[i] * factor[0]
                new[i + 1] = new[i + 1] + vec[i] * factor[1]
            vec = new
        cols.append(vec)
    return [[cols[j][i] for j in range(k + 1)] for i in range(k + 1)]


def sym_rep_matrix(k: int, g, with_d: bool = False):
    """Matrix of g acting on Sym^k W in the w1^(k-i) w2^i basis (columns act).

    g is a 2x2 of rationals; with_d multiplies by D = diag(C(k, i)) on the
    right, which yields a symmetric matrix whenever g is symmetric.
    """
    (a, b), (c, d) = g
    col0 = [Fraction(a), Fraction(c)]
    col1 = [Fraction(b), Fraction(d)]
    mat = _apply_to_sym_power(k, col0, col1)
    if with_d:
        mat = [[mat[i][j] * comb(k, j) for j in range(k + 1)] for i in range(k + 1)]
    return mat


@lru_cache(maxsize=None)
def _sym_rep_symbolic(k: int, with_d: bool = True):
    """Symbolic rho(g) (D) for symmetric g = (a, b; b, d); entries are Poly3."""
    a, b, d = Poly3.var("a"), Poly3.var("b"), Poly3.var("d")
    mat = _apply_to_sym_power(k, [a, b], [b, d])
    if with_d:
        mat = [[mat[i][j] * comb(k, j) for j in range(k + 1)] for i in range(k + 1)]
    return mat


def irred_rep_matrix(label: tuple[int, int], g, with_d: bool = False):
    """Matrix of g on det(W)^l (x) Sym^m W: det(g)^l times the Sym^m matrix."""
    l, m = label
    (a, b), (c, d) = g
    det = (Fraction(a) * Fraction(d) - Fraction(b) * Fraction(c)) ** l
    mat = sym_rep_matrix(m, g, with_d=with_d)
    return [[det * x for x in row] for row in mat]


@dataclass(frozen=True)
class BlockMap:
    """Linear map from degree-k monomial coordinates to a symmetric block."""

    k: int
    label: tuple[int, int]
    entry_coeffs: tuple[tuple[dict, ...], ...]  # [i][j] -> {x-triple: Fraction}

    @property
    def dim(self) -> int:
        return self.label[1] + 1

    def apply(self, coeffs: dict[XTriple, Fraction]) -> SymMatrix:
        rows = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                row.append(
                    sum(
                        (c * coeffs.get(x, Fraction(0)) for x, c in self.entry_coeffs[i][j].items()),
                        Fraction(0),
                    )
                )
            rows.append(row)
        return SymMatrix(rows)

    def apply_class(self, p: ClassPoly) -> SymMatrix:
        return self.apply(class_x_coefficients(p))

    def coefficient_rows(self) -> list[list[Fraction]]:
        """Rows = matrix entries (row-major), columns = x-monomials in canonical order."""
        monos = monomials_of_degree(2, self.k)
        rows = []
        for i in range(self.dim):
            for j in range(self.dim):
                rows.append([self.entry_coeffs[i][j].get(m, Fraction(0)) for m in monos])
        return rows


def class_x_coefficients(p: ClassPoly) -> dict[XTriple, Fraction]:
    """Monomial coordinates x_{l1,l2,l3} of a two-factor class."""
    if p.e != 2:
        raise ValueError("x-coordinates are only defined for e = 2")
    return dict(p.terms)


@lru_cache(maxsize=None)
def block_map(k: int, label: tuple[int, int]) -> BlockMap:
    """The linear block map for the given irreducible label in degree k.

    Normalized so that the block of the k-th power of a divisor class beta
    equals det(g_beta)^l * rho_{Sym^m}(g_beta) * D exactly.
    """
    l, m = label
    if 2 * l + m != k:
        raise ValueError(f"label {label} does not live in degree {k}")
    a, b, d = Poly3.var("a"), Poly3.var("b"), Poly3.var("d")
    det = (a * d - b * b) ** l
    sym = _sym_rep_symbolic(m)
    entries = []
    for i in range(m + 1):
        row = []
        for j in range(m + 1):
            poly = det * sym[i][j]
            cmap = {}
            for (pa, pd, pb), t in poly.terms.items():
                assert pa + pd + pb == k
                mult = factorial(k) // (factorial(pa) * factorial(pd) * factorial(pb))
                cmap[(pa, pd, pb)] = t / mult
            row.append(cmap)
        entries.append(tuple(row))
    bm = BlockMap(k, label, tuple(entries))
    for i in range(m + 1):
        for j in range(i):
            assert bm.entry_coeffs[i][j] == bm.entry_coeffs[j][i], "block map not symmetric"
    return bm


def bprime_matrix(alpha: ClassPoly) -> SymMatrix:
    """The full symmetric-power block (label (0, k)) of a degree-k class."""
    k = alpha.degree
    return block_map(k, (0, k)).apply_class(alpha)


def hermite_span_dim(k: int) -> int:
    """Dimension of the span of rho(g) D over symmetric g, by exact sampling.

    A deterministic integer grid of more than (k+1)^2 symmetric matrices is
    generically spanning; the rank is monotone in the sample and bounded by
    (k+1)(k+2)/2, so a fixed grid large enough for the degree suffices.
    """
    rows = []
    vals = range(1, k + 3)
    for a in vals:
        for b in vals:
            for d in vals:
                g = ((Fraction(a), Fraction(b)), (Fraction(b), Fraction(d)))
                mat = sym_rep_matrix(k, g, with_d=True)
                rows.append([mat[i][j] for i in range(k + 1) for j in range(i, k + 1)])
    return mat_rank(rows)


def _fix(entries) -> dict:
    return {tuple(x): Fraction(c) for x, c in entries}


# Printed reference blocks (degree-3 abelian threefold case), as linear maps
# over the x-coordinates, with their positive scale relative to block_map.
PRINTED_BLOCK_FIXTURES: dict[str, dict] = {
    "k2_first": {
        "k": 2,
        "label": (1, 0),
        "scale": Fraction(1),
        "entries": [[_fix([((1, 1, 0), Fraction(1, 2)), ((0, 0, 2), -1)])]],
    },
    "k2_second": {
        "k": 2,
        "label": (0, 2),
        "scale": Fraction(1),
        "entries": [
            [
                _fix([((2, 0, 0), 1)]),
                _fix([((1, 0, 1), 1)]),
                _fix([((0, 0, 2), 1)]),
            ],
            [
                _fix([((1, 0, 1), 1)]),
                _fix([((1, 1, 0), 1), ((0, 0, 2), 2)]),
                _fix([((0, 1, 1), 1)]),
            ],
            [
                _fix([((0, 0, 2), 1)]),
                _fix([((0, 1, 1), 1)]),
                _fix([((0, 2, 0), 1)]),
            ],
        ],
    },
    "k3_first": {
        "k": 3,
        "label": (1, 1),
        "scale": Fraction(6),
        "entries": [
            [
                _fix([((2, 1, 0), 2), ((1, 0, 2), -2)]),
                _fix([((1, 1, 1), 1), ((0, 0, 3), -6)]),
            ],
            [
                _fix([((1, 1, 1), 1), ((0, 0, 3), -6)]),
                _fix([((1, 2, 0), 2), ((0, 1, 2), -2)]),
            ],
        ],
    },
    "k3_second": {
        "k": 3,
        "label": (0, 3),
        "scale": Fraction(1),
        "entries": [
            [
                _fix([((3, 0, 0), 1)]),
                _fix([((2, 0, 1), 1)]),
                _fix([((1, 0, 2), 1)]),
                _fix([((0, 0, 3), 1)]),
            ],
            [
                _fix([((2, 0, 1), 1)]),
                _fix([((2, 1, 0), 1), ((1, 0, 2), 2)]),
                _fix([((1, 1, 1), 1), ((0, 0, 3), 3)]),
                _fix([((0, 1, 2), 1)]),
            ],
            [
                _fix([((1, 0, 2), 1)]),
                _fix([((1, 1, 1), 1), ((0, 0, 3), 3)]),
                _fix([((1, 2, 0), 1), ((0, 1, 2), 2)]),
                _fix([((0, 2, 1), 1)]),
            ],
            [
                _fix([((0, 0, 3), 1)]),
                _fix([((0, 1, 2), 1)]),
                _fix([((0, 2, 1), 1)]),
                _fix([((0, 3, 0), 1)]),
            ],
        ],
    },
    "k4_first": {
        "k": 4,
        "label": (2, 0),
        "scale": Fraction(6),
        "entries": [[_fix([((2, 2, 0), 1), ((1, 1, 2), -1), ((0, 0, 4), 6)])]],
    },
    "k4_second": {
        "k": 4,
        "label": (1, 2),
        "scale": Fraction(12),
        "entries": [
            [
                _fix([((3, 1, 0), 3), ((2, 0, 2), -2)]),
                _fix([((2, 1, 1), 2), ((1, 0, 3), -6)]),
                _fix([((1, 1, 2), 1), ((0, 0, 4), -12)]),
            ],
            [
                _fix([((2, 1, 1), 2), ((1, 0, 3), -6)]),
                _fix([((2, 2, 0), 4), ((0, 0, 4), -24)]),
                _fix([((1, 2, 1), 2), ((0, 1, 3), -6)]),
            ],
            [
                _fix([((1, 1, 2), 1), ((0, 0, 4), -12)]),
                _fix([((1, 2, 1), 2), ((0, 1, 3), -6)]),
                _fix([((1, 3, 0), 3), ((0, 2, 2), -2)]),
            ],
        ],
    },
}


def fixture_matches(name: str) -> bool:
    """Whether a printed block equals scale * block_map coefficientwise."""
    fix = PRINTED_BLOCK_FIXTURES[name]
    bm = block_map(fix["k"], fix["label"])
    scale = fix["scale"]
    for i in range(bm.dim):
        for j in range(bm.dim):
            want = fix["entries"][i][j]
            got = {x: scale * c for x, c in bm.entry_coeffs[i][j].items()}
            got = {x: c for x, c in got.items() if c != 0}
            if got != {x: Fraction(c) for x, c in want.items() if Fraction(c) != 0}:
                return False
    return True
