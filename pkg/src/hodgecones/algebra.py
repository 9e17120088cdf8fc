"""Exact arithmetic in the graded algebra generated by the divisor classes on A^e.

A is an abelian variety of dimension n (principally polarized, very general),
and the degree-1 classes on the e-fold self-product A^e are spanned by the
pullback polarizations t_1 ... t_e and the correlation classes l_jk
(1 <= j < k <= e).  The full cycle-class algebra is the polynomial algebra on
those generators modulo a single layer of relations in degree n+1, obtained
by expanding (sum of all generators)^(n+1) and grouping terms by Kuenneth
multidegree: every group is identically zero.

This module implements the polynomial side exactly over the rationals:
products, the GL_e change-of-basis action on generators, the relation
generators, and normal forms in the quotient via cached row reduction of the
degree-k slice of the relation ideal.  The quotient basis is the greedy set
of first independent monomials in the canonical monomial order (descending
lexicographic on exponent tuples, thetas before lambdas), which makes normal
forms reproducible across runs.

All values are immutable after construction and every function here is pure;
the per-(n, e, k) ideal-slice cache is filled idempotently, so concurrent use
is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd

from . import schur
from .linalg import fraction_from_str, fraction_to_str, mat_rank, rref


class DegreeOutOfRangeError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class GeneratorId:
    """A degree-1 generator: theta i or lambda jk with strictly ordered j < k."""

    kind: str  # "theta" | "lambda"
    i: int = 0
    j: int = 0
    k: int = 0

    def __post_init__(self):
        if self.kind == "theta":
            if self.i < 1:
                raise ValueError("theta index must be >= 1")
        elif self.kind == "lambda":
            if not 1 <= self.j < self.k:
                raise ValueError("lambda indices must satisfy 1 <= j < k")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    def index(self, e: int) -> int:
        """Position in the canonical generator order for A^e."""
        if self.kind == "theta":
            if self.i > e:
                raise ValueError(f"theta index {self.i} out of range for e={e}")
            return self.i - 1
        if self.k > e:
            raise ValueError(f"lambda index {self.k} out of range for e={e}")
        return e + _lambda_offset(self.j, self.k, e)

    def __str__(self):
        return f"t{self.i}" if self.kind == "theta" else f"l{self.j}{self.k}"


def _lambda_offset(j: int, k: int, e: int) -> int:
    # pairs (1,2),(1,3),...,(1,e),(2,3),... in lexicographic order
    return (j - 1) * e - (j - 1) * j // 2 + (k - j - 1)


def num_generators(e: int) -> int:
    return e * (e + 1) // 2


@lru_cache(maxsize=None)
def generator_ids(e: int) -> tuple[GeneratorId, ...]:
    gens = [GeneratorId("theta", i=i) for i in range(1, e + 1)]
    gens += [
        GeneratorId("lambda", j=j, k=k)
        for j in range(1, e + 1)
        for k in range(j + 1, e + 1)
    ]
    return tuple(gens)


Monomial = tuple[int, ...]  # exponents in canonical generator order


def monomial_degree(mono: Monomial) -> int:
    return sum(mono)


@lru_cache(maxsize=None)
def monomials_of_degree(e: int, k: int) -> tuple[Monomial, ...]:
    """All degree-k monomials, descending lexicographic (the canonical order)."""
    m = num_generators(e)

    def gen(slots: int, total: int):
        if slots == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in gen(slots - 1, total - first):
                yield (first,) + rest

    return tuple(gen(m, k))


@lru_cache(maxsize=None)
def _monomial_index(e: int, k: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials_of_degree(e, k))}


def kunneth_degree(mono: Monomial, e: int) -> tuple[int, ...]:
    """Cohomological multidegree across the e factors; always sums to 2*deg."""
    gens = generator_ids(e)
    deg = [0] * e
    for g, exp in zip(gens, mono):
        if not exp:
            continue
        if g.kind == "theta":
            deg[g.i - 1] += 2 * exp
        else:
            deg[g.j - 1] += exp
            deg[g.k - 1] += exp
    return tuple(deg)


def monomial_str(mono: Monomial, e: int) -> str:
    parts = []
    for g, exp in zip(generator_ids(e), mono):
        if exp == 1:
            parts.append(str(g))
        elif exp > 1:
            parts.append(f"{g}^{exp}")
    return "*".join(parts) if parts else "1"


class ClassPoly:
    """Homogeneous element of the symmetric algebra on the degree-1 classes.

    ``terms`` maps exponent tuples to nonzero rational coefficients; the
    declared ``degree`` is kept even for the zero polynomial.
    """

    __slots__ = ("e", "degree", "terms")

    def __init__(self, e: int, degree: int, terms: dict[Monomial, Fraction]):
        clean = {}
        m = num_generators(e)
        for mono, coef in terms.items():
            coef = Fraction(coef)
            if coef == 0:
                continue
            mono = tuple(mono)
            if len(mono) != m or monomial_degree(mono) != degree:
                raise ValueError(f"monomial {mono} not of degree {degree} for e={e}")
            clean[mono] = coef
        self.e = e
        self.degree = degree
        self.terms = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, e: int, degree: int = 0) -> "ClassPoly":
        return cls(e, degree, {})

    @classmethod
    def one(cls, e: int) -> "ClassPoly":
        return cls(e, 0, {(0,) * num_generators(e): Fraction(1)})

    @classmethod
    def generator(cls, gid: GeneratorId, e: int) -> "ClassPoly":
        mono = [0] * num_generators(e)
        mono[gid.index(e)] = 1
        return cls(e, 1, {tuple(mono): Fraction(1)})

    @classmethod
    def theta(cls, i: int, e: int) -> "ClassPoly":
        return cls.generator(GeneratorId("theta", i=i), e)

    @classmethod
    def lam(cls, j: int, k: int, e: int) -> "ClassPoly":
        return cls.generator(GeneratorId("lambda", j=j, k=k), e)

    @classmethod
    def from_exponents(cls, e: int, terms) -> "ClassPoly":
        """Build from {exponent tuple: coefficient}; degree inferred."""
        terms = {tuple(m): Fraction(c) for m, c in terms.items() if Fraction(c) != 0}
        if not terms:
            return cls.zero(e)
        degs = {monomial_degree(m) for m in terms}
        if len(degs) != 1:
            raise ValueError("terms are not homogeneous")
        return cls(e, degs.pop(), terms)

    # -- arithmetic --------------------------------------------------------
    def _check_compatible(self, other: "ClassPoly"):
        if self.e != other.e:
            raise ValueError("mismatched number of factors e")

    def __add__(self, other: "ClassPoly") -> "ClassPoly":
        self._check_compatible(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("cannot add classes of different degrees")
        terms = dict(self.terms)
        for mono, coef in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + coef
        return ClassPoly(self.e, self.degree, terms)

    def __sub__(self, other: "ClassPoly") -> "ClassPoly":
        return self + (-other)

    def __neg__(self) -> "ClassPoly":
        return ClassPoly(self.e, self.degree, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ClassPoly):
            return multiply(self, other)
        return self.scaled(other)

    __rmul__ = __mul__

    def scaled(self, c) -> "ClassPoly":
        c = Fraction(c)
        return ClassPoly(self.e, self.degree, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "ClassPoly":
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = ClassPoly.one(self.e)
        for _ in range(n):
            out = multiply(out, self)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, ClassPoly)
            and self.e == other.e
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.e, self.degree, tuple(sorted(self.terms.items()))))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def __str__(self):
        if self.is_zero():
            return "0"
        bits = []
        for mono in sorted(self.terms, reverse=True):
            c = self.terms[mono]
            ms = monomial_str(mono, self.e)
            if ms == "1":
                bits.append(str(c))
            elif c == 1:
                bits.append(ms)
            elif c == -1:
                bits.append(f"-{ms}")
            else:
                bits.append(f"{c}*{ms}")
        return " + ".join(bits).replace("+ -", "- ")

    __repr__ = __str__

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        gens = generator_ids(self.e)
        items = []
        for mono in sorted(self.terms, reverse=True):
            theta = []
            lam = []
            for g, exp in zip(gens, mono):
                if not exp:
                    continue
                if g.kind == "theta":
                    theta.extend([g.i, exp])
                else:
                    lam.append([g.j, g.k, exp])
            items.append(
                {"mono": {"theta": theta, "lambda": lam}, "coef": fraction_to_str(self.terms[mono])}
            )
        return {"e": self.e, "degree": self.degree, "terms": items}

    @classmethod
    def from_json(cls, data: dict, e: int | None = None) -> "ClassPoly":
        e = data.get("e", e)
        if e is None:
            raise ValueError("number of factors e missing from JSON and not supplied")
        m = num_generators(e)
        terms: dict[Monomial, Fraction] = {}
        for item in data.get("terms", []):
            mono = [0] * m
            spec = item["mono"]
            theta = spec.get("theta", [])
            for idx in range(0, len(theta), 2):
                gid = GeneratorId("theta", i=theta[idx])
                mono[gid.index(e)] += theta[idx + 1]
            for j, k, exp in spec.get("lambda", []):
                gid = GeneratorId("lambda", j=j, k=k)
                mono[gid.index(e)] += exp
            coef = fraction_from_str(item["coef"])
            key = tuple(mono)
            terms[key] = terms.get(key, Fraction(0)) + coef
        poly = cls.from_exponents(e, terms)
        if poly.is_zero() and data.get("degree") is not None:
            return cls.zero(e, data["degree"])
        if data.get("degree") is not None and not poly.is_zero() and poly.degree != data["degree"]:
            raise ValueError("declared degree does not match terms")
        return poly


def multiply(p: ClassPoly, q: ClassPoly) -> ClassPoly:
    """Product in the symmetric algebra (no reduction by relations)."""
    p._check_compatible(q)
    terms: dict[Monomial, Fraction] = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            key = tuple(a + b for a, b in zip(m1, m2))
            acc = terms.get(key)
            terms[key] = c1 * c2 if acc is None else acc + c1 * c2
    return ClassPoly(p.e, p.degree + q.degree, terms)


# ---------------------------------------------------------------------------
# GL(W) action


def _as_matrix(g, e: int) -> list[list[Fraction]]:
    mat = [[Fraction(x) for x in row] for row in g]
    if len(mat) != e or any(len(row) != e for row in mat):
        raise ValueError(f"expected a {e}x{e} matrix")
    return mat


def _det(mat) -> Fraction:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = Fraction(0)
    for c in range(n):
        sub = [row[:c] + row[c + 1 :] for row in mat[1:]]
        term = mat[0][c] * _det(sub)
        total += term if c % 2 == 0 else -term
    return total


def matrix_det(g, e: int) -> Fraction:
    return _det(_as_matrix(g, e))


@lru_cache(maxsize=None)
def _theta_index(i: int, e: int) -> int:
    return GeneratorId("theta", i=i).index(e)


def _generator_images(g, e: int) -> list[ClassPoly]:
    """Images of the generators under the change of basis g (columns act)."""
    rho = _as_matrix(g, e)
    if _det(rho) == 0:
        raise SingularMatrixError("group element must be invertible")
    images = []
    for i in range(1, e + 1):
        terms: dict[Monomial, Fraction] = {}
        mono0 = [0] * num_generators(e)
        for j in range(1, e + 1):
            c = rho[j - 1][i - 1] ** 2
            if c:
                mono = mono0[:]
                mono[_theta_index(j, e)] = 1
                terms[tuple(mono)] = c
        for j in range(1, e + 1):
            for k in range(j + 1, e + 1):
                c = rho[j - 1][i - 1] * rho[k - 1][i - 1]
                if c:
                    mono = mono0[:]
                    mono[GeneratorId("lambda", j=j, k=k).index(e)] = 1
                    terms[tuple(mono)] = c
        images.append(ClassPoly(e, 1, terms))
    for j in range(1, e + 1):
        for k in range(j + 1, e + 1):
            terms = {}
            mono0 = [0] * num_generators(e)
            for i in range(1, e + 1):
                c = 2 * rho[i - 1][j - 1] * rho[i - 1][k - 1]
                if c:
                    mono = mono0[:]
                    mono[_theta_index(i, e)] = 1
                    terms[tuple(mono)] = c
            for u in range(1, e + 1):
                for v in range(u + 1, e + 1):
                    c = rho[v - 1][j - 1] * rho[u - 1][k - 1] + rho[u - 1][j - 1] * rho[v - 1][k - 1]
                    if c:
                        mono = mono0[:]
                        mono[GeneratorId("lambda", j=u, k=v).index(e)] = 1
                        terms[tuple(mono)] = c
            images.append(ClassPoly(e, 1, terms))
    return images


def gl_action(g, p: ClassPoly) -> ClassPoly:
    """Degree-preserving algebra automorphism induced by g in GL_e."""
    images = _generator_images(g, p.e)
    out = ClassPoly.zero(p.e, p.degree)
    for mono, coef in p.terms.items():
        term = ClassPoly.one(p.e)
        for gen_idx, exp in enumerate(mono):
            for _ in range(exp):
                term = multiply(term, images[gen_idx])
        out = out + term.scaled(coef)
    return out


# ---------------------------------------------------------------------------
# Relations and normal forms


def _normalize_relation(terms: dict[Monomial, int], e: int) -> ClassPoly:
    # integer content out, sign fixed on the lexicographically smallest monomial
    g = 0
    for c in terms.values():
        g = gcd(g, abs(c))
    smallest = min(terms)
    sign = 1 if terms[smallest] > 0 else -1
    return ClassPoly.from_exponents(e, {m: Fraction(sign * c, g) for m, c in terms.items()})


@lru_cache(maxsize=None)
def relation_generators(n: int, e: int) -> tuple[ClassPoly, ...]:
    """Degree-(n+1) generators of the relation ideal, one per Kuenneth group.

    Expands (t_1 + ... + t_e + sum l_jk)^(n+1) and groups the terms by
    Kuenneth multidegree; each group vanishes on A^e.  The count is
    C(2n+1+e, 2n+2), i.e. the number of multidegree components.
    """
    if n < 1 or e < 2:
        raise ValueError("need n >= 1 and e >= 2")
    groups: dict[tuple[int, ...], dict[Monomial, int]] = {}
    m = num_generators(e)
    fact = factorial(n + 1)
    for mono in monomials_of_degree(e, n + 1):
        coef = fact
        for exp in mono:
            coef //= factorial(exp)
        key = kunneth_degree(mono, e)
        groups.setdefault(key, {})[mono] = coef
    gens = [_normalize_relation(terms, e) for terms in groups.values()]
    gens.sort(key=lambda p: max(p.terms), reverse=True)
    expected = comb(2 * n + 1 + e, 2 * n + 2)
    assert len(gens) == expected, (n, e, len(gens), expected)
    return tuple(gens)


@lru_cache(maxsize=None)
def ideal_slice(n: int, e: int, k: int):
    """Row-reduced degree-k slice of the relation ideal.

    Returns (reduced rows, pivot positions, quotient basis monomials); rows
    are coordinate vectors over the degree-k monomials in canonical order.
    The quotient basis is the complement of the pivots, i.e. the first
    independent monomials greedily in canonical order.
    """
    monos = monomials_of_degree(e, k)
    if k <= n:
        return (), (), monos
    index = _monomial_index(e, k)
    rows = []
    for mult in monomials_of_degree(e, k - (n + 1)):
        for rel in relation_generators(n, e):
            row = [Fraction(0)] * len(monos)
            for mono, coef in rel.terms.items():
                key = tuple(a + b for a, b in zip(mono, mult))
                row[index[key]] += coef
            rows.append(row)
    reduced, pivots = rref(rows)
    basis = tuple(m for i, m in enumerate(monos) if i not in set(pivots))
    return tuple(tuple(r) for r in reduced), tuple(pivots), basis


def quotient_basis(n: int, e: int, k: int) -> tuple[Monomial, ...]:
    if k < 0:
        raise DegreeOutOfRangeError(f"degree {k} out of range for n={n}, e={e}")
    return ideal_slice(n, e, k)[2]


def normal_form(p: ClassPoly, n: int) -> tuple[Fraction, ...]:
    """Coordinates of p in the quotient basis of its degree.

    Two polynomials represent the same cycle class iff their normal forms
    agree.  For degree <= n the map is the identity on monomial coordinates;
    beyond degree n*e every class vanishes and the basis is empty.
    """
    e, k = p.e, p.degree
    if k < 0:
        raise DegreeOutOfRangeError(f"degree {k} out of range for n={n}, e={e}")
    monos = monomials_of_degree(e, k)
    index = _monomial_index(e, k)
    vec = [Fraction(0)] * len(monos)
    for mono, coef in p.terms.items():
        vec[index[mono]] = coef
    reduced, pivots, basis = ideal_slice(n, e, k)
    for row, piv in zip(reduced, pivots):
        f = vec[piv]
        if f:
            vec = [a - f * b for a, b in zip(vec, row)]
    basis_set = {m: i for i, m in enumerate(basis)}
    out = [Fraction(0)] * len(basis)
    for i, mono in enumerate(monos):
        if vec[i]:
            out[basis_set[mono]] = vec[i]
    return tuple(out)


def classes_equal_mod_relations(p: ClassPoly, q: ClassPoly, n: int) -> bool:
    return normal_form(p, n) == normal_form(q, n)


def quotient_rank_of_monomials(n: int, e: int, k: int) -> int:
    """Rank of the monomial image in the quotient (= dim of degree-k classes)."""
    rows = [normal_form(ClassPoly.from_exponents(e, {m: 1}), n) for m in monomials_of_degree(e, k)]
    return mat_rank(rows)


def hodge_dimension(n: int, e: int, k: int) -> int:
    """Dimension of the space of degree-k cycle classes on A^e (diagram count)."""
    if not 0 <= k <= n * e:
        raise DegreeOutOfRangeError(f"degree {k} out of range for n={n}, e={e}")
    return schur.hodge_dimension_by_diagrams(n, e, k)


def pullback_along_projection(p: ClassPoly, e: int) -> ClassPoly:
    """Inclusion of the algebra for A^l into the one for A^e (l <= e)."""
    l = p.e
    if l > e:
        raise ValueError("pullback goes from fewer to more factors")
    if l == e:
        return p
    gens_small = generator_ids(l)
    terms: dict[Monomial, Fraction] = {}
    for mono, coef in p.terms.items():
        big = [0] * num_generators(e)
        for g, exp in zip(gens_small, mono):
            if exp:
                big[g.index(e)] = exp
        terms[tuple(big)] = coef
    return ClassPoly(e, p.degree, terms)
