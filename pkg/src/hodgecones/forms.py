"""Brute-force oracle: cycle classes as (k,k)-forms with exact coefficients.

A degree-k class on A^e is realized as a (k,k)-form on C^(ne) written in the
canonical order c * dz_I ^ dzbar_J (all dz factors first, ascending, then all
dzbar, ascending); coefficients live in Q(i).  The degree-1 generators are

    t_i   = sum_s  i dz_{si} ^ dzbar_{si}
    l_jk  = sum_s (i dz_{sj} ^ dzbar_{sk} + i dz_{sk} ^ dzbar_{sj})

with the pair (s, r), 1 <= s <= n, 1 <= r <= e, flattened to (r-1)*n + s - 1.
Products are computed by an anticommuting symbol algebra: every wedge
reorders symbols into canonical form with an exact sign, so this file is the
single place where sign conventions live.  Dividing the coefficient of
dz_I ^ dzbar_J by i^(k^2) recovers the real symmetric matrix h of the
attached Hermitian form on the k-th exterior power; realness and symmetry
are asserted, not assumed.

Top-degree coefficients are calibrated so that t_1^n ... t_e^n evaluates to
(n!)^e, which reproduces the classical intersection numbers
t1^(n-k) t2^(n-k) l^(2k) = (-1)^k (2k)! ((n-k)!)^2 C(n,k) on A x A.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial

from .algebra import ClassPoly, DegreeOutOfRangeError, generator_ids, GeneratorId
from .linalg import PsdResult, SymMatrix, psd_check


class NonRealCoefficientError(ValueError):
    """The extracted Hermitian matrix is not real symmetric (sign-convention bug)."""


class DegreeMismatchError(ValueError):
    pass


class GaussianRational:
    """Element of Q(i); components stay plain ints until a Fraction appears."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re
        self.im = im

    def __add__(self, other):
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return GaussianRational(self.re * other, self.im * other)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def times_i_power(self, p: int) -> "GaussianRational":
        p %= 4
        if p == 0:
            return self
        if p == 1:
            return GaussianRational(-self.im, self.re)
        if p == 2:
            return -self
        return GaussianRational(self.im, -self.re)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __eq__(self, other):
        return isinstance(other, GaussianRational) and Fraction(self.re) == Fraction(
            other.re
        ) and Fraction(self.im) == Fraction(other.im)

    def __repr__(self):
        return f"({self.re}+{self.im}i)"


ONE_I = GaussianRational(0, 1)


def _merge(m1: int, m2: int):
    """Merge two disjoint ascending index masks; returns (sign, union) or None."""
    if m1 & m2:
        return None
    inv = 0
    mm = m2
    while mm:
        b = mm & -mm
        inv += (m1 >> b.bit_length()).bit_count()
        mm ^= b
    return (-1 if inv & 1 else 1), m1 | m2


class Form:
    """Sparse (k,k)-form on C^dim; term keys are (dz mask, dzbar mask)."""

    __slots__ = ("dim", "k", "terms")

    def __init__(self, dim: int, k: int, terms: dict | None = None):
        self.dim = dim
        self.k = k
        self.terms = {}
        if terms:
            for key, coef in terms.items():
                if not coef.is_zero():
                    self.terms[key] = coef

    @classmethod
    def constant(cls, dim: int, value=1) -> "Form":
        return cls(dim, 0, {(0, 0): GaussianRational(value)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Form") -> "Form":
        assert self.dim == other.dim and (self.is_zero() or other.is_zero() or self.k == other.k)
        out = dict(self.terms)
        for key, coef in other.terms.items():
            acc = out.get(key)
            out[key] = coef if acc is None else acc + coef
        return Form(self.dim, max(self.k, other.k), out)

    def scaled(self, c) -> "Form":
        return Form(self.dim, self.k, {key: coef * c for key, coef in self.terms.items()})

    def wedge(self, other: "Form") -> "Form":
        """Exterior product; bidegrees add, signs tracked exactly."""
        assert self.dim == other.dim
        # moving the other form's dz block past this form's dzbar block
        cross = -1 if (self.k & 1) and (other.k & 1) else 1
        out: dict[tuple[int, int], GaussianRational] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                mi = _merge(i1, i2)
                if mi is None:
                    continue
                mj = _merge(j1, j2)
                if mj is None:
                    continue
                sign = mi[0] * mj[0] * cross
                val = (c1 * c2) * sign
                key = (mi[1], mj[1])
                acc = out.get(key)
                out[key] = val if acc is None else acc + val
        return Form(self.dim, self.k + other.k, out)

    def coefficient(self, imask: int, jmask: int) -> GaussianRational:
        return self.terms.get((imask, jmask), GaussianRational())

    def __eq__(self, other):
        if not isinstance(other, Form) or self.dim != other.dim:
            return False
        keys = set(self.terms) | set(other.terms)
        return all(self.coefficient(*k) == other.coefficient(*k) for k in keys)


@lru_cache(maxsize=None)
def generator_form(gid: GeneratorId, n: int, e: int) -> Form:
    """The (1,1)-form of a degree-1 generator on C^(ne)."""
    dim = n * e
    terms: dict[tuple[int, int], GaussianRational] = {}

    def flat(s, r):  # s = 1..n within factor r = 1..e
        return (r - 1) * n + (s - 1)

    if gid.kind == "theta":
        for s in range(1, n + 1):
            idx = 1 << flat(s, gid.i)
            terms[(idx, idx)] = ONE_I
    else:
        for s in range(1, n + 1):
            a, b = 1 << flat(s, gid.j), 1 << flat(s, gid.k)
            terms[(a, b)] = ONE_I
            terms[(b, a)] = ONE_I
    return Form(dim, 1, terms)


def class_to_form(p: ClassPoly, n: int) -> Form:
    """Expand a polynomial class into its (k,k)-form on C^(ne)."""
    e, k = p.e, p.degree
    if k > n * e:
        raise DegreeOutOfRangeError(f"degree {k} exceeds the ambient dimension {n*e}")
    dim = n * e
    gens = generator_ids(e)
    out = Form(dim, k)
    for mono, coef in p.terms.items():
        term = Form.constant(dim)
        for gid, exp in zip(gens, mono):
            if exp:
                gf = generator_form(gid, n, e)
                for _ in range(exp):
                    term = term.wedge(gf)
        scale = GaussianRational(coef)
        out = out + term.scaled(scale)
    return out


@lru_cache(maxsize=None)
def _subset_masks(dim: int, k: int) -> tuple[tuple[int, ...], dict[int, int]]:
    masks = []
    for combo in combinations(range(dim), k):
        m = 0
        for c in combo:
            m |= 1 << c
        masks.append(m)
    return tuple(masks), {m: i for i, m in enumerate(masks)}


def hermitian_matrix(f: Form) -> SymMatrix:
    """Real symmetric matrix of the Hermitian form on the k-th exterior power.

    Basis: k-subsets of {1..ne} in lexicographic order.  Raises
    NonRealCoefficientError if the i^(k^2) phase does not produce a real
    symmetric matrix.
    """
    masks, idx = _subset_masks(f.dim, f.k)
    d = len(masks)
    rows = [[Fraction(0)] * d for _ in range(d)]
    phase = (-(f.k * f.k)) % 4
    for (im, jm), coef in f.terms.items():
        val = coef.times_i_power(phase)
        if Fraction(val.im) != 0:
            raise NonRealCoefficientError(f"non-real entry {val} at {(im, jm)}")
        rows[idx[im]][idx[jm]] = Fraction(val.re)
    for i in range(d):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise NonRealCoefficientError("Hermitian matrix is not symmetric")
    return SymMatrix(rows)


def is_psd_exact(matrix: SymMatrix) -> PsdResult:
    """Exact PSD decision with certificate; see linalg.psd_check."""
    return psd_check(matrix.rows)


# ---------------------------------------------------------------------------
# Top-degree pairings


@lru_cache(maxsize=None)
def _volume_unit(n: int, e: int) -> Fraction:
    """Coefficient the oracle assigns to t_1^n ... t_e^n, divided by (n!)^e."""
    p = ClassPoly.one(e)
    for i in range(1, e + 1):
        p = p * (ClassPoly.theta(i, e) ** n)
    val = _raw_top_value(n, e, next(iter(p.terms)))
    unit = val / Fraction(factorial(n)) ** e
    assert unit != 0
    return unit


def _raw_top_value(n: int, e: int, mono) -> Fraction:
    dim = n * e
    form = class_to_form(ClassPoly.from_exponents(e, {mono: 1}), n)
    full = (1 << dim) - 1
    coef = form.coefficient(full, full)
    val = coef.times_i_power((-(dim * dim)) % 4)
    if Fraction(val.im) != 0:
        raise NonRealCoefficientError("top coefficient is not real")
    return Fraction(val.re)


@lru_cache(maxsize=None)
def monomial_top_value(n: int, e: int, mono) -> Fraction:
    """Integral of a degree-(ne) monomial, normalized to t_1^n...t_e^n = (n!)^e."""
    if sum(mono) != n * e:
        raise DegreeMismatchError("monomial does not have top degree")
    return _raw_top_value(n, e, mono) / _volume_unit(n, e)


def top_pairing(p: ClassPoly, q: ClassPoly, n: int) -> Fraction:
    """Intersection number of two classes of complementary degree."""
    if p.e != q.e:
        raise ValueError("mismatched number of factors e")
    e = p.e
    if p.degree + q.degree != n * e:
        raise DegreeMismatchError(
            f"degrees {p.degree}+{q.degree} must sum to {n*e}"
        )
    total = Fraction(0)
    prod = p * q
    for mono, coef in prod.terms.items():
        total += coef * monomial_top_value(n, e, mono)
    return total


def intersection_number_formula(n: int, a: int, b: int, c: int) -> Fraction:
    """Closed form for the degree-2n monomial t1^a t2^b l^c on A x A.

    Nonzero exactly when a = b = n-k and c = 2k; the value is
    (-1)^k (2k)! ((n-k)!)^2 C(n,k).
    """
    if a + b + c != 2 * n:
        raise DegreeMismatchError("exponents must sum to 2n")
    if a != b or c % 2 != 0:
        return Fraction(0)
    k = c // 2
    sign = -1 if k % 2 else 1
    return Fraction(sign * factorial(2 * k) * factorial(n - k) ** 2 * comb(n, k))


def monomial_top_oracle(n: int, a: int, b: int, c: int) -> Fraction:
    """Oracle value of t1^a t2^b l^c in top degree on A x A (e = 2)."""
    return monomial_top_value(n, 2, (a, b, c))


def mu_power_expansion_value(n: int) -> Fraction:
    """Self-intersection of mu = 4 t1 t2 - l^2 via the closed-form expansion."""
    return sum(
        Fraction(comb(n, k) ** 2 * 4 ** (n - k) * factorial(2 * k) * factorial(n - k) ** 2)
        for k in range(n + 1)
    )
