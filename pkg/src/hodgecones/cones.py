"""Positivity-cone membership tests, certificates and extremal-ray machinery.

Implemented cones and tests, for A^e with A of dimension n:

* nef divisors: degree-1 classes correspond to symmetric e x e matrices
  (t_i to E_ii, l_jk to E_jk + E_kj) and nefness is exactly PSD-ness;
* the semipositive cone in any degree: for e = 2 through the exact block
  maps of :mod:`hodgecones.rep2` over the exterior-power decomposition, for
  any e through the Hermitian matrix of the brute-force form oracle.  Both
  routes emit re-verifiable certificates (per-block PSD confirmations, or a
  rational vector with negative quadratic value);
* products of k pseudoeffective divisor classes: sampling of the generating
  set (every extremal ray is such a product), rank-1 extremality
  certificates, and for degree 4 on A x A with n = 3 an exact decomposition
  of extremal classes into products of divisor classes via the roots of a
  quadratic;
* sampled nef falsification: pairing against products of pseudoeffective
  divisor classes is a necessary condition for nefness, so a negative value
  disproves nefness while no violation proves nothing.

Randomized operations are deterministic for a fixed seed; each sample owns
an RNG stream derived from (seed, index) so results do not depend on
evaluation order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import rep2
from .algebra import ClassPoly, generator_ids, normal_form, num_generators
from .forms import class_to_form, hermitian_matrix, top_pairing
from .linalg import SymMatrix, fraction_to_str
from .schur import wedge_decomposition


# ---------------------------------------------------------------------------
# Divisors


def divisor_matrix(p: ClassPoly) -> SymMatrix:
    """Symmetric e x e matrix of a degree-1 class."""
    if p.degree != 1:
        raise ValueError("divisor matrix is defined for degree-1 classes")
    e = p.e
    rows = [[Fraction(0)] * e for _ in range(e)]
    for gid, idx in ((g, g.index(e)) for g in generator_ids(e)):
        mono = [0] * num_generators(e)
        mono[idx] = 1
        c = p.coefficient(tuple(mono))
        if not c:
            continue
        if gid.kind == "theta":
            rows[gid.i - 1][gid.i - 1] = c
        else:
            rows[gid.j - 1][gid.k - 1] = c
            rows[gid.k - 1][gid.j - 1] = c
    return SymMatrix(rows)


def divisor_class_from_vector(v, e: int) -> ClassPoly:
    """The rank-one divisor class of the column vector v (the ray v v^T)."""
    v = [Fraction(x) for x in v]
    p = ClassPoly.zero(e, 1)
    for i in range(e):
        if v[i]:
            p = p + ClassPoly.theta(i + 1, e).scaled(v[i] * v[i])
    for j in range(e):
        for k in range(j + 1, e):
            c = v[j] * v[k]
            if c:
                p = p + ClassPoly.lam(j + 1, k + 1, e).scaled(c)
    return p


def divisor_is_nef(p: ClassPoly) -> bool:
    """Nefness of a degree-1 class = exact PSD-ness of its matrix."""
    return divisor_matrix(p).is_psd().is_psd


# ---------------------------------------------------------------------------
# Semipositivity certificates


@dataclass(frozen=True)
class BlockReport:
    label: tuple[int, int]
    multiplicity: int
    psd: bool
    rank: int


@dataclass(frozen=True)
class SemiCertificate:
    """Verdict plus an independently re-checkable witness."""

    semipositive: bool
    route: str  # "blocks" | "oracle"
    n: int
    blocks: tuple[BlockReport, ...] = ()
    witness_block: tuple[int, int] | None = None
    witness_vector: tuple[Fraction, ...] | None = None
    witness_value: Fraction | None = None

    def verify(self, p: ClassPoly) -> bool:
        """Re-check the certificate against the class it was issued for."""
        if self.semipositive:
            return semi_membership(p, self.n, route=self.route).semipositive
        if self.route == "blocks":
            mat = rep2.block_map(p.degree, self.witness_block).apply_class(p)
        else:
            mat = hermitian_matrix(class_to_form(p, self.n))
        val = mat.quadratic_form(self.witness_vector)
        return val == self.witness_value and val < 0

    def to_json(self) -> dict:
        out = {
            "verdict": "semipositive" if self.semipositive else "not_semipositive",
            "route": self.route,
            "n": self.n,
            "blocks": [
                {"label": list(b.label), "multiplicity": b.multiplicity, "psd": b.psd, "rank": b.rank}
                for b in self.blocks
            ],
        }
        if not self.semipositive:
            out["witness"] = {
                "block": list(self.witness_block) if self.witness_block else "oracle",
                "vector": [fraction_to_str(x) for x in self.witness_vector],
                "value": fraction_to_str(self.witness_value),
            }
        return out


def semi_membership(p: ClassPoly, n: int, route: str | None = None) -> SemiCertificate:
    """Decide whether a class has a positive semidefinite Hermitian form.

    For e = 2 the default route evaluates one exact block per irreducible
    label of the degree-k exterior power; for e >= 3 the form oracle's full
    Hermitian matrix is tested.  Both routes agree where both apply.
    """
    if route is None:
        route = "blocks" if p.e == 2 else "oracle"
    if route == "blocks":
        if p.e != 2:
            raise ValueError("the block route applies to e = 2 only")
        reports = []
        for label, mult in wedge_decomposition(n, p.degree).items():
            mat = rep2.block_map(p.degree, label).apply_class(p)
            res = mat.is_psd()
            reports.append(BlockReport(label, mult, res.is_psd, res.rank))
            if not res.is_psd:
                return SemiCertificate(
                    False,
                    "blocks",
                    n,
                    tuple(reports),
                    witness_block=label,
                    witness_vector=res.witness,
                    witness_value=res.witness_value,
                )
        return SemiCertificate(True, "blocks", n, tuple(reports))
    res = hermitian_matrix(class_to_form(p, n)).is_psd()
    if res.is_psd:
        return SemiCertificate(True, "oracle", n)
    return SemiCertificate(
        False,
        "oracle",
        n,
        witness_vector=res.witness,
        witness_value=res.witness_value,
    )


# ---------------------------------------------------------------------------
# Extremal-ray sampling


@dataclass(frozen=True)
class RaySample:
    """A product of k extremal pseudoeffective divisor classes."""

    vectors: tuple[tuple[Fraction, ...], ...]
    factors: tuple[ClassPoly, ...] = field(compare=False)
    class_poly: ClassPoly = field(compare=False)

    @property
    def k(self) -> int:
        return len(self.vectors)

    def group_elements(self):
        """Invertible matrices g_i with g_i . t1 equal to each factor."""
        e = len(self.vectors[0])
        mats = []
        for v in self.vectors:
            pivot = next(i for i, x in enumerate(v) if x)
            cols = [list(v)]
            for j in range(e):
                if j != pivot:
                    col = [Fraction(0)] * e
                    col[j] = Fraction(1)
                    cols.append(col)
            mats.append(tuple(tuple(cols[j][i] for j in range(e)) for i in range(e)))
        return mats


def _circle_vector(rng: random.Random, e: int):
    """A nonzero rational direction; for e = 2, a grid point on the circle."""
    if e == 2 and rng.random() >= 0.125:
        num = rng.randint(-12, 12)
        den = rng.randint(1, 12)
        # (1 - t^2, 2t) scaled by den^2: rational points of the unit circle
        v = (Fraction(den * den - num * num), Fraction(2 * num * den))
        if v == (0, 0):
            v = (Fraction(1), Fraction(0))
        return v
    axis = rng.randrange(e)
    if rng.random() < 0.5:
        v = [Fraction(0)] * e
        v[axis] = Fraction(1)
        return tuple(v)
    while True:
        v = tuple(Fraction(rng.randint(-6, 6)) for _ in range(e))
        if any(v):
            return v


def sample_Ek(k: int, e: int, count: int, seed: int) -> list[RaySample]:
    """Deterministic samples from the generating set of k-fold divisor products."""
    out = []
    for idx in range(count):
        rng = random.Random(f"{seed}:{idx}")
        vectors = tuple(_circle_vector(rng, e) for _ in range(k))
        factors = tuple(divisor_class_from_vector(v, e) for v in vectors)
        cls = ClassPoly.one(e)
        for f in factors:
            cls = cls * f
        out.append(RaySample(vectors, factors, cls))
    return out


def extremality_rank(sample_class: ClassPoly) -> int:
    """Exact rank of the symmetric-power block; 1 certifies an extremal ray."""
    return rep2.bprime_matrix(sample_class).rank()


# ---------------------------------------------------------------------------
# mu and the top halfspace


def mu_class(e: int = 2) -> ClassPoly:
    """The class 4 t1 t2 - l^2 on A x A; g acts on it by det(g)^2."""
    if e != 2:
        raise ValueError("mu lives on A x A")
    t1, t2, lam = ClassPoly.theta(1, 2), ClassPoly.theta(2, 2), ClassPoly.lam(1, 2, 2)
    return (t1 * t2).scaled(4) - lam * lam


def mu_top_coefficient(p: ClassPoly, n: int) -> Fraction:
    """The det-power block functional, scaled so t1^k t2^k maps to +1.

    Defined for even degree 2k <= 2n; semipositive classes land in the
    halfspace where this functional is nonnegative.
    """
    deg = p.degree
    if deg % 2 != 0 or deg > 2 * n:
        raise ValueError("the halfspace functional needs even degree <= 2n")
    k = deg // 2
    bm = rep2.block_map(deg, (k, 0))
    coeffs = bm.entry_coeffs[0][0]
    unit = coeffs[(k, k, 0)]
    assert unit > 0
    total = Fraction(0)
    for mono, c in p.terms.items():
        t = coeffs.get(mono)
        if t:
            total += t * c
    return total / unit


# ---------------------------------------------------------------------------
# Sampled nef falsification


@dataclass(frozen=True)
class NefSampleResult:
    """Outcome of the sampled (necessary-only) nef check."""

    violation: bool
    samples: int
    seed: int
    witness: RaySample | None = None
    witness_value: Fraction | None = None
    values: tuple[Fraction, ...] = ()
    necessary_condition_only: bool = True

    def to_json(self) -> dict:
        out = {
            "verdict": "violation" if self.violation else "no_violation",
            "samples": self.samples,
            "seed": self.seed,
            "necessary_condition_only": True,
        }
        if self.violation:
            out["witness"] = {
                "vectors": [[fraction_to_str(x) for x in v] for v in self.witness.vectors],
                "value": fraction_to_str(self.witness_value),
            }
        return out


def nef_sampled_check(
    p: ClassPoly, n: int, samples: int, seed: int, keep_values: bool = False
) -> NefSampleResult:
    """Pair against sampled products of psef divisor classes of complementary degree.

    A negative pairing disproves nefness; absence of violations proves
    nothing (the result says so explicitly).
    """
    e = p.e
    k = p.degree
    if not 0 <= k <= n * e:
        raise ValueError("degree out of range")
    codeg = n * e - k
    values = []
    for s in sample_Ek(codeg, e, samples, seed):
        val = top_pairing(p, s.class_poly, n)
        if keep_values:
            values.append(val)
        if val < 0:
            return NefSampleResult(True, samples, seed, s, val, tuple(values))
    return NefSampleResult(False, samples, seed, values=tuple(values))


# ---------------------------------------------------------------------------
# Degree-4 extremal decomposition on A x A (n = 3)


def _swap_factors(p: ClassPoly) -> ClassPoly:
    """The involution exchanging the two factors: t1 <-> t2, l fixed."""
    return ClassPoly(p.e, p.degree, {(m[1], m[0], m[2]): c for m, c in p.terms.items()})


@dataclass(frozen=True)
class QuadraticRoots:
    """Exact root data of y^2 - sum*y + product, discriminant = sum^2 - 4*product."""

    root_sum: Fraction
    root_product: Fraction
    discriminant: Fraction

    def rational_roots(self) -> tuple[Fraction, Fraction] | None:
        num, den = self.discriminant.numerator, self.discriminant.denominator
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn != num or rd * rd != den:
            return None
        sq = Fraction(rn, rd)
        return (self.root_sum + sq) / 2, (self.root_sum - sq) / 2


@dataclass(frozen=True)
class Semi4Decomposition:
    status: str  # "extremal_product" | "not_extremal" | "not_in_cone"
    pattern: str | None = None  # "t1^2*t2^2" | "t1^3*t2"
    scale: Fraction | None = None
    roots: QuadraticRoots | None = None
    double_root: Fraction | None = None
    axes: bool = False  # the degenerate ray t1^2 t2^2 itself (parameters 0 and infinity)
    swapped: bool = False
    certificate: SemiCertificate | None = None

    def recompose(self) -> ClassPoly:
        """Exact product of the four divisor factors (rational throughout).

        For conjugate quadratic roots a, b the inner product D_a * D_b has
        coefficients symmetric in (a, b), hence rational in the root sum and
        product.
        """
        if self.status != "extremal_product":
            raise ValueError("only extremal products recompose")
        t1, t2, lam = (
            ClassPoly.theta(1, 2),
            ClassPoly.theta(2, 2),
            ClassPoly.lam(1, 2, 2),
        )
        if self.axes:
            out = (t1 * t1 * t2 * t2).scaled(self.scale)
        elif self.pattern == "t1^2*t2^2":
            s, q = self.roots.root_sum, self.roots.root_product
            # (t1 + a^2 t2 + a l)(t1 + b^2 t2 + b l) in e1 = a+b, e2 = ab
            inner = (
                t1 * t1
                + (t1 * t2).scaled(s * s - 2 * q)
                + (t1 * lam).scaled(s)
                + (t2 * t2).scaled(q * q)
                + (t2 * lam).scaled(q * s)
                + (lam * lam).scaled(q)
            )
            out = (inner * inner).scaled(self.scale)
        else:
            a = self.double_root
            da = t1 + t2.scaled(a * a) + lam.scaled(a)
            b = a + 1
            db = t1 + t2.scaled(b * b) + lam.scaled(b)
            out = (da * da * da * db).scaled(self.scale)
        return _swap_factors(out) if self.swapped else out

    def factor_vectors(self):
        """Divisor column vectors when the roots are rational, else None."""
        if self.status != "extremal_product":
            return None
        if self.axes:
            one, zero = Fraction(1), Fraction(0)
            return [(one, zero), (one, zero), (zero, one), (zero, one)]
        if self.pattern == "t1^3*t2":
            a = self.double_root
            vecs = [(Fraction(1), a)] * 3 + [(Fraction(1), a + 1)]
        else:
            roots = self.roots.rational_roots()
            if roots is None:
                return None
            a, b = roots
            vecs = [(Fraction(1), a)] * 2 + [(Fraction(1), b)] * 2
        if self.swapped:
            vecs = [(v[1], v[0]) for v in vecs]
        return vecs

    def to_json(self) -> dict:
        out = {"status": self.status, "swapped": self.swapped}
        if self.pattern:
            out["pattern"] = self.pattern
            out["scale"] = fraction_to_str(self.scale)
            out["axes"] = self.axes
        if self.roots:
            out["root_sum"] = fraction_to_str(self.roots.root_sum)
            out["root_product"] = fraction_to_str(self.roots.root_product)
            out["discriminant"] = fraction_to_str(self.roots.discriminant)
        if self.double_root is not None:
            out["double_root"] = fraction_to_str(self.double_root)
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def _proportionality(target: ClassPoly, candidate: ClassPoly, n: int) -> Fraction | None:
    """The constant c with c * candidate = target modulo relations, if any."""
    nf_t = normal_form(target, n)
    nf_c = normal_form(candidate, n)
    ratio = None
    for a, b in zip(nf_t, nf_c):
        if (a == 0) != (b == 0):
            return None
        if a != 0:
            r = a / b
            if ratio is None:
                ratio = r
            elif ratio != r:
                return None
    return ratio


def semi4_extremal_decompose(p: ClassPoly, n: int = 3) -> Semi4Decomposition:
    """Decompose an extremal degree-4 semipositive class on A x A, n = 3.

    The cone is the rank-one locus test: writing M for the 3x3 block of the
    det (x) Sym^2 W label and s for the det^2 halfspace functional, the class
    is in the cone iff M is PSD and s >= 0, and extremal iff additionally
    rank(M) = 1.  The two divisor parameters are then the roots of
    y^2 - (sum) y + (product) built from the first column of M; a positive
    discriminant gives the t1^2 t2^2 pattern, a double root the t1^3 t2
    pattern.  Recomposition is exact; irrational conjugate roots are kept as
    (sum, product, discriminant) data.
    """
    if p.e != 2 or p.degree != 4 or n != 3:
        raise ValueError("the decomposition applies to degree 4 on A x A with n = 3")
    cert = semi_membership(p, n)
    if not cert.semipositive:
        return Semi4Decomposition("not_in_cone", certificate=cert)
    m = rep2.block_map(4, (1, 2)).apply_class(p)
    rank = m.rank()
    if rank != 1:
        return Semi4Decomposition("not_extremal", certificate=cert)
    if m[0, 0] == 0 and m[2, 2] == 0:
        # M = c E_11 with c > 0: a positive multiple of t1^2 t2^2
        t1, t2 = ClassPoly.theta(1, 2), ClassPoly.theta(2, 2)
        scale = _proportionality(p, t1 * t1 * t2 * t2, n)
        assert scale is not None and scale > 0
        dec = Semi4Decomposition("extremal_product", "t1^2*t2^2", scale, axes=True)
        assert normal_form(dec.recompose(), n) == normal_form(p, n)
        return dec
    swapped = False
    if m[0, 0] == 0:
        swapped = True
        p_work = _swap_factors(p)
        m = rep2.block_map(4, (1, 2)).apply_class(p_work)
    else:
        p_work = p
    root_sum = m[0, 1] / m[0, 0]
    root_product = m[0, 2] / m[0, 0]
    disc = root_sum * root_sum - 4 * root_product
    if disc < 0:
        # cannot happen for a PSD block inside the halfspace; defensive
        return Semi4Decomposition("not_in_cone", certificate=cert)
    if disc > 0:
        roots = QuadraticRoots(root_sum, root_product, disc)
        probe = Semi4Decomposition("extremal_product", "t1^2*t2^2", Fraction(1), roots, swapped=swapped)
        scale = _proportionality(p, probe.recompose(), n)
        assert scale is not None and scale > 0
        dec = Semi4Decomposition("extremal_product", "t1^2*t2^2", scale, roots, swapped=swapped)
    else:
        a = root_sum / 2
        probe = Semi4Decomposition(
            "extremal_product", "t1^3*t2", Fraction(1), double_root=a, swapped=swapped
        )
        scale = _proportionality(p, probe.recompose(), n)
        assert scale is not None and scale > 0
        dec = Semi4Decomposition(
            "extremal_product", "t1^3*t2", scale, double_root=a, swapped=swapped
        )
    assert normal_form(dec.recompose(), n) == normal_form(p, n)
    return dec
