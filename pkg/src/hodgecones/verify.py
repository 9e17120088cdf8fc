"""The reproduction battery: every bundled reference result, re-derived.

Each check function recomputes one family of reference values (relation
generators, intersection numbers, dimension counts, block matrices, cone
verdicts) from scratch and compares them with the frozen expectations.  Two
known mismatches in the bundled reference tables are re-derived and flagged
rather than adopted; they are listed in :data:`REFERENCE_NOTES` and included
in the report output.

``run_all`` executes the battery (optionally in parallel, capped by the
HODGE_CONES_THREADS environment variable) and returns results in a fixed
order, so output is deterministic and idempotent for a fixed seed.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from . import rep2
from .algebra import (
    ClassPoly,
    gl_action,
    hodge_dimension,
    monomials_of_degree,
    normal_form,
    pullback_along_projection,
    quotient_basis,
    quotient_rank_of_monomials,
    relation_generators,
)
from .cones import (
    extremality_rank,
    mu_class,
    mu_top_coefficient,
    nef_sampled_check,
    sample_Ek,
    semi4_extremal_decompose,
    semi_membership,
)
from .forms import (
    class_to_form,
    hermitian_matrix,
    intersection_number_formula,
    monomial_top_value,
    mu_power_expansion_value,
    top_pairing,
)
from .linalg import compound_matrix, mat_rank, solve_linear
from .schur import (
    enumerate_hodge_diagrams,
    enumerate_sym_diagrams,
    ideal_slice_diagrams,
    schur_dim,
    tensor_power_decomposition,
    wedge_decomposition,
)

REFERENCE_NOTES = [
    {
        "id": "mu-square-self-intersection",
        "tabulated": "96",
        "computed": "120",
        "status": "mismatch-flagged",
        "note": "the tabulated self-intersection of mu = 4 t1 t2 - l^2 at n = 2 "
        "disagrees with both the wedge oracle and the expansion "
        "16*(t1^2 t2^2) - 8*(t1 t2 l^2) + (l^4) = 64 + 32 + 24; the computed "
        "value is authoritative",
    },
    {
        "id": "wedge-multiplicity-count",
        "tabulated": "C(n, k-2s) * C(2s, s)",
        "computed": "C(n, s) * C(n-s, k-2s)",
        "status": "mismatch-flagged",
        "note": "the tabulated multiplicity of det^s (x) W^(k-2s) fails the "
        "dimension identity at (n, k) = (3, 2); the composition count passes "
        "all identities and reproduces every tabulated decomposition",
    },
    {
        "id": "diagonal-binomial-index",
        "tabulated": "D_ii = C(n, i)",
        "computed": "D_ii = C(k, i)",
        "status": "mismatch-flagged",
        "note": "the symmetrizing diagonal for the degree-k block depends on k, "
        "not on the dimension n; the printed degree-2 worked case diag(1,2,1) "
        "and every block fixture force C(k, i)",
    },
    {
        "id": "mu-power-expansion-binomial",
        "tabulated": "sum 4^(n-k) (2k)! ((n-k)!)^2 C(n,k)",
        "computed": "sum C(n,k)^2 4^(n-k) (2k)! ((n-k)!)^2",
        "status": "mismatch-flagged",
        "note": "the binomial expansion of mu^n carries one C(n,k) per term "
        "in addition to the one inside the monomial value",
    },
]


@dataclass
class CheckResult:
    name: str
    passed: bool
    elapsed_s: float = 0.0
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "elapsed_s": round(self.elapsed_s, 3),
            "details": self.details,
        }


def _timed(name):
    def wrap(fn):
        def run(*args, **kwargs) -> CheckResult:
            t0 = time.monotonic()
            passed, details = fn(*args, **kwargs)
            return CheckResult(name, passed, time.monotonic() - t0, details)

        run.check_name = name
        run.__name__ = fn.__name__
        return run

    return wrap


def _t(i):
    return ClassPoly.theta(i, 2)


def _lam():
    return ClassPoly.lam(1, 2, 2)


EX_DIM2_RELATIONS = [
    "t1^3",
    "t1^2*t2 + t1*l12^2",
    "t1^2*l12",
    "t1*t2^2 + t2*l12^2",
    "6*t1*t2*l12 + l12^3",
    "t2^3",
    "t2^2*l12",
]


@_timed("relations-fixture")
def check_relations(max_n: int = 4):
    got = sorted(str(r) for r in relation_generators(2, 2))
    fixture_ok = got == sorted(EX_DIM2_RELATIONS)
    counts = {}
    counts_ok = True
    for n in range(1, min(max_n, 4) + 1):
        for e in (2, 3):
            expect = comb(2 * n + 1 + e, 2 * n + 2)
            gens = relation_generators(n, e)
            counts[f"n{n}e{e}"] = len(gens)
            counts_ok &= len(gens) == expect
            monos = monomials_of_degree(e, n + 1)
            idx = {m: i for i, m in enumerate(monos)}
            rows = []
            for g in gens:
                row = [Fraction(0)] * len(monos)
                for mono, c in g.terms.items():
                    row[idx[mono]] = c
                rows.append(row)
            counts_ok &= mat_rank(rows) == len(gens)
    return fixture_ok and counts_ok, {
        "fixture_match": fixture_ok,
        "generator_counts": counts,
        "linearly_independent": counts_ok,
    }


@_timed("intersection-numbers")
def check_intersections(max_n: int = 4):
    agree = True
    checked = 0
    for n in range(1, min(max_n, 4) + 1):
        for mono in monomials_of_degree(2, 2 * n):
            a, b, c = mono
            agree &= intersection_number_formula(n, a, b, c) == monomial_top_value(n, 2, mono)
            checked += 1
    t1, t2, lam = _t(1), _t(2), _lam()
    vals = (
        top_pairing(t1 * t1, t2 * t2, 2),
        top_pairing(t1 * t2, lam * lam, 2),
        top_pairing(lam * lam, lam * lam, 2),
    )
    classical_ok = vals == (4, -4, 24)
    mu = mu_class()
    mu2_oracle = top_pairing(mu, mu, 2)
    mu_consistent = all(
        top_pairing(mu**n, ClassPoly.one(2), n) == mu_power_expansion_value(n) and
        mu_power_expansion_value(n) > 0
        for n in range(1, min(max_n, 4) + 1)
    )
    return agree and classical_ok and mu_consistent, {
        "monomials_checked": checked,
        "formula_equals_oracle": agree,
        "n2_values": [str(v) for v in vals],
        "mu_square": {
            "tabulated": "96",
            "oracle": str(mu2_oracle),
            "discrepancy": mu2_oracle != 96,
            "oracle_matches_expansion": mu2_oracle == mu_power_expansion_value(2),
        },
    }


@_timed("dimensions")
def check_dimensions():
    ok = True
    dims = {}
    for n in (1, 2, 3):
        for k in range(0, 2 * n + 1):
            d_diag = hodge_dimension(n, 2, k)
            d_quot = quotient_rank_of_monomials(n, 2, k)
            monos = monomials_of_degree(2, k)
            rows = []
            for mono in monos:
                h = hermitian_matrix(class_to_form(ClassPoly.from_exponents(2, {mono: 1}), n))
                rows.append([h[i, j] for i in range(h.dim) for j in range(h.dim)])
            d_forms = mat_rank(rows)
            dims[f"n{n}k{k}"] = [d_diag, d_quot, d_forms]
            ok &= d_diag == d_quot == d_forms
    n1 = all(hodge_dimension(2, e, 1) == comb(e + 1, 2) for e in range(2, 6))
    return ok and n1, {"triple_agreement": ok, "codim1_dims_match": n1, "dims": dims}


@_timed("hermitian-power-identity")
def check_equality_maps(seed: int = 0):
    rng = random.Random(seed)
    trials = 0
    ok = True
    while trials < 20:
        n = rng.randint(1, 3)
        k = rng.randint(1, 3)
        if k > 2 * n:
            continue
        a, b, d = (Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(3))
        beta = _t(1).scaled(a) + _t(2).scaled(d) + _lam().scaled(b)
        if beta.is_zero():
            continue
        h1 = hermitian_matrix(class_to_form(beta, n))
        hk = hermitian_matrix(class_to_form(beta**k, n))
        comp = compound_matrix(h1.rows, k)
        want = [[factorial(k) * x for x in row] for row in comp]
        ok &= hk.rows == tuple(tuple(r) for r in want)
        trials += 1
    return ok, {"trials": trials}


@_timed("block-fixtures")
def check_block_fixtures():
    matches = {name: rep2.fixture_matches(name) for name in rep2.PRINTED_BLOCK_FIXTURES}
    scales = {
        name: str(fix["scale"]) for name, fix in rep2.PRINTED_BLOCK_FIXTURES.items()
    }
    return all(matches.values()), {"matches": matches, "scales": scales}


@_timed("hermite-span")
def check_hermite_span():
    dims = {k: rep2.hermite_span_dim(k) for k in range(1, 7)}
    ok = all(d == (k + 1) * (k + 2) // 2 for k, d in dims.items())
    return ok, {"dims": dims}


@_timed("witness-battery")
def check_witnesses(seed: int = 0, nef_samples: int = 1000):
    t1, t2, lam = _t(1), _t(2), _lam()
    alpha = t1 * t1 + t1 * t2 + t2 * t2 + lam * lam
    mu = mu_class()
    details = {}
    ok = True

    c = semi_membership(alpha, 3)
    details["alpha_not_semi"] = (not c.semipositive) and c.witness_block == (1, 0) and c.witness_value == Fraction(-1, 2)
    ok &= details["alpha_not_semi"] and c.verify(alpha)

    c = semi_membership(mu, 3)
    details["mu_not_semi"] = not c.semipositive and c.verify(mu)
    ok &= details["mu_not_semi"]

    for n in (3, 4):
        cls = alpha
        for _ in range(n - 2):
            cls = t1 * cls
        c = semi_membership(cls, n)
        details[f"t1^{n-2}*alpha_semi_n{n}"] = c.semipositive
        ok &= c.semipositive

    for k, name in ((0, "mu"), (1, "t1*mu")):
        cls = mu
        for _ in range(k):
            cls = t1 * cls
        c = semi_membership(cls, 3)
        r = nef_sampled_check(cls, 3, nef_samples, seed=seed + k)
        details[f"{name}_n3"] = {
            "not_semipositive": not c.semipositive,
            "nef_sampled_violation": r.violation,
            "samples": r.samples,
        }
        ok &= (not c.semipositive) and (not r.violation)

    c = semi_membership(t2 * t1 * mu, 3, route="oracle")
    details["t2*t1*mu_oracle_not_semi"] = not c.semipositive and c.verify(t2 * t1 * mu)
    ok &= details["t2*t1*mu_oracle_not_semi"]

    neg = nef_sampled_check(-(t1**2), 2, 50, seed=seed)
    details["minus_t1sq_violation"] = neg.violation
    ok &= neg.violation
    return ok, details


@_timed("extremality-ranks")
def check_extremality(seed: int = 0, count: int = 100):
    ok = True
    per_k = {}
    for k in range(1, 5):
        ranks = {extremality_rank(s.class_poly) for s in sample_Ek(k, 2, count, seed=seed + k)}
        per_k[k] = sorted(ranks)
        ok &= ranks == {1}
        neg = _t(1) ** (k - 1) * (_t(1) + _t(2)) if k >= 2 else None
        if neg is not None:
            r = extremality_rank(neg)
            per_k[f"negative_control_k{k}"] = r
            ok &= r == 2
    return ok, {"ranks": per_k, "samples_per_k": count}


@_timed("degree4-roundtrip")
def check_semi4(seed: int = 0, count: int = 50):
    rng = random.Random(seed)
    t1, t2, lam = _t(1), _t(2), _lam()

    def rnd_f(lo=-6, hi=6, den=4):
        return Fraction(rng.randint(lo, hi), rng.randint(1, den))

    ok = True
    two_root = double_root = 0
    while two_root < count:
        a, b = rnd_f(), rnd_f()
        if a == b:
            continue
        da = t1 + t2.scaled(a * a) + lam.scaled(a)
        db = t1 + t2.scaled(b * b) + lam.scaled(b)
        cls = (da * da * db * db).scaled(Fraction(rng.randint(1, 9), rng.randint(1, 4)))
        dec = semi4_extremal_decompose(cls)
        ok &= dec.status == "extremal_product" and dec.pattern == "t1^2*t2^2"
        ok &= normal_form(dec.recompose(), 3) == normal_form(cls, 3)
        two_root += 1
    while double_root < count:
        a = rnd_f()
        b = a + Fraction(rng.randint(1, 4))
        da = t1 + t2.scaled(a * a) + lam.scaled(a)
        db = t1 + t2.scaled(b * b) + lam.scaled(b)
        cls = (da * da * da * db).scaled(Fraction(rng.randint(1, 9), rng.randint(1, 4)))
        dec = semi4_extremal_decompose(cls)
        ok &= dec.status == "extremal_product" and dec.pattern == "t1^3*t2"
        ok &= dec.double_root == a
        ok &= normal_form(dec.recompose(), 3) == normal_form(cls, 3)
        double_root += 1

    not_extremal = 0
    for _ in range(10):
        a, b, c, d = rnd_f(), rnd_f(), rnd_f(), rnd_f()
        if len({a, b, c, d}) < 3:
            continue
        p1 = (t1 + t2.scaled(a * a) + lam.scaled(a)) * (t1 + t2.scaled(b * b) + lam.scaled(b))
        p2 = (t1 + t2.scaled(c * c) + lam.scaled(c)) * (t1 + t2.scaled(d * d) + lam.scaled(d))
        cls = p1 * p1 + p2 * p2
        dec = semi4_extremal_decompose(cls)
        ok &= dec.status == "not_extremal"
        not_extremal += 1

    violator = _halfspace_violator()
    dec = semi4_extremal_decompose(violator)
    ok &= dec.status == "not_in_cone"
    mu = mu_class()
    ok &= semi4_extremal_decompose(mu * mu).status == "not_in_cone"
    return ok, {
        "two_root_roundtrips": two_root,
        "double_root_roundtrips": double_root,
        "not_extremal_cases": not_extremal,
        "halfspace_violator_rejected": dec.status == "not_in_cone",
    }


def _halfspace_violator() -> ClassPoly:
    """A degree-4 class whose (1,2)-block is PSD rank 1 but halfspace-negative."""
    basis = quotient_basis(3, 2, 4)
    bm = rep2.block_map(4, (1, 2))
    cols = []
    for mono in basis:
        m = bm.apply_class(ClassPoly.from_exponents(2, {mono: 1}))
        cols.append([m[i, j] for i in range(3) for j in range(i, 3)])
    a_rows = [[cols[b][ent] for b in range(len(basis))] for ent in range(6)]
    target = [Fraction(x) for x in (1, 0, 1, 0, 0, 1)]  # upper entries of vv^T, v = (1,0,1)
    x = solve_linear(a_rows, target)
    cls = ClassPoly.zero(2, 4)
    for c, mono in zip(x, basis):
        cls = cls + ClassPoly.from_exponents(2, {mono: c})
    assert mu_top_coefficient(cls, 3) < 0
    return cls


@_timed("blocks-vs-oracle")
def check_blocks_vs_oracle(seed: int = 0, count: int = 200, gl_trials: int = 20):
    rng = random.Random(seed)

    def rnd_class(e, k, nterms=4):
        monos = monomials_of_degree(e, k)
        sel = rng.sample(monos, min(nterms, len(monos)))
        return ClassPoly.from_exponents(
            e, {m: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for m in sel}
        )

    agree = 0
    for _ in range(count):
        n = rng.randint(1, 3)
        k = rng.randint(1, 2 * n)
        p = rnd_class(2, k)
        if p.is_zero():
            continue
        cb = semi_membership(p, n, route="blocks")
        co = semi_membership(p, n, route="oracle")
        if cb.semipositive != co.semipositive:
            return False, {"disagreement": str(p), "n": n, "k": k}
        agree += 1

    gl_ok = 0
    for _ in range(gl_trials):
        n = 2
        k = rng.randint(1, 4)
        p = rnd_class(2, k)
        if p.is_zero():
            continue
        while True:
            g = tuple(
                tuple(Fraction(rng.randint(-3, 3)) for _ in range(2)) for _ in range(2)
            )
            if g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0:
                break
        if semi_membership(gl_action(g, p), n).semipositive != semi_membership(p, n).semipositive:
            return False, {"gl_disagreement": str(p), "g": str(g)}
        gl_ok += 1

    pull_ok = 0
    for _ in range(10):
        p = rnd_class(2, 2)
        if p.is_zero():
            continue
        big = pullback_along_projection(p, 3)
        if semi_membership(p, 2).semipositive != semi_membership(big, 2, route="oracle").semipositive:
            return False, {"pullback_disagreement": str(p)}
        pull_ok += 1
    return True, {"agreements": agree, "gl_invariance_trials": gl_ok, "pullback_trials": pull_ok}


@_timed("dimension-independence")
def check_dimension_independence(seed: int = 0):
    # the block maps depend on (k, label) only, so the defining inequality
    # systems coincide once the label sets do; verdicts must then agree
    rng = random.Random(seed)
    ok = True
    details = {}
    for k in (1, 2, 3):
        labels_k = set(wedge_decomposition(k, k))
        labels_k1 = set(wedge_decomposition(k + 1, k))
        same = labels_k == labels_k1
        verdicts_agree = True
        monos = monomials_of_degree(2, k)
        for _ in range(20):
            sel = rng.sample(monos, min(3, len(monos)))
            p = ClassPoly.from_exponents(
                2, {m: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for m in sel}
            )
            if p.is_zero():
                continue
            verdicts_agree &= (
                semi_membership(p, k).semipositive == semi_membership(p, k + 1).semipositive
            )
        details[f"k{k}"] = {"labels": sorted(labels_k), "same_labels": same}
        ok &= same and verdicts_agree
    return ok, details


@_timed("decomposition-identities")
def check_decomposition_identities():
    ok = True
    for n in range(1, 6):
        for k in range(0, 2 * n + 1):
            dec = wedge_decomposition(n, k)  # dimension identity asserted inside
            ok &= sum(mult * (m + 1) for (_, m), mult in dec.items()) == comb(2 * n, k)
    for m in range(0, 9):
        dec = tensor_power_decomposition(m)
        ok &= sum(mult * (mm + 1) for (_, mm), mult in dec.items()) == 2**m
    filtration = all(
        set(enumerate_hodge_diagrams(n, e, k))
        == set(enumerate_sym_diagrams(e, k)) - set(ideal_slice_diagrams(e, k, n + 1))
        for n in (1, 2, 3)
        for e in (2, 3)
        for k in range(0, 5)
    )
    mu_graded = all(
        sum(2 * k - 4 * i + 1 for i in range(k // 2 + 1))
        == comb(k + 2, 2)
        == sum(schur_dim(d, 2) for d in enumerate_sym_diagrams(2, k))
        for k in range(0, 8)
    )
    return ok and filtration and mu_graded, {
        "wedge_identity": ok,
        "filtration_consistent": filtration,
        "mu_graded_dimensions": mu_graded,
    }


ALL_CHECKS = [
    check_relations,
    check_intersections,
    check_dimensions,
    check_equality_maps,
    check_block_fixtures,
    check_hermite_span,
    check_witnesses,
    check_extremality,
    check_semi4,
    check_blocks_vs_oracle,
    check_dimension_independence,
    check_decomposition_identities,
]


def run_all(max_n: int = 4, seed: int = 0, threads: int | None = None) -> list[CheckResult]:
    """Run the whole battery; deterministic for fixed (max_n, seed)."""
    jobs = []
    for fn in ALL_CHECKS:
        if fn.__name__ == "check_relations":
            jobs.append((fn, (max_n,)))
        elif fn.__name__ == "check_intersections":
            jobs.append((fn, (max_n,)))
        elif fn.__name__ in ("check_equality_maps", "check_witnesses", "check_extremality",
                             "check_semi4", "check_blocks_vs_oracle",
                             "check_dimension_independence"):
            jobs.append((fn, (seed,)))
        else:
            jobs.append((fn, ()))
    if threads is None:
        threads = int(os.environ.get("HODGE_CONES_THREADS", "1"))
    threads = max(1, min(threads, len(jobs)))
    if threads == 1:
        results = [fn(*args) for fn, args in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: job[0](*job[1]), jobs))
    return sorted(results, key=lambda r: r.name)
