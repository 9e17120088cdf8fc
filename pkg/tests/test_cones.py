import random
from fractions import Fraction as F

import pytest

from hodgecones.algebra import ClassPoly, gl_action, monomials_of_degree, normal_form
from hodgecones.cones import (
    QuadraticRoots,
    Semi4Decomposition,
    divisor_class_from_vector,
    divisor_is_nef,
    extremality_rank,
    mu_class,
    mu_top_coefficient,
    nef_sampled_check,
    sample_Ek,
    semi4_extremal_decompose,
    semi_membership,
)


def t(i, e=2):
    return ClassPoly.theta(i, e)


def lam(e=2):
    return ClassPoly.lam(1, 2, e)


def test_divisor_nef_examples():
    assert divisor_is_nef(t(1) + t(2))
    assert not divisor_is_nef(lam())
    assert divisor_is_nef(t(1) + t(2) + lam())  # rank-one boundary ray
    assert divisor_is_nef(ClassPoly.theta(1, 3) + ClassPoly.theta(3, 3))


def test_witness_class_not_semipositive_with_half_witness():
    alpha = t(1) ** 2 + t(1) * t(2) + t(2) ** 2 + lam() ** 2
    cert = semi_membership(alpha, 3)
    assert not cert.semipositive
    assert cert.witness_block == (1, 0)
    assert cert.witness_value == F(-1, 2)
    assert cert.verify(alpha)


def test_mu_not_semipositive_and_explicit_vector():
    mu = mu_class()
    cert = semi_membership(mu, 2)
    assert not cert.semipositive and cert.verify(mu)
    # the classical direction (1, 0, 1) in the full symmetric block gives -2
    from hodgecones.rep2 import bprime_matrix

    b = bprime_matrix(mu)
    assert b.quadratic_form((1, 0, 1)) == -2


def test_theta_mu_witness_vector():
    mu = mu_class()
    cert = semi_membership(t(1) * mu, 3)
    assert not cert.semipositive and cert.witness_block == (0, 3)
    from hodgecones.rep2 import bprime_matrix

    b = bprime_matrix(t(1) * mu)
    assert b.quadratic_form((1, 0, 1, 0)) == -2


def test_stabilized_witness_class_becomes_semipositive():
    alpha = t(1) ** 2 + t(1) * t(2) + t(2) ** 2 + lam() ** 2
    for n in (3, 4):
        cls = alpha
        for _ in range(n - 2):
            cls = t(1) * cls
        assert semi_membership(cls, n).semipositive


def test_oracle_route_on_three_factors():
    # pullback along a projection preserves and reflects semipositivity
    from hodgecones.algebra import pullback_along_projection

    rng = random.Random(0)
    for _ in range(5):
        monos = monomials_of_degree(2, 2)
        p = ClassPoly.from_exponents(
            2, {m: F(rng.randint(-4, 4), rng.randint(1, 3)) for m in rng.sample(monos, 3)}
        )
        if p.is_zero():
            continue
        small = semi_membership(p, 2)
        big = semi_membership(pullback_along_projection(p, 3), 2, route="oracle")
        assert small.semipositive == big.semipositive


def test_gl_invariance_of_semipositivity():
    rng = random.Random(1)
    mu = mu_class()
    for _ in range(8):
        while True:
            g = [[F(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
            if g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0:
                break
        for p in (mu, t(1) * t(2), (t(1) + t(2)) ** 2):
            assert (
                semi_membership(gl_action(g, p), 2).semipositive
                == semi_membership(p, 2).semipositive
            )


def test_mu_scales_by_det_squared():
    mu = mu_class()
    g = [[F(2), F(1)], [F(1), F(1)]]
    assert gl_action(g, mu) == mu  # det 1
    g = [[F(3), F(1)], [F(1), F(1)]]
    assert gl_action(g, mu) == mu.scaled(4)  # det 2


def test_mu_top_coefficient_values():
    mu = mu_class()
    assert mu_top_coefficient(mu * mu, 3) == 30
    assert mu_top_coefficient(t(1) ** 2 * t(2) ** 2, 3) == 1
    assert mu_top_coefficient(ClassPoly.one(2), 3) == 1


def test_mu_top_nonnegative_on_semipositive_samples():
    for s in sample_Ek(4, 2, 250, seed=3):
        assert mu_top_coefficient(s.class_poly, 3) >= 0
    # sums of divisor-power products are certified semipositive and stay
    # inside the halfspace
    pool = sample_Ek(2, 2, 500, seed=4)
    for s1, s2 in zip(pool[::2], pool[1::2]):
        cls = s1.class_poly + s2.class_poly
        assert semi_membership(cls, 2).semipositive
        assert mu_top_coefficient(cls, 2) >= 0


def test_sample_Ek_determinism_and_invariant():
    s1 = sample_Ek(3, 2, 10, seed=42)
    s2 = sample_Ek(3, 2, 10, seed=42)
    assert [s.vectors for s in s1] == [s.vectors for s in s2]
    s3 = sample_Ek(3, 2, 10, seed=43)
    assert [s.vectors for s in s1] != [s.vectors for s in s3]
    # class equals the product of the group-translated polarizations
    sample = s1[0]
    prod = ClassPoly.one(2)
    for g in sample.group_elements():
        prod = prod * gl_action(g, t(1))
    assert prod == sample.class_poly


def test_extremality_ranks():
    for k in (1, 2, 3, 4):
        for s in sample_Ek(k, 2, 15, seed=k):
            assert extremality_rank(s.class_poly) == 1
    assert extremality_rank(t(1) ** 2) == 1
    assert extremality_rank(t(1) * (t(1) + t(2))) == 2
    assert extremality_rank(t(1) ** 2 * (t(1) + t(2))) == 2


def test_divisor_class_from_vector():
    assert divisor_class_from_vector((1, 0), 2) == t(1)
    assert divisor_class_from_vector((1, 1), 2) == t(1) + t(2) + lam()
    v = divisor_class_from_vector((2, -3), 2)
    assert v == t(1).scaled(4) + t(2).scaled(9) + lam().scaled(-6)
    assert divisor_is_nef(v)


def test_nef_sampled_check_examples():
    mu = mu_class()
    assert not nef_sampled_check(mu, 2, 300, seed=5).violation
    assert not nef_sampled_check(t(1) * mu, 3, 300, seed=5).violation
    res = nef_sampled_check(-(t(1) ** 2), 2, 50, seed=5)
    assert res.violation and res.witness_value < 0
    assert res.to_json()["necessary_condition_only"] is True


def test_semi4_two_root_round_trip():
    rng = random.Random(6)
    for _ in range(10):
        a = F(rng.randint(-5, 5), rng.randint(1, 3))
        b = F(rng.randint(-5, 5), rng.randint(1, 3))
        if a == b:
            continue
        da = divisor_class_from_vector((1, a), 2)
        db = divisor_class_from_vector((1, b), 2)
        cls = (da * da * db * db).scaled(F(rng.randint(1, 7), rng.randint(1, 3)))
        dec = semi4_extremal_decompose(cls)
        assert dec.status == "extremal_product" and dec.pattern == "t1^2*t2^2"
        assert sorted(dec.roots.rational_roots()) == sorted((a, b))
        assert normal_form(dec.recompose(), 3) == normal_form(cls, 3)


def test_semi4_double_root_round_trip():
    rng = random.Random(7)
    for _ in range(6):
        a = F(rng.randint(-5, 5), rng.randint(1, 3))
        b = a + rng.randint(1, 3)
        da = divisor_class_from_vector((1, a), 2)
        db = divisor_class_from_vector((1, b), 2)
        cls = (da**3 * db).scaled(F(rng.randint(1, 7), rng.randint(1, 3)))
        dec = semi4_extremal_decompose(cls)
        assert dec.status == "extremal_product" and dec.pattern == "t1^3*t2"
        assert dec.double_root == a
        assert normal_form(dec.recompose(), 3) == normal_form(cls, 3)


def test_semi4_irrational_roots_round_trip():
    # conjugate roots of y^2 - y - 1 (discriminant 5, not a square)
    probe = Semi4Decomposition(
        "extremal_product", "t1^2*t2^2", F(1), QuadraticRoots(F(1), F(-1), F(5))
    )
    cls = probe.recompose()
    dec = semi4_extremal_decompose(cls)
    assert dec.status == "extremal_product"
    assert dec.roots.discriminant == 5
    assert dec.roots.rational_roots() is None
    assert dec.factor_vectors() is None
    assert normal_form(dec.recompose(), 3) == normal_form(cls, 3)


def test_semi4_axes_and_swapped_charts():
    dec = semi4_extremal_decompose((t(1) ** 2 * t(2) ** 2).scaled(F(7, 3)))
    assert dec.status == "extremal_product" and dec.axes and dec.scale == F(7, 3)
    d2 = divisor_class_from_vector((2, 1), 2)
    cls = t(2) ** 2 * d2 * d2
    dec = semi4_extremal_decompose(cls)
    assert dec.status == "extremal_product" and dec.swapped
    assert normal_form(dec.recompose(), 3) == normal_form(cls, 3)


def test_semi4_rejections():
    mu = mu_class()
    assert semi4_extremal_decompose(mu * mu).status == "not_in_cone"
    da = divisor_class_from_vector((1, 1), 2)
    db = divisor_class_from_vector((1, -2), 2)
    nonext = (da * da * da * da) + (db * db * db * db)
    assert semi4_extremal_decompose(nonext).status == "not_extremal"
    with pytest.raises(ValueError):
        semi4_extremal_decompose(t(1) ** 2, n=3)


def test_semi_membership_agrees_between_dimensions():
    # the degree-k systems do not depend on n once n >= k
    rng = random.Random(8)
    for k in (1, 2, 3):
        monos = monomials_of_degree(2, k)
        for _ in range(10):
            p = ClassPoly.from_exponents(
                2,
                {m: F(rng.randint(-4, 4), rng.randint(1, 3)) for m in rng.sample(monos, min(3, len(monos)))},
            )
            if p.is_zero():
                continue
            assert semi_membership(p, k).semipositive == semi_membership(p, k + 1).semipositive
