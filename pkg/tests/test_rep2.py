import random
from fractions import Fraction as F
from math import comb

import pytest

from hodgecones.algebra import ClassPoly, monomials_of_degree
from hodgecones.forms import class_to_form, hermitian_matrix
from hodgecones.linalg import mat_rank
from hodgecones.rep2 import (
    PRINTED_BLOCK_FIXTURES,
    block_map,
    bprime_matrix,
    class_x_coefficients,
    fixture_matches,
    hermite_span_dim,
    irred_rep_matrix,
    sym_rep_matrix,
)
from hodgecones.schur import wedge_decomposition


def t(i):
    return ClassPoly.theta(i, 2)


def lam():
    return ClassPoly.lam(1, 2, 2)


def rnd_g(rng, symmetric=False):
    while True:
        a, b, c, d = (F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4))
        if symmetric:
            c = b
        if a * d - b * c != 0:
            return ((a, b), (c, d))


def test_sym_rep_k1_is_g():
    g = ((F(2), F(3)), (F(5), F(7)))
    assert sym_rep_matrix(1, g) == [[F(2), F(3)], [F(5), F(7)]]


def test_sym_rep_k2_printed_shape():
    a, b, c, d = F(2), F(3), F(5), F(7)
    assert sym_rep_matrix(2, ((a, b), (c, d))) == [
        [a * a, a * b, b * b],
        [2 * a * c, a * d + b * c, 2 * b * d],
        [c * c, c * d, d * d],
    ]


def test_sym_rep_with_d_symmetric_for_symmetric_g():
    a, b, d = F(2), F(3), F(7)
    m = sym_rep_matrix(2, ((a, b), (b, d)), with_d=True)
    assert m == [
        [a * a, 2 * a * b, b * b],
        [2 * a * b, 2 * (a * d + b * b), 2 * b * d],
        [b * b, 2 * b * d, d * d],
    ]


def test_sym_rep_multiplicative():
    rng = random.Random(1)
    for k in (2, 3, 4):
        g, h = rnd_g(rng), rnd_g(rng)
        gh = tuple(
            tuple(sum(g[i][l] * h[l][j] for l in range(2)) for j in range(2)) for i in range(2)
        )
        mg, mh = sym_rep_matrix(k, g), sym_rep_matrix(k, h)
        prod = [
            [sum(mg[i][l] * mh[l][j] for l in range(k + 1)) for j in range(k + 1)]
            for i in range(k + 1)
        ]
        assert sym_rep_matrix(k, gh) == prod


def test_irred_rep_examples():
    g = ((F(2), F(3)), (F(5), F(7)))
    assert irred_rep_matrix((1, 0), g) == [[F(-1)]]  # ad - bc
    gs = ((F(2), F(3)), (F(3), F(7)))
    det = F(2 * 7 - 9)
    assert irred_rep_matrix((1, 1), gs) == [[det * 2, det * 3], [det * 3, det * 7]]
    assert irred_rep_matrix((0, 0), g) == [[F(1)]]


@pytest.mark.parametrize("name", sorted(PRINTED_BLOCK_FIXTURES))
def test_printed_fixture_matches_up_to_stored_scale(name):
    assert fixture_matches(name)
    assert PRINTED_BLOCK_FIXTURES[name]["scale"] > 0


def test_fixture_scale_is_the_unique_positive_ratio():
    # recompute each scale from the first nonzero coefficient pair
    for name, fix in PRINTED_BLOCK_FIXTURES.items():
        bm = block_map(fix["k"], fix["label"])
        ratios = set()
        for i in range(bm.dim):
            for j in range(bm.dim):
                ours = bm.entry_coeffs[i][j]
                for x, c in fix["entries"][i][j].items():
                    ratios.add(F(c) / ours[x])
        assert ratios == {fix["scale"]}, name


def test_block_map_beta_power_identity():
    rng = random.Random(2)
    for _ in range(20):
        g = rnd_g(rng, symmetric=True)
        (a, b), (_, d) = g
        beta = t(1).scaled(a) + t(2).scaled(d) + lam().scaled(b)
        for k in (2, 3, 4):
            bk = beta**k
            for label in wedge_decomposition(4, k):
                got = block_map(k, label).apply_class(bk)
                want = irred_rep_matrix(label, g, with_d=True)
                assert got.rows == tuple(tuple(r) for r in want)


def test_bprime_examples():
    # b' of a divisor power is the symmetrized representation matrix
    a, b, d = F(1, 2), F(3), F(5, 3)
    beta = t(1).scaled(a) + t(2).scaled(d) + lam().scaled(b)
    for k in (1, 2, 3):
        got = bprime_matrix(beta**k)
        want = sym_rep_matrix(k, ((a, b), (b, d)), with_d=True)
        assert got.rows == tuple(tuple(r) for r in want)
    alpha = t(1) ** 2 + t(1) * t(2) + t(2) ** 2 + lam() ** 2
    assert bprime_matrix(alpha).rows == ((1, 0, 1), (0, 3, 0), (1, 0, 1))


def test_bprime_border_structure():
    rng = random.Random(3)
    for k in (1, 2, 3):
        monos = monomials_of_degree(2, k)
        alpha = ClassPoly.from_exponents(
            2, {m: F(rng.randint(-3, 3), rng.randint(1, 2)) for m in rng.sample(monos, 3)}
        )
        inner = bprime_matrix(alpha)
        outer = bprime_matrix(t(1) * alpha)
        for i in range(k + 1):
            for j in range(k + 1):
                assert outer[i, j] == inner[i, j]
        assert all(outer[i, k + 1] == 0 for i in range(k + 2))
        assert all(outer[k + 1, j] == 0 for j in range(k + 2))


@pytest.mark.parametrize("k", range(1, 7))
def test_hermite_span_dim(k):
    assert hermite_span_dim(k) == (k + 1) * (k + 2) // 2


@pytest.mark.parametrize("k", range(1, 5))
def test_block_coefficient_map_is_full_rank(k):
    # the (0, k) block map is an isomorphism onto symmetric matrices in degree k
    assert mat_rank(block_map(k, (0, k)).coefficient_rows()) == (k + 1) * (k + 2) // 2


def test_blocks_match_oracle_sign_profile():
    # exact PSD verdicts of the block route agree with the form oracle
    rng = random.Random(4)
    from hodgecones.cones import semi_membership

    for _ in range(25):
        n = rng.randint(1, 3)
        k = rng.randint(1, 2 * n)
        monos = monomials_of_degree(2, k)
        alpha = ClassPoly.from_exponents(
            2,
            {m: F(rng.randint(-4, 4), rng.randint(1, 3)) for m in rng.sample(monos, min(4, len(monos)))},
        )
        if alpha.is_zero():
            continue
        assert (
            semi_membership(alpha, n, route="blocks").semipositive
            == semi_membership(alpha, n, route="oracle").semipositive
        )


def test_x_coefficients():
    mu = (t(1) * t(2)).scaled(4) - lam() ** 2
    assert class_x_coefficients(mu) == {(1, 1, 0): F(4), (0, 0, 2): F(-1)}
    with pytest.raises(ValueError):
        class_x_coefficients(ClassPoly.theta(1, 3))
