"""Acceptance suite: one test per exit criterion, each printing a PASS line.

Every criterion is exact (rational arithmetic end to end); the two timed
criteria also assert their stated wall-clock budgets.  Run with

    pytest tests/test_acceptance.py -v -s
"""

import time
from fractions import Fraction as F
from math import comb

from hodgecones import verify
from hodgecones.algebra import ClassPoly, hodge_dimension
from hodgecones.cones import mu_class, nef_sampled_check, semi_membership
from hodgecones.forms import top_pairing


def _report(num, title, result: verify.CheckResult):
    status = "PASS" if result.passed else "FAIL"
    print(f"ACCEPTANCE {status}: criterion {num} ({title}) [{result.elapsed_s:.2f}s]")
    assert result.passed, (num, title, result.details)


def test_criterion_01_relations_fixture():
    result = verify.check_relations(4)
    assert result.elapsed_s < 5.0
    _report(1, "relation generators, counts up to n=4 / e=3", result)


def test_criterion_02_intersection_numbers():
    result = verify.check_intersections(4)
    assert result.elapsed_s < 30.0
    details = result.details["mu_square"]
    assert details["discrepancy"] is True and details["oracle"] == "120"
    assert details["oracle_matches_expansion"] is True
    _report(2, "intersection numbers, formula vs oracle up to n=4", result)


def test_criterion_03_dimensions():
    result = verify.check_dimensions()
    _report(3, "diagram = quotient = oracle dimensions", result)


def test_criterion_04_hermitian_power_identity():
    result = verify.check_equality_maps(seed=0)
    assert result.details["trials"] == 20
    _report(4, "matrix of beta^k equals k! compound", result)


def test_criterion_05_block_fixtures():
    result = verify.check_block_fixtures()
    assert set(result.details["matches"]) == {
        "k2_first",
        "k2_second",
        "k3_first",
        "k3_second",
        "k4_first",
        "k4_second",
    }
    _report(5, "printed block matrices as linear maps", result)


def test_criterion_06_hermite_span():
    result = verify.check_hermite_span()
    _report(6, "symmetrized representation span dimensions", result)


def test_criterion_07_witness_battery():
    result = verify.check_witnesses(seed=0, nef_samples=1000)
    assert result.details["mu_n3"]["samples"] == 1000
    _report(7, "semipositivity witnesses and sampled nef checks", result)


def test_criterion_08_extremality():
    result = verify.check_extremality(seed=0, count=100)
    _report(8, "rank-one certificates on 100 samples per degree", result)


def test_criterion_09_degree4_roundtrip():
    result = verify.check_semi4(seed=0, count=50)
    assert result.details["two_root_roundtrips"] == 50
    assert result.details["double_root_roundtrips"] == 50
    _report(9, "degree-4 extremal decomposition round trips", result)


def test_criterion_10_blocks_vs_oracle():
    result = verify.check_blocks_vs_oracle(seed=0, count=200, gl_trials=20)
    assert result.details.get("agreements", 0) >= 190
    _report(10, "block route vs form oracle, and invariance", result)


def test_criterion_11_dimension_independence():
    result = verify.check_dimension_independence(seed=0)
    _report(11, "degree-k systems identical for n=k and n=k+1", result)


def test_criterion_12_decomposition_identities():
    result = verify.check_decomposition_identities()
    _report(12, "exterior/tensor decomposition dimension identities", result)
