import random
from fractions import Fraction

import pytest

from conftest import algebra, invariant, bresult
from qbfunc import bfunc as bf
from qbfunc.scalars import QS_ONE, q_power, qint, specialize_at_one, serialize

FAST = [("A", 3, 1), ("B", 3, 0), ("D", 4, 0), ("D", 4, 3)]


def test_intrinsic_unique_and_unit_of_explicit():
    for key in FAST:
        A = algebra(*key)
        fi = bf.construct_f_intrinsic(A)
        fe = bf.construct_f_explicit(A)
        assert set(fi.terms) == set(fe.terms)
        ratios = {serialize(fe.terms[e] / fi.terms[e]) for e in fi.terms}
        assert len(ratios) == 1  # explicit = unit * intrinsic


def test_explicit_invariance():
    for key in FAST:
        A = algebra(*key)
        f = invariant(*key)
        rep = bf.invariance_check(A, f)
        assert rep["ok"], rep


def test_b_samples_match_theorem():
    for key in FAST:
        res = bresult(*key)
        assert res.theorem_ok
        assert res.classical["ok"]
        assert res.constant_sign_match


def test_micro_case_A1():
    # with f = F_{i0} the b-function is [d]_q^{-1} q0^s [s+1]_{q0} exactly
    A = algebra("A", 1, 0)
    f = A.gen(0)
    samples = bf.b_samples(A, f, 3)
    d = A.pd.d_i0
    for s, b in samples.items():
        assert b == qint(d, 1).inverse() * q_power(d * s) * qint(s + 1, d)


def test_normalization_independence():
    A = algebra("A", 3, 1)
    f = invariant("A", 3, 1)
    c = q_power(3, -1)
    scaled = f.scale(c)
    s1 = bf.b_samples(A, f, 2)
    s2 = bf.b_samples(A, scaled, 2)
    for s in s1:
        assert s2[s] == s1[s] * c * c
    # the factored match status is unchanged
    r2 = bf.compute_bfunc(A, scaled, "intrinsic", smax=A.pd.r + 1)
    assert r2.theorem_ok and r2.classical["ok"]


def test_gram_identity_and_recursion():
    for key in FAST:
        A = algebra(*key)
        f = invariant(*key)
        res = bresult(*key)
        for row in bf.gram_check(A, f, res.samples, 2):
            assert row["ok"]
        # b(s) = <f^{s+1}, f^{s+1}> / <f^s, f^s>: an operator-free route
        powers = bf.invariant_powers(A, f, 3)
        for s in range(2):
            num = A.bilinear(powers[s + 1], powers[s + 1])
            den = A.bilinear(powers[s], powers[s])
            assert res.samples[s] == num / den


def test_interpolation_polynomiality():
    res = bresult("A", 3, 1)
    pd = algebra("A", 3, 1).pd
    assert len(res.poly) == pd.r + 1
    for s, b in res.samples.items():
        u = q_power(2 * pd.d_i0 * s)
        assert bf.poly_eval(res.poly, u) == b


def test_interpolation_mismatch_detected():
    samples = {s: qint(s + 1, 1) for s in range(4)}
    samples[3] = samples[3] + QS_ONE  # corrupt the holdout
    with pytest.raises(bf.InterpolationMismatch):
        bf.interpolate(samples, 1, 1)


def test_classical_limits():
    expect = {
        ("A", 3, 1): [1, 2],
        ("B", 3, 0): [1, Fraction(5, 2)],
        ("D", 4, 0): [1, 3],
        ("D", 4, 3): [1, 3],
    }
    for key, exps in expect.items():
        res = bresult(*key)
        assert res.exponents == [Fraction(a) for a in exps]
        for s, b in res.samples.items():
            want = Fraction(1)
            for a in exps:
                want *= a + s
            assert specialize_at_one(b / res.constant) == want


def test_expected_constants():
    # closed-form gauge constants, exactly (not only up to sign)
    assert bresult("A", 3, 1).constant == QS_ONE
    assert bresult("D", 4, 0).constant == QS_ONE
    assert bresult("D", 4, 3).constant == QS_ONE
    two_cosh = q_power(1) + q_power(-1)
    assert bresult("B", 3, 0).constant == (two_cosh ** 2).inverse()


def test_ladders():
    for key in [("A", 3, 1), ("B", 3, 0), ("D", 4, 0), ("D", 4, 3),
                ("C", 3, 2)]:
        A = algebra(*key)
        lad = bf.ladder(A)
        assert len(lad.fs) == A.pd.r
        for p, f in enumerate(lad.fs, start=1):
            assert f.degree() == p


def test_product_rule():
    for key in [("A", 3, 1), ("D", 4, 0)]:
        A = algebra(*key)
        f = invariant(*key)
        rep = bf.product_rule_check(A, f, nmax=3)
        assert rep["ok"], rep


def test_degree_overflow_budget():
    A = algebra("A", 3, 1)
    f = invariant("A", 3, 1)
    with pytest.raises(bf.DegreeOverflow):
        bf.b_samples(A, f, 3, max_terms=2)


def test_explicit_rejects_E7():
    class FakeRS:
        family = "E7"
        rank = 7

    class FakeA:
        rs = FakeRS()

        class pd:
            r = 3
    with pytest.raises(ValueError):
        bf.construct_f_explicit(FakeA())
