"""Tests for the 2x2 complex matrix layer."""

import random

import numpy as np
import pytest

from taurmt.mat2 import (
    IDENTITY,
    SIGMA3,
    Mat2,
    SingularMatrixError,
    approx_eq,
    conjugate,
    det,
    inv,
    max_diff,
    mul,
    tr,
)


def random_mat(rng):
    return Mat2(*(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(4)))


def to_array(m):
    return np.array(m.rows(), dtype=complex)


class TestBasics:
    def test_identity_inverse(self):
        assert max_diff(inv(IDENTITY), IDENTITY) == 0.0

    def test_sigma3_trace(self):
        assert tr(SIGMA3) == 0.0

    def test_mul_matches_numpy(self):
        rng = random.Random(5)
        for _ in range(50):
            a, b = random_mat(rng), random_mat(rng)
            got = to_array(mul(a, b))
            ref = to_array(a) @ to_array(b)
            assert np.max(np.abs(got - ref)) < 1e-14

    def test_det_multiplicative(self):
        rng = random.Random(6)
        for _ in range(100):
            a, b = random_mat(rng), random_mat(rng)
            lhs = det(mul(a, b))
            rhs = det(a) * det(b)
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))

    def test_inverse_property(self):
        rng = random.Random(8)
        for _ in range(100):
            a = random_mat(rng)
            if abs(det(a)) < 1e-3:
                continue
            assert max_diff(mul(a, inv(a)), IDENTITY) < 1e-12

    def test_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            inv(Mat2(1.0, 2.0, 2.0, 4.0))


class TestConjugate:
    def test_identity_frame(self):
        a = Mat2(1.0, 2.0 + 1j, 0.5, -3.0)
        assert max_diff(conjugate(a, IDENTITY), a) == 0.0

    def test_trace_det_preserved(self):
        rng = random.Random(9)
        for _ in range(50):
            a, p = random_mat(rng), random_mat(rng)
            if abs(det(p)) < 1e-3:
                continue
            c = conjugate(a, p)
            assert abs(tr(c) - tr(a)) < 1e-12 * max(1.0, abs(tr(a)))
            assert abs(det(c) - det(a)) < 1e-10 * max(1.0, abs(det(a)))

    def test_random_case_matches_numpy(self):
        rng = random.Random(10)
        a, p = random_mat(rng), random_mat(rng)
        ref = to_array(p) @ to_array(a) @ np.linalg.inv(to_array(p))
        assert np.max(np.abs(to_array(conjugate(a, p)) - ref)) < 1e-12


class TestApproxEq:
    def test_self_equal(self):
        a = Mat2(1.0, 2.0, 3.0, 4.0)
        ok, diff = approx_eq(a, a, 0.0)
        assert ok and diff == 0.0

    def test_identity_vs_sigma3(self):
        ok, diff = approx_eq(IDENTITY, SIGMA3, 1e-9)
        assert not ok
        assert diff == pytest.approx(2.0)

    def test_boundary_report(self):
        a = Mat2(1.0, 0.0, 0.0, 1.0)
        b = Mat2(1.0 + 3e-7, 0.0, 0.0, 1.0)
        ok, diff = approx_eq(a, b, 1e-7)
        assert not ok
        assert diff == pytest.approx(3e-7, rel=1e-6)
        ok2, _ = approx_eq(a, b, 1e-6)
        assert ok2
