import math

import numpy as np
import pytest

from xxzkink.halfint import HalfInt
from xxzkink.spin import ladder_coefficient, ladder_radicand, spin_matrices

HALF_GRID = [HalfInt(t) for t in range(1, 9)]  # J = 1/2 .. 4


def test_ladder_examples():
    assert ladder_coefficient(HalfInt(1), HalfInt(1), "up") == 0.0
    assert ladder_coefficient(HalfInt(1), HalfInt(-1), "up") == 1.0
    assert ladder_coefficient(HalfInt(2), HalfInt(0), "up") == math.sqrt(2)
    assert ladder_coefficient(HalfInt(2), HalfInt(-2), "down") == 0.0


@pytest.mark.parametrize("J", HALF_GRID)
def test_ladder_adjointness_exact(J):
    # raising out of m equals lowering out of m+1, as exact integers
    for tm in range(-J.twice, J.twice - 1, 2):
        m = HalfInt(tm)
        assert ladder_radicand(J, m, "up") == ladder_radicand(J, m + 1, "down")
        assert ladder_coefficient(J, m, "up") == ladder_coefficient(J, m + 1, "down")


def test_ladder_domain_errors():
    with pytest.raises(ValueError):
        ladder_coefficient(HalfInt(1), HalfInt(3), "up")
    with pytest.raises(ValueError):
        ladder_coefficient(HalfInt(2), HalfInt(1), "up")  # wrong parity for J=1
    with pytest.raises(ValueError):
        ladder_coefficient(HalfInt(1), HalfInt(1), "sideways")


def test_s3_ordering():
    s = spin_matrices(HalfInt(1))
    assert np.array_equal(s.s3, np.diag([0.5, -0.5]))
    s = spin_matrices(HalfInt(3))
    assert np.array_equal(np.diag(s.s3), [1.5, 0.5, -0.5, -1.5])
    # S+ strictly superdiagonal, S- strictly subdiagonal
    assert np.allclose(np.tril(s.splus), 0)
    assert np.allclose(np.triu(s.sminus), 0)
    assert np.array_equal(s.splus, s.sminus.T)


@pytest.mark.parametrize("J", HALF_GRID)
def test_su2_identities(J):
    s = spin_matrices(J)
    dim = J.twice + 1
    comm = s.splus @ s.sminus - s.sminus @ s.splus
    assert np.abs(comm - 2 * s.s3).max() <= 1e-12
    casimir = s.s3 @ s.s3 + 0.5 * (s.splus @ s.sminus + s.sminus @ s.splus)
    jf = float(J)
    assert np.abs(casimir - jf * (jf + 1) * np.eye(dim)).max() <= 1e-12


def test_spin_matrices_consistent_with_ladder():
    J = HalfInt(5)
    s = spin_matrices(J)
    for i in range(1, J.twice + 1):
        m = HalfInt(J.twice - 2 * i)  # level at column i
        assert s.splus[i - 1, i] == ladder_coefficient(J, m, "up")


def test_spin_zero_rejected():
    with pytest.raises(ValueError):
        spin_matrices(HalfInt(0))
