import numpy as np
import pytest

from oracles import brute_sector_rows
from xxzkink.basis import (
    IsingConfig,
    SectorBasis,
    enumerate_sector,
    rank_config,
    reachable_sectors,
    sector_dimension,
    unrank_config,
)
from xxzkink.halfint import HalfInt

H = HalfInt


def test_dimension_examples():
    assert sector_dimension(H(1), 2, H(5)) == 1
    assert sector_dimension(H(1), 2, H(3)) == 5
    assert sector_dimension(H(2), 1, H(0)) == 7
    assert sector_dimension(H(1), 2, H(99)) == 0  # unreachable -> 0, not an error
    assert sector_dimension(H(2), 2, H(1)) == 0  # wrong parity


@pytest.mark.parametrize("two_j", [1, 2, 3, 4])
@pytest.mark.parametrize("L", [1, 2])
def test_enumeration_matches_brute_force(two_j, L):
    for two_m in reachable_sectors(H(two_j), L):
        basis = SectorBasis(H(two_j), L, H(two_m))
        ref = brute_sector_rows(two_j, L, two_m)
        assert basis.dim == len(ref) == sector_dimension(H(two_j), L, H(two_m))
        assert [tuple(r) for r in basis.down] == ref


def test_enumeration_examples():
    basis = enumerate_sector(H(1), 2, H(5))
    assert [tuple(v.twice for v in c.values) for c in basis] == [(1, 1, 1, 1, 1)]
    basis = enumerate_sector(H(2), 1, H(0))
    tuples = [tuple(float(v) for v in c.values) for c in basis]
    assert len(tuples) == 7
    assert (1.0, 0.0, -1.0) in tuples and (0.0, 0.0, 0.0) in tuples
    # first emitted config is the m-lexicographically greatest (smallest down units)
    assert tuple(basis.down[0]) == min(tuple(r) for r in basis.down)


def test_rank_unrank_roundtrip_exhaustive():
    for two_j in (1, 2, 3, 4):
        for L in (2, 3, 4):
            for two_m in reachable_sectors(H(two_j), L):
                if sector_dimension(H(two_j), L, H(two_m)) > 10**4:
                    continue
                basis = SectorBasis(H(two_j), L, H(two_m))
                # vectorized: the rank of row i is i
                assert np.array_equal(basis.rank_rows(basis.down), np.arange(basis.dim))


def test_rank_unrank_config_objects():
    basis = SectorBasis(H(1), 1, H(1))
    cfg = IsingConfig(1, (H(-1), H(1), H(1)))
    assert rank_config(basis, cfg) == 2
    assert unrank_config(basis, 2) == cfg
    assert rank_config(basis, unrank_config(basis, 0)) == 0
    for i in range(basis.dim):
        assert rank_config(basis, unrank_config(basis, i)) == i


def test_rank_errors():
    basis = SectorBasis(H(1), 2, H(3))
    with pytest.raises(ValueError):
        rank_config(basis, IsingConfig(2, (H(1),) * 5))  # wrong magnetization
    with pytest.raises(ValueError):
        unrank_config(basis, basis.dim)
    with pytest.raises(ValueError):
        unrank_config(basis, -1)
    with pytest.raises(ValueError):
        rank_config(basis, IsingConfig(1, (H(1), H(1), H(1))))  # wrong length


def test_total_dimension_identity():
    for two_j in (1, 2, 3, 4):
        for L in (1, 2, 3, 4):
            total = sum(
                sector_dimension(H(two_j), L, H(tm)) for tm in reachable_sectors(H(two_j), L)
            )
            assert total == (two_j + 1) ** (2 * L + 1)


def test_spin_flip_counting_symmetry():
    for two_j in (1, 3, 4):
        for L in (2, 3):
            for tm in reachable_sectors(H(two_j), L):
                assert sector_dimension(H(two_j), L, H(tm)) == sector_dimension(
                    H(two_j), L, H(-tm)
                )


def test_config_validation():
    cfg = IsingConfig(1, (H(1), H(-1), H(1)))
    assert cfg.magnetization == H(1)
    assert cfg.value_at(-1) == H(1)
    with pytest.raises(ValueError):
        IsingConfig(1, (H(1), H(1)))
    with pytest.raises(ValueError):
        cfg.down_units(H(2))  # parity mismatch with J=1
    with pytest.raises(IndexError):
        cfg.value_at(2)


def test_max_states_guard():
    with pytest.raises(ValueError):
        SectorBasis(H(2), 4, H(0), max_states=10)
