import numpy as np
import pytest

from src.lattice.basis import (
    PairConfiguration,
    binomial,
    build_sector_basis,
    combinations_array,
    enumerate_full_basis,
    rank_configurations,
    unrank_configuration,
)
from src.lattice.geometry import LatticeGeometry
from src.model.hamiltonian import translation_operator


def test_lexicographic_enumeration_and_rank():
    configs = combinations_array(4, 2)
    np.testing.assert_array_equal(configs, [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]])
    np.testing.assert_array_equal(rank_configurations(configs, 4), np.arange(6))


def test_unrank_inverts_rank():
    configs = combinations_array(7, 3)
    for index, row in enumerate(configs.tolist()):
        assert unrank_configuration(index, 7, 3) == tuple(row)
    with pytest.raises(ValueError):
        unrank_configuration(binomial(7, 3), 7, 3)


def test_full_basis_dimension(torus3x4):
    basis = enumerate_full_basis(torus3x4, 3)
    assert basis.dimension == binomial(12, 3)
    assert basis.occupation.sum(axis=1).tolist() == [3] * basis.dimension
    assert basis.configurations[0] == PairConfiguration((0, 1, 2))


@pytest.mark.parametrize("n_pairs", [0, 5])
def test_full_basis_rejects_pair_count(ring4, n_pairs):
    with pytest.raises(ValueError):
        enumerate_full_basis(ring4, n_pairs)


def test_pair_configuration_must_be_increasing():
    with pytest.raises(ValueError):
        PairConfiguration((2, 1))
    with pytest.raises(ValueError):
        PairConfiguration((1, 1))


def test_ring4_zero_momentum_sector(ring4):
    sector = build_sector_basis(ring4, 2)
    np.testing.assert_array_equal(sector.representatives, [[0, 1], [0, 2]])
    np.testing.assert_array_equal(sector.orbit_sizes, [4, 2])
    assert sector.is_real


def test_ring4_sector_dimensions(ring4):
    dimensions = [build_sector_basis(ring4, 2, k_x=k).dimension for k in range(4)]
    # {0, 2} の軌道は k = 1, 3 と両立しない
    assert dimensions == [2, 1, 2, 1]


@pytest.mark.parametrize("rows, cols, n_pairs", [(1, 6, 2), (1, 7, 3), (3, 4, 2), (3, 3, 3)])
def test_sectors_partition_full_basis(rows, cols, n_pairs):
    geometry = LatticeGeometry(rows=rows, cols=cols)
    total = sum(
        build_sector_basis(geometry, n_pairs, k_x, k_y).dimension
        for k_x in range(cols)
        for k_y in range(rows)
    )
    assert total == binomial(geometry.n_sites, n_pairs)


def test_invalid_momentum_rejected(torus3x4):
    with pytest.raises(ValueError):
        build_sector_basis(torus3x4, 2, k_x=4)
    with pytest.raises(ValueError):
        build_sector_basis(torus3x4, 2, k_y=3)


def test_locate_returns_representative_and_shift(ring4):
    sector = build_sector_basis(ring4, 2)
    index, shift_x, shift_y = sector.locate(np.array([[1, 2]]))
    assert index.tolist() == [0]
    assert shift_x.tolist() == [1]
    assert shift_y.tolist() == [0]
    index, _, _ = sector.locate(np.array([[1, 3]]))
    assert index.tolist() == [1]


def test_locate_marks_incompatible_orbits(ring4):
    sector = build_sector_basis(ring4, 2, k_x=1)
    index, _, _ = sector.locate(np.array([[0, 2]]))
    assert index.tolist() == [-1]


def test_lift_preserves_norm_and_matches_lookup(torus3x4):
    sector = build_sector_basis(torus3x4, 2, k_x=1, k_y=2)
    rng = np.random.default_rng(7)
    vector = rng.standard_normal(sector.dimension) + 1j * rng.standard_normal(sector.dimension)
    vector /= np.linalg.norm(vector)

    lifted = sector.lift(vector)
    assert np.linalg.norm(lifted) == pytest.approx(1.0, abs=1e-12)
    looked_up = sector.amplitudes_of(vector, sector.full_basis.configs)
    np.testing.assert_allclose(looked_up, lifted, atol=1e-14)


def test_lifted_sector_state_has_its_momentum(torus3x4):
    sector = build_sector_basis(torus3x4, 2, k_x=3, k_y=1)
    vector = np.ones(sector.dimension) / np.sqrt(sector.dimension)
    lifted = sector.lift(vector)
    shifted = translation_operator(sector.full_basis, 1, 0) @ lifted
    # T_t |ψ_k⟩ = χ(t)* |ψ_k⟩
    np.testing.assert_allclose(shifted, np.conj(sector.character(1, 0)) * lifted, atol=1e-13)
