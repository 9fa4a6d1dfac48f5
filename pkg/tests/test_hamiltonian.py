import numpy as np
import pytest

from src.analytic.oracles import single_pair_spectrum
from src.errors import BasisMismatchError, SizeLimitError
from src.lattice.basis import binomial, build_sector_basis, enumerate_full_basis
from src.lattice.geometry import LatticeGeometry
from src.model.effective import build_effective
from src.model.full import build_full, fermion_signs
from src.model.hamiltonian import translation_operator
from src.model.heisenberg import (
    heisenberg_image,
    spin_sector_basis,
    sublattice_rotation,
    total_magnetization,
)
from src.model.params import ModelParameters
from src.solver.eigensolver import LanczosSolver, dense_spectrum


def test_ring4_sector_matrix(ring4, params):
    sector = build_sector_basis(ring4, 2)
    hamiltonian = build_effective(ring4, params, sector)
    v = params.v_x
    expected = -2 * (params.u0 + v) * np.eye(2) + v * np.array(
        [[1.0, -np.sqrt(2.0)], [-np.sqrt(2.0), 0.0]]
    )
    np.testing.assert_allclose(hamiltonian.to_dense(), expected, atol=1e-14)


def test_diagonal_is_stored_explicitly(ring4):
    params = ModelParameters(u0=1.0, j_x=0.0, n_pairs=2)
    hamiltonian = build_effective(ring4, params)
    assert hamiltonian.matrix.nnz >= hamiltonian.dimension
    np.testing.assert_allclose(hamiltonian.diagonal(), -2.0)


def test_full_basis_hamiltonian_is_hermitian_and_stoquastic(torus3x4, params):
    hamiltonian = build_effective(torus3x4, params)
    assert hamiltonian.is_hermitian()
    dense = hamiltonian.to_dense()
    off_diagonal = dense - np.diag(np.diag(dense))
    assert np.all(off_diagonal <= 0.0)


def test_complex_sector_is_hermitian(torus3x4, params):
    sector = build_sector_basis(torus3x4, 2, k_x=1, k_y=2)
    hamiltonian = build_effective(torus3x4, params, sector)
    assert np.iscomplexobj(hamiltonian.values)
    assert hamiltonian.is_hermitian()


def test_commutes_with_translations(torus3x4, params):
    hamiltonian = build_effective(torus3x4, params).to_dense()
    basis = enumerate_full_basis(torus3x4, 2)
    for shift in [(1, 0), (0, 1), (3, 2)]:
        translation = translation_operator(basis, *shift).toarray()
        np.testing.assert_allclose(translation @ hamiltonian, hamiltonian @ translation)


@pytest.mark.parametrize("rows, cols, n_pairs", [(1, 6, 2), (1, 7, 3), (3, 4, 2), (3, 3, 2)])
def test_sector_spectra_reassemble_full_spectrum(rows, cols, n_pairs):
    geometry = LatticeGeometry(rows=rows, cols=cols)
    params = ModelParameters(u0=1.0, j_x=0.1, j_y=0.07, n_pairs=n_pairs)
    full = dense_spectrum(build_effective(geometry, params))
    pieces = []
    for k_y in range(rows):
        for k_x in range(cols):
            sector = build_sector_basis(geometry, n_pairs, k_x, k_y)
            if sector.dimension:
                pieces.append(dense_spectrum(build_effective(geometry, params, sector)))
    np.testing.assert_allclose(np.sort(np.concatenate(pieces)), full, atol=1e-12)


@pytest.mark.parametrize("rows, cols", [(1, 5), (3, 4), (2, 3)])
def test_single_pair_sectors_are_band_energies(rows, cols):
    geometry = LatticeGeometry(rows=rows, cols=cols)
    params = ModelParameters(u0=1.0, j_x=0.1, j_y=0.05, n_pairs=1)
    for level in single_pair_spectrum(geometry, params):
        sector = build_sector_basis(geometry, 1, *level.momentum)
        matrix = build_effective(geometry, params, sector).to_dense()
        assert matrix.shape == (1, 1)
        assert matrix[0, 0] == pytest.approx(level.energy, abs=1e-14)


def test_basis_mismatch_rejected(ring4, params):
    with pytest.raises(BasisMismatchError):
        build_effective(ring4, params, enumerate_full_basis(ring4, 1))
    with pytest.raises(BasisMismatchError):
        build_effective(LatticeGeometry.ring(5), params, enumerate_full_basis(ring4, 2))


def test_fermion_signs():
    configs = np.array([[0, 1, 3], [0, 1, 3]])
    signs = fermion_signs(configs, start=np.array([0, 3]), end=np.array([2, 2]))
    np.testing.assert_array_equal(signs, [-1.0, 1.0])


def test_full_model_dimension_and_limit(ring4, params):
    hamiltonian = build_full(ring4, params)
    assert hamiltonian.dimension == binomial(4, 2) ** 2
    assert hamiltonian.label == "full"
    assert hamiltonian.is_hermitian()
    with pytest.raises(SizeLimitError):
        build_full(ring4, params, limit=10)


def test_full_model_matches_effective_at_strong_coupling():
    geometry = LatticeGeometry.ring(5)
    j, u0 = 1.0, 100.0
    params = ModelParameters(u0=u0, j_x=j, n_pairs=1)
    solver = LanczosSolver()
    e_full = solver.ground_state(build_full(geometry, params)).eigenvalue
    e_eff = solver.ground_state(build_effective(geometry, params)).eigenvalue
    assert abs(e_full - e_eff) < 10 * j**4 / u0**3


def test_full_model_is_independent_of_tunneling_sign():
    geometry = LatticeGeometry.ring(6)
    params = ModelParameters(u0=20.0, j_x=1.0, n_pairs=2)
    solver = LanczosSolver()
    original = solver.ground_state(build_full(geometry, params)).eigenvalue
    flipped = solver.ground_state(build_full(geometry, params.flipped())).eigenvalue
    assert original == pytest.approx(flipped, abs=1e-10)


@pytest.mark.parametrize("length", [4, 6, 8])
@pytest.mark.parametrize("n_pairs", [1, 2])
def test_heisenberg_image_spectrum(length, n_pairs):
    geometry = LatticeGeometry.ring(length)
    params = ModelParameters(u0=1.0, j_x=0.3, n_pairs=n_pairs)
    effective = build_effective(geometry, params)
    image = heisenberg_image(geometry, params)
    np.testing.assert_allclose(dense_spectrum(effective), dense_spectrum(image), atol=1e-12)

    rotation = sublattice_rotation(effective.basis)
    rotated = (rotation @ effective.matrix @ rotation).toarray()
    np.testing.assert_allclose(rotated, image.to_dense(), atol=1e-13)


def test_heisenberg_requires_even_ring(params):
    with pytest.raises(ValueError):
        heisenberg_image(LatticeGeometry.ring(5), params)
    with pytest.raises(ValueError):
        heisenberg_image(LatticeGeometry(rows=2, cols=4), params)


def test_spin_sector_allows_empty_sector():
    geometry = LatticeGeometry.ring(4)
    assert spin_sector_basis(geometry, 0).dimension == 1
    assert total_magnetization(geometry, 2) == 0
    assert total_magnetization(geometry, 0) == -4


def test_filled_lattice_has_only_the_diagonal():
    geometry = LatticeGeometry(rows=2, cols=3)
    params = ModelParameters(u0=1.0, j_x=0.1, n_pairs=6)
    for basis in (None, build_sector_basis(geometry, 6)):
        hamiltonian = build_effective(geometry, params, basis)
        # ボンド項は -N ΣV と打ち消し合い -N U0 だけが残る
        np.testing.assert_allclose(hamiltonian.to_dense(), [[-6.0]], atol=1e-14)


def test_two_site_full_model():
    params = ModelParameters(u0=1.0, j_x=0.1, n_pairs=1)
    hamiltonian = build_full(LatticeGeometry.ring(2), params)
    expected = np.array(
        [
            [-1.0, 0.1, 0.1, 0.0],
            [0.1, 0.0, 0.0, 0.1],
            [0.1, 0.0, 0.0, 0.1],
            [0.0, 0.1, 0.1, -1.0],
        ]
    )
    np.testing.assert_allclose(hamiltonian.to_dense(), expected, atol=1e-14)
    paired = hamiltonian.basis.paired_indices()
    np.testing.assert_array_equal(paired, [0, 3])
    np.testing.assert_allclose(hamiltonian.diagonal()[paired], -params.u0)


def test_empty_spin_sector_has_zero_energy():
    params = ModelParameters(u0=1.0, j_x=0.1, n_pairs=0)
    image = heisenberg_image(LatticeGeometry.ring(4), params)
    np.testing.assert_allclose(image.to_dense(), [[0.0]], atol=1e-15)


def test_two_site_heisenberg_image():
    geometry = LatticeGeometry.ring(2)
    params = ModelParameters(u0=1.0, j_x=0.1, n_pairs=1)
    v = params.v_x
    image = heisenberg_image(geometry, params)
    np.testing.assert_allclose(
        image.to_dense(), [[-1.0 - v, v], [v, -1.0 - v]], atol=1e-15
    )
    np.testing.assert_allclose(dense_spectrum(image), [-1.0 - 2 * v, -1.0], atol=1e-15)
    np.testing.assert_allclose(
        dense_spectrum(build_effective(geometry, params)), dense_spectrum(image), atol=1e-15
    )
