"""格子形状に対するフィデリティの傾向"""

import pytest

from src.experiments.runners import fidelity_point
from src.model.params import ModelParameters

XI_VALUES = (1, 2, 5, 10, 100)


def scan(rows: int, cols_values, params: ModelParameters) -> dict[int, float]:
    return {
        cols: fidelity_point(rows, cols, params, tolerance=1e-12, seed=1234)["fidelity"]
        for cols in cols_values
    }


@pytest.mark.parametrize("rows", [2, 3, 4])
def test_quasi_one_dimensional_strips_peak_near_square(rows, params):
    values = scan(rows, range(3, 31), params)
    best = max(values, key=values.get)
    assert abs(best - rows) <= 2
    tail = [values[cols] for cols in range(rows + 3, 31)]
    assert all(b < a for a, b in zip(tail, tail[1:]))


def test_strip_maximum_grows_with_width(params):
    maxima = [max(scan(rows, range(3, 10), params).values()) for rows in (2, 3, 4)]
    assert all(b > a for a, b in zip(maxima, maxima[1:]))


def test_isotropic_squares_improve_with_size(params):
    values = [fidelity_point(n, n, params, 1e-12, 1234)["fidelity"] for n in range(4, 21)]
    assert all(b > a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("length", range(4, 21))
def test_anisotropy_lowers_fidelity(length):
    values = []
    for xi in XI_VALUES:
        params = ModelParameters.from_anisotropy(u0=1.0, j_x=0.1, xi=xi, n_pairs=2)
        values.append(fidelity_point(length, length, params, 1e-12, 1234)["fidelity"])
    assert all(b < a for a, b in zip(values, values[1:]))
