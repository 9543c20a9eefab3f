import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixsmooth import dyadic_systems as dyadic
from mixsmooth.dyadic_systems import (DyadicSystem1D, IsotropicCubeSystem, MixedSystem, SmoothCutoff1D,
                              make_cutoff_1d, phi, phi_fattened, phi_tensor, psi, psi0)

freq = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)


def test_cutoff_fixed_points():
    c = make_cutoff_1d()
    assert c(0.0) == 1.0
    assert c(1.0) == 1.0
    assert c(2.0) == 0.0
    assert c(1.5) == 0.0
    assert 0 < c(1.25) < 1


def test_cutoff_fields():
    c = make_cutoff_1d()
    assert isinstance(c, SmoothCutoff1D)
    assert (c.plateau_radius, c.support_radius) == (1.0, 1.5)


@given(freq)
def test_cutoff_even_and_bounded(x):
    c = make_cutoff_1d()
    assert c(x) == c(-x)
    assert 0.0 <= c(x) <= 1.0


def test_cutoff_strictly_decreasing_on_transition():
    # near the ends exp(-1/s) underflows, so strictness is checked inside
    xs = np.linspace(1.05, 1.45, 2001)
    vals = make_cutoff_1d()(xs)
    assert np.all(np.diff(vals) < 0)
    edge = make_cutoff_1d()(np.linspace(1.0, 1.5, 2001)[1:-1])
    assert np.all(np.diff(edge) <= 0)
    assert np.all((edge >= 0) & (edge <= 1))


def test_smooth_step_limits():
    s = np.array([-1.0, 0.0, 0.5, 1.0, 2.0])
    np.testing.assert_allclose(dyadic.smooth_step(s), [0, 0, 0.5, 1, 1])


@pytest.mark.parametrize("j, xi, expected", [
    (1, 1.75, 1.0),
    (2, 1.0, 0.0),
    (0, 0.0, 1.0),
    (3, 6.0, 1.0),
    (3, 8.0, 1.0),
    (3, 13.0, 0.0),
])
def test_phi_values(j, xi, expected):
    assert phi(j, xi) == expected


@pytest.mark.parametrize("j", [1, 2, 5, 10])
def test_phi_plateau_and_support(j):
    xi = np.linspace(0.75 * 2**j, 2**j, 101)
    assert np.all(phi(j, xi) == 1.0)
    outside = np.concatenate([np.linspace(0, 2 ** (j - 1), 50), np.linspace(3 * 2 ** (j - 1), 4 * 2**j, 50)])
    assert np.all(phi(j, outside) == 0.0)


def test_phi_negative_level_is_zero():
    assert np.all(phi(-1, np.linspace(-3, 3, 7)) == 0)


def test_telescoping_five_levels():
    rng = np.random.default_rng(0)
    xi = rng.uniform(-100, 100, 1000)
    total = sum(phi(j, xi) for j in range(6))
    np.testing.assert_allclose(total, phi(0, xi / 32), atol=1e-12, rtol=0)


@settings(max_examples=50)
@given(st.floats(min_value=-5e5, max_value=5e5, allow_nan=False), st.integers(0, 20))
def test_partition_of_unity_property(xi, J):
    assert abs(DyadicSystem1D().partial_sum(J, xi) - phi(0, xi / 2.0**J)) <= 1e-12


@given(freq)
def test_at_most_two_levels_overlap(xi):
    active = [j for j in range(25) if phi(j, xi) > 0]
    assert 1 <= len(active) <= 2
    if len(active) == 2:
        assert active[1] - active[0] == 1


def test_support_discipline():
    xi = np.random.default_rng(1).uniform(-2000, 2000, 5000)
    for j, k in itertools.product(range(12), repeat=2):
        if abs(j - k) >= 2:
            assert np.all(phi(j, xi) * phi(k, xi) == 0)


@pytest.mark.parametrize("x, expected", [
    ((0.5, 0.5), 1.0),
    ((0.5, 0.5, 0.5), 1.0),
])
def test_psi0_plateau(x, expected):
    assert psi(0, np.array(x)) == expected


def test_psi_examples():
    assert psi(1, np.array([1.75, 0.0, 0.0])) == 1.0
    assert psi(1, np.array([4.0, 0.0])) == 0.0
    assert psi(1, np.array([0.3, -4.0, 1.0])) == 0.0


@pytest.mark.parametrize("j", [1, 2, 4])
def test_psi_plateau_shell(j):
    rng = np.random.default_rng(j)
    x = rng.uniform(-(2.0**j), 2.0**j, (4000, 2))
    sup = np.abs(x).max(axis=1)
    shell = sup >= 0.75 * 2**j
    assert np.all(psi(j, x[shell]) == 1.0)
    inner = sup <= 2 ** (j - 1)
    assert np.all(psi(j, x[inner]) == 0.0)


def test_cube_system_rejects_wrong_dimension():
    with pytest.raises(ValueError):
        IsotropicCubeSystem(3).psi0(np.zeros(2))


@pytest.mark.parametrize("k, x, expected", [
    ((0, 0), (0.0, 0.0), 1.0),
    ((1, 0), (1.75, 0.0), 1.0),
    ((2, 2), (1.0, 5.0), 0.0),
])
def test_phi_tensor_examples(k, x, expected):
    assert phi_tensor(k, np.array(x)) == expected


@given(st.lists(st.integers(0, 8), min_size=2, max_size=3),
       st.lists(st.floats(-600, 600, allow_nan=False), min_size=3, max_size=3))
def test_phi_tensor_factorizes(k, x):
    x = np.array(x[: len(k)])
    assert phi_tensor(k, x) == np.prod([phi(ki, xi) for ki, xi in zip(k, x)])


@pytest.mark.parametrize("d", [2, 3])
def test_tensor_telescoping(d):
    rng = np.random.default_rng(d)
    x = rng.uniform(-40, 40, (500, d))
    J = 4
    total = sum(phi_tensor(k, x) for k in itertools.product(range(J + 1), repeat=d))
    np.testing.assert_allclose(total, psi0(x / 2**J), atol=1e-12, rtol=0)


def test_mixed_system_checks_dimension():
    with pytest.raises(ValueError):
        MixedSystem(2)((1, 1, 1), np.zeros(3))


def test_fattened_is_one_on_support():
    xi = np.random.default_rng(3).uniform(-4, 4, 1000)
    on = phi(1, xi) > 0
    assert on.sum() > 100
    np.testing.assert_allclose(phi_fattened(1, xi[on]), 1.0, atol=1e-15)


@pytest.mark.parametrize("j, xi, expected", [(0, 0.0, 1.0), (3, 100.0, 0.0)])
def test_fattened_examples(j, xi, expected):
    assert phi_fattened(j, xi) == expected


@pytest.mark.parametrize("j", [0, 2, 7])
def test_fattened_one_on_support_all_levels(j):
    xi = np.linspace(-3 * 2.0**j, 3 * 2.0**j, 4001)
    on = phi(j, xi) > 0
    np.testing.assert_allclose(phi_fattened(j, xi[on]), 1.0, atol=1e-15)


def test_overlap_sets_between_cube_and_tensor_systems():
    # on a lattice, psi_j and phi_k overlap only if max(k) - 1 <= j <= max(k) + 1
    w = np.linspace(-50, 50, 161)
    X = np.stack(np.meshgrid(w, w, indexing="ij"), axis=-1)
    for j in range(6):
        pj = psi(j, X) > 0
        for k in itertools.product(range(7), repeat=2):
            if np.any(pj & (phi_tensor(k, X) > 0)):
                assert max(k) - 1 <= j <= max(k) + 1
