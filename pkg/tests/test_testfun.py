import math

import numpy as np
import pytest

from mixsmooth.grid import Grid, NyquistError, lp_norm
from mixsmooth.quasinorms import SpaceParams, norm
from mixsmooth.testfun import (FAMILIES, Oracle, TestFamily, default_grid, example4, example6,
                               g_function, make_family, rho_lp_norm, spectral_support_ok)


@pytest.mark.parametrize("name, scales", [
    ("ex1", [1, 2, 4]),
    ("ex2", [0, 1, 3]),
    ("ex3", [0, 1, 3]),
    ("ex4", [1, 3]),
    ("ex5", [1, 3]),
    ("ex6", [0, 2]),
])
def test_spectral_support(name, scales):
    for l in scales:
        assert spectral_support_ok(make_family(name, l, 2))


@pytest.mark.parametrize("name", ["ex1", "ex4", "ex5"])
def test_spectral_support_three_dimensions(name):
    assert spectral_support_ok(make_family(name, 2, 3))


def test_families_are_listed():
    assert FAMILIES == ("ex1", "ex2", "ex3", "ex4", "ex5", "ex6")
    with pytest.raises(ValueError, match="unknown family"):
        make_family("ex7", 1, 2, grid=Grid.make(2, 8, 1.0))


@pytest.mark.parametrize("name, l", [("ex1", 0), ("ex4", 0), ("ex5", 0), ("ex2", -1), ("ex6", -1)])
def test_scale_index_lower_bounds(name, l):
    fam = TestFamily(name, l, 2, Grid.from_spacing(2, 64, 1 / 4))
    with pytest.raises(ValueError):
        fam.generate()


def test_coefficient_count_checked():
    with pytest.raises(ValueError, match="expected 3 coefficients"):
        make_family("ex4", 3, 2, coeffs=[1, 2]).generate()


def test_generate_is_cached():
    fam = make_family("ex5", 2, 2)
    assert fam.generate() is fam.generate()


# --------------------------------------------------------------------------
# oracles


@pytest.mark.parametrize("scale", ["iso", "mixed"])
@pytest.mark.parametrize("family", ["F", "B"])
@pytest.mark.parametrize("t, p, q", [(1, 2, 2), (0.5, 1, 1), (-1, 3, math.inf), (2, 0.8, 0.5)])
@pytest.mark.parametrize("name", ["ex4", "ex5"])
def test_modulated_sums_match_exact_oracle(name, scale, family, t, p, q):
    fam = make_family(name, 3, 2, coeffs=[1.0, -0.5j, 2.0])
    s = SpaceParams(scale, family, t, p, q, 2)
    o = fam.oracle(s)
    assert o.kind == "exact"
    assert norm(fam.generate(), s) == pytest.approx(o.value, rel=1e-9)


def test_ex5_mixed_weight_is_d_times_t():
    fam = make_family("ex5", 2, 2, coeffs=[0.0, 1.0])
    iso = fam.oracle(SpaceParams("iso", "F", 1, 2, 2, 2)).value
    mixed = fam.oracle(SpaceParams("mixed", "F", 1, 2, 2, 2)).value
    assert mixed / iso == pytest.approx(4.0)


@pytest.mark.parametrize("j", [0, 1, 2])
@pytest.mark.parametrize("t", [0, 1.5, -1])
@pytest.mark.parametrize("p", [1, 2, 3])
def test_dilated_bump_oracle(j, t, p):
    fam = make_family("ex6", j, 2)
    s = SpaceParams("mixed", "F", t, p, 2, 2)
    o = fam.oracle(s)
    assert o.kind == "exact"
    assert norm(fam.generate(), s) == pytest.approx(o.value, rel=1e-2)


def test_dilated_bump_level_zero_is_rho():
    fam = make_family("ex6", 0, 2)
    s = SpaceParams("iso", "F", 1, 2, 2, 2)
    assert norm(fam.generate(), s) == pytest.approx(rho_lp_norm(2, 2), rel=1e-10)


def test_oracle_availability():
    fam = make_family("ex1", 2, 2)
    assert not fam.oracle(SpaceParams("mixed", "F", 1, 2, 2, 2)).available
    assert fam.oracle(SpaceParams("mixed", "F", 0, 2, 2, 2)).kind == "asymptotic"
    assert not fam.oracle(SpaceParams("iso", "F", 0, 1, 2, 2)).available
    assert not make_family("ex6", 1, 2).oracle(SpaceParams("iso", "B", 0, math.inf, 2, 2)).available
    assert Oracle("none").value is None
    with pytest.raises(ValueError):
        fam.oracle(SpaceParams("mixed", "F", 0, 2, 2, 3))


# Level-one member of ex1: both factors sit on the plateau of phi_1, so the mixed
# band (1, 1) and the cube band 1 carry the whole function and the ratio is 2^t.
@pytest.mark.parametrize("t", [0, 1, -0.5, 2])
@pytest.mark.parametrize("p", [1, 2, 3])
def test_ex1_level_one_ratio(t, p):
    f = make_family("ex1", 1, 2).generate()
    mixed = norm(f, SpaceParams("mixed", "F", t, p, 2, 2))
    iso = norm(f, SpaceParams("iso", "F", t, p, 2, 2))
    assert mixed / iso == pytest.approx(2.0**t, rel=1e-12)


@pytest.mark.parametrize("name", ["ex2", "ex3"])
@pytest.mark.parametrize("t, p", [(1, 2), (-1, 1), (0.5, 4)])
def test_level_zero_ratio_is_one(name, t, p):
    f = make_family(name, 0, 2).generate()
    mixed = norm(f, SpaceParams("mixed", "F", t, p, 2, 2))
    iso = norm(f, SpaceParams("iso", "F", t, p, 2, 2))
    assert mixed == pytest.approx(iso, rel=1e-12)


def test_g_function_lattice_norm():
    grid = default_grid("ex4", 2, 2)
    g = g_function(2, grid)
    assert lp_norm(g, 2) > 0
    assert np.abs(g.spectrum).max() > 0


def test_scale_variable():
    assert make_family("ex1", 8, 2).scale_variable() == 3.0
    assert make_family("ex4", 3, 2).scale_variable() == 3.0


# --------------------------------------------------------------------------
# grids


@pytest.mark.parametrize("name, l", [("ex1", 3), ("ex2", 2), ("ex3", 2), ("ex4", 2), ("ex5", 2), ("ex6", 3)])
def test_default_grids_are_powers_of_two(name, l):
    g = default_grid(name, l, 2)
    assert all(n & (n - 1) == 0 for n in g.n)


def test_ex6_too_coarse_grid_raises():
    with pytest.raises(NyquistError):
        example6(0, 2, Grid.from_spacing(2, 4, 1 / 4))
    example6(2, 2, Grid.from_spacing(2, 4, 1 / 4))


def test_modulation_off_lattice_raises():
    with pytest.raises(ValueError, match="lattice"):
        example4(2, None, 2, Grid.make(2, 64, 7.0))


@pytest.mark.parametrize("l", [1, 2, 3])
@pytest.mark.parametrize("t", [-1, 0.5, 1])
def test_ex3_ratio_and_ex2_ratio(l, t):
    # both families sit on band plateaus, so the ratios are exact
    for name, expected in (("ex3", 2.0 ** (t * l)), ("ex2", 1.0)):
        f = make_family(name, l, 2).generate()
        mixed = norm(f, SpaceParams("mixed", "F", t, 2, 2, 2))
        iso = norm(f, SpaceParams("iso", "F", t, 2, 2, 2))
        assert mixed / iso == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("scale", ["iso", "mixed"])
def test_ex4_ex5_coincide_at_zero_smoothness(scale):
    a = [0.3, -1.0, 2j]
    s = SpaceParams(scale, "F", 0, 1.5, 3, 2)
    n4 = norm(make_family("ex4", 3, 2, coeffs=a).generate(), s)
    n5 = norm(make_family("ex5", 3, 2, coeffs=a).generate(), s)
    assert n4 == pytest.approx(n5, rel=1e-10)


@pytest.mark.parametrize("scale", ["iso", "mixed"])
@pytest.mark.parametrize("family", ["F", "B"])
def test_ex6_independent_of_t_and_q(scale, family):
    f = make_family("ex6", 2, 2).generate()
    vals = [norm(f, SpaceParams(scale, family, t, 2, q, 2)) for t in (-1, 1) for q in (1, math.inf)]
    np.testing.assert_allclose(vals, vals[0], rtol=1e-8)
