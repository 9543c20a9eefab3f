import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixsmooth.acceptance import CLASSIFIER_FIXTURES
from mixsmooth.embedlab import (RESULTS, Claim, Status, classify_F_into_SF, classify_SF_into_F,
                                corpus_grid, fit_slope, necessary_conditions, random_bandlimited,
                                random_corpus_check, ratio_scan, verdict_for_pair)
from mixsmooth.grid import Grid, NyquistError
from mixsmooth.quasinorms import SpaceParams as S

Y, N, O = Status.YES, Status.NO, Status.OPEN

ts = st.sampled_from([-2, -1, -0.5, 0, 0.25, 0.5, 1, 1.5, 3]) | st.floats(-4, 4)
ps = st.sampled_from([0.25, 0.5, 1, 1.5, 2, 4]) | st.floats(0.05, 20)
qs = st.sampled_from([0.5, 1, 2, 3, math.inf]) | st.floats(0.05, 20)
ds = st.integers(2, 6)


def classify(comparison, t, p, q, d):
    return (classify_SF_into_F if comparison == "SF-F" else classify_F_into_SF)(t, p, q, d)


@pytest.mark.parametrize("comparison, t, p, q, d, fwd, rev", CLASSIFIER_FIXTURES)
def test_classifier_fixtures(comparison, t, p, q, d, fwd, rev):
    v = classify(comparison, t, p, q, d)
    assert (v.forward.status, v.reverse.status) == (fwd, rev)


def test_single_point_rendering():
    v = classify_SF_into_F(1, 2, 3, 2)
    assert str(v.forward) == "Yes [SF-F-sufficient]"
    assert str(v.reverse) == "Open"
    assert v.notes == [f"SF-F-sufficient: {RESULTS['SF-F-sufficient']}"]
    assert v.as_dict()["forward"] == "Yes"


@pytest.mark.parametrize("args", [(0, 2, 2, 1), (0, 2, 2, 2.5), (0, math.inf, 2, 2), (0, 0, 2, 2),
                                  (0, 2, 0, 2), (math.nan, 2, 2, 2)])
def test_invalid_inputs(args):
    for fn in (classify_SF_into_F, classify_F_into_SF):
        with pytest.raises(ValueError):
            fn(*args)


def test_dimension_one_message():
    with pytest.raises(ValueError, match="requires d >= 2"):
        classify_SF_into_F(0, 2, 2, 1)


@settings(max_examples=300)
@given(ts, ps, qs, ds)
def test_classifier_is_total(t, p, q, d):
    for fn in (classify_SF_into_F, classify_F_into_SF):
        v = fn(t, p, q, d)
        for c in (v.forward, v.reverse):
            assert isinstance(c, Claim) and c.status in (Y, N, O)
            assert (c.tag is None) == (c.status == O)
            assert c.tag is None or c.tag in RESULTS


@settings(max_examples=200)
@given(ps, qs, ds)
def test_zero_smoothness_cross_links(p, q, d):
    a, b = classify_SF_into_F(0, p, q, d), classify_F_into_SF(0, p, q, d)
    assert a.reverse == b.forward
    assert b.reverse == a.forward


@settings(max_examples=200)
@given(ts, ps, qs)
def test_verdict_independent_of_dimension(t, p, q):
    base = classify_SF_into_F(t, p, q, 2), classify_F_into_SF(t, p, q, 2)
    for d in (3, 5):
        other = classify_SF_into_F(t, p, q, d), classify_F_into_SF(t, p, q, d)
        assert [(v.forward, v.reverse) for v in base] == [(v.forward, v.reverse) for v in other]


@settings(max_examples=300)
@given(ts, ps, qs, ds)
def test_positive_verdicts_respect_necessary_conditions(t, p, q, d):
    # every Yes must pass the family-derived necessary conditions
    cases = [
        (classify_SF_into_F(t, p, q, d).forward, S("mixed", "F", t, p, q, d), S("iso", "F", t, p, q, d)),
        (classify_SF_into_F(t, p, q, d).reverse, S("iso", "F", t, p, q, d), S("mixed", "F", t, p, q, d)),
        (classify_F_into_SF(t, p, q, d).forward, S("iso", "F", d * t, p, q, d), S("mixed", "F", t, p, q, d)),
        (classify_F_into_SF(t, p, q, d).reverse, S("mixed", "F", t, p, q, d), S("iso", "F", d * t, p, q, d)),
    ]
    for claim, src, dst in cases:
        if claim.status == Y:
            assert all(c.satisfied for c in necessary_conditions(src, dst))


@settings(max_examples=200)
@given(ps, qs, st.floats(-3, 3), st.floats(0.01, 3))
def test_mixed_to_iso_needs_differential_dimension(p, q, t0, gap):
    # raising the target smoothness above the source is excluded by ex2
    src, dst = S("mixed", "F", t0, p, q, 2), S("iso", "F", t0 + gap, p, q, 2)
    cond = {c.name: c for c in necessary_conditions(src, dst)}
    assert not cond["differential-dimension"].satisfied
    assert cond["differential-dimension"].witness == "ex2"
    claim = verdict_for_pair(src, dst)
    assert claim is None or claim.status != Y


def test_necessary_conditions_examples():
    conds = necessary_conditions(S("iso", "F", 1, 3, 2, 2), S("mixed", "F", 1, 2, 1, 2))
    names = {c.name: (c.satisfied, c.witness) for c in conds}
    assert names == {"p-ordering": (False, "ex6"), "differential-dimension": (False, "ex3")}
    conds = necessary_conditions(S("iso", "F", 2, 2, 4, 2), S("mixed", "F", 1, 2, 2, 2))
    assert {c.name: (c.satisfied, c.witness) for c in conds}["q-ordering"] == (False, "ex5")
    conds = necessary_conditions(S("mixed", "F", 1, 2, 4, 2), S("iso", "F", 1, 2, 2, 2))
    assert {c.name: (c.satisfied, c.witness) for c in conds}["q-ordering"] == (False, "ex4")


def test_necessary_conditions_direction_checked():
    src, dst = S("mixed", "F", 1, 2, 2, 2), S("iso", "F", 1, 2, 2, 2)
    assert necessary_conditions(src, dst, "mixed->iso")
    with pytest.raises(ValueError, match="direction"):
        necessary_conditions(src, dst, "iso->mixed")
    with pytest.raises(ValueError):
        necessary_conditions(src, S("iso", "F", 1, 2, 2, 3))


def test_verdict_for_pair():
    assert verdict_for_pair(S("mixed", "F", 1, 2, 2, 2), S("iso", "F", 1, 2, 2, 2)).tag == "SF-F-sufficient"
    assert verdict_for_pair(S("iso", "F", 2, 2, 2, 2), S("mixed", "F", 1, 2, 2, 2)).tag == "Ftd-SF-sufficient"
    assert verdict_for_pair(S("mixed", "F", -1, 2, 2, 2), S("iso", "F", -2, 2, 2, 2)).tag == "SF-Ftd-negative-t"
    assert verdict_for_pair(S("mixed", "B", 1, 2, 2, 2), S("iso", "B", 1, 2, 2, 2)) is None
    assert verdict_for_pair(S("mixed", "F", 1, 2, 2, 2), S("iso", "F", 1, 2, 3, 2)) is None


# --------------------------------------------------------------------------
# scans


def test_fit_slope_exact_line():
    slope, err, resid = fit_slope([1, 2, 3, 4], [1, 3, 5, 7])
    assert slope == pytest.approx(2.0)
    assert err == pytest.approx(0.0, abs=1e-12) and resid == pytest.approx(0.0, abs=1e-12)


def test_fit_slope_needs_three_points():
    with pytest.raises(ValueError, match="at least 3"):
        fit_slope([1, 2], [0, 1])
    with pytest.raises(ValueError, match="at least 3"):
        ratio_scan("ex5", S("iso", "F", 2, 2, 2, 2), S("mixed", "F", 1, 2, 2, 2), [1, 2])


def test_scan_ex5_exact_growth():
    r = ratio_scan("ex5", S("iso", "F", 0, 2, 2, 2), S("mixed", "F", 1, 2, 2, 2), [1, 2, 3, 4], coeffs="delta")
    np.testing.assert_allclose(r.ratios, [4, 16, 64, 256], rtol=1e-10)
    assert r.slope == pytest.approx(2.0)
    assert r.verdict is None and r.consistent is None and r.witnesses_failure


def test_scan_ex1_witnesses_q_necessity():
    r = ratio_scan("ex1", S("mixed", "F", 0, 2, 4, 2), S("iso", "F", 0, 2, 4, 2), [1, 2, 3, 4])
    assert r.slope == pytest.approx(0.25, abs=0.01)
    assert r.predicted_slope == pytest.approx(0.25, abs=1e-9)
    assert r.verdict.status == N and r.consistent and r.witnesses_failure


def test_scan_ex1_bounded_when_embedding_holds():
    r = ratio_scan("ex1", S("mixed", "F", 0, 2, 2, 2), S("iso", "F", 0, 2, 2, 2), [1, 2, 3, 4],
                   coeffs=lambda l: [1j] * l)
    assert r.verdict.status == Y and r.consistent and not r.witnesses_failure
    assert r.coeffs == "custom"


@pytest.mark.parametrize("p", [1, 2, 4])
def test_scan_ex2_ratio_constant(p):
    r = ratio_scan("ex2", S("mixed", "F", 1, p, 2, 2), S("iso", "F", 1, p, 2, 2), [1, 2, 3])
    np.testing.assert_allclose(r.ratios, 1.0, rtol=0.02)
    assert abs(r.slope) < 0.05


def test_scan_report_dict():
    r = ratio_scan("ex5", S("iso", "F", 2, 2, 2, 2), S("mixed", "F", 1, 2, 2, 2), [1, 2, 3], coeffs="delta")
    out = r.as_dict()
    assert out["verdict"] == "Yes [Ftd-SF-sufficient]"
    assert out["src"] == "F^2_{2,2}" and len(out["rows"]) == 3
    assert r.scales == [1, 2, 3]


def test_scan_rejects_unknown_rule_and_oversized_grid():
    with pytest.raises(ValueError, match="coefficient rule"):
        ratio_scan("ex5", S("iso", "F", 2, 2, 2, 2), S("mixed", "F", 1, 2, 2, 2), [1, 2, 3], coeffs="zig")
    with pytest.raises(NyquistError, match="budget"):
        ratio_scan("ex1", S("mixed", "F", 0, 2, 4, 2), S("iso", "F", 0, 2, 4, 2), [2, 4, 16])


# --------------------------------------------------------------------------
# random corpora


def test_random_bandlimited_levels():
    g = Grid.from_spacing(2, 64, 1 / 2)
    f = random_bandlimited(g, np.random.default_rng(0))
    w0, w1 = g.frequency_mesh()
    sup = np.maximum(np.abs(w0), np.abs(w1))
    c = np.abs(f.spectrum)
    assert c[sup <= 1].max() == 0
    assert c[sup > 2.0 ** (g.nyquist_levels[0] - 1)].max() == 0
    with pytest.raises(NyquistError):
        random_bandlimited(Grid.from_spacing(2, 4, 1.0), np.random.default_rng(0))


def test_corpus_deterministic_and_finite():
    src, dst = S("mixed", "F", 1, 2, 2, 2), S("iso", "F", 1, 2, 2, 2)
    g = Grid.from_spacing(2, 32, 1 / 2)
    a = random_corpus_check(src, dst, 6, seed=3, grid=g)
    b = random_corpus_check(src, dst, 6, seed=3, grid=g)
    np.testing.assert_array_equal(a.ratios, b.ratios)
    assert a.finite and a.max_ratio >= a.median_ratio > 0
    assert a.as_dict()["verdict"] == "Yes [SF-F-sufficient]"


def test_corpus_rejects_unclassified_pairs():
    with pytest.raises(ValueError, match="not a classified embedding"):
        random_corpus_check(S("mixed", "F", 0, 2, 3, 2), S("iso", "F", 0, 2, 3, 2), 3, seed=0)


def test_corpus_grid_sizes():
    assert corpus_grid(2).n == (128, 128)
    assert corpus_grid(3).n == (32, 32, 32)


def test_scan_ex5_same_smoothness_doubles_per_level():
    r = ratio_scan("ex5", S("iso", "F", 1, 2, 2, 2), S("mixed", "F", 1, 2, 2, 2), [1, 2, 3, 4], coeffs="delta")
    np.testing.assert_allclose(r.ratios, [2, 4, 8, 16], rtol=1e-10)
    assert r.slope == pytest.approx(1.0, abs=0.05)
    assert r.predicted_slope == pytest.approx(1.0, abs=1e-9)
