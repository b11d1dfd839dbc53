import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmclass import series
from harmclass.errors import DomainError
from harmclass.series import AnalyticSeries, GridSpec, HarmonicMap

coef = st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False)
disk = st.tuples(st.floats(0.0, 1.0), st.floats(0.0, 2 * math.pi)).map(lambda t: t[0] * complex(math.cos(t[1]), math.sin(t[1])))


def test_eval_examples():
    assert series.evaluate(AnalyticSeries.identity(), 0.3) == pytest.approx(0.3, abs=0)
    assert series.evaluate(AnalyticSeries([0, 1, 0.25]), 1.0) == 1.25
    log_series = AnalyticSeries([1.0 / (n + 1) for n in range(65)])
    assert series.evaluate(log_series, 0.5).real == pytest.approx(-math.log(0.5) / 0.5, rel=1e-15)


def test_eval_outside_disk_raises():
    with pytest.raises(DomainError):
        series.evaluate(AnalyticSeries.identity(), 1.01)
    with pytest.raises(DomainError):
        series.evaluate(AnalyticSeries.identity(), np.array([0.1, 2j]))


def test_eval_on_unit_circle_allowed():
    assert series.evaluate(AnalyticSeries([0, 1, 1]), -1.0) == 0.0


def test_differentiate_examples():
    d = series.differentiate(AnalyticSeries([0, 1, 0.25]), 1)
    assert np.array_equal(d.coeffs, [1, 0.5])
    assert np.array_equal(series.differentiate(AnalyticSeries.monomial(3, 1.0), 2).coeffs, [0, 6])
    assert np.array_equal(series.differentiate(AnalyticSeries.identity(), 1).coeffs, [1])


def test_differentiate_rejects_bad_order():
    with pytest.raises(DomainError):
        series.differentiate(AnalyticSeries.identity(4), 3)
    with pytest.raises(DomainError):
        series.differentiate(AnalyticSeries.identity(1), 2)


def test_eval_harmonic_examples(theta01):
    f = HarmonicMap.from_parts(AnalyticSeries([0, 1, 0.3]))
    assert series.eval_harmonic(f, 0.4 + 0.2j) == series.evaluate(f.h, 0.4 + 0.2j)
    assert series.eval_harmonic(theta01, 0j) == 0
    assert series.eval_harmonic(theta01, 0.5) == pytest.approx(0.5, abs=1e-16)


def test_defect_examples(theta01):
    z = 0.7 * np.exp(1j * np.linspace(0, 2 * np.pi, 9))
    assert np.all(series.defect(HarmonicMap.identity(), 0.3, z) == 0)
    assert np.allclose(series.defect(theta01, 0.0, z), 0.7, rtol=0, atol=1e-15)
    alpha, beta = 0.5, 1.2
    f1 = HarmonicMap.from_parts(AnalyticSeries([0, 1, beta / (2 * (1 + alpha))]))
    assert np.allclose(series.defect(f1, alpha, z), beta * 0.7, rtol=0, atol=1e-15)


def test_defect_requires_open_disk(theta01):
    with pytest.raises(DomainError):
        series.defect(theta01, 0.0, 1.0)


def test_jacobian_examples(theta01):
    assert series.jacobian(theta01, 0j) == 1.0
    assert series.jacobian(theta01, 0.5) == pytest.approx(1.5, abs=1e-15)
    assert series.jacobian(theta01, -0.5) == pytest.approx(0.5, abs=1e-15)


def test_analytic_slice_examples(theta01):
    h_only = HarmonicMap.from_parts(AnalyticSeries([0, 1, 0.2]))
    assert series.analytic_slice(h_only, 1j) == h_only.h
    assert np.array_equal(series.analytic_slice(theta01, 1).coeffs, [0, 1, 0])
    assert np.array_equal(series.analytic_slice(theta01, -1).coeffs, [0, 1, 0.5])
    with pytest.raises(DomainError):
        series.analytic_slice(theta01, 1.1)


def test_hadamard_examples():
    a, b = 0.3, -2.0
    out = series.hadamard(AnalyticSeries([0, 1, a]), AnalyticSeries([0, 1, b]))
    assert np.array_equal(out.coeffs, [0, 1, a * b])
    s = AnalyticSeries([0, 1, 2 + 1j, -3, 0.5])
    assert series.hadamard(s, AnalyticSeries(np.ones(9))) == s
    logc = AnalyticSeries([0] + [1.0 / n for n in range(1, 5)])
    assert np.allclose(series.hadamard(s, logc).coeffs[1:], s.coeffs[1:] / np.arange(1, 5), rtol=1e-15)


def test_hadamard_truncates_to_smaller_degree():
    assert series.hadamard(AnalyticSeries.identity(10), AnalyticSeries.identity(3)).degree == 3


def test_convex_combination_examples(theta01):
    assert series.convex_combination([theta01], [1.0]) == theta01
    assert series.convex_combination([theta01, theta01], [0.5, 0.5]) == theta01
    ident = HarmonicMap.identity(2)
    mix = series.convex_combination([theta01, ident], [0.5, 0.5])
    assert np.array_equal(mix.h.coeffs, [0, 1, 0.125])
    assert np.array_equal(mix.g.coeffs, [0, 0, -0.125])


def test_convex_combination_validates(theta01):
    with pytest.raises(DomainError):
        series.convex_combination([theta01, theta01], [0.7, 0.7])
    with pytest.raises(DomainError):
        series.convex_combination([theta01, theta01], [1.5, -0.5])
    with pytest.raises(DomainError):
        series.convex_combination([theta01, HarmonicMap.identity(5)], [0.5, 0.5])


def test_harmonic_map_invariants():
    with pytest.raises(DomainError):
        HarmonicMap(AnalyticSeries([0, 2, 0]), AnalyticSeries.zero(2))
    with pytest.raises(DomainError):
        HarmonicMap(AnalyticSeries.identity(2), AnalyticSeries([1, 0, 0]))
    with pytest.raises(DomainError):
        HarmonicMap(AnalyticSeries.identity(2), AnalyticSeries.zero(3))
    f = HarmonicMap.from_parts(AnalyticSeries.identity(2), AnalyticSeries([0, 0.5]))
    assert f.degree == 2 and not f.in_h0


def test_grid_spec_validation():
    for radii in [(), (0.5, 0.4), (0.2, 1.0), (0.0, 0.5)]:
        with pytest.raises(DomainError):
            GridSpec(radii)
    with pytest.raises(DomainError):
        GridSpec((0.5,), 4)
    g = GridSpec.default()
    assert g.max_radius == 0.999 and g.points().shape == (11 * 512,)
    assert GridSpec.from_dict(g.to_dict()) == g


def test_json_roundtrip_is_lossless(theta01):
    f = HarmonicMap.from_parts(AnalyticSeries([0, 1, 1 / 3 + 0.1j, math.pi]), AnalyticSeries([0, 0, -1e-300, 2 / 7]))
    text = json.dumps(series.map_to_json(f))
    assert series.map_from_json(json.loads(text)) == f


def test_json_rejects_malformed():
    for bad in [[], "x", [[1, 2, 3]], [["a", 0]], [True]]:
        with pytest.raises(DomainError):
            series.series_from_json(bad)
    with pytest.raises(DomainError):
        series.map_from_json({"g": [[0, 0]]})


@settings(max_examples=60, deadline=None)
@given(st.lists(coef, min_size=2, max_size=20), st.lists(coef, min_size=2, max_size=20), coef, coef,
       st.lists(disk, min_size=1, max_size=8))
def test_linearity(c1, c2, x, y, zs):
    n = max(len(c1), len(c2)) - 1
    s1, s2 = AnalyticSeries(c1).padded(n), AnalyticSeries(c2).padded(n)
    z = np.array(zs)
    lhs = series.evaluate(s1 * x + s2 * y, z)
    rhs = x * series.evaluate(s1, z) + y * series.evaluate(s2, z)
    scale = abs(x) * np.abs(s1.coeffs).sum() + abs(y) * np.abs(s2.coeffs).sum() + 1e-300
    assert np.max(np.abs(lhs - rhs)) <= 1e-12 * scale


@settings(max_examples=60, deadline=None)
@given(st.lists(coef, min_size=2, max_size=16), st.lists(disk, min_size=1, max_size=8))
def test_derivative_matches_central_difference(c, zs):
    s = AnalyticSeries(c)
    z = 0.9 * np.array(zs)
    eps = 1e-5
    fd = (series.evaluate(s, z + eps) - series.evaluate(s, z - eps)) / (2 * eps)
    exact = series.evaluate(series.differentiate(s, 1), z)
    assert np.all(np.abs(fd - exact) <= 1e-6 * np.maximum(np.abs(exact), np.abs(s.coeffs).sum()))


@settings(max_examples=60, deadline=None)
@given(st.lists(coef, min_size=1, max_size=30))
def test_hadamard_with_ones_is_identity(c):
    s = AnalyticSeries(c)
    assert series.hadamard(s, AnalyticSeries(np.ones(s.degree + 1))) == s


@settings(max_examples=60, deadline=None)
@given(st.lists(coef, min_size=1, max_size=10), st.lists(coef, min_size=1, max_size=10),
       st.floats(-0.99, 5.0), st.lists(st.floats(0.0, 0.999), min_size=1, max_size=6),
       st.sampled_from([1, 1j, -1, -1j]))
def test_defect_rotation_invariance_quarter_turns(hc, gc, alpha, radii, lam):
    f = HarmonicMap.from_parts(AnalyticSeries([0, 1] + hc), AnalyticSeries([0, 0] + gc))
    h, g = f.h, f.g
    z = np.array(radii) * np.exp(0.7j)
    base = series.defect(f, alpha, z)
    assert np.array_equal(series.defect(HarmonicMap(h, g * lam), alpha, z), base)


def test_defect_rotation_invariance_generic_lambda(rng):
    from harmclass.sampling import random_member, random_params
    for _ in range(50):
        p = random_params(rng)
        f = random_member(rng, p)
        lam = complex(np.exp(2j * np.pi * rng.uniform()))
        z = 0.999 * np.exp(2j * np.pi * rng.uniform(size=32))
        rotated = series.defect(HarmonicMap(f.h, f.g * lam), p.alpha, z)
        assert np.max(np.abs(rotated - series.defect(f, p.alpha, z))) <= 1e-14 * (1 + p.beta)


@settings(max_examples=60, deadline=None)
@given(st.lists(coef, min_size=1, max_size=10), st.lists(coef, min_size=1, max_size=10))
def test_jacobian_at_origin_is_one(hc, gc):
    f = HarmonicMap.from_parts(AnalyticSeries([0, 1] + hc), AnalyticSeries([0, 0] + gc))
    assert series.jacobian(f, 0j) == 1.0
