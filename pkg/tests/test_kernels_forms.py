"""Exterior algebra on forms and the quadrature rules."""

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from effdiv.kernels.forms import Form, Layout, WeightError, top_coefficient
from effdiv.kernels.quadrature import (
    ConvergenceError,
    QuadratureConfig,
    adaptive,
    disc_rule,
    panel_rule,
    polydisc_rule,
)
from effdiv.kernels.represent import check_top_weight

L = Layout(3, 2)

coeff = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
one_forms = st.dictionaries(st.integers(0, L.size - 1), coeff, min_size=1, max_size=4).map(
    lambda d: Form.one_form(L, d))


def close(a: Form, b: Form, tol=1e-9):
    return (Form(a.layout, a.terms) - Form(b.layout, b.terms)).max_abs() <= tol


def test_layout_ids():
    assert [L.dz(0), L.dzb(0), L.e(0), L.e(1)] == [0, 3, 6, 7]
    assert L.size == 8
    assert [L.kind(g) for g in (2, 3, 6)] == ["dz", "dzb", "e"]
    assert L.bidegree((0, 4, 7)) == (1, 1, 1)


@settings(max_examples=60, deadline=None)
@given(one_forms, one_forms)
def test_wedge_of_one_forms_anticommutes(a, b):
    assert close(a.wedge(b), -b.wedge(a))
    assert a.wedge(a).max_abs() <= 1e-9


@settings(max_examples=60, deadline=None)
@given(one_forms, one_forms, one_forms)
def test_wedge_is_associative(a, b, c):
    assert close(a.wedge(b).wedge(c), a.wedge(b.wedge(c)), 1e-6)


@settings(max_examples=60, deadline=None)
@given(one_forms, one_forms, st.dictionaries(st.integers(0, L.size - 1), coeff, min_size=1, max_size=3))
def test_contraction_is_an_odd_antiderivation(a, b, vec):
    lhs = a.wedge(b).contract(vec)
    rhs = a.contract(vec).wedge(b) - a.wedge(b.contract(vec))
    assert close(lhs, rhs, 1e-6)


def test_basic_signs():
    dz0 = Form.one_form(L, {L.dz(0): 1.0})
    dzb0 = Form.one_form(L, {L.dzb(0): 1.0})
    assert dzb0.wedge(dz0).coeff((L.dz(0), L.dzb(0))) == -1.0
    assert dz0.wedge(dzb0).contract({L.dzb(0): 2.0}).coeff((L.dz(0),)) == -2.0


def test_weights_add_and_mismatch_raises():
    a = Form.scalar(L, 1.0, (1, 0))
    b = Form.scalar(L, 1.0, (0, 2))
    assert a.wedge(b).weight == (1, 2)
    assert a.scale(3.0, (-1, 1)).weight == (0, 1)
    with pytest.raises(WeightError):
        a + b


def test_top_coefficient_sign():
    C = Layout(2)
    # dt1 ^ dtb1 ^ dt2 ^ dtb2 built by wedging in that order
    f = Form.one_form(C, {C.dz(0): 1.0})
    for g in (C.dzb(0), C.dz(1), C.dzb(1)):
        f = f.wedge(Form.one_form(C, {g: 1.0}))
    assert top_coefficient(f, 2) == 1.0


def test_pullback_along_a_curve():
    dz1 = Form.one_form(L, {L.dz(1): 1.0, L.dzb(2): 1.0})
    C = Layout(1)
    pulled = dz1.pullback({1: {0: 2.0}}, C, 1, 0)
    assert pulled.coeff((C.dz(0),)) == 2.0
    both = dz1.wedge(Form.one_form(L, {L.dzb(1): 1.0}))
    pb = both.pullback({1: {0: 2.0j}}, C, 1, 1)
    assert pb.coeff((C.dz(0), C.dzb(0))) == pytest.approx(2.0j * np.conj(2.0j))


def test_check_top_weight():
    check_top_weight(Form.scalar(L, 1.0, (-2, 0)), 2)
    with pytest.raises(WeightError):
        check_top_weight(Form.scalar(L, 1.0, (-1, 0)), 2)


def test_gauss_legendre_panels_are_exact_for_polynomials():
    x, w = panel_rule(3, 8, 0.0, 2.0)
    assert np.sum(w * x**7) == pytest.approx(2**8 / 8, rel=1e-14)


def test_disc_rules_against_closed_forms():
    t, w = disc_rule(4, 8)
    assert np.sum(w) == pytest.approx(np.pi, rel=1e-13)
    assert np.sum(w * np.abs(t) ** 2) == pytest.approx(np.pi / 2, rel=1e-13)
    # int_{|t|<=1} dA / (1 + |t|^2)^2 = pi / 2
    assert np.sum(w / (1 + np.abs(t) ** 2) ** 2) == pytest.approx(np.pi / 2, rel=1e-12)
    assert abs(np.sum(w * t)) < 1e-13
    t2, w2 = polydisc_rule(2, 2, 6)
    assert t2.shape[1] == 2 and np.sum(w2) == pytest.approx(np.pi**2, rel=1e-13)


def test_config_validation_and_json():
    for kw in (dict(depth=0), dict(tol=0), dict(lam=-1), dict(order=0)):
        with pytest.raises(ValueError):
            QuadratureConfig(**kw)
    cfg = QuadratureConfig.from_json('{"depth": 5, "tol": 1e-6, "lambda": 0.5, "charts": "auto"}')
    assert (cfg.depth, cfg.tol, cfg.lam) == (5, 1e-6, 0.5)
    assert QuadratureConfig.from_json(json.loads(json.dumps(cfg.to_json()))) == cfg


def test_adaptive_converges_and_fails():
    res = adaptive(lambda L: 1.0 + 2.0**-(10 * L), QuadratureConfig(tol=1e-8))
    assert res.converged and abs(res.value - 1) < 1e-8
    with pytest.raises(ConvergenceError) as exc:
        adaptive(lambda L: float(L), QuadratureConfig(depth=3))
    assert exc.value.result is not None and not exc.value.result.converged
    res = adaptive(lambda L: float(L), QuadratureConfig(depth=3), raise_on_fail=False)
    assert res.depth == 3 and not res.converged
