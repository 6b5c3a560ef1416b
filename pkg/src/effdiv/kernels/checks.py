"""Invariant suite and numeric division tables used by the CLI."""

from __future__ import annotations

import numpy as np

from ..groebner import groebner_basis, normal_form
from ..poly import PolyError, RatPoly, homogenize
from .forms import Form, Layout
from .hefer import check_identity, hefer_decompose, tau_substitute, tau_target
from .hypersurface import conic_charts, division_eval_hypersurface, da_wedge_omega_identity
from .quadrature import QuadratureConfig
from .represent import fubini_study_integral, represent_pn
from .weights import ChartPoint, alpha_parts, b_parts, delta_eta, gamma_forms, zeta_contract


def random_points(rng, count: int, D: int) -> np.ndarray:
    return rng.normal(size=(count, D)) + 1j * rng.normal(size=(count, D))


def dbar_fd(fn, zeta: np.ndarray, layout: Layout, h: float = 1e-3) -> Form:
    """dbar of a zeta-dependent form by fourth-order central differences."""
    stencil = ((2, -1.0), (1, 8.0), (-1, -8.0), (-2, 1.0))
    out = Form.zero(layout)
    for k in range(layout.D):
        def at(dx):
            zz = zeta.copy()
            zz[:, k] += dx
            return fn(zz)
        fx = [at(s * h) for s, _ in stencil]
        fy = [at(1j * s * h) for s, _ in stencil]
        keys = set()
        for f in fx + fy:
            keys.update(f.terms)
        terms = {}
        for t in keys:
            dx = sum(w * f.coeff(t) for (_, w), f in zip(stencil, fx)) / (12 * h)
            dy = sum(w * f.coeff(t) for (_, w), f in zip(stencil, fy)) / (12 * h)
            terms[t] = (dx + 1j * dy) / 2
        out = out + Form.one_form(layout, {layout.dzb(k): 1.0}).wedge(Form(layout, terms))
    return out


def _item(name, value, tol):
    value = float(value)
    return {"name": name, "value": value, "tol": tol, "pass": bool(value <= tol)}


def run_suite(pf=None, seed: int = 0, cfg: QuadratureConfig | None = None) -> list[dict]:
    rng = np.random.default_rng(seed)
    report = []
    L = Layout(3)
    z = random_points(rng, 1, 3)[0]
    ze = random_points(rng, 100, 3)

    b, _ = b_parts(z, ze, L)
    report.append(_item("delta_eta b = 1", np.max(np.abs(delta_eta(b, z).scalar_part() - 1)), 1e-12))

    a11 = alpha_parts(z, ze[:10], L)[1]
    lhs = delta_eta(a11, z)
    rhs = dbar_fd(lambda zz: alpha_parts(z, zz, L)[0], ze[:10].copy(), L)
    report.append(_item("delta_eta alpha11 = dbar alpha00", (Form(L, lhs.terms) - rhs).max_abs(), 1e-6))

    g = gamma_forms(ze, L)
    report.append(_item("zeta contraction of gamma_j", max(zeta_contract(x, ze).max_abs() for x in g), 1e-12))

    fs = fubini_study_integral(QuadratureConfig(tol=1e-10))
    report.append(_item("Fubini-Study mass of P^1", abs(fs.value - 1), 1e-8))

    ring2 = ("z0", "z1")
    phi = RatPoly(ring2, {(2, 1): 1, (0, 3): -2, (1, 2): 3})
    zp = ChartPoint((1.0, complex(*rng.normal(size=2))), 0)
    rep = represent_pn(phi, zp, cfg=cfg or QuadratureConfig(tol=1e-8))
    report.append(_item("represent_pn on P^1", abs(rep.value - phi.eval_numeric(zp.coords)), 1e-5))

    polys = []
    if pf is not None and pf.F:
        try:
            d = max(int(f.total_degree()) for f in pf.F)
            polys = [homogenize(f, d, "w_") for f in pf.F]
        except PolyError:
            polys = []
    if not polys:
        ring3 = ("a", "b", "c")
        polys = [RatPoly(ring3, {(1, 0, 1): 1, (0, 2, 0): -1}), RatPoly(ring3, {(3, 0, 0): 1, (0, 1, 2): 2})]
    worst_exact = True
    worst_tau = 0.0
    for P in polys:
        for sign in ("w_minus_z", "z_minus_w"):
            h = hefer_decompose(P, sign)
            worst_exact &= check_identity(h)
            Dp = h.D
            zz = random_points(rng, 1, Dp)[0]
            pts = random_points(rng, 5, Dp)
            lay = Layout(Dp)
            lhs = Form(lay, delta_eta(tau_substitute(h, zz, pts, lay), zz).terms)
            lhs = lhs - dbar_fd(lambda q: Form(lay, tau_substitute(h, zz, q, lay).terms), pts.copy(), lay)
            rhs = Form(lay, tau_target(h, zz, pts, lay).terms)
            scale = max(1.0, rhs.max_abs())
            worst_tau = max(worst_tau, (lhs + rhs).max_abs() / scale)
    report.append({"name": "Hefer identity (exact)", "value": 0.0 if worst_exact else 1.0, "tol": 0.0,
                   "pass": bool(worst_exact)})
    report.append(_item("nabla_eta tau*h = -tau*(delta_{w-z} h)", worst_tau, 1e-6))

    a = RatPoly(("z0", "z1", "z2"), {(1, 0, 1): 1, (0, 2, 0): -1})
    if pf is not None and len(pf.variety) == 1 and len(pf.ring) >= 3 and pf.variety[0].is_homogeneous():
        a = pf.variety[0]
    pts = random_points(rng, 20, len(a.ring))
    lhs, exp = da_wedge_omega_identity(a, pts)
    report.append(_item("Da ^ omega' = delta_A(Da) Omega", (lhs - exp).max_abs(), 1e-9))
    return report


def _is_standard_conic(a: RatPoly) -> bool:
    if len(a.ring) != 3 or not a.terms:
        return False
    ref = {(1, 0, 1): 1, (0, 2, 0): -1}
    c = a.terms.get((1, 0, 1))
    return bool(c) and a.terms == {m: v * c for m, v in ref.items()}


def kernel_divide_table(pf, seed: int = 0, cfg: QuadratureConfig | None = None, samples: int = 5,
                        rho: int | None = None) -> list[dict]:
    """q(z) from the hypersurface division formula at random points of the conic."""
    from ..cli import InputError

    if len(pf.variety) != 1 or not _is_standard_conic(pf.variety[0]):
        raise InputError("kernel-divide supports the conic z0*z2 - z1^2 (three homogeneous variables)")
    a = pf.variety[0]
    F = list(pf.F)
    if not F or not all(f.is_homogeneous() for f in F) or len({f.total_degree() for f in F}) != 1:
        raise InputError("F must be homogeneous of one common degree")
    phi = pf.phi
    if phi is None:
        if rho is None:
            raise InputError("give phi or option rho")
        phi = RatPoly.var(a.ring, a.ring[0]) ** rho
    if not phi.is_homogeneous():
        raise InputError("phi must be homogeneous")
    rho = int(phi.total_degree()) if rho is None else rho
    if not phi.is_zero() and phi.total_degree() != rho:
        raise InputError("deg phi must equal rho")
    gb = groebner_basis(F + [a])
    lms = [g.leading_monomial(gb.order) for g in gb.generators]
    no_common_zero = gb.is_unit_ideal() or all(any(m[i] > 0 and sum(m) == m[i] for m in lms) for i in range(3))
    if not no_common_zero and not (len(F) == 1 and normal_form(phi, gb).is_zero()):
        raise InputError("F has common zeros on X (only exact quotients with m = 1 are allowed then)")
    rng = np.random.default_rng(seed)
    cfg = cfg or QuadratureConfig(tol=1e-8)
    rows = []
    for _ in range(samples):
        t = complex(*(rng.uniform(-1.5, 1.5, size=2)))
        zv = (1.0, t, t * t)
        q, res = division_eval_hypersurface(F, phi, a, ChartPoint(zv, 0), rho, conic_charts(), cfg)
        fz = np.array([f.eval_numeric(zv) for f in F])
        resid = abs(fz @ q - phi.eval_numeric(zv))
        rows.append({"t": [t.real, t.imag], "q": [[complex(x).real, complex(x).imag] for x in q],
                     "residual": float(resid), "error": res.error, "depth": res.depth})
    return rows
