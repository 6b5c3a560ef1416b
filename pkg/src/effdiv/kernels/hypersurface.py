"""Representation and division formulas on a smooth hypersurface X = {a = 0}.

The structure form is omega' = delta_A Omega where Omega = sum (-1)^j zeta_j
dzeta_0 ^ .. (j omitted) .. ^ dzeta_N and delta_A is contraction with
2 pi i sum conj(da/dzeta_j) d/dzeta_j / |da|^2.  Integrals over X run over
explicit rational parametrizations (two parameter discs for a rational curve).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..poly import RatPoly
from .forms import Form, Layout, top_coefficient
from .hefer import hefer_decompose, tau_substitute
from .koszul import common_degree, frame_components, koszul_sum
from .quadrature import ConvergenceError, QuadratureConfig, QuadResult, adaptive, polydisc_rule
from .represent import check_top_weight, orientation_factor
from .weights import TWO_PI_I, ChartPoint, KernelError, alpha_parts, alpha_power

SINGULAR_THRESHOLD = 1e-10
ON_X_TOLERANCE = 1e-8

# Overall sign of the hypersurface formulas under the orientation convention
# of represent.orientation_factor (fixed by reproducing known sections).
FORMULA_SIGN = 1


@dataclass(frozen=True)
class CurveParam:
    """A holomorphic map from the closed unit disc into C^{N+1} covering part of X."""

    name: str
    point: Callable  # t (P,) -> zeta (P, D)
    deriv: Callable  # t (P,) -> dzeta/dt (P, D)


def conic_charts() -> list[CurveParam]:
    """The conic zeta_0 zeta_2 = zeta_1^2 as (1, t, t^2), |t| <= 1 and (s^2, s, 1), |s| <= 1."""
    def p1(t):
        return np.stack([np.ones_like(t), t, t**2], axis=1)

    def d1(t):
        return np.stack([np.zeros_like(t), np.ones_like(t), 2 * t], axis=1)

    def p2(s):
        return np.stack([s**2, s, np.ones_like(s)], axis=1)

    def d2(s):
        return np.stack([2 * s, np.ones_like(s), np.zeros_like(s)], axis=1)

    return [CurveParam("t", p1, d1), CurveParam("s", p2, d2)]


def _grad(a: RatPoly, zeta):
    cols = [zeta[:, k] for k in range(zeta.shape[1])]
    P = zeta.shape[0]
    return np.array([a.diff(v).eval_numeric(cols) * np.ones(P) for v in a.ring])  # (D, P)


def _batch(zeta):
    if isinstance(zeta, ChartPoint):
        zeta = zeta.vector
    zeta = np.asarray(zeta, dtype=complex)
    return zeta[None, :] if zeta.ndim == 1 else zeta


def delta_A_vector(a: RatPoly, zeta, layout: Layout) -> dict:
    zeta = _batch(zeta)
    g = _grad(a, zeta)
    g2 = np.sum(np.abs(g) ** 2, axis=0)
    scale = np.sqrt(np.sum(np.abs(zeta) ** 2, axis=1)) ** (int(a.total_degree()) - 1)
    if np.any(np.sqrt(g2) <= SINGULAR_THRESHOLD * scale):
        raise KernelError("singular point of the hypersurface (|da| too small)")
    return {layout.dz(j): TWO_PI_I * g[j].conj() / g2 for j in range(layout.D)}


def delta_A(form: Form, a: RatPoly, zeta) -> Form:
    """Contraction by delta_A; shifts the weight by (1 - deg a, -1)."""
    k0 = int(a.total_degree())
    return form.contract(delta_A_vector(a, zeta, form.layout), (1 - k0, -1))


def omega_form(zeta, layout: Layout) -> Form:
    """Omega = sum_j (-1)^j zeta_j dzeta_0 ^ .. omit j .. ^ dzeta_N, weight (1, N)."""
    zeta = _batch(zeta)
    D = layout.D
    terms = {}
    for j in range(D):
        t = tuple(layout.dz(k) for k in range(D) if k != j)
        terms[t] = (-1) ** j * zeta[:, j]
    return Form(layout, terms, (1, D - 1))


def _check_hypersurface(a: RatPoly):
    D = len(a.ring)
    if D - 2 < 1:
        raise KernelError("X = {a = 0} must have dimension n >= 1 (need N >= 2)")
    if not a.is_homogeneous() or a.total_degree() < 1:
        raise KernelError("a must be homogeneous of positive degree")


def eval_omega_prime(a: RatPoly, zeta, layout: Layout | None = None, check_on_X: bool = True) -> Form:
    """omega' = delta_A Omega, an (n, 0)-form, at points of X."""
    _check_hypersurface(a)
    zeta = _batch(zeta)
    layout = layout or Layout(len(a.ring))
    if check_on_X:
        k0 = int(a.total_degree())
        vals = a.eval_numeric([zeta[:, k] for k in range(zeta.shape[1])])
        norm = np.sqrt(np.sum(np.abs(zeta) ** 2, axis=1)) ** k0
        if np.any(np.abs(vals) > ON_X_TOLERANCE * norm):
            raise KernelError("point is not on X (a(zeta) != 0)")
    return delta_A(omega_form(zeta, layout), a, zeta)


def Da_form(a: RatPoly, zeta, layout: Layout) -> Form:
    """Da = da - deg(a) (conj(zeta) . dzeta / |zeta|^2) a."""
    zeta = _batch(zeta)
    k0 = int(a.total_degree())
    g = _grad(a, zeta)
    av = a.eval_numeric([zeta[:, k] for k in range(zeta.shape[1])]) * np.ones(zeta.shape[0])
    n2 = np.sum(np.abs(zeta) ** 2, axis=1)
    return Form.one_form(layout, {layout.dz(j): g[j] - k0 * zeta[:, j].conj() * av / n2
                                  for j in range(layout.D)})


def da_wedge_omega_identity(a: RatPoly, zeta, layout: Layout | None = None):
    """Return (Da ^ omega', expected) where expected = 2 pi i (1 - deg(a)^2 |a|^2/(|da|^2 |zeta|^2)) Omega.

    On X the correction vanishes and expected = 2 pi i Omega.
    """
    _check_hypersurface(a)
    zeta = _batch(zeta)
    layout = layout or Layout(len(a.ring))
    om = omega_form(zeta, layout)
    lhs = Da_form(a, zeta, layout).wedge(eval_omega_prime(a, zeta, layout, check_on_X=False))
    k0 = int(a.total_degree())
    g = _grad(a, zeta)
    g2 = np.sum(np.abs(g) ** 2, axis=0)
    av = a.eval_numeric([zeta[:, k] for k in range(zeta.shape[1])]) * np.ones(zeta.shape[0])
    n2 = np.sum(np.abs(zeta) ** 2, axis=1)
    factor = TWO_PI_I * (1 - k0**2 * np.abs(av) ** 2 / (g2 * n2))
    return Form(layout, lhs.terms), Form(layout, om.scale(factor).terms)


def integrate_curve(integrand, params: list[CurveParam], D: int, cfg: QuadratureConfig,
                    raise_on_fail=True, ncomp: int | None = None):
    """Integrate a (1, 1)-form (or a list of them) over a curve covered by ``params``."""
    layout = Layout(D)
    chart = Layout(1)

    def evaluate(L):
        t, w = polydisc_rule(1, L, cfg.order)
        t = t[:, 0]
        total = 0j if ncomp is None else np.zeros(ncomp, dtype=complex)
        for prm in params:
            zeta = prm.point(t)
            dz = prm.deriv(t)
            jac = {j: {0: dz[:, j]} for j in range(D)}
            forms = integrand(zeta, layout)
            single = isinstance(forms, Form)
            forms = [forms] if single else forms
            vals = []
            for f in forms:
                check_top_weight(f, 1)
                c = top_coefficient(f.pullback(jac, chart, 1), 1)
                vals.append(orientation_factor(1) * np.sum(c * w))
            total = total + (vals[0] if single else np.array(vals))
        return total

    cells = lambda L: len(params) * L**2
    if ncomp is None:
        return adaptive(evaluate, cfg, cells, raise_on_fail)
    return _adaptive_vector(evaluate, cfg, cells, raise_on_fail)


def _adaptive_vector(evaluate, cfg, cells, raise_on_fail):
    # same stopping rule as quadrature.adaptive, applied to the max-norm of the change
    prev = None
    val = None
    err = float("inf")
    for L in range(1, cfg.depth + 1):
        val = evaluate(L)
        if prev is not None:
            err = max(float(np.max(np.abs(val - prev))), 4 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(val)))))
            if L >= cfg.min_depth and err < cfg.tol:
                return val, QuadResult(complex(np.linalg.norm(val)), err, L, cells(L), True)
        prev = val
    res = QuadResult(complex(np.linalg.norm(val)), err, L, cells(L), False)
    if raise_on_fail:
        raise ConvergenceError(f"no convergence to tol {cfg.tol} by depth {cfg.depth}", res)
    return val, res


def _phi_vals(phi: RatPoly, zeta):
    return phi.eval_numeric([zeta[:, k] for k in range(zeta.shape[1])]) * np.ones(zeta.shape[0])


def represent_hypersurface(phi: RatPoly, a: RatPoly, z: ChartPoint, params: list[CurveParam] | None = None,
                           g_spec=None, cfg: QuadratureConfig | None = None, raise_on_fail=True) -> QuadResult:
    """Quadrature value of -int_X delta_A(h^a ^ g) phi with g = alpha^(l - deg a + n + 1)."""
    _check_hypersurface(a)
    cfg = cfg or QuadratureConfig(tol=1e-8)
    params = params or conic_charts()
    D = len(a.ring)
    n = D - 2
    if phi.is_zero():
        return QuadResult(0j, 0.0, 0, 0, True)
    if not phi.is_homogeneous():
        raise KernelError("phi must be homogeneous")
    ell = int(phi.total_degree())
    k0 = int(a.total_degree())
    power = ell - k0 + n + 1 if g_spec is None else int(g_spec)
    if power < 0:
        raise KernelError(f"need l >= deg a - n - 1 (l = {ell}, deg a = {k0})")
    ha = hefer_decompose(a, "z_minus_w")
    zv = z.vector

    def integrand(zeta, layout):
        parts = alpha_parts(zv, zeta, layout)
        h = tau_substitute(ha, zv, zeta, layout, max_deg=n + 1, parts=parts)
        g = alpha_power(*parts, power, max_deg=n)
        top = h.wedge(g, max_p=n + 1, max_q=n).component(n + 1, n)
        return delta_A(top, a, zeta).scale(-FORMULA_SIGN * _phi_vals(phi, zeta), (ell, 0))

    return integrate_curve(integrand, params, D, cfg, raise_on_fail)


def division_eval_hypersurface(F_list: list[RatPoly], Phi: RatPoly, a: RatPoly, z: ChartPoint, rho: int,
                               params: list[CurveParam] | None = None, cfg: QuadratureConfig | None = None,
                               raise_on_fail=True):
    """Numeric q(z) with sum f_j(z) q_j(z) = phi(z) when the f_j have no common zero on X.

    ``F_list`` are homogeneous of one degree d and ``Phi`` homogeneous of degree rho
    (the homogenized data).  Returns (q as a complex array, QuadResult).
    """
    _check_hypersurface(a)
    cfg = cfg or QuadratureConfig(tol=1e-8)
    params = params or conic_charts()
    D = len(a.ring)
    n = D - 2
    m = len(F_list)
    d = common_degree(F_list)
    k0 = int(a.total_degree())
    K = min(m, n + 1)
    kappa = d * K
    r = rho - kappa - k0 + n + 1
    if r < 0:
        raise KernelError(f"rho = {rho} is below d min(m, n+1) + deg a - (n+1) = {kappa + k0 - n - 1}")
    if not Phi.is_zero() and (not Phi.is_homogeneous() or Phi.total_degree() != rho):
        raise KernelError("Phi must be homogeneous of degree rho")
    if Phi.is_zero():
        return np.zeros(m, dtype=complex), QuadResult(0j, 0.0, 0, 0, True)
    ha = hefer_decompose(a, "z_minus_w")
    hf = [hefer_decompose(f, "z_minus_w") for f in F_list]
    zv = z.vector

    def integrand(zeta, _layout):
        layout = Layout(D, m)
        parts = alpha_parts(zv, zeta, layout)
        X = koszul_sum(F_list, hf, kappa, zv, zeta, layout, parts, max_k=K)
        h = tau_substitute(ha, zv, zeta, layout, max_deg=n + 1, parts=parts)
        g = alpha_power(*parts, r, max_deg=n)
        hg = h.wedge(g, max_p=n + 1, max_q=n)
        pv = _phi_vals(Phi, zeta)
        out = []
        for x in frame_components(X, m):
            top = hg.wedge(x, max_p=n + 1, max_q=n).component(n + 1, n, 0)
            f = delta_A(top, a, zeta).scale(-FORMULA_SIGN * pv, (rho, 0))
            out.append(Form(Layout(D), f.terms, f.weight))
        return out

    return integrate_curve(integrand, params, D, cfg, raise_on_fail, ncomp=m)
