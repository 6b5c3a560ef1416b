"""Integral representation of sections on P^N by the weight alpha^(l+N)."""

from __future__ import annotations

from math import comb

import numpy as np

from ..poly import RatPoly
from .forms import Form, Layout, WeightError, top_coefficient
from .quadrature import QuadratureConfig, QuadResult, adaptive, chart_jacobian, chart_points, polydisc_rule
from .weights import ChartPoint, KernelError, alpha_parts

# Integration convention: an (n, n) form c dt_1^dtb_1^...^dt_n^dtb_n integrates
# to (2i)^n times the Lebesgue integral of c.  This is the orientation under
# which the (1,1)-part of alpha has total mass +1 over P^1.
def orientation_factor(n: int) -> complex:
    return (2j) ** n


def check_top_weight(form: Form, n: int):
    """Top-degree integrands must be invariant under zeta -> s zeta."""
    if form.weight is not None and form.weight[0] + n != 0:
        raise WeightError(f"integrand has zeta-weight {form.weight[0] + n}, expected 0")


def integrate_pn(integrand, N: int, cfg: QuadratureConfig, raise_on_fail=True) -> QuadResult:
    """Integrate over P^N the (N, N) form returned by ``integrand(zeta, layout)``."""
    layout = Layout(N + 1)
    chart_layout = Layout(N)

    def evaluate(L):
        t, w = polydisc_rule(N, L, cfg.order)
        total = 0j
        for i in range(N + 1):
            zeta = chart_points(N, i, t)
            form = integrand(zeta, layout)
            check_top_weight(form, N)
            pulled = form.pullback(chart_jacobian(N, i), chart_layout, N)
            c = top_coefficient(pulled, N)
            total += orientation_factor(N) * np.sum(c * w)
        return total

    return adaptive(evaluate, cfg, lambda L: (N + 1) * L ** (2 * N), raise_on_fail)


def fubini_study_integral(cfg: QuadratureConfig | None = None) -> QuadResult:
    """Integral over P^1 of the (1,1)-part of alpha (expected: 1)."""
    cfg = cfg or QuadratureConfig(tol=1e-10)
    z = np.array([1.0, 0.0], dtype=complex)

    def integrand(zeta, layout):
        return alpha_parts(z, zeta, layout)[1]

    return integrate_pn(integrand, 1, cfg)


def _phi_values(phi: RatPoly, zeta: np.ndarray):
    return phi.eval_numeric([zeta[:, j] for j in range(zeta.shape[1])]) * np.ones(zeta.shape[0])


def represent_pn(phi: RatPoly, z: ChartPoint, g_spec=None, cfg: QuadratureConfig | None = None,
                 raise_on_fail=True) -> QuadResult:
    """Quadrature value of the integral over P^N of g_{N,N} phi with g = alpha^(l+N).

    ``phi`` is homogeneous of degree l in N+1 variables; the result approximates
    phi(z) in the normalization of ``z``.  ``g_spec`` may give the exponent of
    alpha explicitly (it must equal l+N for the formula to reproduce phi).
    """
    cfg = cfg or QuadratureConfig(tol=1e-8)
    N = len(z.coords) - 1
    if len(phi.ring) != N + 1:
        raise KernelError("phi must have N+1 variables")
    if phi.is_zero():
        return QuadResult(0j, 0.0, 0, 0, True)
    if not phi.is_homogeneous():
        raise KernelError("phi must be homogeneous")
    ell = int(phi.total_degree())
    power = ell + N if g_spec is None else int(g_spec)
    if power != ell + N:
        raise KernelError(f"weight alpha^{power} does not match degree {ell} (need {ell + N})")
    zv = z.vector

    def integrand(zeta, layout):
        a00, a11 = alpha_parts(zv, zeta, layout)
        top = a11.power(N)  # (N, N)-part of alpha^(l+N) is C(l+N, N) a00^l a11^N
        c = comb(power, N) * a00.scalar_part() ** ell * _phi_values(phi, zeta)
        return top.scale(c, (0, ell))  # a00^l (-l, l) times phi (l, 0)

    return integrate_pn(integrand, N, cfg, raise_on_fail)
