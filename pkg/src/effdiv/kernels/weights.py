"""Pointwise values of the basic kernels alpha, b, B and gamma_j on P^N.

Functions with a leading underscore work on arrays: ``zeta`` of shape
(P, D) (a batch of points) and ``z`` of shape (D,).  The public wrappers take
:class:`ChartPoint` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .forms import Form, Layout

TWO_PI_I = 2j * np.pi


class KernelError(ValueError):
    pass


@dataclass(frozen=True)
class ChartPoint:
    """Homogeneous coordinates normalized so that coordinate ``chart`` equals 1."""

    coords: tuple
    chart: int

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=complex)
        if c.ndim != 1 or not 0 <= self.chart < len(c):
            raise KernelError("bad chart point")
        if not np.all(np.isfinite(c)):
            raise KernelError("coordinates must be finite")
        if c[self.chart] == 0:
            raise KernelError("normalizing coordinate is zero")
        c = c / c[self.chart]
        object.__setattr__(self, "coords", tuple(complex(x) for x in c))

    @classmethod
    def from_vector(cls, v) -> ChartPoint:
        v = np.asarray(v, dtype=complex)
        if not np.any(v):
            raise KernelError("zero vector is not a point of P^N")
        return cls(tuple(v), int(np.argmax(np.abs(v))))

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.coords, dtype=complex)

    @property
    def N(self) -> int:
        return len(self.coords) - 1


def _as_batch(zeta):
    if isinstance(zeta, ChartPoint):
        zeta = zeta.vector
    zeta = np.asarray(zeta, dtype=complex)
    return zeta[None, :] if zeta.ndim == 1 else zeta


def _vec(z):
    return z.vector if isinstance(z, ChartPoint) else np.asarray(z, dtype=complex)


def _norm2(zeta):
    return np.sum(np.abs(zeta) ** 2, axis=-1)


# alpha ---------------------------------------------------------------------

def alpha_parts(z, zeta, layout: Layout) -> tuple[Form, Form]:
    """alpha_{0,0} = z . conj(zeta)/|zeta|^2 and alpha_{1,1}, with weight (-1, 1)."""
    z, zeta = _vec(z), _as_batch(zeta)
    D = layout.D
    n2 = _norm2(zeta)
    a00 = (zeta.conj() @ z) / n2
    terms = {}
    c = -1.0 / TWO_PI_I
    for k in range(D):
        for j in range(D):
            M = ((1.0 if j == k else 0.0) / n2) - zeta[:, j].conj() * zeta[:, k] / n2**2
            # dzeta_j comes before dzetabar_k in canonical order: swap costs a sign
            t = (layout.dz(j), layout.dzb(k))
            terms[t] = terms.get(t, 0) - c * M
    return Form.scalar(layout, a00, (-1, 1)), Form(layout, terms, (-1, 1))


def alpha_power(a00: Form, a11: Form, n: int, max_deg: int | None = None) -> Form:
    """alpha^n = sum_k C(n, k) a00^(n-k) a11^k, truncated at bidegree (max_deg, max_deg)."""
    layout = a00.layout
    if n == 0:
        s0 = a00.scalar_part()
        return Form.scalar(layout, np.ones_like(s0) if np.ndim(s0) else 1.0, (0, 0))
    top = layout.D if max_deg is None else max_deg
    s = a00.scalar_part()
    w = None if a00.weight is None else (n * a00.weight[0], n * a00.weight[1])
    out = Form.zero(layout, w)
    p11 = Form.scalar(layout, 1.0, (0, 0))
    for k in range(0, min(n, top) + 1):
        if k:
            p11 = p11.wedge(a11, max_p=top, max_q=top)
            if p11.is_zero():
                break
        out = out + p11.scale(comb(n, k) * s ** (n - k), ((n - k) * a00.weight[0], (n - k) * a00.weight[1]))
    return out


def eval_alpha(z: ChartPoint, zeta: ChartPoint) -> Form:
    """alpha_{0,0} + alpha_{1,1} at a single pair of points."""
    layout = Layout(len(z.coords))
    a00, a11 = alpha_parts(z, zeta, layout)
    return a00 + a11


# eta contraction -----------------------------------------------------------

def eta_vector(z, layout: Layout) -> dict:
    """eta = 2 pi i sum z_j d/dzeta_j as a contraction vector."""
    z = _vec(z)
    return {layout.dz(j): TWO_PI_I * z[j] for j in range(layout.D)}


def delta_eta(form: Form, z) -> Form:
    return form.contract(eta_vector(z, form.layout))


# b and B ------------------------------------------------------------------

def b_parts(z, zeta, layout: Layout) -> tuple[Form, Form]:
    """b (minimal-norm solution of delta_eta b = 1) and its dbar, both of weight (0, 0)."""
    z, zeta = _vec(z), _as_batch(zeta)
    D = layout.D
    n2 = _norm2(zeta)
    zn2 = float(np.sum(np.abs(z) ** 2))
    zb_dot_zeta = zeta @ z.conj()  # sum conj(z_j) zeta_j
    Den = n2 * zn2 - np.abs(zb_dot_zeta) ** 2
    if np.any(Den <= 1e-14 * n2 * zn2):
        raise KernelError("b is singular at zeta = z")
    Num = [n2 * z[j].conj() - zb_dot_zeta * zeta[:, j].conj() for j in range(D)]
    b = Form.one_form(layout, {layout.dz(j): Num[j] / Den / TWO_PI_I for j in range(D)}, (0, 0))
    dD = [zeta[:, k] * zn2 - z[k] * zb_dot_zeta for k in range(D)]
    terms = {}
    for j in range(D):
        for k in range(D):
            dN = zeta[:, k] * z[j].conj() - (zb_dot_zeta if j == k else 0.0)
            c = (dN * Den - Num[j] * dD[k]) / Den**2 / TWO_PI_I
            # coefficient of dzetabar_k ^ dzeta_j = -(dzeta_j ^ dzetabar_k)
            t = (layout.dz(j), layout.dzb(k))
            terms[t] = terms.get(t, 0) - c
    return b, Form(layout, terms, (0, 0))


def eval_b_B(z: ChartPoint, zeta: ChartPoint, layout: Layout | None = None):
    """(b, B) with B = b + b^dbar b + ... + b^(dbar b)^(N-1)."""
    layout = layout or Layout(len(z.coords))
    b, db = b_parts(z, zeta, layout)
    B = b
    term = b
    for _ in range(layout.D - 2):
        term = term.wedge(db)
        B = B + term
    return b, B


# gamma --------------------------------------------------------------------

def gamma_forms(zeta, layout: Layout) -> list[Form]:
    """gamma_j = dzeta_j - (conj(zeta) . dzeta/|zeta|^2) zeta_j, weight (0, 1)."""
    zeta = _as_batch(zeta)
    D = layout.D
    n2 = _norm2(zeta)
    out = []
    for j in range(D):
        coeffs = {}
        for k in range(D):
            c = -zeta[:, k].conj() * zeta[:, j] / n2
            if k == j:
                c = c + 1.0
            coeffs[layout.dz(k)] = c
        out.append(Form.one_form(layout, coeffs, (0, 1)))
    return out


def eval_gamma(zeta: ChartPoint, layout: Layout | None = None) -> list[Form]:
    return gamma_forms(zeta, layout or Layout(len(zeta.coords)))


def zeta_contract(form: Form, zeta) -> Form:
    """Contraction with sum zeta_j d/dzeta_j (used to test projectivity)."""
    zeta = _as_batch(zeta)
    return form.contract({form.layout.dz(j): zeta[:, j] for j in range(form.layout.D)})
