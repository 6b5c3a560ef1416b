"""Hefer decompositions by telescoping divided differences, and their tau pullback.

For a homogeneous P in variables w_0..w_N,

    P(w) - P(z) = sum_j (w_j - z_j) dd_j(w, z),
    dd_j = (P(z_<j, w_>=j) - P(z_<=j, w_>j)) / (w_j - z_j),

and h_j = sign * dd_j / (2 pi i) is the coefficient of dw_j.  The sign tag
selects the convention:

* ``"w_minus_z"``: sum 2 pi i (w_j - z_j) h_j = P(w) - P(z)
* ``"z_minus_w"``: sum 2 pi i (w_j - z_j) h_j = P(z) - P(w)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..poly import PolyError, RatPoly
from .forms import Form, Layout
from .weights import TWO_PI_I, alpha_parts, alpha_power, gamma_forms

SIGNS = {"w_minus_z": 1, "z_minus_w": -1}


@dataclass(frozen=True)
class HeferData:
    source: RatPoly
    ring: tuple  # (w_0..w_N, z_0..z_N)
    dd: tuple  # exact divided differences, one per dw_j
    sign: str = "z_minus_w"

    @property
    def D(self) -> int:
        return len(self.source.ring)

    @property
    def scale(self) -> complex:
        """h_j = scale * dd_j."""
        return SIGNS[self.sign] / TWO_PI_I

    def target(self) -> RatPoly:
        """The polynomial sum_j (w_j - z_j) dd_j times the sign, i.e. +-(P(w) - P(z))."""
        w = _lift(self.source, self.ring, 0)
        z = _lift(self.source, self.ring, self.D)
        return (w - z) if self.sign == "w_minus_z" else (z - w)

    def is_zero(self) -> bool:
        return all(d.is_zero() for d in self.dd)


def _wz_ring(D: int) -> tuple:
    return tuple(f"w{j}" for j in range(D)) + tuple(f"z{j}" for j in range(D))


def _lift(P: RatPoly, ring: tuple, offset: int) -> RatPoly:
    D = len(P.ring)
    out = {}
    for m, c in P.terms.items():
        mm = [0] * (2 * D)
        mm[offset:offset + D] = m
        out[tuple(mm)] = c
    return RatPoly(ring, out)


def hefer_decompose(P: RatPoly, sign: str = "z_minus_w") -> HeferData:
    if sign not in SIGNS:
        raise ValueError(f"unknown sign convention {sign!r}")
    if not P.is_homogeneous():
        raise PolyError("Hefer decomposition needs a homogeneous polynomial")
    D = len(P.ring)
    ring = _wz_ring(D)
    dd = []
    for j in range(D):
        out: dict = {}
        for e, c in P.terms.items():
            k = e[j]
            if k == 0:
                continue
            # prefix in z, suffix in w, (w_j^k - z_j^k)/(w_j - z_j) in the middle
            for i in range(k):
                mm = [0] * (2 * D)
                for a in range(j):
                    mm[D + a] = e[a]
                for a in range(j + 1, D):
                    mm[a] = e[a]
                mm[j] = k - 1 - i
                mm[D + j] = i
                mm = tuple(mm)
                out[mm] = out.get(mm, 0) + c
        dd.append(RatPoly(ring, out))
    return HeferData(P, ring, tuple(dd), sign)


def check_identity(h: HeferData) -> bool:
    """Exact check of sign * sum_j (w_j - z_j) dd_j == target."""
    acc = RatPoly.zero(h.ring)
    for j, d in enumerate(h.dd):
        acc = acc + (RatPoly.var(h.ring, f"w{j}") - RatPoly.var(h.ring, f"z{j}")) * d
    if h.sign == "z_minus_w":
        acc = -acc
    return acc == h.target()


def eval_in_alpha(poly: RatPoly, z, zeta, a00: Form, a11: Form, max_deg: int | None = None) -> Form:
    """The form poly(alpha zeta, z) for a polynomial in (w, z), expanding powers of alpha.

    ``poly`` must be homogeneous in (w, z) jointly; the result has weight (0, deg).
    """
    z = np.asarray(z, dtype=complex)
    D = len(z)
    if poly.is_zero():
        return Form.zero(a00.layout)
    total = int(poly.total_degree())
    by_deg: dict[int, object] = {}
    for m, c in poly.terms.items():
        ew, ez = m[:D], m[D:]
        v = complex(c)
        for j, k in enumerate(ez):
            if k:
                v *= z[j] ** k
        for j, k in enumerate(ew):
            if k:
                v = v * zeta[:, j] ** k
        a = sum(ew)
        by_deg[a] = by_deg.get(a, 0) + v
    out = Form.zero(a00.layout)
    for a, coeff in sorted(by_deg.items()):
        # zeta^e contributes (a, 0) and z^f contributes (0, total - a)
        out = out + alpha_power(a00, a11, a, max_deg).scale(coeff, (a, total - a))
    return out


def tau_substitute(h: HeferData, z, zeta, layout: Layout | None = None, max_deg: int | None = None,
                   parts=None) -> Form:
    """tau^* h = sum_j h_j(alpha zeta, z) ^ gamma_j as a form in zeta."""
    z = z.vector if hasattr(z, "vector") else np.asarray(z, dtype=complex)
    zeta = zeta.vector if hasattr(zeta, "vector") else np.asarray(zeta, dtype=complex)
    if zeta.ndim == 1:
        zeta = zeta[None, :]
    layout = layout or Layout(h.D)
    a00, a11 = parts or alpha_parts(z, zeta, layout)
    gam = gamma_forms(zeta, layout)
    out = None
    for j, d in enumerate(h.dd):
        if d.is_zero():
            continue
        f = eval_in_alpha(d, z, zeta, a00, a11, max_deg).wedge(gam[j], max_p=max_deg, max_q=max_deg)
        out = f if out is None else out + f
    if out is None:
        return Form.zero(layout)
    return out.scale(h.scale)


def tau_target(h: HeferData, z, zeta, layout: Layout | None = None, max_deg: int | None = None) -> Form:
    """tau^* of the target polynomial (a form of degree 0 in dw)."""
    z = z.vector if hasattr(z, "vector") else np.asarray(z, dtype=complex)
    zeta = zeta.vector if hasattr(zeta, "vector") else np.asarray(zeta, dtype=complex)
    if zeta.ndim == 1:
        zeta = zeta[None, :]
    layout = layout or Layout(h.D)
    a00, a11 = alpha_parts(z, zeta, layout)
    return eval_in_alpha(h.target(), z, zeta, a00, a11, max_deg)
