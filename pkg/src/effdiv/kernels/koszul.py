"""Koszul-complex forms sigma, U_k, R_k and the Hefer operators built from them.

The frame e_1..e_m is dual to the sections f_1..f_m (all of one degree d).
sigma = sum conj(f_j) e_j / |f|^2 uses the plain ambient norm; the lambda
regularization multiplies by |f|^(2 lambda) in the norm
|f|^2 / |zeta|^(2d) that is invariant on P^N.
"""

from __future__ import annotations

from itertools import combinations
from math import factorial

import numpy as np

from .forms import Form, Layout
from .hefer import HeferData, tau_substitute
from .weights import KernelError, alpha_parts, alpha_power

ZERO_THRESHOLD = 1e-12


def _values_and_grads(f_list, zeta):
    D = zeta.shape[1]
    cols = [zeta[:, k] for k in range(D)]
    P = zeta.shape[0]
    vals = np.array([f.eval_numeric(cols) * np.ones(P) for f in f_list])  # (m, P)
    grads = np.array([[f.diff(f.ring[k]).eval_numeric(cols) * np.ones(P) for k in range(D)]
                      for f in f_list])  # (m, D, P)
    return vals, grads


def common_degree(f_list) -> int:
    degs = {int(f.total_degree()) for f in f_list}
    if len(degs) != 1 or not all(f.is_homogeneous() for f in f_list):
        raise KernelError("sections must be homogeneous of one common degree")
    return degs.pop()


def eval_koszul(f_list, zeta, layout: Layout, lam: float = 0.0, max_k: int | None = None):
    """(sigma, [U_1..U_K], [R_0..R_K]) at a batch of points, K = min(m, N+1, max_k).

    With lam = 0 the R-forms vanish identically and |f| must be nonzero.
    """
    zeta = np.asarray(zeta, dtype=complex)
    if zeta.ndim == 1:
        zeta = zeta[None, :]
    m, D = len(f_list), layout.D
    if layout.m < m:
        raise KernelError("layout has too few frame elements")
    d = common_degree(f_list)
    vals, grads = _values_and_grads(f_list, zeta)
    f2 = np.sum(np.abs(vals) ** 2, axis=0)
    if lam == 0 and np.any(f2 <= ZERO_THRESHOLD * np.sum(np.abs(zeta) ** 2, axis=1) ** d):
        raise KernelError("sections have a common zero at an evaluation point (lambda = 0)")
    safe = np.where(f2 > 0, f2, 1.0)
    sigma = Form(layout, {(layout.e(j),): vals[j].conj() / safe for j in range(m)}, (-d, 0))
    # dbar(conj(f_j)/|f|^2) = sum_k [conj(df_j/dz_k)/|f|^2 - conj(f_j) sum_i f_i conj(df_i/dz_k)/|f|^4] dzb_k
    terms = {}
    for j in range(m):
        for k in range(D):
            mix = np.sum(vals * grads[:, k, :].conj(), axis=0)
            c = grads[j, k].conj() / safe - vals[j].conj() * mix / safe**2
            terms[(layout.dzb(k), layout.e(j))] = c
    dsigma = Form(layout, terms, (-d, 0))
    K = min(m, D) if max_k is None else min(m, D, max_k)
    U = [sigma]
    for _ in range(1, K):
        U.append(U[-1].wedge(dsigma))
    if lam == 0:
        R = [Form.zero(layout, (0, 0))] + [Form.zero(layout, u.weight) for u in U]
        return sigma, U, R
    n2 = np.sum(np.abs(zeta) ** 2, axis=1)
    fE2 = f2 / n2**d
    pw = fE2**lam
    # dbar |f|_E^2 = |zeta|^-2d sum_j f_j dbar conj(f_j) - d |f|^2 |zeta|^(-2d-2) sum_k zeta_k dzb_k
    dfE = {}
    for k in range(D):
        c = np.sum(vals * grads[:, k, :].conj(), axis=0) / n2**d - d * f2 * zeta[:, k] / n2 ** (d + 1)
        with np.errstate(divide="ignore", invalid="ignore"):  # singular on Z_f for lam < 1
            dfE[layout.dzb(k)] = lam * fE2 ** (lam - 1) * c
    dpw = Form.one_form(layout, dfE, (0, 0))
    U_reg = [u.scale(pw) for u in U]
    R = [Form.scalar(layout, 1.0 - pw, (0, 0))] + [dpw.wedge(u) for u in U]
    return sigma, U_reg, R


def hefer_forms(h_list, z, zeta, layout: Layout, parts=None) -> list[Form]:
    """tau^* of each Hefer decomposition h_j (one 1-form per section)."""
    return [tau_substitute(h, z, zeta, layout, parts=parts) for h in h_list]


def delta_h(form: Form, hforms: list[Form]) -> Form:
    """sum_j h_j ^ (contraction of e_j)."""
    L = form.layout
    out = None
    for j, h in enumerate(hforms):
        piece = h.wedge(form.contract({L.e(j): 1.0}))
        out = piece if out is None else out + piece
    return out if out is not None else Form.zero(L)


def delta_h_power(form: Form, hforms: list[Form], r: int) -> Form:
    """(delta_h)^r / r! applied to ``form``."""
    out = form
    for _ in range(r):
        out = delta_h(out, hforms)
    return out.scale(1.0 / factorial(r))


def contract_frame(form: Form, values, d: int = 0) -> Form:
    """delta_{f(z)}: contraction with sum f_j(z) d/de_j (f of degree d adds d to the z-weight)."""
    L = form.layout
    return form.contract({L.e(j): v for j, v in enumerate(values)}, (0, d))


def eval_hefer_koszul(h_list: list[HeferData], k: int, ell: int, kappa: int, z, zeta,
                      layout: Layout | None = None) -> dict:
    """alpha^(kappa - d k) (delta_h)_(k - ell) applied to each e_J, |J| = k.

    Returns {J: Form}; J runs over increasing k-tuples of frame indices.
    """
    m = len(h_list)
    d = int(h_list[0].source.total_degree())
    if kappa < d * k:
        raise KernelError(f"kappa = {kappa} < d k = {d * k}")
    if not 0 <= ell <= k <= m:
        raise KernelError("need 0 <= ell <= k <= m")
    z = z.vector if hasattr(z, "vector") else np.asarray(z, dtype=complex)
    zeta = zeta.vector if hasattr(zeta, "vector") else np.asarray(zeta, dtype=complex)
    if zeta.ndim == 1:
        zeta = zeta[None, :]
    layout = layout or Layout(len(z), m)
    parts = alpha_parts(z, zeta, layout)
    hforms = hefer_forms(h_list, z, zeta, layout, parts)
    a = alpha_power(*parts, kappa - d * k)
    out = {}
    for J in combinations(range(m), k):
        eJ = Form(layout, {tuple(layout.e(j) for j in J): np.ones(zeta.shape[0], dtype=complex)}, (0, 0))
        out[J] = a.wedge(delta_h_power(eJ, hforms, k - ell))
    return out


def koszul_sum(f_list, h_list, kappa: int, z, zeta, layout: Layout, parts=None, lam: float = 0.0,
               max_k: int | None = None) -> Form:
    """X = sum_k alpha^(kappa - d k) (delta_h)_(k-1) U_k, a form of frame degree 1.

    ``max_k`` truncates the sum (on an n-dimensional X only k <= n+1 survive).
    """
    d = common_degree(f_list)
    K = min(len(f_list), layout.D) if max_k is None else min(len(f_list), layout.D, max_k)
    if kappa < d * K:
        raise KernelError("kappa too small for the Koszul weight")
    parts = parts or alpha_parts(z, zeta, layout)
    hforms = hefer_forms(h_list, z, zeta, layout, parts)
    _, U, _ = eval_koszul(f_list, zeta, layout, lam, K)
    X = None
    for k, Uk in enumerate(U, start=1):
        piece = alpha_power(*parts, kappa - d * k).wedge(delta_h_power(Uk, hforms, k - 1))
        X = piece if X is None else X + piece
    return X


def koszul_weight(f_list, h_list, kappa: int, z, zeta, layout: Layout, parts=None) -> Form:
    """g^f = delta_{f(z)} X: a weight with bundle twist kappa (equals 1 at zeta = z)."""
    z = np.asarray(z, dtype=complex)
    fz = [f.eval_numeric(list(z)) for f in f_list]
    return contract_frame(koszul_sum(f_list, h_list, kappa, z, zeta, layout, parts), fz, common_degree(f_list))


def frame_components(X: Form, m: int) -> list[Form]:
    """Write X = sum_j x_j ^ e_j (e_j last) and return the x_j."""
    L = X.layout
    out = []
    for j in range(m):
        ej = L.e(j)
        terms = {}
        for t, c in X.terms.items():
            if t and t[-1] == ej:
                terms[t[:-1]] = c
        out.append(Form(L, terms, X.weight))
    return out
