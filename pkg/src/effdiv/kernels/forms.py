"""Exterior-algebra values with complex (vectorized) coefficients.

A :class:`Form` lives on a :class:`Layout` with generators

* ``dz_j``   ids ``0 .. D-1``       (holomorphic differentials)
* ``dzb_j``  ids ``D .. 2D-1``      (antiholomorphic differentials)
* ``e_j``    ids ``2D .. 2D+m-1``   (Koszul frame elements)

All generators anticommute.  A term is a sorted tuple of ids; coefficients are
numpy arrays broadcast over a batch of evaluation points (or plain complex).

The weight record ``(w_zeta, w_z)`` is the total homogeneity in zeta (resp. z)
corrected by the holomorphic form degree p: ``w_zeta = hom_zeta - p`` and
``w_z = hom_z + p``.  With this choice contraction against eta keeps both
entries fixed, so every homogeneous kernel carries one record for all of its
components.  ``None`` means "not tracked".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np


class WeightError(ValueError):
    pass


@dataclass(frozen=True)
class Layout:
    D: int  # N + 1 homogeneous coordinates
    m: int = 0  # number of Koszul frame elements

    def dz(self, j: int) -> int:
        return j

    def dzb(self, j: int) -> int:
        return self.D + j

    def e(self, j: int) -> int:
        return 2 * self.D + j

    @property
    def size(self) -> int:
        return 2 * self.D + self.m

    def kind(self, g: int) -> str:
        if g < self.D:
            return "dz"
        if g < 2 * self.D:
            return "dzb"
        return "e"

    def bidegree(self, term: tuple) -> tuple[int, int, int]:
        p = sum(1 for g in term if g < self.D)
        q = sum(1 for g in term if self.D <= g < 2 * self.D)
        return p, q, len(term) - p - q


def _merge_sign(a: tuple, b: tuple):
    """Sorted union of disjoint tuples and the sign of the shuffle, or None if they meet."""
    if not a:
        return b, 1
    if not b:
        return a, 1
    out = []
    i = j = 0
    inv = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        elif a[i] > b[j]:
            out.append(b[j])
            inv += len(a) - i
            j += 1
        else:
            return None, 0
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), (-1 if inv % 2 else 1)


def _add_weights(w1, w2):
    if w1 is None or w2 is None:
        return None
    return (w1[0] + w2[0], w1[1] + w2[1])


class Form:
    __slots__ = ("layout", "terms", "weight")

    def __init__(self, layout: Layout, terms: dict | None = None, weight=None):
        self.layout = layout
        self.terms = dict(terms or {})
        self.weight = weight

    # construction
    @classmethod
    def scalar(cls, layout: Layout, c, weight=None) -> Form:
        return cls(layout, {(): c}, weight)

    @classmethod
    def zero(cls, layout: Layout, weight=None) -> Form:
        return cls(layout, {}, weight)

    @classmethod
    def one_form(cls, layout: Layout, coeffs: dict, weight=None) -> Form:
        """sum_g coeffs[g] * generator g."""
        return cls(layout, {(g,): c for g, c in coeffs.items()}, weight)

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def scalar_part(self):
        return self.terms.get((), 0)

    def coeff(self, term):
        return self.terms.get(tuple(term), 0)

    def component(self, p: int, q: int, k: int | None = None) -> Form:
        """Part of holomorphic degree p, antiholomorphic degree q (and frame degree k)."""
        out = {}
        for t, c in self.terms.items():
            pp, qq, kk = self.layout.bidegree(t)
            if pp == p and qq == q and (k is None or kk == k):
                out[t] = c
        return Form(self.layout, out, self.weight)

    def filter(self, pred) -> Form:
        return Form(self.layout, {t: c for t, c in self.terms.items() if pred(t)}, self.weight)

    def max_abs(self) -> float:
        return max((float(np.max(np.abs(c))) for c in self.terms.values()), default=0.0)

    # algebra
    def _check(self, other):
        if self.layout != other.layout:
            raise ValueError("forms on different layouts")

    def __add__(self, other: Form) -> Form:
        self._check(other)
        if self.weight is not None and other.weight is not None and self.terms and other.terms:
            if self.weight != other.weight:
                raise WeightError(f"adding forms of weights {self.weight} and {other.weight}")
        w = self.weight if self.terms else other.weight
        if w is None:
            w = other.weight if self.terms else None
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out[t] + c if t in out else c
        return Form(self.layout, out, w)

    def __neg__(self) -> Form:
        return Form(self.layout, {t: -c for t, c in self.terms.items()}, self.weight)

    def __sub__(self, other: Form) -> Form:
        return self + (-other)

    def scale(self, c, weight_shift=(0, 0)) -> Form:
        w = None if self.weight is None else (self.weight[0] + weight_shift[0], self.weight[1] + weight_shift[1])
        return Form(self.layout, {t: c * v for t, v in self.terms.items()}, w)

    def wedge(self, other: Form, max_p: int | None = None, max_q: int | None = None) -> Form:
        self._check(other)
        D = self.layout.D
        out: dict = {}
        for ta, ca in self.terms.items():
            for tb, cb in other.terms.items():
                t, s = _merge_sign(ta, tb)
                if t is None:
                    continue
                if max_p is not None and sum(1 for g in t if g < D) > max_p:
                    continue
                if max_q is not None and sum(1 for g in t if D <= g < 2 * D) > max_q:
                    continue
                v = ca * cb if s > 0 else -(ca * cb)
                out[t] = out[t] + v if t in out else v
        return Form(self.layout, out, _add_weights(self.weight, other.weight))

    __xor__ = wedge

    def power(self, k: int, **kw) -> Form:
        out = Form.scalar(self.layout, 1.0, (0, 0) if self.weight is not None else None)
        for _ in range(k):
            out = out.wedge(self, **kw)
        return out

    def contract(self, vec: dict, weight_shift=(0, 0)) -> Form:
        """Interior product with the vector sum_g vec[g] d/d(generator g); an odd antiderivation."""
        out: dict = {}
        for t, c in self.terms.items():
            for pos, g in enumerate(t):
                if g not in vec:
                    continue
                rest = t[:pos] + t[pos + 1:]
                v = vec[g] * c
                if pos % 2:
                    v = -v
                out[rest] = out[rest] + v if rest in out else v
        w = None if self.weight is None else (self.weight[0] + weight_shift[0], self.weight[1] + weight_shift[1])
        return Form(self.layout, out, w)

    def pullback(self, jac: dict, target: Layout, p: int, q: int | None = None) -> Form:
        """Pull back the (p, q) part along a holomorphic map.

        ``jac[j]`` is a dict {chart variable a: dzeta_j/dt_a}; the antiholomorphic
        differentials pull back by complex conjugation.  Frame elements are kept
        only if ``target.m`` covers them (ids shift accordingly).
        """
        q = p if q is None else q
        D = self.layout.D
        out: dict = {}
        for t, c in self.terms.items():
            pp, qq, kk = self.layout.bidegree(t)
            if pp != p or qq != q:
                continue
            acc = {(): c}
            for g in t:
                kind = self.layout.kind(g)
                if kind == "dz":
                    img = {(target.dz(a),): v for a, v in jac.get(g, {}).items()}
                elif kind == "dzb":
                    img = {(target.dzb(a),): np.conj(v) for a, v in jac.get(g - D, {}).items()}
                else:
                    img = {(target.e(g - 2 * D),): 1.0}
                new: dict = {}
                for ta, ca in acc.items():
                    for tb, cb in img.items():
                        tt, s = _merge_sign(ta, tb)
                        if tt is None:
                            continue
                        v = ca * cb if s > 0 else -(ca * cb)
                        new[tt] = new[tt] + v if tt in new else v
                acc = new
                if not acc:
                    break
            for tt, v in acc.items():
                out[tt] = out[tt] + v if tt in out else v
        return Form(target, out, self.weight)


def top_coefficient(form: Form, n: int):
    """Coefficient of dt_1 ^ dtb_1 ^ ... ^ dt_n ^ dtb_n of an (n, n) chart form."""
    L = form.layout
    term = tuple(range(n)) + tuple(L.D + a for a in range(n))
    # dt_1..dt_n dtb_1..dtb_n -> dt_1 dtb_1 ... dt_n dtb_n costs n(n-1)/2 transpositions
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * form.coeff(term)


def basis_terms(ids, k):
    return [tuple(c) for c in combinations(sorted(ids), k)]
