"""Minimal graded free resolutions of S/J via Schreyer syzygies and pruning.

Module elements are dicts ``{(component, monomial): coefficient}``.  Each level
carries a Schreyer order induced by the leading terms of the level below.
"""

from __future__ import annotations

import json
import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groebner import groebner_basis
from .poly import (
    PolyError,
    RatPoly,
    RingMismatch,
    format_poly,
    mono_divides,
    mono_lcm,
    order_key,
    parse_poly,
)

log = logging.getLogger(__name__)


class ResolutionError(PolyError):
    pass


# --- module Groebner machinery ---------------------------------------------

class _ModuleOrder:
    """Schreyer order: x^a e_i > x^b e_j iff x^a*W_i > x^b*W_j, ties broken by i < j."""

    def __init__(self, weights: list[tuple], key):
        self.weights = weights
        self.key = key

    def __call__(self, term):
        comp, m = term
        w = self.weights[comp]
        return (self.key(tuple(a + b for a, b in zip(m, w))), -comp)


def _lead(v: dict, order):
    t = max(v, key=order)
    return t, v[t]


def _axpy(target: dict, f: Fraction, shift: tuple, src: dict):
    """target -= f * x^shift * src (in place)."""
    for (c, m), a in src.items():
        t = (c, tuple(x + y for x, y in zip(m, shift)))
        v = target.get(t, 0) - f * a
        if v:
            target[t] = v
        else:
            target.pop(t, None)


def _reduce_tracked(v: dict, basis: list[dict], leads: list, order, track: bool):
    """Full reduction; returns (remainder, quotient dict {(basis index, monomial): coeff})."""
    p = dict(v)
    rem: dict = {}
    quot: dict = {}
    while p:
        t = max(p, key=order)
        c = p[t]
        comp, m = t
        for idx, ((lc_comp, lm), lc) in enumerate(leads):
            if lc_comp == comp and mono_divides(lm, m):
                q = tuple(a - b for a, b in zip(m, lm))
                f = c / lc
                if track:
                    key = (idx, q)
                    quot[key] = quot.get(key, 0) + f
                _axpy(p, f, q, basis[idx])
                break
        else:
            rem[t] = c
            del p[t]
    return rem, quot


def _module_groebner(gens: list[dict], order) -> list[dict]:
    G: list[dict] = []
    leads: list = []
    pairs: list[tuple[int, int]] = []

    def add(v):
        t, c = _lead(v, order)
        v = {k: a / c for k, a in v.items()}
        G.append(v)
        leads.append((t, Fraction(1)))
        i = len(G) - 1
        for j in range(i):
            if leads[j][0][0] == t[0]:
                pairs.append((j, i))

    for g in gens:
        if g:
            r, _ = _reduce_tracked(g, G, leads, order, False)
            if r:
                add(r)
    while pairs:
        i, j = pairs.pop(0)
        sp = _spair(G, leads, i, j)
        if not sp:
            continue
        r, _ = _reduce_tracked(sp, G, leads, order, False)
        if r:
            add(r)
    return G


def _spair(G, leads, i, j) -> dict:
    (ci, mi), _ = leads[i]
    (cj, mj), _ = leads[j]
    lcm = mono_lcm(mi, mj)
    out: dict = {}
    _axpy(out, Fraction(-1), tuple(a - b for a, b in zip(lcm, mi)), G[i])
    _axpy(out, Fraction(1), tuple(a - b for a, b in zip(lcm, mj)), G[j])
    return out


def _schreyer_syzygies(G: list[dict], leads: list, order) -> list[dict]:
    """Syzygies of a module Groebner basis from reductions of its S-pairs."""
    syz = []
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            (ci, mi), _ = leads[i]
            (cj, mj), _ = leads[j]
            if ci != cj:
                continue
            lcm = mono_lcm(mi, mj)
            qi = tuple(a - b for a, b in zip(lcm, mi))
            qj = tuple(a - b for a, b in zip(lcm, mj))
            sp: dict = {}
            _axpy(sp, Fraction(-1), qi, G[i])
            _axpy(sp, Fraction(1), qj, G[j])
            rem, quot = _reduce_tracked(sp, G, leads, order, True)
            if rem:
                raise ResolutionError("input to syzygy step is not a Groebner basis")
            s: dict = {(i, qi): Fraction(1), (j, qj): Fraction(-1)}
            for (k, q), a in quot.items():
                t = (k, q)
                v = s.get(t, 0) - a
                if v:
                    s[t] = v
                else:
                    s.pop(t, None)
            if s:
                syz.append(s)
    return syz


# --- resolution ------------------------------------------------------------

@dataclass(frozen=True)
class Resolution:
    """Graded free resolution 0 -> S_M -> ... -> S_1 -> S_0 of S/J.

    ``shifts[k-1]`` is the list d_k of generator degrees of S_k and ``maps[k-1]``
    the matrix of a_k with ``len(shifts[k-2])`` rows (1 row for k = 1).
    """

    ring: tuple[str, ...]
    shifts: tuple[tuple[int, ...], ...]
    maps: tuple[tuple[tuple[RatPoly, ...], ...], ...]
    warnings: tuple[str, ...] = field(default=())

    @property
    def length(self) -> int:
        return len(self.shifts)

    M = length

    def betti(self) -> list[dict[int, int]]:
        out = []
        for d in self.shifts:
            tab: dict[int, int] = {}
            for x in d:
                tab[x] = tab.get(x, 0) + 1
            out.append(dict(sorted(tab.items())))
        return out

    def ranks(self) -> list[int]:
        return [1] + [len(d) for d in self.shifts]

    def to_json(self) -> dict:
        return {
            "shifts": [list(d) for d in self.shifts],
            "maps": [[[format_poly(p) for p in row] for row in a] for a in self.maps],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data, ring) -> Resolution:
        if isinstance(data, str):
            data = json.loads(data)
        ring = tuple(ring)
        maps = tuple(
            tuple(tuple(parse_poly(s, ring) for s in row) for row in a) for a in data["maps"]
        )
        return cls(ring, tuple(tuple(d) for d in data["shifts"]), maps)


def _check_homogeneous(ideal):
    for p in ideal:
        if not p.is_homogeneous():
            raise ResolutionError(f"generator {p} is not homogeneous")


def _vec_to_column(v: dict, rank: int, ring) -> list[RatPoly]:
    cols: list[dict] = [dict() for _ in range(rank)]
    for (c, m), a in v.items():
        cols[c][m] = a
    return [RatPoly(ring, t) for t in cols]


def _schreyer_levels(ideal: list[RatPoly], order: str, max_levels: int):
    """Non-minimal resolution: returns list of (shifts, matrix) per level."""
    ring = ideal[0].ring
    key = order_key(order)
    zero = (0,) * len(ring)
    gb = list(groebner_basis(ideal, order).generators)
    if not gb:
        return []
    # level 1: ideal as a submodule of S^1
    vecs = [{(0, m): c for m, c in g.terms.items()} for g in gb]
    prev_shifts = [0]
    prev_weights = [zero]
    levels = []
    for _ in range(max_levels):
        morder = _ModuleOrder(prev_weights, key)
        G = _module_groebner(vecs, morder)
        if not G:
            break
        leads = [(_lead(v, morder)[0], Fraction(1)) for v in G]
        # sort so that syzygy leading terms lose variables (Schreyer's termination trick)
        perm = sorted(range(len(G)), key=lambda i: (leads[i][0][0], tuple(-e for e in leads[i][0][1])))
        G = [G[i] for i in perm]
        leads = [leads[i] for i in perm]
        shifts = [sum(m) + prev_shifts[c] for (c, m), _ in leads]
        matrix = [_vec_to_column(v, len(prev_shifts), ring) for v in G]
        levels.append((shifts, matrix))
        weights = [tuple(a + b for a, b in zip(leads[i][0][1], prev_weights[leads[i][0][0]])) for i in range(len(G))]
        syz = _schreyer_syzygies(G, leads, morder)
        if not syz:
            break
        vecs = syz
        prev_shifts = shifts
        prev_weights = weights
    return levels


def _to_matrices(levels, ring):
    """Convert column lists into row-major matrices a_k (rows: basis of S_{k-1})."""
    mats = []
    shifts = []
    for sh, cols in levels:
        rows = len(cols[0]) if cols else 0
        mats.append([[cols[j][i] for j in range(len(cols))] for i in range(rows)])
        shifts.append(list(sh))
    return shifts, mats


def _prune(shifts: list[list[int]], mats: list[list[list[RatPoly]]], ring):
    """Split off unit entries until every map is minimal."""
    changed = True
    while changed:
        changed = False
        for k in range(len(mats)):
            a = mats[k]
            hit = None
            for i, row in enumerate(a):
                for j, e in enumerate(row):
                    if e and e.is_constant():
                        hit = (i, j)
                        break
                if hit:
                    break
            if hit is None:
                continue
            i, j = hit
            u = a[i][j].constant_term()
            new = []
            for p, row in enumerate(a):
                if p == i:
                    continue
                coef = a[p][j].scale(1 / u)
                new.append([a[p][q] - coef * a[i][q] for q in range(len(row)) if q != j])
            mats[k] = new
            # drop basis element i of S_{k-1} and j of S_k
            if k > 0:
                mats[k - 1] = [[e for q, e in enumerate(row) if q != i] for row in mats[k - 1]]
                del shifts[k - 1][i]
            if k + 1 < len(mats):
                del mats[k + 1][j]
            del shifts[k][j]
            changed = True
            break
    # remove trailing empty levels
    while shifts and not shifts[-1]:
        shifts.pop()
        mats.pop()
    for k in range(len(mats)):
        cols = len(shifts[k])
        if k + 1 < len(mats) and len(mats[k + 1]) != cols:
            raise ResolutionError("inconsistent matrix shapes after pruning")
    return shifts, mats


def minimal_free_resolution(ideal: Sequence[RatPoly], order: str = "grevlex") -> Resolution:
    """Minimal graded free resolution of S/J for homogeneous generators of J."""
    ideal = [p for p in ideal]
    if not ideal:
        raise ResolutionError("need the ambient ring; use empty_resolution(ring)")
    ring = ideal[0].ring
    for p in ideal:
        if p.ring != ring:
            raise RingMismatch("generators live in different rings")
    _check_homogeneous(ideal)
    ideal = [p for p in ideal if p]
    if not ideal:
        return Resolution(ring, (), ())
    levels = _schreyer_levels(ideal, order, max_levels=len(ring) + 2)
    shifts, mats = _to_matrices(levels, ring)
    shifts, mats = _prune(shifts, mats, ring)
    notes = []
    if len(shifts) > len(ring) - 1:
        msg = f"resolution length {len(shifts)} exceeds N = {len(ring) - 1}; ideal is not of pure dimension"
        warnings.warn(msg)
        notes.append(msg)
    return Resolution(
        ring,
        tuple(tuple(d) for d in shifts),
        tuple(tuple(tuple(r) for r in a) for a in mats),
        tuple(notes),
    )


def empty_resolution(ring) -> Resolution:
    return Resolution(tuple(ring), (), ())


def kappa0_of(res: Resolution) -> int:
    """Largest shift d_k^i over the whole resolution (0 when M = 0, from d_0 = 0)."""
    return max((x for d in res.shifts for x in d), default=0)


@dataclass(frozen=True)
class Regularity:
    cm: int
    literal: int
    empty: bool = False

    @property
    def discrepancy(self) -> bool:
        return self.cm != self.literal


def regularity(res: Resolution) -> Regularity:
    """Castelnuovo-Mumford regularity of J, max(d_k^i - k) + 1, alongside 1 + max d_k^i."""
    if res.length == 0:
        return Regularity(0, 0, True)
    cm = max(x - k for k, d in enumerate(res.shifts, start=1) for x in d) + 1
    return Regularity(cm, 1 + kappa0_of(res))


def check_resolution(res: Resolution) -> list[str]:
    """Return a list of violated invariants (empty means OK)."""
    problems = []
    ring = res.ring
    prev = [0]
    for k, (d, a) in enumerate(zip(res.shifts, res.maps), start=1):
        if len(a) != len(prev) or any(len(r) != len(d) for r in a):
            problems.append(f"a_{k} has wrong shape")
            continue
        for i, row in enumerate(a):
            for j, e in enumerate(row):
                if e.is_zero():
                    continue
                if not e.is_homogeneous() or e.total_degree() != d[j] - prev[i]:
                    problems.append(f"a_{k}[{i}][{j}] has wrong degree")
                if e.is_constant():
                    problems.append(f"a_{k}[{i}][{j}] is a unit")
        prev = list(d)
    for k in range(len(res.maps) - 1):
        A, B = res.maps[k], res.maps[k + 1]
        for i in range(len(A)):
            for j in range(len(B[0])):
                s = RatPoly.zero(ring)
                for t in range(len(B)):
                    s = s + A[i][t] * B[t][j]
                if s:
                    problems.append(f"a_{k + 1} * a_{k + 2} != 0 at ({i},{j})")
    return problems
