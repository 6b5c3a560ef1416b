"""Buchberger's algorithm with sugar selection and both Buchberger criteria."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import (
    RatPoly,
    RingMismatch,
    mono_divides,
    mono_lcm,
    order_key,
)


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[RatPoly, ...]
    order: str = "grevlex"
    ring: tuple[str, ...] = ()

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def contains(self, p: RatPoly) -> bool:
        return normal_form(p, self).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)


def _lead(terms: dict, key):
    m = max(terms, key=key)
    return m, terms[m]


def _reduce(terms: dict, basis: list[tuple[tuple, Fraction, dict]], key) -> dict:
    """Full reduction of ``terms`` against (lm, lc, terms) triples; returns the remainder."""
    p = dict(terms)
    rem: dict = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, lc, g in basis:
            if mono_divides(lm, m):
                q = tuple(a - b for a, b in zip(m, lm))
                f = c / lc
                for gm, gc in g.items():
                    mm = tuple(a + b for a, b in zip(gm, q))
                    v = p.get(mm, 0) - f * gc
                    if v:
                        p[mm] = v
                    else:
                        p.pop(mm, None)
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _spoly(f: dict, flm, flc, g: dict, glm, glc) -> dict:
    lcm = mono_lcm(flm, glm)
    qf = tuple(a - b for a, b in zip(lcm, flm))
    qg = tuple(a - b for a, b in zip(lcm, glm))
    out: dict = {}
    for m, c in f.items():
        mm = tuple(a + b for a, b in zip(m, qf))
        out[mm] = out.get(mm, 0) + c / flc
    for m, c in g.items():
        mm = tuple(a + b for a, b in zip(m, qg))
        v = out.get(mm, 0) - c / glc
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return {m: c for m, c in out.items() if c}


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def groebner_basis(ideal: Sequence[RatPoly], order: str = "grevlex") -> GroebnerBasis:
    """Reduced, monic Groebner basis of the ideal generated by ``ideal``.

    Pairs are processed in order of increasing sugar; the product criterion and
    the chain criterion discard pairs that are known to reduce to zero.
    """
    ideal = list(ideal)
    if not ideal:
        raise ValueError("groebner_basis needs at least one generator")
    ring = ideal[0].ring
    for p in ideal:
        if p.ring != ring:
            raise RingMismatch("generators live in different rings")
    key = order_key(order)

    G: list[dict] = []
    LM: list[tuple] = []
    LC: list[Fraction] = []
    sugar: list[int] = []
    pairs: dict[tuple[int, int], int] = {}
    done: set[tuple[int, int]] = set()

    def add(terms: dict, s: int):
        lm, lc = _lead(terms, key)
        terms = {m: c / lc for m, c in terms.items()}
        idx = len(G)
        G.append(terms)
        LM.append(lm)
        LC.append(Fraction(1))
        sugar.append(s)
        for j in range(idx):
            lcm = mono_lcm(LM[j], lm)
            sj = sugar[j] + sum(lcm) - sum(LM[j])
            si = s + sum(lcm) - sum(lm)
            pairs[(j, idx)] = max(si, sj)

    basis_view = lambda: [(LM[i], LC[i], G[i]) for i in range(len(G))]

    for p in ideal:
        if p.terms:
            r = _reduce(p.terms, basis_view(), key) if G else dict(p.terms)
            if r:
                add(r, max(sum(m) for m in p.terms))
    if not G:
        return GroebnerBasis((), order, ring)

    while pairs:
        (i, j), s = min(pairs.items(), key=lambda kv: (kv[1], key(mono_lcm(LM[kv[0][0]], LM[kv[0][1]])), kv[0]))
        del pairs[(i, j)]
        done.add((i, j))
        lcm = mono_lcm(LM[i], LM[j])
        if _coprime(LM[i], LM[j]):
            continue
        chain = False
        for k in range(len(G)):
            if k in (i, j) or not mono_divides(LM[k], lcm):
                continue
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a not in pairs and b not in pairs:
                chain = True
                break
        if chain:
            continue
        sp = _spoly(G[i], LM[i], LC[i], G[j], LM[j], LC[j])
        if not sp:
            continue
        r = _reduce(sp, [(LM[k], LC[k], G[k]) for k in range(len(G))], key)
        if r:
            add(r, s)

    return GroebnerBasis(tuple(_interreduce(G, LM, key, ring)), order, ring)


def _interreduce(G: list[dict], LM: list[tuple], key, ring) -> list[RatPoly]:
    keep = []
    for i, lm in enumerate(LM):
        if any(j != i and mono_divides(LM[j], lm) and (LM[j] != lm or j < i) for j in range(len(G))):
            continue
        keep.append(i)
    out = []
    for i in keep:
        others = [(LM[j], Fraction(1), G[j]) for j in keep if j != i]
        lead = {LM[i]: G[i][LM[i]]}
        tail = {m: c for m, c in G[i].items() if m != LM[i]}
        r = _reduce(tail, others, key)
        r.update(lead)
        p = RatPoly(ring, r)
        out.append(p.monic(key))
    out.sort(key=lambda p: key(p.leading_monomial(key)))
    return out


def normal_form(p: RatPoly, gb: GroebnerBasis) -> RatPoly:
    """Remainder of full multivariate division of ``p`` by ``gb``; zero iff ``p`` is in the ideal."""
    if gb.ring and p.ring != gb.ring:
        raise RingMismatch("polynomial and basis live in different rings")
    if not gb.generators:
        return p
    key = order_key(gb.order)
    basis = [(g.leading_monomial(key), g.leading_coeff(key), g.terms) for g in gb.generators]
    return RatPoly(p.ring, _reduce(p.terms, basis, key))


def divide(p: RatPoly, divisors: Sequence[RatPoly], order: str = "grevlex"):
    """Multivariate long division: returns (quotients, remainder)."""
    key = order_key(order)
    ring = p.ring
    qs = [dict() for _ in divisors]
    lead = [(d.leading_monomial(key), d.leading_coeff(key)) for d in divisors]
    rem: dict = {}
    work = dict(p.terms)
    while work:
        m = max(work, key=key)
        c = work[m]
        for idx, (lm, lc) in enumerate(lead):
            if mono_divides(lm, m):
                q = tuple(a - b for a, b in zip(m, lm))
                f = c / lc
                qs[idx][q] = qs[idx].get(q, 0) + f
                for gm, gc in divisors[idx].terms.items():
                    mm = tuple(a + b for a, b in zip(gm, q))
                    v = work.get(mm, 0) - f * gc
                    if v:
                        work[mm] = v
                    else:
                        work.pop(mm, None)
                break
        else:
            rem[m] = c
            del work[m]
    return [RatPoly(ring, q) for q in qs], RatPoly(ring, rem)


def spairs_reduce_to_zero(gb: GroebnerBasis) -> bool:
    """Independent check of the Groebner property: every S-polynomial reduces to 0."""
    key = order_key(gb.order)
    gens = list(gb.generators)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            f, g = gens[i], gens[j]
            sp = _spoly(f.terms, f.leading_monomial(key), f.leading_coeff(key),
                        g.terms, g.leading_monomial(key), g.leading_coeff(key))
            if normal_form(RatPoly(f.ring, sp), gb):
                return False
    return True
