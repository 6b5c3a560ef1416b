"""Affine varieties V in C^N and their projective closures X in P^N."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .groebner import GroebnerBasis, groebner_basis
from .poly import RatPoly, homogenize
from .resolution import Resolution, empty_resolution, kappa0_of, minimal_free_resolution, regularity


def hilbert_numerator(res: Resolution) -> list[int]:
    """Coefficients of sum_k (-1)^k sum_i t^(d_k^i), the K-polynomial of S/J."""
    top = max((x for d in res.shifts for x in d), default=0)
    K = [0] * (top + 1)
    K[0] = 1
    for k, d in enumerate(res.shifts, start=1):
        for x in d:
            K[x] += (-1) ** k
    return K


def dimension_and_degree(res: Resolution) -> tuple[int, int]:
    """Projective dimension and degree of V(J) read off the K-polynomial."""
    N = len(res.ring) - 1
    K = hilbert_numerator(res)
    codim = 0
    while sum(K) == 0:
        # synthetic division by (1 - t)
        q = []
        acc = 0
        for c in K[:-1]:
            acc += c
            q.append(acc)
        K = q
        codim += 1
    return N - codim, sum(K)


@dataclass(frozen=True)
class AffineVariety:
    """V = Z(I) in C^N given by generators of its (assumed radical) ideal."""

    ring: tuple[str, ...]
    gens: tuple[RatPoly, ...] = ()
    hvar: str = "z0"

    @cached_property
    def gb(self) -> GroebnerBasis:
        if not self.gens:
            return GroebnerBasis((), "grevlex", self.ring)
        return groebner_basis(list(self.gens), "grevlex")

    @property
    def N(self) -> int:
        return len(self.ring)

    @cached_property
    def closure_ideal(self) -> list[RatPoly]:
        """Generators of J_X: homogenizations of a degree-compatible Groebner basis."""
        return [homogenize(g, int(g.total_degree()), self.hvar) for g in self.gb.generators]

    @property
    def projective_ring(self) -> tuple[str, ...]:
        return (self.hvar,) + self.ring

    @cached_property
    def resolution(self) -> Resolution:
        J = [g for g in self.closure_ideal if g]
        if not J:
            return empty_resolution(self.projective_ring)
        return minimal_free_resolution(J)

    @cached_property
    def kappa0(self) -> int:
        return kappa0_of(self.resolution)

    @cached_property
    def dim_deg(self) -> tuple[int, int]:
        return dimension_and_degree(self.resolution)

    @property
    def n(self) -> int:
        return self.dim_deg[0]

    @property
    def degree(self) -> int:
        return self.dim_deg[1]

    @property
    def regularity(self):
        return regularity(self.resolution)


def affine_variety(ring: Sequence[str], gens: Sequence[RatPoly] = (), hvar: str = "z0") -> AffineVariety:
    ring = tuple(ring)
    while hvar in ring:
        hvar = hvar + "_"
    return AffineVariety(ring, tuple(g for g in gens if g), hvar)
