"""Degree bounds for polynomial division on affine varieties."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .groebner import GroebnerBasis, groebner_basis
from .poly import NEG_INF, PolyError, RatPoly


class BoundError(ValueError):
    pass


def is_neg_inf(c) -> bool:
    return c is None or c == NEG_INF


@dataclass(frozen=True)
class BoundParams:
    d: int
    m: int
    n: int
    N: int
    degX: int = 1
    c_inf: float | int = None  # None means "use mu"
    mu0: int = 0
    mu_prime: int = 0
    degPhi: int = 0

    def __post_init__(self):
        if not 1 <= self.n <= self.N:
            raise BoundError(f"need 1 <= n <= N, got n={self.n}, N={self.N}")
        if self.m < 1 or self.d < 1 or self.degX < 1:
            raise BoundError("need m, d, degX >= 1")
        if self.mu0 < 0 or self.mu_prime < 0:
            raise BoundError("mu0 and mu_prime must be non-negative")
        if self.c_inf is None:
            object.__setattr__(self, "c_inf", mu_of(self.m, self.n))
        elif not is_neg_inf(self.c_inf):
            if int(self.c_inf) != self.c_inf or self.c_inf < 0:
                raise BoundError(f"c_inf must be a non-negative integer or -inf, got {self.c_inf}")
            if self.c_inf > mu_of(self.m, self.n):
                raise BoundError(f"c_inf = {self.c_inf} exceeds mu = {mu_of(self.m, self.n)}")
            object.__setattr__(self, "c_inf", int(self.c_inf))
        else:
            object.__setattr__(self, "c_inf", NEG_INF)

    @property
    def mu(self) -> int:
        return mu_of(self.m, self.n)

    def with_(self, **kw) -> BoundParams:
        return replace(self, **kw)

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["c_inf"] = "neg-inf" if is_neg_inf(self.c_inf) else self.c_inf
        return d


@dataclass(frozen=True)
class DegreeBound:
    rho: int
    branch: str  # "first" (degree of Phi term) or "base"
    formula_tag: str  # polupp | polupp2 | jelonek | base
    first: int | None = None
    base: int | None = None

    def to_json(self) -> dict:
        return dict(self.__dict__)


def mu_of(m: int, n: int) -> int:
    if m < 1 or n < 1:
        raise BoundError("m and n must be positive")
    return min(m, n)


def _power_term(d: int, c_inf, degX: int) -> int:
    # d^(-inf) * degX is defined to be 0
    if is_neg_inf(c_inf):
        return 0
    return d ** int(c_inf) * degX


def base_degree(p: BoundParams, kappa0: int) -> int:
    return p.d * min(p.m, p.n + 1) + kappa0 - p.N


def rho_bound_general(p: BoundParams, kappa0: int) -> DegreeBound:
    first = p.degPhi + (p.mu + p.mu0) * _power_term(p.d, p.c_inf, p.degX)
    base = base_degree(p, kappa0)
    if first >= base:
        return DegreeBound(first, "first", "polupp", first, base)
    return DegreeBound(base, "base", "polupp", first, base)


def rho_bound_smooth(p: BoundParams, kappa0: int) -> DegreeBound:
    first = p.degPhi + p.mu * _power_term(p.d, p.c_inf, p.degX) + p.mu_prime
    base = base_degree(p, kappa0)
    if first >= base:
        return DegreeBound(first, "first", "polupp2", first, base)
    return DegreeBound(base, "base", "polupp2", first, base)


def jelonek_bound(d: int, m: int, n: int, degX: int) -> int:
    c_m = 1 if m <= n else 2
    return c_m * d ** mu_of(m, n) * degX


def regularity_bound(p: BoundParams, reg: int) -> int:
    """Comparison value d*min(m,n+1) + reg X - min(m,n+1); reported, never used to choose rho."""
    k = min(p.m, p.n + 1)
    return p.d * k + reg - k


def no_zeros_at_infinity(f_list: Sequence[RatPoly], J_X: GroebnerBasis | Sequence[RatPoly] = (),
                         hvar: int = 0) -> bool:
    """True iff f_1 = ... = f_m = 0, z_hvar = 0 has no projective solution on X.

    Decided by checking that the Groebner basis of (f) + (z_hvar) + J_X contains a
    pure power of every variable among its leading monomials.
    """
    f_list = list(f_list)
    if not f_list:
        raise PolyError("empty f list")
    ring = f_list[0].ring
    for f in f_list:
        if not f.is_homogeneous():
            raise PolyError(f"{f} is not homogeneous")
    jx = list(J_X.generators) if isinstance(J_X, GroebnerBasis) else list(J_X)
    for g in jx:
        if not g.is_homogeneous():
            raise PolyError(f"{g} is not homogeneous")
    z0 = RatPoly.var(ring, ring[hvar])
    return empty_projective_zero_set(f_list + [z0] + jx)


def empty_projective_zero_set(polys: Sequence[RatPoly]) -> bool:
    """True iff the homogeneous ideal is irrelevant (contains a power of every variable)."""
    gb = groebner_basis(list(polys))
    if gb.is_unit_ideal():
        return True
    lms = [g.leading_monomial(gb.order) for g in gb.generators]
    n = len(polys[0].ring)
    return all(any(m[i] > 0 and sum(m) == m[i] for m in lms) for i in range(n))
