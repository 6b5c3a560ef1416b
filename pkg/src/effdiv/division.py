"""Division certificates sum F_j Q_j = Phi on V with deg F_j Q_j <= rho."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bounds import BoundParams, DegreeBound, rho_bound_general
from .groebner import GroebnerBasis, normal_form
from .linalg import DimensionOverflow, solve_exact
from .poly import RatPoly, RingMismatch, format_poly, monomials_up_to, order_key
from .variety import affine_variety

log = logging.getLogger(__name__)

DEFAULT_MAX_UNKNOWNS = 4000


class DivisionError(RuntimeError):
    pass


@dataclass(frozen=True)
class DivisionProblem:
    V_gens: tuple[RatPoly, ...]
    F: tuple[RatPoly, ...]
    Phi: RatPoly
    rho: int

    def __post_init__(self):
        object.__setattr__(self, "V_gens", tuple(self.V_gens))
        object.__setattr__(self, "F", tuple(self.F))
        if not self.F:
            raise DivisionError("F must be nonempty")
        ring = self.Phi.ring
        for p in self.V_gens + self.F:
            if p.ring != ring:
                raise RingMismatch("problem polynomials live in different rings")
        if any(f.is_zero() for f in self.F):
            raise DivisionError("F_j must be nonzero")
        if self.rho < max(f.total_degree() for f in self.F):
            raise DivisionError(f"rho = {self.rho} is below max deg F_j")

    @property
    def ring(self):
        return self.Phi.ring


@dataclass(frozen=True)
class Certificate:
    Q: tuple[RatPoly, ...]
    rho_used: int
    residual: RatPoly
    bound_trace: DegreeBound | None = None
    mu0: int = 0
    verified: bool = False

    def to_json(self) -> dict:
        return {
            "rho": self.rho_used,
            "mu0": self.mu0,
            "Q": [format_poly(q) for q in self.Q],
            "verified": self.verified,
            "branch": self.bound_trace.branch if self.bound_trace else "given",
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


@dataclass(frozen=True)
class Infeasible:
    rho: int
    unknowns: int = 0

    def __bool__(self):
        return False


@dataclass
class LinearSystem:
    A: list[list[Fraction]]
    b: list[Fraction]
    unknowns: list[tuple[int, tuple]]  # (j, monomial of Q_j)
    rows: list[tuple]  # standard monomials indexing equations
    column_order: list[int] = field(default_factory=list)


def _gb_for(p: DivisionProblem) -> GroebnerBasis:
    return affine_variety(p.ring, p.V_gens).gb


def build_division_system(p: DivisionProblem, gb: GroebnerBasis | None = None) -> LinearSystem:
    """Unknowns: coefficients of Q_j on monomials of degree <= rho - deg F_j.
    Equations: every coefficient of NF(sum F_j Q_j - Phi) vanishes.
    """
    if gb is None:
        gb = _gb_for(p)
    n = len(p.ring)
    cols: list[dict] = []
    unknowns = []
    for j, F in enumerate(p.F):
        for mono in monomials_up_to(n, p.rho - int(F.total_degree())):
            cols.append(normal_form(F.mul_term(mono, 1), gb).terms)
            unknowns.append((j, mono))
    rhs = normal_form(p.Phi, gb).terms
    rowset = set(rhs)
    for c in cols:
        rowset.update(c)
    key = order_key("grevlex")
    rows = sorted(rowset, key=key, reverse=True)
    ridx = {m: i for i, m in enumerate(rows)}
    A = [[Fraction(0)] * len(cols) for _ in rows]
    for jcol, c in enumerate(cols):
        for m, v in c.items():
            A[ridx[m]][jcol] = v
    b = [Fraction(0)] * len(rows)
    for m, v in rhs.items():
        b[ridx[m]] = v
    # pivot low-degree unknowns first so that high-degree ones stay free (= 0)
    order = sorted(range(len(unknowns)), key=lambda i: (sum(unknowns[i][1]), key(unknowns[i][1]), unknowns[i][0]))
    return LinearSystem(A, b, unknowns, rows, order)


def solve_certificate(p: DivisionProblem, max_unknowns: int = DEFAULT_MAX_UNKNOWNS,
                      gb: GroebnerBasis | None = None, bound: DegreeBound | None = None,
                      mu0: int = 0) -> Certificate | Infeasible:
    if gb is None:
        gb = _gb_for(p)
    system = build_division_system(p, gb)
    if len(system.unknowns) > max_unknowns:
        raise DimensionOverflow(f"{len(system.unknowns)} unknowns exceeds cap {max_unknowns}")
    x = solve_exact(system.A, system.b, system.column_order)
    if x is None:
        return Infeasible(p.rho, len(system.unknowns))
    ring = p.ring
    Q = [dict() for _ in p.F]
    for (j, mono), v in zip(system.unknowns, x):
        if v:
            Q[j][mono] = v
    Qs = tuple(RatPoly(ring, q) for q in Q)
    residual = normal_form(_combination(p.F, Qs, ring) - p.Phi, gb)
    cert = Certificate(Qs, p.rho, residual, bound, mu0)
    ok = verify_certificate(cert, p, gb)
    if not ok:
        raise DivisionError("internal error: solver produced a certificate that fails verification")
    return Certificate(Qs, p.rho, residual, bound, mu0, True)


def _combination(F, Q, ring) -> RatPoly:
    s = RatPoly.zero(ring)
    for f, q in zip(F, Q):
        s = s + f * q
    return s


def verify_certificate(c: Certificate, p: DivisionProblem, gb: GroebnerBasis | None = None) -> bool:
    """Residual normal form is zero and every deg(F_j Q_j) <= rho_used."""
    if len(c.Q) != len(p.F):
        return False
    for q in c.Q:
        if q.ring != p.ring:
            return False
    if gb is None:
        gb = _gb_for(p)
    if normal_form(_combination(p.F, c.Q, p.ring) - p.Phi, gb):
        return False
    for f, q in zip(p.F, c.Q):
        if q and (f * q).total_degree() > c.rho_used:
            return False
    return True


def residual_of(c: Certificate, p: DivisionProblem) -> RatPoly:
    return normal_form(_combination(p.F, c.Q, p.ring) - p.Phi, _gb_for(p))


@dataclass(frozen=True)
class CertificateFailure:
    last_rho: int
    last_mu0: int
    reason: str

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"verified": False, "rho": self.last_rho, "mu0": self.last_mu0, "reason": self.reason}


def problem_params(F: Sequence[RatPoly], V_gens: Sequence[RatPoly], Phi: RatPoly | None = None,
                   **overrides) -> tuple[BoundParams, int]:
    """BoundParams and kappa0 derived from the data (d, m, n, N, deg X, deg Phi)."""
    ring = F[0].ring
    V = affine_variety(ring, V_gens)
    d = max(int(f.total_degree()) for f in F)
    degPhi = 0 if Phi is None or Phi.is_zero() else int(Phi.total_degree())
    kw = dict(d=max(d, 1), m=len(F), n=V.n, N=V.N, degX=V.degree, degPhi=degPhi)
    kw.update(overrides)
    return BoundParams(**kw), V.kappa0


def divide_with_bound(F, V_gens, Phi, params: BoundParams, kappa0: int, mu0_cap: int = 4,
                      max_unknowns: int = DEFAULT_MAX_UNKNOWNS):
    """Solve at the general bound; on infeasibility raise mu0 up to ``mu0_cap``."""
    ring = Phi.ring
    gb = affine_variety(ring, V_gens).gb
    last = None
    for mu0 in range(params.mu0, mu0_cap + 1):
        bound = rho_bound_general(params.with_(mu0=mu0), kappa0)
        rho = max(bound.rho, max(int(f.total_degree()) for f in F))
        prob = DivisionProblem(tuple(V_gens), tuple(F), Phi, rho)
        if last is not None and last[0] == rho:
            last = (rho, mu0)
            continue
        res = solve_certificate(prob, max_unknowns, gb, bound, mu0)
        if res:
            return res
        last = (rho, mu0)
        log.info("infeasible at rho=%d (mu0=%d); escalating", rho, mu0)
    return CertificateFailure(last[0], last[1], f"no certificate up to mu0 = {mu0_cap}")


def nullstellensatz_certificate(F: Sequence[RatPoly], V_gens: Sequence[RatPoly] = (),
                                params: BoundParams | None = None, kappa0: int | None = None,
                                mu0_cap: int = 4, max_unknowns: int = DEFAULT_MAX_UNKNOWNS):
    """Certificate for sum F_j Q_j = 1 on V at the general degree bound."""
    F = list(F)
    ring = F[0].ring
    one = RatPoly.const(ring, 1)
    if params is None or kappa0 is None:
        p2, k2 = problem_params(F, V_gens, one)
        params = params or p2
        kappa0 = k2 if kappa0 is None else kappa0
    return divide_with_bound(F, V_gens, one, params.with_(degPhi=0), kappa0, mu0_cap, max_unknowns)
