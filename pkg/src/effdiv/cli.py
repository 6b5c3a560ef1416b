"""Command-line front end.

Problem files are sequences of ``;``-terminated statements::

    ring x, y;
    variety: y - x^2;
    F: x;
    F: 1 - x;
    phi: 1;
    option rho = 3;

``#`` starts a comment.  Every command prints one JSON document on stdout.
Exit codes: 0 success, 2 infeasible or failed check, 1 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .bounds import BoundError, BoundParams, jelonek_bound, no_zeros_at_infinity, rho_bound_general, rho_bound_smooth
from .division import (
    DEFAULT_MAX_UNKNOWNS,
    DivisionError,
    DivisionProblem,
    divide_with_bound,
    problem_params,
    solve_certificate,
)
from .linalg import DimensionOverflow
from .poly import NEG_INF, ParseError, PolyError, RatPoly, homogenize, parse_poly, parse_ring
from .resolution import minimal_free_resolution, regularity
from .variety import affine_variety, dimension_and_degree


class InputError(Exception):
    pass


@dataclass
class ProblemFile:
    ring: tuple = ()
    variety: list = field(default_factory=list)
    F: list = field(default_factory=list)
    phi: RatPoly | None = None
    options: dict = field(default_factory=dict)


def _statements(text: str):
    """Yield (line number, statement) for each ';'-terminated statement."""
    buf, start, line = [], None, 1
    for ch in text:
        if ch == "\n":
            line += 1
        if ch == ";":
            stmt = "".join(buf).strip()
            if stmt:
                yield start, stmt
            buf, start = [], None
            continue
        if start is None and not ch.isspace():
            start = line
        buf.append(ch)
    rest = "".join(buf).strip()
    if rest:
        raise InputError(f"line {start}: statement not terminated by ';'")


def _strip_comments(text: str) -> str:
    return "\n".join(l.split("#", 1)[0] for l in text.splitlines())


def parse_problem(text: str) -> ProblemFile:
    pf = ProblemFile()
    for line, stmt in _statements(_strip_comments(text)):
        try:
            head, _, body = stmt.partition(" ")
            low = stmt.lower()
            if head.lower() == "ring":
                if pf.ring:
                    raise InputError("ring declared twice")
                pf.ring = parse_ring(body)
                continue
            if low.startswith("option"):
                key, eq, val = stmt[len("option"):].partition("=")
                if not eq or not key.strip():
                    raise InputError("expected 'option key = value'")
                pf.options[key.strip()] = val.strip()
                continue
            key, colon, body = stmt.partition(":")
            key = key.strip().lower()
            if not colon or key not in ("variety", "f", "phi"):
                raise InputError(f"unknown statement {stmt.split()[0]!r}")
            if not pf.ring:
                raise InputError("ring must be declared before polynomials")
            p = parse_poly(body.strip(), pf.ring)
            if key == "variety":
                pf.variety.append(p)
            elif key == "f":
                pf.F.append(p)
            else:
                if pf.phi is not None:
                    raise InputError("phi given twice")
                pf.phi = p
        except ParseError as e:
            raise InputError(f"line {line}: {e}") from None
        except (PolyError, InputError) as e:
            raise InputError(f"line {line}: {e}") from None
    if not pf.ring:
        raise InputError("missing ring declaration")
    return pf


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _int_opt(pf: ProblemFile, key: str, default=None):
    if key not in pf.options:
        return default
    try:
        return int(pf.options[key])
    except ValueError:
        raise InputError(f"option {key} must be an integer") from None


def _c_inf(arg):
    if arg is None or arg == "auto":
        return None
    if arg == "neg-inf":
        return NEG_INF
    try:
        return int(arg)
    except ValueError:
        raise InputError(f"--c-inf must be an integer, 'neg-inf' or 'auto', got {arg!r}") from None


def _params(pf: ProblemFile, args) -> tuple[BoundParams, int]:
    """Bound parameters from the data, overridden by options and flags."""
    keys = ("d", "m", "n", "N", "degX", "degPhi")
    explicit = {k: _int_opt(pf, k) for k in keys if k in pf.options}
    kappa0 = _int_opt(pf, "kappa0")
    flags = dict(mu0=args.mu0, mu_prime=args.mu_prime)
    c = _c_inf(args.c_inf if args.c_inf is not None else pf.options.get("c_inf"))
    if c is not None:
        flags["c_inf"] = c
    if all(k in explicit for k in ("d", "m", "n", "N")) and kappa0 is not None:
        explicit.setdefault("degX", 1)
        explicit.setdefault("degPhi", 0)
        return BoundParams(**explicit, **flags), kappa0
    if not pf.F:
        raise InputError("bound needs F (or options d, m, n, N, kappa0)")
    params, k0 = problem_params(pf.F, pf.variety, pf.phi, **explicit, **flags)
    return params, (k0 if kappa0 is None else kappa0)


# commands ------------------------------------------------------------------

def cmd_resolve(pf: ProblemFile, args):
    if pf.options.get("projective", "false").lower() == "true":
        if not pf.variety:
            raise InputError("projective resolve needs at least one variety polynomial")
        res = minimal_free_resolution(pf.variety)
    else:
        res = affine_variety(pf.ring, pf.variety).resolution
    reg = regularity(res)
    dim, deg = dimension_and_degree(res)
    out = {
        "shifts": [list(d) for d in res.shifts],
        "betti": [{str(k): v for k, v in sorted(b.items())} for b in res.betti()],
        "M": res.length,
        "N": len(res.ring) - 1,
        "kappa0": max((x for d in res.shifts for x in d), default=0),
        "regularity": {"cm": reg.cm, "literal": reg.literal},
        "dim": dim,
        "degree": deg,
        "warnings": list(res.warnings),
    }
    return 0, out


def cmd_bound(pf: ProblemFile, args):
    params, k0 = _params(pf, args)
    gen = rho_bound_general(params, k0)
    out = {
        "params": params.to_json(),
        "kappa0": k0,
        "general": gen.to_json(),
        "smooth": rho_bound_smooth(params, k0).to_json(),
        "jelonek": jelonek_bound(params.d, params.m, params.n, params.degX),
        "rho": gen.rho,
    }
    if pf.F:
        V = affine_variety(pf.ring, pf.variety)
        d = params.d
        hom = [homogenize(f, d, V.hvar) for f in pf.F]
        J = [g for g in V.closure_ideal if g]
        out["no_zeros_at_infinity"] = no_zeros_at_infinity(hom, J, 0)
    return 0, out


def _solve(pf: ProblemFile, args, phi: RatPoly):
    if not pf.F:
        raise InputError("F must be nonempty")
    rho = args.rho if args.rho is not None else _int_opt(pf, "rho")
    if rho is not None:
        prob = DivisionProblem(tuple(pf.variety), tuple(pf.F), phi, rho)
        res = solve_certificate(prob, args.max_unknowns)
    else:
        params, k0 = _params(pf, args)
        res = divide_with_bound(pf.F, pf.variety, phi, params.with_(degPhi=0 if phi.is_zero() else int(phi.total_degree())),
                                k0, max(args.mu0_cap, params.mu0), args.max_unknowns)
    if res:
        return 0, res.to_json()
    if hasattr(res, "to_json"):
        return 2, res.to_json()
    return 2, {"verified": False, "rho": res.rho, "unknowns": res.unknowns, "reason": "infeasible at this rho"}


def cmd_divide(pf: ProblemFile, args):
    if pf.phi is None:
        raise InputError("divide needs phi")
    return _solve(pf, args, pf.phi)


def cmd_nullsatz(pf: ProblemFile, args):
    return _solve(pf, args, RatPoly.const(pf.ring, 1))


def _load_cfg(args):
    from .kernels.quadrature import QuadratureConfig

    if args.config:
        with open(args.config) as fh:
            return QuadratureConfig.from_json(json.load(fh))
    return QuadratureConfig(tol=1e-8)


def cmd_kernel_check(pf: ProblemFile, args):
    from .kernels import checks

    report = checks.run_suite(pf, seed=args.seed, cfg=_load_cfg(args))
    ok = all(item["pass"] for item in report)
    return (0 if ok else 2), {"checks": report, "pass": ok}


def cmd_kernel_divide(pf: ProblemFile, args):
    from .kernels import checks

    rows = checks.kernel_divide_table(pf, seed=args.seed, cfg=_load_cfg(args),
                                      samples=_int_opt(pf, "samples", 5), rho=args.rho or _int_opt(pf, "rho"))
    return 0, {"points": rows}


COMMANDS = {
    "resolve": cmd_resolve,
    "bound": cmd_bound,
    "divide": cmd_divide,
    "nullsatz": cmd_nullsatz,
    "kernel-check": cmd_kernel_check,
    "kernel-divide": cmd_kernel_divide,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="effdiv", description="Effective division on affine varieties.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("file", help="problem file ('-' for stdin)")
    ap.add_argument("--mu0", type=int, default=0)
    ap.add_argument("--mu-prime", type=int, default=0)
    ap.add_argument("--c-inf", default=None, help="integer, 'neg-inf' or 'auto' (default: mu)")
    ap.add_argument("--rho", type=int, default=None, help="solve at this degree instead of the bound")
    ap.add_argument("--mu0-cap", type=int, default=4)
    ap.add_argument("--max-unknowns", type=int, default=DEFAULT_MAX_UNKNOWNS)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--config", default=None, help="quadrature config JSON file")
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file) as fh:
                text = fh.read()
        pf = parse_problem(text)
        code, out = COMMANDS[args.command](pf, args)
    except OSError as e:
        print(f"error: {e}", file=stderr)
        return 1
    except (InputError, PolyError, BoundError, DivisionError) as e:
        print(f"error: {e}", file=stderr)
        return 1
    except DimensionOverflow as e:
        print(f"error: {e}", file=stderr)
        return 2
    print(_dump(out), file=stdout)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
