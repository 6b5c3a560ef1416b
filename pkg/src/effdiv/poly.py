"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

Monomial = tuple  # tuple[int, ...]

NEG_INF = float("-inf")


class PolyError(ValueError):
    pass


class ParseError(PolyError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class RingMismatch(PolyError):
    pass


# --- monomial orders -------------------------------------------------------

def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def grlex_key(m: Monomial):
    return (sum(m), m)


def lex_key(m: Monomial):
    return m


ORDERS: dict[str, Callable] = {
    "grevlex": grevlex_key,
    "grlex": grlex_key,
    "lex": lex_key,
}


def order_key(order: str | Callable) -> Callable:
    if callable(order):
        return order
    try:
        return ORDERS[order]
    except KeyError:
        raise PolyError(f"unknown monomial order {order!r}") from None


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(b: Monomial, a: Monomial) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(nvars: int, deg: int):
    """All exponent vectors in ``nvars`` variables of total degree ``deg``."""
    if nvars == 0:
        if deg == 0:
            yield ()
        return
    if nvars == 1:
        yield (deg,)
        return
    for e in range(deg, -1, -1):
        for rest in monomials_of_degree(nvars - 1, deg - e):
            yield (e,) + rest


def monomials_up_to(nvars: int, deg: int) -> list[Monomial]:
    out: list[Monomial] = []
    for k in range(deg + 1):
        out.extend(monomials_of_degree(nvars, k))
    return out


# --- polynomial ------------------------------------------------------------

class RatPoly:
    """Immutable polynomial over Q in an ordered tuple of variables.

    ``terms`` maps exponent tuples to nonzero :class:`fractions.Fraction`.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Sequence[str], terms: Mapping[Monomial, object] | None = None):
        self.ring = tuple(ring)
        clean: dict[Monomial, Fraction] = {}
        n = len(self.ring)
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != n:
                raise PolyError(f"monomial {m} has wrong length for ring {self.ring}")
            if any(e < 0 for e in m):
                raise PolyError(f"negative exponent in {m}")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
                if not clean[m]:
                    del clean[m]
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, ring) -> RatPoly:
        return cls(ring)

    @classmethod
    def const(cls, ring, c) -> RatPoly:
        return cls(ring, {(0,) * len(tuple(ring)): c})

    @classmethod
    def var(cls, ring, name: str) -> RatPoly:
        ring = tuple(ring)
        if name not in ring:
            raise PolyError(f"unknown variable {name!r}")
        i = ring.index(name)
        return cls(ring, {tuple(int(j == i) for j in range(len(ring))): 1})

    @classmethod
    def monomial(cls, ring, exps: Monomial, c=1) -> RatPoly:
        return cls(ring, {tuple(exps): c})

    @classmethod
    def _raw(cls, ring: tuple, terms: dict) -> RatPoly:
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # basic queries
    @property
    def nvars(self) -> int:
        return len(self.ring)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self):
        """Maximum term degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(m) for m in self.terms)

    degree = total_degree

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def coeff(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def sorted_terms(self, order="grevlex"):
        key = order_key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order="grevlex") -> Monomial:
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        return max(self.terms, key=order_key(order))

    def leading_coeff(self, order="grevlex") -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order="grevlex") -> RatPoly:
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coeff(order))

    def homogeneous_part(self, deg: int) -> RatPoly:
        return RatPoly._raw(self.ring, {m: c for m, c in self.terms.items() if sum(m) == deg})

    # arithmetic
    def _check(self, other: RatPoly):
        if self.ring != other.ring:
            raise RingMismatch(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> RatPoly:
        if isinstance(other, RatPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly.const(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return RatPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return RatPoly._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return RatPoly._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise PolyError("negative power")
        result = RatPoly.const(self.ring, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> RatPoly:
        c = Fraction(c)
        if not c:
            return RatPoly._raw(self.ring, {})
        return RatPoly._raw(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> RatPoly:
        c = Fraction(c)
        if not c:
            return RatPoly._raw(self.ring, {})
        return RatPoly._raw(
            self.ring, {tuple(x + y for x, y in zip(m, mono)): v * c for m, v in self.terms.items()}
        )

    def diff(self, var: str | int) -> RatPoly:
        i = var if isinstance(var, int) else self.ring.index(var)
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return RatPoly._raw(self.ring, out)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatPoly.const(self.ring, other)
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # evaluation / substitution
    def __call__(self, *values):
        return self.evaluate(values)

    def evaluate(self, values: Sequence):
        """Evaluate at a point; values may be Fractions, floats or complex."""
        if len(values) != self.nvars:
            raise PolyError(f"expected {self.nvars} values, got {len(values)}")
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    t = t * v**e
            total = total + t
        return total

    def eval_numeric(self, values) -> complex:
        total = 0j
        for m, c in self.terms.items():
            t = complex(c)
            for v, e in zip(values, m):
                if e:
                    t *= v**e
            total += t
        return total

    def substitute(self, mapping: Mapping[str, RatPoly], ring: Sequence[str]) -> RatPoly:
        """Replace each variable by a polynomial in ``ring`` (missing names map to themselves)."""
        ring = tuple(ring)
        images = []
        for name in self.ring:
            if name in mapping:
                img = mapping[name]
                if img.ring != ring:
                    raise RingMismatch("substitution image in wrong ring")
            else:
                img = RatPoly.var(ring, name)
            images.append(img)
        out = RatPoly.zero(ring)
        powers: dict = {}
        for m, c in self.terms.items():
            t = RatPoly.const(ring, c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = images[i] ** e
                    t = t * powers[key]
            out = out + t
        return out

    def embed(self, ring: Sequence[str]) -> RatPoly:
        """Reinterpret in a larger ring containing all variables of this one."""
        ring = tuple(ring)
        idx = []
        for name in self.ring:
            if name not in ring:
                raise RingMismatch(f"variable {name!r} missing from target ring")
            idx.append(ring.index(name))
        out = {}
        for m, c in self.terms.items():
            mm = [0] * len(ring)
            for i, e in zip(idx, m):
                mm[i] = e
            out[tuple(mm)] = c
        return RatPoly._raw(ring, out)

    # formatting
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"RatPoly({format_poly(self)!r}, ring={self.ring})"


def format_poly(p: RatPoly, order="grevlex") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for m, c in p.sorted_terms(order):
        mono = "*".join(
            name if e == 1 else f"{name}^{e}" for name, e in zip(p.ring, m) if e
        )
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


# --- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            break
        if mt.group(1) is not None:
            toks.append(("int", int(mt.group(1)), mt.start(1)))
        elif mt.group(2) is not None:
            toks.append(("var", mt.group(2), mt.start(2)))
        elif mt.group(3) is not None:
            toks.append(("op", mt.group(3), mt.start(3)))
        pos = mt.end()
    toks.append(("end", None, len(text)))
    return toks


def parse_poly(text: str, ring: Sequence[str]) -> RatPoly:
    """Parse ``term (('+'|'-') term)*`` where terms are products of rationals and powers.

    >>> str(parse_poly("x^2 - 2*y", ("x", "y")))
    'x^2 - 2*y'
    """
    ring = tuple(ring)
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def factor():
        kind, val, pos = take()
        if kind == "int":
            num = Fraction(val)
            if peek()[0] == "op" and peek()[1] == "/":
                take()
                k2, v2, p2 = take()
                if k2 != "int":
                    raise ParseError("expected integer denominator", p2)
                if v2 == 0:
                    raise ParseError("zero denominator", p2)
                num = num / v2
            if peek()[0] == "op" and peek()[1] == "^":
                take()
                k2, v2, p2 = take()
                if k2 != "int":
                    raise ParseError("expected integer exponent", p2)
                num = num**v2
            return RatPoly.const(ring, num)
        if kind == "var":
            if val not in ring:
                raise ParseError(f"unknown variable {val!r}", pos)
            v = RatPoly.var(ring, val)
            if peek()[0] == "op" and peek()[1] == "^":
                take()
                k2, v2, p2 = take()
                if k2 != "int":
                    raise ParseError("expected integer exponent", p2)
                v = v**v2
            return v
        if kind == "op" and val == "(":
            inner = expr()
            k2, v2, p2 = take()
            if (k2, v2) != ("op", ")"):
                raise ParseError("expected ')'", p2)
            if peek()[0] == "op" and peek()[1] == "^":
                take()
                k3, v3, p3 = take()
                if k3 != "int":
                    raise ParseError("expected integer exponent", p3)
                inner = inner**v3
            return inner
        raise ParseError(f"unexpected token {val!r}" if val is not None else "unexpected end", pos)

    def term():
        t = factor()
        while peek()[0] == "op" and peek()[1] == "*":
            take()
            t = t * factor()
        return t

    def expr():
        sign = 1
        if peek()[0] == "op" and peek()[1] in "+-":
            sign = -1 if take()[1] == "-" else 1
        acc = term().scale(sign)
        while peek()[0] == "op" and peek()[1] in "+-":
            sign = -1 if take()[1] == "-" else 1
            acc = acc + term().scale(sign)
        return acc

    if toks[0][0] == "end":
        raise ParseError("empty polynomial", 0)
    result = expr()
    kind, val, pos = peek()
    if kind != "end":
        raise ParseError(f"unexpected token {val!r}", pos)
    return result


def parse_ring(text: str) -> tuple[str, ...]:
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    if len(set(names)) != len(names):
        raise PolyError("duplicate variable in ring")
    return names


# --- homogenization --------------------------------------------------------

def homogenize(P: RatPoly, rho: int, var: str = "z0") -> RatPoly:
    """Return ``var**rho * P(z'/var)`` in the ring ``(var,) + P.ring``."""
    deg = P.total_degree()
    if deg != NEG_INF and rho < deg:
        raise PolyError(f"target degree {rho} below deg P = {deg}")
    if var in P.ring:
        raise PolyError(f"homogenizing variable {var!r} already in ring")
    ring = (var,) + P.ring
    return RatPoly._raw(ring, {(rho - sum(m),) + m: c for m, c in P.terms.items()})


def dehomogenize(p: RatPoly, var: int | str = 0) -> RatPoly:
    """Set the homogenizing variable to 1 and drop it from the ring."""
    if not p.is_homogeneous():
        raise PolyError("dehomogenize requires a homogeneous polynomial")
    i = var if isinstance(var, int) else p.ring.index(var)
    ring = p.ring[:i] + p.ring[i + 1:]
    out: dict = {}
    for m, c in p.terms.items():
        mm = m[:i] + m[i + 1:]
        out[mm] = out.get(mm, 0) + c
    return RatPoly(ring, out)


def poly_from_sympy(expr, ring: Sequence[str]) -> RatPoly:
    import sympy

    ring = tuple(ring)
    P = sympy.Poly(expr, *sympy.symbols(ring))
    return RatPoly(ring, {m: Fraction(int(c.p), int(c.q)) for m, c in P.terms()})


def sum_polys(ps: Iterable[RatPoly], ring) -> RatPoly:
    acc = RatPoly.zero(ring)
    for p in ps:
        acc = acc + p
    return acc
