"""Exact commutative rings: integers, rationals, Z/n, Z localized at an odd prime,
and polynomial towers over any of these.

A ring object describes the ring and implements arithmetic on raw payloads
(``int``, ``Fraction`` or a ``dict`` mapping exponent tuples to coefficient
payloads).  :class:`RingElement` wraps a payload together with its ring and is
what user code normally handles.  Matrices store raw payloads for speed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .errors import (
    MissingVariable,
    NotADivisor,
    NotHalvable,
    NotPolynomialRing,
    NotUnit,
    OwnerMismatch,
    ParseError,
    UnsupportedRing,
    VariableClash,
)

__all__ = [
    "Ring",
    "Integers",
    "Rationals",
    "ZMod",
    "ZLoc",
    "PolyRing",
    "RingElement",
    "ring_make",
    "arith",
    "halve",
    "invert_unit",
    "is_prime",
    "prime_factors",
    "localize_at",
    "grade_decompose",
    "homogenize_map",
    "substitute",
    "partial_substitute",
    "adjoin",
    "coerce",
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` as ``{p: exponent}`` in increasing order."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class Ring:
    """Base class for ring descriptions.

    Subclasses are frozen dataclasses, so two descriptions of the same ring
    compare equal and hash alike.
    """

    has_half = False
    is_local = False
    is_domain = False
    is_field = False

    # payload level -----------------------------------------------------
    def zero(self):
        raise NotImplementedError

    def one(self):
        return self.from_int(1)

    def from_int(self, k: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def divide(self, a, b):
        """Exact quotient ``a / b``; raises :class:`NotUnit` when it does not exist."""
        return self.mul(a, self.inv(b))

    def key(self, a):
        return a

    def format(self, a) -> str:
        return str(a)

    def random(self, rng):
        raise NotImplementedError

    def var(self, name: str):
        raise ParseError(f"unknown variable {name!r} in ring {self}")

    @property
    def all_vars(self) -> tuple[str, ...]:
        return ()

    # element level -----------------------------------------------------
    def elem(self, payload) -> "RingElement":
        return RingElement(self, payload)

    def __call__(self, value) -> "RingElement":
        if isinstance(value, RingElement):
            if value.ring != self:
                raise OwnerMismatch(f"element of {value.ring} used in {self}")
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(value, int):
            return RingElement(self, self.from_int(value))
        if isinstance(value, Fraction):
            return RingElement(
                self, self.divide(self.from_int(value.numerator), self.from_int(value.denominator))
            )
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot convert {value!r} into {self}")

    def parse(self, text: str) -> "RingElement":
        return RingElement(self, _ElementParser(self, text).parse())

    def random_element(self, rng) -> "RingElement":
        return RingElement(self, self.random(rng))


@dataclass(frozen=True)
class Integers(Ring):
    is_domain = True

    def __str__(self):
        return "int"

    def zero(self):
        return 0

    def from_int(self, k):
        return int(k)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a in (1, -1)

    def inv(self, a):
        if a not in (1, -1):
            raise NotUnit(f"{a} is not a unit in int")
        return a

    def divide(self, a, b):
        if b == 0 or a % b:
            raise NotUnit(f"{a}/{b} is not an integer")
        return a // b

    def random(self, rng):
        return rng.randint(-9, 9)


@dataclass(frozen=True)
class Rationals(Ring):
    has_half = True
    is_local = True
    is_domain = True
    is_field = True

    def __str__(self):
        return "rat"

    def zero(self):
        return Fraction(0)

    def from_int(self, k):
        return Fraction(k)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise NotUnit("0 is not a unit in rat")
        return 1 / a

    def random(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))


@dataclass(frozen=True)
class ZMod(Ring):
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise UnsupportedRing(f"zmod:{self.n} needs n >= 2")

    def __str__(self):
        return f"zmod:{self.n}"

    @property
    def has_half(self):
        return self.n % 2 == 1

    @property
    def is_local(self):
        return len(prime_factors(self.n)) == 1

    @property
    def is_domain(self):
        return is_prime(self.n)

    is_field = is_domain

    def zero(self):
        return 0

    def from_int(self, k):
        return int(k) % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def sub(self, a, b):
        return (a - b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def is_unit(self, a):
        return math.gcd(a, self.n) == 1

    def inv(self, a):
        if math.gcd(a, self.n) != 1:
            raise NotUnit(f"{a} is not a unit in zmod:{self.n}")
        return pow(a, -1, self.n)

    def random(self, rng):
        return rng.randrange(self.n)


@dataclass(frozen=True)
class ZLoc(Ring):
    """Integers localized at the prime ideal (p): fractions with denominator prime to p."""

    p: int
    has_half = True
    is_local = True
    is_domain = True

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise UnsupportedRing(f"zloc:{self.p} needs an odd prime")

    def __str__(self):
        return f"zloc:{self.p}"

    def _check(self, a: Fraction) -> Fraction:
        if a.denominator % self.p == 0:
            raise NotUnit(f"{a} does not lie in zloc:{self.p}")
        return a

    def zero(self):
        return Fraction(0)

    def from_int(self, k):
        return Fraction(k)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def is_unit(self, a):
        return a.numerator % self.p != 0

    def inv(self, a):
        if a.numerator % self.p == 0:
            raise NotUnit(f"{a} is not a unit in zloc:{self.p}")
        return 1 / a

    def divide(self, a, b):
        if b == 0:
            raise NotUnit("division by zero")
        return self._check(a / b)

    def valuation(self, a) -> int | None:
        """p-adic valuation of the numerator, ``None`` for zero."""
        if a == 0:
            return None
        k, m = 0, a.numerator
        while m % self.p == 0:
            m //= self.p
            k += 1
        return k

    def random(self, rng):
        den = rng.choice([d for d in range(1, 7) if d % self.p])
        return Fraction(rng.randint(-12, 12), den)


@dataclass(frozen=True)
class PolyRing(Ring):
    """Polynomials over ``base`` in the ordered variables ``vars``.

    Payloads map exponent tuples (one entry per variable) to nonzero base
    payloads.  Payload dicts are never mutated after construction.
    """

    base: Ring
    vars: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if not self.vars:
            raise UnsupportedRing("polynomial ring needs at least one variable")
        for v in self.vars:
            if not _IDENT.match(v):
                raise ParseError(f"bad variable name {v!r}")
        if len(set(self.vars)) != len(self.vars):
            raise VariableClash(f"repeated variable in {self.vars}")
        clash = set(self.vars) & set(self.base.all_vars)
        if clash:
            raise VariableClash(f"variables {sorted(clash)} already used by the base ring")

    def __str__(self):
        return f"poly:{self.base}:[{','.join(self.vars)}]"

    @property
    def all_vars(self):
        return self.base.all_vars + self.vars

    @property
    def has_half(self):
        return self.base.has_half

    @property
    def is_domain(self):
        return self.base.is_domain

    @property
    def _zero_exp(self):
        return (0,) * len(self.vars)

    def zero(self):
        return {}

    def from_int(self, k):
        c = self.base.from_int(k)
        return {} if self.base.is_zero(c) else {self._zero_exp: c}

    def const(self, c):
        """Embed a base payload as a constant polynomial."""
        return {} if self.base.is_zero(c) else {self._zero_exp: c}

    def is_zero(self, a):
        return not a

    def add(self, a, b):
        base = self.base
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for e, c in b.items():
            if e in out:
                s = base.add(out[e], c)
                if base.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return out

    def neg(self, a):
        base = self.base
        return {e: base.neg(c) for e, c in a.items()}

    def mul(self, a, b):
        if not a or not b:
            return {}
        base = self.base
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                p = base.mul(c1, c2)
                out[e] = base.add(out[e], p) if e in out else p
        return {e: c for e, c in out.items() if not base.is_zero(c)}

    def scale(self, c, a):
        base = self.base
        out = {e: base.mul(c, x) for e, x in a.items()}
        return {e: x for e, x in out.items() if not base.is_zero(x)}

    def constant_term(self, a):
        return a.get(self._zero_exp, self.base.zero())

    def is_constant(self, a) -> bool:
        return not a or (len(a) == 1 and self._zero_exp in a)

    def is_unit(self, a):
        return len(a) == 1 and self._zero_exp in a and self.base.is_unit(a[self._zero_exp])

    def inv(self, a):
        if not self.is_unit(a):
            raise NotUnit(f"{self.format(a)} is not a constant unit in {self}")
        return {self._zero_exp: self.base.inv(a[self._zero_exp])}

    def divide(self, a, b):
        if not self.is_constant(b) or not b:
            raise NotUnit(f"division by non-constant {self.format(b)}")
        c = b[self._zero_exp]
        base = self.base
        return {e: base.divide(x, c) for e, x in a.items()}

    def key(self, a):
        return frozenset((e, self.base.key(c)) for e, c in a.items())

    def var(self, name):
        if name in self.vars:
            e = [0] * len(self.vars)
            e[self.vars.index(name)] = 1
            return {tuple(e): self.base.one()}
        return self.const(self.base.var(name))

    def _mono(self, e) -> str:
        parts = []
        for v, k in zip(self.vars, e):
            if k == 1:
                parts.append(v)
            elif k > 1:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def format(self, a):
        if not a:
            return "0"
        base = self.base
        terms = sorted(a.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))
        out = ""
        for e, c in terms:
            mono = self._mono(e)
            cs = base.format(c)
            negative = False
            if isinstance(base, PolyRing) and len(c) > 1:
                cs = f"({cs})"
            elif cs.startswith("-"):
                negative, cs = True, cs[1:]
            if mono:
                if cs == "1":
                    body = mono
                elif "/" in cs and not cs.startswith("("):
                    body = f"({cs})*{mono}"
                else:
                    body = f"{cs}*{mono}"
            else:
                body = cs
            if not out:
                out = ("-" if negative else "") + body
            else:
                out += (" - " if negative else " + ") + body
        return out

    def random(self, rng, terms: int = 3, degree: int = 2):
        out = {}
        for _ in range(rng.randint(0, terms)):
            e = [0] * len(self.vars)
            for _ in range(rng.randint(0, degree)):
                e[rng.randrange(len(self.vars))] += 1
            c = self.base.random(rng)
            if not self.base.is_zero(c):
                out = self.add(out, {tuple(e): c})
        return out


class RingElement:
    """An element of a :class:`Ring`; arithmetic requires both operands to share the ring."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value):
        self.ring = ring
        self.value = value

    def _other(self, other) -> Any:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise OwnerMismatch(f"{self.ring} vs {other.ring}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RingElement(self.ring, self.ring.mul(self.value, o))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.ring.one(), self.value
        while k:
            if k & 1:
                result = self.ring.mul(result, base)
            base = self.ring.mul(base, base)
            k >>= 1
        return RingElement(self.ring, result)

    def inverse(self) -> "RingElement":
        return RingElement(self.ring, self.ring.inv(self.value))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.value)

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.ring.key(self.value)))

    def __str__(self):
        return self.ring.format(self.value)

    def __repr__(self):
        return f"RingElement({self.ring}, {self})"


# ---------------------------------------------------------------------------
# ring grammar


def ring_make(text: str) -> Ring:
    """Build a ring from ``int | rat | zmod:<n> | zloc:<p> | poly:<base>:[V1,...]``."""
    t = text.strip().replace(" ", "")
    if t == "int":
        return Integers()
    if t == "rat":
        return Rationals()
    for prefix, cls in (("zmod:", ZMod), ("zloc:", ZLoc)):
        if t.startswith(prefix):
            digits = t[len(prefix):]
            if not digits.isdigit():
                raise ParseError(f"bad modulus in {text!r}")
            return cls(int(digits))
    if t.startswith("poly:"):
        rest = t[5:]
        idx = rest.rfind(":[")
        if idx < 0 or not rest.endswith("]"):
            raise ParseError(f"bad polynomial ring {text!r}")
        names = rest[idx + 2:-1]
        if not names:
            raise ParseError(f"no variables in {text!r}")
        return PolyRing(ring_make(rest[:idx]), tuple(names.split(",")))
    raise ParseError(f"unknown ring {text!r}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _ElementParser:
    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.text = text
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            num, ident, op = m.groups()
            if num is not None:
                self.tokens.append(("num", num))
            elif ident is not None:
                self.tokens.append(("id", ident))
            else:
                if op not in "+-*/^()":
                    raise ParseError(f"unexpected {op!r} in {self.text!r}")
                self.tokens.append(("op", op))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def _take(self):
        tok = self._peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty element")
        value = self._expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def _expr(self):
        r = self.ring
        value = self._term()
        while self._peek() in (("op", "+"), ("op", "-")):
            op = self._take()[1]
            rhs = self._term()
            value = r.add(value, rhs) if op == "+" else r.sub(value, rhs)
        return value

    def _term(self):
        r = self.ring
        value = self._unary()
        while self._peek() in (("op", "*"), ("op", "/")):
            op = self._take()[1]
            rhs = self._unary()
            if op == "*":
                value = r.mul(value, rhs)
            else:
                try:
                    value = r.divide(value, rhs)
                except NotUnit as exc:
                    raise ParseError(f"cannot divide in {self.text!r}: {exc}") from exc
        return value

    def _unary(self):
        if self._peek() == ("op", "-"):
            self._take()
            return self.ring.neg(self._unary())
        if self._peek() == ("op", "+"):
            self._take()
            return self._unary()
        return self._power()

    def _power(self):
        value = self._atom()
        if self._peek() == ("op", "^"):
            self._take()
            kind, tok = self._take()
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            value = RingElement(self.ring, value) ** int(tok)
            value = value.value
        return value

    def _atom(self):
        kind, tok = self._take()
        if kind == "num":
            return self.ring.from_int(int(tok))
        if kind == "id":
            return self.ring.var(tok)
        if (kind, tok) == ("op", "("):
            value = self._expr()
            if self._take() != ("op", ")"):
                raise ParseError(f"unbalanced parenthesis in {self.text!r}")
            return value
        raise ParseError(f"unexpected token {tok!r} in {self.text!r}")


# ---------------------------------------------------------------------------
# module-level operations


def arith(op: str, a: RingElement, b: RingElement | None = None) -> RingElement:
    if op == "neg":
        return -a
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if a.ring != b.ring:
        raise OwnerMismatch(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def halve(a: RingElement) -> RingElement:
    """The unique ``b`` with ``2b = a``."""
    r = a.ring
    if not r.has_half:
        raise NotHalvable(f"2 is not invertible in {r}")
    return RingElement(r, r.mul(a.value, r.inv(r.from_int(2))))


def invert_unit(a: RingElement) -> RingElement:
    return a.inverse()


def localize_at(spec: Ring, p: int):
    """Localization of Z/n at the maximal ideal (p), realized as Z/p^k with k = v_p(n).

    Returns the local ring and the canonical projection on elements.
    """
    if not isinstance(spec, ZMod):
        raise UnsupportedRing(f"localization is only implemented for zmod, not {spec}")
    factors = prime_factors(spec.n)
    if p not in factors:
        raise NotADivisor(f"{p} is not a prime divisor of {spec.n}")
    target = ZMod(p ** factors[p])

    def hom(x: RingElement) -> RingElement:
        if x.ring != spec:
            raise OwnerMismatch(f"{x.ring} vs {spec}")
        return RingElement(target, x.value % target.n)

    return target, hom


def _need_poly(a: RingElement) -> PolyRing:
    if not isinstance(a.ring, PolyRing):
        raise NotPolynomialRing(f"{a.ring} is not a polynomial ring")
    return a.ring


def grade_decompose(a: RingElement) -> list[RingElement]:
    """Homogeneous components ``[a_0, a_1, ...]`` by total degree; trailing zeros dropped."""
    r = _need_poly(a)
    if not a.value:
        return []
    top = max(sum(e) for e in a.value)
    parts: list[dict] = [{} for _ in range(top + 1)]
    for e, c in a.value.items():
        parts[sum(e)][e] = c
    return [RingElement(r, p) for p in parts]


def adjoin(ring: Ring, names: Sequence[str]) -> PolyRing:
    """``ring[names]``, flattened when ``ring`` is itself polynomial."""
    names = tuple(names)
    clash = set(names) & set(ring.all_vars)
    if clash:
        raise VariableClash(f"{sorted(clash)} already used in {ring}")
    if isinstance(ring, PolyRing):
        return PolyRing(ring.base, ring.vars + names)
    return PolyRing(ring, names)


def homogenize_map(a: RingElement, T: str = "T", variables: Sequence[str] | None = None) -> RingElement:
    """``a_0 + a_1 + a_2 + ...  ->  a_0 + a_1 T + a_2 T^2 + ...`` in ``R[vars, T]``.

    The degree counts only ``variables`` (default: all of them); the other
    variables behave as coefficients.
    """
    r = _need_poly(a)
    target = adjoin(r, [T])
    if variables is None:
        idx = range(len(r.vars))
    else:
        missing = [v for v in variables if v not in r.vars]
        if missing:
            raise MissingVariable(f"{missing} are not variables of {r}")
        idx = [r.vars.index(v) for v in variables]
    return RingElement(target, {e + (sum(e[i] for i in idx),): c for e, c in a.value.items()})


def coerce(x: RingElement, target: Ring) -> RingElement:
    """Embed ``x`` into ``target`` along the evident inclusion of rings."""
    src = x.ring
    if src == target:
        return x
    if isinstance(target, PolyRing):
        if isinstance(src, PolyRing) and src.base == target.base and set(src.vars) <= set(target.vars):
            pos = [target.vars.index(v) for v in src.vars]
            out = {}
            for e, c in x.value.items():
                ne = [0] * len(target.vars)
                for k, p in zip(e, pos):
                    ne[p] = k
                out[tuple(ne)] = c
            return RingElement(target, out)
        inner = coerce(x, target.base)
        return RingElement(target, target.const(inner.value))
    raise OwnerMismatch(f"cannot embed {src} into {target}")


def _drop_vars(ring: PolyRing, names: Iterable[str]) -> Ring:
    keep = tuple(v for v in ring.vars if v not in set(names))
    return PolyRing(ring.base, keep) if keep else ring.base


def partial_substitute(a: RingElement, assignment: Mapping[str, Any]) -> RingElement:
    """Substitute some variables; the result lives in the ring over the remaining ones."""
    r = _need_poly(a)
    unknown = set(assignment) - set(r.vars)
    if unknown:
        raise MissingVariable(f"{sorted(unknown)} are not variables of {r}")
    target = _drop_vars(r, assignment)
    vals = {}
    for name, v in assignment.items():
        if isinstance(v, RingElement):
            vals[name] = coerce(v, target).value
        else:
            vals[name] = target(v).value
    keep = [i for i, v in enumerate(r.vars) if v not in assignment]
    subs = [(i, vals[v]) for i, v in enumerate(r.vars) if v in assignment]
    powers: dict[tuple[int, int], Any] = {}

    def pw(i, val, k):
        if (i, k) not in powers:
            powers[(i, k)] = (RingElement(target, val) ** k).value
        return powers[(i, k)]

    total = target.zero()
    for e, c in a.value.items():
        if isinstance(target, PolyRing):
            ke = tuple(e[i] for i in keep)
            term = {ke: c}
        else:
            term = c
        for i, val in subs:
            if e[i]:
                term = target.mul(term, pw(i, val, e[i]))
        total = target.add(total, term)
    return RingElement(target, total)


def substitute(a: RingElement, assignment: Mapping[str, Any]) -> RingElement:
    """Evaluate ``a`` at a point; every variable of its ring must be assigned."""
    r = _need_poly(a)
    missing = [v for v in r.vars if v not in assignment]
    if missing:
        raise MissingVariable(f"no value for {missing}")
    return partial_substitute(a, assignment)
