"""Ideals whose membership problem is decidable in the supported rings.

Classes:

* ``zero`` and ``full``;
* ``modulus-divisor``: principal ideals of int, zmod and zloc, kept as the
  nonnegative generator ``g`` (``g | n`` for zmod, ``g = p^k`` for zloc);
* ``variable-generated``: ideals of a polynomial ring generated by some of
  its own variables;
* ``extended``: ideals of a polynomial ring generated by constants, i.e. the
  extension of a decidable ideal of the base ring;
* ``general``: anything else; membership raises :class:`UndecidableIdeal`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

from .errors import UndecidableIdeal, UnsupportedRing
from .rings import (
    Integers,
    PolyRing,
    Rationals,
    Ring,
    RingElement,
    ZLoc,
    ZMod,
    prime_factors,
)

__all__ = ["Ideal", "make_ideal", "parse_ideal", "ideal_contains", "enumerate_max_ideals"]


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: tuple[RingElement, ...]
    kind: str
    modulus: int = 0
    variables: tuple[str, ...] = ()
    base_ideal: Any = field(default=None)

    def __str__(self):
        return "[" + ",".join(str(g) for g in self.generators) + "]"

    def __repr__(self):
        return f"Ideal({self.ring}, {self}, kind={self.kind!r})"

    def contains(self, a: RingElement) -> bool:
        return ideal_contains(self, a)

    def reduce(self, a: RingElement) -> RingElement:
        """Normal form of ``a`` modulo the ideal; ``a - reduce(a)`` lies in the ideal.

        For odd moduli and the polynomial classes the normal form is odd:
        ``reduce(-a) == -reduce(a)``.
        """
        return RingElement(self.ring, self._reduce(a.value))

    def _reduce(self, x):
        r, kind = self.ring, self.kind
        if kind == "zero":
            return x
        if kind == "full":
            return r.zero()
        if kind == "modulus-divisor":
            # balanced residues, so that reduce(-a) == -reduce(a)
            g = self.modulus
            if isinstance(r, ZLoc):
                rep = x.numerator * pow(x.denominator, -1, g) % g
            else:
                rep = x % g
            if rep > g // 2:
                rep -= g
            return r.from_int(rep)
        if kind == "variable-generated":
            idx = [r.vars.index(v) for v in self.variables]
            return {e: c for e, c in x.items() if not any(e[i] for i in idx)}
        if kind == "extended":
            b = self.base_ideal
            out = {e: b._reduce(c) for e, c in x.items()}
            return {e: c for e, c in out.items() if not r.base.is_zero(c)}
        raise UndecidableIdeal(f"no normal form for the ideal {self} of {r}")

    def _contains(self, x) -> bool:
        r, kind = self.ring, self.kind
        if kind == "general":
            raise UndecidableIdeal(f"membership in {self} over {r} is not decidable here")
        if kind == "modulus-divisor" and isinstance(r, ZLoc):
            return x.numerator % self.modulus == 0
        return r.is_zero(self._reduce(x))


def _principal_kind(g: int, top: int) -> str:
    if g == 1:
        return "full"
    if g == top:
        return "zero"
    return "modulus-divisor"


def make_ideal(ring: Ring, generators) -> Ideal:
    gens = tuple(ring(g) for g in generators)
    vals = [g.value for g in gens]
    nonzero = [v for v in vals if not ring.is_zero(v)]
    if not nonzero:
        return Ideal(ring, gens, "zero")
    if isinstance(ring, ZMod):
        g = math.gcd(ring.n, *vals)
        return Ideal(ring, gens, _principal_kind(g, ring.n), modulus=g)
    if isinstance(ring, Integers):
        g = math.gcd(*vals)
        return Ideal(ring, gens, "full" if g == 1 else "modulus-divisor", modulus=g)
    if isinstance(ring, Rationals):
        return Ideal(ring, gens, "full")
    if isinstance(ring, ZLoc):
        k = min(ring.valuation(v) for v in nonzero)
        return Ideal(ring, gens, "full" if k == 0 else "modulus-divisor", modulus=ring.p ** k)
    if isinstance(ring, PolyRing):
        if any(ring.is_unit(v) for v in nonzero):
            return Ideal(ring, gens, "full")
        names = []
        for v in nonzero:
            if len(v) == 1:
                (e, c), = v.items()
                if sum(e) == 1 and c == ring.base.one():
                    names.append(ring.vars[e.index(1)])
                    continue
            break
        else:
            return Ideal(ring, gens, "variable-generated", variables=tuple(dict.fromkeys(names)))
        if all(ring.is_constant(v) for v in nonzero):
            base_gens = [RingElement(ring.base, ring.constant_term(v)) for v in nonzero]
            inner = make_ideal(ring.base, base_gens)
            if inner.kind != "general":
                return Ideal(ring, gens, "extended", base_ideal=inner)
        return Ideal(ring, gens, "general")
    raise UnsupportedRing(f"ideals of {ring} are not supported")


def parse_ideal(ring: Ring, text: str) -> Ideal:
    """Parse ``[g1, g2, ...]``."""
    from .errors import ParseError

    t = text.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise ParseError(f"ideal must be a bracketed list, got {text!r}")
    body = t[1:-1].strip()
    parts = [p for p in body.split(",")] if body else []
    if any(not p.strip() for p in parts):
        raise ParseError(f"empty generator in {text!r}")
    return make_ideal(ring, [ring.parse(p) for p in parts])


def ideal_contains(ideal: Ideal, a: RingElement) -> bool:
    if a.ring != ideal.ring:
        from .errors import OwnerMismatch

        raise OwnerMismatch(f"{a.ring} vs {ideal.ring}")
    return ideal._contains(a.value)


def enumerate_max_ideals(spec: Ring) -> list[tuple[int, Ideal]]:
    """All maximal ideals of Z/n as ``(p, (p))`` for the prime divisors p of n."""
    if not isinstance(spec, ZMod):
        raise UnsupportedRing(f"maximal ideals are only enumerated for zmod, not {spec}")
    return [(p, make_ideal(spec, [p])) for p in prime_factors(spec.n)]
