"""Constructive reductions over local rings.

* :func:`reduce_to_psi_corner` writes a Pfaffian-one form as
  ``(1 + eps0)^t psi_n (1 + eps0)`` with ``eps0`` an explicit product of
  transvections on the last 2n-1 coordinates.
* :func:`sp_local_word` factors a matrix of Sp_2n(R), R local, into se atoms.

Both produce certificates that are checked by multiplication before they
are returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    BadIndices,
    NotInvertible,
    NotLocalRing,
    NotSkew,
    NotSymplectic,
    OddSize,
    OutOfRange,
    ParseError,
    PfaffianNotOne,
    SympnormError,
)
from .forms import SkewForm, _build_form, make_psi, make_se, sp_check
from .matrix import Matrix, det, identity, is_skew, mat_inverse, pfaffian, perp, transpose
from .rings import PolyRing, Ring, RingElement, ring_make
from .words import SE, GroupWord

__all__ = [
    "ElementaryCertificate",
    "cert_eval",
    "whitehead_factor",
    "signed_swap",
    "reduce_to_psi_corner",
    "random_pf1_form",
    "random_elementary_steps",
    "sp_local_word",
    "cert_to_doc",
    "cert_from_doc",
]


@dataclass(frozen=True)
class ElementaryCertificate:
    """Ordered transvections ``E_ij(a) = I + a e_ij`` of size ``size`` (1-based indices)."""

    ring: Ring
    size: int
    steps: tuple[tuple[int, int, RingElement], ...] = ()

    def __post_init__(self):
        steps = tuple((int(i), int(j), self.ring(a)) for i, j, a in self.steps)
        for i, j, _ in steps:
            if i == j or not (1 <= i <= self.size and 1 <= j <= self.size):
                raise BadIndices(f"E_{{{i},{j}}} in size {self.size}")
        object.__setattr__(self, "steps", steps)

    def __add__(self, other: "ElementaryCertificate") -> "ElementaryCertificate":
        if other.size != self.size or other.ring != self.ring:
            raise BadIndices("cannot concatenate certificates of different shape")
        return ElementaryCertificate(self.ring, self.size, self.steps + other.steps)

    def inverse(self) -> "ElementaryCertificate":
        return ElementaryCertificate(self.ring, self.size, [(i, j, -a) for i, j, a in reversed(self.steps)])

    def __len__(self):
        return len(self.steps)


def _apply_right(rows: list[list], ring: Ring, i: int, j: int, a) -> None:
    """rows <- rows * E_ij(a), 0-based: column j += a * column i."""
    for r in rows:
        if not ring.is_zero(r[i]):
            r[j] = ring.add(r[j], ring.mul(a, r[i]))


def cert_eval(cert: ElementaryCertificate) -> Matrix:
    ring = cert.ring
    rows = [list(r) for r in identity(ring, cert.size).data]
    for i, j, a in cert.steps:
        _apply_right(rows, ring, i - 1, j - 1, a.value)
    return Matrix(ring, rows)


def whitehead_factor(ring: Ring, m: int, i: int, j: int, u) -> ElementaryCertificate:
    """Six transvections whose product is diag(.., u at i, .., u^-1 at j, ..)."""
    if m < 2 or i == j:
        raise BadIndices(f"Whitehead factor needs m >= 2 and i != j, got m={m}, ({i}, {j})")
    u = ring(u)
    ui = u.inverse()
    one = ring(1)
    steps = [(i, j, u), (j, i, -ui), (i, j, u), (i, j, -one), (j, i, one), (i, j, -one)]
    return ElementaryCertificate(ring, m, steps)


def signed_swap(ring: Ring, m: int, i: int, j: int) -> ElementaryCertificate:
    """``E_ij(1) E_ji(-1) E_ij(1)``: sends column i to column j and column j to minus column i."""
    if i == j:
        raise BadIndices("signed swap needs i != j")
    one = ring(1)
    return ElementaryCertificate(ring, m, [(i, j, one), (j, i, -one), (i, j, one)])


def _require_local(ring: Ring) -> None:
    if isinstance(ring, PolyRing) or not ring.is_local:
        raise NotLocalRing(f"{ring} is not one of the supported local rings")
    if not ring.has_half:
        raise NotLocalRing(f"{ring} does not contain 1/2")


def reduce_to_psi_corner(phi: Matrix) -> ElementaryCertificate:
    """Certificate for eps0 in E_{2n-1}(R) with ``(1 + eps0)^t psi_n (1 + eps0) = phi``.

    R must be local with 2 invertible and Pf(phi) = 1.  The reduction works
    pair by pair: with leading index s it makes row s equal to e_{s+1} using
    column operations among indices > s (unit pivot at the smallest index),
    then subtracts from e_{s+1} the combination of later basis vectors that
    makes it orthogonal to them.  Index 1 is never touched, so the congruence
    has the shape 1 + g.
    """
    if not phi.is_square():
        raise NotSkew("form must be square")
    if phi.rows % 2:
        raise OddSize(f"form of odd size {phi.rows}")
    if not is_skew(phi):
        raise NotSkew("form must be skew-symmetric with zero diagonal")
    ring = phi.ring
    _require_local(ring)
    N = phi.rows
    if N < 4:
        raise OutOfRange("reduction needs size 2n >= 4")
    if not det(phi).is_unit():
        raise NotInvertible(f"det {det(phi)} is not a unit")
    pf = pfaffian(phi)
    if pf != ring(1):
        raise PfaffianNotOne(f"Pfaffian is {pf}, not 1")

    add, mul, neg, iz = ring.add, ring.mul, ring.neg, ring.is_zero
    one = ring.one()
    M = [list(r) for r in phi.data]
    steps: list[tuple[int, int, object]] = []

    def congr(i: int, j: int, a) -> None:
        # M <- E^t M E with E = I + a e_ij (0-based): index j += a * index i
        if iz(a):
            return
        for r in M:
            r[j] = add(r[j], mul(a, r[i]))
        M[j] = [add(x, mul(a, y)) for x, y in zip(M[j], M[i])]
        steps.append((i + 1, j + 1, a))

    for s in range(0, N, 2):
        t = s + 1
        if M[s][t] != one:
            pivot = next((p for p in range(t, N) if ring.is_unit(M[s][p])), None)
            if pivot is None:
                raise NotInvertible("row has no unit entry; the ring is not local or phi is singular")
            if pivot != t:
                congr(pivot, t, mul(ring.sub(one, M[s][t]), ring.inv(M[s][pivot])))
            elif t + 1 < N:
                u = M[s][t]
                congr(t, t + 1, mul(ring.sub(one, M[s][t + 1]), ring.inv(u)))
                congr(t + 1, t, ring.sub(one, u))
            else:
                raise PfaffianNotOne(f"last pivot is {ring.format(M[s][t])}")
        for k in range(t + 1, N):
            if not iz(M[s][k]):
                congr(t, k, neg(M[s][k]))
        if t + 1 < N:
            B = Matrix(ring, [r[t + 1:] for r in M[t + 1:]])
            y = Matrix(ring, [[x] for x in M[t][t + 1:]])
            a = mat_inverse(B) * y
            for off, (val,) in enumerate(a.data):
                congr(t + 1 + off, t, val)

    if Matrix(ring, M) != make_psi(ring, N // 2):
        raise SympnormError("internal error: reduction did not reach psi_n")
    eps0 = ElementaryCertificate(
        ring, N - 1, [(i - 1, j - 1, RingElement(ring, neg(a))) for i, j, a in reversed(steps)]
    )
    P = perp(identity(ring, 1), cert_eval(eps0))
    if transpose(P) * make_psi(ring, N // 2) * P != phi:
        raise SympnormError("internal error: certificate does not reproduce phi")
    return eps0


def random_elementary_steps(ring: Ring, m: int, steps: int, rng) -> list[tuple[int, int, RingElement]]:
    out = []
    for _ in range(steps):
        i = rng.randint(1, m)
        j = rng.choice([k for k in range(1, m + 1) if k != i])
        out.append((i, j, ring.random_element(rng)))
    return out


def random_pf1_form(ring: Ring, n: int, steps: int, seed) -> SkewForm:
    """``eps^t psi_n eps`` for a seeded random elementary word eps of ``steps`` factors."""
    if n < 2:
        raise OutOfRange("random forms need n >= 2")
    rng = random.Random(seed)
    eps = ElementaryCertificate(ring, 2 * n, random_elementary_steps(ring, 2 * n, steps, rng))
    E = cert_eval(eps)
    E_inv = cert_eval(eps.inverse())
    psi = make_psi(ring, n)
    phi = transpose(E) * psi * E
    phi_inv = E_inv * (-psi) * transpose(E_inv)
    if pfaffian(phi) != ring(1):
        raise SympnormError("internal error: random form lost Pfaffian 1")
    return _build_form(phi, phi_inv)


def sp_local_word(M: Matrix) -> GroupWord:
    """Factor M in Sp_2n(R), R local with 1/2, as a word of se atoms over psi_n.

    Column-by-column elimination: for each pair (p, q = p+1) the column p is
    brought to e_p and column q to e_q by left multiplication with se
    generators, which splits off an identity block.
    """
    from .forms import psi_form

    ring = M.ring
    _require_local(ring)
    if not M.is_square() or M.rows % 2:
        raise OddSize("symplectic matrices have even size")
    n = M.rows // 2
    psi = make_psi(ring, n)
    if not sp_check(psi, M):
        raise NotSymplectic("matrix is not in Sp_2n")
    X = M
    applied: list[tuple[int, int, RingElement]] = []

    def left(i: int, j: int, a: RingElement) -> None:
        nonlocal X
        if a.is_zero():
            return
        X = make_se(ring, n, i, j, a) * X
        applied.append((i, j, a))

    one = ring(1)
    for p in range(1, 2 * n, 2):
        q = p + 1
        x = lambda k: X[k - 1, p - 1]  # noqa: E731
        if not x(p).is_unit():
            k = next((k for k in range(q, 2 * n + 1) if x(k).is_unit()), None)
            if k is None:
                raise NotSymplectic("column has no unit entry")
            left(p, k, one)
        u_inv = x(p).inverse()
        for k in range(q + 1, 2 * n + 1):
            if not x(k).is_zero():
                left(k, p, -x(k) * u_inv)
        left(q, p, -x(q) * u_inv)
        u = x(p)
        if u != one:
            left(q, p, (one - u) * u.inverse())
            left(p, q, one)
            left(q, p, -x(q))
        y = lambda k: X[k - 1, q - 1]  # noqa: E731
        for k in range(q + 1, 2 * n + 1):
            if not y(k).is_zero():
                left(k, q, -y(k))
        left(p, q, -y(p))
    if not X.is_identity():
        raise SympnormError("internal error: elimination did not reach the identity")
    word = GroupWord(psi_form(ring, n), [SE(i, j, -a) for i, j, a in applied])
    if word.evaluate() != M:
        raise SympnormError("internal error: word does not evaluate to M")
    return word


def cert_to_doc(cert: ElementaryCertificate) -> dict:
    return {
        "ring": str(cert.ring),
        "size": cert.size,
        "steps": [[i, j, str(a)] for i, j, a in cert.steps],
    }


def cert_from_doc(doc: dict, ring: Ring | None = None) -> ElementaryCertificate:
    try:
        ring = ring or ring_make(doc["ring"])
        return ElementaryCertificate(
            ring, int(doc["size"]), [(int(i), int(j), ring.parse(str(a))) for i, j, a in doc["steps"]]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad certificate document: {exc}") from exc
