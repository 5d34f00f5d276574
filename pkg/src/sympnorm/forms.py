"""Skew forms, the standard form psi_n and the symplectic generators.

Index arguments follow the algebraic convention: 1-based, with the pairing
sigma(2i-1) = 2i, sigma(2i) = 2i-1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadIndices,
    CongruenceMismatch,
    DimMismatch,
    NotInvertible,
    NotSkew,
    OddSize,
    OutOfRange,
)
from .matrix import (
    Matrix,
    column,
    det,
    from_blocks,
    identity,
    is_skew,
    mat_inverse,
    perp,
    transpose,
    zeros,
)
from .rings import Ring, RingElement, coerce

__all__ = [
    "make_psi",
    "sigma",
    "make_se",
    "sp_check",
    "SkewForm",
    "make_skewform",
    "psi_form",
    "alpha_of",
    "beta_of",
    "C_of",
    "R_of",
    "as_vector",
    "conjugate_transport",
    "transport_back",
    "symplectic_inverse",
]


def make_psi(ring: Ring, n: int) -> Matrix:
    """Block diagonal sum of n copies of [[0, 1], [-1, 0]]."""
    if n < 1:
        raise OutOfRange("psi_n needs n >= 1")
    z, o, m = ring.zero(), ring.one(), ring.neg(ring.one())
    rows = [[z] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[2 * i][2 * i + 1] = o
        rows[2 * i + 1][2 * i] = m
    return Matrix(ring, rows)


def sigma(i: int, n: int | None = None) -> int:
    """Partner of ``i`` in the pairs (1,2), (3,4), ..."""
    if i < 1 or (n is not None and i > 2 * n):
        raise OutOfRange(f"index {i} outside 1..{2 * n if n else 'inf'}")
    return i + 1 if i % 2 else i - 1


def make_se(ring: Ring, n: int, i: int, j: int, a) -> Matrix:
    """Elementary symplectic matrix se_ij(a) of size 2n."""
    N = 2 * n
    if i == j or not (1 <= i <= N and 1 <= j <= N):
        raise BadIndices(f"se_{{{i},{j}}} with n={n}")
    a = ring(a).value
    rows = [list(r) for r in identity(ring, N).data]
    rows[i - 1][j - 1] = ring.add(rows[i - 1][j - 1], a)
    if i != sigma(j):
        p, q = sigma(j), sigma(i)
        # -(-1)^(i+j) a at (sigma(j), sigma(i))
        corr = a if (i + j) % 2 else ring.neg(a)
        rows[p - 1][q - 1] = ring.add(rows[p - 1][q - 1], corr)
    return Matrix(ring, rows)


def sp_check(phi: Matrix, M: Matrix) -> bool:
    """True iff ``M^t phi M == phi``."""
    if not phi.is_square() or M.shape != phi.shape:
        raise DimMismatch(f"form {phi.shape} vs matrix {M.shape}")
    return transpose(M) * phi * M == phi


def symplectic_inverse(phi: Matrix, phi_inv: Matrix, M: Matrix) -> Matrix:
    """``M^-1 = phi^-1 M^t phi`` for M in Sp_phi."""
    return phi_inv * transpose(M) * phi


@dataclass(frozen=True, eq=False)
class SkewForm:
    """An invertible skew form with its inverse and the border blocks.

    ``phi = [[0, -c^t], [c, nu]]`` and ``phi^-1 = [[0, d^t], [-d, mu_block]]``.
    """

    n: int
    phi: Matrix
    phi_inv: Matrix
    c: Matrix
    nu: Matrix
    d: Matrix
    mu_block: Matrix

    @property
    def ring(self) -> Ring:
        return self.phi.ring

    @property
    def size(self) -> int:
        return 2 * self.n

    @property
    def is_standard(self) -> bool:
        return self.phi == make_psi(self.ring, self.n)

    def __eq__(self, other):
        return isinstance(other, SkewForm) and self.phi == other.phi

    def __hash__(self):
        return hash(self.phi)

    def block_identities(self) -> dict[str, bool]:
        c, d, nu, mu = self.c, self.d, self.nu, self.mu_block
        m = 2 * self.n - 1
        ring = self.ring
        return {
            "ctd=1": (transpose(c) * d).data == ((ring.one(),),),
            "nu d=0": nu * d == zeros(ring, m, 1),
            "ct mu=0": transpose(c) * mu == zeros(ring, 1, m),
            "c dt + nu mu=I": c * transpose(d) + nu * mu == identity(ring, m),
        }

    def extend(self, target: Ring) -> "SkewForm":
        """The same form viewed over a ring containing the current one."""
        if target == self.ring:
            return self
        emb = lambda M: M.map(lambda x: coerce(x, target), target)  # noqa: E731
        return SkewForm(
            self.n,
            emb(self.phi),
            emb(self.phi_inv),
            emb(self.c),
            emb(self.nu),
            emb(self.d),
            emb(self.mu_block),
        )

    def map(self, hom, target: Ring) -> "SkewForm":
        """Image under a ring homomorphism ``hom`` into ``target``."""
        return _build_form(self.phi.map(hom, target), self.phi_inv.map(hom, target))


def _build_form(phi: Matrix, phi_inv: Matrix) -> SkewForm:
    m = phi.rows - 1
    ring = phi.ring
    c = phi.block(1, m + 1, 0, 1)
    nu = phi.block(1, m + 1, 1, m + 1)
    d = -phi_inv.block(1, m + 1, 0, 1)
    mu = phi_inv.block(1, m + 1, 1, m + 1)
    form = SkewForm(phi.rows // 2, phi, phi_inv, c, nu, d, mu)
    if phi * phi_inv != identity(ring, phi.rows):
        raise NotInvertible("phi_inv is not the inverse of phi")
    failed = [k for k, ok in form.block_identities().items() if not ok]
    if failed:
        raise NotInvertible(f"block identities failed: {failed}")
    return form


def make_skewform(phi: Matrix) -> SkewForm:
    if not phi.is_square():
        raise NotSkew("form must be square")
    if phi.rows % 2:
        raise OddSize(f"form of odd size {phi.rows}")
    if not is_skew(phi):
        raise NotSkew("form must be skew-symmetric with zero diagonal")
    if not det(phi).is_unit():
        raise NotInvertible(f"det {det(phi)} is not a unit")
    return _build_form(phi, mat_inverse(phi))


def psi_form(ring: Ring, n: int) -> SkewForm:
    psi = make_psi(ring, n)
    return _build_form(psi, -psi)


def as_vector(F: SkewForm, v) -> Matrix:
    """Coerce a sequence of 2n-1 entries (or a column matrix) into a column over F's ring."""
    m = 2 * F.n - 1
    if isinstance(v, Matrix):
        if v.shape != (m, 1):
            raise DimMismatch(f"vector of shape {v.shape}, expected ({m}, 1)")
        if v.ring != F.ring:
            return v.map(lambda x: coerce(x, F.ring), F.ring)
        return v
    v = list(v)
    if len(v) != m:
        raise DimMismatch(f"vector of length {len(v)}, expected {m}")
    return column(F.ring, [coerce(x, F.ring) if isinstance(x, RingElement) else x for x in v])


def alpha_of(F: SkewForm, v) -> Matrix:
    """``I + d v^t nu``."""
    v = as_vector(F, v)
    return identity(F.ring, 2 * F.n - 1) + F.d * (transpose(v) * F.nu)


def beta_of(F: SkewForm, v) -> Matrix:
    """``I + mu v c^t``."""
    v = as_vector(F, v)
    return identity(F.ring, 2 * F.n - 1) + (F.mu_block * v) * transpose(F.c)


def C_of(F: SkewForm, v) -> Matrix:
    """Column generator ``[[1, 0], [v, alpha(v)]]``."""
    v = as_vector(F, v)
    ring = F.ring
    return from_blocks([[identity(ring, 1), zeros(ring, 1, v.rows)], [v, alpha_of(F, v)]])


def R_of(F: SkewForm, v) -> Matrix:
    """Row generator ``[[1, v^t], [0, beta(v)]]``."""
    v = as_vector(F, v)
    ring = F.ring
    return from_blocks([[identity(ring, 1), transpose(v)], [zeros(ring, v.rows, 1), beta_of(F, v)]])


def _corner(eps0: Matrix) -> Matrix:
    return perp(identity(eps0.ring, 1), eps0)


def conjugate_transport(F: SkewForm, Fstar: SkewForm, eps0: Matrix, M: Matrix) -> Matrix:
    """``(1+eps0)^-1 M (1+eps0)``: carries Sp_{phi*} onto Sp_phi when phi = (1+eps0)^t phi* (1+eps0)."""
    P = _corner(eps0)
    if transpose(P) * Fstar.phi * P != F.phi:
        raise CongruenceMismatch("phi != (1 + eps0)^t phi* (1 + eps0)")
    return mat_inverse(P) * M * P


def transport_back(F: SkewForm, Fstar: SkewForm, eps0: Matrix, M: Matrix) -> Matrix:
    """Inverse of :func:`conjugate_transport`: Sp_phi onto Sp_{phi*}."""
    P = _corner(eps0)
    if transpose(P) * Fstar.phi * P != F.phi:
        raise CongruenceMismatch("phi != (1 + eps0)^t phi* (1 + eps0)")
    return P * M * mat_inverse(P)
