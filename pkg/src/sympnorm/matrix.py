"""Dense exact matrices over a :class:`~sympnorm.rings.Ring`.

Entries are stored as raw ring payloads in a tuple of row tuples; indexing
with ``M[i, j]`` (0-based) returns a :class:`RingElement`.  Functions that
follow the algebraic conventions (``basis_e``) take 1-based indices.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Callable, Sequence

from .errors import (
    DimMismatch,
    NotInvertible,
    NotSkew,
    NotSquare,
    OddSize,
    OwnerMismatch,
    ParseError,
)
from .ideals import Ideal
from .rings import PolyRing, Ring, RingElement, ring_make

__all__ = [
    "Matrix",
    "identity",
    "zeros",
    "basis_e",
    "column",
    "mat_mul",
    "mat_add",
    "transpose",
    "perp",
    "from_blocks",
    "det",
    "adjugate",
    "mat_inverse",
    "is_skew",
    "pfaffian",
    "mat_mod_ideal",
    "to_doc",
    "from_doc",
    "dumps",
    "loads",
]


class Matrix:
    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring: Ring, data):
        data = tuple(tuple(r) for r in data)
        if not data or not data[0]:
            raise DimMismatch("matrices must have at least one row and one column")
        width = len(data[0])
        if any(len(r) != width for r in data):
            raise DimMismatch("ragged rows")
        self.ring = ring
        self.rows = len(data)
        self.cols = width
        self.data = data

    @classmethod
    def from_entries(cls, ring: Ring, rows) -> "Matrix":
        """Build from nested sequences of ints, strings, Fractions or ring elements."""
        return cls(ring, [[ring(x).value for x in row] for row in rows])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> RingElement:
        i, j = ij
        return RingElement(self.ring, self.data[i][j])

    def entries(self) -> list[list[RingElement]]:
        return [[RingElement(self.ring, x) for x in row] for row in self.data]

    def column_entries(self, j: int = 0) -> list[RingElement]:
        return [RingElement(self.ring, row[j]) for row in self.data]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.data == other.data

    def __hash__(self):
        key = self.ring.key
        return hash((self.ring, tuple(tuple(key(x) for x in r) for r in self.data)))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        if isinstance(other, RingElement):
            return self.scale(other)
        if isinstance(other, int):
            return self.scale(self.ring(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (RingElement, int)):
            return self.scale(other if isinstance(other, RingElement) else self.ring(other))
        return NotImplemented

    def __add__(self, other):
        return mat_add(self, other)

    def __sub__(self, other):
        return mat_add(self, -other)

    def __neg__(self):
        neg = self.ring.neg
        return Matrix(self.ring, [[neg(x) for x in r] for r in self.data])

    def scale(self, c: RingElement) -> "Matrix":
        if c.ring != self.ring:
            raise OwnerMismatch(f"{c.ring} vs {self.ring}")
        mul = self.ring.mul
        return Matrix(self.ring, [[mul(c.value, x) for x in r] for r in self.data])

    @property
    def T(self) -> "Matrix":
        return transpose(self)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_identity(self) -> bool:
        return self.is_square() and self == identity(self.ring, self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.ring, [[self.data[i][j] for j in cols] for i in rows])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix(self.ring, [r[c0:c1] for r in self.data[r0:r1]])

    def map(self, fn: Callable, ring: Ring) -> "Matrix":
        """Apply ``fn`` to every entry (as a RingElement); results must lie in ``ring``."""
        return Matrix(ring, [[ring(fn(RingElement(self.ring, x))).value for x in r] for r in self.data])

    def tolist(self) -> list[list[str]]:
        fmt = self.ring.format
        return [[fmt(x) for x in r] for r in self.data]

    def __str__(self):
        cells = self.tolist()
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in r) + "]" for r in cells)

    def __repr__(self):
        return f"Matrix({self.ring}, {self.tolist()})"


def identity(ring: Ring, n: int) -> Matrix:
    z, o = ring.zero(), ring.one()
    return Matrix(ring, [[o if i == j else z for j in range(n)] for i in range(n)])


def zeros(ring: Ring, rows: int, cols: int | None = None) -> Matrix:
    z = ring.zero()
    return Matrix(ring, [[z] * (rows if cols is None else cols) for _ in range(rows)])


def basis_e(ring: Ring, n: int, i: int, j: int) -> Matrix:
    """The n x n matrix with 1 at the 1-based position (i, j)."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise DimMismatch(f"({i}, {j}) outside a {n}x{n} matrix")
    z, o = ring.zero(), ring.one()
    return Matrix(ring, [[o if (r, c) == (i - 1, j - 1) else z for c in range(n)] for r in range(n)])


def column(ring: Ring, values) -> Matrix:
    return Matrix(ring, [[ring(v).value] for v in values])


def _same_ring(A: Matrix, B: Matrix):
    if A.ring != B.ring:
        raise OwnerMismatch(f"{A.ring} vs {B.ring}")


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    _same_ring(A, B)
    if A.cols != B.rows:
        raise DimMismatch(f"{A.shape} times {B.shape}")
    ring = A.ring
    add, mul, iz = ring.add, ring.mul, ring.is_zero
    zero = ring.zero()
    bcols = list(zip(*B.data))
    out = []
    for row in A.data:
        nz = [(k, x) for k, x in enumerate(row) if not iz(x)]
        new_row = []
        for col in bcols:
            acc = zero
            for k, x in nz:
                y = col[k]
                if not iz(y):
                    acc = add(acc, mul(x, y))
            new_row.append(acc)
        out.append(new_row)
    return Matrix(ring, out)


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    _same_ring(A, B)
    if A.shape != B.shape:
        raise DimMismatch(f"{A.shape} plus {B.shape}")
    add = A.ring.add
    return Matrix(A.ring, [[add(x, y) for x, y in zip(r, s)] for r, s in zip(A.data, B.data)])


def transpose(A: Matrix) -> Matrix:
    return Matrix(A.ring, list(zip(*A.data)))


def perp(A: Matrix, B: Matrix) -> Matrix:
    """Block diagonal sum of A and B."""
    _same_ring(A, B)
    z = A.ring.zero()
    top = [list(r) + [z] * B.cols for r in A.data]
    bottom = [[z] * A.cols + list(r) for r in B.data]
    return Matrix(A.ring, top + bottom)


def from_blocks(blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    rows = []
    for band in blocks:
        height = band[0].rows
        if any(b.rows != height for b in band):
            raise DimMismatch("block heights differ")
        for k in range(height):
            rows.append([x for b in band for x in b.data[k]])
    ring = blocks[0][0].ring
    for band in blocks:
        for b in band:
            _same_ring(blocks[0][0], b)
    return Matrix(ring, rows)


# ---------------------------------------------------------------------------
# determinants and inverses


def _det_laplace(ring: Ring, data) -> object:
    """Laplace expansion along rows, memoized on the set of columns still free."""
    n = len(data)
    add, mul, neg, iz = ring.add, ring.mul, ring.neg, ring.is_zero

    @lru_cache(maxsize=None)
    def rec(k: int, mask: int):
        if k == n:
            return ring.one()
        acc = ring.zero()
        sign = 0
        for j in range(n):
            if mask >> j & 1:
                x = data[k][j]
                if not iz(x):
                    term = mul(x, rec(k + 1, mask & ~(1 << j)))
                    acc = add(acc, neg(term) if sign else term)
                sign ^= 1
        return acc

    return rec(0, (1 << n) - 1)


def _det_bareiss(ring: Ring, data) -> object:
    """Fraction-free elimination; exact divisions are valid in an integral domain."""
    M = [list(r) for r in data]
    n = len(M)
    iz = ring.is_zero
    sign = False
    prev = ring.one()
    for k in range(n - 1):
        if iz(M[k][k]):
            for r in range(k + 1, n):
                if not iz(M[r][k]):
                    M[k], M[r] = M[r], M[k]
                    sign = not sign
                    break
            else:
                return ring.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(M[i][j], M[k][k]), ring.mul(M[i][k], M[k][j]))
                M[i][j] = ring.divide(num, prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return ring.neg(d) if sign else d


def _det_payload(ring: Ring, data):
    n = len(data)
    if n <= 4 or not ring.is_domain or isinstance(ring, PolyRing):
        return _det_laplace(ring, tuple(tuple(r) for r in data))
    return _det_bareiss(ring, data)


def det(A: Matrix) -> RingElement:
    """Cofactor expansion up to size 4 or over non-domains, fraction-free elimination otherwise."""
    if not A.is_square():
        raise NotSquare(f"determinant of a {A.rows}x{A.cols} matrix")
    return RingElement(A.ring, _det_payload(A.ring, A.data))


def adjugate(A: Matrix) -> Matrix:
    if not A.is_square():
        raise NotSquare(f"adjugate of a {A.rows}x{A.cols} matrix")
    n, ring = A.rows, A.ring
    if n == 1:
        return identity(ring, 1)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(A.data) if k != i]
            d = _det_payload(ring, minor)
            out[j][i] = ring.neg(d) if (i + j) % 2 else d
    return Matrix(ring, out)


def mat_inverse(A: Matrix) -> Matrix:
    """Inverse as adjugate times det^-1; works over rings with zero divisors."""
    d = det(A)
    if not d.is_unit():
        raise NotInvertible(f"determinant {d} is not a unit in {A.ring}")
    return adjugate(A).scale(d.inverse())


# ---------------------------------------------------------------------------
# Pfaffian


def is_skew(A: Matrix) -> bool:
    """``A^t = -A`` with zero diagonal."""
    if not A.is_square():
        return False
    ring = A.ring
    for i in range(A.rows):
        if not ring.is_zero(A.data[i][i]):
            return False
        for j in range(i + 1, A.rows):
            if A.data[j][i] != ring.neg(A.data[i][j]):
                return False
    return True


def pfaffian(A: Matrix) -> RingElement:
    """Pfaffian by expansion along the first row, normalized so Pf([[0,1],[-1,0]]) = 1."""
    if not A.is_square():
        raise NotSquare(f"Pfaffian of a {A.rows}x{A.cols} matrix")
    if A.rows % 2:
        raise OddSize(f"Pfaffian of odd size {A.rows}")
    if not is_skew(A):
        raise NotSkew("Pfaffian needs a skew-symmetric matrix with zero diagonal")
    ring, data = A.ring, A.data
    add, mul, neg, iz = ring.add, ring.mul, ring.neg, ring.is_zero

    @lru_cache(maxsize=None)
    def rec(idx: tuple[int, ...]):
        if not idx:
            return ring.one()
        first, rest = idx[0], idx[1:]
        acc = ring.zero()
        for q, j in enumerate(rest):
            x = data[first][j]
            if iz(x):
                continue
            term = mul(x, rec(rest[:q] + rest[q + 1:]))
            acc = add(acc, neg(term) if q % 2 else term)
        return acc

    return RingElement(ring, rec(tuple(range(A.rows))))


def mat_mod_ideal(A: Matrix, ideal: Ideal) -> Matrix:
    """Entrywise normal form modulo ``ideal`` (representatives stay in ``A.ring``)."""
    if ideal.ring != A.ring:
        raise OwnerMismatch(f"{ideal.ring} vs {A.ring}")
    red = ideal._reduce
    return Matrix(A.ring, [[red(x) for x in r] for r in A.data])


# ---------------------------------------------------------------------------
# JSON documents


def to_doc(A: Matrix) -> dict:
    return {"ring": str(A.ring), "rows": A.tolist()}


def from_doc(doc: dict, ring: Ring | None = None) -> Matrix:
    try:
        ring = ring or ring_make(doc["ring"])
        rows = doc["rows"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"matrix document needs 'ring' and 'rows': {exc}") from exc
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("'rows' must be a list of lists")
    return Matrix.from_entries(ring, [[str(x) for x in r] for r in rows])


def dumps(A: Matrix) -> str:
    return json.dumps(to_doc(A), sort_keys=True)


def loads(text: str) -> Matrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    return from_doc(doc)
