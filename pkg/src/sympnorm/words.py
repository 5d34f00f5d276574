"""Formal words in the symplectic generators and the identities that rewrite them.

A :class:`GroupWord` is an ordered list of atoms over a fixed :class:`SkewForm`.
Atoms are ``SE(i, j, a)`` (only over the standard form psi_n), ``Cgen(v)``,
``Rgen(v)`` and ``Inverse(atom)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import BadCase, BadIndices, ContextMismatch, DimMismatch, NotHalvable, ParseError
from .forms import (
    C_of,
    R_of,
    SkewForm,
    as_vector,
    make_se,
    make_skewform,
    psi_form,
    sigma,
)
from .matrix import Matrix, from_doc, identity, mat_inverse, to_doc, transpose
from .rings import Ring, RingElement, halve, ring_make

__all__ = [
    "SE",
    "Cgen",
    "Rgen",
    "Inverse",
    "Atom",
    "GroupWord",
    "atom_matrix",
    "atom_inverse",
    "word_eval",
    "decompose_C_psi",
    "decompose_R_psi",
    "commutator",
    "commutator_identity_check",
    "rewrite_se_off_corner",
    "split_generator",
    "corner_to_generator",
    "transport_word",
    "form_to_json",
    "form_from_json",
    "atom_to_json",
    "atom_from_json",
    "word_to_doc",
    "word_from_doc",
]


@dataclass(frozen=True)
class SE:
    i: int
    j: int
    a: RingElement


@dataclass(frozen=True)
class Cgen:
    v: tuple[RingElement, ...]


@dataclass(frozen=True)
class Rgen:
    v: tuple[RingElement, ...]


@dataclass(frozen=True)
class Inverse:
    of: "Atom"


Atom = Union[SE, Cgen, Rgen, Inverse]


def atom_inverse(atom: Atom) -> Atom:
    """Closed-form inverse: se_ij(a)^-1 = se_ij(-a), C(v)^-1 = C(-v), R(v)^-1 = R(-v)."""
    if isinstance(atom, Inverse):
        return atom.of
    if isinstance(atom, SE):
        return SE(atom.i, atom.j, -atom.a)
    if isinstance(atom, Cgen):
        return Cgen(tuple(-x for x in atom.v))
    return Rgen(tuple(-x for x in atom.v))


def _resolve(atom: Atom) -> Atom:
    while isinstance(atom, Inverse):
        inner = atom.of
        if isinstance(inner, Inverse):
            atom = inner.of
        else:
            return atom_inverse(inner)
    return atom


def atom_matrix(F: SkewForm, atom: Atom) -> Matrix:
    atom = _resolve(atom)
    if isinstance(atom, SE):
        return make_se(F.ring, F.n, atom.i, atom.j, atom.a)
    if isinstance(atom, Cgen):
        return C_of(F, atom.v)
    return R_of(F, atom.v)


def _check_atom(F: SkewForm, atom: Atom, standard: bool) -> None:
    if isinstance(atom, Inverse):
        _check_atom(F, atom.of, standard)
    elif isinstance(atom, SE):
        if not standard:
            raise ContextMismatch("se atoms need the standard form psi_n as context")
        N = 2 * F.n
        if atom.i == atom.j or not (1 <= atom.i <= N and 1 <= atom.j <= N):
            raise BadIndices(f"se_{{{atom.i},{atom.j}}} with n={F.n}")
        if atom.a.ring != F.ring:
            raise ContextMismatch(f"atom over {atom.a.ring} in a word over {F.ring}")
    elif isinstance(atom, (Cgen, Rgen)):
        if len(atom.v) != 2 * F.n - 1:
            raise DimMismatch(f"vector of length {len(atom.v)} for n={F.n}")
        if any(x.ring != F.ring for x in atom.v):
            raise ContextMismatch(f"vector entries not in {F.ring}")
    else:
        raise TypeError(f"not an atom: {atom!r}")


class GroupWord:
    """Ordered product of atoms over one skew form."""

    __slots__ = ("form", "atoms")

    def __init__(self, form: SkewForm, atoms: Iterable[Atom] = ()):
        self.form = form
        self.atoms = tuple(atoms)
        standard = None
        for a in self.atoms:
            if standard is None and _has_se(a):
                standard = form.is_standard
            _check_atom(form, a, bool(standard))

    @property
    def ring(self) -> Ring:
        return self.form.ring

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __add__(self, other: "GroupWord") -> "GroupWord":
        if not isinstance(other, GroupWord):
            return NotImplemented
        if other.form != self.form:
            raise ContextMismatch("cannot concatenate words over different forms")
        return GroupWord(self.form, self.atoms + other.atoms)

    def __eq__(self, other):
        return isinstance(other, GroupWord) and self.form == other.form and self.atoms == other.atoms

    def __hash__(self):
        return hash((self.form, self.atoms))

    def inverse(self) -> "GroupWord":
        return GroupWord(self.form, [atom_inverse(a) if isinstance(a, Inverse) else Inverse(a) for a in reversed(self.atoms)])

    def evaluate(self) -> Matrix:
        return word_eval(self)

    def __repr__(self):
        return f"GroupWord(n={self.form.n}, {len(self.atoms)} atoms)"


def _has_se(atom: Atom) -> bool:
    while isinstance(atom, Inverse):
        atom = atom.of
    return isinstance(atom, SE)


def word_eval(w: GroupWord) -> Matrix:
    M = identity(w.ring, 2 * w.form.n)
    for a in w.atoms:
        M = M * atom_matrix(w.form, a)
    return M


# ---------------------------------------------------------------------------
# psi_n decompositions and the commutator calculus


def _as_elems(ring: Ring, v) -> list[RingElement]:
    if isinstance(v, Matrix):
        return v.column_entries()
    return [ring(x) for x in v]


def decompose_C_psi(ring: Ring, n: int, v) -> GroupWord:
    """Word ``se_21(a_1 - q) se_31(a_2) ... se_{2n,1}(a_{2n-1})`` equal to C_psi(v).

    The tail product contributes a quadratic term ``q`` to the (2,1) entry,
    which the first factor absorbs.
    """
    F = psi_form(ring, n)
    a = _as_elems(ring, v)
    if len(a) != 2 * n - 1:
        raise DimMismatch(f"vector of length {len(a)}, expected {2 * n - 1}")
    tail = [SE(i, 1, a[i - 2]) for i in range(3, 2 * n + 1)]
    q = word_eval(GroupWord(F, tail))[1, 0]
    return GroupWord(F, [SE(2, 1, a[0] - q)] + tail)


def decompose_R_psi(ring: Ring, n: int, v) -> GroupWord:
    """Word ``se_12(a_1 - q) se_13(a_2) ... se_{1,2n}(a_{2n-1})`` equal to R_psi(v)."""
    F = psi_form(ring, n)
    a = _as_elems(ring, v)
    if len(a) != 2 * n - 1:
        raise DimMismatch(f"vector of length {len(a)}, expected {2 * n - 1}")
    tail = [SE(1, i, a[i - 2]) for i in range(3, 2 * n + 1)]
    q = word_eval(GroupWord(F, tail))[0, 1]
    return GroupWord(F, [SE(1, 2, a[0] - q)] + tail)


def commutator(x: Matrix, y: Matrix) -> Matrix:
    """``[x, y] = x y x^-1 y^-1``."""
    return x * y * mat_inverse(x) * mat_inverse(y)


def _commutator_word(F: SkewForm, x: SE, y: SE) -> list[Atom]:
    return [x, y, atom_inverse(x), atom_inverse(y)]


def commutator_identity_check(ring: Ring, n: int, case: int, i: int, j: int, k: int, a, b) -> bool:
    """Evaluate both sides of one of the three commutator identities for se generators.

    case 1: [se_{i s(i)}(a), se_{s(i) j}(b)] = se_ij(ab) se_{s(j) j}((-1)^{i+j} a b^2),  j != i, s(i)
    case 2: [se_ik(a), se_kj(b)] = se_ij(ab),  k != s(i), s(j)
    case 3: [se_ik(a), se_{k s(i)}(b)] = se_{i s(i)}(2ab),  k != i, s(i)
    """
    N = 2 * n
    a, b = ring(a), ring(b)
    for x in (i, j, k):
        if not 1 <= x <= N:
            raise BadCase(f"index {x} outside 1..{N}")
    se = lambda p, q, c: make_se(ring, n, p, q, c)  # noqa: E731
    # se_pq(c)^-1 = se_pq(-c)
    comm = lambda p, q, c, r, s, e: se(p, q, c) * se(r, s, e) * se(p, q, -c) * se(r, s, -e)  # noqa: E731
    si, sj = sigma(i), sigma(j)
    if case == 1:
        if j in (i, si):
            raise BadCase("case 1 needs j != i, sigma(i)")
        lhs = comm(i, si, a, si, j, b)
        sign = 1 if (i + j) % 2 == 0 else -1
        rhs = se(i, j, a * b) * se(sj, j, a * b * b * sign)
    elif case == 2:
        if len({i, j, k}) < 3 or k in (si, sj) or j == si:
            raise BadCase("case 2 needs distinct i, j, k with k != sigma(i), sigma(j) and j != sigma(i)")
        lhs = comm(i, k, a, k, j, b)
        rhs = se(i, j, a * b)
    elif case == 3:
        if k in (i, si):
            raise BadCase("case 3 needs k != i, sigma(i)")
        lhs = comm(i, k, a, k, si, b)
        rhs = se(i, si, a * b * 2)
    else:
        raise BadCase(f"unknown case {case}")
    return lhs == rhs


def rewrite_se_off_corner(ring: Ring, n: int, i: int, j: int, a) -> GroupWord:
    """Express se_ij(a), i, j != 1, as a word in se_1k and se_k1 only.

    Schedule (pivot index 1):

    * i, j >= 3, j != sigma(i): [se_i1(a), se_1j(1)];
    * i, j >= 3, j == sigma(i): [se_i1(a/2), se_1j(1)];
    * i == 2: [se_21(a), se_1j(1)] followed by the rewritten compensation
      se_{sigma(j) j}(-(-1)^j a);
    * j == 2: se_i2(a) equals the corner atom se_{1 sigma(i)}(-(-1)^i a).
    """
    N = 2 * n
    if i == j or not (2 <= i <= N and 2 <= j <= N):
        raise BadIndices(f"se_{{{i},{j}}} is not an off-corner generator for n={n}")
    if not ring.has_half:
        raise NotHalvable(f"rewriting needs 1/2 in {ring}")
    F = psi_form(ring, n)
    a = ring(a)
    if a.is_zero():
        return GroupWord(F, [])
    one = RingElement(ring, ring.one())
    if i >= 3 and j >= 3:
        x = halve(a) if j == sigma(i) else a
        return GroupWord(F, _commutator_word(F, SE(i, 1, x), SE(1, j, one)))
    if i == 2:
        head = _commutator_word(F, SE(2, 1, a), SE(1, j, one))
        comp = -a if j % 2 == 0 else a
        return GroupWord(F, head) + rewrite_se_off_corner(ring, n, sigma(j), j, comp)
    # j == 2
    coeff = -a if i % 2 == 0 else a
    return GroupWord(F, [SE(1, sigma(i), coeff)])


def split_generator(F: SkewForm, kind: str, v, w) -> GroupWord:
    """The sandwich ``K(v/2) K(w) K(v/2)`` equal to ``K(v + w)`` for K in {C, R}."""
    if not F.ring.has_half:
        raise NotHalvable(f"splitting needs 1/2 in {F.ring}")
    v = _as_elems(F.ring, v)
    w = _as_elems(F.ring, w)
    cls = {"C": Cgen, "R": Rgen}[kind]
    half = tuple(halve(x) for x in v)
    return GroupWord(F, [cls(half), cls(tuple(w)), cls(half)])


def corner_to_generator(atom: SE, n: int) -> Atom:
    """se_i1(a) = C_psi(a e_{i-1}) and se_1i(a) = R_psi(a e_{i-1})."""
    ring = atom.a.ring
    zero = RingElement(ring, ring.zero())
    v = [zero] * (2 * n - 1)
    if atom.j == 1:
        v[atom.i - 2] = atom.a
        return Cgen(tuple(v))
    if atom.i == 1:
        v[atom.j - 2] = atom.a
        return Rgen(tuple(v))
    raise BadIndices(f"se_{{{atom.i},{atom.j}}} is not a corner atom")


def transport_word(w: GroupWord, target: SkewForm, eps0: Matrix) -> GroupWord:
    """Conjugate a psi_n word of C/R atoms by 1+eps0, landing in ESp of ``target``.

    With phi = (1+eps0)^t psi (1+eps0):
    (1+eps0)^-1 C_psi(v) (1+eps0) = C_phi(eps0^-1 v) and
    (1+eps0)^-1 R_psi(v) (1+eps0) = R_phi(eps0^t v).
    """
    e_inv = mat_inverse(eps0)
    e_t = transpose(eps0)
    out: list[Atom] = []
    for a in w.atoms:
        a = _resolve(a)
        if isinstance(a, SE):
            a = corner_to_generator(a, w.form.n)
        v = as_vector(w.form, a.v)
        if isinstance(a, Cgen):
            out.append(Cgen(tuple((e_inv * v).column_entries())))
        else:
            out.append(Rgen(tuple((e_t * v).column_entries())))
    return GroupWord(target, out)


# ---------------------------------------------------------------------------
# JSON


def form_to_json(F: SkewForm):
    return f"psi:{F.n}" if F.is_standard else to_doc(F.phi)


def form_from_json(doc, ring: Ring | None = None) -> SkewForm:
    if isinstance(doc, str):
        if not doc.startswith("psi:") or not doc[4:].isdigit():
            raise ParseError(f"bad form reference {doc!r}")
        if ring is None:
            raise ParseError("a psi:n form needs a ring")
        return psi_form(ring, int(doc[4:]))
    return make_skewform(from_doc(doc, ring))


def atom_to_json(a: Atom) -> dict:
    if isinstance(a, Inverse):
        return {"kind": "inv", "of": atom_to_json(a.of)}
    if isinstance(a, SE):
        return {"kind": "se", "i": a.i, "j": a.j, "a": str(a.a)}
    kind = "C" if isinstance(a, Cgen) else "R"
    return {"kind": kind, "v": [str(x) for x in a.v]}


def atom_from_json(doc: dict, ring: Ring) -> Atom:
    try:
        kind = doc["kind"]
        if kind == "inv":
            return Inverse(atom_from_json(doc["of"], ring))
        if kind == "se":
            return SE(int(doc["i"]), int(doc["j"]), ring.parse(str(doc["a"])))
        if kind in ("C", "R"):
            v = tuple(ring.parse(str(x)) for x in doc["v"])
            return Cgen(v) if kind == "C" else Rgen(v)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad atom {doc!r}") from exc
    raise ParseError(f"unknown atom kind {doc.get('kind')!r}")


def word_to_doc(w: GroupWord) -> dict:
    return {
        "ring": str(w.ring),
        "form": form_to_json(w.form),
        "atoms": [atom_to_json(a) for a in w.atoms],
    }


def word_from_doc(doc: dict, ring: Ring | None = None, form: SkewForm | None = None) -> GroupWord:
    if not isinstance(doc, dict) or "atoms" not in doc:
        raise ParseError("word document needs 'atoms'")
    if form is None:
        if ring is None:
            if "ring" in doc:
                ring = ring_make(doc["ring"])
            elif isinstance(doc.get("form"), dict):
                ring = ring_make(doc["form"]["ring"])
            else:
                raise ParseError("word document needs a ring")
        form = form_from_json(doc.get("form"), ring)
    return GroupWord(form, [atom_from_json(a, form.ring) for a in doc["atoms"]])
