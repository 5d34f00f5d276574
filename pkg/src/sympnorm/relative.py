"""Relative words, relative factorization, dilation/homogenization and the normality witness."""

from __future__ import annotations

from typing import Sequence

from .errors import (
    ContextMismatch,
    HypothesisNotMet,
    IdealViolation,
    LengthMismatch,
    NotHalvable,
    NotPolynomialRing,
    NotSymplectic,
    SympnormError,
)
from .forms import SkewForm, psi_form, sp_check, symplectic_inverse, transport_back
from .ideals import Ideal, enumerate_max_ideals, make_ideal
from .matrix import Matrix, identity, mat_mod_ideal, to_doc
from .rings import (
    PolyRing,
    Ring,
    RingElement,
    ZMod,
    adjoin,
    coerce,
    halve,
    homogenize_map,
    localize_at,
    partial_substitute,
)
from .standard_form import cert_eval, reduce_to_psi_corner, sp_local_word
from .words import (
    SE,
    Atom,
    Cgen,
    GroupWord,
    Inverse,
    Rgen,
    atom_from_json,
    atom_to_json,
    corner_to_generator,
    form_from_json,
    form_to_json,
    rewrite_se_off_corner,
    transport_word,
    word_to_doc,
)

__all__ = [
    "RelativeWord",
    "shuffle_identity",
    "split_vector",
    "relative_factorize",
    "rsp_kernel_check",
    "dilate_word",
    "multi_dilate_conjugated",
    "substitute_matrix",
    "homogenize_matrix",
    "elementary_certificate",
    "normality_witness",
    "relative_to_doc",
    "relative_from_doc",
]


def _atom_vectors(atom: Atom):
    while isinstance(atom, Inverse):
        atom = atom.of
    if isinstance(atom, SE):
        return [atom.a]
    return list(atom.v)


class RelativeWord:
    """Product of conjugates ``conj * core * conj^-1``.

    With an ideal attached, every entry of every core atom must lie in it.
    """

    __slots__ = ("form", "pairs", "ideal")

    def __init__(self, form: SkewForm, pairs: Sequence[tuple[GroupWord, GroupWord]], ideal: Ideal | None = None):
        self.form = form
        self.pairs = tuple((c, k) for c, k in pairs)
        self.ideal = ideal
        for conj, core in self.pairs:
            if conj.form != form or core.form != form:
                raise ContextMismatch("relative word mixes forms")
            if ideal is not None:
                for atom in core.atoms:
                    if not all(ideal.contains(x) for x in _atom_vectors(atom)):
                        raise IdealViolation(f"core atom {atom_to_json(atom)} not over {ideal}")

    def __len__(self):
        return len(self.pairs)

    def to_word(self) -> GroupWord:
        w = GroupWord(self.form, [])
        for conj, core in self.pairs:
            w = w + conj + core + conj.inverse()
        return w

    def evaluate(self) -> Matrix:
        M = identity(self.form.ring, 2 * self.form.n)
        for conj, core in self.pairs:
            C = conj.evaluate()
            M = M * C * core.evaluate() * symplectic_inverse(self.form.phi, self.form.phi_inv, C)
        return M


def shuffle_identity(a_words: Sequence[GroupWord], b_words: Sequence[GroupWord]):
    """``prod a_i b_i = (prod A_i b_i A_i^-1) * prod a_i`` with ``A_i = a_1 ... a_i``.

    Returns the relative-shaped product (pairs ``(A_i, b_i)``) and the tail word.
    """
    if len(a_words) != len(b_words):
        raise LengthMismatch(f"{len(a_words)} a-words vs {len(b_words)} b-words")
    if not a_words:
        raise LengthMismatch("shuffle needs at least one pair")
    form = a_words[0].form
    prefix = GroupWord(form, [])
    pairs = []
    for a, b in zip(a_words, b_words):
        prefix = prefix + a
        pairs.append((prefix, b))
    return RelativeWord(form, pairs), prefix


def split_vector(v, ideal: Ideal) -> tuple[list[RingElement], list[RingElement]]:
    """``v = u + w`` with ``u`` the entrywise normal form modulo the ideal and ``w`` in it."""
    if isinstance(v, Matrix):
        v = v.column_entries()
    u = [ideal.reduce(x) for x in v]
    w = [x - y for x, y in zip(v, u)]
    return u, w


def _signed_generators(w: GroupWord) -> list[tuple[type, tuple, bool]]:
    """Flatten a word into (C or R class, vector, negated?) triples."""
    out = []
    n = w.form.n

    def visit(atom, neg: bool):
        if isinstance(atom, Inverse):
            visit(atom.of, not neg)
        elif isinstance(atom, (Cgen, Rgen)):
            out.append((type(atom), atom.v, neg))
        elif atom.i == 1 or atom.j == 1:
            g = corner_to_generator(atom, n)
            out.append((type(g), g.v, neg))
        else:
            sub = rewrite_se_off_corner(w.ring, n, atom.i, atom.j, atom.a)
            atoms = sub.inverse().atoms if neg else sub.atoms
            for a in atoms:
                visit(a, False)

    for atom in w.atoms:
        visit(atom, False)
    return out


def _nonzero(atoms: list[Atom]) -> list[Atom]:
    return [a for a in atoms if not all(x.is_zero() for x in _atom_vectors(a))]


def relative_factorize(w: GroupWord, ideal: Ideal) -> RelativeWord:
    """Rewrite a word that is trivial modulo ``ideal`` as a product of conjugated cores over the ideal.

    Each generator K(v) is split as K(u/2) K(w) K(u/2) with u the normal form of
    v modulo the ideal.  The residual word prod K_i(u_i) must evaluate to the
    identity; when it does, the shuffle identity leaves only conjugates
    ``(K_1(u_1) ... K_{i-1}(u_{i-1}) K_i(u_i/2)) K_i(w_i) (...)^-1``.
    """
    form = w.form
    ring = form.ring
    if not ring.has_half:
        raise NotHalvable(f"relative factorization needs 1/2 in {ring}")
    if ideal.ring != ring:
        raise ContextMismatch(f"ideal over {ideal.ring}, word over {ring}")
    gens = []
    for cls, v, neg in _signed_generators(w):
        u, wv = split_vector(list(v), ideal)
        if neg:
            u, wv = [-x for x in u], [-x for x in wv]
        gens.append((cls, tuple(u), tuple(wv)))
    residual = GroupWord(form, [cls(u) for cls, u, _ in gens])
    if not residual.evaluate().is_identity():
        raise HypothesisNotMet("the residual word prod K_i(u_i) is not the identity")
    if not gens:
        return RelativeWord(form, [], ideal)
    a_words = [GroupWord(form, [cls(u)]) for cls, u, _ in gens]
    b_words = [
        GroupWord(form, [cls(tuple(-halve(x) for x in u)), cls(wv), cls(tuple(halve(x) for x in u))])
        for cls, u, wv in gens
    ]
    shaped, _tail = shuffle_identity(a_words, b_words)
    pairs = []
    for (prefix, _b), (cls, u, wv) in zip(shaped.pairs, gens):
        if all(x.is_zero() for x in wv):
            continue
        # A_i K_i(-u_i/2) = A_{i-1} K_i(u_i/2)
        conj = list(prefix.atoms[:-1]) + [cls(tuple(halve(x) for x in u))]
        pairs.append((GroupWord(form, _nonzero(conj)), GroupWord(form, [cls(wv)])))
    out = RelativeWord(form, pairs, ideal)
    if out.evaluate() != w.evaluate():
        raise SympnormError("internal error: relative factorization changed the value")
    return out


def rsp_kernel_check(F: SkewForm, M: Matrix, ideal: Ideal) -> bool:
    """True iff M is in Sp_phi and M is congruent to the identity modulo the ideal."""
    if not sp_check(F.phi, M):
        return False
    return mat_mod_ideal(M, ideal) == mat_mod_ideal(identity(M.ring, M.rows), ideal)


# ---------------------------------------------------------------------------
# dilation and homogenization


def _scale_atom(atom: Atom, target: Ring, x: RingElement) -> Atom:
    if isinstance(atom, Inverse):
        return Inverse(_scale_atom(atom.of, target, x))
    if isinstance(atom, SE):
        return SE(atom.i, atom.j, coerce(atom.a, target) * x)
    return type(atom)(tuple(coerce(y, target) * x for y in atom.v))


def dilate_word(w: GroupWord, X: str = "X") -> GroupWord:
    """Replace every payload p by p*X; the result lives over R[X]."""
    target = adjoin(w.ring, [X])
    x = target.parse(X)
    return GroupWord(w.form.extend(target), [_scale_atom(a, target, x) for a in w.atoms])


def _embed_word(w: GroupWord, form: SkewForm) -> GroupWord:
    one = form.ring(1)
    return GroupWord(form, [_scale_atom(a, form.ring, one) for a in w.atoms])


def multi_dilate_conjugated(F: SkewForm, mu: Matrix, items, ideal: Ideal | None = None, prefix: str = "X"):
    """theta = mu (prod conj_i K_i(X_i) conj_i^-1) mu^-1 with X_i a vector of fresh variables.

    ``items`` holds ``(conj: GroupWord, kind: "C" | "R", w_i)``.  Returns
    ``(theta, names)`` where ``names[i][k]`` is the variable standing for the
    k-th entry of the i-th core vector; substituting ``w_i`` recovers
    ``mu * lambda * mu^-1``.
    """
    if not sp_check(F.phi, mu):
        raise NotSymplectic("mu is not in Sp_phi")
    m = 2 * F.n - 1
    names = [[f"{prefix}{i}_{k}" for k in range(1, m + 1)] for i in range(1, len(items) + 1)]
    for _conj, _kind, w in items:
        if len(w) != m:
            raise LengthMismatch(f"core vector of length {len(w)}, expected {m}")
        if ideal is not None and not all(ideal.contains(F.ring(x)) for x in w):
            raise IdealViolation(f"core vector not over {ideal}")
    target = adjoin(F.ring, [v for row in names for v in row])
    G = F.extend(target)
    lam = GroupWord(G, [])
    for (conj, kind, _w), row in zip(items, names):
        cls = {"C": Cgen, "R": Rgen}[kind]
        core = GroupWord(G, [cls(tuple(target.parse(v) for v in row))])
        c = _embed_word(conj, G)
        lam = lam + c + core + c.inverse()
    mu_t = mu.map(lambda x: coerce(x, target), target)
    theta = mu_t * lam.evaluate() * symplectic_inverse(G.phi, G.phi_inv, mu_t)
    return theta, names


def substitute_matrix(M: Matrix, assignment) -> Matrix:
    """Entrywise (partial) substitution of polynomial variables."""
    if not isinstance(M.ring, PolyRing):
        raise NotPolynomialRing(f"{M.ring} is not a polynomial ring")
    entries = [[partial_substitute(x, assignment) for x in row] for row in M.entries()]
    target = entries[0][0].ring
    return Matrix(target, [[x.value for x in row] for row in entries])


def homogenize_matrix(theta: Matrix, T: str = "T", variables: Sequence[str] | None = None) -> Matrix:
    """Apply ``a_0 + a_1 + a_2 + ... -> a_0 + a_1 T + a_2 T^2 + ...`` to every entry.

    Pass the dilation variables as ``variables`` when the base ring is itself
    polynomial, so that entries of the form stay in degree 0.
    """
    if not isinstance(theta.ring, PolyRing):
        raise NotPolynomialRing(f"{theta.ring} is not a polynomial ring")
    target = adjoin(theta.ring, [T])
    return Matrix(target, [[homogenize_map(x, T, variables).value for x in row] for row in theta.entries()])


# ---------------------------------------------------------------------------
# normality witness


def elementary_certificate(F: SkewForm, X: Matrix) -> GroupWord:
    """Explicit C/R word over F evaluating to X, for X in Sp_phi over a supported local ring.

    phi = (1+eps0)^t psi (1+eps0) by reduction; X is carried to Sp_2n, factored
    into se atoms by elimination, rewritten into corner atoms and carried back.
    """
    ring = F.ring
    eps0 = cert_eval(reduce_to_psi_corner(F.phi))
    psi = psi_form(ring, F.n)
    X1 = transport_back(F, psi, eps0, X)
    se_word = sp_local_word(X1)
    corner = []
    for atom in se_word.atoms:
        if atom.i == 1 or atom.j == 1:
            corner.append(atom)
        else:
            corner.extend(rewrite_se_off_corner(ring, F.n, atom.i, atom.j, atom.a).atoms)
    out = transport_word(GroupWord(psi, corner), F, eps0)
    if out.evaluate() != X:
        raise SympnormError("internal error: certificate word does not evaluate to X")
    return out


def _supports_certificate(ring: Ring) -> bool:
    return not isinstance(ring, PolyRing) and ring.is_local and ring.has_half


def normality_witness(F: SkewForm, gamma, delta, ideal: Ideal | None = None, certificate: bool = True) -> dict:
    """Conjugate ``gamma delta gamma^-1`` and every check that can be made on it.

    ``gamma`` is a matrix of Sp_phi or a word; ``delta`` a word over F (all
    vectors in the ideal when one is given) or a :class:`RelativeWord`.
    """
    ring = F.ring
    G = gamma.evaluate() if isinstance(gamma, GroupWord) else gamma
    if G.ring != ring:
        raise ContextMismatch(f"gamma over {G.ring}, form over {ring}")
    if not sp_check(F.phi, G):
        raise NotSymplectic("gamma is not in Sp_phi")
    if isinstance(delta, RelativeWord):
        if ideal is not None:
            RelativeWord(delta.form, delta.pairs, ideal)
        D = delta.evaluate()
    else:
        if delta.form != F:
            raise ContextMismatch("delta is a word over a different form")
        if ideal is not None:
            for atom in delta.atoms:
                if not all(ideal.contains(x) for x in _atom_vectors(atom)):
                    raise IdealViolation(f"delta atom {atom_to_json(atom)} not over {ideal}")
        D = delta.evaluate()
    X = G * D * symplectic_inverse(F.phi, F.phi_inv, G)
    report: dict = {
        "ring": str(ring),
        "form": form_to_json(F),
        "ideal": str(ideal) if ideal is not None else None,
        "conjugate": to_doc(X),
        "checks": {"symplectic": sp_check(F.phi, X)},
    }
    if ideal is not None:
        report["checks"]["kernel"] = rsp_kernel_check(F, X, ideal)
    if isinstance(ring, ZMod):
        local = []
        for p, _m in enumerate_max_ideals(ring):
            target, hom = localize_at(ring, p)
            Fl = F.map(hom, target)
            Xl = X.map(hom, target)
            entry = {"prime": p, "ring": str(target), "conjugate": to_doc(Xl), "symplectic": sp_check(Fl.phi, Xl)}
            if ideal is not None:
                Il = make_ideal(target, [hom(g) for g in ideal.generators])
                entry["kernel"] = rsp_kernel_check(Fl, Xl, Il)
            if certificate and _supports_certificate(target):
                word = elementary_certificate(Fl, Xl)
                entry["certificate_length"] = len(word)
                entry["certificate_verified"] = word.evaluate() == Xl
            local.append(entry)
        report["localizations"] = local
    if certificate and _supports_certificate(ring):
        word = elementary_certificate(F, X)
        report["certificate"] = {"word": word_to_doc(word), "verified": word.evaluate() == X}
    flags = list(report["checks"].values())
    for entry in report.get("localizations", []):
        flags += [v for k, v in entry.items() if k in ("symplectic", "kernel", "certificate_verified")]
    if "certificate" in report:
        flags.append(report["certificate"]["verified"])
    report["passed"] = all(flags)
    return report


# ---------------------------------------------------------------------------
# JSON


def relative_to_doc(rw: RelativeWord) -> dict:
    return {
        "ring": str(rw.form.ring),
        "form": form_to_json(rw.form),
        "ideal": [str(g) for g in rw.ideal.generators] if rw.ideal is not None else None,
        "pairs": [
            {
                "conj": [atom_to_json(a) for a in conj.atoms],
                "core": atom_to_json(core.atoms[0]) if len(core) == 1 else [atom_to_json(a) for a in core.atoms],
            }
            for conj, core in rw.pairs
        ],
    }


def relative_from_doc(doc: dict, ring: Ring | None = None) -> RelativeWord:
    from .errors import ParseError
    from .rings import ring_make

    try:
        ring = ring or ring_make(doc["ring"])
        form = form_from_json(doc["form"], ring)
        ideal = None
        if doc.get("ideal") is not None:
            ideal = make_ideal(ring, [ring.parse(str(g)) for g in doc["ideal"]])
        pairs = []
        for p in doc["pairs"]:
            conj = GroupWord(form, [atom_from_json(a, ring) for a in p["conj"]])
            core_doc = p["core"]
            core_atoms = core_doc if isinstance(core_doc, list) else [core_doc]
            pairs.append((conj, GroupWord(form, [atom_from_json(a, ring) for a in core_atoms])))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad relative word document: {exc}") from exc
    return RelativeWord(form, pairs, ideal)
