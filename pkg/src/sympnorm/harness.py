"""Seeded property suites.

Every trial draws from its own ``random.Random`` keyed by (seed, suite, ring,
n, trial), so a single failing trial can be replayed in isolation and the
aggregated output depends only on the configuration.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from typing import Callable

from .errors import BadCase, OutOfRange, SympnormError, UnsupportedRing
from .forms import (
    C_of,
    R_of,
    _build_form,
    alpha_of,
    beta_of,
    conjugate_transport,
    make_psi,
    make_se,
    psi_form,
    sigma,
    sp_check,
    symplectic_inverse,
    transport_back,
)
from .ideals import Ideal, make_ideal
from .matrix import Matrix, basis_e, identity, mat_inverse, perp, pfaffian, transpose
from .relative import (
    RelativeWord,
    dilate_word,
    homogenize_matrix,
    multi_dilate_conjugated,
    normality_witness,
    relative_factorize,
    rsp_kernel_check,
    shuffle_identity,
    substitute_matrix,
)
from .rings import PolyRing, Ring, RingElement, ZLoc, ZMod, prime_factors, ring_make
from .standard_form import (
    ElementaryCertificate,
    cert_eval,
    random_elementary_steps,
    random_pf1_form,
    reduce_to_psi_corner,
    sp_local_word,
)
from .words import (
    Cgen,
    GroupWord,
    Inverse,
    Rgen,
    commutator_identity_check,
    decompose_C_psi,
    decompose_R_psi,
    rewrite_se_off_corner,
    split_generator,
    transport_word,
)

__all__ = [
    "DEFAULT_RINGS",
    "SUITES",
    "TrialConfig",
    "run_suite",
    "selftest",
    "pfaffian_matchings",
    "random_word",
    "random_vector",
    "default_ideal",
]

DEFAULT_RINGS = ("zmod:9", "zmod:25", "zloc:3", "poly:zmod:9:[X]")


@dataclass(frozen=True)
class TrialConfig:
    ring: str
    n: int = 2
    trials: int = 10
    seed: int = 0
    min_len: int = 1
    max_len: int = 4
    ideal: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise OutOfRange("trials must be >= 1")
        if self.n < 2:
            raise OutOfRange("symplectic suites need n >= 2")
        if not 0 <= self.min_len <= self.max_len:
            raise OutOfRange("word-length bounds must satisfy 0 <= min <= max")


# ---------------------------------------------------------------------------
# random inputs


def random_vector(ring: Ring, m: int, rng: random.Random) -> tuple[RingElement, ...]:
    return tuple(ring.random_element(rng) for _ in range(m))


def random_word(F, rng: random.Random, lo: int = 1, hi: int = 4) -> GroupWord:
    """Random C/R word, with occasional formal inverses."""
    atoms = []
    for _ in range(rng.randint(lo, hi)):
        cls = rng.choice((Cgen, Rgen))
        atom = cls(random_vector(F.ring, 2 * F.n - 1, rng))
        atoms.append(Inverse(atom) if rng.random() < 0.25 else atom)
    return GroupWord(F, atoms)


def default_ideal(ring: Ring) -> Ideal:
    """(p) for the smallest prime p dividing the characteristic data, (X) for polynomial rings."""
    if isinstance(ring, PolyRing):
        return make_ideal(ring, [ring.parse(ring.vars[0])])
    if isinstance(ring, ZMod):
        return make_ideal(ring, [min(prime_factors(ring.n))])
    if isinstance(ring, ZLoc):
        return make_ideal(ring, [ring.p])
    return make_ideal(ring, [3])


def random_in_ideal(ideal: Ideal, rng: random.Random) -> RingElement:
    ring = ideal.ring
    acc = ring(0)
    for g in ideal.generators:
        acc = acc + ring.random_element(rng) * g
    return acc


def fresh_name(ring: Ring, base: str) -> str:
    """``base`` or ``base1``, ``base2``, ... whichever is not yet a variable of ``ring``."""
    taken = set(ring.all_vars)
    name, k = base, 0
    while name in taken:
        k += 1
        name = f"{base}{k}"
    return name


def _form(ring: Ring, n: int, rng: random.Random):
    return random_pf1_form(ring, n, 2 * n, rng.getrandbits(64))


def pfaffian_matchings(A: Matrix) -> RingElement:
    """Sum over perfect matchings with the crossing-number sign; an independent reference."""
    ring = A.ring
    N = A.rows

    def rec(idx: tuple[int, ...]) -> list[tuple[int, list[tuple[int, int]]]]:
        if not idx:
            return [(1, [])]
        out = []
        first = idx[0]
        for j in idx[1:]:
            rest = tuple(k for k in idx if k not in (first, j))
            for sgn, pairs in rec(rest):
                out.append((sgn, [(first, j)] + pairs))
        return out

    total = ring(0)
    for _, pairs in rec(tuple(range(N))):
        perm = [x for p in pairs for x in p]
        inv = sum(1 for a in range(N) for b in range(a + 1, N) if perm[a] > perm[b])
        term = ring(1)
        for i, j in pairs:
            term = term * A[i, j]
        total = total + (-term if inv % 2 else term)
    return total


# ---------------------------------------------------------------------------
# suites; each returns (number of checks, violations) for one trial


def _suite_blocks(ring, n, rng, cfg):
    F = _form(ring, n, rng)
    bad = [f"block identity {k}" for k, ok in F.block_identities().items() if not ok]
    m = 2 * n - 1
    v, w = random_vector(ring, m, rng), random_vector(ring, m, rng)
    vw = [a + b for a, b in zip(v, w)]
    checks = {
        "C symplectic": sp_check(F.phi, C_of(F, v)),
        "R symplectic": sp_check(F.phi, R_of(F, v)),
        "alpha additive": alpha_of(F, v) * alpha_of(F, w) == alpha_of(F, vw),
        "beta additive": beta_of(F, v) * beta_of(F, w) == beta_of(F, vw),
        "C inverse": C_of(F, v) * C_of(F, [-a for a in v]) == identity(ring, 2 * n),
        "R inverse": R_of(F, v) * R_of(F, [-a for a in v]) == identity(ring, 2 * n),
    }
    bad += [k for k, ok in checks.items() if not ok]
    return 4 + len(checks), bad


def _commutator_cases(n: int):
    N = 2 * n
    for i, j in permutations(range(1, N + 1), 2):
        if j != sigma(i):
            yield 1, i, j, 1  # k unused
    for i, j, k in permutations(range(1, N + 1), 3):
        if k not in (sigma(i), sigma(j)) and j != sigma(i):
            yield 2, i, j, k
    for i, k in permutations(range(1, N + 1), 2):
        if k != sigma(i):
            yield 3, i, 1, k  # j unused


def _suite_commutators(ring, n, rng, cfg):
    bad = []
    count = 0
    for case, i, j, k in _commutator_cases(n):
        a, b = ring.random_element(rng), ring.random_element(rng)
        count += 1
        if not commutator_identity_check(ring, n, case, i, j, k, a, b):
            bad.append(f"case {case} (i,j,k)=({i},{j},{k}) a={a} b={b}")
    return count, bad


def _suite_splitting(ring, n, rng, cfg):
    F = _form(ring, n, rng)
    m = 2 * n - 1
    bad = []
    for kind, gen in (("C", C_of), ("R", R_of)):
        v, w = random_vector(ring, m, rng), random_vector(ring, m, rng)
        if split_generator(F, kind, v, w).evaluate() != gen(F, [a + b for a, b in zip(v, w)]):
            bad.append(f"{kind} split v={[str(x) for x in v]} w={[str(x) for x in w]}")
    return 2, bad


def _suite_shuffle(ring, n, rng, cfg):
    F = _form(ring, n, rng)
    k = rng.randint(1, 5)
    a = [random_word(F, rng, 0, 2) for _ in range(k)]
    b = [random_word(F, rng, 0, 2) for _ in range(k)]
    interleaved = GroupWord(F, [])
    for x, y in zip(a, b):
        interleaved = interleaved + x + y
    shaped, tail = shuffle_identity(a, b)
    ok = shaped.evaluate() * tail.evaluate() == interleaved.evaluate()
    return 1, [] if ok else [f"shuffle of {k} pairs"]


def _random_eps0(ring, n, rng) -> Matrix:
    m = 2 * n - 1
    return cert_eval(ElementaryCertificate(ring, m, random_elementary_steps(ring, m, 2 * n, rng)))


def _suite_transport(ring, n, rng, cfg):
    psi = psi_form(ring, n)
    eps0 = _random_eps0(ring, n, rng)
    P = perp(identity(ring, 1), eps0)
    phi = transpose(P) * make_psi(ring, n) * P
    F = _build_form(phi, _inverse_through(P, ring, n))
    w = random_word(psi, rng, cfg.min_len, cfg.max_len)
    M = w.evaluate()
    T = conjugate_transport(F, psi, eps0, M)
    bad = []
    if not sp_check(F.phi, T):
        bad.append("transported word left Sp_phi")
    if transport_word(w, F, eps0).evaluate() != T:
        bad.append("transported atoms disagree with conjugation")
    non = identity(ring, 2 * n) + basis_e(ring, 2 * n, 1, 3)
    if sp_check(F.phi, conjugate_transport(F, psi, eps0, non)):
        bad.append("transport made a non-symplectic matrix symplectic")
    return 3, bad


def _inverse_through(P: Matrix, ring, n) -> Matrix:
    Pi = mat_inverse(P)
    return Pi * (-make_psi(ring, n)) * transpose(Pi)


def _suite_decompose(ring, n, rng, cfg):
    m = 2 * n - 1
    v = random_vector(ring, m, rng)
    psi = psi_form(ring, n)
    bad = []
    if decompose_C_psi(ring, n, v).evaluate() != C_of(psi, v):
        bad.append(f"C decomposition v={[str(x) for x in v]}")
    if decompose_R_psi(ring, n, v).evaluate() != R_of(psi, v):
        bad.append(f"R decomposition v={[str(x) for x in v]}")
    count = 2
    for i, j in permutations(range(2, 2 * n + 1), 2):
        a = ring.random_element(rng)
        w = rewrite_se_off_corner(ring, n, i, j, a)
        count += 1
        corner = all((x.i == 1 or x.j == 1) for x in w.atoms)
        if not corner or w.evaluate() != make_se(ring, n, i, j, a):
            bad.append(f"rewrite se_{i}{j}({a})")
    return count, bad


def _theta_items(F, rng, ideal, t):
    items = []
    for _ in range(t):
        conj = random_word(F, rng, 0, 2)
        kind = rng.choice("CR")
        w = [random_in_ideal(ideal, rng) for _ in range(2 * F.n - 1)]
        items.append((conj, kind, w))
    return items


def _suite_homogenize(ring, n, rng, cfg):
    F = _form(ring, n, rng)
    ideal = _ideal_for(ring, cfg)
    mu = random_word(F, rng, 1, 2).evaluate()
    items = _theta_items(F, rng, ideal, rng.randint(1, 2))
    theta, names = multi_dilate_conjugated(F, mu, items, ideal, prefix=fresh_name(ring, "Y"))
    flat = [v for row in names for v in row]
    zero = {v: 0 for v in flat}
    T = fresh_name(theta.ring, "T")
    H = homogenize_matrix(theta, T, flat)
    bad = []
    theta0 = substitute_matrix(theta, zero)
    if substitute_matrix(H, {**zero, T: 0}) != theta0:
        bad.append("theta~(0) != theta(0)")
    if substitute_matrix(H, {T: 1}) != theta:
        bad.append("theta~(1) != theta")
    if theta0 != identity(theta0.ring, 2 * n):
        bad.append("theta(0) != I")
    FH = F.extend(H.ring)
    if not sp_check(FH.phi, H):
        bad.append("theta~ not symplectic")
    at_w = {v: x for row, it in zip(names, items) for v, x in zip(row, it[2])}
    lam = RelativeWord(F, [(c, GroupWord(F, [(Cgen if k == "C" else Rgen)(tuple(w))])) for c, k, w in items]).evaluate()
    if substitute_matrix(theta, at_w) != mu * lam * symplectic_inverse(F.phi, F.phi_inv, mu):
        bad.append("theta(w) != mu lambda mu^-1")
    conj = items[0][0]
    if len(conj):
        x = fresh_name(ring, "X")
        dw = dilate_word(conj, x).evaluate()
        if substitute_matrix(dw, {x: 1}) != conj.evaluate():
            bad.append("dilated word at X=1")
        if substitute_matrix(dw, {x: 0}) != identity(ring, 2 * n):
            bad.append("dilated word at X=0")
    return 7, bad


def _ideal_for(ring, cfg) -> Ideal:
    if cfg.ideal:
        from .ideals import parse_ideal

        return parse_ideal(ring, cfg.ideal)
    return default_ideal(ring)


def _suite_pfaffian(ring, n, rng, cfg):
    size = 2 * rng.randint(1, n)
    rows = [[ring.zero()] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            x = ring.random_element(rng)
            rows[i][j], rows[j][i] = x.value, (-x).value
    A = Matrix(ring, rows)
    ok = pfaffian(A) == pfaffian_matchings(A)
    return 1, [] if ok else [f"pfaffian mismatch size {size}"]


def _suite_reduce(ring, n, rng, cfg):
    F = _form(ring, n, rng)
    cert = reduce_to_psi_corner(F.phi)
    P = perp(identity(ring, 1), cert_eval(cert))
    bad = []
    if transpose(P) * make_psi(ring, n) * P != F.phi:
        bad.append("certificate does not reproduce phi")
    X = random_word(F, rng, cfg.min_len, cfg.max_len).evaluate()
    X1 = transport_back(F, psi_form(ring, n), cert_eval(cert), X)
    if sp_local_word(X1).evaluate() != X1:
        bad.append("local elimination word")
    return 2, bad


def _suite_relative(ring, n, rng, cfg):
    F = _form(ring, n, rng)
    ideal = _ideal_for(ring, cfg)
    A = random_word(F, rng, cfg.min_len, cfg.max_len)
    cores = [
        rng.choice((Cgen, Rgen))(tuple(random_in_ideal(ideal, rng) for _ in range(2 * n - 1)))
        for _ in range(rng.randint(1, 2))
    ]
    w = A + GroupWord(F, cores) + A.inverse()
    rw = relative_factorize(w, ideal)
    bad = []
    if rw.evaluate() != w.evaluate():
        bad.append("factorization changed the value")
    if not rsp_kernel_check(F, rw.evaluate(), ideal):
        bad.append("relative word outside the congruence kernel")
    return 2, bad


def _suite_witness(ring, n, rng, cfg):
    F = _form(ring, n, rng)
    ideal = _ideal_for(ring, cfg)
    gamma = random_word(F, rng, cfg.min_len, cfg.max_len).evaluate()
    delta = GroupWord(
        F,
        [rng.choice((Cgen, Rgen))(tuple(random_in_ideal(ideal, rng) for _ in range(2 * n - 1))) for _ in range(2)],
    )
    report = normality_witness(F, gamma, delta, ideal)
    return 1, [] if report["passed"] else ["witness report has a failing check"]


SUITES: dict[str, Callable] = {
    "blocks": _suite_blocks,
    "commutators": _suite_commutators,
    "splitting": _suite_splitting,
    "shuffle": _suite_shuffle,
    "transport": _suite_transport,
    "decompose": _suite_decompose,
    "homogenize": _suite_homogenize,
    "pfaffian": _suite_pfaffian,
    "reduce": _suite_reduce,
    "relative": _suite_relative,
    "witness": _suite_witness,
}


def run_suite(suite: str, cfg: TrialConfig) -> dict:
    """Run ``cfg.trials`` seeded trials of one suite; violations are sorted."""
    if suite not in SUITES:
        raise BadCase(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    ring = ring_make(cfg.ring)
    fn = SUITES[suite]
    checks = 0
    violations = []
    for t in range(cfg.trials):
        rng = random.Random(f"{cfg.seed}:{suite}:{cfg.ring}:{cfg.n}:{t}")
        try:
            k, bad = fn(ring, cfg.n, rng, cfg)
        except UnsupportedRing:
            raise
        except SympnormError as exc:
            if exc.exit_code != 1:
                raise
            k, bad = 1, [f"{type(exc).__name__}: {exc}"]
        checks += k
        violations += [f"trial {t}: {b}" for b in bad]
    return {
        "suite": suite,
        "ring": cfg.ring,
        "n": cfg.n,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "checks": checks,
        "violations": sorted(violations),
        "passed": not violations,
    }


# suites that need a local ring, or at least a zmod/zloc ring
_LOCAL_ONLY = {"reduce"}
_NO_POLY = {"witness"}


def _applicable(suite: str, ring: Ring) -> bool:
    if suite in _LOCAL_ONLY:
        return not isinstance(ring, PolyRing) and ring.is_local
    if suite in _NO_POLY:
        return not isinstance(ring, PolyRing)
    return True


def selftest(seed: int = 0, trials: int = 3) -> dict:
    """Every suite on every default ring where it applies, plus the witness on a non-local ring."""
    results = []
    for suite in SUITES:
        for spec in DEFAULT_RINGS + ("zmod:45",):
            ring = ring_make(spec)
            if not _applicable(suite, ring):
                continue
            if spec == "zmod:45" and suite != "witness":
                continue
            if isinstance(ring, PolyRing) and suite in ("commutators", "homogenize"):
                # poly coefficients over many variables get slow; one trial is enough for coverage
                t = 1
            else:
                t = trials
            results.append(run_suite(suite, TrialConfig(ring=spec, n=2, trials=t, seed=seed)))
    return {"seed": seed, "results": results, "passed": all(r["passed"] for r in results)}
