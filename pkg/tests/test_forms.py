import random
from itertools import permutations

import pytest

from sympnorm.errors import (
    BadCase,
    BadIndices,
    CongruenceMismatch,
    ContextMismatch,
    DimMismatch,
    NotHalvable,
    NotInvertible,
    NotSkew,
    OutOfRange,
)
from sympnorm.forms import (
    C_of,
    R_of,
    alpha_of,
    beta_of,
    conjugate_transport,
    make_psi,
    make_se,
    make_skewform,
    psi_form,
    sigma,
    sp_check,
    transport_back,
)
from sympnorm.harness import pfaffian_matchings, random_vector, random_word
from sympnorm.matrix import Matrix, basis_e, identity, mat_inverse, perp, pfaffian, transpose
from sympnorm.rings import ring_make
from sympnorm.standard_form import ElementaryCertificate, cert_eval, random_elementary_steps, random_pf1_form
from sympnorm.words import (
    SE,
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
    word_from_doc,
    word_to_doc,
)

R9 = ring_make("zmod:9")


def test_make_psi():
    assert make_psi(R9, 1).tolist() == [["0", "1"], ["8", "0"]]
    assert make_psi(R9, 2) == perp(make_psi(R9, 1), make_psi(R9, 1))
    Z = ring_make("int")
    for n in range(1, 7):
        assert pfaffian(make_psi(Z, n)) == Z(1)
    for n in range(1, 4):
        assert pfaffian_matchings(make_psi(Z, n)) == Z(1)
    with pytest.raises(OutOfRange):
        make_psi(R9, 0)


def test_sigma():
    assert sigma(1) == 2
    assert sigma(4) == 3
    assert all(sigma(sigma(i)) == i for i in range(1, 13))
    with pytest.raises(OutOfRange):
        sigma(5, 2)


def test_make_se_examples():
    a = R9(4)
    assert make_se(R9, 2, 2, 1, a) == identity(R9, 4) + basis_e(R9, 4, 2, 1).scale(a)
    assert make_se(R9, 2, 1, 3, a) == identity(R9, 4) + basis_e(R9, 4, 1, 3).scale(a) - basis_e(R9, 4, 4, 2).scale(a)
    assert make_se(R9, 2, 1, 3, 0) == identity(R9, 4)
    with pytest.raises(BadIndices):
        make_se(R9, 2, 1, 1, a)
    with pytest.raises(BadIndices):
        make_se(R9, 2, 1, 5, a)


@pytest.mark.parametrize("spec", ["zmod:9", "zmod:25", "zloc:3", "poly:zmod:9:[X]"])
@pytest.mark.parametrize("n", [2, 3])
def test_se_symplectic_and_inverse(spec, n):
    R = ring_make(spec)
    rng = random.Random(f"{spec}{n}")
    psi = make_psi(R, n)
    for i, j in permutations(range(1, 2 * n + 1), 2):
        a = R.random_element(rng)
        M = make_se(R, n, i, j, a)
        assert sp_check(psi, M)
        assert M * make_se(R, n, i, j, -a) == identity(R, 2 * n)


def test_sp_check_examples():
    psi = make_psi(R9, 2)
    assert sp_check(psi, identity(R9, 4))
    # e_12 lies inside the first hyperbolic pair: I + e_12 = se_12(1)
    assert sp_check(psi, identity(R9, 4) + basis_e(R9, 4, 1, 2))
    assert not sp_check(psi, identity(R9, 4) + basis_e(R9, 4, 1, 3))
    with pytest.raises(DimMismatch):
        sp_check(psi, identity(R9, 2))


def test_skewform_psi_blocks():
    F = make_skewform(make_psi(R9, 2))
    assert F.c.column_entries() == [R9(-1), R9(0), R9(0)]
    assert F.d.column_entries() == [R9(-1), R9(0), R9(0)]
    assert F.nu == make_psi(R9, 2).block(1, 4, 1, 4)
    assert F.mu_block == (-make_psi(R9, 2)).block(1, 4, 1, 4)
    assert all(F.block_identities().values())
    assert F.is_standard


def test_skewform_errors():
    singular = Matrix.from_entries(R9, [[0, 3, 0, 0], [-3, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    with pytest.raises(NotInvertible):
        make_skewform(singular)
    with pytest.raises(NotSkew):
        make_skewform(identity(R9, 4))


@pytest.mark.parametrize("spec", ["zmod:9", "zmod:25", "zloc:3", "rat", "poly:zmod:9:[X]"])
def test_random_forms_block_identities(spec):
    R = ring_make(spec)
    for seed in range(10):
        F = random_pf1_form(R, 2 + seed % 2, 6, seed)
        assert all(F.block_identities().values())
        assert pfaffian(F.phi) == R(1)


def test_alpha_example_and_additivity():
    F = psi_form(R9, 2)
    P = ring_make("poly:zmod:9:[v1,v2,v3]")
    G = F.extend(P)
    v = [P.parse("v1"), P.parse("v2"), P.parse("v3")]
    A = alpha_of(G, v)
    assert (A[0, 0], A[0, 1], A[0, 2]) == (P(1), v[2], -v[1])
    assert [A[i, j] for i in (1, 2) for j in range(3)] == [P(int(i == j)) for i in (1, 2) for j in range(3)]
    assert alpha_of(F, [0, 0, 0]) == identity(R9, 3)
    rng = random.Random(7)
    for _ in range(50):
        Fr = random_pf1_form(R9, 2, 5, rng.getrandbits(32))
        v, w = random_vector(R9, 3, rng), random_vector(R9, 3, rng)
        s = [x + y for x, y in zip(v, w)]
        assert alpha_of(Fr, v) * alpha_of(Fr, w) == alpha_of(Fr, s)
        assert beta_of(Fr, v) * beta_of(Fr, w) == beta_of(Fr, s)


@pytest.mark.parametrize("spec", ["zmod:9", "zmod:25", "poly:zmod:9:[X]"])
def test_C_R_membership_and_inverse(spec):
    R = ring_make(spec)
    rng = random.Random(spec)
    for t in range(50):
        n = 2 + t % 2
        F = random_pf1_form(R, n, 2 * n, rng.getrandbits(32))
        v = random_vector(R, 2 * n - 1, rng)
        nv = [-x for x in v]
        for gen in (C_of, R_of):
            M = gen(F, v)
            assert sp_check(F.phi, M)
            assert M * gen(F, nv) == identity(R, 2 * n)
        assert C_of(F, [0] * (2 * n - 1)) == identity(R, 2 * n)


def test_C_psi_single_entry():
    # C_psi((x, 0, ..., 0)) = se_21(x)
    x = R9(4)
    assert C_of(psi_form(R9, 2), [x, 0, 0]) == make_se(R9, 2, 2, 1, x)
    assert decompose_C_psi(R9, 2, [1, 0, 0]).evaluate() == identity(R9, 4) + basis_e(R9, 4, 2, 1)


def test_C_psi_naive_product_differs_by_quadratic_term():
    # the plain product se21(v1) se31(v2) se41(v3) misses a v2*v3 term in entry (2,1)
    P = ring_make("poly:zmod:9:[v1,v2,v3]")
    v = [P.parse(s) for s in ("v1", "v2", "v3")]
    naive = GroupWord(psi_form(P, 2), [SE(2, 1, v[0]), SE(3, 1, v[1]), SE(4, 1, v[2])]).evaluate()
    C = C_of(psi_form(P, 2), v)
    diff = naive - C
    assert [x for row in diff.entries() for x in row if not x.is_zero()] == [diff[1, 0]]
    assert diff[1, 0] in (v[1] * v[2], -(v[1] * v[2]))
    assert decompose_C_psi(P, 2, v).evaluate() == C
    assert decompose_R_psi(P, 2, v).evaluate() == R_of(psi_form(P, 2), v)


@pytest.mark.parametrize("n", [2, 3])
def test_decompositions_random(n):
    R = ring_make("zmod:25")
    rng = random.Random(n)
    psi = psi_form(R, n)
    for _ in range(20):
        v = random_vector(R, 2 * n - 1, rng)
        wc = decompose_C_psi(R, n, v)
        assert all(a.j == 1 for a in wc.atoms)
        assert wc.evaluate() == C_of(psi, v)
        wr = decompose_R_psi(R, n, v)
        assert all(a.i == 1 for a in wr.atoms)
        assert wr.evaluate() == R_of(psi, v)
    assert decompose_C_psi(R, n, [0] * (2 * n - 1)).evaluate() == identity(R, 2 * n)
    with pytest.raises(DimMismatch):
        decompose_C_psi(R, n, [0])


def test_commutator_examples():
    rng = random.Random(11)
    for _ in range(10):
        a, b = R9.random_element(rng), R9.random_element(rng)
        assert commutator_identity_check(R9, 3, 2, 1, 5, 3, a, b)
        assert commutator_identity_check(R9, 2, 1, 1, 3, 1, a, b)
    assert commutator_identity_check(R9, 2, 3, 1, 1, 3, 0, 5)
    with pytest.raises(BadCase):
        commutator_identity_check(R9, 2, 1, 1, 2, 3, 1, 1)
    with pytest.raises(BadCase):
        commutator_identity_check(R9, 2, 2, 1, 3, 2, 1, 1)
    with pytest.raises(BadCase):
        commutator_identity_check(R9, 2, 3, 1, 3, 2, 1, 1)
    with pytest.raises(BadCase):
        commutator_identity_check(R9, 2, 4, 1, 3, 2, 1, 1)


def test_rewrite_examples():
    a = R9(4)
    w = rewrite_se_off_corner(R9, 2, 3, 4, a)
    assert w.evaluate() == make_se(R9, 2, 3, 4, a)
    assert len(rewrite_se_off_corner(R9, 2, 3, 4, 0)) == 0
    with pytest.raises(BadIndices):
        rewrite_se_off_corner(R9, 2, 1, 3, a)
    with pytest.raises(NotHalvable):
        rewrite_se_off_corner(ring_make("int"), 2, 3, 4, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_rewrite_all_pairs(n):
    R = ring_make("zmod:25")
    rng = random.Random(n)
    for i, j in permutations(range(2, 2 * n + 1), 2):
        for _ in range(10):
            a = R.random_element(rng)
            w = rewrite_se_off_corner(R, n, i, j, a)
            assert all(x.i == 1 or x.j == 1 for x in w.atoms)
            assert w.evaluate() == make_se(R, n, i, j, a)


@pytest.mark.parametrize("spec", ["zmod:9", "zmod:25", "zloc:3", "poly:zmod:9:[X]"])
def test_split_generator(spec):
    R = ring_make(spec)
    rng = random.Random(spec)
    for _ in range(20):
        F = random_pf1_form(R, 2, 4, rng.getrandbits(32))
        v, w = random_vector(R, 3, rng), random_vector(R, 3, rng)
        s = [x + y for x, y in zip(v, w)]
        assert split_generator(F, "C", v, w).evaluate() == C_of(F, s)
        assert split_generator(F, "R", v, w).evaluate() == R_of(F, s)
        assert split_generator(F, "C", v, [0, 0, 0]).evaluate() == C_of(F, v)
    with pytest.raises(NotHalvable):
        split_generator(psi_form(ring_make("int"), 2), "C", [1, 0, 0], [0, 0, 0])


def _congruent_form(R, n, rng):
    m = 2 * n - 1
    eps0 = cert_eval(ElementaryCertificate(R, m, random_elementary_steps(R, m, 8, rng)))
    P = perp(identity(R, 1), eps0)
    return make_skewform(transpose(P) * make_psi(R, n) * P), eps0


@pytest.mark.parametrize("spec", ["zmod:9", "zmod:45", "poly:zmod:9:[X]"])
def test_transport(spec):
    R = ring_make(spec)
    rng = random.Random(spec)
    psi = psi_form(R, 2)
    for _ in range(10):
        F, eps0 = _congruent_form(R, 2, rng)
        w1, w2 = random_word(psi, rng), random_word(psi, rng)
        M1, M2 = w1.evaluate(), w2.evaluate()
        T1 = conjugate_transport(F, psi, eps0, M1)
        assert sp_check(F.phi, T1)
        assert conjugate_transport(F, psi, eps0, M1 * M2) == T1 * conjugate_transport(F, psi, eps0, M2)
        assert transport_back(F, psi, eps0, T1) == M1
        assert transport_word(w1, F, eps0).evaluate() == T1
        non = identity(R, 4) + basis_e(R, 4, 1, 3)
        assert not sp_check(F.phi, conjugate_transport(F, psi, eps0, non))
    assert conjugate_transport(psi, psi, identity(R, 3), M1) == M1
    with pytest.raises(CongruenceMismatch):
        conjugate_transport(psi, psi, identity(R, 3) + basis_e(R, 3, 1, 2), M1)


def test_word_basics_and_json():
    F = random_pf1_form(R9, 2, 5, 1)
    v = (R9(1), R9(2), R9(3))
    assert GroupWord(F, []).evaluate() == identity(R9, 4)
    assert GroupWord(F, [Cgen(v), Inverse(Cgen(v))]).evaluate() == identity(R9, 4)
    rng = random.Random(3)
    for _ in range(50):
        w = random_word(F, rng, 1, 5)
        assert w.inverse().evaluate() == mat_inverse(w.evaluate())
        assert word_from_doc(word_to_doc(w)).evaluate() == w.evaluate()
    psi = psi_form(R9, 2)
    se_word = GroupWord(psi, [SE(1, 3, R9(2)), Inverse(Rgen(v))])
    assert word_from_doc(word_to_doc(se_word)) == se_word
    with pytest.raises(ContextMismatch):
        GroupWord(F, [SE(1, 3, R9(2))])
    with pytest.raises(DimMismatch):
        GroupWord(F, [Cgen((R9(1),))])
    with pytest.raises(ContextMismatch):
        GroupWord(F, [Cgen((ring_make("zmod:25")(1), R9(0), R9(0)))])
    with pytest.raises(ContextMismatch):
        GroupWord(F, []) + GroupWord(psi, [])
