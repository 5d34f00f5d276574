import random

import pytest

from sympnorm.errors import (
    BadIndices,
    NotInvertible,
    NotLocalRing,
    NotSkew,
    NotSymplectic,
    NotUnit,
    OddSize,
    OutOfRange,
    ParseError,
    PfaffianNotOne,
)
from sympnorm.forms import make_psi, psi_form
from sympnorm.harness import pfaffian_matchings, random_word
from sympnorm.matrix import Matrix, basis_e, det, identity, perp, transpose
from sympnorm.rings import ring_make
from sympnorm.standard_form import (
    ElementaryCertificate,
    cert_eval,
    cert_from_doc,
    cert_to_doc,
    random_elementary_steps,
    random_pf1_form,
    reduce_to_psi_corner,
    signed_swap,
    sp_local_word,
    whitehead_factor,
)

R9 = ring_make("zmod:9")


def test_cert_eval_basics():
    assert cert_eval(ElementaryCertificate(R9, 3, [])) == identity(R9, 3)
    a = R9(4)
    assert cert_eval(ElementaryCertificate(R9, 3, [(1, 2, a)])) == identity(R9, 3) + basis_e(R9, 3, 1, 2).scale(a)
    rng = random.Random(0)
    c1 = ElementaryCertificate(R9, 4, random_elementary_steps(R9, 4, 5, rng))
    c2 = ElementaryCertificate(R9, 4, random_elementary_steps(R9, 4, 5, rng))
    assert cert_eval(c1 + c2) == cert_eval(c1) * cert_eval(c2)
    assert cert_eval(c1) * cert_eval(c1.inverse()) == identity(R9, 4)
    assert det(cert_eval(c1)) == R9(1)
    with pytest.raises(BadIndices):
        ElementaryCertificate(R9, 3, [(2, 2, a)])
    with pytest.raises(BadIndices):
        ElementaryCertificate(R9, 3, [(1, 4, a)])


def test_whitehead_factor():
    assert cert_eval(whitehead_factor(R9, 3, 1, 2, 1)) == identity(R9, 3)
    W = whitehead_factor(R9, 3, 1, 2, 2)
    assert len(W) == 6
    assert cert_eval(W).tolist() == [["2", "0", "0"], ["0", "5", "0"], ["0", "0", "1"]]
    rng = random.Random(1)
    R = ring_make("zmod:25")
    for _ in range(20):
        u = R.random_element(rng)
        if not u.is_unit():
            continue
        M = cert_eval(whitehead_factor(R, 4, 3, 1, u))
        assert det(M) == R(1)
        assert M == _diag(R, 4, {2: u, 0: u.inverse()})
    with pytest.raises(NotUnit):
        whitehead_factor(R9, 3, 1, 2, 3)
    with pytest.raises(BadIndices):
        whitehead_factor(R9, 3, 1, 1, 2)


def _diag(R, m, special):
    return Matrix(R, [[(special.get(i, R(1)).value if i == j else R.zero()) for j in range(m)] for i in range(m)])


def test_signed_swap():
    S = cert_eval(signed_swap(R9, 2, 1, 2))
    assert S.tolist() == [["0", "1"], ["8", "0"]]
    assert S * S == -identity(R9, 2)
    assert det(S) == R9(1)
    T = cert_eval(signed_swap(R9, 4, 2, 4))
    e = lambda k: Matrix(R9, [[R9.one() if r == k - 1 else R9.zero()] for r in range(4)])  # noqa: E731
    # right multiplication: new column j is old column i, new column i is minus old column j
    assert T * e(4) == e(2)
    assert T * e(2) == -e(4)
    assert det(T) == R9(1)


def test_reduce_psi_is_trivial():
    for n in (2, 3):
        cert = reduce_to_psi_corner(make_psi(R9, n))
        assert cert_eval(cert) == identity(R9, 2 * n - 1)


def test_reduce_roundtrip_mod25_ten_steps():
    R = ring_make("zmod:25")
    rng = random.Random(2)
    for _ in range(10):
        eps0 = cert_eval(ElementaryCertificate(R, 3, random_elementary_steps(R, 3, 10, rng)))
        P = perp(identity(R, 1), eps0)
        phi = transpose(P) * make_psi(R, 2) * P
        c = cert_eval(reduce_to_psi_corner(phi))
        Q = perp(identity(R, 1), c)
        assert transpose(Q) * make_psi(R, 2) * Q == phi


@pytest.mark.parametrize("spec", ["zmod:9", "zmod:25", "zmod:49", "zloc:3", "zloc:7", "rat"])
@pytest.mark.parametrize("n", [2, 3])
def test_reduce_roundtrip_random_forms(spec, n):
    R = ring_make(spec)
    for seed in range(10):
        F = random_pf1_form(R, n, 4 * n, seed)
        cert = reduce_to_psi_corner(F.phi)
        assert cert.size == 2 * n - 1
        assert all(i != j for i, j, _ in cert.steps)
        Q = perp(identity(R, 1), cert_eval(cert))
        assert transpose(Q) * make_psi(R, n) * Q == F.phi


def test_reduce_pfaffian_two():
    # congruence by diag(2, 1, 1, 1) doubles the Pfaffian
    D = _diag(R9, 4, {0: R9(2)})
    phi = transpose(D) * make_psi(R9, 2) * D
    assert pfaffian_matchings(phi) == R9(2)
    with pytest.raises(PfaffianNotOne):
        reduce_to_psi_corner(phi)


def test_reduce_errors():
    with pytest.raises(NotLocalRing):
        reduce_to_psi_corner(make_psi(ring_make("zmod:45"), 2))
    with pytest.raises(NotLocalRing):
        reduce_to_psi_corner(make_psi(ring_make("poly:zmod:9:[X]"), 2))
    with pytest.raises(NotLocalRing):
        reduce_to_psi_corner(make_psi(ring_make("int"), 2))
    with pytest.raises(OutOfRange):
        reduce_to_psi_corner(make_psi(R9, 1))
    with pytest.raises(OddSize):
        reduce_to_psi_corner(identity(R9, 3))
    with pytest.raises(NotSkew):
        reduce_to_psi_corner(identity(R9, 4))
    singular = Matrix.from_entries(R9, [[0, 3, 0, 0], [-3, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    with pytest.raises(NotInvertible):
        reduce_to_psi_corner(singular)


def test_random_pf1_form():
    R = ring_make("zmod:25")
    assert random_pf1_form(R, 2, 0, 5).phi == make_psi(R, 2)
    for seed in range(5):
        F = random_pf1_form(R, 3, 8, seed)
        assert pfaffian_matchings(F.phi) == R(1)
        assert random_pf1_form(R, 3, 8, seed).phi == F.phi
    with pytest.raises(OutOfRange):
        random_pf1_form(R, 1, 2, 0)


@pytest.mark.parametrize("spec", ["zmod:9", "zmod:25", "zloc:3"])
def test_sp_local_word(spec):
    R = ring_make(spec)
    rng = random.Random(spec)
    for n in (2, 3):
        psi = psi_form(R, n)
        for _ in range(5):
            M = random_word(psi, rng, 2, 6).evaluate()
            w = sp_local_word(M)
            assert w.evaluate() == M
    with pytest.raises(NotSymplectic):
        sp_local_word(identity(R, 4) + basis_e(R, 4, 1, 3))


def test_certificate_json_roundtrip():
    cert = reduce_to_psi_corner(random_pf1_form(R9, 2, 6, 3).phi)
    doc = cert_to_doc(cert)
    assert set(doc) == {"ring", "size", "steps"}
    assert cert_from_doc(doc) == cert
    with pytest.raises(ParseError):
        cert_from_doc({"size": 3})
