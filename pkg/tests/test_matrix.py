import random

import pytest

from sympnorm.errors import DimMismatch, NotInvertible, NotSkew, NotSquare, OddSize, OwnerMismatch, ParseError
from sympnorm.forms import make_psi
from sympnorm.harness import pfaffian_matchings
from sympnorm.ideals import make_ideal
from sympnorm.matrix import (
    Matrix,
    basis_e,
    det,
    dumps,
    from_doc,
    identity,
    loads,
    mat_inverse,
    mat_mod_ideal,
    perp,
    pfaffian,
    to_doc,
    transpose,
    zeros,
)
from sympnorm.rings import ring_make
from sympnorm.standard_form import ElementaryCertificate, cert_eval, random_elementary_steps


def rand_matrix(ring, r, c, rng):
    return Matrix(ring, [[ring.random_element(rng).value for _ in range(c)] for _ in range(r)])


def rand_skew(ring, n, rng):
    rows = [[ring.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = ring.random_element(rng)
            rows[i][j], rows[j][i] = x.value, (-x).value
    return Matrix(ring, rows)


def rand_elementary(ring, m, steps, rng):
    return cert_eval(ElementaryCertificate(ring, m, random_elementary_steps(ring, m, steps, rng)))


def test_identity_is_neutral():
    R = ring_make("zmod:7")
    A = rand_matrix(R, 3, 3, random.Random(0))
    assert identity(R, 3) * A == A == A * identity(R, 3)


def test_basis_e_square_is_zero():
    R = ring_make("int")
    assert basis_e(R, 2, 1, 2) * basis_e(R, 2, 1, 2) == zeros(R, 2)
    assert basis_e(R, 2, 1, 2).tolist() == [["0", "1"], ["0", "0"]]


def test_transpose_of_product():
    R = ring_make("zmod:9")
    rng = random.Random(1)
    for _ in range(50):
        A, B = rand_matrix(R, 3, 4, rng), rand_matrix(R, 4, 2, rng)
        assert transpose(A * B) == transpose(B) * transpose(A)


def test_dimension_and_owner_errors():
    R, S = ring_make("zmod:9"), ring_make("zmod:25")
    with pytest.raises(DimMismatch):
        identity(R, 2) * identity(R, 3)
    with pytest.raises(OwnerMismatch):
        identity(R, 2) * identity(S, 2)
    with pytest.raises(NotSquare):
        det(zeros(R, 2, 3))


def test_perp():
    R = ring_make("zmod:9")
    rng = random.Random(2)
    B = rand_matrix(R, 3, 3, rng)
    P = perp(identity(R, 1), B)
    assert P.tolist()[0] == ["1", "0", "0", "0"]
    A, C, D = rand_matrix(R, 2, 2, rng), rand_matrix(R, 2, 2, rng), rand_matrix(R, 3, 3, rng)
    assert perp(A, B) * perp(C, D) == perp(A * C, B * D)
    assert det(perp(A, B)) == det(A) * det(B)


@pytest.mark.parametrize("spec", ["int", "zmod:9", "zmod:7", "rat", "poly:zmod:5:[X]"])
def test_det_examples(spec):
    R = ring_make(spec)
    assert det(identity(R, 4)) == R(1)
    assert det(make_psi(R, 2)) == R(1)
    rng = random.Random(spec)
    for _ in range(5):
        assert det(rand_elementary(R, 5, 6, rng)) == R(1)


@pytest.mark.parametrize("spec", ["int", "zmod:7", "rat"])
def test_det_paths_agree(spec):
    # sizes 5 and 6 go through fraction-free elimination over domains
    from sympnorm.matrix import _det_bareiss, _det_laplace

    R = ring_make(spec)
    rng = random.Random(3)
    for n in (5, 6):
        A = rand_matrix(R, n, n, rng)
        assert R.key(_det_laplace(R, A.data)) == R.key(_det_bareiss(R, A.data))


def test_det_is_multiplicative_over_zero_divisors():
    R = ring_make("zmod:45")
    rng = random.Random(4)
    for _ in range(10):
        A, B = rand_matrix(R, 5, 5, rng), rand_matrix(R, 5, 5, rng)
        assert det(A * B) == det(A) * det(B)


def test_inverse_examples():
    R = ring_make("zmod:9")
    assert mat_inverse(make_psi(R, 2)) == -make_psi(R, 2)
    a = R(4)
    E = identity(R, 3) + basis_e(R, 3, 1, 2).scale(a)
    assert mat_inverse(E) == identity(R, 3) + basis_e(R, 3, 1, 2).scale(-a)
    bad = Matrix.from_entries(R, [[3, 0], [0, 1]])
    with pytest.raises(NotInvertible):
        mat_inverse(bad)


@pytest.mark.parametrize("spec", ["zmod:45", "zloc:3", "rat", "poly:zmod:9:[X]"])
def test_inverse_roundtrip(spec):
    R = ring_make(spec)
    rng = random.Random(spec)
    for m in (2, 3, 5):
        A = rand_elementary(R, m, 2 * m, rng)
        Ai = mat_inverse(A)
        assert A * Ai == identity(R, m) == Ai * A


def test_pfaffian_examples():
    R = ring_make("poly:int:[a]")
    a = R.parse("a")
    A = Matrix(R, [[R.zero(), a.value], [(-a).value, R.zero()]])
    assert pfaffian(A) == a
    for n in (2, 3):
        assert pfaffian(make_psi(ring_make("int"), n)) == ring_make("int")(1)
    G = ring_make("poly:int:[a12,a13,a14,a23,a24,a34]")
    names = {(0, 1): "a12", (0, 2): "a13", (0, 3): "a14", (1, 2): "a23", (1, 3): "a24", (2, 3): "a34"}
    rows = [[G.zero()] * 4 for _ in range(4)]
    for (i, j), nm in names.items():
        x = G.parse(nm)
        rows[i][j], rows[j][i] = x.value, (-x).value
    assert pfaffian(Matrix(G, rows)) == G.parse("a12*a34 - a13*a24 + a14*a23")


def test_pfaffian_errors():
    R = ring_make("int")
    with pytest.raises(OddSize):
        pfaffian(zeros(R, 3))
    with pytest.raises(NotSkew):
        pfaffian(identity(R, 2))


@pytest.mark.parametrize("spec", ["int", "zmod:7", "zmod:9", "rat"])
def test_pfaffian_matches_oracle_and_det(spec):
    R = ring_make(spec)
    rng = random.Random(spec)
    for n in (2, 4, 6):
        for _ in range(10):
            A = rand_skew(R, n, rng)
            pf = pfaffian(A)
            assert pf == pfaffian_matchings(A)
            assert pf * pf == det(A)


def test_pfaffian_congruence_rule():
    R = ring_make("zmod:25")
    rng = random.Random(5)
    for _ in range(20):
        A = rand_skew(R, 6, rng)
        E = rand_elementary(R, 6, 8, rng)
        assert pfaffian(transpose(E) * A * E) == pfaffian(A)
        D = Matrix.from_entries(R, [[2 if i == j == 0 else int(i == j) for j in range(6)] for i in range(6)])
        assert pfaffian(transpose(D) * A * D) == det(D) * pfaffian(A)


def test_mat_mod_ideal_examples():
    R = ring_make("zmod:9")
    I = make_ideal(R, [3])
    se = identity(R, 4) + basis_e(R, 4, 2, 1).scale(R(3))
    assert mat_mod_ideal(se, I) == mat_mod_ideal(identity(R, 4), I) == identity(R, 4)
    P = ring_make("poly:zmod:9:[X]")
    J = make_ideal(P, [P.parse("X")])
    theta = identity(P, 2) + basis_e(P, 2, 1, 2).scale(P.parse("X^2 + 3*X"))
    assert mat_mod_ideal(theta, J) == identity(P, 2)
    full = make_ideal(R, [1])
    A = rand_matrix(R, 3, 3, random.Random(6))
    assert mat_mod_ideal(A, full) == mat_mod_ideal(identity(R, 3), full) == zeros(R, 3)


@pytest.mark.parametrize("spec", ["int", "rat", "zmod:9", "zloc:3", "poly:rat:[X,Y]"])
def test_json_roundtrip(spec):
    R = ring_make(spec)
    A = rand_matrix(R, 3, 2, random.Random(spec))
    doc = to_doc(A)
    assert doc["ring"] == spec
    assert from_doc(doc) == A
    text = dumps(A)
    assert dumps(loads(text)) == text


def test_json_errors():
    with pytest.raises(ParseError):
        from_doc({"ring": "zmod:9"})
    with pytest.raises(DimMismatch):
        from_doc({"ring": "zmod:9", "rows": [["1", "2"], ["3"]]})
