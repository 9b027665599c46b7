import random
from fractions import Fraction

import pytest

from framing_census.errors import NotAnIsometry
from framing_census.exactlin import IntMatrix
from framing_census.forms import (
    EpsSymmetricForm,
    Isometry,
    block_negation,
    block_swap,
    cartan_dieudonne_factor,
    det_spin_class,
    eichler,
    hyperbolic_form,
    is_isometry,
    orthogonal_generators,
    random_orthogonal_word,
    reflection,
    spinor_norm,
    to_canonical,
)
from framing_census.golden import T1, T2

H1 = hyperbolic_form(1, 1)
SWAP = IntMatrix.from_rows([[0, 1], [1, 0]])
MINUS = IntMatrix.from_rows([[-1, 0], [0, -1]])


def test_hyperbolic_gram():
    assert hyperbolic_form(2, -1).gram.to_rows() == [
        [0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    assert hyperbolic_form(0, 1).dim == 0


def test_form_validation():
    with pytest.raises(ValueError):
        EpsSymmetricForm(1, 1, IntMatrix.from_rows([[0, 1], [-1, 0]]))
    with pytest.raises(ValueError):
        EpsSymmetricForm(1, 2, IntMatrix.from_rows([[0, 1], [1, 0]]))


def test_pairing():
    F = hyperbolic_form(2, -1)
    assert F.pair([1, 0, 0, 0], [0, 1, 0, 0]) == 1
    assert F.pair([0, 1, 0, 0], [1, 0, 0, 0]) == -1
    assert F.pair([Fraction(1, 2), 0, 0, 0], [0, 2, 0, 0]) == 1


def test_isometry_checks():
    assert is_isometry(SWAP, H1)
    assert not is_isometry(IntMatrix.from_rows([[1, 1], [0, 1]]), H1)
    assert is_isometry(IntMatrix.from_rows([[1, 1], [0, 1]]), hyperbolic_form(1, -1))
    with pytest.raises(NotAnIsometry):
        Isometry(IntMatrix.from_rows([[2, 0], [0, 1]]), H1)
    # congruence mod 2 only
    assert is_isometry(IntMatrix.from_rows([[1, 0], [0, 3]]), H1, modulus=2)


def test_to_canonical():
    # a matrix given in basis (e1, e2, f1, f2)
    P = IntMatrix.from_rows([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    C = to_canonical(P, ["e1", "e2", "f1", "f2"])
    # swapping e and f within each pair is an isometry of the symmetric form
    assert is_isometry(C, hyperbolic_form(2, 1))
    assert to_canonical(P, [0, 2, 1, 3]) == C
    with pytest.raises(ValueError):
        to_canonical(P, ["e1", "e1", "f1", "f2"])
    with pytest.raises(ValueError):
        to_canonical(P, ["e1", "x2", "f1", "f2"])


@pytest.mark.parametrize("M, cls", [
    (IntMatrix.identity(2), (0, 0)),
    (SWAP, (1, 1)),
    (MINUS, (0, 1)),
    (-SWAP, (1, 0)),
])
def test_o11_classes(M, cls):
    assert det_spin_class(Isometry(M, H1)) == cls


def test_reflection_is_isometric_involution():
    F = hyperbolic_form(2, 1)
    for v in ([1, 1, 0, 0], [1, -1, 2, 3], [0, 1, 1, 1]):
        R = reflection(v, F)
        n = F.dim
        RR = [[sum(R[i][k] * R[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        assert RR == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        G = F.gram
        RtGR = [[sum(R[k][i] * G[k, l] * R[l][j] for k in range(n) for l in range(n)) for j in range(n)]
                for i in range(n)]
        assert RtGR == [[Fraction(G[i, j]) for j in range(n)] for i in range(n)]
    with pytest.raises(ValueError):
        reflection([1, 0, 0, 0], F)
    with pytest.raises(ValueError):
        reflection([1, 1], hyperbolic_form(1, -1))


def test_factorization_reproduces_target():
    rng = random.Random(11)
    for _ in range(60):
        g = rng.randint(1, 3)
        M = Isometry(random_orthogonal_word(rng, g, 8), hyperbolic_form(g, 1))
        fac = cartan_dieudonne_factor(M)
        assert fac.reproduces_target()
        assert len(fac.vectors) <= 2 * M.form.dim
        assert all(q != 0 for q in fac.norms())
        assert (-1) ** len(fac.vectors) == M.det()


def test_eichler_generators():
    F = hyperbolic_form(2, 1)
    assert eichler(F, [1, 0, 0, 0], [0, 0, 1, 0]) == T1
    assert eichler(F, [0, 1, 0, 0], [0, 0, -1, 0]) == T2
    for E in (T1, T2):
        assert det_spin_class(Isometry(E, F)) == (0, 0)
    with pytest.raises(ValueError):
        eichler(F, [1, 0, 0, 0], [0, 1, 0, 0])


def test_generators_are_isometries():
    for g in (1, 2, 3):
        F = hyperbolic_form(g, 1)
        gens = orthogonal_generators(g)
        assert all(is_isometry(M, F) for M in gens)
    assert det_spin_class(Isometry(block_negation(2, 1), hyperbolic_form(2, 1))) == (0, 1)
    assert det_spin_class(Isometry(block_swap(2, 0), hyperbolic_form(2, 1))) == (1, 1)


def test_spinor_norm_is_multiplicative():
    rng = random.Random(12)
    for _ in range(100):
        g = rng.randint(1, 3)
        F = hyperbolic_form(g, 1)
        A = random_orthogonal_word(rng, g, 5)
        B = random_orthogonal_word(rng, g, 5)
        assert spinor_norm(Isometry(A @ B, F)) == (spinor_norm(Isometry(A, F)) + spinor_norm(Isometry(B, F))) % 2


def test_spinor_norm_on_block_sums():
    F = hyperbolic_form(2, 1)
    for a in (IntMatrix.identity(2), SWAP, MINUS, -SWAP):
        for b in (IntMatrix.identity(2), SWAP, MINUS, -SWAP):
            ca, cb = det_spin_class(Isometry(a, H1)), det_spin_class(Isometry(b, H1))
            cab = det_spin_class(Isometry(IntMatrix.block_diagonal(a, b), F))
            assert cab == ((ca[0] + cb[0]) % 2, (ca[1] + cb[1]) % 2)


def test_spinor_norm_needs_symmetric_form():
    with pytest.raises(ValueError):
        spinor_norm(Isometry(IntMatrix.identity(2), hyperbolic_form(1, -1)))
