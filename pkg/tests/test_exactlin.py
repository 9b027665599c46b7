import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from framing_census.errors import ActionError, IllDefinedHomomorphism, InputFormatError
from framing_census.exactlin import (
    AbGroupPresentation,
    AbHom,
    FinAbGroup,
    IntMatrix,
    coinvariants,
    compose,
    group_from_json,
    group_to_json,
    hom_cokernel,
    hom_from_json,
    lattice_contains,
    parse_int,
    presentation_abelianization,
    presentation_from_json,
    smith_normal_form,
)


def snf_factors(rows, cols=None):
    return presentation_abelianization(AbGroupPresentation.from_rows(cols or len(rows[0]), rows))


def determinantal_divisors(A: IntMatrix):
    """gcd of all k x k minors, k = 1..min(shape)."""
    out = []
    for k in range(1, min(A.shape) + 1):
        g = 0
        for rs in itertools.combinations(range(A.rows), k):
            for cs in itertools.combinations(range(A.cols), k):
                sub = IntMatrix.from_rows([[A[i, j] for j in cs] for i in rs], k)
                g = math.gcd(g, sub.det())
        out.append(g)
    return out


def random_matrix(rng, r, c, bound=20):
    return IntMatrix(r, c, tuple(rng.randint(-bound, bound) for _ in range(r * c)))


class TestIntMatrix:
    def test_shape_and_access(self):
        M = IntMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
        assert M.shape == (2, 3)
        assert M[1, 2] == 6
        assert M.col(1) == (2, 5)
        assert M.T.to_rows() == [[1, 4], [2, 5], [3, 6]]

    def test_apply_versus_vecmul(self):
        M = IntMatrix.from_rows([[1, 2], [3, 4]])
        assert M.apply([1, 1]) == (3, 7)
        assert M.vecmul([1, 1]) == (4, 6)

    def test_det_and_inverse(self):
        M = IntMatrix.from_rows([[2, 1], [1, 1]])
        assert M.det() == 1
        assert M @ M.inverse() == IntMatrix.identity(2)
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[2, 0], [0, 1]]).inverse()

    def test_big_integers_stay_exact(self):
        big = 10 ** 40 + 7
        M = IntMatrix.from_rows([[big, 1], [big - 1, 1]])
        assert M.det() == 1
        assert (M @ M.inverse()) == IntMatrix.identity(2)

    def test_rejects_ragged(self):
        with pytest.raises(ValueError):
            IntMatrix.from_rows([[1, 2], [3]])

    def test_block_diagonal(self):
        B = IntMatrix.block_diagonal(IntMatrix.identity(1), IntMatrix.from_rows([[0, 1], [1, 0]]))
        assert B.to_rows() == [[1, 0, 0], [0, 0, 1], [0, 1, 0]]


class TestSmithNormalForm:
    @pytest.mark.parametrize("rows, factors", [
        ([[12, 0], [0, 12], [6, 6]], (6, 12)),
        ([[4, 0], [1, 3]], (12,)),
        ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], (2, 6, 12)),
        ([[0, 0], [0, 0]], ()),
    ])
    def test_examples(self, rows, factors):
        assert snf_factors(rows).invariant_factors == factors

    def test_zero_relations_are_free(self):
        G = snf_factors([[0, 0]])
        assert G == FinAbGroup((), 2)

    def test_empty_matrix(self):
        dec = smith_normal_form(IntMatrix.zeros(0, 3))
        assert dec.verify()
        assert presentation_abelianization(AbGroupPresentation(3, IntMatrix.zeros(0, 3))) == FinAbGroup((), 3)

    def test_agrees_with_sympy(self):
        rng = random.Random(1)
        for _ in range(150):
            A = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
            ours = [d for d in smith_normal_form(A).diagonal if d != 0]
            theirs = [abs(int(d)) for d in invariant_factors(Matrix(A.to_rows()), domain=ZZ) if d != 0]
            assert ours == theirs, A

    def test_determinantal_divisors(self):
        rng = random.Random(2)
        for _ in range(60):
            A = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), bound=9)
            diag = smith_normal_form(A).diagonal
            prods = [math.prod(diag[:k]) for k in range(1, len(diag) + 1)]
            assert prods == determinantal_divisors(A)

    def test_index_equals_determinant(self):
        rng = random.Random(3)
        for _ in range(100):
            A = random_matrix(rng, 3, 3)
            d = abs(A.det())
            G = presentation_abelianization(AbGroupPresentation(3, A))
            assert (G.order() if d else None) == (d if d else None)

    def test_index_by_counting_lattice_points(self):
        # d Z^2 lies in the row lattice L, so |Z^2 / L| = d^2 / |L mod d|
        rng = random.Random(4)
        for _ in range(30):
            A = random_matrix(rng, 2, 2, bound=6)
            d = abs(A.det())
            if d == 0:
                continue
            inside = sum(1 for y in itertools.product(range(d), repeat=2) if lattice_contains(A, y))
            assert d * d // inside == presentation_abelianization(AbGroupPresentation(2, A)).order()

    def test_transforms(self):
        rng = random.Random(5)
        for _ in range(500):
            A = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
            assert smith_normal_form(A).verify()


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.lists(st.integers(-15, 15), min_size=3, max_size=3), min_size=1, max_size=4),
    st.integers(0, 10 ** 6),
)
def test_invariant_under_unimodular_change(rows, seed):
    rng = random.Random(seed)
    A = IntMatrix.from_rows(rows, 3)
    U = IntMatrix.identity(A.rows)
    V = IntMatrix.identity(3)
    for _ in range(6):
        i, j = rng.sample(range(A.rows), 2) if A.rows > 1 else (0, 0)
        if i != j:
            E = IntMatrix.identity(A.rows).to_rows()
            E[i][j] = rng.randint(-3, 3)
            U = IntMatrix.from_rows(E) @ U
        a, b = rng.sample(range(3), 2)
        E = IntMatrix.identity(3).to_rows()
        E[a][b] = rng.randint(-3, 3)
        V = V @ IntMatrix.from_rows(E)
    assert smith_normal_form(U @ A @ V).diagonal == smith_normal_form(A).diagonal


class TestFinAbGroup:
    def test_canonical_form_enforced(self):
        with pytest.raises(ValueError):
            FinAbGroup((4, 6))
        with pytest.raises(ValueError):
            FinAbGroup((1,))

    def test_from_cyclic(self):
        assert FinAbGroup.from_cyclic([4, 6]) == FinAbGroup((2, 12))
        assert FinAbGroup.from_cyclic([0, 1, 3]) == FinAbGroup((3,), 1)

    def test_str(self):
        assert str(FinAbGroup((6, 12))) == "Z/6 + Z/12"
        assert str(FinAbGroup((), 2)) == "Z^2"
        assert str(FinAbGroup()) == "0"

    def test_order_and_elements(self):
        G = FinAbGroup((2, 4))
        assert G.order() == 8
        assert len(list(G.elements())) == 8
        assert FinAbGroup((2,), 1).order() is None


class TestHomomorphisms:
    def test_ill_defined(self):
        with pytest.raises(IllDefinedHomomorphism):
            AbHom(FinAbGroup((2,)), FinAbGroup((3,)), IntMatrix.from_rows([[1]]))
        with pytest.raises(IllDefinedHomomorphism):
            AbHom(FinAbGroup((4,)), FinAbGroup((), 1), IntMatrix.from_rows([[1]]))

    def test_well_defined_into_larger_cyclic(self):
        f = AbHom(FinAbGroup((2,)), FinAbGroup((4,)), IntMatrix.from_rows([[2]]))
        assert f([1]) == (2,)
        assert hom_cokernel(f) == FinAbGroup((2,))

    def test_cokernel_of_inclusion(self):
        sub = AbHom(FinAbGroup((2, 2)), FinAbGroup((2, 2, 2)), IntMatrix.from_rows([[1, 0, 0], [0, 1, 0]]))
        assert hom_cokernel(sub) == FinAbGroup((2,))

    def test_compose_order(self):
        Z4, Z2 = FinAbGroup((4,)), FinAbGroup((2,))
        double = AbHom(Z2, Z4, IntMatrix.from_rows([[2]]))
        reduce = AbHom(Z4, Z2, IntMatrix.from_rows([[1]]))
        assert compose(reduce, double) == AbHom.zero(Z2, Z2)
        assert compose(double, reduce).matrix.to_rows() == [[2]]

    def test_cokernel_order_matches_image_count(self):
        rng = random.Random(6)
        groups = [FinAbGroup((2,)), FinAbGroup((4,)), FinAbGroup((2, 2)), FinAbGroup((2, 4)), FinAbGroup((6,))]
        tested = 0
        while tested < 40:
            A, B = rng.choice(groups), rng.choice(groups)
            M = IntMatrix(A.generator_count, B.generator_count,
                          tuple(rng.randint(0, 5) for _ in range(A.generator_count * B.generator_count)))
            try:
                f = AbHom(A, B, M)
            except IllDefinedHomomorphism:
                continue
            tested += 1
            assert hom_cokernel(f).order() * len(f.image_elements()) == B.order()


class TestCoinvariants:
    def test_involutions_on_the_o22_presentation(self):
        P = AbGroupPresentation.from_rows(2, [[12, 0], [0, 12], [6, 6]])
        sigma1 = IntMatrix.from_rows([[-1, 0], [0, -1]])
        sigma2 = IntMatrix.from_rows([[0, -1], [-1, 0]])
        assert coinvariants(P, [sigma1, sigma2]) == FinAbGroup((2,))

    def test_negation_on_free_cyclic(self):
        P = AbGroupPresentation(1, IntMatrix.zeros(0, 1))
        assert coinvariants(P, [IntMatrix.from_rows([[-1]])]) == FinAbGroup((2,))

    def test_action_must_preserve_relations(self):
        P = AbGroupPresentation.from_rows(2, [[2, 0], [0, 4]])
        swap = IntMatrix.from_rows([[0, 1], [1, 0]])
        with pytest.raises(ActionError):
            coinvariants(P, [swap])


class TestJson:
    def test_integers_as_strings(self):
        assert parse_int("123456789012345678901234567890") == 123456789012345678901234567890
        with pytest.raises(InputFormatError):
            parse_int(1.5)
        with pytest.raises(InputFormatError):
            parse_int(True)

    def test_group_round_trip(self):
        G = FinAbGroup((2, 4), 1)
        doc = group_to_json(G)
        assert group_from_json(doc) == G
        assert group_from_json({"cyclic": [6, 4]}) == FinAbGroup((2, 12))

    def test_presentation(self):
        P = presentation_from_json({"generators": 2, "relations": [["12", 0], [0, 12], [6, 6]]})
        assert presentation_abelianization(P) == FinAbGroup((6, 12))

    def test_hom(self):
        f = hom_from_json({"domain": {"cyclic": [2]}, "codomain": {"cyclic": [4]}, "matrix": [[2]]})
        assert f([1]) == (2,)
        with pytest.raises(IllDefinedHomomorphism):
            hom_from_json({"domain": {"cyclic": [2]}, "codomain": {"cyclic": [4]}, "matrix": [[1]]})
        with pytest.raises(InputFormatError):
            hom_from_json({"domain": {"cyclic": [2]}})
