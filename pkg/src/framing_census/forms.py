"""Epsilon-symmetric hyperbolic forms over Z and their isometries.

The canonical basis order is ``e1, f1, e2, f2, ..., eg, fg``.  For the
symmetric case (epsilon = +1) this module also factors integer isometries
into rational reflections and reads off the determinant and the real spinor
norm (the sign of the product of the reflecting vectors' norms).
"""

from __future__ import annotations

import functools
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import NotAnIsometry
from .exactlin import IntMatrix

Number = Union[int, Fraction]
QVector = tuple[Fraction, ...]
QMatrix = tuple[tuple[Fraction, ...], ...]

__all__ = [
    "EpsSymmetricForm",
    "Isometry",
    "ReflectionFactorization",
    "hyperbolic_form",
    "is_isometry",
    "basis_permutation",
    "to_canonical",
    "reflection",
    "cartan_dieudonne_factor",
    "spinor_norm",
    "det_spin_class",
    "orthogonal_basis",
    "block_negation",
    "block_swap",
    "eichler",
    "orthogonal_generators",
    "random_orthogonal_word",
]


@dataclass(frozen=True)
class EpsSymmetricForm:
    genus: int
    epsilon: int
    gram: IntMatrix

    def __post_init__(self):
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        if self.gram.shape != (2 * self.genus, 2 * self.genus):
            raise ValueError(f"gram has shape {self.gram.shape}, expected {2 * self.genus} square")
        if self.gram.T != self.gram.scale(self.epsilon):
            raise ValueError("gram matrix is not epsilon-symmetric")

    @property
    def dim(self) -> int:
        return 2 * self.genus

    def pair(self, x: Sequence[Number], y: Sequence[Number]) -> Number:
        """``x^T gram y``; exact for int or Fraction inputs."""
        n = self.dim
        if len(x) != n or len(y) != n:
            raise ValueError("length mismatch")
        G = self.gram
        return sum(x[i] * G[i, j] * y[j] for i in range(n) for j in range(n) if G[i, j])


def hyperbolic_form(g: int, epsilon: int) -> EpsSymmetricForm:
    """Orthogonal sum of ``g`` blocks ``[[0, 1], [epsilon, 0]]``."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    block = IntMatrix.from_rows([[0, 1], [epsilon, 0]])
    gram = IntMatrix.block_diagonal(*([block] * g)) if g else IntMatrix.zeros(0, 0)
    return EpsSymmetricForm(g, epsilon, gram)


def is_isometry(M: IntMatrix, F: EpsSymmetricForm, modulus: int | None = None) -> bool:
    """``M^T gram M == gram``, optionally modulo ``modulus``."""
    if M.shape != F.gram.shape:
        raise ValueError(f"matrix shape {M.shape} does not match form of dimension {F.dim}")
    lhs = M.T @ F.gram @ M
    if modulus is None:
        return lhs == F.gram
    return lhs.mod(modulus) == F.gram.mod(modulus)


_LABEL = re.compile(r"^([ef])(\d+)$")


def basis_permutation(order: Sequence[Union[int, str]]) -> list[int]:
    """Canonical indices for a basis order given as indices or labels like ``"f2"``."""
    out = []
    for item in order:
        if isinstance(item, str):
            m = _LABEL.match(item.strip())
            if not m or int(m.group(2)) < 1:
                raise ValueError(f"bad basis label {item!r}")
            out.append(2 * (int(m.group(2)) - 1) + (m.group(1) == "f"))
        else:
            out.append(int(item))
    if sorted(out) != list(range(len(out))):
        raise ValueError(f"basis order {list(order)} is not a permutation")
    return out


def to_canonical(M: IntMatrix, basis_order: Sequence[Union[int, str]]) -> IntMatrix:
    """Rewrite ``M`` (given w.r.t. ``basis_order``) in the canonical basis.

    The ``i``-th vector of the given basis is canonical vector ``basis_order[i]``.
    """
    perm = basis_permutation(basis_order)
    n = len(perm)
    if M.shape != (n, n):
        raise ValueError("basis order length does not match the matrix")
    Q = IntMatrix.from_rows([[int(perm[j] == i) for j in range(n)] for i in range(n)], n)
    return Q @ M @ Q.T


@dataclass(frozen=True)
class Isometry:
    matrix: IntMatrix
    form: EpsSymmetricForm

    def __post_init__(self):
        if not is_isometry(self.matrix, self.form):
            raise NotAnIsometry(f"{self.matrix!r} does not preserve the form")

    def __matmul__(self, other: Isometry) -> Isometry:
        if other.form != self.form:
            raise ValueError("isometries of different forms")
        return Isometry(self.matrix @ other.matrix, self.form)

    def inverse(self) -> Isometry:
        return Isometry(self.matrix.inverse(), self.form)

    def det(self) -> int:
        return self.matrix.det()


# rational helpers ---------------------------------------------------------

def _qidentity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _qmatmul(A, B) -> list[list[Fraction]]:
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def _qapply(A, x) -> QVector:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def _freeze(A) -> QMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in A)


def orthogonal_basis(g: int) -> list[QVector]:
    """``e_i + f_i`` (norm 2) and ``e_i - f_i`` (norm -2) for each block."""
    out = []
    for i in range(g):
        for sign in (1, -1):
            v = [Fraction(0)] * (2 * g)
            v[2 * i] = Fraction(1)
            v[2 * i + 1] = Fraction(sign)
            out.append(tuple(v))
    return out


def _require_symmetric(F: EpsSymmetricForm):
    if F.epsilon != 1:
        raise ValueError("reflections and spinor norms need a symmetric (epsilon = +1) form")


def _reflect_left(v: QVector, F: EpsSymmetricForm, N: list[list[Fraction]]) -> list[list[Fraction]]:
    """``r_v N`` without forming the reflection matrix."""
    n = F.dim
    c = Fraction(2) / F.pair(v, v)
    Gv = [sum(F.gram[i, j] * v[j] for j in range(n) if F.gram[i, j]) for i in range(n)]
    w = [c * sum(Gv[i] * N[i][j] for i in range(n) if Gv[i]) for j in range(n)]
    return [[N[i][j] - v[i] * w[j] if v[i] else N[i][j] for j in range(n)] for i in range(n)]


def reflection(v: Sequence[Number], F: EpsSymmetricForm) -> QMatrix:
    """Matrix of ``x -> x - 2 B(x, v) / B(v, v) v``."""
    _require_symmetric(F)
    v = tuple(Fraction(x) for x in v)
    q = F.pair(v, v)
    if q == 0:
        raise ValueError(f"cannot reflect in isotropic vector {v}")
    n = F.dim
    Gv = [sum(F.gram[i, j] * v[j] for j in range(n)) for i in range(n)]
    return tuple(
        tuple(Fraction(int(i == j)) - 2 * v[i] * Gv[j] / q for j in range(n)) for i in range(n)
    )


@dataclass(frozen=True)
class ReflectionFactorization:
    """``target == r_{v1} r_{v2} ... r_{vk}`` over Q."""

    vectors: tuple[QVector, ...]
    target: Isometry

    def composite(self) -> QMatrix:
        out = _qidentity(self.target.form.dim)
        for v in self.vectors:
            out = _qmatmul(out, reflection(v, self.target.form))
        return _freeze(out)

    def norms(self) -> tuple[Fraction, ...]:
        return tuple(self.target.form.pair(v, v) for v in self.vectors)

    def reproduces_target(self) -> bool:
        return self.composite() == _freeze(self.target.matrix.to_rows())


def cartan_dieudonne_factor(M: Isometry) -> ReflectionFactorization:
    """Factor a symmetric-form isometry into at most ``2 * dim`` reflections.

    Walks the orthogonal basis ``u_i, w_i``; each basis vector not yet fixed is
    sent back to itself by one reflection, or by two when ``N b - b`` is isotropic.
    """
    F = M.form
    _require_symmetric(F)
    N = [[Fraction(x) for x in row] for row in M.matrix.to_rows()]
    vectors: list[QVector] = []
    for b in orthogonal_basis(F.genus):
        Nb = _qapply(N, b)
        if Nb == b:
            continue
        v = tuple(x - y for x, y in zip(Nb, b))
        if F.pair(v, v) != 0:
            vectors.append(v)
            N = _reflect_left(v, F, N)
        else:
            w = tuple(x + y for x, y in zip(Nb, b))
            vectors.extend([w, b])
            N = _reflect_left(b, F, _reflect_left(w, F, N))
    if _freeze(N) != _freeze(_qidentity(F.dim)):
        raise ArithmeticError("reflection walk did not terminate at the identity")
    return ReflectionFactorization(tuple(vectors), M)


def spinor_norm(M: Isometry) -> int:
    """0 if the product of reflection norms is positive, 1 if negative."""
    negatives = sum(1 for q in cartan_dieudonne_factor(M).norms() if q < 0)
    return negatives % 2


def det_spin_class(M: Isometry) -> tuple[int, int]:
    """(determinant as 0/1 for +1/-1, spinor norm)."""
    _require_symmetric(M.form)
    d = M.det()
    if d not in (1, -1):
        raise ArithmeticError(f"integer isometry with determinant {d}")
    return (0 if d == 1 else 1, spinor_norm(M))


# generators of O_{g,g}(Z) -------------------------------------------------

def block_negation(g: int, i: int) -> IntMatrix:
    """``-1`` on ``e_i, f_i``, identity elsewhere (0-based block)."""
    d = [1] * (2 * g)
    d[2 * i] = d[2 * i + 1] = -1
    return IntMatrix.diagonal(d)


def block_swap(g: int, i: int) -> IntMatrix:
    """Exchange ``e_i`` and ``f_i``."""
    rows = IntMatrix.identity(2 * g).to_rows()
    rows[2 * i], rows[2 * i + 1] = rows[2 * i + 1], rows[2 * i]
    return IntMatrix.from_rows(rows, 2 * g)


def eichler(F: EpsSymmetricForm, u: Sequence[int], v: Sequence[int]) -> IntMatrix:
    """``x -> x + B(x, u) v - B(x, v) u`` for orthogonal isotropic ``u, v``."""
    _require_symmetric(F)
    if F.pair(u, u) or F.pair(v, v) or F.pair(u, v):
        raise ValueError("eichler transformation needs orthogonal isotropic vectors")
    cols = []
    for j in range(F.dim):
        x = [int(i == j) for i in range(F.dim)]
        bu, bv = F.pair(x, u), F.pair(x, v)
        cols.append([x[i] + bu * v[i] - bv * u[i] for i in range(F.dim)])
    return IntMatrix.from_rows(cols, F.dim).T


@functools.lru_cache(maxsize=None)
def _orthogonal_generators(g: int) -> tuple[IntMatrix, ...]:
    F = hyperbolic_form(g, 1)
    gens = [block_negation(g, i) for i in range(g)] + [block_swap(g, i) for i in range(g)]

    def unit(k, s=1):
        return [s * int(t == k) for t in range(2 * g)]

    for i in range(g):
        for j in range(g):
            if i == j:
                continue
            for a in (2 * i, 2 * i + 1):
                for b in (2 * j, 2 * j + 1):
                    for s in (1, -1):
                        gens.append(eichler(F, unit(a), unit(b, s)))
    return tuple(gens)


def orthogonal_generators(g: int) -> list[IntMatrix]:
    """Block negations, block swaps and Eichler elementaries between blocks."""
    return list(_orthogonal_generators(g))


def random_orthogonal_word(rng: random.Random, g: int, length: int) -> IntMatrix:
    gens = _orthogonal_generators(g)
    M = IntMatrix.identity(2 * g)
    for _ in range(length):
        M = M @ rng.choice(gens)
    return M
