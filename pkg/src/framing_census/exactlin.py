"""Exact integer linear algebra.

Smith normal form with unimodular transforms, finitely generated abelian
groups in invariant-factor form, presentations, homomorphisms, cokernels and
coinvariants.  Everything is plain Python ``int``; nothing here touches
floating point.

Row convention: a relation is a row vector in the generators, and a
homomorphism matrix has one row per domain generator holding the image of
that generator in codomain coordinates, so images are row products ``x M``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import ActionError, IllDefinedHomomorphism, InputFormatError

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "FinAbGroup",
    "AbGroupPresentation",
    "AbHom",
    "smith_normal_form",
    "lattice_contains",
    "presentation_abelianization",
    "hom_cokernel",
    "compose",
    "coinvariants",
    "parse_int",
    "matrix_from_json",
    "group_from_json",
    "group_to_json",
    "presentation_from_json",
    "hom_from_json",
]


def _check_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"expected an integer entry, got {x!r}")
    return x


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        for x in self.entries:
            _check_int(x)

    # construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer the width of an empty row list; pass cols")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None) -> IntMatrix:
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols)

    @classmethod
    def block_diagonal(cls, *blocks: IntMatrix) -> IntMatrix:
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls.from_rows(out, m)

    # access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def diagonal_entries(self) -> tuple[int, ...]:
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})" if self.rows else f"IntMatrix(0x{self.cols})"

    # arithmetic -------------------------------------------------------

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in cols)
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def mod(self, m: int) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(a % m for a in self.entries))

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Column-vector product ``M v``."""
        if len(v) != self.cols:
            raise ValueError("length mismatch")
        return tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows))

    def vecmul(self, v: Sequence[int]) -> tuple[int, ...]:
        """Row-vector product ``v M``."""
        if len(v) != self.rows:
            raise ValueError("length mismatch")
        return tuple(sum(v[i] * self[i, j] for i in range(self.rows)) for j in range(self.cols))

    def vstack(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.cols:
            raise ValueError("width mismatch")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def inverse(self) -> IntMatrix:
        """Inverse of a unimodular matrix; raises if the inverse is not integral."""
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
             for i, r in enumerate(self.to_rows())]
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c] != 0), None)
            if p is None:
                raise ValueError("singular matrix")
            a[c], a[p] = a[p], a[c]
            piv = a[c][c]
            a[c] = [x / piv for x in a[c]]
            for i in range(n):
                if i != c and a[i][c] != 0:
                    f = a[i][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
        out = []
        for r in a:
            for x in r[n:]:
                if x.denominator != 1:
                    raise ValueError("matrix is not unimodular")
                out.append(int(x))
        return IntMatrix(n, n, tuple(out))


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ source @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    source: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return self.S.diagonal_entries()

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def verify(self) -> bool:
        if self.U @ self.source @ self.V != self.S:
            return False
        if abs(self.U.det()) != 1 or abs(self.V.det()) != 1:
            return False
        S = self.S
        for i in range(S.rows):
            for j in range(S.cols):
                if i != j and S[i, j] != 0:
                    return False
        d = self.diagonal
        if any(x < 0 for x in d):
            return False
        for a, b in zip(d, d[1:]):
            if a == 0 and b != 0:
                return False
            if a != 0 and b % a != 0:
                return False
        return True


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form of an arbitrary integer matrix.

    Pivots on a nonzero entry of least absolute value in the remaining block,
    clears its row and column by Euclidean steps, and repairs divisibility by
    folding an offending row into the pivot row.
    """
    m, n = A.shape
    a = A.to_rows()
    u = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
            cand = None
            for i in range(t + 1, m):
                if a[i][t] and (cand is None or abs(a[i][t]) < abs(cand[2])):
                    cand = ("r", i, a[i][t])
            for j in range(t + 1, n):
                if a[t][j] and (cand is None or abs(a[t][j]) < abs(cand[2])):
                    cand = ("c", j, a[t][j])
            if cand is not None:
                if cand[0] == "r":
                    swap_rows(t, cand[1])
                else:
                    swap_cols(t, cand[1])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return SmithDecomposition(
        U=IntMatrix.from_rows(u, m),
        S=IntMatrix.from_rows(a, n),
        V=IntMatrix.from_rows(v, n),
        source=A,
    )


def lattice_contains(relations: IntMatrix, vec: Sequence[int]) -> bool:
    """Whether ``vec`` lies in the integer row span of ``relations``."""
    if len(vec) != relations.cols:
        raise ValueError("length mismatch")
    snf = smith_normal_form(relations)
    # rowspan(R) V = rowspan(S), so test vec V against the diagonal
    w = snf.V.vecmul(vec)
    d = snf.diagonal
    for i, x in enumerate(w):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if x != 0:
                return False
        elif x % di:
            return False
    return True


@dataclass(frozen=True)
class FinAbGroup:
    """A finitely generated abelian group ``Z/d1 + ... + Z/dk + Z^r``.

    Canonical: every factor is at least 2 and divides the next.  Generators are
    ordered torsion factors first, then the free summands.
    """

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(self.invariant_factors))
        for d in self.invariant_factors:
            _check_int(d)
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2; use FinAbGroup.from_cyclic")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a:
                raise ValueError(f"invariant factors {self.invariant_factors} break the divisibility chain")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @classmethod
    def trivial(cls) -> FinAbGroup:
        return cls()

    @classmethod
    def from_cyclic(cls, orders: Iterable[int]) -> FinAbGroup:
        """Direct sum of cyclic groups ``Z/o`` (``o = 0`` meaning ``Z``) in canonical form."""
        orders = [abs(_check_int(o)) for o in orders]
        pres = AbGroupPresentation(len(orders), IntMatrix.diagonal(orders, len(orders), len(orders)))
        return presentation_abelianization(pres)

    @classmethod
    def elementary(cls, p: int, k: int) -> FinAbGroup:
        return cls((p,) * k)

    @property
    def generator_count(self) -> int:
        return len(self.invariant_factors) + self.free_rank

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def is_trivial(self) -> bool:
        return self.generator_count == 0

    def order(self) -> int | None:
        """Group order, or ``None`` when the group is infinite."""
        if self.free_rank:
            return None
        return math.prod(self.invariant_factors)

    def relation_matrix(self) -> IntMatrix:
        k = self.generator_count
        return IntMatrix.diagonal(self.invariant_factors, len(self.invariant_factors), k)

    def orders(self) -> tuple[int, ...]:
        """Order of each generator, ``0`` for free generators."""
        return self.invariant_factors + (0,) * self.free_rank

    def normalize(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of an element (torsion coordinates reduced)."""
        if len(vec) != self.generator_count:
            raise ValueError("length mismatch")
        return tuple(x % o if o else x for x, o in zip(vec, self.orders()))

    def elements(self) -> Iterator[tuple[int, ...]]:
        if not self.is_finite():
            raise ValueError("cannot enumerate an infinite group")
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def direct_sum(self, other: FinAbGroup) -> FinAbGroup:
        return FinAbGroup.from_cyclic(self.orders() + other.orders())

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.invariant_factors]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AbGroupPresentation:
    """``Z^generator_count`` modulo the row span of ``relations``."""

    generator_count: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.cols != self.generator_count:
            raise ValueError(
                f"relation rows have width {self.relations.cols}, expected {self.generator_count}"
            )

    @classmethod
    def from_rows(cls, generator_count: int, rows: Sequence[Sequence[int]]) -> AbGroupPresentation:
        return cls(generator_count, IntMatrix.from_rows(rows, generator_count))

    def with_relations(self, rows: Sequence[Sequence[int]]) -> AbGroupPresentation:
        extra = IntMatrix.from_rows(rows, self.generator_count)
        return AbGroupPresentation(self.generator_count, self.relations.vstack(extra))


def presentation_abelianization(P: AbGroupPresentation) -> FinAbGroup:
    """The abelian group presented by ``P``, in invariant-factor form."""
    snf = smith_normal_form(P.relations)
    diag = snf.diagonal
    factors = tuple(d for d in diag if d > 1)
    free = P.generator_count - sum(1 for d in diag if d != 0)
    return FinAbGroup(factors, free)


@dataclass(frozen=True)
class AbHom:
    """A homomorphism given on generators; rows are images of domain generators."""

    domain: FinAbGroup
    codomain: FinAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        m = self.matrix
        if m.shape != (self.domain.generator_count, self.codomain.generator_count):
            raise IllDefinedHomomorphism(
                f"matrix shape {m.shape} does not match "
                f"{self.domain.generator_count} -> {self.codomain.generator_count} generators"
            )
        target = self.codomain.relation_matrix()
        for i, d in enumerate(self.domain.invariant_factors):
            image = [d * x for x in m.row(i)]
            if not lattice_contains(target, image):
                raise IllDefinedHomomorphism(
                    f"generator {i} has order {d} but {d} * {list(m.row(i))} is nonzero in {self.codomain}"
                )
        object.__setattr__(self, "matrix", IntMatrix.from_rows(
            [self.codomain.normalize(m.row(i)) for i in range(m.rows)], m.cols))

    @classmethod
    def zero(cls, domain: FinAbGroup, codomain: FinAbGroup) -> AbHom:
        return cls(domain, codomain, IntMatrix.zeros(domain.generator_count, codomain.generator_count))

    @classmethod
    def identity(cls, group: FinAbGroup) -> AbHom:
        return cls(group, group, IntMatrix.identity(group.generator_count))

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.codomain.normalize(self.matrix.vecmul(list(x)))

    def image_elements(self) -> set[tuple[int, ...]]:
        """All elements of the image, by enumeration; finite domain only."""
        return {self(x) for x in self.domain.elements()}


def compose(outer: AbHom, inner: AbHom) -> AbHom:
    """``outer ∘ inner``."""
    if inner.codomain != outer.domain:
        raise IllDefinedHomomorphism(f"cannot compose: {inner.codomain} != {outer.domain}")
    return AbHom(inner.domain, outer.codomain, inner.matrix @ outer.matrix)


def hom_cokernel(f: AbHom) -> FinAbGroup:
    """Codomain modulo the image of ``f``."""
    rel = f.codomain.relation_matrix().vstack(f.matrix)
    return presentation_abelianization(AbGroupPresentation(f.codomain.generator_count, rel))


def coinvariants(P: AbGroupPresentation, action: Sequence[IntMatrix]) -> FinAbGroup:
    """Largest quotient of the presented group on which every action matrix is trivial.

    Row ``i`` of each action matrix is the image of generator ``i``.
    """
    k = P.generator_count
    extra = []
    for idx, A in enumerate(action):
        if A.shape != (k, k):
            raise ActionError(f"action matrix {idx} has shape {A.shape}, expected {(k, k)}")
        for r in range(P.relations.rows):
            if not lattice_contains(P.relations, A.vecmul(P.relations.row(r))):
                raise ActionError(
                    f"action matrix {idx} {A.to_rows()} does not preserve relation {list(P.relations.row(r))}"
                )
        extra.extend((A - IntMatrix.identity(k)).to_rows())
    return presentation_abelianization(P.with_relations(extra) if extra else P)


# JSON ---------------------------------------------------------------------

def parse_int(x) -> int:
    """Integer from a JSON number or decimal string."""
    if isinstance(x, bool):
        raise InputFormatError(f"expected an integer, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        s = x.strip()
        if s.lstrip("+-").isdigit():
            return int(s)
    raise InputFormatError(f"expected an integer or decimal string, got {x!r}")


def matrix_from_json(rows, cols: int | None = None) -> IntMatrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise InputFormatError("matrix must be a list of rows")
    parsed = [[parse_int(x) for x in r] for r in rows]
    try:
        return IntMatrix.from_rows(parsed, cols)
    except ValueError as exc:
        raise InputFormatError(str(exc)) from None


def group_from_json(doc) -> FinAbGroup:
    """Accepts ``{"invariant_factors": [...], "free_rank": r}`` or ``{"cyclic": [...]}``."""
    if not isinstance(doc, dict):
        raise InputFormatError("group must be a JSON object")
    try:
        if "cyclic" in doc:
            return FinAbGroup.from_cyclic([parse_int(x) for x in doc["cyclic"]])
        return FinAbGroup(
            tuple(parse_int(x) for x in doc.get("invariant_factors", [])),
            parse_int(doc.get("free_rank", 0)),
        )
    except (ValueError, TypeError) as exc:
        raise InputFormatError(str(exc)) from None


def group_to_json(G: FinAbGroup) -> dict:
    return {
        "invariant_factors": list(G.invariant_factors),
        "free_rank": G.free_rank,
        "order": G.order() if G.is_finite() else "infinite",
        "name": str(G),
    }


def presentation_from_json(doc) -> AbGroupPresentation:
    if not isinstance(doc, dict) or "generators" not in doc:
        raise InputFormatError('presentation needs "generators" and "relations"')
    k = parse_int(doc["generators"])
    rel = matrix_from_json(doc.get("relations", []), k)
    return AbGroupPresentation(k, rel)


def hom_from_json(doc) -> AbHom:
    if not isinstance(doc, dict) or not {"domain", "codomain", "matrix"} <= doc.keys():
        raise InputFormatError('homomorphism needs "domain", "codomain" and "matrix"')
    dom = group_from_json(doc["domain"])
    cod = group_from_json(doc["codomain"])
    return AbHom(dom, cod, matrix_from_json(doc["matrix"], cod.generator_count))
