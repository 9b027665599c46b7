"""Z/2-valued quadratic refinements of the skew-symmetric hyperbolic form.

A refinement is stored by its values on the canonical basis
``e1, f1, ..., eg, fg``; every other value follows from
``mu(x + y) = mu(x) + mu(y) + lambda(x, y)`` and ``mu(a x) = a^2 mu(x)``.
Symplectic matrices act on the right: ``(mu . M)(x) = mu(M x)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NotAnIsometry
from .exactlin import IntMatrix
from .forms import hyperbolic_form, is_isometry

__all__ = [
    "QuadraticRefinement",
    "evaluate",
    "arf",
    "act",
    "standard_refinement",
    "preserves_refinement",
    "census",
    "census_closed_form",
    "transvection",
    "random_transvection_word",
    "DEFAULT_CENSUS_MAX_G",
]

DEFAULT_CENSUS_MAX_G = 12


@dataclass(frozen=True)
class QuadraticRefinement:
    genus: int
    basis_values: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.basis_values)
        if len(bits) != 2 * self.genus:
            raise ValueError(f"need {2 * self.genus} basis values, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("basis values must be 0 or 1")
        object.__setattr__(self, "basis_values", bits)

    @classmethod
    def from_bitstring(cls, s: str) -> QuadraticRefinement:
        s = s.strip()
        if len(s) % 2 or any(c not in "01" for c in s):
            raise ValueError(f"bad refinement bit-string {s!r}")
        return cls(len(s) // 2, tuple(int(c) for c in s))

    @classmethod
    def from_index(cls, g: int, index: int) -> QuadraticRefinement:
        """Bit ``i`` of ``index`` is the value on the ``i``-th basis vector."""
        if not 0 <= index < 1 << (2 * g):
            raise ValueError("index out of range")
        return cls(g, tuple((index >> i) & 1 for i in range(2 * g)))

    @property
    def index(self) -> int:
        return sum(b << i for i, b in enumerate(self.basis_values))

    def bitstring(self) -> str:
        return "".join(map(str, self.basis_values))

    def __str__(self) -> str:
        return self.bitstring()


def evaluate(mu: QuadraticRefinement, x: Sequence[int]) -> int:
    if len(x) != 2 * mu.genus:
        raise ValueError(f"vector of length {len(x)} for genus {mu.genus}")
    total = 0
    for i in range(mu.genus):
        a, b = x[2 * i], x[2 * i + 1]
        total += a * mu.basis_values[2 * i] + b * mu.basis_values[2 * i + 1] + a * b
    return total % 2


def arf(mu: QuadraticRefinement) -> int:
    v = mu.basis_values
    return sum(v[2 * i] * v[2 * i + 1] for i in range(mu.genus)) % 2


def act(mu: QuadraticRefinement, M: IntMatrix, over: str = "Z") -> QuadraticRefinement:
    """``mu . M``; ``over="F2"`` only asks ``M`` to be symplectic mod 2."""
    F = hyperbolic_form(mu.genus, -1)
    if over not in ("Z", "F2"):
        raise ValueError("over must be 'Z' or 'F2'")
    if not is_isometry(M, F, modulus=2 if over == "F2" else None):
        raise NotAnIsometry(f"{M!r} is not symplectic over {over}")
    return QuadraticRefinement(mu.genus, tuple(evaluate(mu, M.col(j)) for j in range(M.cols)))


def standard_refinement(arf_value: int, g: int) -> QuadraticRefinement:
    """All zeros, or ``H(1)`` on the first block and ``H(0)`` elsewhere."""
    if arf_value not in (0, 1):
        raise ValueError("arf value must be 0 or 1")
    if arf_value and g < 1:
        raise ValueError("no Arf invariant 1 refinement in genus 0")
    bits = [0] * (2 * g)
    if arf_value:
        bits[0] = bits[1] = 1
    return QuadraticRefinement(g, tuple(bits))


def preserves_refinement(M: IntMatrix, mu: QuadraticRefinement, over: str = "Z") -> bool:
    return act(mu, M, over) == mu


def census_closed_form(g: int) -> tuple[int, int]:
    if g == 0:
        return (1, 0)
    return (2 ** (2 * g - 1) + 2 ** (g - 1), 2 ** (2 * g - 1) - 2 ** (g - 1))


def census(g: int, max_g: int = DEFAULT_CENSUS_MAX_G) -> tuple[int, int]:
    """Exhaustive Arf-0 / Arf-1 counts over all ``2^(2g)`` refinements."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    if g > max_g:
        raise ValueError(f"genus {g} exceeds the census bound {max_g}")
    idx = np.arange(1 << (2 * g), dtype=np.uint32)
    even_mask = np.uint32(sum(1 << (2 * i) for i in range(g)))
    pairs = idx & (idx >> np.uint32(1)) & even_mask
    ones = int(np.count_nonzero(np.bitwise_count(pairs) & 1))
    return (idx.size - ones, ones)


def transvection(v: Sequence[int]) -> IntMatrix:
    """``x -> x + lambda(x, v) v`` on the skew-symmetric hyperbolic form."""
    n = len(v)
    if n % 2:
        raise ValueError("odd-length vector")
    F = hyperbolic_form(n // 2, -1)
    cols = []
    for j in range(n):
        x = [int(i == j) for i in range(n)]
        c = F.pair(x, v)
        cols.append([x[i] + c * v[i] for i in range(n)])
    return IntMatrix.from_rows(cols, n).T


def random_transvection_word(rng: random.Random, g: int, length: int, spread: int = 1) -> IntMatrix:
    """Product of transvections in random vectors with entries in ``[-spread, spread]``."""
    M = IntMatrix.identity(2 * g)
    for _ in range(length):
        v = [0] * (2 * g)
        while not any(v):
            v = [rng.randint(-spread, spread) for _ in range(2 * g)]
        M = M @ transvection(v)
    return M
