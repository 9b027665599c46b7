"""Orbit decomposition of finite permutation actions by generator closure.

Also builds the action of all symplectic transvections of ``F_2^{2g}`` on the
``2^{2g}`` quadratic refinements, with refinements indexed by their packed
basis-value bits (see :meth:`QuadraticRefinement.index`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exactlin import IntMatrix
from .quad import QuadraticRefinement, arf, transvection

__all__ = [
    "FiniteAction",
    "OrbitDecomposition",
    "orbits",
    "symplectic_transvections_f2",
    "transvection_vectors",
    "quad_action",
    "quad_orbit_census",
    "orbit_arf_values",
    "DEFAULT_ORBIT_MAX_G",
]

DEFAULT_ORBIT_MAX_G = 6


class FiniteAction:
    """Generators are permutations of ``range(point_count)`` (``perm[p]`` is the image of ``p``)."""

    def __init__(self, point_count: int, generators: Sequence[Sequence[int]] | np.ndarray):
        gens = np.asarray(generators, dtype=np.int64).reshape(-1, point_count)
        gens.setflags(write=False)
        expected = np.arange(point_count)
        for k, g in enumerate(gens):
            if not np.array_equal(np.sort(g), expected):
                raise ValueError(f"generator {k} is not a bijection of {point_count} points")
        self.point_count = point_count
        self.generators = gens

    def __len__(self) -> int:
        return len(self.generators)


@dataclass(frozen=True)
class OrbitDecomposition:
    orbit_id: np.ndarray
    sizes: tuple[int, ...]
    representatives: tuple[int, ...]
    parent: np.ndarray
    parent_generator: np.ndarray

    @property
    def orbit_count(self) -> int:
        return len(self.sizes)

    def members(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.orbit_id == k)

    def word_to(self, point: int) -> list[int]:
        """Generator indices taking the orbit representative to ``point``, in application order."""
        word = []
        while self.parent[point] >= 0:
            word.append(int(self.parent_generator[point]))
            point = int(self.parent[point])
        return word[::-1]

    def as_sets(self) -> set[frozenset[int]]:
        return {frozenset(self.members(k).tolist()) for k in range(self.orbit_count)}


def orbits(action: FiniteAction) -> OrbitDecomposition:
    """Breadth-first closure; orbits are numbered by their least point."""
    n = action.point_count
    gens = action.generators
    orbit_id = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    parent_gen = np.full(n, -1, dtype=np.int64)
    sizes, reps = [], []
    for start in range(n):
        if orbit_id[start] >= 0:
            continue
        k = len(reps)
        orbit_id[start] = k
        frontier = np.array([start], dtype=np.int64)
        size = 1
        while frontier.size:
            found = []
            for gi, g in enumerate(gens):
                img = g[frontier]
                fresh = orbit_id[img] < 0
                if not fresh.any():
                    continue
                img, src = img[fresh], frontier[fresh]
                img, first = np.unique(img, return_index=True)
                orbit_id[img] = k
                parent[img] = src[first]
                parent_gen[img] = gi
                found.append(img)
            frontier = np.concatenate(found) if found else np.empty(0, dtype=np.int64)
            size += frontier.size
        sizes.append(size)
        reps.append(start)
    return OrbitDecomposition(orbit_id, tuple(sizes), tuple(reps), parent, parent_gen)


def transvection_vectors(g: int) -> list[int]:
    """Nonzero vectors of ``F_2^{2g}`` as packed bits, in increasing order."""
    return list(range(1, 1 << (2 * g)))


def _unpack(v: int, g: int) -> list[int]:
    return [(v >> i) & 1 for i in range(2 * g)]


def symplectic_transvections_f2(g: int) -> list[IntMatrix]:
    """``t_v(x) = x + lambda(x, v) v`` reduced mod 2, one per nonzero ``v``."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    return [transvection(_unpack(v, g)).mod(2) for v in transvection_vectors(g)]


def quad_action(g: int) -> FiniteAction:
    """Permutations of refinement indices induced by every transvection.

    ``mu . t_v = mu + (mu(v) + 1) lambda(-, v)``, so each generator either fixes
    a refinement or flips the bits of ``lambda(-, v)``, which are ``v`` with
    each ``(e_i, f_i)`` bit pair exchanged.
    """
    n = 1 << (2 * g)
    pts = np.arange(n, dtype=np.int64)
    even = sum(1 << (2 * i) for i in range(g))
    gens = np.empty((n - 1, n), dtype=np.int64)
    for row, v in enumerate(transvection_vectors(g)):
        flip = ((v & even) << 1) | ((v >> 1) & even)
        self_pair = bin(v & (v >> 1) & even).count("1") & 1
        mu_v = (np.bitwise_count(pts & v) + self_pair) & 1
        gens[row] = np.where(mu_v == 0, pts ^ flip, pts)
    return FiniteAction(n, gens)


def quad_orbit_census(g: int, max_g: int = DEFAULT_ORBIT_MAX_G) -> OrbitDecomposition:
    if g < 1:
        raise ValueError("genus must be at least 1")
    if g > max_g:
        raise ValueError(f"genus {g} exceeds the orbit bound {max_g}")
    return orbits(quad_action(g))


def orbit_arf_values(decomp: OrbitDecomposition, g: int) -> list[set[int]]:
    """Set of Arf invariants seen on each orbit."""
    values = []
    for k in range(decomp.orbit_count):
        values.append({arf(QuadraticRefinement.from_index(g, int(p))) for p in decomp.members(k)})
    return values

