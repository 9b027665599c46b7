"""Orbit counts and stabilisers for framings and theta-structures on W_{g,1}.

``W_{g,1}`` is the ``2n``-manifold ``D^{2n} # (S^n x S^n)^{#g}``.  The
homotopy-theoretic inputs (homotopy groups of ``SO(n)``, first homology of
the arithmetic groups) are pinned tables; everything built on them, the
cokernel of ``h`` and the orbit assembly, is computed with :mod:`exactlin`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Union

from .errors import IllDefinedHomomorphism, InputFormatError, UnsupportedCase
from .exactlin import (
    AbHom,
    FinAbGroup,
    IntMatrix,
    compose,
    group_from_json,
    group_to_json,
    hom_cokernel,
    matrix_from_json,
    parse_int,
)

__all__ = [
    "FAMILIES",
    "FiniteAbelianDescriptor",
    "SubgroupDescriptor",
    "GroupName",
    "H1Entry",
    "RelPointResult",
    "FramingReport",
    "ThetaInput",
    "ThetaReport",
    "Note",
    "table_S_pi_n_SO_n",
    "table_pi_2n_SO_2n",
    "h1_tables",
    "h1_table_entry",
    "rel_point_classification",
    "image_of_h",
    "theorem_a_orbits",
    "classify_framings",
    "classify_theta",
    "stable_framing_preset",
    "tautological_theta_input",
    "theta_input_from_json",
]

FAMILIES = ("Sp", "Sp^q", "Sp^a", "O")
Genus = Union[int, float, str]

KAWAZUMI = "Kawazumi, framings of surfaces, Theorem 3.12"
KRECK = "Kreck's extensions for the mapping class group of W_{g,1}, valid for 2n >= 6"
DISC_TRIVIAL = "diffeomorphisms of the disc act trivially on framings of the disc (derivative map is null for 2n >= 6)"


@dataclass(frozen=True)
class Note:
    fact: str
    citation: str

    def to_json(self) -> dict:
        return {"fact": self.fact, "citation": self.citation}


# homotopy groups ----------------------------------------------------------

@dataclass(frozen=True)
class FiniteAbelianDescriptor:
    """A group together with optional names for its generators."""

    group: FinAbGroup
    basis: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.basis is not None and len(self.basis) != self.group.generator_count:
            raise ValueError(f"basis {self.basis} does not match {self.group}")

    def index_of(self, tag: str) -> int:
        if self.basis is None or tag not in self.basis:
            raise KeyError(f"no generator named {tag!r} in {self}")
        return self.basis.index(tag)

    def __str__(self) -> str:
        if self.basis:
            return f"{self.group} <{', '.join(self.basis)}>"
        return str(self.group)

    def to_json(self) -> dict:
        doc = group_to_json(self.group)
        if self.basis is not None:
            doc["basis"] = list(self.basis)
        return doc


@dataclass(frozen=True)
class SubgroupDescriptor:
    """Subgroup of ``ambient`` generated by the rows of ``generators``."""

    ambient: FiniteAbelianDescriptor
    group: FinAbGroup
    generators: IntMatrix
    label: str

    def inclusion(self) -> AbHom:
        return AbHom(self.group, self.ambient.group, self.generators)

    def is_whole(self) -> bool:
        return self.index() == 1

    def index(self) -> int:
        return hom_cokernel(self.inclusion()).order()

    def cokernel(self) -> FinAbGroup:
        return hom_cokernel(self.inclusion())

    def __str__(self) -> str:
        return self.label


_S_PI_TABLE = {
    0: (2, 2), 1: (2,), 2: (2,), 3: (0,), 4: (2,), 5: (), 6: (2,), 7: (0,),
}


def table_S_pi_n_SO_n(n: int) -> FinAbGroup:
    """Image of ``pi_n(SO(n))`` in ``pi_n(SO(n+1))``, by ``n mod 8``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n in (1, 2, 6):
        return FinAbGroup.trivial()
    return FinAbGroup.from_cyclic(_S_PI_TABLE[n % 8])


STABLE_KERNEL_BASIS = ("k1", "k2", "s")


def table_pi_2n_SO_2n(n: int) -> FiniteAbelianDescriptor:
    """``pi_{2n}(SO(2n))`` by ``n mod 4``.

    For ``n = 0 mod 4`` the generators are named ``k1, k2`` (spanning the
    kernel of stabilisation to ``pi_{2n}(SO)``) and ``s`` (mapping onto it).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n in (1, 3):
        return FiniteAbelianDescriptor(FinAbGroup.trivial())
    r = n % 4
    if r == 0:
        return FiniteAbelianDescriptor(FinAbGroup((2, 2, 2)), STABLE_KERNEL_BASIS)
    if r == 2:
        return FiniteAbelianDescriptor(FinAbGroup((2, 2)))
    return FiniteAbelianDescriptor(FinAbGroup((4,)))


def image_of_h(n: int) -> SubgroupDescriptor:
    """Image of ``h: H_1(G_inf) -> pi_{2n}(SO(2n))``.

    Everything unless ``n = 0 mod 4``, where it is the stable kernel ``<k1, k2>``.
    """
    amb = table_pi_2n_SO_2n(n)
    G = amb.group
    if n % 4 == 0:
        return SubgroupDescriptor(amb, FinAbGroup((2, 2)),
                                  IntMatrix.from_rows([[1, 0, 0], [0, 1, 0]], 3), "span(k1, k2)")
    return SubgroupDescriptor(amb, G, IntMatrix.identity(G.generator_count), "whole group")


# first homology of the arithmetic groups ---------------------------------

@dataclass(frozen=True)
class H1Entry:
    group: FinAbGroup
    note: Optional[Note] = None


def _parse_genus(g: Genus) -> Optional[int]:
    """``None`` stands for the stable range."""
    if isinstance(g, str):
        if g.strip().lower() in ("inf", "infinity", "oo", "∞"):
            return None
        g = parse_int(g)
    if isinstance(g, float):
        if math.isinf(g):
            return None
        raise ValueError(f"genus must be an integer, got {g}")
    if g < 1:
        raise ValueError("genus must be at least 1")
    return g


def h1_table_entry(family: str, g: Genus) -> H1Entry:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    k = _parse_genus(g)
    Z2, Z4, Z12 = FinAbGroup((2,)), FinAbGroup((4,)), FinAbGroup((12,))
    if family == "Sp":
        table = {1: Z12, 2: Z2}
        return H1Entry(table.get(k, FinAbGroup.trivial()))
    if family == "Sp^q":
        table = {1: FinAbGroup((4,), 1), 2: FinAbGroup((2, 4))}
        return H1Entry(table.get(k, Z4))
    if family == "Sp^a":
        if k == 2:
            return H1Entry(Z4, Note("H_1(Sp^a_4(Z)) = Z/4 is taken from a forthcoming calculation",
                                    "Sierra, forthcoming thesis"))
        return H1Entry(Z12 if k == 1 else Z4)
    if k == 2:
        return H1Entry(FinAbGroup((2, 2, 2)))
    return H1Entry(FinAbGroup((2, 2)))


def h1_tables(family: str, g: Genus) -> FinAbGroup:
    """``H_1`` of ``Sp_{2g}``, ``Sp^q_{2g}``, ``Sp^a_{2g}`` or ``O_{g,g}`` over Z; ``g`` may be ``inf``."""
    return h1_table_entry(family, g).group


# group names --------------------------------------------------------------

@dataclass(frozen=True)
class GroupName:
    """``kind`` is a family from :data:`FAMILIES`, ``"Sp^q|Sp^a"`` or a derived descriptor."""

    kind: str
    genus: Optional[int] = None
    base: Optional[GroupName] = None

    DERIVED_KER = "ker(G -> H1(G_inf))"
    DERIVED_EQUAL = "equal to rel-point stabiliser"

    def __str__(self) -> str:
        g = self.genus
        if self.kind == "Sp":
            return f"Sp_{2 * g}(Z)"
        if self.kind in ("Sp^q", "Sp^a"):
            return f"{self.kind}_{2 * g}(Z)"
        if self.kind == "Sp^q|Sp^a":
            return f"Sp^q_{2 * g}(Z) or Sp^a_{2 * g}(Z) (Arf invariant 0 or 1)"
        if self.kind == "O":
            return f"O_{{{g},{g}}}(Z)"
        if self.kind == self.DERIVED_KER:
            G = str(self.base)
            G_inf = GroupName(self.base.kind, None) if self.base else None
            return f"ker({G} -> H1({_stable_name(G_inf)}))"
        if self.kind == self.DERIVED_EQUAL:
            return f"equal to rel-point stabiliser {self.base}"
        return self.kind


def _stable_name(G: Optional[GroupName]) -> str:
    if G is None:
        return "G_inf"
    return {
        "Sp": "Sp_inf(Z)", "Sp^q": "Sp^q_inf(Z)", "Sp^a": "Sp^a_inf(Z)",
        "Sp^q|Sp^a": "Sp^q_inf(Z) or Sp^a_inf(Z)", "O": "O_{inf,inf}(Z)",
    }[G.kind]


# rel point ------------------------------------------------------------------

@dataclass(frozen=True)
class RelPointResult:
    orbit_count: int
    stabiliser: GroupName
    torelli_quotient: Optional[FinAbGroup]
    notes: tuple[Note, ...] = ()


def _check_n(n: int):
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def _unsupported_n1_g1():
    return UnsupportedCase("framings of W_{1,1} with n = 1 are not classified here; it is rather complicated",
                           KAWAZUMI)


def rel_point_classification(n: int, g: int, arf: Optional[int] = None) -> RelPointResult:
    """Framings relative to a point: orbit count, stabiliser in the arithmetic group, Torelli quotient."""
    _check_n(n)
    if g == 0:
        raise UnsupportedCase("g = 0 has no rel-point classification; use classify_framings",
                              DISC_TRIVIAL)
    if g < 0:
        raise ValueError("g must be non-negative")
    if n == 1 and g == 1:
        raise _unsupported_n1_g1()
    exceptional = n in (1, 3, 7)
    if arf is not None:
        if arf not in (0, 1):
            raise ValueError("arf must be 0 or 1")
        if not exceptional:
            raise ValueError(f"the Arf invariant only separates orbits for n in 1, 3, 7, not n = {n}")
    if exceptional:
        kind = "Sp^q|Sp^a" if arf is None else ("Sp^q", "Sp^a")[arf]
    elif n % 2:
        kind = "Sp^q"
    else:
        kind = "O"
    notes = []
    if n >= 3:
        torelli = FinAbGroup.trivial() if n % 2 else FinAbGroup.elementary(2, 2 * g)
    else:
        torelli = None
        notes.append(Note("Torelli quotient is only determined here for 2n >= 6", KRECK))
    return RelPointResult(2 if exceptional else 1, GroupName(kind, g), torelli, tuple(notes))


# rel boundary ----------------------------------------------------------------

def theorem_a_orbits(n: int, g: int) -> int:
    """Closed-form count of framings rel boundary up to diffeomorphism."""
    _check_n(n)
    if g == 0:
        return table_pi_2n_SO_2n(n).group.order()
    if n == 1 and g == 1:
        raise _unsupported_n1_g1()
    return 2 if n in (1, 3, 7) or n % 4 == 0 else 1


@dataclass(frozen=True)
class FramingReport:
    n: int
    g: int
    rel_point_orbits: int
    rel_boundary_orbits: int
    stabiliser_rel_point: Optional[GroupName]
    stabiliser_rel_boundary: Optional[GroupName]
    torelli_quotient: Optional[FinAbGroup]
    notes: tuple[Note, ...] = ()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "g": self.g,
            "rel_point_orbits": self.rel_point_orbits,
            "rel_boundary_orbits": self.rel_boundary_orbits,
            "stabilizer_rel_point": _name_or_none(self.stabiliser_rel_point),
            "stabilizer_rel_boundary": _name_or_none(self.stabiliser_rel_boundary),
            "torelli_quotient": None if self.torelli_quotient is None else group_to_json(self.torelli_quotient),
            "notes": [note.to_json() for note in self.notes],
        }


def _name_or_none(x) -> Optional[str]:
    return None if x is None else str(x)


def classify_framings(n: int, g: int) -> FramingReport:
    """Orbits of framings of ``W_{g,1}`` rel boundary under the mapping class group.

    The count is assembled as ``|coker h| * (rel-point orbits)`` and checked
    against the closed form.
    """
    _check_n(n)
    if not isinstance(g, int) or g < 0:
        raise ValueError(f"g must be a non-negative integer, got {g!r}")
    if g == 0:
        order = table_pi_2n_SO_2n(n).group.order()
        return FramingReport(
            n, 0, 1, order, None, None, None,
            (Note(f"framings of D^{2 * n} rel boundary are pi_{2 * n}(SO({2 * n})) = {table_pi_2n_SO_2n(n).group}",
                  "framings of a disc up to homotopy"),
             Note("the diffeomorphism group of the disc acts trivially", DISC_TRIVIAL)),
        )
    rp = rel_point_classification(n, g)
    img = image_of_h(n)
    assembled = img.index() * rp.orbit_count
    expected = theorem_a_orbits(n, g)
    if assembled != expected:
        raise ArithmeticError(f"assembled orbit count {assembled} disagrees with closed form {expected} at n={n}, g={g}")
    if n in (1, 3):
        rb = GroupName(GroupName.DERIVED_EQUAL, g, rp.stabiliser)
    else:
        rb = GroupName(GroupName.DERIVED_KER, g, rp.stabiliser)
    notes = list(rp.notes)
    if n == 1:
        notes.append(Note("surface case g >= 2 uses the classical spin-structure count", KAWAZUMI))
    if n >= 3:
        notes.append(Note("mapping class group enters through its Kreck extensions, not computed", KRECK))
    return FramingReport(n, g, rp.orbit_count, assembled, rp.stabiliser, rb, rp.torelli_quotient, tuple(notes))


# theta-structures -----------------------------------------------------------

@dataclass(frozen=True)
class ThetaInput:
    """``map_from_pi2nSO2n`` goes from :func:`table_pi_2n_SO_2n` to ``pi_2n_theta``."""

    n: int
    g: int
    pi_2n_theta: FinAbGroup
    map_from_pi2nSO2n: AbHom
    case_flag: Optional[str] = None

    def __post_init__(self):
        _check_n(self.n)
        if self.n < 2:
            raise UnsupportedCase("theta-structures need n >= 2", "n = 1 is excluded from the theta classification")
        if self.g < 1:
            raise ValueError("g must be at least 1")
        if self.n in (3, 7):
            if self.case_flag not in ("A", "B"):
                raise ValueError(f"n = {self.n} needs case_flag 'A' or 'B'")
        elif self.case_flag is not None:
            raise ValueError(f"case_flag only applies to n = 3, 7, not n = {self.n}")
        src = table_pi_2n_SO_2n(self.n).group
        f = self.map_from_pi2nSO2n
        if f.domain != src:
            raise IllDefinedHomomorphism(f"map domain {f.domain} is not pi_{2 * self.n}(SO({2 * self.n})) = {src}")
        if f.codomain != self.pi_2n_theta:
            raise IllDefinedHomomorphism(f"map codomain {f.codomain} is not {self.pi_2n_theta}")


@dataclass(frozen=True)
class ThetaReport:
    n: int
    g: int
    case_flag: Optional[str]
    c_pi: FinAbGroup
    orbit_count: Union[int, str]
    orbit_set: str
    stabiliser: GroupName

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "g": self.g,
            "case": self.case_flag,
            "c_pi_2n_theta": group_to_json(self.c_pi),
            "orbits": self.orbit_count,
            "orbit_set": self.orbit_set,
            "stabilizer": str(self.stabiliser),
        }


def _count(G: FinAbGroup, factor: int = 1) -> Union[int, str]:
    return "infinite" if not G.is_finite() else factor * G.order()


def classify_theta(data: ThetaInput) -> ThetaReport:
    n, g = data.n, data.g
    c_pi = hom_cokernel(compose(data.map_from_pi2nSO2n, image_of_h(n).inclusion()))
    if n not in (3, 7):
        count, orbit_set = _count(c_pi), str(c_pi)
        kind = "Sp^q" if n % 2 else "O"
    elif data.case_flag == "A":
        count, orbit_set = _count(c_pi, 2), str(c_pi.direct_sum(FinAbGroup((2,))))
        kind = "Sp^q|Sp^a"
    else:
        count, orbit_set = _count(data.pi_2n_theta), str(data.pi_2n_theta)
        kind = "Sp"
    return ThetaReport(n, g, data.case_flag, c_pi, count, orbit_set, GroupName(kind, g))


def stable_framing_preset(n: int, g: int) -> ThetaInput:
    """Stable framings: the target is ``pi_{2n}(SO)`` and ``s`` maps onto it."""
    _check_n(n)
    src = table_pi_2n_SO_2n(n).group
    if n % 4 == 0:
        target = FinAbGroup((2,))
        M = IntMatrix.from_rows([[0], [0], [1]], 1)
    else:
        target = FinAbGroup.trivial()
        M = IntMatrix.zeros(src.generator_count, 0)
    return ThetaInput(n, g, target, AbHom(src, target, M), "A" if n in (3, 7) else None)


def tautological_theta_input(n: int, g: int) -> ThetaInput:
    """``Theta^+ = SO(2n)``-like data: identity on ``pi_{2n}(SO(2n))``."""
    src = table_pi_2n_SO_2n(n).group
    return ThetaInput(n, g, src, AbHom.identity(src), "A" if n in (3, 7) else None)


def _map_from_json(doc, n: int, target: FinAbGroup) -> AbHom:
    src = table_pi_2n_SO_2n(n)
    k = target.generator_count
    if isinstance(doc, Mapping):
        if src.basis is None:
            raise InputFormatError(f"named map rows need the (k1, k2, s) basis; n = {n} has none")
        unknown = set(doc) - set(src.basis)
        if unknown:
            raise InputFormatError(f"unknown generator names {sorted(unknown)}")
        rows = [doc.get(tag, [0] * k) for tag in src.basis]
        M = matrix_from_json(rows, k)
    else:
        M = matrix_from_json(doc, k)
    if M.rows != src.group.generator_count:
        raise InputFormatError(f"map needs {src.group.generator_count} rows, one per generator of {src.group}")
    return AbHom(src.group, target, M)


def theta_input_from_json(doc) -> ThetaInput:
    """``{"n", "g", "case"?, "pi_2n_theta": group, "map": rows or {"k1": row, ...}}``."""
    if not isinstance(doc, Mapping):
        raise InputFormatError("theta input must be a JSON object")
    missing = {"n", "g", "pi_2n_theta", "map"} - set(doc)
    if missing:
        raise InputFormatError(f"theta input is missing {sorted(missing)}")
    n, g = parse_int(doc["n"]), parse_int(doc["g"])
    target = group_from_json(doc["pi_2n_theta"])
    case = doc.get("case")
    if case is not None and case not in ("A", "B"):
        raise InputFormatError(f"case must be 'A' or 'B', got {case!r}")
    if n < 1:
        raise InputFormatError("n must be at least 1")
    return ThetaInput(n, g, target, _map_from_json(doc["map"], n, target), case)
