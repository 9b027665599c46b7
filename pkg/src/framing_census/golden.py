"""Printed matrices and cited constants, copied verbatim.

Each literal is compared against an independent computation in
:mod:`framing_census.witnesses`; none of them feeds a computation.
"""

from __future__ import annotations

from .exactlin import IntMatrix

# Provenance vocabulary used by reports and ``verify-paper --list``.
PAPER = "PAPER"
DERIVED = "DERIVED"
TRIVIAL = "TRIVIAL"

# S + I written in the basis (e~1, e~2, f~1, f~2) of H(1) + H(1)
S_TILDE = IntMatrix.from_rows([
    [1, 1, -1, -1],
    [-2, 2, 1, -1],
    [2, 0, -1, 0],
    [-2, 1, 1, 0],
])
S_TILDE_BASIS_ORDER = ("e1", "e2", "f1", "f2")

# images of (T, I) and (I, T) in O_{2,2}(Z), basis (e1, f1, e2, f2)
T1 = IntMatrix.from_rows([
    [1, 0, 0, -1],
    [0, 1, 0, 0],
    [0, 1, 1, 0],
    [0, 0, 0, 1],
])
T2 = IntMatrix.from_rows([
    [1, 0, 0, 0],
    [0, 1, 0, 1],
    [-1, 0, 1, 0],
    [0, 0, 0, 1],
])

# e~/f~ vectors in coordinates (e1, f1, e2, f2)
TILDE_BASIS = {
    "e~1": (1, 0, 1, 0),
    "f~1": (1, 1, 1, 0),
    "e~2": (0, -1, 1, 1),
    "f~2": (0, -1, 0, 1),
}

SL2_S = IntMatrix.from_rows([[0, -1], [1, 0]])
SL2_T = IntMatrix.from_rows([[1, 1], [0, 1]])
OMEGA = IntMatrix.from_rows([[0, -1], [1, 0]])

O11_GENERATORS = (
    IntMatrix.from_rows([[-1, 0], [0, -1]]),
    IntMatrix.from_rows([[0, 1], [1, 0]]),
)

# Johnson-Millson abelianisation of S~, value i in {1, -1, i, -i}; cited, not computed.
JOHNSON_MILLSON_S_TILDE = "i"
JOHNSON_MILLSON_S_TILDE_ORDER = 4

H1_SL2 = 12
