"""Exact algebra for counting framings of W_{g,1} up to homotopy and diffeomorphism."""

from .classifier import (
    FramingReport,
    ThetaInput,
    classify_framings,
    classify_theta,
    h1_tables,
    image_of_h,
    rel_point_classification,
    stable_framing_preset,
    table_pi_2n_SO_2n,
    table_S_pi_n_SO_n,
)
from .errors import (
    ActionError,
    FramingCensusError,
    IllDefinedHomomorphism,
    InputFormatError,
    NotAnIsometry,
    UnsupportedCase,
)
from .exactlin import (
    AbGroupPresentation,
    AbHom,
    FinAbGroup,
    IntMatrix,
    coinvariants,
    hom_cokernel,
    presentation_abelianization,
    smith_normal_form,
)
from .forms import EpsSymmetricForm, Isometry, det_spin_class, hyperbolic_form, spinor_norm
from .quad import QuadraticRefinement, act, arf, census

__version__ = "0.1.0"

__all__ = [
    "AbGroupPresentation",
    "AbHom",
    "ActionError",
    "EpsSymmetricForm",
    "FinAbGroup",
    "FramingCensusError",
    "FramingReport",
    "IllDefinedHomomorphism",
    "InputFormatError",
    "IntMatrix",
    "Isometry",
    "NotAnIsometry",
    "QuadraticRefinement",
    "ThetaInput",
    "UnsupportedCase",
    "act",
    "arf",
    "census",
    "classify_framings",
    "classify_theta",
    "coinvariants",
    "det_spin_class",
    "h1_tables",
    "hom_cokernel",
    "hyperbolic_form",
    "image_of_h",
    "presentation_abelianization",
    "rel_point_classification",
    "smith_normal_form",
    "spinor_norm",
    "stable_framing_preset",
    "table_S_pi_n_SO_n",
    "table_pi_2n_SO_2n",
]
