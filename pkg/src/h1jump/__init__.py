"""Exact verification of a flat family of surfaces over P^1 whose h^1(O) jumps.

Subpackages by layer: ``poly``/``gcd``/``upoly``/``linalg`` (exact algebra),
``bundle`` (vector bundles on P^1 by transition matrices), ``cohomology`` and
``cox`` (two independent cohomology computations on P(E)), ``smooth``
(elimination certificates) and ``pipeline`` (the family and its report).
"""

from .bundle import (
    ExtClassSpec,
    GlobalSection,
    TransitionBundle,
    global_sections,
    h0,
    lift_section,
    make_extension,
    make_transition_bundle,
    specialize_parameter,
    splitting_type,
)
from .cohomology import SplitBundle, cohomology_PE, h1_closed_form, hypersurface_h
from .cox import cox_cohomology
from .pipeline import FamilyConfig, build_family, find_tau, verify
from .poly import LaurentPoly, MPoly, parse_laurent, parse_poly
from .smooth import Bidegree14Form, LinearFormPair, singular_locus_empty

__version__ = "0.1.0"

__all__ = [
    "Bidegree14Form", "ExtClassSpec", "FamilyConfig", "GlobalSection", "LaurentPoly",
    "LinearFormPair", "MPoly", "SplitBundle", "TransitionBundle", "build_family",
    "cohomology_PE", "cox_cohomology", "find_tau", "global_sections", "h0", "h1_closed_form",
    "hypersurface_h", "lift_section", "make_extension", "make_transition_bundle",
    "parse_laurent", "parse_poly", "singular_locus_empty", "specialize_parameter",
    "splitting_type", "verify",
]
