"""Finite rank-two reflection groupoids with exact arithmetic.

Submodules:

- ``exact``: sparse integer polynomials, 2x2 matrices, eta and mu
- ``etaseq``: eta-sequences, their moves, symmetries and enumeration
- ``polygon``: triangulations and the bijection with eta-sequences
- ``groupoid``: Cartan schemes, axioms, morphism closure, quotients
- ``roots``: positive roots as F-sequences
- ``cluster``: chord labelings, Ptolemy completion, psi polynomials
"""

from . import cluster, etaseq, exact, groupoid, polygon, roots
from .cluster import (ChordLabeling, complete_sequence, psi_poly, ptolemy_complete, verify_main_theorem,
                      verify_mu_identities, verify_psi_recurrences, z_matrix)
from .errors import GroupoidError
from .etaseq import DihedralElement, canonical_form, enumerate_sequences, validate
from .exact import Mat2, Poly, eta, mu
from .groupoid import (CartanScheme, check_axioms, check_finiteness, end_group, hom_closure, quotient,
                       scheme_from_cvalues, scheme_from_eta)
from .polygon import Triangulation, enumerate_triangulations, psi, psi_inverse
from .reports import CheckReport, ValidityReport
from .roots import roots_from_scheme, validate_F

__version__ = "0.1.0"

__all__ = [
    "CartanScheme", "CheckReport", "ChordLabeling", "DihedralElement", "GroupoidError", "Mat2", "Poly",
    "Triangulation", "ValidityReport", "canonical_form", "check_axioms", "check_finiteness", "cluster",
    "complete_sequence", "end_group", "enumerate_sequences", "enumerate_triangulations", "eta", "etaseq",
    "exact", "groupoid", "hom_closure", "mu", "polygon", "psi", "psi_inverse", "psi_poly",
    "ptolemy_complete", "quotient", "roots", "roots_from_scheme", "scheme_from_cvalues", "scheme_from_eta",
    "validate", "validate_F", "verify_main_theorem", "verify_mu_identities", "verify_psi_recurrences",
    "z_matrix",
]
