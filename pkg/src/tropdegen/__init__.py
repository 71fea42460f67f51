"""Exact combinatorics of tropical degenerations.

Polyhedral complexes and fans over Q, unimodular refinements, tropical
hypersurfaces, parameterizing complexes of covers, the extreme rows of the
weight spectral sequence, monodromy, and dual graphs of curves. All
arithmetic is in ``int`` and ``fractions.Fraction``.
"""

from .curves import (
    DualGraphCurve,
    betti_bound_check,
    curve_ss,
    cycle_basis,
    gram_matrix,
    length_pairing,
    tropical_jacobian,
    val_j,
)
from .errors import SchemaError, TropDegenError
from .gamma import (
    GammaComplex,
    GammaCover,
    build_gamma,
    functoriality_check,
    gamma_refinement_check,
)
from .homology import ChainComplex, homology, simplicial_chain_complex
from .lattice import lattice_index, lattice_volume, saturation_basis, snf
from .polyhedra import (
    Fan,
    Polyhedron,
    PolyhedralComplex,
    bounded_subcomplex,
    cone,
    cone_over,
    make_complex,
    recession_fan,
    rescale_to_integral,
    slice_fan,
    validate_complex,
)
from .refine import cone_multiplicity, is_unimodular, nc_decomposition, resolve_unimodular, simplicialize
from .spectral import (
    SSPage,
    monodromy_N,
    monodromy_filtration,
    monodromy_power,
    rz_e1_dimensions,
    volume_pairing,
)
from .tropical import ValuedPolynomial, balancing_check, initial_form, tropical_hypersurface

__version__ = "0.1.0"

__all__ = [
    "ChainComplex", "DualGraphCurve", "Fan", "GammaComplex", "GammaCover", "Polyhedron", "PolyhedralComplex",
    "SSPage", "SchemaError", "TropDegenError", "ValuedPolynomial",
    "balancing_check", "betti_bound_check", "bounded_subcomplex", "build_gamma", "cone", "cone_multiplicity",
    "cone_over", "curve_ss", "cycle_basis", "functoriality_check", "gamma_refinement_check", "gram_matrix",
    "homology", "initial_form", "is_unimodular", "lattice_index", "lattice_volume", "length_pairing",
    "make_complex", "monodromy_N", "monodromy_filtration", "monodromy_power", "nc_decomposition",
    "recession_fan", "rescale_to_integral", "resolve_unimodular", "rz_e1_dimensions", "saturation_basis",
    "simplicial_chain_complex", "simplicialize", "slice_fan", "snf", "tropical_hypersurface",
    "tropical_jacobian", "val_j", "validate_complex", "volume_pairing",
]
