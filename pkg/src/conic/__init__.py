"""Exact chamber combinatorics of conic modules over toric algebras.

The package computes, from a pointed full-dimensional rational cone,
the chambers of constancy of its conic modules, their cell structures
and chain complexes, resolutions of the graded simples over the
endomorphism ring of the full conic sum, Frobenius root
decompositions, and crepancy verdicts, all in exact arithmetic.
"""

from .cells import (
    Cell,
    cell_census,
    enumerate_cells,
    has_zero_cell,
    incidence_sign,
    is_facet_pair,
    open_conic,
)
from .chambers import (
    ClassList,
    canonical_class,
    chamber_of,
    chamber_witness,
    degree,
    enumerate_classes,
    is_adjacent,
    is_feasible,
    iso_witness,
    leq,
    translation_lattice,
)
from .complexes import (
    AcyclicityReport,
    ConicComplex,
    NccrVerdict,
    ResolutionReport,
    SplicedComplex,
    conic_complex,
    ext_dims,
    global_dimension,
    graded_piece,
    homology_ranks,
    nccr_verdict,
    pdim_simple,
    resolution,
    smith_invariants,
    verify_acyclicity,
)
from .cone import (
    ConeSpec,
    FacetRestriction,
    dual_extreme_rays,
    from_dual_rays,
    from_normals,
    from_primal_rays,
    primal_generators,
    restrict_to_facet,
    validate,
)
from .errors import (
    ConicError,
    InputError,
    InternalInvariantError,
    SupportNotClosedError,
    UnsupportedOperationError,
)
from .frobenius import (
    DModuleReport,
    RootDecomposition,
    decompose_root,
    dmodule_report,
    minimal_complete_q,
)
from .homs import (
    hom_dim_degree_zero,
    hom_is_conic,
    hom_support,
    is_radical_monomial,
    simplicial_hom_form,
    supports_monomial,
)
from .svg import render_svg_2d

__version__ = "0.1.0"

__all__ = [
    "AcyclicityReport",
    "Cell",
    "ClassList",
    "ConeSpec",
    "ConicComplex",
    "ConicError",
    "DModuleReport",
    "FacetRestriction",
    "InputError",
    "InternalInvariantError",
    "NccrVerdict",
    "ResolutionReport",
    "RootDecomposition",
    "SplicedComplex",
    "SupportNotClosedError",
    "UnsupportedOperationError",
    "canonical_class",
    "cell_census",
    "chamber_of",
    "chamber_witness",
    "conic_complex",
    "decompose_root",
    "degree",
    "dmodule_report",
    "dual_extreme_rays",
    "enumerate_cells",
    "enumerate_classes",
    "ext_dims",
    "from_dual_rays",
    "from_normals",
    "from_primal_rays",
    "global_dimension",
    "graded_piece",
    "has_zero_cell",
    "hom_dim_degree_zero",
    "hom_is_conic",
    "hom_support",
    "homology_ranks",
    "incidence_sign",
    "is_adjacent",
    "is_facet_pair",
    "is_feasible",
    "is_radical_monomial",
    "iso_witness",
    "leq",
    "minimal_complete_q",
    "nccr_verdict",
    "open_conic",
    "pdim_simple",
    "primal_generators",
    "render_svg_2d",
    "resolution",
    "restrict_to_facet",
    "simplicial_hom_form",
    "smith_invariants",
    "supports_monomial",
    "translation_lattice",
    "validate",
    "verify_acyclicity",
    "__version__",
]
