"""reinhardt-lab: exact and numeric analysis of Reinhardt domains.

A Reinhardt domain here is {z in C^n : Q(|z_1|^2, ..., |z_n|^2) < 1} with Q
an exact rational polynomial in the squared moduli.  The library classifies
such domains against a weighted-homogeneous normal form, enumerates their
algebraic (monomial) symmetries, constructs the explicit non-compact
automorphism families the normal form carries, and probes boundary geometry:
Levi form, holomorphic contact order, orbit accumulation sets.
"""

from .polynomials import (
    ModuliPolynomial,
    MonomialMap,
    SpecSyntaxError,
    WeightVector,
    parse_polynomial,
)
from .radicals import Radical
from .domains import (
    BlockStructure,
    BoundednessReport,
    Containment,
    DEFAULT_BAND,
    DomainError,
    DomainSpec,
    RegularityReport,
    boundary_regularity_sample,
    boundary_solve,
    boundedness_certificate,
    coordinate_slice,
    find_interior_point,
    moduli,
    parse_spec,
    sample_boundary,
    sample_interior,
)
from .log_geometry import (
    HyperplaneIncidence,
    LogImageSample,
    ProjectionReport,
    SymmetrySearch,
    enumerate_algebraic_symmetries,
    hyperplane_incidence,
    is_exact_symmetry,
    log_image_sample,
    projection_compactness_check,
)
from .classification import (
    CanonicalForm,
    ClassificationVerdict,
    ModelForm,
    block_moduli_polynomial,
    canonical_form,
    classify,
    detect_block_structure,
    verify_slice_form,
)
from .automorphisms import (
    AccumulationSet,
    InfiniteTypeAutomorphism,
    InvarianceReport,
    MoebiusAutomorphism,
    OrbitReport,
    TorusRotation,
    accumulation_set,
    invariance_check,
    moebius_family,
    orbit,
)
from .boundary_analysis import (
    AnalyticCurve,
    ComplexRational,
    ContactReport,
    LeviReport,
    NumericContactReport,
    TypeProbeReport,
    contact_order,
    contact_order_numeric,
    levi_form,
    type_probe,
)
from .gallery import (
    GALLERY,
    builtin,
    infinite_type_domain,
    nonconvex_model,
    shell_domain,
    two_block_model,
    unbounded_sheet,
    unit_ball,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # polynomials
    "ModuliPolynomial",
    "MonomialMap",
    "WeightVector",
    "SpecSyntaxError",
    "parse_polynomial",
    "Radical",
    # domains
    "BlockStructure",
    "BoundednessReport",
    "Containment",
    "DEFAULT_BAND",
    "DomainError",
    "DomainSpec",
    "RegularityReport",
    "boundary_regularity_sample",
    "boundary_solve",
    "boundedness_certificate",
    "coordinate_slice",
    "find_interior_point",
    "moduli",
    "parse_spec",
    "sample_boundary",
    "sample_interior",
    # log geometry / symmetries
    "HyperplaneIncidence",
    "LogImageSample",
    "ProjectionReport",
    "SymmetrySearch",
    "enumerate_algebraic_symmetries",
    "hyperplane_incidence",
    "is_exact_symmetry",
    "log_image_sample",
    "projection_compactness_check",
    # classification
    "CanonicalForm",
    "ClassificationVerdict",
    "ModelForm",
    "block_moduli_polynomial",
    "canonical_form",
    "classify",
    "detect_block_structure",
    "verify_slice_form",
    # automorphisms
    "AccumulationSet",
    "InfiniteTypeAutomorphism",
    "InvarianceReport",
    "MoebiusAutomorphism",
    "OrbitReport",
    "TorusRotation",
    "accumulation_set",
    "invariance_check",
    "moebius_family",
    "orbit",
    # boundary analysis
    "AnalyticCurve",
    "ComplexRational",
    "ContactReport",
    "LeviReport",
    "NumericContactReport",
    "TypeProbeReport",
    "contact_order",
    "contact_order_numeric",
    "levi_form",
    "type_probe",
    # gallery
    "GALLERY",
    "builtin",
    "infinite_type_domain",
    "nonconvex_model",
    "shell_domain",
    "two_block_model",
    "unbounded_sheet",
    "unit_ball",
]
