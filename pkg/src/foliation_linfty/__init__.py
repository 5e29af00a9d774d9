"""Universal Lie infinity-algebroids of polynomial singular foliations.

Exact computations over Q: free resolutions of modules of vector fields,
the homological vector field Q on the resolution, its brackets, and the
isotropy Lie algebras at points.
"""

from .complex import (
    Resolution,
    compare_resolutions,
    involutivity_structure,
    restrict_to_point,
    verify_complex,
    verify_exactness,
)
from .errors import (
    CertificationFailure,
    DifferentFoliations,
    DimensionMismatch,
    DuplicateName,
    ExactnessFailure,
    FoliationError,
    LengthExceeded,
    NotInImage,
    NotInvolutive,
    ParseError,
    PreconditionError,
    RootNotInKernel,
    SelfCommutatorNotVertical,
)
from .cli import run_pipeline
from .fixtures import FoliationSpec, fixture, gln_adjoint, koszul, load_fixture, sl2, sl2_augmented, vanishing_order
from .groebner import PolyMatrix, build_resolution, groebner_basis, in_module, lift_preimage, normal_form, syzygies
from .holonomy import (
    fiber_cohomology,
    holonomy_degree1_oracle,
    holonomy_graded_lie,
    invariant_polynomials,
    leaf_dimension_profile,
)
from .linfty import (
    Derivation,
    QStructure,
    Section,
    bicomplex_lift,
    build_arity1_seed,
    build_Q0,
    build_universal_q,
    commutator,
    extract_bracket,
    leibniz_bracket,
    verify_jacobi_direct,
)
from .poly import (
    Multivector,
    Poly,
    PolyRing,
    VectorField,
    interior_product,
    lie_bracket,
    parse_poly,
    poly_eval,
    schouten_bracket,
)
from .specfile import parse_foliation, parse_spec

__version__ = "0.1.0"
