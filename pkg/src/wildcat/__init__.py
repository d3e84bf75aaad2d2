"""Exact stability analysis for twisted matrix tuples and Stokes representations.

The package decides polystability and stability of framed points of the wild
representation varieties attached to GL_n wild Riemann surfaces, entirely in
exact cyclotomic arithmetic, and certifies every verdict with checkable
witnesses (radical elements, invariant subspaces, stabilizer dimensions,
Levi blocks).
"""

from .scalars import Scalar
from .linalg import Grading, Matrix, Subspace, kernel, linear_solve, rref, weight_projectors
from .algebra import (
    MatrixAlgebra,
    MeatAxeInconclusive,
    NotSemisimpleError,
    RadicalCertificate,
    invariant_subspace,
    isotypic_decomposition,
    radical_oracle,
    radical_trace,
    spin_algebra,
)
from .twists import Automorphism, TwistedElement, differential_action, embed_doubled, normalize
from .engine import (
    FramedPoint,
    NotPolystable,
    StabilityReport,
    TwistedInput,
    act,
    galois_generators,
    is_polystable,
    is_stable,
    kernel_lie_dim,
    levi_reduction,
    restrict_point,
    stabilizer_lie_dim,
    stabilizer_lie_dim_commutant,
)
from .stokes import (
    Circle,
    IrregularClass,
    RepCandidate,
    Scaffold,
    UnsolvableRelation,
    WildSurface,
    build_scaffold,
    circle_invariants,
    katz_guarantee,
    random_candidate,
    singular_directions,
    stokes_pattern,
    to_framed_point,
    verify_candidate,
)
from .instances import (
    InstanceError,
    InstanceFile,
    parse_instance,
    parse_instance_data,
    render_instance,
)

__version__ = "0.1.0"
