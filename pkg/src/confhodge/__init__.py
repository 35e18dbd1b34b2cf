"""confhodge: exact cohomology of partial configuration spaces of smooth
compact complex varieties, graded by weight and Hodge type.

Two independent routes compute the same tables — the stratified double
complex of the diagonal arrangement (with Lefschetz duality), and the
E2-model of the Leray spectral sequence for the full arrangement — and a
motivic E-polynomial oracle cross-checks both.  All arithmetic is exact
rational.
"""

__version__ = "0.1.0"

from .algebra import (  # noqa: F401
    AlgebraElement,
    BasisClass,
    HodgeAlgebra,
    diagonal_class,
    merge_factors,
    multiply,
    tensor_multiply,
    validate_algebra,
)
from .arrangement import (  # noqa: F401
    DiagonalGraph,
    cech_sign,
    components,
    enumerate_strata,
    merge_descriptor,
)
from .complexes import (  # noqa: F401
    DoubleComplex,
    build_double_complex,
    relative_cohomology,
    total_cohomology,
    weight_spectral_sequence,
)
from .duality import lefschetz_dual  # noqa: F401
from .kriz import E2Page, build_e2, d2_matrix, e3_table  # noqa: F401
from .linalg import (  # noqa: F401
    KERNEL_IMPL,
    RationalMatrix,
    cohomology_dim,
    kernel_basis,
    rank,
)
from .motivic import (  # noqa: F401
    EPolynomial,
    chromatic_polynomial,
    e_of_algebra,
    expected_ec,
    table_ec,
)
from .tables import HodgeTable  # noqa: F401
