"""bellhop: Bell-number combinatorics, boson normal ordering, exact EGF
transforms, the free-boson partition function with cutoff regularization,
and the BELL Hopf algebra of set-partition diagrams.
"""

from .combinatorics import (
    DiagramCensus,
    SetPartition,
    bell,
    bell_polynomial,
    diagram_census,
    dobinski_bell,
    dobinski_bell_poly,
    enumerate_set_partitions,
    partition_count,
    stirling2,
)
from .boson import (
    BosonExpression,
    CoherentParam,
    NormalOrderedForm,
    coherent_expectation,
    forgetful_normal_order,
    normal_order,
    parse_expression,
    stirling_via_ordering,
    word_moments,
)
from .egf import EGFSeries, bell_egf, egf_exp, egf_log, egf_mul, v_to_w, w_to_v
from .partition_function import (
    ModelParams,
    QuadratureConfig,
    closed_form_Z,
    combinatorial_Z,
    general_F,
    integrand,
    regularized_Z,
    regularized_series_Z,
    termwise_partial,
)
from .hopf import (
    HopfElement,
    Monomial,
    TensorElement,
    antipode,
    code_diagram,
    coproduct,
    counit,
    parse_element,
    poly_specialize,
    product,
    run_all_checks,
)
from .errors import ExpressionParseError, QuadratureError, ResourceLimitError

__version__ = "0.1.0"
