"""Matrix-free QAOA statevector simulator.

Cost objectives are boolean-monomial polynomials whose full value
table is precomputed once; circuit layers are a diagonal phase plus an
Rx mixer layer; expectation values use deterministic pairwise-tree
reductions; gradients come from an adjoint two-vector walk that is
linear in circuit depth; training uses a native L-BFGS.
"""

from .adjoint import Gradient, gradient
from .backend import (
    BackendContext,
    RealBuffer,
    StateBuffer,
    create_context,
)
from .circuit import (
    QaoaParams,
    SimHandle,
    create_handle,
    expectation,
    linear_ramp_params,
    simulate,
    statevector,
)
from .costpoly import (
    CostTable,
    Polynomial,
    SpinPolynomial,
    evaluate,
    precompute,
    read_terms,
    spin_to_boolean,
    write_terms,
)
from .errors import ContractViolation, ParseError, ResourceError
from .optimizer import OptimizeConfig, OptimizeResult, minimize, minimize_callback
from .problems import (
    Graph,
    complete_graph,
    cut_value,
    erdos_renyi,
    generate_suite,
    maxcut_polynomial,
    random_regular,
    read_graph,
    write_graph,
)
from .sampling import SampleSet, best_of, draw, histogram, sample

__version__ = "0.1.0"

__all__ = [
    "BackendContext",
    "ContractViolation",
    "CostTable",
    "Gradient",
    "Graph",
    "OptimizeConfig",
    "OptimizeResult",
    "ParseError",
    "Polynomial",
    "QaoaParams",
    "RealBuffer",
    "ResourceError",
    "SampleSet",
    "SimHandle",
    "SpinPolynomial",
    "StateBuffer",
    "best_of",
    "complete_graph",
    "create_context",
    "create_handle",
    "cut_value",
    "draw",
    "erdos_renyi",
    "evaluate",
    "expectation",
    "generate_suite",
    "gradient",
    "histogram",
    "linear_ramp_params",
    "maxcut_polynomial",
    "minimize",
    "minimize_callback",
    "precompute",
    "random_regular",
    "read_graph",
    "read_terms",
    "sample",
    "simulate",
    "spin_to_boolean",
    "statevector",
    "write_graph",
    "write_terms",
    "__version__",
]
