"""Operator frames on finite-dimensional Hilbert C*-modules.

A numerical toolkit for node-sampled families of adjointable operators
over matrix C*-algebras: frame operators and optimal bounds, direct and
iterative reconstruction, canonical dual families, and perturbation
bound envelopes, all backed by dense complex linear algebra.
"""

__version__ = "0.1.0"

from .algebra import (
    AlgebraDescriptor,
    AlgebraElement,
    abs_element,
    adjoint,
    hermitian_sqrt,
    inverse,
    is_positive,
    loewner_leq,
    multiply,
    operator_norm,
)
from .duals import DualPairReport, canonical_dual, dual_bounds, is_dual_pair
from .exceptions import NoConvergence, NotAFrame, SingularElement, SingularFrameOperator
from .frames import (
    FrameOperatorData,
    FrameReport,
    OperatorFamily,
    analysis,
    below_bounded_check,
    check_frame_inequality,
    classify,
    extremal_vector,
    frame_operator,
    independence_check,
    norm_bounds_estimate,
    optimal_bounds,
    synthesis,
)
from .hilbert_module import (
    L2Family,
    ModuleOperator,
    ModuleVector,
    apply,
    check_norm_domination,
    compose,
    inner_product,
    l2_inner_product,
    left_action,
    op_adjoint,
    op_norm,
    random_operator,
    random_vector,
    scalar_norm,
)
from .perturbation import (
    AdditivePerturbation,
    RelativePerturbation,
    ScalarFamily,
    additive_admissible,
    additive_envelope,
    criterion_sample_vectors,
    perturb_additive,
    relative_criterion_check,
    relative_envelope,
)
from .quadrature import MeasureSpace, QuadratureRule, counting, gauss_legendre, integrate, midpoint
from .reconstruction import ReconstructionResult, reconstruct_direct, reconstruct_neumann
from .scenario import Scenario, ScenarioError, load_scenario, parse_scenario

__all__ = [name for name in dir() if not name.startswith("_")]
