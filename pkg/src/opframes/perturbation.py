"""Perturbation of operator families and the resulting bound envelopes.

Additive route: {T_w + c_w K} stays a frame whenever the perturbation
energy R = integral of |c_w|^2 ||K||^2 stays below the lower bound A, and
its optimal bounds land inside [(sqrt A - sqrt R)^2, (sqrt B + sqrt R)^2].

Relative route: a comparison family {L_w} inherits frame bounds from
{T_w} whenever the quadratic-closeness hypothesis with positively
confined scale families a_w, b_w and constants alpha, beta < 1/2 holds.
The hypothesis is universally quantified; numerically it is checked on a
finite vector sample and a pass is a sampled verdict, never a proof.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import loewner_leq
from .exceptions import NotAFrame
from .frames import (
    PARAMETRIC,
    OperatorFamily,
    analysis,
    extremal_vector,
    frame_operator,
    optimal_bounds,
)
from .hilbert_module import L2Family, ModuleOperator, l2_inner_product, op_norm, random_vector
from .quadrature import COUNTING, QuadratureRule

_GRID = 1000  # evaluation grid for inf/sup of parametric scale families


class ScalarFamily:
    """A scalar function of the node variable: polynomial or per-node samples."""

    def __init__(self, *, coefficients=None, values=None):
        if (coefficients is None) == (values is None):
            raise ValueError("give exactly one of coefficients or values")
        self.coefficients = (
            None if coefficients is None else np.asarray(coefficients, dtype=np.complex128)
        )
        self.values = None if values is None else np.asarray(values, dtype=np.complex128)

    @classmethod
    def polynomial(cls, coefficients):
        """Coefficients lowest degree first."""
        return cls(coefficients=coefficients)

    @classmethod
    def sampled(cls, values):
        return cls(values=values)

    @classmethod
    def constant(cls, value):
        return cls(coefficients=[value])

    @property
    def form(self):
        return "polynomial" if self.coefficients is not None else "sampled"

    def at_nodes(self, rule: QuadratureRule) -> np.ndarray:
        if self.values is not None:
            if len(self.values) != len(rule):
                raise ValueError(f"need {len(rule)} samples, got {len(self.values)}")
            return self.values
        powers = rule.nodes[:, None] ** np.arange(len(self.coefficients))[None, :]
        return powers @ self.coefficients

    def real_range(self, rule: QuadratureRule) -> tuple[float, float]:
        """(inf, sup) of the real values over the node set or a dense grid.

        Sampled forms range over the rule's nodes; polynomial forms over a
        1000-point grid of the underlying interval (the nodes themselves
        for counting measure).  Rejects values with an imaginary part.
        """
        if self.values is not None or rule.space.kind == COUNTING:
            vals = self.at_nodes(rule)
        else:
            grid = np.linspace(rule.space.a, rule.space.b, _GRID)
            powers = grid[:, None] ** np.arange(len(self.coefficients))[None, :]
            vals = powers @ self.coefficients
        if np.max(np.abs(vals.imag), initial=0.0) > 1e-12 * (1.0 + np.max(np.abs(vals))):
            raise ValueError("scale family must be real-valued")
        return float(np.min(vals.real)), float(np.max(vals.real))


@dataclass(frozen=True)
class AdditivePerturbation:
    """A direction operator K (nonzero) and a scalar coefficient family c_w."""

    operator: ModuleOperator
    coefficient: ScalarFamily

    def __post_init__(self):
        if op_norm(self.operator) == 0.0:
            raise ValueError("perturbation operator must be nonzero")

    def energy(self, rule: QuadratureRule) -> float:
        """R = integral of |c_w|^2 ||K||^2."""
        c = self.coefficient.at_nodes(rule)
        return float(np.dot(rule.weights, np.abs(c) ** 2)) * op_norm(self.operator) ** 2


@dataclass(frozen=True)
class RelativePerturbation:
    """Positively confined scale families a_w, b_w and constants alpha, beta."""

    scale_primal: ScalarFamily           # a_w, multiplies T_w x
    scale_other: ScalarFamily            # b_w, multiplies Lambda_w x
    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 <= self.alpha < 0.5 and 0.0 <= self.beta < 0.5):
            raise ValueError("alpha and beta must lie in [0, 1/2)")

    def confined_ranges(self, rule):
        """((inf a, sup a), (inf b, sup b)), enforcing strict positivity."""
        ra = self.scale_primal.real_range(rule)
        rb = self.scale_other.real_range(rule)
        for name, (lo, hi) in (("a", ra), ("b", rb)):
            if lo <= 0.0 or not np.isfinite(hi):
                raise ValueError(f"scale family {name} must be positively confined")
        return ra, rb


def perturb_additive(family: OperatorFamily, pert: AdditivePerturbation) -> OperatorFamily:
    """The family {T_w + c_w K}; parametric + polynomial inputs stay parametric."""
    if pert.operator.descriptor != family.descriptor or pert.operator.n != family.n:
        raise ValueError("perturbation operator does not match the family shape")
    k_blocks = pert.operator.blocks
    if family.form == PARAMETRIC and pert.coefficient.form == "polynomial":
        c = pert.coefficient.coefficients
        deg = max(family.coefficients.shape[0], len(c))
        coeffs = np.zeros((deg,) + family.coefficients.shape[1:], dtype=np.complex128)
        coeffs[: family.coefficients.shape[0]] = family.coefficients
        for d in range(len(c)):
            coeffs[d] = coeffs[d] + c[d] * k_blocks
        return OperatorFamily.parametric(family.rule, family.descriptor, family.n, coeffs)
    c_nodes = pert.coefficient.at_nodes(family.rule)
    k_flat = pert.operator.flatten()
    flats = family.flats + c_nodes[:, None, None] * k_flat[None, :, :]
    return OperatorFamily.from_flats(family.rule, family.descriptor, family.n, flats)


def additive_admissible(
    family: OperatorFamily, pert: AdditivePerturbation, tol: float = 1e-12
) -> tuple[bool, float, float]:
    """Whether the perturbation energy stays below the lower frame bound.

    Returns (admissible, R, A) with the criterion R < A - tol.  The
    energy criterion is what the bound envelope actually consumes; the
    looser reading integral |c|^2 < A / ||K|| is not used.
    """
    data = frame_operator(family)
    lo, _ = optimal_bounds(data)
    if lo <= tol:
        raise NotAFrame(f"lower frame bound {lo:.3e} below tolerance")
    energy = pert.energy(family.rule)
    return energy < lo - tol, energy, lo


def additive_envelope(lower: float, upper: float, energy: float) -> tuple[float, float]:
    """Predicted bounds [(sqrt A - sqrt R)^2, (sqrt B + sqrt R)^2]; needs R < A."""
    if energy >= lower:
        raise ValueError(f"perturbation energy {energy:.6g} must stay below A = {lower:.6g}")
    if energy < 0.0:
        raise ValueError("perturbation energy cannot be negative")
    return (lower**0.5 - energy**0.5) ** 2, (upper**0.5 + energy**0.5) ** 2


def relative_criterion_check(
    family: OperatorFamily,
    other: OperatorFamily,
    pert: RelativePerturbation,
    xs,
    tol: float = 1e-10,
) -> bool:
    """Sampled check of the quadratic-closeness hypothesis.

    For every x in xs, in the Loewner order:

        integral <a T x - b L x, a T x - b L x>
            <=  alpha * integral <a T x, a T x>  +  beta * integral <b L x, b L x>.
    """
    if family.rule != other.rule:
        raise ValueError("families must share one quadrature rule")
    if family.descriptor != other.descriptor or family.n != other.n:
        raise ValueError("families must share descriptor and rank")
    a = pert.scale_primal.at_nodes(family.rule)
    b = pert.scale_other.at_nodes(family.rule)
    for x in xs:
        t_samples = analysis(family, x).samples
        l_samples = analysis(other, x).samples
        scaled_t = a[:, None, None, None] * t_samples
        scaled_l = b[:, None, None, None] * l_samples
        diff = L2Family(family.rule, family.descriptor, scaled_t - scaled_l)
        left = l2_inner_product(diff, diff)
        ta = L2Family(family.rule, family.descriptor, scaled_t)
        lb = L2Family(family.rule, family.descriptor, scaled_l)
        right = pert.alpha * l2_inner_product(ta, ta) + pert.beta * l2_inner_product(lb, lb)
        if not loewner_leq(left, right, tol):
            return False
    return True


def relative_envelope(
    bounds: tuple[float, float], pert: RelativePerturbation, rule: QuadratureRule
) -> tuple[float, float]:
    """Predicted frame bounds for the comparison family.

    lower = A (1 - 2 alpha) (inf a)^2 / (2 (1 + beta) (sup b)^2)
    upper = B 2 (1 + alpha) (sup a)^2 / ((1 - 2 beta) (inf b)^2)
    """
    lower, upper = bounds
    (inf_a, sup_a), (inf_b, sup_b) = pert.confined_ranges(rule)
    env_lower = lower * (1.0 - 2.0 * pert.alpha) * inf_a**2 / (2.0 * (1.0 + pert.beta) * sup_b**2)
    env_upper = upper * 2.0 * (1.0 + pert.alpha) * sup_a**2 / ((1.0 - 2.0 * pert.beta) * inf_b**2)
    return env_lower, env_upper


def criterion_sample_vectors(
    family: OperatorFamily, other: OperatorFamily, count: int = 200, seed=0
):
    """Sample set for the relative criterion: random unit vectors plus the
    extremal vectors of both frame operators."""
    rng = np.random.default_rng(seed)
    xs = [
        random_vector(family.descriptor, family.n, rng, unit=True) for _ in range(count)
    ]
    for fam in (family, other):
        data = frame_operator(fam)
        xs.append(extremal_vector(data, "min"))
        xs.append(extremal_vector(data, "max"))
    return xs
