#!/usr/bin/env python3
# The canonical dual family {T_w S^-1} and the resolution of the identity.
#
# For T_w = diag(w, sqrt(3) w / 2) the frame operator is diag(1/3, 1/4),
# so the dual picks up the inverse scalings: diag(3 w, 2 sqrt(3) w).
# Against the dual, integral of T_w* (Lambda_w x) rebuilds x exactly.

import numpy as np

from opframes import canonical_dual, dual_bounds, frame_operator, is_dual_pair, optimal_bounds
from opframes.catalog import diagonal_slope_family

family = diagonal_slope_family()
dual = canonical_dual(family)

print("dual family slope coefficients (degree-1 term):")
print(np.round(dual.coefficients[1, 0, 0].real, 12))
print("expected: diag(3, 2 sqrt(3)) =", [3.0, round(float(2 * np.sqrt(3.0)), 12)])

report = is_dual_pair(family, dual)
print(f"\nresolution residual: {report.resolution_residual:.2e}  (dual: {report.is_dual})")

# The dual's bounds are the reciprocals of the primal's, swapped.
print("primal bounds:", optimal_bounds(frame_operator(family)))
print("dual bounds:  ", dual_bounds(family))

# The construction is an involution: the dual of the dual is the family.
back = canonical_dual(dual)
drift = np.max(np.abs(back.coefficients - family.coefficients))
print(f"\ndual of dual drifts from the original by {drift:.2e}")

# A family is generally not its own dual: the residual for (T, T) is
# || diag(1/3, 1/4) - I || = 3/4.
self_pair = is_dual_pair(family, family)
print(f"family against itself: residual {self_pair.resolution_residual:.6f}")
