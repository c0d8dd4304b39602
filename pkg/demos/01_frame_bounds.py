#!/usr/bin/env python3
# Frame bounds and classification for node-indexed operator families.
#
# The running example: on the diagonal 2x2 algebra, the rank-1 module,
# and Lebesgue measure on [0, 1], the family T_w = diag(w, sqrt(3) w / 2)
# has frame operator diag(1/3, 1/4), so its optimal bounds are (1/4, 1/3).

import numpy as np

from opframes import classify, frame_operator, optimal_bounds
from opframes.catalog import diagonal_slope_family, identity_family, random_frame_family
from opframes.algebra import AlgebraDescriptor
from opframes.frames import OperatorFamily
from opframes.quadrature import gauss_legendre

family = diagonal_slope_family()
data = frame_operator(family)

print("frame operator element:")
print(np.round(data.element.blocks[0, 0].real, 12))
print("optimal bounds:", optimal_bounds(data))

report = classify(data)
print("classification:", report.classification)
print("spectrum:", [round(v, 12) for v in report.spectrum])
print("condition B/A:", round(report.condition, 6))

# A tight family: equal slopes make both spectral slots coincide.
tight_coeffs = np.zeros((2, 1, 1, 2, 2), dtype=complex)
tight_coeffs[1, 0, 0] = np.eye(2)
tight = OperatorFamily.parametric(gauss_legendre(0, 1, 16), AlgebraDescriptor("diagonal", 2), 1, tight_coeffs)
print("\nequal slopes  ->", classify(frame_operator(tight)).classification,
      "at level", round(classify(frame_operator(tight)).tight_value, 12))

# The constant identity family on [0, 1] resolves the identity exactly.
parseval = identity_family(AlgebraDescriptor("diagonal", 2), 1)
print("constant identity ->", classify(frame_operator(parseval)).classification)

# A rank-deficient slope kills the lower bound: only the upper survives.
bessel_coeffs = np.zeros((2, 1, 1, 2, 2), dtype=complex)
bessel_coeffs[1, 0, 0] = np.diag([1.0, 0.0])
bessel = OperatorFamily.parametric(gauss_legendre(0, 1, 16), AlgebraDescriptor("diagonal", 2), 1, bessel_coeffs)
print("rank-deficient    ->", classify(frame_operator(bessel)).classification)

# Random full-matrix families stay frames thanks to an identity anchor.
random_family = random_frame_family(AlgebraDescriptor("full", 3), 2, gauss_legendre(0, 1, 32), seed=1)
lo, hi = optimal_bounds(frame_operator(random_family))
print(f"\nrandom full family (k=3, n=2): bounds ({lo:.4f}, {hi:.4f})")
