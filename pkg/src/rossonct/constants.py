"""Measured constants, pinned after oracle runs.

Each value was established by a dense-sampling run of the relevant oracle and
is pinned with a small safety margin; the test suite re-measures at the stated
scale and asserts the measurement stays below the pin.
"""

# Thin-triangle additive constant: max |dist(z, [x,y]) - <x|y>_z| measured at
# 0.6935 over 2500 triples in radius-10 balls of H^2_R, H^2_C, H^2_Q, H^3_C
# (geodesic step 0.05).  The observed value matches log 2 = 0.6931, the sharp
# four-point constant of the real hyperbolic plane.
C_RIPS = 0.75

# Norm-asymptotic additive constant: max |  ||n(a,v)||
#  - (0 v 2 log||v|| v log|a|) | measured at 1.386294 (= log 4) on log-spaced
# grids with |a|, ||v|| <= 1e6 at 8 and 16 points per decade.
C44 = 1.3870

# Multiplicative corridor of ||h|| against 0 v log dist_H(e, h) on the
# l1 balls of radius 50 and 100 in theta(Z^2): widths 2.796 and 2.886.
LOGWORD_CORRIDOR_MAX = 3.2

# Additive constant of the minimized subgroup functional against ||h|| on the
# same balls: 1.3831 and 1.3855.
C_R_MAX = 1.45

# Orbit quasi-isometric-embedding corridor width (norm-weighted truncated
# generating set) measured at 4.041 on the geometric balls of radius 4 and 8.
QIE_WIDTH_MAX = 4.5

# Orbit path used by the quasigeodesic / fellow-traveling stability check:
# alternating dilation exp(PATH_DIL_STEP) and unipotent steps of size
# PATH_PAR_STEP, midpoint-centered.  Measured K ratio 1.079 and Hausdorff
# ratio 1.022 between word lengths 64 and 256.
PATH_DIL_STEP = 0.24
PATH_PAR_STEP = 0.05
