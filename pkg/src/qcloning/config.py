"""Shared numeric tolerances.

Everything in this package is exact rational arithmetic in principle, so the
tolerances only absorb floating-point rounding. Structural invariants
(normalization, Hermiticity, trace) use STRUCT_TOL; comparisons between an
analytic formula and an independent brute-force computation use ORACLE_TOL.
"""

# structural invariants: norms, traces, Hermiticity
STRUCT_TOL = 1e-10

# cross-checks between two independent computation routes
ORACLE_TOL = 1e-9

# rounding noise below this is clamped to zero (probabilities)
CLAMP_TOL = 1e-12
