"""Numeric tolerances used across the toolkit.

Double-precision spectral error at dimension <= 24 sits well below these.
"""

# Input checks: max |A - A^dagger| entry, max |U U^dagger - I| entry.
HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10

# Postconditions of spectral routines (eigen-reconstruction, unitarity of results).
SPECTRAL_TOL = 1e-9

# Residual HS-norm below which an operator counts as linearly dependent.
DEPENDENCE_TOL = 1e-10

# Product / adjoint closure and span membership of algebra elements.
CLOSURE_TOL = 1e-9

# Joint-eigenspace clustering for minimal projections.
CLUSTER_TOL = 1e-8

# Normalisation of amplitude vectors, traces and probability tables.
NORM_TOL = 1e-10
