"""quantcert: exact certificates for quantum mapping-class-group data.

Submodules:
  roots      exact root-of-unity arithmetic, quantum-integer signs,
             twist eigenvalues and their orders
  blocks     color palettes, admissible colorings, block dimensions on
             trivalent graphs
  hermitian  diagonal signs and signature of the invariant Hermitian form
             on the 5-dimensional block
  burau      exact cyclotomic braid-generator matrices and the finite-
             closure probe
  certify    per-level infiniteness certificates (odd and even routes)
  veech      configuration graphs, Perron data, multitwist matrices and
             flat surfaces
  orbits     simple-closed-curve orbit counts and degree-2 cohomology
             bounds
  cli        the quantcert command-line tool
"""

__version__ = "0.1.0"

from . import blocks, burau, certify, hermitian, orbits, roots, veech  # noqa: E402,F401
