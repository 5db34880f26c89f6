"""Numerical verification of explicit automorphic identities for the full modular group.

Subpackages and modules:
    qexp       exact q-expansions, Hecke operators, eigenforms, Satake parameters
    langlands  local parameters with their L-factors, epsilon factors and conductors
    lfun       completed L-functions evaluated by an approximate functional equation
    surface    special functions and quadrature on the modular surface
    maass      level-one Maass cusp forms by Hejhal's method
    verify     identity checks, reports and the command line interface
"""

__version__ = "0.1.0"
