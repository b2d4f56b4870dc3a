"""Physical constants (CODATA 2018), fixed for reproducibility."""

EPS0 = 8.8541878128e-12  # F/m
HBAR = 1.054571817e-34  # J s
KB = 1.380649e-23  # J/K
PHI0 = 2.067833848e-15  # Wb, h/2e

# exact SI defining values, kept only to cross-check PHI0
PLANCK = 6.62607015e-34
ELEMENTARY_CHARGE = 1.602176634e-19
