"""
The corner where all levels meet
================================

At g_k^2 = (N - k) k the secular polynomial is s^J.  Nearby, the domain is a
thin spike; the chart g_n = g_n^max sqrt(1 - gamma_n(t)) resolves it.
"""

# %%
from fractions import Fraction

import numpy as np

from ptchain import ansatz_to_couplings, dispatch, eep_point, numeric_spectrum

for N in range(2, 12):
    e = eep_point(N)
    print(N, e.squares, "form:", e.form.raw)

# %%
# The matrix at the corner is nilpotent: every energy is zero.
print(np.round(numeric_spectrum(eep_point(6).g, method="mpmath").energies, 12))

# %%
# Equal G for all couplings moves straight down the spike: the spectrum is
# sqrt(gamma) times the uncoupled one.
t = Fraction(1, 50)
c = ansatz_to_couplings(6, t, (1, 1, 1))
print(dispatch(c).state, np.round(sorted(e.real for e in numeric_spectrum(c).energies), 6))

# %%
# At N = 4 and small t only a narrow band of G2 - G1 stays Inside.
t = Fraction(1, 10000)
for diff in (Fraction(-1, 2), Fraction(-1, 5), 0, Fraction(2, 5), Fraction(1, 2)):
    c = ansatz_to_couplings(4, t, (0, diff))
    print(f"G2 - G1 = {float(diff):+.2f}: {dispatch(c).state}")
