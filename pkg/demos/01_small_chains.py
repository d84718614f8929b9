"""
Two and three levels
====================

The smallest chains already show the whole story: a real spectrum while the
coupling is small, a merger of levels at the horizon, complex pairs beyond.
"""

# %%
import math

import numpy as np

from ptchain import CouplingVector, TwoLevelModel, Variant, build_chain, dispatch, numeric_spectrum
from ptchain import two_level_horizon, two_level_spectrum

# the N=2 chain is [[-1, a], [-a, 1]]
print(build_chain(CouplingVector(2, (0.6,))).dense)

# %%
# Sweep a across the horizon.  The energies are +-sqrt(1 - a^2).
for a in (0.0, 0.6, 0.99, 1.0, 1.2):
    v = dispatch(CouplingVector(2, (a,)))
    e = numeric_spectrum(CouplingVector(2, (a,))).energies
    print(f"a={a:5.2f}  {v.state!s:9}  energies {np.round(e, 6)}")

# %%
# The same two-level block written with explicit diagonal entries.
# A Hermitian version never leaves the real axis.
pt = TwoLevelModel(-1.0, math.sqrt(1 - 0.36), 1.0)
herm = TwoLevelModel(0.0, 1.0, 0.0, Variant.HERMITIAN)
print(two_level_spectrum(pt), two_level_spectrum(herm))
print("b must stay inside", two_level_horizon(-1.0, 1.0))

# %%
# Three levels: an extra zero energy, and the horizon moves out to sqrt(2).
for a in (1.0, math.sqrt(2), 1.5):
    v = dispatch(CouplingVector(3, (a,)))
    print(f"a={a:.6f}  {v.state}  {v.witness or ''}")
