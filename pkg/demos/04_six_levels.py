"""
Six levels: ellipsoid, confluence and double mergers
====================================================
"""

# %%
import numpy as np

from ptchain import CouplingVector, confluence_surface_N6, dep_solve_N6, dispatch
from ptchain.geometry import n6_coefficients

# Slice b = 0.  Inside points all satisfy a^2 + 2c^2 < 35 (P > 0).
cs, as_ = np.linspace(0, 4.2, 43), np.linspace(0, 6, 61)
rows = []
for a in as_[::-1][::4]:
    line = ""
    for c in cs[::2]:
        v = dispatch(CouplingVector(6, (c, 0.0, a)))
        line += {"inside": "#", "boundary": "+", "outside": "."}[str(v.state)]
    rows.append(f"a={a:4.1f} {line}")
print("\n".join(rows))

# %%
print("P, Q, R at the origin:", n6_coefficients(0, 0, 0))

# %%
# Two levels meet at 16 x^2 while a third pair sits at 25 y^2.
print(confluence_surface_N6(0.5, 0.5).raw)

# %%
# Double mergers.  Small c gives real pairs on the horizon; for large c the
# pairs that merge are imaginary and the point lies off the real domain.
for c in (1.0, 1.5, 2.2, 4.0, 8.0):
    d = dep_solve_N6(c)
    print(f"c={c:3.1f} b={d.b:.4f} a={d.a:.4f} s_double={d.s_double:+9.3f} "
          f"pattern={d.spectrum.degeneracy_pattern} on_horizon={d.on_horizon}")
