"""
Closed-form tests against exact root counting
=============================================

Every verdict from the inequality chains can be rechecked by a Sturm
sequence on the same secular polynomial in exact rationals.
"""

# %%
import random
from fractions import Fraction

from ptchain import CouplingVector, dispatch, oracle_verdict, secular_form, sturm_classify
from ptchain.geometry import eep_squares

c = CouplingVector(8, (1, 1.5, 1, 2))
f = secular_form(c)
print("P..S =", [float(x) for x in f.normalized])

v = dispatch(c)
print(v.state, "margin", v.margin)
for name, margin in v.checks:
    print(f"  {name:28s} {margin:+.3e}")

# %%
# The oracle's certificate: distinct non-negative roots and multiplicities.
print(sturm_classify(f))
print(oracle_verdict(c).state)

# %%
# A small random campaign in the box g_k^2 <= 1.2 (N-k) k.
rng = random.Random(1)
for N in (5, 8, 11):
    tally = {"agree": 0, "band": 0, "disagree": 0}
    for _ in range(500):
        sq = [Fraction(6, 5) * t * Fraction(rng.randint(0, 1000), 1000) for t in eep_squares(N)]
        c = CouplingVector.from_squares(N, sq)
        v = dispatch(c)
        if abs(v.margin) <= 1e-9:
            tally["band"] += 1
        elif v.state is oracle_verdict(c).state:
            tally["agree"] += 1
        else:
            tally["disagree"] += 1
    print(N, tally)
