"""
Tracing the boundary along rays
===============================

Bisection from the origin finds where each ray leaves the domain.  The
output is plot-ready CSV.
"""

# %%
import math
import sys

from ptchain import boundary_bisect
from ptchain.scan import ScanConfig, boundary_fields, dumps, run_boundary

print(boundary_bisect(2, (1,)).r, boundary_bisect(3, (1,)).r, math.sqrt(2))

# %%
# The ray through the N = 4 corner exits at |(sqrt 3, 2)| = sqrt 7.
p = boundary_bisect(4, (math.sqrt(3), 2))
print(p.r, math.sqrt(7), "gap diagnostic", p.min_root_gap)

# %%
records = run_boundary(ScanConfig(N=4, rays=16, tol=1e-10))
sys.stdout.write(dumps(records, "csv", boundary_fields(2)))
