"""The cusp y^2 = x^3 against its tangent line, step by step.

Run with ``python3 demos/cusp_walkthrough.py``.
"""

from chiwb import Ideal, blowup_chi, chart, chi, fulton_verify, point_multiplicity, ring, strict_transform
from chiwb.homology import PresentedModule, free_resolution

R = ring("x,y")
cusp, line = Ideal(R, ["y^2 - x^3"]), Ideal(R, ["y"])

report = chi(cusp, line)
print("Tor lengths:", report.tor_lengths, " chi =", report.chi)
print("resolution ranks of A/(cusp):", free_resolution(PresentedModule.from_ideal(cusp)).ranks)
print("multiplicities:", point_multiplicity(cusp), point_multiplicity(line))

# Both curves are tangent to y = 0, so the product 2*1 undercounts.
# Blowing up the origin separates them except at one point of the x-chart.
c = chart(R, 1)
print("x-chart strict transforms:", strict_transform(cusp, c), "and", strict_transform(line, c))
after = blowup_chi(cusp, line, [("x", (0, 0))])
print("chi on the blowup:", [p.to_dict() for p in after.chart_points])

f = fulton_verify(cusp, line, [("x", (0, 0))])
print(f"{f.fulton_lhs} = {f.e_values[0]}*{f.e_values[1]} + {f.total_blowup_chi}")
