"""Volume preserving maps of the sphere onto an ellipsoid.

In three dimensions G1 depends on the map chosen.  Two are available: the
linear map x -> x / s rescaled onto the sphere, and the latitude-longitude
construction that first matches volume between latitude bands and then
within each band.  The latter usually wins, and the best choice of north
pole depends on the shape.

Run with ``python3 demos/ellipsoid_maps.py``.
"""

from starspec import EllipsoidDomain, LatLongMap, LinearMap, g0, g1
from starspec.reproduce import run_table1

for s in ([1, 1, 2], [1, 2, 2], [1, 2, 3]):
    e = EllipsoidDomain(s, 48)
    line = f"semi-axes {s}: G0 = {g0(e):.5f}   linear {g1(e, LinearMap.for_ellipsoid(s)):.5f}"
    for north in "abc":
        h = LatLongMap(e, north)
        line += f"   {north}: {g1(e, h):.5f} (defect {h.jacobian_defect(e):.0e})"
    print(line)

# Side by side with the reference table, cell by cell.
out = run_table1()
print(f"\n{len(out['rows'])} cells, {len(out['failures'])} outside 1e-4 ({out['seconds']:.1f} s)")
for r in out["rows"]:
    print(f"  {r['semiaxes']} {r['column']:>8}: computed {r['computed']:.5f}  reference {r['reference']:.5f}")
