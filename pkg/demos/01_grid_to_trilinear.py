"""
Folding a 2D qubit grid onto three dot rows
===========================================

A square qubit grid becomes three parallel 1D dot rows: even grid rows go
to the Upper row, odd rows to the Lower row (shifted right by half a row),
and the Middle row stays empty as a shuttling lane.
"""

import json

import trilinear as tl
from trilinear.topology import Row, SiteCoord, layout_to_json

# Build the layout for a 4x4 grid at the default 100 nm dot pitch.
layout = tl.map_to_trilinear(tl.GridSpec(4, 4))
print(f"4x4 grid -> rows of length {layout.length}, shift {layout.shift}")

# Where every cell lands. Cells print as (row, col), sites as (row letter, axis).
for r in range(4):
    print("  ", "  ".join(f"({r},{c})->{layout.grid_to_site((r, c))}" for c in range(4)))

# Vertical grid neighbors end up half a row apart along the axis; that
# distance is what a two-qubit operation has to shuttle.
a = layout.grid_to_site((0, 2))
b = layout.grid_to_site((1, 2))
print(f"vertical neighbors (0,2)-(1,2) sit {abs(a.axis - b.axis)} dots apart")

# The mapping inverts cleanly; middle dots and the lower-row overhang of the
# shift host no qubit.
print("site (U,7) belongs to cell", layout.site_to_grid(SiteCoord(Row.UPPER, 7)))
print("site (M,3) belongs to cell", layout.site_to_grid(SiteCoord(Row.MIDDLE, 3)))
print("site (L,0) belongs to cell", layout.site_to_grid(SiteCoord(Row.LOWER, 0)))

# Closing the array head-to-tail (loop) absorbs the shift overhang: the 4x4
# loop is a clean 3x8 lattice, and axis distances wrap around.
ring = tl.map_to_trilinear(tl.GridSpec(4, 4), loop=True)
print(f"loop variant: length {ring.length}, d(axis 0, axis 7) = {ring.axis_distance(0, 7)}")

# Layouts serialize to a single JSON document (defects ride along).
print(json.dumps(layout_to_json(layout), sort_keys=True))
