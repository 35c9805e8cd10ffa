"""
Shuttle routing, dead dots, and array reconfiguration
=====================================================

Two-qubit operations between grid rows shuttle one qubit through the empty
Middle row: transfer in, slide to the partner's axis, gate, slide back,
transfer home. Dead dots force detours through the outer rows; a dot that
loses its only way into the Middle row is repurposed as a shuttling
waypoint, sacrificing its qubit but keeping the rest of the array connected.
"""

import trilinear as tl
from trilinear.topology import DefectMap, Row, SiteCoord

layout = tl.map_to_trilinear(tl.GridSpec(8, 8))

# A defect-free vertical gate costs exactly C horizontal steps (half the
# row out, half back).
plan = tl.vertical_gate_plan(layout, (0, 2), (1, 2))
print(f"vertical gate (0,2)-(1,2): {plan.horizontal_steps} horizontal steps, "
      f"{plan.vertical_transfers} transfers, {plan.duration_ticks} ticks")

# Same-row neighbors need no shuttling at all.
direct = tl.vertical_gate_plan(layout, (3, 4), (3, 5))
print(f"same-row gate: {direct.horizontal_steps} steps, ops = "
      f"{[op.kind.value for op in direct.ops]}")

# Long-range pairs stay within 2C (same row) and 3C (neighboring rows).
far = tl.long_range_plan(layout, (2, 0), (2, 7))
diag = tl.long_range_plan(layout, (2, 1), (3, 6))
print(f"row ends (2,0)-(2,7): {far.horizontal_steps} steps (bound 16)")
print(f"off-column (2,1)-(3,6): {diag.horizontal_steps} steps (bound 24)")

# Kill a middle dot: the shortest path detours through an outer row. The
# horizontal count stays put (outer travel replaces middle travel one for
# one) while the full leg distance grows.
dead = DefectMap.of(sites=[SiteCoord(Row.MIDDLE, 4)])
detour = tl.vertical_gate_plan(layout, (0, 2), (1, 2), dead)
print(f"with (M,4) dead: {detour.horizontal_steps} horizontal steps, "
      f"{detour.shuttle_steps} leg moves, {detour.vertical_transfers} transfers")

# The same defect strands the two dots facing it; reconfiguration turns
# them into shuttling waypoints and reports the sacrificed qubits.
recon = tl.reconfigure_for_defects(layout, dead)
print(f"repurposed: {sorted(recon.repurposed_sites, key=lambda s: s.row.value)}, "
      f"sacrificed qubits: {sorted(recon.sacrificed_qubits)}")

# A full three-row cut severs a flat array for good...
cut = DefectMap.of(sites=[SiteCoord(Row.UPPER, 10), SiteCoord(Row.MIDDLE, 10),
                          SiteCoord(Row.LOWER, 10)])
try:
    tl.reconfigure_for_defects(layout, cut)
except tl.Partitioned as exc:
    print("flat array with a full cut:", exc)

# ...but a loop routes around it, and also connects the grid's top and
# bottom rows (tube/donut connectivity).
ring = tl.map_to_trilinear(tl.GridSpec(8, 8), loop=True)
recon_ring = tl.reconfigure_for_defects(ring, cut)
print(f"loop with the same cut: sacrificed {sorted(recon_ring.sacrificed_qubits)}")
wrap = tl.long_range_plan(ring, (0, 3), (7, 3))
print(f"head-tail pair (0,3)-(7,3) via the join: {wrap.horizontal_steps} steps")
