"""
Shuttle length against array size
=================================

The price of the three-row layout is shuttling: a vertical two-qubit
operation travels half a row each way, so the shuttle length grows as the
square root of the qubit count. Stacking M rows per side divides it by M,
and square sub-arrays per side bring it down to the fourth root, a few
microns even at billions of qubits.
"""

import trilinear as tl
from trilinear import metrics as met
from trilinear.metrics import Variant

# The headline curve at 100 nm dot pitch.
print(f"{'N':>12} {'trilinear':>12} {'M=4 rows':>12} {'semi-2D':>12}")
for exp in range(2, 10):
    n = 10 ** exp
    tri = met.shuttle_scaling(n, Variant.TRILINEAR)
    mrow = met.shuttle_scaling(n, Variant.M_ROW, m=4)
    semi = met.shuttle_scaling(n, Variant.SEMI_2D)
    print(f"{n:>12,} {tri.length_one_way_um:>10.2f}um "
          f"{mrow.length_one_way_um:>10.2f}um {semi.length_one_way_um:>10.2f}um")

# Log-log slopes confirm the exponents: 1/2 for the plain layout, 1/4 for
# the sub-array variant.
tri_ns = [4 ** k for k in range(5, 16)]
tri_slope = met.log_log_slope(
    tri_ns, [met.shuttle_scaling(n).length_one_way_um for n in tri_ns])
semi_ns = [2 ** (4 * k) for k in range(3, 8)]
semi_slope = met.log_log_slope(
    semi_ns, [met.shuttle_scaling(n, Variant.SEMI_2D).length_one_way_um for n in semi_ns])
print(f"slopes: trilinear {tri_slope:.3f}, semi-2D {semi_slope:.3f}")

# The same CSV the sweep subcommand writes.
print(met.sweep_to_csv(met.sweep_curve([100, 10_000, 1_000_000])))

# Fidelity budget: per-step survival compounds over a schedule.
from trilinear import scheduler as sch

layout = tl.map_to_trilinear(tl.GridSpec(8, 8))
schedule = sch.compile(sch.Circuit((sch.TwoQubit((0, 0), (1, 0)),)), layout)
model = met.FidelityModel(f_step=0.9999, f_transfer=0.999, f_2q=0.999)
budget = met.fidelity_budget(schedule, model)
print(f"one vertical gate, aggregate survival: {budget.aggregate:.5f}")

# Footprint of a 1024-qubit chip: dot rows plus the via fanout on each side.
chip = tl.map_to_trilinear(tl.GridSpec(32, 32))
fp = met.footprint_estimate(chip, tsv_pitch_um=0.8)
print(f"1024-qubit estimate: {fp.array_length_um:.1f} x {fp.array_width_um:.1f} um "
      f"({fp.fanout_rows_per_side} via rows per side)")
