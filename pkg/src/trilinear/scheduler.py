"""Tick-level parallel scheduling under occupancy and multiplexing limits.

A logical circuit compiles to a schedule of micro-ops on the site lattice.
One tick equals one horizontal shuttle step; other micro-op durations come
from the Durations config.

Scheduling model (greedy list scheduling, deliberately non-optimal):
  - every logical op expands to a plan while its qubits sit at their home
    sites (plans are round trips, so qubits are home between their ops);
  - ops start in circuit order ("strict start order"), each as early as
    all of the following hold: the op heads every participant's program
    order, its corridor (every site the plan touches, plus the parked
    partner) is disjoint from active corridors and idle qubits' homes,
    and the per-tick distinct-waveform budget is respected over the op's
    whole span.
The corridor reservation makes the loop deadlock-free and keeps movers
from ever colliding; the independent validator re-derives all rules from
the schedule alone.

Waveform accounting: all conveyor movement in one direction shares one set
of four phased signals no matter how many qubits ride it; movement in the
opposite direction needs its own set. Gates, drives and readout each add
one class.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .errors import CircuitError, MuxInfeasible, UnsupportedPair
from .router import (
    DEFAULT_DURATIONS,
    Durations,
    MicroOp,
    MicroOpKind,
    move_direction,
    plan_two_qubit,
    reconfigure_for_defects,
)
from .topology import (
    NO_DEFECTS,
    Cell,
    DefectMap,
    SiteCoord,
    TrilinearLayout,
    site_class,
    site_key,
    site_to_obj,
)

SCHEMA_VERSION = 1


class WaveformClass(Enum):
    SHUTTLE_PHASE_1 = "shuttle_phase_1"
    SHUTTLE_PHASE_2 = "shuttle_phase_2"
    SHUTTLE_PHASE_3 = "shuttle_phase_3"
    SHUTTLE_PHASE_4 = "shuttle_phase_4"
    ONE_QUBIT_DRIVE = "one_qubit_drive"
    TWO_QUBIT_PULSE = "two_qubit_pulse"
    READOUT_PULSE = "readout_pulse"
    COMPENSATION = "compensation"


SHUTTLE_PHASES = (
    WaveformClass.SHUTTLE_PHASE_1,
    WaveformClass.SHUTTLE_PHASE_2,
    WaveformClass.SHUTTLE_PHASE_3,
    WaveformClass.SHUTTLE_PHASE_4,
)

# A signal is a waveform class plus a direction tag; conveyor phases moving
# the other way are distinct signals, everything else carries an empty tag.
Signal = tuple[str, str]


def signal_str(sig: Signal) -> str:
    cls, direction = sig
    return f"{cls}@{direction}" if direction else cls


def signals_for_op(layout: TrilinearLayout, op: MicroOp) -> frozenset[Signal]:
    """Distinct AC signals a micro-op drives while active."""
    if op.is_move:
        direction = move_direction(layout, op)
        return frozenset((p.value, direction) for p in SHUTTLE_PHASES)
    if op.kind is MicroOpKind.TWO_QUBIT_GATE:
        return frozenset({(WaveformClass.TWO_QUBIT_PULSE.value, "")})
    if op.kind is MicroOpKind.SINGLE_QUBIT_PULSE:
        return frozenset({(WaveformClass.ONE_QUBIT_DRIVE.value, "")})
    if op.kind is MicroOpKind.READOUT:
        return frozenset({(WaveformClass.READOUT_PULSE.value, "")})
    return frozenset()


def _is_shuttle_signal(sig: Signal) -> bool:
    return sig[0].startswith("shuttle_phase_")


@dataclass(frozen=True)
class MuxConfig:
    """CryoCMOS control budget.

    AC side: n_ac_inputs distinct waveforms can be fanned out per tick by
    the switch matrix. DC side: each input refreshes one floating gate per
    refresh interval; a gate's sampled bias survives for the hold time.
    """

    n_ac_inputs: int = 8
    n_dc_inputs: int = 1
    gates_per_dc_input: int = 256
    dc_refresh_interval_s: float = 1.0
    dc_hold_time_s: float = 3600.0
    readout_coexists_with_shuttle: bool = True

    def __post_init__(self) -> None:
        if min(self.n_ac_inputs, self.n_dc_inputs, self.gates_per_dc_input) < 1:
            raise CircuitError("mux input counts must be positive")
        if self.dc_refresh_interval_s <= 0:
            raise CircuitError("dc_refresh_interval_s must be positive")
        if self.dc_hold_time_s <= self.dc_refresh_interval_s:
            raise CircuitError("dc_hold_time_s must exceed dc_refresh_interval_s")


DEFAULT_MUX = MuxConfig()


@dataclass(frozen=True)
class DcRefreshReport:
    """Feasibility of serving n_gates floating gates from the DC inputs."""

    n_gates: int
    n_dc_inputs: int
    cycle_time_s: float
    dc_hold_time_s: float
    feasible: bool
    max_gates_per_input: int


def dc_refresh_plan(mux: MuxConfig, n_gates: int) -> DcRefreshReport:
    """Round-robin refresh feasibility: full cycle must beat the hold time."""
    if n_gates < 1:
        raise CircuitError("n_gates must be >= 1")
    cycle = math.ceil(n_gates / mux.n_dc_inputs) * mux.dc_refresh_interval_s
    return DcRefreshReport(
        n_gates=n_gates,
        n_dc_inputs=mux.n_dc_inputs,
        cycle_time_s=cycle,
        dc_hold_time_s=mux.dc_hold_time_s,
        feasible=cycle <= mux.dc_hold_time_s,
        max_gates_per_input=int(mux.dc_hold_time_s // mux.dc_refresh_interval_s),
    )


# ----------------------------------------------------------------------
# Circuits

@dataclass(frozen=True)
class OneQubit:
    cell: Cell
    rotation: object = None


@dataclass(frozen=True)
class TwoQubit:
    cell_a: Cell
    cell_b: Cell


@dataclass(frozen=True)
class Measure:
    cell: Cell


CircuitOp = Union[OneQubit, TwoQubit, Measure]


def op_cells(op: CircuitOp) -> tuple[Cell, ...]:
    if isinstance(op, TwoQubit):
        return (op.cell_a, op.cell_b)
    return (op.cell,)


@dataclass(frozen=True)
class Circuit:
    """Ordered logical ops; dependencies are program order per qubit."""

    ops: tuple[CircuitOp, ...] = ()

    def cells(self) -> list[Cell]:
        seen: dict[Cell, None] = {}
        for op in self.ops:
            for cell in op_cells(op):
                seen.setdefault(cell)
        return list(seen)

    def validate_against(self, layout: TrilinearLayout, defects: DefectMap = NO_DEFECTS,
                         sacrificed: frozenset[Cell] = frozenset()) -> None:
        from .router import rows_compatible

        for i, op in enumerate(self.ops):
            for cell in op_cells(op):
                if not layout.grid.contains(cell):
                    raise CircuitError(f"op {i}: cell {cell} outside grid")
                if cell in sacrificed:
                    raise CircuitError(f"op {i}: cell {cell} is sacrificed to defects")
                if defects.is_dead(layout.grid_to_site(cell)):
                    raise CircuitError(f"op {i}: cell {cell} sits on a dead dot")
            if isinstance(op, TwoQubit):
                if op.cell_a == op.cell_b:
                    raise UnsupportedPair(f"op {i}: two-qubit op needs distinct cells")
                if not rows_compatible(layout, op.cell_a, op.cell_b):
                    raise UnsupportedPair(
                        f"op {i}: pair {op.cell_a}-{op.cell_b} outside supported "
                        "connectivity (same row or neighboring rows)"
                    )


def circuit_from_json(doc) -> Circuit:
    ops_doc = doc["ops"] if isinstance(doc, dict) else doc
    ops: list[CircuitOp] = []
    for i, obj in enumerate(ops_doc):
        kind = obj.get("op")
        cells = [tuple(int(x) for x in c) for c in obj.get("cells", [])]
        if kind == "1q":
            if len(cells) != 1:
                raise CircuitError(f"op {i}: 1q needs exactly one cell")
            ops.append(OneQubit(cells[0], obj.get("param")))
        elif kind == "2q":
            if len(cells) != 2:
                raise CircuitError(f"op {i}: 2q needs exactly two cells")
            ops.append(TwoQubit(cells[0], cells[1]))
        elif kind == "meas":
            if len(cells) != 1:
                raise CircuitError(f"op {i}: meas needs exactly one cell")
            ops.append(Measure(cells[0]))
        else:
            raise CircuitError(f"op {i}: unknown op kind {kind!r}")
    return Circuit(tuple(ops))


def circuit_to_json(circuit: Circuit) -> dict:
    ops = []
    for op in circuit.ops:
        if isinstance(op, OneQubit):
            obj = {"op": "1q", "cells": [list(op.cell)]}
            if op.rotation is not None:
                obj["param"] = op.rotation
        elif isinstance(op, TwoQubit):
            obj = {"op": "2q", "cells": [list(op.cell_a), list(op.cell_b)]}
        else:
            obj = {"op": "meas", "cells": [list(op.cell)]}
        ops.append(obj)
    return {"schema_version": SCHEMA_VERSION, "ops": ops}


# ----------------------------------------------------------------------
# Schedules

@dataclass(frozen=True)
class ScheduledOp:
    qubit: Cell
    op: MicroOp
    start_tick: int
    partner: Optional[Cell] = None
    signals: frozenset[Signal] = frozenset()

    @property
    def end_tick(self) -> int:
        return self.start_tick + self.op.duration_ticks


@dataclass(frozen=True)
class Schedule:
    """Placed micro-ops plus the initial occupancy they started from."""

    ops: tuple[ScheduledOp, ...] = ()
    makespan: int = 0
    initial_positions: tuple[tuple[Cell, SiteCoord], ...] = ()

    @property
    def total_horizontal_steps(self) -> int:
        return sum(1 for s in self.ops if s.op.kind is MicroOpKind.HORIZONTAL_STEP)

    def tick_signal_sets(self) -> list[set[Signal]]:
        per_tick: list[set[Signal]] = [set() for _ in range(self.makespan)]
        for sop in self.ops:
            for t in range(sop.start_tick, sop.end_tick):
                per_tick[t] |= sop.signals
        return per_tick


@dataclass(frozen=True)
class WaveformUsage:
    """Per-tick histogram of driven signals."""

    per_tick: tuple[tuple[Signal, ...], ...]   # multiset per tick, sorted
    distinct_per_tick: tuple[int, ...]

    @property
    def max_distinct(self) -> int:
        return max(self.distinct_per_tick, default=0)


def waveform_usage(schedule: Schedule) -> WaveformUsage:
    """Histogram the signals driven each tick; the max distinct count over
    ticks is the schedule's AC-input requirement."""
    multisets: list[Counter] = [Counter() for _ in range(schedule.makespan)]
    for sop in schedule.ops:
        for t in range(sop.start_tick, sop.end_tick):
            multisets[t].update(sop.signals)
    per_tick = tuple(tuple(sorted(m.elements())) for m in multisets)
    distinct = tuple(len(m) for m in multisets)
    return WaveformUsage(per_tick=per_tick, distinct_per_tick=distinct)


# ----------------------------------------------------------------------
# Compilation

@dataclass
class _Job:
    index: int
    owner: Cell
    participants: tuple[Cell, ...]
    ops: list[MicroOp]
    offsets: list[int]
    total_ticks: int
    corridor: frozenset[SiteCoord]
    signals_by_tick: list[frozenset[Signal]]
    partner: Optional[Cell] = None
    gate_end_offset: Optional[int] = None


def _build_job(index: int, owner: Cell, ops: list[MicroOp], layout: TrilinearLayout,
               participants: tuple[Cell, ...], partner: Optional[Cell],
               partner_home: Optional[SiteCoord]) -> _Job:
    offsets: list[int] = []
    t = 0
    for op in ops:
        offsets.append(t)
        t += op.duration_ticks
    signals_by_tick: list[set[Signal]] = [set() for _ in range(t)]
    gate_end = None
    corridor: set[SiteCoord] = set()
    for op, off in zip(ops, offsets):
        sigs = signals_for_op(layout, op)
        for tick in range(off, off + op.duration_ticks):
            signals_by_tick[tick] |= sigs
        corridor.update(op.sites)
        if op.kind is MicroOpKind.TWO_QUBIT_GATE:
            gate_end = off + op.duration_ticks
    if partner_home is not None:
        corridor.add(partner_home)
    return _Job(
        index=index,
        owner=owner,
        participants=participants,
        ops=ops,
        offsets=offsets,
        total_ticks=t,
        corridor=frozenset(corridor),
        signals_by_tick=[frozenset(s) for s in signals_by_tick],
        partner=partner,
        gate_end_offset=gate_end,
    )


def compile(  # noqa: A001 - mirrors re.compile naming
    circuit: Circuit,
    layout: TrilinearLayout,
    defects: DefectMap = NO_DEFECTS,
    mux: MuxConfig = DEFAULT_MUX,
    durations: Durations = DEFAULT_DURATIONS,
    serialize: bool = False,
) -> Schedule:
    """Greedy list scheduling of a circuit onto the layout.

    Raises Partitioned when a two-qubit op cannot be routed around the
    defects and parked qubits, and MuxInfeasible when a single micro-op
    already needs more distinct waveforms than the AC budget.
    """
    recon = reconfigure_for_defects(layout, defects)
    circuit.validate_against(layout, defects, recon.sacrificed_qubits)

    cells = circuit.cells()
    homes = {cell: layout.grid_to_site(cell) for cell in cells}
    occupied = set(homes.values())

    jobs: list[_Job] = []
    for index, cop in enumerate(circuit.ops):
        if isinstance(cop, OneQubit):
            site = homes[cop.cell]
            mop = MicroOp(MicroOpKind.SINGLE_QUBIT_PULSE, (site,),
                          durations.single_qubit_pulse,
                          freq_class=site_class(site).value, param=cop.rotation)
            jobs.append(_build_job(index, cop.cell, [mop], layout,
                                   (cop.cell,), None, None))
        elif isinstance(cop, Measure):
            site = homes[cop.cell]
            mop = MicroOp(MicroOpKind.READOUT, (site,), durations.readout)
            jobs.append(_build_job(index, cop.cell, [mop], layout,
                                   (cop.cell,), None, None))
        else:
            blocked = occupied - {homes[cop.cell_a], homes[cop.cell_b]}
            plan = plan_two_qubit(layout, cop.cell_a, cop.cell_b, defects,
                                  durations, blocked)
            mover = plan.qubit
            partner = cop.cell_b if mover == cop.cell_a else cop.cell_a
            jobs.append(_build_job(index, mover, list(plan.ops), layout,
                                   (mover, partner), partner, homes[partner]))

    for job in jobs:
        for op in job.ops:
            need = signals_for_op(layout, op)
            if len(need) > mux.n_ac_inputs:
                raise MuxInfeasible(
                    f"micro-op {op.kind.value} needs {len(need)} waveforms, "
                    f"only {mux.n_ac_inputs} AC inputs available"
                )

    queues: dict[Cell, list[int]] = defaultdict(list)
    for job in jobs:
        for cell in job.participants:
            queues[cell].append(job.index)
    heads = {cell: 0 for cell in queues}

    def _ready(job: _Job) -> bool:
        return all(queues[c][heads[c]] == job.index for c in job.participants)

    def _coexistence_ok(sigs: set[Signal]) -> bool:
        if mux.readout_coexists_with_shuttle:
            return True
        has_readout = any(s[0] == WaveformClass.READOUT_PULSE.value for s in sigs)
        return not (has_readout and any(_is_shuttle_signal(s) for s in sigs))

    tick_signals: dict[int, set[Signal]] = defaultdict(set)
    scheduled: list[ScheduledOp] = []
    # Active jobs: index -> (start, partner_release_tick, end_tick)
    active: dict[int, tuple[int, Optional[int], int]] = {}
    active_corridor: set[SiteCoord] = set()
    corridor_refs: Counter = Counter()

    def _admissible(job: _Job, t: int) -> bool:
        if serialize and active:
            return False
        if not _ready(job):
            return False
        parked = {homes[c] for c in cells if c not in job.participants}
        if job.corridor & (active_corridor | parked):
            return False
        for off in range(job.total_ticks):
            new = job.signals_by_tick[off]
            if not new:
                continue
            merged = tick_signals.get(t + off, set()) | new
            if len(merged) > mux.n_ac_inputs or not _coexistence_ok(merged):
                return False
        return True

    def _commit(job: _Job, t: int) -> None:
        for op, off in zip(job.ops, job.offsets):
            partner = job.partner if op.kind is MicroOpKind.TWO_QUBIT_GATE else None
            scheduled.append(ScheduledOp(
                qubit=job.owner, op=op, start_tick=t + off, partner=partner,
                signals=signals_for_op(layout, op),
            ))
        for off, sigs in enumerate(job.signals_by_tick):
            if sigs:
                tick_signals[t + off] |= sigs
        release = t + job.gate_end_offset if job.gate_end_offset is not None else None
        active[job.index] = (t, release, t + job.total_ticks)
        for site in job.corridor:
            corridor_refs[site] += 1
        active_corridor.update(job.corridor)

    def _pop(cell: Cell, index: int) -> None:
        if queues[cell][heads[cell]] == index:
            heads[cell] += 1

    t = 0
    next_unstarted = 0
    while True:
        while next_unstarted < len(jobs) and _admissible(jobs[next_unstarted], t):
            _commit(jobs[next_unstarted], t)
            next_unstarted += 1
        if not active:
            if next_unstarted >= len(jobs):
                break
            raise AssertionError("scheduler stalled with no active work")
        # Advance one tick at a time: waveform conflicts can clear between
        # completion events, and starting every op at its earliest feasible
        # tick keeps the serialized schedule an upper bound on makespan.
        t += 1
        for idx in sorted(active):
            start, rel, end = active[idx]
            job = jobs[idx]
            if rel is not None and rel <= t:
                _pop(job.partner, idx)
                active[idx] = (start, None, end)
            if end <= t:
                _pop(job.owner, idx)
                if job.partner is not None and active[idx][1] is not None:
                    _pop(job.partner, idx)
                for site in job.corridor:
                    corridor_refs[site] -= 1
                    if corridor_refs[site] == 0:
                        active_corridor.discard(site)
                del active[idx]

    makespan = max((s.end_tick for s in scheduled), default=0)
    return Schedule(
        ops=tuple(sorted(scheduled, key=lambda s: (s.start_tick, s.qubit, site_key(s.op.sites[0])))),
        makespan=makespan,
        initial_positions=tuple(sorted(homes.items())),
    )


# ----------------------------------------------------------------------
# Validation (independent replay)

@dataclass(frozen=True)
class Violation:
    kind: str        # occupancy | swap | dead_site | dead_barrier | order | mux | bounds
    tick: int
    message: str


def _hold_segments(sops: list[ScheduledOp], start_site: SiteCoord, horizon: int
                   ) -> tuple[list[tuple[int, int, frozenset[SiteCoord]]], list[str]]:
    """Intervals of held sites for one qubit, plus chain-order problems."""
    problems: list[str] = []
    segs: list[tuple[int, int, frozenset[SiteCoord]]] = []
    cur = start_site
    t = 0
    for sop in sorted(sops, key=lambda s: s.start_tick):
        if sop.start_tick < t:
            problems.append(f"op at tick {sop.start_tick} overlaps the previous op")
        if sop.start_tick > t:
            segs.append((t, sop.start_tick, frozenset({cur})))
        if sop.op.is_move:
            if sop.op.src != cur:
                problems.append(
                    f"move at tick {sop.start_tick} starts at {sop.op.src}, qubit is at {cur}"
                )
            segs.append((sop.start_tick, sop.end_tick, frozenset({sop.op.src, sop.op.dst})))
            cur = sop.op.dst
        else:
            site = sop.op.sites[0]
            if site != cur:
                problems.append(
                    f"{sop.op.kind.value} at tick {sop.start_tick} acts at {site}, qubit is at {cur}"
                )
            segs.append((sop.start_tick, sop.end_tick, frozenset({site})))
        t = max(t, sop.end_tick)
    if t < horizon:
        segs.append((t, horizon, frozenset({cur})))
    return segs, problems


def validate_schedule(
    schedule: Schedule,
    layout: TrilinearLayout,
    defects: DefectMap = NO_DEFECTS,
    mux: MuxConfig = DEFAULT_MUX,
) -> list[Violation]:
    """Replay a schedule and report every rule violation (empty if valid).

    Checks occupancy (one qubit per site per tick), swap-throughs, dead
    site and dead barrier visits, per-qubit chaining/order, site bounds,
    and the per-tick distinct-waveform budget. Signals are recomputed from
    the micro-ops, independent of what the schedule carries.
    """
    violations: list[Violation] = []
    horizon = max(schedule.makespan, max((s.end_tick for s in schedule.ops), default=0))
    start_pos = dict(schedule.initial_positions)

    per_qubit: dict[Cell, list[ScheduledOp]] = defaultdict(list)
    for sop in schedule.ops:
        per_qubit[sop.qubit].append(sop)

    # Bounds and dead-site/barrier checks per op.
    for sop in schedule.ops:
        for site in sop.op.sites:
            if not layout.in_bounds(site):
                violations.append(Violation("bounds", sop.start_tick,
                                            f"site {site} outside layout"))
            elif defects.is_dead(site):
                violations.append(Violation("dead_site", sop.start_tick,
                                            f"op visits dead site {site}"))
        if sop.op.is_move and defects.barrier_dead(sop.op.src, sop.op.dst):
            violations.append(Violation("dead_barrier", sop.start_tick,
                                        f"move crosses dead barrier {sop.op.src}-{sop.op.dst}"))

    # Per-qubit chains and hold intervals.
    site_intervals: list[tuple[SiteCoord, int, int, Cell]] = []
    positions_at: dict[Cell, list[tuple[int, int, frozenset[SiteCoord]]]] = {}
    for cell, sops in per_qubit.items():
        if cell not in start_pos:
            violations.append(Violation("order", sops[0].start_tick,
                                        f"qubit {cell} has ops but no initial position"))
            continue
        segs, problems = _hold_segments(sops, start_pos[cell], horizon)
        positions_at[cell] = segs
        for msg in problems:
            violations.append(Violation("order", 0, f"qubit {cell}: {msg}"))
        for t0, t1, sites in segs:
            for site in sites:
                site_intervals.append((site, t0, t1, cell))
    for cell, site in start_pos.items():
        if cell not in per_qubit:
            site_intervals.append((site, 0, horizon, cell))
            positions_at[cell] = [(0, horizon, frozenset({site}))]

    # Occupancy: two different qubits holding one site at overlapping times.
    by_site: dict[SiteCoord, list[tuple[int, int, Cell]]] = defaultdict(list)
    for site, t0, t1, cell in site_intervals:
        by_site[site].append((t0, t1, cell))
    for site, spans in by_site.items():
        spans.sort()
        for i, (a0, a1, qa) in enumerate(spans):
            for b0, b1, qb in spans[i + 1:]:
                if b0 >= a1:
                    break
                if qa != qb:
                    violations.append(Violation(
                        "occupancy", b0,
                        f"qubits {qa} and {qb} both hold {site} around tick {b0}"))

    # Gate partners must actually sit at the partner site for the gate span.
    for sop in schedule.ops:
        if sop.op.kind is not MicroOpKind.TWO_QUBIT_GATE:
            continue
        partner_site = sop.op.sites[1]
        if sop.partner is None:
            violations.append(Violation("order", sop.start_tick,
                                        "gate op without a partner qubit"))
            continue
        segs = positions_at.get(sop.partner, [])
        covered = any(t0 <= sop.start_tick and sop.end_tick <= t1 and sites == {partner_site}
                      for t0, t1, sites in segs)
        if not covered:
            violations.append(Violation(
                "order", sop.start_tick,
                f"partner {sop.partner} not parked at {partner_site} during gate"))

    # Swap-through: two moves exchanging the same site pair at once.
    moves = [s for s in schedule.ops if s.op.is_move]
    by_pair: dict[frozenset[SiteCoord], list[ScheduledOp]] = defaultdict(list)
    for sop in moves:
        by_pair[frozenset((sop.op.src, sop.op.dst))].append(sop)
    for pair_ops in by_pair.values():
        for i, a in enumerate(pair_ops):
            for b in pair_ops[i + 1:]:
                overlap = a.start_tick < b.end_tick and b.start_tick < a.end_tick
                if overlap and a.op.src == b.op.dst and a.op.dst == b.op.src:
                    violations.append(Violation(
                        "swap", max(a.start_tick, b.start_tick),
                        f"qubits {a.qubit} and {b.qubit} swap through "
                        f"{a.op.src}-{a.op.dst}"))

    # Waveform budget, from recomputed signals; swept over the segments
    # between op boundaries with a running multiset.
    deltas: dict[int, list[tuple[frozenset[Signal], int]]] = defaultdict(list)
    for sop in schedule.ops:
        sigs = signals_for_op(layout, sop.op)
        if sigs:
            deltas[sop.start_tick].append((sigs, 1))
            deltas[sop.end_tick].append((sigs, -1))
    running: Counter = Counter()
    boundaries = sorted(deltas)
    for i, t0 in enumerate(boundaries):
        for sigs, sign in deltas[t0]:
            for sig in sigs:
                running[sig] += sign
        live = {sig for sig, count in running.items() if count > 0}
        if not live:
            continue
        if len(live) > mux.n_ac_inputs:
            violations.append(Violation(
                "mux", t0,
                f"{len(live)} distinct waveforms driven, budget {mux.n_ac_inputs}"))
        if not mux.readout_coexists_with_shuttle:
            has_ro = any(s[0] == WaveformClass.READOUT_PULSE.value for s in live)
            if has_ro and any(_is_shuttle_signal(s) for s in live):
                violations.append(Violation(
                    "mux", t0, "readout pulse shares a tick with shuttling"))

    violations.sort(key=lambda v: (v.tick, v.kind, v.message))
    return violations


# ----------------------------------------------------------------------
# Serialization

def schedule_summary(schedule: Schedule) -> dict:
    return {
        "makespan": schedule.makespan,
        "total_shuttle_steps": schedule.total_horizontal_steps,
        "max_waveform_classes": waveform_usage(schedule).max_distinct,
    }


def summary_to_csv(schedule: Schedule) -> str:
    s = schedule_summary(schedule)
    return ("makespan,total_shuttle_steps,max_waveform_classes\r\n"
            f"{s['makespan']},{s['total_shuttle_steps']},{s['max_waveform_classes']}\r\n")


def schedule_to_json(schedule: Schedule) -> dict:
    ticks: dict[int, list[dict]] = defaultdict(list)
    for sop in schedule.ops:
        entry = {"qubit": list(sop.qubit), **sop.op.to_obj()}
        if sop.partner is not None:
            entry["partner"] = list(sop.partner)
        ticks[sop.start_tick].append(entry)
    per_tick = schedule.tick_signal_sets()
    return {
        "schema_version": SCHEMA_VERSION,
        "makespan": schedule.makespan,
        "initial_positions": [
            {"cell": list(cell), "site": site_to_obj(site)}
            for cell, site in schedule.initial_positions
        ],
        "ticks": [
            {"tick": t, "ops": ticks[t]} for t in sorted(ticks)
        ],
        "waveforms_per_tick": [sorted(signal_str(s) for s in sigs) for sigs in per_tick],
        "summary": schedule_summary(schedule),
    }
