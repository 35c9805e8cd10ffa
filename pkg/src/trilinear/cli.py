"""Command-line pipeline: map, route, schedule, simulate, sweep.

Every subcommand reads a JSON run config (--config), writes deterministic
JSON/CSV outputs, and exits non-zero with a machine-readable error JSON on
stderr when a pipeline error occurs (exit 1 for config/input problems,
exit 2 for routing/scheduling errors such as a partitioned array).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import metrics, protocol, router, scheduler, topology
from .config import RunConfig, load_config
from .errors import CircuitError, ConfigError, TrilinearError

SCHEMA_VERSION = 1


def _dump_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _load_json_file(path: str, what: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {what} {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{what} {path} line {exc.lineno}: {exc.msg}") from exc


def _load_defects(path: Optional[str], layout) -> topology.DefectMap:
    if path is None:
        return topology.NO_DEFECTS
    doc = _load_json_file(path, "defects file")
    defects = topology.defects_from_obj(doc.get("defects", doc))
    defects.validate_against(layout)
    return defects


def _parse_cell(text: str) -> tuple[int, int]:
    try:
        r, c = text.split(",")
        return (int(r), int(c))
    except ValueError as exc:
        raise ConfigError(f"bad cell {text!r}, expected 'row,col'") from exc


# ----------------------------------------------------------------------
# Subcommands

def cmd_map(config: RunConfig, args) -> int:
    layout = config.layout()
    defects = _load_defects(args.defects, layout)
    _emit(_dump_json(topology.layout_to_json(layout, defects)), args.out)
    return 0


def cmd_route(config: RunConfig, args) -> int:
    layout = config.layout()
    defects = _load_defects(args.defects, layout)
    q_a, q_b = (_parse_cell(c) for c in args.gate)
    dr = abs(q_a[0] - q_b[0])
    dc = abs(q_a[1] - q_b[1])
    if (dr, dc) in ((1, 0), (0, 1)):
        plan = router.vertical_gate_plan(layout, q_a, q_b, defects, config.durations)
    else:
        plan = router.long_range_plan(layout, q_a, q_b, defects, config.durations)
    _emit(_dump_json(plan.to_json()), args.out)
    return 0


def cmd_schedule(config: RunConfig, args) -> int:
    layout = config.layout()
    defects = _load_defects(args.defects, layout)
    circuit = scheduler.circuit_from_json(_load_json_file(args.circuit, "circuit"))
    schedule = scheduler.compile(circuit, layout, defects, config.mux, config.durations)
    doc = scheduler.schedule_to_json(schedule)
    doc["seed"] = args.seed if args.seed is not None else config.seed
    _emit(_dump_json(doc), args.out)
    summary_path = args.summary
    if summary_path is None and args.out is not None:
        summary_path = str(Path(args.out).with_suffix(".summary.csv"))
    _emit(scheduler.summary_to_csv(schedule), summary_path)
    return 0


def cmd_simulate(config: RunConfig, args) -> int:
    layout = config.layout()
    defects = _load_defects(args.defects, layout)
    circuit = scheduler.circuit_from_json(_load_json_file(args.circuit, "circuit"))
    state = protocol.init_half_filled(layout, defects)
    fixture = config.fixture(layout)
    phases = config.phases()

    events: list[dict] = []
    gates: list[dict] = []
    tick = 0

    def _log_ops(ops, qubit) -> None:
        nonlocal tick
        for op in ops:
            events.append({
                "tick": tick,
                "site": topology.site_to_obj(op.dst),
                "qubit": qubit,
                "event": op.kind.value,
            })
            tick += op.duration_ticks

    def _qubit_for(cell, index):
        site = layout.grid_to_site(cell)
        qubit = state.qubit_at(site)
        if qubit is None:
            raise CircuitError(
                f"op {index}: cell {cell} maps to {site}, which hosts no qubit "
                "in the half-filled scheme (bare or dead dot)"
            )
        return qubit

    for index, cop in enumerate(circuit.ops):
        if isinstance(cop, scheduler.TwoQubit):
            raise CircuitError(
                f"op {index}: two-qubit ops are outside the half-filled "
                "protocol simulator; use the schedule command"
            )
        if isinstance(cop, scheduler.OneQubit):
            qubit = _qubit_for(cop.cell, index)
            ops, new_state = protocol.addressed_single_qubit_gate(
                state, qubit, cop.rotation, phases, defects, config.durations)
            report = protocol.audit_addressed_gate(state, qubit, ops)
            gates.append({
                "op_index": index,
                "cell": list(cop.cell),
                "target": qubit,
                "rotated": sorted(report.rotated),
                "bystanders": sorted(report.bystanders),
                "ok": report.ok,
                "net_phase": new_state.net_phase(qubit),
            })
            _log_ops(ops, qubit)
            state = new_state
        else:
            qubit = _qubit_for(cop.cell, index)
            ops, state = protocol.readout(state, qubit, fixture, defects,
                                          phases, config.durations)
            _log_ops(ops, qubit)

    lines = "".join(json.dumps(e, sort_keys=True) + "\n" for e in events)
    _emit(lines, args.out)
    report_doc = {
        "schema_version": SCHEMA_VERSION,
        "gates": gates,
        "all_ok": all(g["ok"] for g in gates),
        "total_ticks": tick,
    }
    if args.report is not None:
        _emit(_dump_json(report_doc), args.report)
    elif args.out is not None:
        _emit(_dump_json(report_doc),
              str(Path(args.out).with_suffix(".report.json")))
    else:
        sys.stdout.write(_dump_json(report_doc))
    return 0


_VARIANTS = {
    "trilinear": metrics.Variant.TRILINEAR,
    "m_row": metrics.Variant.M_ROW,
    "semi2d": metrics.Variant.SEMI_2D,
}


def cmd_sweep(config: RunConfig, args) -> int:
    try:
        n_list = [int(x) for x in args.n.split(",") if x]
    except ValueError as exc:
        raise ConfigError(f"bad --n list {args.n!r}") from exc
    try:
        variants = [_VARIANTS[v] for v in args.variants.split(",") if v]
    except KeyError as exc:
        raise ConfigError(
            f"unknown variant {exc.args[0]!r}; choices: {sorted(_VARIANTS)}") from exc
    points = metrics.sweep_curve(n_list, variants, config.pitch_nm, args.m)
    if args.format == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "points": [
                {
                    "N": p.n,
                    "variant": p.variant.value,
                    "steps_one_way": p.steps_one_way,
                    "steps_round_trip": p.steps_round_trip,
                    "length_um": p.length_one_way_um,
                    "rounded": p.rounded,
                }
                for p in points
            ],
        }
        _emit(_dump_json(doc), args.out)
    else:
        _emit(metrics.sweep_to_csv(points), args.out)
    return 0


# ----------------------------------------------------------------------
# Entry point

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trilinear",
        description="Map, route, schedule and simulate trilinear dot arrays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, out_required: bool = False) -> None:
        p.add_argument("--config", required=True, help="run config JSON")
        p.add_argument("--out", required=out_required, default=None,
                       help="output path (stdout when omitted)")
        p.add_argument("--seed", type=int, default=None, help="override config seed")
        p.add_argument("--format", choices=("json", "csv"), default="csv",
                       help="tabular output format (sweep only)")

    p_map = sub.add_parser("map", help="write the trilinear layout document")
    common(p_map)
    p_map.add_argument("--defects", default=None, help="defects JSON file")
    p_map.set_defaults(func=cmd_map)

    p_route = sub.add_parser("route", help="plan one two-qubit operation")
    common(p_route)
    p_route.add_argument("--gate", nargs=2, required=True, metavar="R,C",
                         help="the two grid cells, e.g. --gate 0,2 1,2")
    p_route.add_argument("--defects", default=None)
    p_route.set_defaults(func=cmd_route)

    p_sched = sub.add_parser("schedule", help="compile a circuit to a tick schedule")
    common(p_sched)
    p_sched.add_argument("--circuit", required=True, help="circuit JSON file")
    p_sched.add_argument("--defects", default=None)
    p_sched.add_argument("--summary", default=None, help="summary CSV path")
    p_sched.set_defaults(func=cmd_schedule)

    p_sim = sub.add_parser("simulate", help="run the half-filled protocol simulator")
    common(p_sim)
    p_sim.add_argument("--circuit", required=True)
    p_sim.add_argument("--defects", default=None)
    p_sim.add_argument("--report", default=None, help="addressability report path")
    p_sim.set_defaults(func=cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="shuttle-length scaling table")
    common(p_sweep)
    p_sweep.add_argument("--n", required=True, help="comma-separated qubit counts")
    p_sweep.add_argument("--variants", default="trilinear",
                         help="comma-separated: trilinear,m_row,semi2d")
    p_sweep.add_argument("--m", type=int, default=1, help="rows per side for m_row")
    p_sweep.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        return args.func(config, args)
    except ConfigError as exc:
        sys.stderr.write(_dump_json({"error": {"kind": "ConfigError", "message": str(exc)}}))
        return 1
    except TrilinearError as exc:
        sys.stderr.write(_dump_json(
            {"error": {"kind": type(exc).__name__, "message": str(exc)}}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
