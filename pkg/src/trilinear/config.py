"""Run configuration: one JSON document configuring the whole pipeline.

Validation reports the full field path of the first offending entry, e.g.
"mux.n_ac_inputs: expected a positive integer".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import ConfigError
from .metrics import FidelityModel
from .protocol import PhaseConfig, ReadoutFixture
from .router import Durations
from .scheduler import MuxConfig
from .topology import GridSpec, TrilinearLayout

SCHEMA_VERSION = 1


def _expect_mapping(doc, path: str) -> dict:
    if doc is None:
        return {}
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: expected an object")
    return doc


def _get_int(doc: dict, key: str, default: int, path: str, minimum: int = 1) -> int:
    val = doc.get(key, default)
    if isinstance(val, bool) or not isinstance(val, int):
        raise ConfigError(f"{path}.{key}: expected an integer, got {val!r}")
    if val < minimum:
        raise ConfigError(f"{path}.{key}: must be >= {minimum}, got {val}")
    return val


def _get_float(doc: dict, key: str, default: float, path: str,
               minimum: Optional[float] = None, maximum: Optional[float] = None) -> float:
    val = doc.get(key, default)
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise ConfigError(f"{path}.{key}: expected a number, got {val!r}")
    val = float(val)
    if minimum is not None and val < minimum:
        raise ConfigError(f"{path}.{key}: must be >= {minimum}, got {val}")
    if maximum is not None and val > maximum:
        raise ConfigError(f"{path}.{key}: must be <= {maximum}, got {val}")
    return val


def _get_bool(doc: dict, key: str, default: bool, path: str) -> bool:
    val = doc.get(key, default)
    if not isinstance(val, bool):
        raise ConfigError(f"{path}.{key}: expected true/false, got {val!r}")
    return val


@dataclass(frozen=True)
class RunConfig:
    grid: GridSpec = field(default_factory=lambda: GridSpec(8, 8))
    pitch_nm: float = 100.0
    loop: bool = False
    m_rows: int = 1
    mux: MuxConfig = field(default_factory=MuxConfig)
    fidelity: FidelityModel = field(default_factory=FidelityModel)
    durations: Durations = field(default_factory=Durations)
    hop_phase_magnet: float = 0.0
    hop_phase_bare: float = 0.0
    set_spacing: Optional[int] = None
    seed: int = 0

    def layout(self) -> TrilinearLayout:
        return TrilinearLayout(grid=self.grid, pitch_nm=self.pitch_nm,
                               loop=self.loop, m_rows=self.m_rows)

    def phases(self) -> PhaseConfig:
        return PhaseConfig(hop_phase_magnet=self.hop_phase_magnet,
                           hop_phase_bare=self.hop_phase_bare)

    def fixture(self, layout: TrilinearLayout) -> ReadoutFixture:
        return ReadoutFixture.from_spacing(layout, self.set_spacing)


def config_from_json(doc: dict) -> RunConfig:
    doc = _expect_mapping(doc, "config")
    grid_doc = _expect_mapping(doc.get("grid"), "grid")
    grid = GridSpec(
        rows=_get_int(grid_doc, "rows", 8, "grid"),
        cols=_get_int(grid_doc, "cols", 8, "grid", minimum=2),
    )

    mux_doc = _expect_mapping(doc.get("mux"), "mux")
    mux = MuxConfig(
        n_ac_inputs=_get_int(mux_doc, "n_ac_inputs", 8, "mux"),
        n_dc_inputs=_get_int(mux_doc, "n_dc_inputs", 1, "mux"),
        gates_per_dc_input=_get_int(mux_doc, "gates_per_dc_input", 256, "mux"),
        dc_refresh_interval_s=_get_float(mux_doc, "dc_refresh_interval_s", 1.0, "mux", minimum=1e-12),
        dc_hold_time_s=_get_float(mux_doc, "dc_hold_time_s", 3600.0, "mux", minimum=1e-12),
        readout_coexists_with_shuttle=_get_bool(
            mux_doc, "readout_coexists_with_shuttle", True, "mux"),
    )

    fid_doc = _expect_mapping(doc.get("fidelity"), "fidelity")
    fidelity = FidelityModel(
        f_step=_get_float(fid_doc, "f_step", 1.0, "fidelity", 0.0, 1.0),
        f_transfer=_get_float(fid_doc, "f_transfer", 1.0, "fidelity", 0.0, 1.0),
        f_1q=_get_float(fid_doc, "f_1q", 1.0, "fidelity", 0.0, 1.0),
        f_2q=_get_float(fid_doc, "f_2q", 1.0, "fidelity", 0.0, 1.0),
        f_readout=_get_float(fid_doc, "f_readout", 1.0, "fidelity", 0.0, 1.0),
    )

    dur_doc = _expect_mapping(doc.get("durations"), "durations")
    durations = Durations(
        horizontal_step=_get_int(dur_doc, "horizontal_step", 1, "durations"),
        vertical_transfer=_get_int(dur_doc, "vertical_transfer", 1, "durations"),
        two_qubit_gate=_get_int(dur_doc, "two_qubit_gate", 2, "durations"),
        single_qubit_pulse=_get_int(dur_doc, "single_qubit_pulse", 4, "durations"),
        readout=_get_int(dur_doc, "readout", 10, "durations"),
        idle=_get_int(dur_doc, "idle", 1, "durations"),
        intra_stack_transfer=_get_int(dur_doc, "intra_stack_transfer", 1, "durations"),
    )

    proto_doc = _expect_mapping(doc.get("protocol"), "protocol")
    set_spacing = proto_doc.get("set_spacing")
    if set_spacing is not None:
        set_spacing = _get_int(proto_doc, "set_spacing", 1, "protocol")

    return RunConfig(
        grid=grid,
        pitch_nm=_get_float(doc, "pitch_nm", 100.0, "config", minimum=1e-9),
        loop=_get_bool(doc, "loop", False, "config"),
        m_rows=_get_int(doc, "m_rows", 1, "config"),
        mux=mux,
        fidelity=fidelity,
        durations=durations,
        hop_phase_magnet=_get_float(proto_doc, "hop_phase_magnet", 0.0, "protocol"),
        hop_phase_bare=_get_float(proto_doc, "hop_phase_bare", 0.0, "protocol"),
        set_spacing=set_spacing,
        seed=_get_int(doc, "seed", 0, "config", minimum=0),
    )


def load_config(path: str | Path) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} line {exc.lineno}: {exc.msg}") from exc
    return config_from_json(doc)


def config_to_json(config: RunConfig) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "grid": {"rows": config.grid.rows, "cols": config.grid.cols},
        "pitch_nm": config.pitch_nm,
        "loop": config.loop,
        "m_rows": config.m_rows,
        "mux": {
            "n_ac_inputs": config.mux.n_ac_inputs,
            "n_dc_inputs": config.mux.n_dc_inputs,
            "gates_per_dc_input": config.mux.gates_per_dc_input,
            "dc_refresh_interval_s": config.mux.dc_refresh_interval_s,
            "dc_hold_time_s": config.mux.dc_hold_time_s,
            "readout_coexists_with_shuttle": config.mux.readout_coexists_with_shuttle,
        },
        "fidelity": {
            "f_step": config.fidelity.f_step,
            "f_transfer": config.fidelity.f_transfer,
            "f_1q": config.fidelity.f_1q,
            "f_2q": config.fidelity.f_2q,
            "f_readout": config.fidelity.f_readout,
        },
        "durations": {
            "horizontal_step": config.durations.horizontal_step,
            "vertical_transfer": config.durations.vertical_transfer,
            "two_qubit_gate": config.durations.two_qubit_gate,
            "single_qubit_pulse": config.durations.single_qubit_pulse,
            "readout": config.durations.readout,
            "idle": config.durations.idle,
            "intra_stack_transfer": config.durations.intra_stack_transfer,
        },
        "protocol": {
            "hop_phase_magnet": config.hop_phase_magnet,
            "hop_phase_bare": config.hop_phase_bare,
            **({"set_spacing": config.set_spacing} if config.set_spacing else {}),
        },
        "seed": config.seed,
    }
