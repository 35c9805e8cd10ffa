"""Shuttle routing on a trilinear layout.

Plans realize one logical operation as a chain of micro-ops. A two-qubit
gate between non-adjacent cells follows a fixed shape: the moving qubit
transfers vertically into the Middle row at its own axis, shuttles along
the lattice to the partner's axis, performs the gate against the parked
partner (vertical adjacency), then retraces the leg and transfers home.

Routing is occupancy-blind: only dead sites, dead barriers and the sites
the caller explicitly blocks constrain a path. Collisions between
concurrently moving qubits are the scheduler's concern.

Step accounting: `horizontal_steps` counts HorizontalStep micro-ops only;
`vertical_transfers` counts row/sub-row transfers; `shuttle_steps` counts
every move inside the two shuttle legs (detours around dead middle sites
add vertical moves there, so it is the honest distance metric).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .errors import InvalidSite, NotNeighbors, Partitioned, Unrecoverable, UnsupportedPair
from .topology import (
    NO_DEFECTS,
    Cell,
    DefectMap,
    Row,
    SiteCoord,
    TrilinearLayout,
    site_from_obj,
    site_to_obj,
)

SCHEMA_VERSION = 1


class MicroOpKind(Enum):
    VERTICAL_TRANSFER = "vertical_transfer"
    HORIZONTAL_STEP = "horizontal_step"
    TWO_QUBIT_GATE = "two_qubit_gate"
    SINGLE_QUBIT_PULSE = "single_qubit_pulse"
    READOUT = "readout"
    IDLE = "idle"


@dataclass(frozen=True)
class Durations:
    """Tick cost per micro-op kind. One tick is one horizontal shuttle step."""

    horizontal_step: int = 1
    vertical_transfer: int = 1
    two_qubit_gate: int = 2
    single_qubit_pulse: int = 4
    readout: int = 10
    idle: int = 1
    # Sub-row hop inside a stacked outer row (m_rows > 1).
    intra_stack_transfer: int = 1


DEFAULT_DURATIONS = Durations()


@dataclass(frozen=True)
class MicroOp:
    """One primitive action.

    `sites` semantics by kind: moves carry (src, dst); a two-qubit gate
    carries (mover site, partner site); pulses/readout/idle carry the one
    site they act on. `freq_class` tags single-qubit pulses with the
    resonance class they drive ("magnet" or "bare"); `param` carries the
    rotation for pulses.
    """

    kind: MicroOpKind
    sites: tuple[SiteCoord, ...]
    duration_ticks: int = 1
    freq_class: Optional[str] = None
    param: object = None

    @property
    def src(self) -> SiteCoord:
        return self.sites[0]

    @property
    def dst(self) -> SiteCoord:
        return self.sites[-1]

    @property
    def is_move(self) -> bool:
        return self.kind in (MicroOpKind.VERTICAL_TRANSFER, MicroOpKind.HORIZONTAL_STEP)

    def to_obj(self) -> dict:
        obj = {
            "kind": self.kind.value,
            "sites": [site_to_obj(s) for s in self.sites],
            "duration_ticks": self.duration_ticks,
        }
        if self.freq_class is not None:
            obj["freq_class"] = self.freq_class
        if self.param is not None:
            obj["param"] = self.param
        return obj

    @classmethod
    def from_obj(cls, obj: dict) -> "MicroOp":
        return cls(
            kind=MicroOpKind(obj["kind"]),
            sites=tuple(site_from_obj(s) for s in obj["sites"]),
            duration_ticks=int(obj.get("duration_ticks", 1)),
            freq_class=obj.get("freq_class"),
            param=obj.get("param"),
        )


def move_op(layout: TrilinearLayout, src: SiteCoord, dst: SiteCoord,
            durations: Durations = DEFAULT_DURATIONS) -> MicroOp:
    """Move micro-op between two adjacent sites, typed by geometry."""
    if src.row == dst.row and src.subrow == dst.subrow:
        return MicroOp(MicroOpKind.HORIZONTAL_STEP, (src, dst), durations.horizontal_step)
    if src.row == dst.row:
        return MicroOp(MicroOpKind.VERTICAL_TRANSFER, (src, dst), durations.intra_stack_transfer)
    return MicroOp(MicroOpKind.VERTICAL_TRANSFER, (src, dst), durations.vertical_transfer)


def move_direction(layout: TrilinearLayout, op: MicroOp) -> str:
    """Movement direction tag: east/west along the axis, up/down across rows."""
    src, dst = op.sites[0], op.sites[-1]
    if op.kind is MicroOpKind.HORIZONTAL_STEP:
        delta = dst.axis - src.axis
        if layout.loop:
            delta = (delta + layout.length) % layout.length
            return "east" if delta == 1 else "west"
        return "east" if delta > 0 else "west"
    return "up" if _height(dst) > _height(src) else "down"


def _height(site: SiteCoord) -> int:
    if site.row is Row.UPPER:
        return 1 + site.subrow
    if site.row is Row.LOWER:
        return -1 - site.subrow
    return 0


# ----------------------------------------------------------------------
# Shortest paths

# BFS expansion preference: Middle-row travel first, then lower axis.
_BFS_RANK = {Row.MIDDLE: 0, Row.UPPER: 1, Row.LOWER: 2}


def _bfs_key(site: SiteCoord) -> tuple[int, int, int]:
    return (_BFS_RANK[site.row], site.axis, site.subrow)


def usable(layout: TrilinearLayout, site: SiteCoord, defects: DefectMap,
           blocked: frozenset[SiteCoord] = frozenset()) -> bool:
    return layout.in_bounds(site) and not defects.is_dead(site) and site not in blocked


def shortest_shuttle_path(
    layout: TrilinearLayout,
    src: SiteCoord,
    dst: SiteCoord,
    defects: DefectMap = NO_DEFECTS,
    blocked: Iterable[SiteCoord] = (),
) -> list[SiteCoord]:
    """Minimum-step site path from src to dst over usable sites.

    Deterministic: ties prefer Middle-row travel, then the lower axis
    index. Raises Partitioned when no path exists.
    """
    blocked = frozenset(blocked)
    for end in (src, dst):
        if not layout.in_bounds(end):
            raise InvalidSite(f"path endpoint {end} outside layout")
        if defects.is_dead(end) or end in blocked:
            raise Partitioned(f"path endpoint {end} is unusable")
    if src == dst:
        return [src]
    parent: dict[SiteCoord, SiteCoord] = {src: src}
    queue = deque([src])
    while queue:
        cur = queue.popleft()
        for nb in sorted(layout.site_neighbors(cur), key=_bfs_key):
            if nb in parent or not usable(layout, nb, defects, blocked):
                continue
            if defects.barrier_dead(cur, nb):
                continue
            parent[nb] = cur
            if nb == dst:
                path = [dst]
                while path[-1] != src:
                    path.append(parent[path[-1]])
                path.reverse()
                return path
            queue.append(nb)
    raise Partitioned(f"no shuttle path from {src} to {dst}")


# ----------------------------------------------------------------------
# Plans

@dataclass(frozen=True)
class ShuttlePlan:
    """Micro-op chain realizing one logical operation for one moving qubit."""

    qubit: Cell
    ops: tuple[MicroOp, ...]
    horizontal_steps: int
    vertical_transfers: int
    shuttle_steps: int
    one_way: bool = False

    @property
    def duration_ticks(self) -> int:
        return sum(op.duration_ticks for op in self.ops)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "qubit": list(self.qubit),
            "ops": [op.to_obj() for op in self.ops],
            "horizontal_steps": self.horizontal_steps,
            "vertical_transfers": self.vertical_transfers,
            "shuttle_steps": self.shuttle_steps,
            "one_way": self.one_way,
            "duration_ticks": self.duration_ticks,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ShuttlePlan":
        return cls(
            qubit=tuple(doc["qubit"]),
            ops=tuple(MicroOp.from_obj(o) for o in doc["ops"]),
            horizontal_steps=int(doc["horizontal_steps"]),
            vertical_transfers=int(doc["vertical_transfers"]),
            shuttle_steps=int(doc["shuttle_steps"]),
            one_way=bool(doc.get("one_way", False)),
        )


def _counts(ops: Iterable[MicroOp]) -> tuple[int, int]:
    h = sum(1 for op in ops if op.kind is MicroOpKind.HORIZONTAL_STEP)
    v = sum(1 for op in ops if op.kind is MicroOpKind.VERTICAL_TRANSFER)
    return h, v


def _path_ops(layout: TrilinearLayout, path: list[SiteCoord],
              durations: Durations) -> list[MicroOp]:
    return [move_op(layout, a, b, durations) for a, b in zip(path, path[1:])]


def _stack_descent(layout: TrilinearLayout, outer: SiteCoord) -> list[SiteCoord]:
    """Column of sites from an outer dot down its sub-row stack into Middle."""
    sites = [SiteCoord(outer.row, outer.axis, s) for s in range(outer.subrow, -1, -1)]
    sites.append(SiteCoord(Row.MIDDLE, outer.axis, 0))
    return sites


def _check_column(layout: TrilinearLayout, column: list[SiteCoord], defects: DefectMap,
                  blocked: frozenset[SiteCoord], skip_first: bool) -> None:
    for i, site in enumerate(column):
        if i == 0 and skip_first:
            continue
        if not usable(layout, site, defects, blocked):
            raise Partitioned(f"vertical access through {site} is unusable")
    for a, b in zip(column, column[1:]):
        if defects.barrier_dead(a, b):
            raise Partitioned(f"vertical barrier {a}-{b} is dead")


def gate_shuttle_plan(
    layout: TrilinearLayout,
    mover: Cell,
    partner: Cell,
    defects: DefectMap = NO_DEFECTS,
    durations: Durations = DEFAULT_DURATIONS,
    blocked: Iterable[SiteCoord] = (),
) -> ShuttlePlan:
    """Round-trip plan moving `mover` to gate against the parked `partner`.

    Shape: descend into the Middle row at the mover's own axis, shuttle to
    the partner's axis (detouring around defects), gate against the
    partner from the adjacent site, retrace, ascend home.
    """
    blocked = frozenset(blocked)
    mover_site = layout.grid_to_site(mover)
    partner_site = layout.grid_to_site(partner)
    if defects.is_dead(mover_site) or defects.is_dead(partner_site):
        raise Partitioned(f"gate endpoint site is dead ({mover}, {partner})")

    descent = _stack_descent(layout, mover_site)
    _check_column(layout, descent, defects, blocked | {partner_site}, skip_first=True)
    entry = descent[-1]

    # Gate happens from the partner's inward lattice neighbor; a dead
    # barrier there kills the exchange coupling as well as the transfer.
    ascent_to_partner = _stack_descent(layout, partner_site)
    gate_pos = ascent_to_partner[1]
    if defects.barrier_dead(gate_pos, partner_site):
        raise Partitioned(f"barrier at the gate site {gate_pos}-{partner_site} is dead")

    leg = shortest_shuttle_path(
        layout, entry, gate_pos, defects, blocked | {partner_site}
    )

    out_ops = _path_ops(layout, descent, durations) + _path_ops(layout, leg, durations)
    gate = MicroOp(MicroOpKind.TWO_QUBIT_GATE, (gate_pos, partner_site),
                   durations.two_qubit_gate)
    back_path = list(reversed(leg)) + list(reversed(descent))[1:]
    back_ops = _path_ops(layout, back_path, durations)

    ops = tuple(out_ops + [gate] + back_ops)
    h, v = _counts(ops)
    return ShuttlePlan(
        qubit=mover,
        ops=ops,
        horizontal_steps=h,
        vertical_transfers=v,
        shuttle_steps=2 * (len(leg) - 1),
    )


def direct_gate_plan(layout: TrilinearLayout, a: Cell, b: Cell,
                     durations: Durations = DEFAULT_DURATIONS) -> ShuttlePlan:
    """Zero-shuttle plan for cells whose sites are already lattice-adjacent."""
    sa, sb = layout.grid_to_site(a), layout.grid_to_site(b)
    gate = MicroOp(MicroOpKind.TWO_QUBIT_GATE, (sa, sb), durations.two_qubit_gate)
    return ShuttlePlan(qubit=a, ops=(gate,), horizontal_steps=0,
                       vertical_transfers=0, shuttle_steps=0)


def plan_two_qubit(
    layout: TrilinearLayout,
    q_a: Cell,
    q_b: Cell,
    defects: DefectMap = NO_DEFECTS,
    durations: Durations = DEFAULT_DURATIONS,
    blocked: Iterable[SiteCoord] = (),
) -> ShuttlePlan:
    """Gate plan for any supported pair; tries q_a as mover, then q_b.

    Adjacent cells gate in place unless the barrier between them is dead,
    in which case the gate reroutes through the Middle row like any
    non-adjacent pair.
    """
    sa, sb = layout.grid_to_site(q_a), layout.grid_to_site(q_b)
    if layout.adjacent(sa, sb) and not defects.barrier_dead(sa, sb):
        return direct_gate_plan(layout, q_a, q_b, durations)
    try:
        return gate_shuttle_plan(layout, q_a, q_b, defects, durations, blocked)
    except Partitioned:
        return gate_shuttle_plan(layout, q_b, q_a, defects, durations, blocked)


def vertical_gate_plan(
    layout: TrilinearLayout,
    q_a: Cell,
    q_b: Cell,
    defects: DefectMap = NO_DEFECTS,
    durations: Durations = DEFAULT_DURATIONS,
) -> ShuttlePlan:
    """Two-qubit plan for grid-adjacent cells.

    Vertical neighbors shuttle through the Middle row (half a row block
    out, half back; exactly C horizontal steps on an even-C defect-free
    layout). Same-row neighbors gate in place with no shuttling. Cells
    that are not grid-adjacent raise NotNeighbors.
    """
    for cell in (q_a, q_b):
        if not layout.grid.contains(cell):
            raise NotNeighbors(f"cell {cell} outside grid")
    dr, dc = abs(q_a[0] - q_b[0]), abs(q_a[1] - q_b[1])
    if (dr, dc) not in ((1, 0), (0, 1)):
        raise NotNeighbors(f"cells {q_a} and {q_b} are not grid-adjacent")
    return plan_two_qubit(layout, q_a, q_b, defects, durations)


def rows_compatible(layout: TrilinearLayout, q_a: Cell, q_b: Cell) -> bool:
    """Pair falls in a supported connectivity class (same/neighboring rows)."""
    ra, rb = q_a[0], q_b[0]
    if abs(ra - rb) <= 1:
        return True
    # A loop joins the head and tail grid rows through the wraparound.
    return layout.loop and {ra, rb} == {0, layout.grid.rows - 1}


def long_range_plan(
    layout: TrilinearLayout,
    q_a: Cell,
    q_b: Cell,
    defects: DefectMap = NO_DEFECTS,
    durations: Durations = DEFAULT_DURATIONS,
) -> ShuttlePlan:
    """Beyond-nearest-neighbor plan for same-row or neighboring-row pairs.

    Horizontal steps stay within 2C for same-row pairs (including the two
    opposite row ends) and 3C for neighboring-row pairs. On loop layouts
    the wraparound is used whenever it is shorter, which also connects the
    head and tail grid rows.
    """
    for cell in (q_a, q_b):
        if not layout.grid.contains(cell):
            raise UnsupportedPair(f"cell {cell} outside grid")
    if q_a == q_b:
        raise UnsupportedPair("cells must be distinct")
    if not rows_compatible(layout, q_a, q_b):
        raise UnsupportedPair(
            f"cells {q_a} and {q_b} are neither same-row nor neighboring-row"
        )
    return plan_two_qubit(layout, q_a, q_b, defects, durations)


# ----------------------------------------------------------------------
# Defect reconfiguration

@dataclass(frozen=True)
class Reconfiguration:
    """Outer dots repurposed as shuttling waypoints plus the qubits lost.

    Sacrificed cells are exactly those whose mapped site is dead or
    repurposed; everything else keeps a working vertical access to the
    Middle row.
    """

    repurposed_sites: frozenset[SiteCoord]
    sacrificed_qubits: frozenset[Cell]

    @property
    def empty(self) -> bool:
        return not self.repurposed_sites and not self.sacrificed_qubits


def _reaches_middle(layout: TrilinearLayout, start: SiteCoord, defects: DefectMap,
                    fabric: set[SiteCoord]) -> bool:
    """True if `start` can reach an alive Middle site through free fabric."""
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nb in layout.site_neighbors(cur):
            if nb in seen or defects.is_dead(nb) or defects.barrier_dead(cur, nb):
                continue
            if nb.row is Row.MIDDLE:
                return True
            if nb not in fabric:
                continue
            seen.add(nb)
            queue.append(nb)
    return False


def _alive_components(layout: TrilinearLayout, defects: DefectMap) -> dict[SiteCoord, int]:
    comp: dict[SiteCoord, int] = {}
    next_id = 0
    for site in layout.sites():
        if defects.is_dead(site) or site in comp:
            continue
        comp[site] = next_id
        queue = deque([site])
        while queue:
            cur = queue.popleft()
            for nb in layout.site_neighbors(cur):
                if nb in comp or defects.is_dead(nb) or defects.barrier_dead(cur, nb):
                    continue
                comp[nb] = next_id
                queue.append(nb)
        next_id += 1
    return comp


def reconfigure_for_defects(layout: TrilinearLayout,
                            defects: DefectMap = NO_DEFECTS) -> Reconfiguration:
    """Repurpose outer dots stranded from the Middle row; report the cost.

    An alive outer dot whose every route into the Middle row runs through
    dead sites, dead barriers, or other qubits' dots cannot shuttle, so it
    is converted to a shuttling waypoint and its qubit (if the dot was
    mapped) is sacrificed. Repurposing is computed to a fixpoint since a
    freed dot can restore access for its neighbors. Raises Unrecoverable
    when the defects sever the alive lattice between surviving qubits on
    a non-loop layout.
    """
    defects.validate_against(layout)
    outer = [s for s in layout.outer_sites() if not defects.is_dead(s)]
    repurposed: set[SiteCoord] = set()
    changed = True
    while changed:
        changed = False
        for site in outer:
            if site in repurposed:
                continue
            if not _reaches_middle(layout, site, defects, repurposed):
                repurposed.add(site)
                changed = True

    sacrificed = set()
    for cell in layout.grid.cells():
        site = layout.grid_to_site(cell)
        if defects.is_dead(site) or site in repurposed:
            sacrificed.add(cell)

    # Survivors must all live in one alive-lattice component.
    comp = _alive_components(layout, defects)
    survivor_comps = {
        comp[layout.grid_to_site(cell)]
        for cell in layout.grid.cells()
        if cell not in sacrificed
    }
    if len(survivor_comps) > 1:
        raise Unrecoverable(
            "defects sever the array; surviving qubits span "
            f"{len(survivor_comps)} disconnected components"
        )

    return Reconfiguration(
        repurposed_sites=frozenset(repurposed),
        sacrificed_qubits=frozenset(sacrificed),
    )
