"""Brute-force oracles, derived from first principles.

Everything here rebuilds the site lattice and the grid mapping from their
definitions, without touching the package's adjacency or mapping code, so
oracle agreement is a genuine two-route check.
"""

from __future__ import annotations

import networkx as nx

Node = tuple[str, int, int]  # (row char, axis, subrow)


def expected_dims(rows: int, cols: int, loop: bool = False, m_rows: int = 1):
    block = -(-cols // m_rows)
    shift = block // 2
    upper = ((rows + 1) // 2) * block
    lower = (rows // 2) * block
    length = max(upper, lower) if loop else max(upper, lower + shift)
    return block, shift, upper, lower, length


def expected_site(rows: int, cols: int, cell, loop: bool = False, m_rows: int = 1) -> Node:
    """Grid cell -> site, straight from the mapping definition."""
    block, shift, _, _, length = expected_dims(rows, cols, loop, m_rows)
    r, c = cell
    sub, off = divmod(c, block)
    if r % 2 == 0:
        return ("U", (r // 2) * block + off, sub)
    axis = (r // 2) * block + off + shift
    if loop:
        axis %= length
    return ("L", axis, sub)


def site_graph(rows: int, cols: int, loop: bool = False, m_rows: int = 1,
               dead_sites=(), dead_barriers=()) -> nx.Graph:
    """The 3-row site lattice as a networkx graph, minus defects."""
    _, _, _, _, length = expected_dims(rows, cols, loop, m_rows)
    dead = set(dead_sites)
    dead_edges = {frozenset(e) for e in dead_barriers}
    g = nx.Graph()
    for axis in range(length):
        for node in _column(axis, m_rows):
            if node not in dead:
                g.add_node(node)

    def add_edge(a: Node, b: Node) -> None:
        if a in g and b in g and frozenset((a, b)) not in dead_edges:
            g.add_edge(a, b)

    for axis in range(length):
        nxt = (axis + 1) % length if loop else axis + 1
        if nxt < length and nxt != axis:
            add_edge(("M", axis, 0), ("M", nxt, 0))
            for row in ("U", "L"):
                for sub in range(m_rows):
                    add_edge((row, axis, sub), (row, nxt, sub))
        add_edge(("U", axis, 0), ("M", axis, 0))
        add_edge(("M", axis, 0), ("L", axis, 0))
        for row in ("U", "L"):
            for sub in range(m_rows - 1):
                add_edge((row, axis, sub), (row, axis, sub + 1))
    return g


def _column(axis: int, m_rows: int) -> list[Node]:
    nodes = [("M", axis, 0)]
    for row in ("U", "L"):
        for sub in range(m_rows):
            nodes.append((row, axis, sub))
    return nodes


def bfs_distance(g: nx.Graph, a: Node, b: Node):
    """Hop count between two nodes, or None when disconnected."""
    try:
        return nx.shortest_path_length(g, a, b)
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        return None


def as_node(site) -> Node:
    """Package SiteCoord -> oracle node tuple."""
    return (site.row.value, site.axis, site.subrow)
