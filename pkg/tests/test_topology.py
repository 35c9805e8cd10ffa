"""Grid mapping, inverse mapping, and layout serialization."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import trilinear as tl
from trilinear.topology import (
    DefectMap,
    Row,
    SiteCoord,
    layout_from_json,
    layout_to_json,
    site_class,
)

from _oracles import expected_site


def test_2x2_mapping():
    lay = tl.map_to_trilinear(tl.GridSpec(2, 2))
    assert lay.grid_to_site((0, 0)) == SiteCoord(Row.UPPER, 0)
    assert lay.grid_to_site((0, 1)) == SiteCoord(Row.UPPER, 1)
    assert lay.grid_to_site((1, 0)) == SiteCoord(Row.LOWER, 1)
    assert lay.grid_to_site((1, 1)) == SiteCoord(Row.LOWER, 2)


def test_4x4_mapping_values(lay44):
    assert lay44.grid_to_site((1, 2)) == SiteCoord(Row.LOWER, 4)
    assert lay44.grid_to_site((2, 3)) == SiteCoord(Row.UPPER, 7)


def test_4x4_vertical_axis_distance(lay44):
    a = lay44.grid_to_site((0, 2))
    b = lay44.grid_to_site((1, 2))
    assert abs(a.axis - b.axis) == 2 == lay44.grid.cols // 2


def test_site_to_grid_values(lay44):
    assert lay44.site_to_grid(SiteCoord(Row.UPPER, 7)) == (2, 3)
    assert lay44.site_to_grid(SiteCoord(Row.MIDDLE, 3)) is None
    # Lower-row shift overhang is real but unmapped.
    assert lay44.site_to_grid(SiteCoord(Row.LOWER, 0)) is None
    with pytest.raises(tl.InvalidSite):
        lay44.site_to_grid(SiteCoord(Row.UPPER, 99))


def test_round_trip_all_cells_4x4(lay44):
    for cell in lay44.grid.cells():
        assert lay44.site_to_grid(lay44.grid_to_site(cell)) == cell


def test_middle_row_never_mapped(lay44):
    for site in lay44.middle_sites():
        assert lay44.site_to_grid(site) is None


def test_neighbors_2d():
    grid = tl.GridSpec(4, 4)
    assert set(tl.neighbors_2d(grid, (0, 0))) == {(0, 1), (1, 0)}
    assert len(tl.neighbors_2d(grid, (1, 1))) == 4
    row = tl.GridSpec(1, 4)
    assert set(tl.neighbors_2d(row, (0, 2))) == {(0, 1), (0, 3)}


def test_invalid_grid_rejected():
    with pytest.raises(tl.InvalidGrid):
        tl.map_to_trilinear(tl.GridSpec(3, 1))
    with pytest.raises(tl.InvalidGrid):
        tl.GridSpec(0, 4)


grids = st.tuples(st.integers(1, 12), st.integers(2, 12))


@given(dims=grids, loop=st.booleans(), m=st.integers(1, 3))
@settings(max_examples=120, deadline=None)
def test_mapping_is_bijective(dims, loop, m):
    """Every cell maps to a distinct outer site and maps back."""
    rows, cols = dims
    m = min(m, cols)
    lay = tl.map_to_trilinear(tl.GridSpec(rows, cols), loop=loop, m_rows=m)
    seen = {}
    for cell in lay.grid.cells():
        site = lay.grid_to_site(cell)
        assert site.row is not Row.MIDDLE
        assert lay.in_bounds(site)
        assert site not in seen, f"cells {seen[site]} and {cell} collide at {site}"
        seen[site] = cell
        assert lay.site_to_grid(site) == cell


@given(dims=grids, loop=st.booleans(), m=st.integers(1, 3))
@settings(max_examples=80, deadline=None)
def test_mapping_matches_definition(dims, loop, m):
    """Mapping agrees with the formula written out independently."""
    rows, cols = dims
    m = min(m, cols)
    lay = tl.map_to_trilinear(tl.GridSpec(rows, cols), loop=loop, m_rows=m)
    for cell in lay.grid.cells():
        site = lay.grid_to_site(cell)
        assert (site.row.value, site.axis, site.subrow) == expected_site(
            rows, cols, cell, loop, m)


@given(dims=st.tuples(st.integers(2, 12), st.integers(2, 12)))
@settings(max_examples=80, deadline=None)
def test_vertical_distance_law(dims):
    """Vertical neighbors sit floor(C/2) or ceil(C/2) apart by row parity."""
    rows, cols = dims
    lay = tl.map_to_trilinear(tl.GridSpec(rows, cols))
    for r in range(rows - 1):
        for c in range(cols):
            a = lay.grid_to_site((r, c))
            b = lay.grid_to_site((r + 1, c))
            want = cols // 2 if r % 2 == 0 else (cols + 1) // 2
            assert abs(a.axis - b.axis) == want


def test_loop_axis_distance():
    lay = tl.map_to_trilinear(tl.GridSpec(4, 4), loop=True)
    assert lay.length == 8
    assert lay.axis_distance(1, 6) == 3
    assert lay.axis_distance(0, 7) == 1
    flat = tl.map_to_trilinear(tl.GridSpec(4, 4))
    assert flat.axis_distance(1, 6) == 5


def test_m_rows_compresses_axis():
    lay = tl.map_to_trilinear(tl.GridSpec(4, 8), m_rows=2)
    assert lay.block_width == 4
    assert lay.shift == 2
    # Cell (0,5): sub-row 1, offset 1 within block 0.
    assert lay.grid_to_site((0, 5)) == SiteCoord(Row.UPPER, 1, 1)
    # Stacked sub-rows neighbor each other at equal axis.
    assert SiteCoord(Row.UPPER, 1, 1) in lay.site_neighbors(SiteCoord(Row.UPPER, 1, 0))


def test_site_class_alternates():
    assert site_class(SiteCoord(Row.UPPER, 0)) is tl.SiteClass.MAGNET
    assert site_class(SiteCoord(Row.UPPER, 1)) is tl.SiteClass.BARE
    assert site_class(SiteCoord(Row.MIDDLE, 4)) is tl.SiteClass.MAGNET


def test_layout_json_round_trip_with_subrows():
    lay = tl.map_to_trilinear(tl.GridSpec(4, 8), m_rows=2)
    defects = DefectMap.of(sites=[SiteCoord(Row.UPPER, 1, 1)])
    doc = layout_to_json(lay, defects)
    assert doc["defects"]["sites"] == [["U", 1, 1]]
    lay2, defects2 = layout_from_json(doc)
    assert (lay2, defects2) == (lay, defects)


def test_layout_json_round_trip(lay44):
    defects = DefectMap.of(
        sites=[SiteCoord(Row.MIDDLE, 3)],
        barriers=[(SiteCoord(Row.UPPER, 2), SiteCoord(Row.MIDDLE, 2))],
    )
    doc = layout_to_json(lay44, defects)
    assert doc["schema_version"] == 1
    lay2, defects2 = layout_from_json(doc)
    assert lay2 == lay44
    assert defects2 == defects


def test_defect_validation(lay44):
    bad = DefectMap.of(sites=[SiteCoord(Row.UPPER, 99)])
    with pytest.raises(tl.InvalidSite):
        bad.validate_against(lay44)
    diagonal = DefectMap.of(
        barriers=[(SiteCoord(Row.UPPER, 0), SiteCoord(Row.MIDDLE, 1))])
    with pytest.raises(tl.InvalidSite):
        diagonal.validate_against(lay44)
