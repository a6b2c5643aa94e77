#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import math

import pytest

from visarea.algorithms.driver import effective_criticals
from visarea.algorithms.effective import (
    BoundaryWalker,
    EffectiveFlags,
    PipelineMode,
    backward_sweep,
    compute_effective,
    forward_sweep,
    merge_effective,
    start_vertex,
)
from visarea.core.errors import PipelineDiscrepancy
from visarea.core.polygon import (
    CriticalConvention,
    CriticalKind,
    critical_count,
)
from visarea.core.workspace import WorkspaceMeter
from visarea.oracle.corpus import (
    comb,
    notched_square,
    random_corpus,
    spiral,
    two_notch,
    unit_square,
)
from visarea.oracle.reference import visible_critical_indices


def _flagged_indices(polygon, flags):
    return sorted(i for i, _ in effective_criticals(polygon, flags))


def _fresh_flags(polygon):
    start = start_vertex(polygon)
    return EffectiveFlags(critical_count(polygon), start)


def test_flags_bit_array():
    flags = EffectiveFlags(10, start_index=3)
    assert len(flags) == flags.size == 10
    assert flags.count_effective == 10
    assert all(flags[k] for k in range(10))
    assert flags.clear(3)
    assert not flags.clear(3)
    assert not flags[3]
    assert flags.count_effective == 9
    assert flags.set_bits() == [0, 1, 2, 4, 5, 6, 7, 8, 9]
    assert "1110111111" in repr(flags)
    with pytest.raises(IndexError):
        flags[10]


def test_flags_allocate_counts_bits():
    meter = WorkspaceMeter()
    flags = EffectiveFlags.allocate(5, 0, meter)
    assert meter.flag_bits == 5
    assert flags.count_effective == 5
    empty = EffectiveFlags.allocate(0, 0, meter)
    assert empty.count_effective == 0
    assert meter.flag_bits == 5


def test_boundary_walker():
    polygon = notched_square().polygon
    meter = WorkspaceMeter()
    walker = BoundaryWalker(
        polygon.reader(meter),
        polygon.viewpoint,
        2,
        step=1,
        convention=CriticalConvention.REFLEX,
    )
    assert meter.vertex_reads == 3
    start_theta = walker.theta
    kinds = []
    for _ in range(len(polygon)):
        kinds.append((walker.index, walker.kind()))
        walker.advance()
    assert meter.vertex_reads == 3 + len(polygon)
    assert walker.index == 2
    critical = [
        i for i, kind in kinds if kind is not CriticalKind.NOT_CRITICAL
    ]
    assert critical == [4, 5]
    # one counterclockwise turn about the viewpoint
    assert walker.theta == pytest.approx(start_theta + 2 * math.pi)


def test_start_vertex():
    assert start_vertex(notched_square().polygon) == 2
    assert start_vertex(two_notch().polygon) == 3


def test_compute_effective_notched_square():
    polygon = notched_square().polygon
    meter = WorkspaceMeter()
    flags = compute_effective(polygon, meter=meter)
    assert flags.start_index == 2
    assert flags.size == 2
    assert flags.set_bits() == [0, 1]
    assert _flagged_indices(polygon, flags) == [4, 5]
    assert meter.flag_bits == 2


def test_compute_effective_two_notch():
    polygon = two_notch().polygon
    flags = compute_effective(polygon, mode=PipelineMode.VALIDATED)
    assert flags.size == 3
    assert flags.count_effective == 1
    assert _flagged_indices(polygon, flags) == [2]
    assert visible_critical_indices(polygon) == [2]


def test_two_notch_forward_sweep_clears_pocket():
    polygon = two_notch().polygon
    flags = _fresh_flags(polygon)
    flags.end_index = 1
    forward_sweep(polygon, flags)
    assert flags.set_bits() == [2]
    assert flags.end_rank is not None


def test_sweeps_and_merge_without_criticals():
    polygon = unit_square().polygon
    flags = _fresh_flags(polygon)
    assert flags.size == 0
    forward_sweep(polygon, flags)
    backward_sweep(polygon, flags)
    merge_effective(polygon, flags)
    assert flags.count_effective == 0


def test_backward_sweep_alone_locates_end():
    polygon = notched_square().polygon
    flags = _fresh_flags(polygon)
    backward_sweep(polygon, flags)
    assert flags.end_index == 1
    assert flags.end_rank is not None
    assert flags.set_bits() == [0, 1]


def test_compute_effective_convex():
    polygon = unit_square().polygon
    meter = WorkspaceMeter()
    flags = compute_effective(polygon, meter=meter)
    assert flags.size == 0
    assert meter.flag_bits == 0


def test_paper_convention_counts_more():
    polygon = two_notch().polygon
    reflex = critical_count(polygon)
    paper = critical_count(polygon, convention=CriticalConvention.PAPER)
    assert reflex == 3
    assert paper > reflex


@pytest.mark.parametrize("teeth", [1, 2, 3, 5, 8])
def test_comb_all_effective(teeth):
    polygon = comb(teeth).polygon
    meter = WorkspaceMeter()
    flags = compute_effective(polygon, PipelineMode.VALIDATED, meter)
    assert flags.size == 2 * teeth
    assert flags.count_effective == 2 * teeth
    assert meter.flag_bits == 2 * teeth
    assert meter.scalar_slots_peak <= 64
    assert meter.vertex_reads <= 24 * len(polygon)


def test_workspace_constant_in_n():
    peaks = set()
    for n in (200, 400, 800):
        meter = WorkspaceMeter()
        compute_effective(comb(8, n=n).polygon, meter=meter)
        assert meter.flag_bits == 16
        peaks.add(meter.scalar_slots_peak)
    assert len(peaks) == 1


def test_validated_mode_reports_wrong_flags(mocker):
    for name in ("forward_sweep", "backward_sweep", "merge_effective"):
        mocker.patch(f"visarea.algorithms.effective.{name}")
    polygon = two_notch().polygon
    flags = compute_effective(polygon)
    assert flags.count_effective == 3
    with pytest.raises(PipelineDiscrepancy) as excinfo:
        compute_effective(polygon, mode=PipelineMode.VALIDATED)
    assert excinfo.value.indices == (6, 7)


@pytest.mark.parametrize(
    "make",
    [unit_square, notched_square, two_notch, lambda: comb(4), lambda: comb(7)],
)
def test_effective_matches_visible_criticals(make):
    polygon = make().polygon
    flags = compute_effective(polygon)
    assert _flagged_indices(polygon, flags) == visible_critical_indices(
        polygon
    )


def _matches_or_flagged(polygon):
    flags = compute_effective(polygon)
    if _flagged_indices(polygon, flags) == visible_critical_indices(polygon):
        return True
    with pytest.raises(PipelineDiscrepancy):
        compute_effective(polygon, mode=PipelineMode.VALIDATED)
    return False


def test_effective_on_spiral():
    _matches_or_flagged(spiral().polygon)


def test_effective_on_random_polygons():
    corpus = random_corpus(60, seed=11, min_vertices=4, max_vertices=60)
    # a mismatch that validated mode does not report fails the helper
    outcomes = [_matches_or_flagged(i.polygon) for i in corpus]
    assert len(outcomes) == 60
    assert outcomes.count(True) >= 5
