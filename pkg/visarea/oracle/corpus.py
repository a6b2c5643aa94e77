#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Test and benchmark polygons.

:ref:`Corpus` is a list of :ref:`CorpusInstance` that round-trips through a
directory of polygon files named ``<family>_n<NNNN>_seed<SSSS>.poly``.
Family generators are registered by name with
:py:`registry.register_corpus_family` and take the ``GENERATOR`` config node
and a seed.
"""

import math
import os
import re
from typing import Callable, Iterator, List, Optional, Sequence, Union

import attr
import numpy as np

from visarea.config import Config
from visarea.core.errors import (
    DegeneratePosition,
    GenerationTimeout,
    InvalidPolygon,
)
from visarea.core.geometry import Point
from visarea.core.polygon import (
    PolygonInput,
    point_in_polygon,
    read_polygon,
    signed_area,
    validate,
    write_polygon,
)
from visarea.core.registry import registry

_FILENAME_RE = re.compile(r"^(?P<family>.+)_n(?P<n>\d+)_seed(?P<seed>\d+)$")


@attr.s(auto_attribs=True, frozen=True, slots=True)
class CorpusInstance:
    r"""One polygon with its family name and generator seed (``0`` for the
    fixed polygons)."""
    family: str
    seed: int
    polygon: PolygonInput

    @property
    def n(self) -> int:
        return len(self.polygon)

    @property
    def filename(self) -> str:
        return f"{self.family}_n{self.n:04d}_seed{self.seed:04d}.poly"


class Corpus:
    def __init__(self, instances: Optional[Sequence[CorpusInstance]] = None):
        self.instances: List[CorpusInstance] = list(instances or [])

    def __len__(self) -> int:
        return len(self.instances)

    def __iter__(self) -> Iterator[CorpusInstance]:
        return iter(self.instances)

    @property
    def families(self) -> List[str]:
        return sorted({instance.family for instance in self.instances})

    def filter(self, filter_fn: Callable[[CorpusInstance], bool]) -> "Corpus":
        return Corpus([i for i in self.instances if filter_fn(i)])

    def save(self, directory: str) -> List[str]:
        r"""Write one polygon file per instance; returns the paths."""
        os.makedirs(directory, exist_ok=True)
        paths = []
        for instance in self.instances:
            path = os.path.join(directory, instance.filename)
            write_polygon(
                path,
                instance.polygon.points,
                instance.polygon.viewpoint,
            )
            paths.append(path)
        return paths

    @classmethod
    def load(cls, directory: str) -> "Corpus":
        r"""Read every ``*.poly`` file of :p:`directory`, sorted by name.
        Files whose name does not follow the corpus pattern get their stem
        as family and seed ``0``."""
        instances = []
        for name in sorted(os.listdir(directory)):
            stem, ext = os.path.splitext(name)
            if ext != ".poly":
                continue
            match = _FILENAME_RE.match(stem)
            family, seed = stem, 0
            if match is not None:
                family, seed = match["family"], int(match["seed"])
            polygon = read_polygon(os.path.join(directory, name))
            instances.append(CorpusInstance(family, seed, polygon))
        return cls(instances)


def _instance(
    family: str,
    vertices: Union[np.ndarray, Sequence[Sequence[float]]],
    viewpoint: Point,
    seed: int = 0,
) -> CorpusInstance:
    return CorpusInstance(
        family, seed, PolygonInput(vertices=vertices, viewpoint=viewpoint)
    )


# -----------------------------------------------------------------------------
# Fixed polygons
# -----------------------------------------------------------------------------
def unit_square() -> CorpusInstance:
    return _instance(
        "unit_square", [(0, 0), (1, 0), (1, 1), (0, 1)], Point(0.5, 0.5)
    )


def notched_square() -> CorpusInstance:
    r"""Square with a rectangular notch cut down from the top edge; seen from
    ``(2, 1)`` the notch hides a strip on each side of it."""
    return _instance(
        "notched_square",
        [
            (0, 0),
            (4, 0),
            (4, 4),
            (2.5, 4),
            (2.5, 3),
            (1.5, 3),
            (1.5, 4),
            (0, 4),
        ],
        Point(2, 1),
    )


def two_notch() -> CorpusInstance:
    r"""A room with a corridor leaving to the right and a slanted crack in
    the corridor ceiling. The corridor corner hides the whole crack, so its
    two critical vertices are not effective."""
    return _instance(
        "two_notch",
        [
            (0, 0),
            (4, 0),
            (4, 3),
            (10, 3),
            (10, 4),
            (8.4, 4),
            (7, 3.4),
            (6.4, 3.4),
            (7.8, 4),
            (0, 4),
        ],
        Point(1, 1),
    )


# -----------------------------------------------------------------------------
# Parametric families
# -----------------------------------------------------------------------------
def comb(
    teeth: int,
    depth: float = 3.0,
    n: Optional[int] = None,
    radius: float = 10.0,
    width: float = 1.0,
) -> CorpusInstance:
    r"""Polygon inscribed in a circle about the origin with :p:`teeth`
    parallel-walled slots cut inward, viewed from the origin.

    Each slot contributes one critical-min (its clockwise inner corner) and
    one critical-max (its counterclockwise inner corner), all visible. Arc
    vertices between the slots pad the polygon to :p:`n` vertices.
    """
    if teeth < 1:
        raise ValueError(f"comb needs at least one tooth, got {teeth}")
    per_gap_min = 3 if teeth < 3 else 1
    if n is None:
        n = 16 * teeth
    if n < teeth * (4 + per_gap_min):
        raise ValueError(
            f"comb with {teeth} teeth needs at least "
            f"{teeth * (4 + per_gap_min)} vertices, got {n}"
        )
    half = width / 2.0
    base = math.sqrt(radius * radius - half * half)
    tip = base - depth
    if tip <= half:
        raise ValueError(f"depth {depth} leaves no room around the origin")
    spread = math.atan2(half, tip)
    pitch = 2.0 * math.pi / teeth
    if 2.0 * spread >= pitch / 2.0:
        raise ValueError(f"{teeth} teeth of width {width} overlap")

    # arc vertices per gap, remainder to the first gaps
    arcs = np.full(teeth, (n - 4 * teeth) // teeth)
    arcs[: (n - 4 * teeth) % teeth] += 1
    edge_half_angle = math.asin(half / radius)
    vertices = []
    for k in range(teeth):
        phi = k * pitch
        u = np.array([math.cos(phi), math.sin(phi)])
        v = np.array([-math.sin(phi), math.cos(phi)])
        vertices.extend(
            [
                -half * v + base * u,
                -half * v + tip * u,
                half * v + tip * u,
                half * v + base * u,
            ]
        )
        lo = phi + edge_half_angle
        hi = phi + pitch - edge_half_angle
        steps = np.arange(1, arcs[k] + 1) / (arcs[k] + 1)
        angles = lo + (hi - lo) * steps
        vertices.extend(
            radius * np.stack([np.cos(angles), np.sin(angles)], axis=1)
        )
    return _instance(f"comb{teeth}", np.array(vertices), Point(0.0, 0.0))


def spiral(
    turns: float = 1.5,
    n: int = 200,
    growth: float = 0.5 / math.pi,
    corridor: float = 0.6,
) -> CorpusInstance:
    r"""Spiral corridor of constant width between ``r = 1 + growth * phi``
    and the curve :p:`corridor` inside it, viewed from the middle of the
    corridor halfway along."""
    if n < 6:
        raise ValueError(f"spiral needs at least 6 vertices, got {n}")
    if corridor >= 2.0 * math.pi * growth:
        raise ValueError("corridor wider than the spacing between turns")
    outer_count = n // 2
    phi_end = 2.0 * math.pi * turns
    outer_phi = np.linspace(0.0, phi_end, outer_count)
    inner_phi = np.linspace(phi_end, 0.0, n - outer_count)

    def curve(phi: np.ndarray, offset: float) -> np.ndarray:
        r = 1.0 + growth * phi - offset
        return np.stack([r * np.cos(phi), r * np.sin(phi)], axis=1)

    vertices = np.concatenate(
        [curve(outer_phi, 0.0), curve(inner_phi, corridor)]
    )
    # off the vertex rays on both curves
    phi_q = phi_end / 2.0 + 0.5 * phi_end / max(outer_count, 2)
    r_q = 1.0 + growth * phi_q - corridor / 2.0
    viewpoint = Point(r_q * math.cos(phi_q), r_q * math.sin(phi_q))
    return _instance("spiral", vertices, viewpoint)


def regular_polygon(n: int, radius: float = 1.0) -> CorpusInstance:
    r"""Regular :p:`n`-gon viewed from a point slightly off its centre."""
    angles = 2.0 * math.pi * np.arange(n) / n
    vertices = radius * np.stack([np.cos(angles), np.sin(angles)], axis=1)
    return _instance(
        "regular", vertices, Point(0.1234 * radius, 0.0567 * radius)
    )


def convex_polygon(
    n: int, seed: int, max_resamples: int = 1000
) -> CorpusInstance:
    r"""Random convex polygon: sorted random angles on the unit circle, with
    the viewpoint near the centre."""
    rng = np.random.default_rng(seed)
    for _ in range(max_resamples):
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
        gaps = np.diff(np.append(angles, angles[0] + 2.0 * math.pi))
        if np.unique(angles).size < n or gaps.max() >= math.pi:
            continue
        vertices = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        offset = rng.uniform(-0.05, 0.05, 2)
        viewpoint = Point(*offset)
        candidate = _instance("convex", vertices, viewpoint, seed)
        if point_in_polygon(candidate.polygon, viewpoint):
            return candidate
    raise GenerationTimeout(
        f"no convex {n}-gon around the centre after {max_resamples} tries"
    )


def _crossings(vertices: np.ndarray) -> np.ndarray:
    r"""``(n, n)`` boolean matrix of properly crossing edge pairs."""
    a = vertices
    b = np.roll(vertices, -1, axis=0)

    def cross(p, q, r):
        return (q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (
            q[..., 1] - p[..., 1]
        ) * (r[..., 0] - p[..., 0])

    ai, bi = a[:, None, :], b[:, None, :]
    aj, bj = a[None, :, :], b[None, :, :]
    return (cross(ai, bi, aj) * cross(ai, bi, bj) < 0) & (
        cross(aj, bj, ai) * cross(aj, bj, bi) < 0
    )


def _nearest_neighbour_tour(points: np.ndarray) -> np.ndarray:
    n = len(points)
    order = [0]
    remaining = np.ones(n, dtype=bool)
    remaining[0] = False
    for _ in range(n - 1):
        dist = np.hypot(*(points - points[order[-1]]).T)
        dist[~remaining] = np.inf
        nxt = int(np.argmin(dist))
        order.append(nxt)
        remaining[nxt] = False
    return np.array(order)


def untangle(
    points: np.ndarray, max_swaps: int = 100000
) -> np.ndarray:
    r"""Vertex order of a simple polygon through :p:`points`, by 2-opt moves
    from a nearest-neighbour tour: while two edges cross, reverse the path
    between them. Each move shortens the tour, so this terminates.

    :raise GenerationTimeout: after :p:`max_swaps` moves.
    """
    order = _nearest_neighbour_tour(points)
    n = len(order)
    for _ in range(max_swaps + 1):
        crossing = np.argwhere(np.triu(_crossings(points[order]), k=2))
        if not len(crossing):
            return order
        i, j = (int(x) for x in crossing[0])
        order[i + 1 : j + 1] = order[i + 1 : j + 1][::-1].copy()
    raise GenerationTimeout(
        f"{n} points still tangled after {max_swaps} swaps"
    )


def random_interior_point(
    vertices: Union[np.ndarray, Sequence[Sequence[float]]],
    seed: int,
    min_sep: float = 1e-6,
    max_resamples: int = 1000,
) -> Point:
    r"""Uniform point of the bounding box inside the polygon, resampled
    until no two vertices are closer than :p:`min_sep` radians in angle
    about it.

    :raise GenerationTimeout: after :p:`max_resamples` draws.
    """
    vertices = np.asarray(vertices, dtype=np.float64)
    rng = np.random.default_rng(seed)
    lo, hi = vertices.min(axis=0), vertices.max(axis=0)
    for _ in range(max_resamples):
        candidate = Point(*rng.uniform(lo, hi))
        d = vertices - np.array(candidate.as_tuple())
        if np.any(np.all(d == 0.0, axis=1)):
            continue
        theta = np.sort(np.mod(np.arctan2(d[:, 1], d[:, 0]), 2.0 * math.pi))
        gaps = np.diff(np.append(theta, theta[0] + 2.0 * math.pi))
        if gaps.min() < min_sep:
            continue
        try:
            inside = point_in_polygon(
                PolygonInput(vertices=vertices, viewpoint=candidate),
                candidate,
            )
        except DegeneratePosition:
            continue
        if inside:
            return candidate
    raise GenerationTimeout(
        f"no interior viewpoint in general position after "
        f"{max_resamples} draws"
    )


def random_simple_polygon(
    n: int,
    seed: int,
    min_sep: float = 1e-6,
    max_swaps: int = 100000,
    max_resamples: int = 1000,
) -> PolygonInput:
    r"""Random simple counterclockwise polygon on :p:`n` uniform points of
    the unit square, with a random interior viewpoint; passes
    :py:`validate(strict=True)`.

    :raise GenerationTimeout: when untangling or viewpoint sampling run out
        of attempts, or no valid instance turns up in :p:`max_resamples`
        point sets.
    """
    if n < 3:
        raise ValueError(f"a polygon needs at least 3 vertices, got {n}")
    rng = np.random.default_rng(seed)
    for attempt in range(max_resamples):
        points = rng.random((n, 2))
        vertices = points[untangle(points, max_swaps)]
        area = signed_area(vertices)
        if area == 0.0:
            continue
        if area < 0.0:
            vertices = vertices[::-1].copy()
        viewpoint = random_interior_point(
            vertices,
            int(rng.integers(2 ** 31)),
            min_sep=min_sep,
            max_resamples=max_resamples,
        )
        polygon = PolygonInput(vertices=vertices, viewpoint=viewpoint)
        try:
            validate(polygon, strict=True)
        except (InvalidPolygon, DegeneratePosition):
            continue
        return polygon
    raise GenerationTimeout(
        f"no valid random {n}-gon for seed {seed} after {max_resamples} tries"
    )


def random_corpus(
    count: int,
    seed: int = 0,
    min_vertices: int = 4,
    max_vertices: int = 200,
) -> Corpus:
    r""":p:`count` random polygons; instance ``k`` uses seed ``seed + k``
    for both its size and its geometry."""
    instances = []
    for k in range(count):
        instance_seed = seed + k
        n = int(
            np.random.default_rng(instance_seed).integers(
                min_vertices, max_vertices + 1
            )
        )
        polygon = random_simple_polygon(n, instance_seed)
        instances.append(CorpusInstance("random", instance_seed, polygon))
    return Corpus(instances)


def fixed_corpus(max_teeth: int = 8) -> Corpus:
    r"""The hand-made polygons, the comb family up to :p:`max_teeth` and one
    spiral."""
    instances = [unit_square(), notched_square(), two_notch()]
    instances.extend(comb(t) for t in range(1, max_teeth + 1))
    instances.append(spiral())
    return Corpus(instances)


# -----------------------------------------------------------------------------
# Registered families: generator(config.GENERATOR, seed) -> CorpusInstance
# -----------------------------------------------------------------------------
@registry.register_corpus_family(name="unit_square")
def _unit_square_family(config: Config, seed: int) -> CorpusInstance:
    return unit_square()


@registry.register_corpus_family(name="notched_square")
def _notched_square_family(config: Config, seed: int) -> CorpusInstance:
    return notched_square()


@registry.register_corpus_family(name="two_notch")
def _two_notch_family(config: Config, seed: int) -> CorpusInstance:
    return two_notch()


@registry.register_corpus_family(name="comb")
def _comb_family(config: Config, seed: int) -> CorpusInstance:
    return comb(config.COMB_TEETH, config.COMB_DEPTH, n=config.NUM_VERTICES)


@registry.register_corpus_family(name="spiral")
def _spiral_family(config: Config, seed: int) -> CorpusInstance:
    return spiral(config.SPIRAL_TURNS, n=config.NUM_VERTICES)


@registry.register_corpus_family(name="convex")
def _convex_family(config: Config, seed: int) -> CorpusInstance:
    return convex_polygon(
        config.NUM_VERTICES, seed, max_resamples=config.MAX_RESAMPLES
    )


@registry.register_corpus_family(name="regular")
def _regular_family(config: Config, seed: int) -> CorpusInstance:
    return regular_polygon(config.NUM_VERTICES)


@registry.register_corpus_family(name="random")
def _random_family(config: Config, seed: int) -> CorpusInstance:
    polygon = random_simple_polygon(
        config.NUM_VERTICES,
        seed,
        min_sep=config.MIN_ANGULAR_SEPARATION,
        max_swaps=config.MAX_SWAPS,
        max_resamples=config.MAX_RESAMPLES,
    )
    return CorpusInstance("random", seed, polygon)
