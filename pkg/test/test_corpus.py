#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import shutil

import numpy as np
import pytest

from visarea.config.default import get_config
from visarea.core.errors import GenerationTimeout
from visarea.core.geometry import Point
from visarea.core.polygon import critical_count, validate
from visarea.core.registry import registry
from visarea.oracle.corpus import (
    Corpus,
    CorpusInstance,
    _crossings,
    comb,
    convex_polygon,
    fixed_corpus,
    notched_square,
    random_corpus,
    random_interior_point,
    random_simple_polygon,
    regular_polygon,
    spiral,
    two_notch,
    unit_square,
    untangle,
)

FAMILIES = [
    "comb",
    "convex",
    "notched_square",
    "random",
    "regular",
    "spiral",
    "two_notch",
    "unit_square",
]


def _construct_corpus():
    return Corpus(
        [unit_square(), notched_square(), two_notch(), comb(2), comb(3)]
    )


def test_families():
    corpus = _construct_corpus()
    assert len(corpus) == 5
    assert corpus.families == [
        "comb2",
        "comb3",
        "notched_square",
        "two_notch",
        "unit_square",
    ]


def test_filter():
    corpus = _construct_corpus()

    def filter_fn(instance: CorpusInstance) -> bool:
        return instance.family.startswith("comb")

    filtered = corpus.filter(filter_fn)
    assert len(filtered) == 2
    for instance in filtered:
        assert filter_fn(instance)


def test_filename():
    instance = CorpusInstance("random", 7, unit_square().polygon)
    assert instance.n == 4
    assert instance.filename == "random_n0004_seed0007.poly"


def test_save_and_load(tmp_path):
    corpus = _construct_corpus()
    paths = corpus.save(str(tmp_path / "corpus"))
    assert len(paths) == len(corpus)
    loaded = Corpus.load(str(tmp_path / "corpus"))
    assert len(loaded) == len(corpus)
    by_family = {instance.family: instance for instance in loaded}
    for instance in corpus:
        other = by_family[instance.family]
        assert other.seed == instance.seed
        assert other.polygon.points == instance.polygon.points
        assert other.polygon.viewpoint == instance.polygon.viewpoint


def test_load_foreign_names(tmp_path):
    shutil.copy("test/data/notched_square.poly", str(tmp_path))
    (tmp_path / "notes.txt").write_text("not a polygon")
    loaded = Corpus.load(str(tmp_path))
    assert len(loaded) == 1
    instance = next(iter(loaded))
    assert instance.family == "notched_square"
    assert instance.seed == 0


@pytest.mark.parametrize(
    "make",
    [
        unit_square,
        notched_square,
        two_notch,
        lambda: comb(1),
        lambda: comb(8),
        lambda: comb(8, n=1000),
        spiral,
        lambda: regular_polygon(17),
        lambda: convex_polygon(40, seed=3),
    ],
)
def test_generated_polygons_are_valid(make):
    validate(make().polygon)


@pytest.mark.parametrize("teeth", [1, 3, 8])
def test_comb_shape(teeth):
    instance = comb(teeth)
    assert instance.family == f"comb{teeth}"
    assert instance.n == 16 * teeth
    assert instance.polygon.viewpoint == Point(0, 0)
    assert critical_count(instance.polygon) == 2 * teeth


def test_comb_rejects_bad_parameters():
    with pytest.raises(ValueError):
        comb(0)
    with pytest.raises(ValueError):
        comb(8, n=20)
    with pytest.raises(ValueError):
        comb(4, depth=20.0)


def test_untangle():
    points = np.random.default_rng(5).random((30, 2))
    order = untangle(points)
    assert sorted(order.tolist()) == list(range(30))
    assert not _crossings(points[order]).any()


def test_untangle_timeout(mocker):
    bowtie = np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
    mocker.patch(
        "visarea.oracle.corpus._nearest_neighbour_tour",
        side_effect=lambda points: np.arange(len(points)),
    )
    with pytest.raises(GenerationTimeout):
        untangle(bowtie, max_swaps=0)
    assert not _crossings(bowtie[untangle(bowtie, max_swaps=1)]).any()


def test_random_interior_point():
    vertices = regular_polygon(20).polygon.vertices
    p = random_interior_point(vertices, seed=1)
    assert np.hypot(p.x, p.y) < 1.0
    with pytest.raises(GenerationTimeout):
        random_interior_point(vertices, seed=1, min_sep=1.0, max_resamples=50)


def test_random_simple_polygon():
    first = random_simple_polygon(30, seed=3)
    second = random_simple_polygon(30, seed=3)
    assert len(first) == 30
    validate(first)
    assert first.points == second.points
    assert first.viewpoint == second.viewpoint
    with pytest.raises(ValueError):
        random_simple_polygon(2, seed=3)


def test_random_corpus():
    corpus = random_corpus(6, seed=40, min_vertices=4, max_vertices=25)
    assert len(corpus) == 6
    assert [instance.seed for instance in corpus] == list(range(40, 46))
    for instance in corpus:
        assert 4 <= instance.n <= 25
        assert instance.family == "random"
    again = random_corpus(6, seed=40, min_vertices=4, max_vertices=25)
    for a, b in zip(corpus, again):
        assert a.polygon.points == b.polygon.points


def test_fixed_corpus():
    corpus = fixed_corpus()
    assert len(corpus) == 12
    assert "spiral" in corpus.families
    assert "comb8" in corpus.families


def test_registered_families():
    assert registry.list_corpus_families() == FAMILIES
    generator = get_config(opts=["GENERATOR.NUM_VERTICES", 64]).GENERATOR
    for family in FAMILIES:
        make = registry.get_corpus_family(family)
        instance = make(generator, 9)
        assert isinstance(instance, CorpusInstance)
        if family in ("comb", "convex", "random", "regular", "spiral"):
            assert instance.n == 64
    assert registry.get_corpus_family("no_such_family") is None
