#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import pytest

from visarea.config.default import get_config
from visarea.core.engine import Engine
from visarea.core.registry import registry

CFG_TEST = "configs/test/visarea_test.yaml"
CFG_VALIDATED = "configs/test/validated_test.yaml"
CFG_NEW_KEYS = "configs/test/new_keys_test.yaml"
MAX_TEST_TEETH = 3


def test_merged_configs():
    test_config = get_config(CFG_TEST)
    validated_config = get_config(CFG_VALIDATED)
    merged_config = get_config("{},{}".format(CFG_TEST, CFG_VALIDATED))
    assert merged_config.MODE == validated_config.MODE == "validated"
    assert (
        merged_config.GEOMETRY.WINDOW_MATCH_TOLERANCE
        == validated_config.GEOMETRY.WINDOW_MATCH_TOLERANCE
    )
    assert merged_config.BENCH.SIZES == test_config.BENCH.SIZES
    assert merged_config.SEED == test_config.SEED


def test_new_keys_merged_configs():
    test_config = get_config(CFG_TEST)
    new_keys_config = get_config(CFG_NEW_KEYS)
    merged_config = get_config("{},{}".format(CFG_TEST, CFG_NEW_KEYS))
    assert (
        merged_config.GENERATOR.MY_NEW_GENERATOR_PARAM
        == new_keys_config.GENERATOR.MY_NEW_GENERATOR_PARAM
    )
    assert merged_config.ORACLE.NEW_KEY == 20
    assert merged_config.CHECK.NUM_RANDOM == test_config.CHECK.NUM_RANDOM


def test_overwrite_options():
    for teeth in range(1, MAX_TEST_TEETH + 1):
        config = get_config(
            config_paths=CFG_TEST,
            opts=["BENCH.COMB_TEETH", teeth, "MODE", "validated"],
        )
        assert (
            config.BENCH.COMB_TEETH == teeth
        ), "Overwriting of config options failed."
        assert config.MODE == "validated"


def test_config_is_frozen():
    config = get_config()
    with pytest.raises(AttributeError):
        config.SEED = 1


def test_engine_configs():
    for path, name in (
        ("configs/engines/constrained.yaml", "constrained"),
        ("configs/engines/oracle.yaml", "oracle"),
        ("configs/engines/validated.yaml", "constrained"),
    ):
        config = get_config(path)
        assert config.ENGINE == name
        engine_cls = registry.get_engine(config.ENGINE)
        assert engine_cls is not None
        assert issubclass(engine_cls, Engine)
        assert engine_cls(config).config is config


def test_bench_configs():
    comb = get_config("configs/bench/comb.yaml")
    convex = get_config("configs/bench/convex.yaml")
    assert comb.BENCH.FAMILIES == ["comb"]
    assert comb.BENCH.COMB_TEETH == 8
    assert convex.BENCH.FAMILIES == ["convex"]
    assert convex.BENCH.SIZES == [1000, 10000, 100000]
