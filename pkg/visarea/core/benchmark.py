#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.
r"""Measurement of the engines on generated polygons.

:ref:`Benchmark.evaluate` runs the constrained engine over a size sweep of
polygon families and reports the workspace counters per instance;
:ref:`Benchmark.check` runs both engines over a corpus and counts how often
they agree.
"""

from typing import Dict, List, Optional, Sequence

import attr
import numpy as np
import tqdm

from visarea.config import Config
from visarea.config.default import get_config
from visarea.core.engine import RunStats
from visarea.core.errors import PipelineDiscrepancy, VisibilityError
from visarea.core.logging import logger
from visarea.core.polygon import validate
from visarea.core.registry import registry
from visarea.core.workspace import OutputSink
from visarea.oracle.corpus import Corpus
from visarea.oracle.reference import compare_cyclic

BENCH_COLUMNS = (
    "family",
    "t",
    "n",
    "c",
    "vertex_reads",
    "reads_per_n",
    "flag_bits",
    "scalar_slots_peak",
    "wall_ms",
)


@attr.s(auto_attribs=True, slots=True)
class CheckReport:
    instances: int = 0
    match: int = 0
    discrepancy: int = 0
    failure: int = 0
    archived: List[str] = attr.Factory(list)

    @property
    def discrepancy_rate(self) -> float:
        return self.discrepancy / self.instances if self.instances else 0.0

    def to_dict(self) -> Dict:
        record = attr.asdict(self)
        record["discrepancy_rate"] = self.discrepancy_rate
        return record


def _engine(config: Config, name: str, mode: Optional[str] = None):
    engine_cls = registry.get_engine(name)
    assert engine_cls is not None, f"engine {name} is not registered"
    if mode is not None and mode != config.MODE:
        config = config.clone()
        config.defrost()
        config.MODE = mode
        config.freeze()
    return engine_cls(config)


def run_engine(engine, polygon):
    r"""Run :p:`engine` into a fresh sink; returns ``(points, stats)``."""
    sink = OutputSink()
    stats = engine.run(polygon, sink)
    return list(sink.seal()), stats


class Benchmark:
    r"""Benchmark for the visibility engines."""

    def __init__(
        self,
        config_paths: Optional[str] = None,
        opts: Optional[list] = None,
        config: Optional[Config] = None,
    ) -> None:
        r"""..

        :param config_paths: yaml files merged over the defaults
        :param opts: ``KEY VALUE`` overrides
        :param config: a ready config, used instead of the two above
        """
        self.config = (
            config if config is not None else get_config(config_paths, opts)
        )

    def _generator_config(self, n: int) -> Config:
        generator = self.config.GENERATOR.clone()
        generator.defrost()
        generator.NUM_VERTICES = n
        generator.COMB_TEETH = self.config.BENCH.COMB_TEETH
        generator.freeze()
        return generator

    def _instance(self, family: str, n: int):
        make = registry.get_corpus_family(family)
        assert make is not None, f"corpus family {family} is not registered"
        return make(self._generator_config(n), self.config.SEED)

    def evaluate(
        self,
        sizes: Optional[Sequence[int]] = None,
        families: Optional[Sequence[str]] = None,
    ) -> List[Dict]:
        r"""One row per (family, n), keyed by :py:`BENCH_COLUMNS`, sorted by
        family, teeth and size."""
        sizes = list(sizes if sizes is not None else self.config.BENCH.SIZES)
        families = list(
            families if families is not None else self.config.BENCH.FAMILIES
        )
        engine = _engine(self.config, "constrained")
        rows = []
        jobs = [(family, n) for family in families for n in sizes]
        for family, n in tqdm.tqdm(jobs, desc="bench", disable=None):
            instance = self._instance(family, n)
            validate(instance.polygon, strict=False)
            _, stats = run_engine(engine, instance.polygon)
            rows.append(self._row(family, stats))
            logger.info(
                "bench %s n=%d: %d reads (%.2f per vertex)",
                family,
                stats.n,
                rows[-1]["vertex_reads"],
                rows[-1]["reads_per_n"],
            )
        rows.sort(key=lambda row: (row["family"], row["t"] or 0, row["n"]))
        return rows

    def _row(self, family: str, stats: RunStats) -> Dict:
        record = stats.to_dict()
        row = {key: record.get(key) for key in BENCH_COLUMNS}
        row["family"] = family
        row["t"] = self.config.BENCH.COMB_TEETH if family == "comb" else None
        row["reads_per_n"] = record["vertex_reads"] / record["n"]
        return row

    @staticmethod
    def regression_slope(rows: Sequence[Dict], family: str) -> float:
        r"""Slope of ``log(vertex_reads)`` against ``log(n)`` over the rows
        of :p:`family`; 1 for linear growth."""
        picked = [row for row in rows if row["family"] == family]
        if len(picked) < 2:
            raise ValueError(f"need two sizes of {family} for a slope")
        n = np.log([row["n"] for row in picked])
        reads = np.log([row["vertex_reads"] for row in picked])
        return float(np.polyfit(n, reads, 1)[0])

    def oracle_timings(
        self, sizes: Optional[Sequence[int]] = None, family: str = "convex"
    ) -> List[Dict]:
        r"""Wall time of the quadratic oracle over :p:`sizes`."""
        sizes = list(
            sizes if sizes is not None else self.config.BENCH.ORACLE_SIZES
        )
        engine = _engine(self.config, "oracle")
        rows = []
        for n in tqdm.tqdm(sizes, desc="oracle", disable=None):
            instance = self._instance(family, n)
            _, stats = run_engine(engine, instance.polygon)
            rows.append({"family": family, "n": n, "wall_ms": stats.wall_ms})
        return rows

    def check(
        self, corpus: Corpus, archive_dir: Optional[str] = None
    ) -> CheckReport:
        r"""Run both engines over :p:`corpus`.

        An instance matches when the constrained output in the configured
        mode equals the oracle output cyclically. Otherwise it counts as a
        discrepancy when validated mode reports
        :ref:`PipelineDiscrepancy` for it, and as a failure when it does
        not. Non-matching instances are written to :p:`archive_dir`.
        """
        tol = self.config.ORACLE.COMPARE_TOLERANCE
        collinear = self.config.ORACLE.COLLINEAR_TOLERANCE
        constrained = _engine(self.config, "constrained")
        validated = _engine(self.config, "constrained", mode="validated")
        oracle = _engine(self.config, "oracle")
        report = CheckReport()
        for instance in tqdm.tqdm(corpus, desc="check", disable=None):
            report.instances += 1
            try:
                expected, _ = run_engine(oracle, instance.polygon)
                got, _ = run_engine(constrained, instance.polygon)
                if compare_cyclic(got, expected, tol, collinear):
                    report.match += 1
                    continue
            except VisibilityError as exc:
                logger.debug("%s: %s", instance.filename, exc)
            try:
                run_engine(validated, instance.polygon)
                report.failure += 1
                outcome = "failure"
            except PipelineDiscrepancy:
                report.discrepancy += 1
                outcome = "discrepancy"
            except VisibilityError:
                report.failure += 1
                outcome = "failure"
            logger.warning("check %s: %s", instance.filename, outcome)
            if archive_dir:
                report.archived.extend(Corpus([instance]).save(archive_dir))
        return report
