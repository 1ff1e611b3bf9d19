"""Seeded experiment campaigns over random properly coloured instances.

A campaign sweeps minimum-degree values, generates seeded random graphs of
the order prescribed by the configuration, colours each one several times,
and asks the exact solver whether a rainbow matching of the target size
exists.  The exact solver is always the verdict; the rule engine runs
alongside as a reported metric.  Two runs with equal configuration produce
byte-identical result files: every random choice flows from the master
seed through :func:`derive_seed`.
"""

from __future__ import annotations

import csv
import hashlib
import io as _io
import json
from dataclasses import dataclass, field
from pathlib import Path

from .engine import run_engine
from .generators import greedy_proper_coloring, random_graph_min_degree
from .graphs import EdgeColoredGraph, bound_n, min_degree
from .io import dumps_graph
from .solver import max_rainbow_matching, solve_decision

DEFAULT_NODE_BUDGET = 10 ** 8


def derive_seed(master_seed: int, *parts) -> int:
    """Stable per-instance seed: hash of the master seed and a label path."""
    text = ":".join([str(master_seed), *(str(p) for p in parts)])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def lesaulnier_threshold(delta: int) -> int:
    """Guaranteed size for any properly coloured graph outside the
    exceptional family: half the minimum degree, rounded up."""
    return (delta + 1) // 2


def lesaulnier_exception(graph: EdgeColoredGraph) -> bool:
    """Exceptional instances exempt from the half-degree guarantee: the
    complete graph on 4 vertices, or order exactly minimum degree plus 2."""
    m = len(graph.edges)
    if graph.n == 4 and m == 6:
        return True
    return graph.n == min_degree(graph) + 2


def wang_threshold(delta: int) -> int:
    """Guaranteed size when the order is at least 8/5 of the minimum
    degree: three fifths of the degree, rounded down."""
    return 3 * delta // 5


def wang_applies(n: int, delta: int) -> bool:
    return 5 * n >= 8 * delta


@dataclass(frozen=True)
class CampaignConfig:
    """Fully determines a campaign; equal configs give identical files."""

    deltas: tuple[int, ...]
    n_rule: str = "bound"          # "bound", "bound+K", "bound-K" or "fixed:N"
    samples: int = 500
    recolorings: int = 3           # extra colourings per graph, beyond the first
    master_seed: int = 0
    engine_depth: int = 3
    node_budget: int = DEFAULT_NODE_BUDGET
    extra_edge_prob: float = 0.0

    def n_for(self, delta: int) -> int:
        rule = self.n_rule.strip()
        if rule.startswith("fixed:"):
            return int(rule[len("fixed:"):])
        if rule == "bound":
            return bound_n(delta)
        if rule.startswith("bound+"):
            return bound_n(delta) + int(rule[len("bound+"):])
        if rule.startswith("bound-"):
            return bound_n(delta) - int(rule[len("bound-"):])
        raise ValueError(f"bad n_rule: {self.n_rule!r}")

    def to_json_dict(self) -> dict:
        return {
            "deltas": list(self.deltas),
            "n_rule": self.n_rule,
            "samples": self.samples,
            "recolorings": self.recolorings,
            "master_seed": self.master_seed,
            "engine_depth": self.engine_depth,
            "node_budget": self.node_budget,
            "extra_edge_prob": self.extra_edge_prob,
        }

    def config_hash(self) -> str:
        canon = json.dumps(self.to_json_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:12]


@dataclass(frozen=True)
class InstanceRecord:
    """One solved colouring; enough to replay it from the config alone."""

    config_hash: str
    delta: int
    n: int
    graph_index: int
    recoloring_index: int
    graph_seed: int
    color_seed: int
    edges: int
    status: str                    # "ok" or "inconclusive"
    found_size: int
    nodes: int
    theorem_applicable: bool
    theorem_ok: bool | None
    lesaulnier_flagged: bool
    lesaulnier_ok: bool | None
    wang_applicable: bool
    wang_ok: bool | None
    engine_size: int
    engine_steps: int


@dataclass(frozen=True)
class CellResult:
    delta: int
    n: int
    instances: int
    ok: int
    failures: int
    inconclusive: int
    success_fraction: float
    engine_success_fraction: float


@dataclass
class CampaignResult:
    config: CampaignConfig
    config_hash: str
    records: list[InstanceRecord] = field(default_factory=list)
    cells: list[CellResult] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    witness_files: list[str] = field(default_factory=list)

    @property
    def unflagged_violations(self) -> list[str]:
        return list(self.violations)


def _evaluate_instance(graph, delta, config, rec_common, out_dir, result):
    """Solve one colouring exactly, run the engine, apply the weaker-bound
    checks, and append the record (dumping a witness on any violation)."""
    res = solve_decision(graph, delta, config.node_budget)
    theorem_applicable = graph.n >= bound_n(delta)
    status = "ok"
    found_size = res.size
    nodes = res.nodes_explored
    if res.size >= delta:
        theorem_ok: bool | None = True
        lesaulnier_ok: bool | None = True
        wang_ok: bool | None = True
    elif res.optimal:
        # Definite negative; get the true optimum for the weaker checks.
        full = max_rainbow_matching(graph, config.node_budget)
        found_size = full.size
        nodes += full.nodes_explored
        theorem_ok = False
        if full.optimal:
            lesaulnier_ok = full.size >= lesaulnier_threshold(delta)
            wang_ok = full.size >= wang_threshold(delta)
        else:
            status = "inconclusive"
            lesaulnier_ok = True if full.size >= lesaulnier_threshold(delta) else None
            wang_ok = True if full.size >= wang_threshold(delta) else None
    else:
        status = "inconclusive"
        theorem_ok = None
        lesaulnier_ok = True if res.size >= lesaulnier_threshold(delta) else None
        wang_ok = True if res.size >= wang_threshold(delta) else None

    flagged = lesaulnier_exception(graph)
    wang_app = wang_applies(graph.n, delta)
    eng = run_engine(graph, delta, config.engine_depth,
                     node_budget=config.node_budget)

    record = InstanceRecord(
        edges=len(graph.edges),
        status=status,
        found_size=found_size,
        nodes=nodes,
        theorem_applicable=theorem_applicable,
        theorem_ok=theorem_ok,
        lesaulnier_flagged=flagged,
        lesaulnier_ok=lesaulnier_ok,
        wang_applicable=wang_app,
        wang_ok=wang_ok,
        engine_size=eng.size,
        engine_steps=len(eng.trace),
        **rec_common,
    )
    result.records.append(record)

    problems = []
    if theorem_applicable and theorem_ok is False:
        problems.append("theorem")
    if lesaulnier_ok is False and not flagged:
        problems.append("lesaulnier")
    if wang_app and wang_ok is False:
        problems.append("wang")
    for kind in problems:
        desc = (f"{kind} violation: delta={delta} n={graph.n} "
                f"graph={record.graph_index} recoloring={record.recoloring_index} "
                f"size={found_size}")
        result.violations.append(desc)
        if out_dir is not None:
            name = (f"witness-{kind}-{result.config_hash}-d{delta}-n{graph.n}"
                    f"-g{record.graph_index}-c{record.recoloring_index}.txt")
            path = Path(out_dir) / name
            path.write_text(dumps_graph(graph), encoding="utf-8")
            result.witness_files.append(str(path))


def run_campaign(config: CampaignConfig, out_dir: str | Path | None = None) -> CampaignResult:
    """Run the full sweep.  ``out_dir`` (optional) receives witness dumps
    for any violated guarantee."""
    if out_dir is not None:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
    result = CampaignResult(config=config, config_hash=config.config_hash())
    for delta in config.deltas:
        n = config.n_for(delta)
        for i in range(config.samples):
            gseed = derive_seed(config.master_seed, "graph", delta, n, i)
            base = random_graph_min_degree(n, delta, gseed, config.extra_edge_prob)
            for j in range(config.recolorings + 1):
                cseed = derive_seed(config.master_seed, "color", delta, n, i, j)
                graph = greedy_proper_coloring(base, cseed)
                rec_common = {
                    "config_hash": result.config_hash,
                    "delta": delta,
                    "n": n,
                    "graph_index": i,
                    "recoloring_index": j,
                    "graph_seed": gseed,
                    "color_seed": cseed,
                }
                _evaluate_instance(graph, delta, config, rec_common, out_dir, result)
        cell_records = [r for r in result.records if r.delta == delta and r.n == n]
        ok = sum(1 for r in cell_records if r.theorem_ok is True)
        failures = sum(1 for r in cell_records if r.theorem_ok is False)
        inconclusive = sum(1 for r in cell_records if r.status == "inconclusive")
        total = len(cell_records)
        engine_ok = sum(1 for r in cell_records if r.engine_size >= delta)
        result.cells.append(CellResult(
            delta=delta,
            n=n,
            instances=total,
            ok=ok,
            failures=failures,
            inconclusive=inconclusive,
            success_fraction=(ok / total) if total else 0.0,
            engine_success_fraction=(engine_ok / total) if total else 0.0,
        ))
    return result


@dataclass(frozen=True)
class ScanRow:
    delta: int
    n: int
    samples: int
    failures: int
    inconclusive: int
    failure_rate: float


def run_scan(delta: int, n_values, samples: int, master_seed: int,
             node_budget: int = DEFAULT_NODE_BUDGET,
             extra_edge_prob: float = 0.0) -> list[ScanRow]:
    """Failure rate of "rainbow matching of size the minimum degree" per
    order; the interesting range sits between 2*delta and the proven bound."""
    rows = []
    for n in n_values:
        failures = 0
        inconclusive = 0
        for i in range(samples):
            gseed = derive_seed(master_seed, "scan-graph", delta, n, i)
            base = random_graph_min_degree(n, delta, gseed, extra_edge_prob)
            cseed = derive_seed(master_seed, "scan-color", delta, n, i)
            graph = greedy_proper_coloring(base, cseed)
            res = solve_decision(graph, delta, node_budget)
            if res.size >= delta:
                pass
            elif res.optimal:
                failures += 1
            else:
                inconclusive += 1
        rate = (failures / samples) if samples else 0.0
        rows.append(ScanRow(delta, n, samples, failures, inconclusive, rate))
    return rows


def _bool_cell(value: bool | None) -> str:
    if value is None:
        return ""
    return "1" if value else "0"


def cells_to_csv(result: CampaignResult) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["config_hash", "delta", "n", "instances", "ok", "failures",
                     "inconclusive", "success_fraction", "engine_success_fraction"])
    for c in result.cells:
        writer.writerow([result.config_hash, c.delta, c.n, c.instances, c.ok,
                         c.failures, c.inconclusive,
                         f"{c.success_fraction:.6f}",
                         f"{c.engine_success_fraction:.6f}"])
    return buf.getvalue()


def instances_to_csv(result: CampaignResult) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([
        "config_hash", "delta", "n", "graph_index", "recoloring_index",
        "graph_seed", "color_seed", "edges", "status", "found_size", "nodes",
        "theorem_applicable", "theorem_ok", "lesaulnier_flagged",
        "lesaulnier_ok", "wang_applicable", "wang_ok",
        "engine_size", "engine_steps",
    ])
    for r in result.records:
        writer.writerow([
            r.config_hash, r.delta, r.n, r.graph_index, r.recoloring_index,
            r.graph_seed, r.color_seed, r.edges, r.status, r.found_size,
            r.nodes, _bool_cell(r.theorem_applicable), _bool_cell(r.theorem_ok),
            _bool_cell(r.lesaulnier_flagged), _bool_cell(r.lesaulnier_ok),
            _bool_cell(r.wang_applicable), _bool_cell(r.wang_ok),
            r.engine_size, r.engine_steps,
        ])
    return buf.getvalue()


def campaign_to_json(result: CampaignResult) -> str:
    payload = {
        "config": result.config.to_json_dict(),
        "config_hash": result.config_hash,
        "cells": [vars(c) for c in result.cells],
        "instances": [vars(r) for r in result.records],
        "violations": result.violations,
        "witness_files": [Path(p).name for p in result.witness_files],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def scan_to_csv(rows: list[ScanRow]) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["delta", "n", "samples", "failures", "inconclusive",
                     "failure_rate"])
    for r in rows:
        writer.writerow([r.delta, r.n, r.samples, r.failures, r.inconclusive,
                         f"{r.failure_rate:.6f}"])
    return buf.getvalue()


def scan_to_json(rows: list[ScanRow]) -> str:
    return json.dumps([vars(r) for r in rows], sort_keys=True, indent=2) + "\n"


def write_campaign_files(result: CampaignResult, out_dir: str | Path,
                         fmt: str = "csv") -> list[Path]:
    """Write the result files; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt == "csv":
        for name, text in (("cells.csv", cells_to_csv(result)),
                           ("instances.csv", instances_to_csv(result))):
            path = out / name
            path.write_text(text, encoding="utf-8")
            written.append(path)
    elif fmt == "json":
        path = out / "campaign.json"
        path.write_text(campaign_to_json(result), encoding="utf-8")
        written.append(path)
    else:
        raise ValueError(f"unknown format: {fmt!r}")
    return written
