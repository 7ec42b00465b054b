"""Experiment configs, dispatch, and report emission.

One JSON config describes one experiment; sweeps are inline ranges.
Rows are self-describing (experiment, group, params, metric, value,
wall time) and their order is deterministic, so a report written twice
with the same config and seed is byte-identical.  Wall times are
reported as 0 unless timing is requested, keeping default reports
stable across machines and thread counts.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from dataclasses import dataclass

from .chains import Region, chain_from_json, default_region, enumerate_region
from .covering import (
    DEFAULT_NODE_BUDGET,
    GroupSubset,
    cov_bounds,
    cov_exact,
    cov_greedy,
    difference_set,
    subset_from_json,
)
from .errors import ConfigInvalid, InsufficientFactors, NoSuitableLabel
from .factorization import factorize, separation_witness, verify_separation
from .groups import Group, ProductGroup, build_group
from .phi import phi_exhaustive, phi_random_search
from .support_partition import SupportPartition, support_witness, verify_support_witness

__all__ = ["ReportRow", "CSV_HEADER", "run_experiment", "emit_report", "load_config"]

CSV_HEADER = ("experiment", "group", "params", "metric", "value", "wall_ms")

EXPERIMENTS = ("cov", "theorem1", "theorem2", "phi", "tower")


@dataclass(frozen=True)
class ReportRow:
    experiment: str
    group: str
    params: str
    metric: str
    value: object
    wall_ms: int

    def to_json(self) -> dict:
        return {
            "experiment": self.experiment,
            "group": self.group,
            "params": self.params,
            "metric": self.metric,
            "value": self.value,
            "wall_ms": self.wall_ms,
        }


def _params_str(params: dict) -> str:
    return ";".join(f"{k}={params[k]}" for k in sorted(params))


def load_config(doc) -> dict:
    if not isinstance(doc, dict):
        raise ConfigInvalid(f"config must be an object, got {type(doc).__name__}")
    kind = doc.get("experiment")
    if kind not in EXPERIMENTS:
        raise ConfigInvalid(f"experiment must be one of {EXPERIMENTS}, got {kind!r}")
    return doc


def _load_group(cfg: dict, key: str = "group") -> Group:
    spec = cfg.get(key)
    if isinstance(spec, str):
        try:
            with open(spec, encoding="utf-8") as fh:
                spec = json.load(fh)
        except OSError as exc:
            raise ConfigInvalid(f"cannot read group file {cfg[key]!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigInvalid(f"group file {cfg[key]!r} is not JSON: {exc}") from exc
    if spec is None:
        raise ConfigInvalid(f"config needs a {key!r} entry")
    return build_group(spec)


def _need_seed(cfg: dict) -> int:
    seed = cfg.get("seed")
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigInvalid("this experiment samples randomly and needs an integer seed")
    return seed


class _Clock:
    """Wall clock that reads 0 unless timing was requested."""

    def __init__(self, enabled: bool):
        self.enabled = enabled

    def __enter__(self):
        self._start = time.perf_counter() if self.enabled else None
        return self

    def __exit__(self, *exc):
        return False

    @property
    def ms(self) -> int:
        if not self.enabled:
            return 0
        return int((time.perf_counter() - self._start) * 1000)


def run_experiment(cfg: dict):
    """Dispatch a validated config; yields ReportRow values in order."""
    cfg = load_config(cfg)
    kind = cfg["experiment"]
    timing = bool(cfg.get("timing", False))
    threads = int(cfg.get("threads", 1))
    if kind == "cov":
        yield from _run_cov(cfg, timing)
    elif kind == "theorem1":
        yield from _run_theorem1(cfg, timing, threads)
    elif kind == "theorem2":
        yield from _run_theorem2(cfg, timing, threads)
    elif kind == "phi":
        yield from _run_phi(cfg, timing)
    else:
        yield from _run_tower(cfg, timing)


def _run_cov(cfg: dict, timing: bool):
    G = _load_group(cfg)
    subset = cfg.get("set")
    if isinstance(subset, str):
        try:
            with open(subset, encoding="utf-8") as fh:
                subset = json.load(fh)
        except OSError as exc:
            raise ConfigInvalid(f"cannot read set file: {exc}") from exc
    if not isinstance(subset, list):
        raise ConfigInvalid("cov config needs a 'set' list or file")
    A = subset_from_json(G, subset)
    mode = cfg.get("mode", "exact")
    params = {"mode": mode, "set_size": A.size}
    if mode == "exact":
        budget = int(cfg.get("budget", DEFAULT_NODE_BUDGET))
        with _Clock(timing) as clk:
            res = cov_exact(A, budget=budget, canonical=bool(cfg.get("canonical", False)))
        p = _params_str(params)
        yield ReportRow("cov", G.label, p, "cov_exact", res.value, clk.ms)
        yield ReportRow("cov", G.label, p, "proven_optimal", int(res.proven_optimal), 0)
        yield ReportRow("cov", G.label, p, "nodes_explored", res.nodes_explored, 0)
    elif mode == "greedy":
        with _Clock(timing) as clk:
            res = cov_greedy(A)
        yield ReportRow("cov", G.label, _params_str(params), "cov_greedy", res.value, clk.ms)
    elif mode == "bounds":
        with _Clock(timing) as clk:
            lo, hi = cov_bounds(A)
        p = _params_str(params)
        yield ReportRow("cov", G.label, p, "cov_lower", lo, clk.ms)
        yield ReportRow("cov", G.label, p, "cov_upper", hi, 0)
    else:
        raise ConfigInvalid(f"cov mode must be exact|greedy|bounds, got {mode!r}")


def _region_from(cfg: dict, chain) -> Region | None:
    if chain.is_finite:
        return None
    spec = cfg.get("region", {})
    if not isinstance(spec, dict):
        raise ConfigInvalid("region must be an object")
    return default_region(
        chain,
        offset_bound=int(spec.get("offset_bound", 10)),
        max_support=spec.get("max_support"),
    )


def _run_theorem1(cfg: dict, timing: bool, threads: int):
    G = _load_group(cfg)
    chain = chain_from_json(G, cfg.get("chain", {"labels": "auto"}))
    region = _region_from(cfg, chain)
    with _Clock(timing) as clk:
        members = enumerate_region(chain, region)
        labels: dict[tuple, int] = {}
        failures = 0
        for g in members:
            f = factorize(g, chain)
            if f.product(G) != g:
                failures += 1
            s = tuple(o.offset for o in f.ordinals())
            labels[s] = labels.get(s, 0) + 1
    params = {"region_size": len(members)}
    p = _params_str(params)
    yield ReportRow("theorem1", G.label, p, "region_size", len(members), clk.ms)
    yield ReportRow("theorem1", G.label, p, "roundtrip_failures", failures, 0)
    yield ReportRow("theorem1", G.label, p, "cells_nonempty", len(labels), 0)
    yield ReportRow(
        "theorem1", G.label, p, "label_max_length", max(len(s) for s in labels), 0
    )
    trials = int(cfg.get("separation_trials", 0))
    if trials > 0:
        rng = random.Random(_need_seed(cfg))
        k_size = int(cfg.get("k_size", 3))
        label_pool = sorted(labels)
        non_identity = [g for g in members if g != G.identity]
        passed = 0
        unavailable = 0
        for _ in range(trials):
            K = [non_identity[rng.randrange(len(non_identity))] for _ in range(k_size)]
            s = label_pool[rng.randrange(len(label_pool))]
            try:
                h = separation_witness(K, s, chain)
            except NoSuitableLabel:
                unavailable += 1
                continue
            rep = verify_separation(K, s, h, chain, region, threads=threads)
            passed += int(rep.passed)
        yield ReportRow(
            "theorem1", G.label, p, "separation_pass", passed, 0
        )
        yield ReportRow(
            "theorem1", G.label, p, "separation_unavailable", unavailable, 0
        )
        yield ReportRow(
            "theorem1", G.label, p, "separation_fail", trials - passed - unavailable, 0
        )


def _run_theorem2(cfg: dict, timing: bool, threads: int):
    G = _load_group(cfg)
    part = SupportPartition(G)
    if part.positions is None:
        raise ConfigInvalid("theorem2 experiment needs a finite product group")
    max_n = int(cfg.get("max_n", min(3, part.positions)))
    per_cell_cov = bool(cfg.get("cov_per_cell", False))
    budget = int(cfg.get("budget", DEFAULT_NODE_BUDGET))
    for n in range(max_n + 1):
        params = {"n": n}
        p = _params_str(params)
        with _Clock(timing) as clk:
            cell = part.cell(n)
            if not cell:
                yield ReportRow("theorem2", G.label, p, "cell_size", 0, clk.ms)
                continue
            A = GroupSubset.from_elements(G, cell)
            diff = difference_set(A)
            lo, hi = cov_bounds(diff)
        yield ReportRow("theorem2", G.label, p, "cell_size", A.size, clk.ms)
        yield ReportRow("theorem2", G.label, p, "diffset_size", diff.size, 0)
        yield ReportRow("theorem2", G.label, p, "cov_lower", lo, 0)
        yield ReportRow("theorem2", G.label, p, "cov_upper", hi, 0)
        if per_cell_cov:
            res = cov_exact(diff, budget=budget)
            yield ReportRow("theorem2", G.label, p, "cov_exact", res.value, 0)
            yield ReportRow("theorem2", G.label, p, "proven_optimal", int(res.proven_optimal), 0)
    trials = int(cfg.get("witness_trials", 0))
    if trials > 0:
        rng = random.Random(_need_seed(cfg))
        k_size = int(cfg.get("k_size", 4))
        n = int(cfg.get("witness_n", 1))
        passed = 0
        unavailable = 0
        pool_positions = list(range(max(1, part.positions - (2 * n + 1))))
        for _ in range(trials):
            K = []
            for _ in range(1 + rng.randrange(k_size)):
                coords = [f.identity for f in G.factors]
                for i in pool_positions:
                    f = G.factors[i]
                    if rng.random() < 0.5:
                        values = [v for v in f.elements() if v != f.identity]
                        coords[i] = values[rng.randrange(len(values))]
                K.append(G.pack(coords))
            try:
                h = support_witness(G, K, n)
            except InsufficientFactors:
                unavailable += 1
                continue
            rep = verify_support_witness(G, K, n, h, threads=threads)
            passed += int(rep.passed)
        p = _params_str({"n": n, "trials": trials})
        yield ReportRow("theorem2", G.label, p, "witness_pass", passed, 0)
        yield ReportRow("theorem2", G.label, p, "witness_unavailable", unavailable, 0)
        yield ReportRow("theorem2", G.label, p, "witness_fail", trials - passed - unavailable, 0)


def _run_phi(cfg: dict, timing: bool):
    G = _load_group(cfg)
    n = cfg.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ConfigInvalid("phi config needs a positive integer 'n'")
    mode = cfg.get("mode", "exhaustive")
    with _Clock(timing) as clk:
        if mode == "exhaustive":
            report = phi_exhaustive(G, n, budget=cfg.get("budget"))
        elif mode == "random":
            report = phi_random_search(
                G, n, iterations=int(cfg.get("iterations", 100)), seed=_need_seed(cfg)
            )
        else:
            raise ConfigInvalid(f"phi mode must be exhaustive|random, got {mode!r}")
    params = {"mode": mode, "n": n}
    if report.seed is not None:
        params["seed"] = report.seed
    p = _params_str(params)
    yield ReportRow("phi", G.label, p, "phi_value", report.phi_value, clk.ms)
    yield ReportRow("phi", G.label, p, "partitions_examined", report.partitions_examined, 0)
    yield ReportRow("phi", G.label, p, "complete", int(report.complete), 0)
    yield ReportRow("phi", G.label, p, "exceeds_n", int(report.exceeds_n), 0)


def _run_tower(cfg: dict, timing: bool):
    """Sweep cov(A_n A_n^{-1}) over powers of a base group."""
    family = cfg.get("family", {})
    if not isinstance(family, dict):
        raise ConfigInvalid("tower config needs a 'family' object")
    base_spec = family.get("base", {"kind": "cyclic", "order": 2})
    m_range = family.get("m_range")
    if (
        not isinstance(m_range, list)
        or len(m_range) != 2
        or not all(isinstance(x, int) and not isinstance(x, bool) for x in m_range)
        or m_range[0] < 1
        or m_range[0] > m_range[1]
    ):
        raise ConfigInvalid("family.m_range must be [lo, hi] with 1 <= lo <= hi")
    n_values = cfg.get("n_values", [1])
    if not isinstance(n_values, list) or not n_values:
        raise ConfigInvalid("n_values must be a nonempty list")
    budget = int(cfg.get("budget", DEFAULT_NODE_BUDGET))
    for m in range(m_range[0], m_range[1] + 1):
        G = ProductGroup([build_group(base_spec) for _ in range(m)])
        part = SupportPartition(G)
        for n in n_values:
            if not isinstance(n, int) or isinstance(n, bool) or n < 0 or n > m:
                continue
            params = {"m": m, "n": n}
            p = _params_str(params)
            with _Clock(timing) as clk:
                cell = part.cell(n)
                diff = difference_set(GroupSubset.from_elements(G, cell))
                res = cov_exact(diff, budget=budget)
            yield ReportRow("tower", G.label, p, "diffset_size", diff.size, 0)
            yield ReportRow("tower", G.label, p, "cov_exact", res.value, clk.ms)
            yield ReportRow("tower", G.label, p, "proven_optimal", int(res.proven_optimal), 0)


def emit_report(rows, fmt: str, path: str | None, allow_empty: bool = False) -> str:
    """Serialize rows as CSV or JSON; returns the text, writes if asked."""
    rows = list(rows)
    if not rows and not allow_empty:
        raise ConfigInvalid("refusing to write an empty report without allow_empty")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow([r.experiment, r.group, r.params, r.metric, r.value, r.wall_ms])
        text = buf.getvalue()
    elif fmt == "json":
        text = json.dumps([r.to_json() for r in rows], indent=2, sort_keys=True) + "\n"
    else:
        raise ConfigInvalid(f"format must be csv or json, got {fmt!r}")
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
