"""Experiment orchestration and the file formats shared by the CLI.

Every command is described by an :class:`ExperimentConfig` and executed by
:func:`run`, which returns the process exit status. Output depends only on the
config: worker threads return results keyed by trial index and the
orchestrator writes them in index order.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field

from . import bounds as bnd
from .census import NONBASE, c3_census, census_monte_carlo, exact_c3_expectation_n1
from .errors import OswError, ParameterError
from .geometry import max_edge_sphere_report
from .octagraph import build_octahedral_graph
from .oswmodel import sample_osw
from .rng import check_seed
from .routing import DELIVERED, greedy_route, max_phase, phase_decomposition, routing_experiment

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RUNTIME = 2

ROUTING_SCHEMA = "oswnet-routing/1"
CENSUS_SCHEMA = "oswnet-census/1"
CENSUS_COLUMNS = ["sss_undirected", *NONBASE, "nonbase_total", "rooted_fraction"]
COMMANDS = ("generate", "route", "census", "sphere-check", "bounds", "experiment")

DEFAULT_NS = (1, 2, 4, 8, 16, 32)


@dataclass
class ExperimentConfig:
    command: str
    ns: list[int] = field(default_factory=list)
    seed: int = 0
    trials: int = 1000
    lam: float = 1.0
    r: float | None = None
    osw: bool = False
    src: tuple[int, int, int] | None = None
    dst: tuple[int, int, int] | None = None
    exact_n1: bool = False
    experiment: str | None = None
    csv_path: str | None = None
    json_path: str | None = None
    threads: int = 1
    strict: bool = False

    @property
    def n(self) -> int:
        return self.ns[0]

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ParameterError(f"unknown command {self.command!r}")
        needs_n = not (self.command == "census" and self.exact_n1)
        if needs_n and not self.ns:
            raise ParameterError("--n is required")
        for n in self.ns:
            if n < 1:
                raise ParameterError(f"size parameter n must be a positive integer, got {n}")
        if self.command not in ("experiment",) and len(self.ns) > 1:
            raise ParameterError(f"{self.command} takes a single --n")
        check_seed(self.seed)
        if self.trials < 1:
            raise ParameterError(f"trials must be positive, got {self.trials}")
        if self.threads < 1:
            raise ParameterError(f"threads must be positive, got {self.threads}")
        if not self.lam > 0:
            raise ParameterError(f"lambda must be positive, got {self.lam}")
        if self.r is not None and not self.r > 0:
            raise ParameterError(f"sphere radius must be positive, got {self.r}")
        if self.command == "route" and (self.src is None or self.dst is None):
            raise ParameterError("route needs --src and --dst")
        if self.command == "experiment" and self.experiment not in ("routing", "census"):
            raise ParameterError(f"unknown experiment {self.experiment!r}")


# -- output helpers -------------------------------------------------------------


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=False)


def _emit(config: ExperimentConfig, text: str, out) -> None:
    if config.json_path:
        with open(config.json_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        out.write(text + "\n")


def append_csv(path: str, schema: str, header: list[str], rows: list[list]) -> None:
    """Append rows; a new or empty file first gets the schema line and header.

    Appending to a file with a different header is refused.
    """
    fresh = not os.path.exists(path) or os.path.getsize(path) == 0
    if not fresh:
        with open(path, newline="", encoding="utf-8") as fh:
            first = fh.readline().rstrip("\r\n")
            existing = next(csv.reader([fh.readline()]), [])
        if first != f"# {schema}" or existing != header:
            raise ParameterError(f"{path} has a different CSV schema; refusing to append")
    with open(path, "a", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if fresh:
            fh.write(f"# {schema}\n")
            w.writerow(header)
        w.writerows(rows)


def routing_header(k: int) -> list[str]:
    return ["n", "seed", "trial", "src", "dst", "forwards", "outcome"] + [f"phase{j}" for j in range(k + 1)]


def census_header(with_trial: bool) -> list[str]:
    return ["n", "seed"] + (["trial"] if with_trial else []) + CENSUS_COLUMNS


def fmt_vertex(v) -> str:
    return ",".join(str(int(x)) for x in v)


def parse_vertex(text: str) -> tuple[int, int, int]:
    parts = [p.strip() for p in text.strip().strip("()[]").split(",")]
    if len(parts) != 3:
        raise ParameterError(f"expected three comma-separated integers, got {text!r}")
    try:
        return tuple(int(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise ParameterError(f"expected three comma-separated integers, got {text!r}") from None


def parse_n_list(text: str) -> list[int]:
    try:
        return [int(p) for p in str(text).split(",") if p.strip()]
    except ValueError:
        raise ParameterError(f"--n expects integers, got {text!r}") from None


# -- commands -------------------------------------------------------------------


def _generate(config: ExperimentConfig, out) -> int:
    G = build_octahedral_graph(config.n)
    doc = {"n": G.n, "vertices": [list(v) for v in G.vertices], "edges": [list(e) for e in G.edges()]}
    if config.osw:
        osw = sample_osw(G, config.seed)
        doc["seed"] = config.seed
        doc["long_range"] = [[u, v, d] for u, v, d in osw.long_range_edges()]
    _emit(config, dump_json(doc), out)
    return EXIT_OK


def _route(config: ExperimentConfig, out) -> int:
    G = build_octahedral_graph(config.n)
    osw = sample_osw(G, config.seed)
    path = greedy_route(osw, config.src, config.dst)
    doc = {"n": G.n, "seed": config.seed, "src": list(config.src), "dst": list(config.dst)}
    doc.update(path.to_dict())
    doc["phases"] = phase_decomposition(osw, path, config.dst).counts
    _emit(config, dump_json(doc), out)
    if config.strict and path.outcome != DELIVERED:
        log.error("route from %s to %s ended with %s", config.src, config.dst, path.outcome)
        return EXIT_RUNTIME
    return EXIT_OK


def _census(config: ExperimentConfig, out) -> int:
    if config.exact_n1:
        res = exact_c3_expectation_n1()
        doc = res.to_dict()
        doc["expected_nonbase_c3_float"] = float(res.expected_nonbase)
        doc["pr_eu_float"] = float(res.pr_eu[0])
        _emit(config, dump_json(doc), out)
        return EXIT_OK
    G = build_octahedral_graph(config.n)
    rep = c3_census(sample_osw(G, config.seed))
    doc = {
        "n": G.n,
        "seed": config.seed,
        "counts": rep.counts,
        "base_undirected": rep.base_undirected,
        "nonbase_total": rep.nonbase_total,
        "rooted_fraction": rep.rooted_indicator_fraction,
    }
    if config.csv_path:
        append_csv(config.csv_path, CENSUS_SCHEMA, census_header(False), [[G.n, config.seed, *rep.row()]])
    _emit(config, dump_json(doc), out)
    return EXIT_OK


def _sphere_check(config: ExperimentConfig, out) -> int:
    G = build_octahedral_graph(config.n)
    rep = max_edge_sphere_report(G, config.r, config.lam)
    doc = rep.to_dict()
    doc["within_lambda"] = rep.max_distance <= rep.lam + 1e-9
    _emit(config, dump_json(doc), out)
    return EXIT_OK


def _bounds(config: ExperimentConfig, out) -> int:
    _emit(config, dump_json(bnd.bounds_report(config.n).to_dict()), out)
    return EXIT_OK


def _routing_sweep(config: ExperimentConfig, out) -> int:
    k = max(max_phase(n) for n in config.ns)
    summaries = []
    failed = False
    for n in config.ns:
        stats = routing_experiment(n, config.trials, config.seed, threads=config.threads)
        if config.csv_path:
            rows = [
                [r.n, r.seed, r.trial, fmt_vertex(r.src), fmt_vertex(r.dst), r.forwards, r.outcome]
                + r.phases
                + [0] * (k + 1 - len(r.phases))
                for r in stats.rows
            ]
            append_csv(config.csv_path, ROUTING_SCHEMA, routing_header(k), rows)
        s = stats.summary()
        s["routing_upper"] = bnd.routing_upper(n)
        s["within_routing_upper"] = stats.mean_forwards <= s["routing_upper"]
        s["phase_bound"] = bnd.phase_bound(n)
        s["phases_within_bound"] = all(m <= s["phase_bound"] for m in stats.phase_means)
        s["mean_over_ln2n"] = stats.mean_forwards / math.log(n) ** 2 if n > 1 else None
        summaries.append(s)
        failed |= stats.delivery_rate < 1.0
    _emit(config, dump_json({"experiment": "routing", "schema": ROUTING_SCHEMA, "results": summaries}), out)
    if config.strict and failed:
        return EXIT_RUNTIME
    return EXIT_OK


def _census_sweep(config: ExperimentConfig, out) -> int:
    summaries = []
    for n in config.ns:
        stats = census_monte_carlo(n, config.trials, config.seed, threads=config.threads)
        if config.csv_path:
            rows = []
            for t in range(stats.samples):
                cls = stats.class_counts[t]
                rows.append(
                    [n, config.seed, t, int(cls[0]) // 2, *(int(c) for c in cls[1:]),
                     int(stats.nonbase[t]), float(stats.rooted_fraction[t])]
                )
            append_csv(config.csv_path, CENSUS_SCHEMA, census_header(True), rows)
        b = bnd.bounds_report(n)
        s = stats.summary()
        s["event_bounds"] = {f"E{i + 1}": v for i, v in enumerate(b.events)}
        s["events_within_bounds"] = all(p < v for p, v in zip(stats.pr_event, b.events))
        s["eu_bound"] = b.eu_bound
        s["within_eu_bound"] = stats.pr_eu < b.eu_bound
        s["nonbase_per_n2"] = stats.mean_nonbase / n**2
        s["total_per_n2"] = (stats.base_undirected + stats.mean_nonbase) / n**2
        summaries.append(s)
    _emit(config, dump_json({"experiment": "census", "schema": CENSUS_SCHEMA, "results": summaries}), out)
    return EXIT_OK


_DISPATCH = {
    "generate": _generate,
    "route": _route,
    "census": _census,
    "sphere-check": _sphere_check,
    "bounds": _bounds,
}


def run(config: ExperimentConfig, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        config.validate()
        if config.command == "experiment":
            handler = _routing_sweep if config.experiment == "routing" else _census_sweep
        else:
            handler = _DISPATCH[config.command]
        # buffer so that a failed command leaves no partial stdout
        buf = io.StringIO()
        status = handler(config, buf)
        out.write(buf.getvalue())
        return status
    except (OswError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        log.exception("command failed")
        err.write(f"runtime failure: {exc}\n")
        return EXIT_RUNTIME
