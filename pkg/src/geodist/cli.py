"""Command-line interface.

Subcommands::

    geodist compute  build a measure matrix and its distance matrix
    geodist verify   run metric / geodetic / transitional / oracle audits
    geodist oracle   recompute the measure by brute force and diff

Exit status: 0 when every requested audit passes, 2 when an audit fails,
1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import measures as ms
from .caps import Caps
from .distances import (DEFAULT_TOL, AuditReport, Check, geodetic_report, log_distance,
                        metric_report, plain_distance)
from .errors import GeodistError, ParseError
from .graph import EITHER, SEPARATION_MODES, graph_to_json, parse_graph
from .io import (SCHEMA, distance_to_json, matrix_to_csv, measure_from_json, measure_to_json,
                 report_to_csv)
from .linalg import BACKENDS, FLOAT, RATIONAL, as_backend
from .oracle import (enumerate_forests, path_tau_bruteforce, reliability_ie_matrix, route_series,
                     transitional_audit)

EXIT_OK, EXIT_USAGE, EXIT_AUDIT = 0, 1, 2

MEASURES = ("forest-in", "forest-out", "route", "path-tau", "reliability", "reliability-mc")


class UsageError(GeodistError):
    pass


@dataclasses.dataclass
class RunConfig:
    command: str
    input: Optional[str] = None
    format: Optional[str] = None
    undirected: bool = False
    measure_input: Optional[str] = None
    measure: Optional[str] = None
    tau: Optional[Fraction] = None
    epsilon: Optional[Fraction] = None
    normalization: str = "raw"
    backend: str = FLOAT
    transform: str = "log"  # log | plain | none
    metric: bool = False
    geodetic: Optional[str] = None
    transitional: bool = False
    oracle_compare: bool = False
    tol: float = DEFAULT_TOL
    output: str = "json"
    out: Optional[str] = None
    samples: Optional[int] = None
    seed: int = 0
    terms: int = 400
    error_json: bool = False
    caps: Caps = dataclasses.field(default_factory=Caps)

    def validate(self):
        if self.measure_input:
            if self.command != "compute":
                raise UsageError("--measure-input is only accepted by 'compute'")
            if self.input or self.measure:
                raise UsageError("--measure-input excludes --input and --measure")
            return self
        if not self.input:
            raise UsageError("--input is required")
        if not self.measure:
            raise UsageError("--measure is required")
        if self.measure == "path-tau" and self.tau is None:
            raise UsageError("--tau is required for --measure path-tau")
        if self.measure == "route" and self.epsilon is None:
            raise UsageError("--epsilon is required for --measure route")
        if self.measure == "reliability-mc":
            if self.samples is None:
                raise UsageError("--samples is required for --measure reliability-mc")
            if self.backend != FLOAT:
                raise UsageError("Monte Carlo reliability only supports the float backend")
        if self.tau is not None and self.measure != "path-tau":
            raise UsageError("--tau only applies to --measure path-tau")
        if self.epsilon is not None and self.measure != "route":
            raise UsageError("--epsilon only applies to --measure route")
        return self


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser():
    parser = _Parser(prog="geodist", description="Transitional measures and graph-geodetic distances.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--input", help="graph file (edge list or JSON)")
    common.add_argument("--format", choices=("edge-list", "json"),
                        help="input format (default: from file extension)")
    common.add_argument("--undirected", action="store_true", help="treat each input arc as an undirected edge")
    common.add_argument("--measure", choices=MEASURES)
    common.add_argument("--tau", type=_fraction)
    common.add_argument("--epsilon", type=_fraction)
    common.add_argument("--normalization", choices=("raw", "kernel"), default="raw")
    common.add_argument("--backend", choices=BACKENDS, default=FLOAT)
    common.add_argument("--samples", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--error-json", action="store_true", help="report errors as JSON on stderr")
    tr = common.add_mutually_exclusive_group()
    tr.add_argument("--log", dest="transform", action="store_const", const="log",
                    help="logarithmic distance (default)")
    tr.add_argument("--plain", dest="transform", action="store_const", const="plain",
                    help="distance on the measure itself, without logarithm")
    tr.add_argument("--no-distance", dest="transform", action="store_const", const="none")

    p = sub.add_parser("compute", parents=[common], help="compute a measure and its distance")
    p.add_argument("--measure-input", help="JSON measure document to transform instead of a graph")

    p = sub.add_parser("verify", parents=[common], help="audit a measure and its distance")
    p.add_argument("--metric", action="store_true")
    p.add_argument("--geodetic", choices=SEPARATION_MODES)
    p.add_argument("--transitional", action="store_true")
    p.add_argument("--oracle-compare", action="store_true")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("oracle", parents=[common], help="diff against brute-force recomputation")
    p.add_argument("--terms", type=int, default=400, help="route series terms")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    return parser


def config_from_args(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    values = {k: v for k, v in vars(ns).items() if v is not None}
    values["transform"] = values.get("transform", "log")
    cfg = RunConfig(**values, caps=Caps.from_env())
    if cfg.command == "verify" and not (cfg.metric or cfg.geodetic or cfg.transitional
                                        or cfg.oracle_compare):
        cfg.metric, cfg.geodetic, cfg.transitional = True, EITHER, True
    return cfg.validate()


# -- steps ---------------------------------------------------------------------

def load_graph(cfg: RunConfig):
    path = Path(cfg.input)
    fmt = cfg.format or ("json" if path.suffix.lower() == ".json" else "edge-list")
    return parse_graph(path.read_text(), fmt, undirected=cfg.undirected)


def build_measure(cfg: RunConfig, g):
    kind, backend = cfg.measure, cfg.backend
    if kind in ("forest-in", "forest-out"):
        return ms.forest_matrix(g, kind.split("-")[1], cfg.normalization, backend)
    if kind == "route":
        return ms.route_matrix(g, cfg.epsilon, backend)
    if kind == "path-tau":
        return ms.path_tau_matrix(g, cfg.tau, backend, cfg.caps)
    if kind == "reliability":
        return ms.reliability_exact(g, backend, cfg.caps)
    return ms.reliability_mc(g, cfg.samples, cfg.seed)


def build_distance(cfg: RunConfig, s):
    if cfg.transform == "log":
        return log_distance(s)
    if cfg.transform == "plain":
        return plain_distance(s)
    return None


def oracle_report(cfg: RunConfig, g, s) -> AuditReport:
    """Entrywise comparison of ``s`` with an independent brute-force recomputation."""
    backend = s.backend
    exact = backend == RATIONAL
    rep = AuditReport("oracle", cfg.tol, exact)
    n = s.n
    kind = cfg.measure
    bound = None
    if kind in ("forest-in", "forest-out"):
        en = enumerate_forests(g, kind.split("-")[1], backend, cfg.caps)
        ref = en.matrix if s.normalization == "raw" else en.matrix / en.f
    elif kind == "route":
        ref, bound = route_series(g, cfg.epsilon, cfg.terms, backend)
    elif kind == "path-tau":
        ref = path_tau_bruteforce(g, cfg.tau, backend, cfg.caps)
    elif kind == "reliability":
        ref = as_backend(reliability_ie_matrix(g, RATIONAL, cfg.caps), backend)
    else:
        ref = ms.reliability_exact(g, FLOAT, cfg.caps).matrix
    for i in range(n):
        for j in range(n):
            a, b = s.matrix[i, j], ref[i, j]
            if kind == "route":
                # partial sums undershoot R by at most the tail bound
                ok = b <= a + cfg.tol * max(abs(a), 1) and a - b <= bound + cfg.tol * max(abs(a), 1)
            elif kind == "reliability-mc":
                ok = abs(a - b) <= 4 * s.stderr[i, j] + 1e-12
            elif exact:
                ok = a == b
            else:
                ok = abs(a - b) <= cfg.tol * max(abs(a), abs(b), 1)
            rep.add(Check((i + 1, j + 1), "oracle", a, b, bool(ok)))
    return rep


def _emit(cfg: RunConfig, doc, reports, s, d):
    if cfg.output == "json":
        text = json.dumps(doc, indent=2) + "\n"
    else:
        parts = [matrix_to_csv(s.matrix, f"measure {s.kind}")]
        if d is not None:
            parts.append(matrix_to_csv(d.matrix, f"distance {d.transform}"))
        parts.extend(report_to_csv(r) for r in reports)
        text = "\n".join(parts)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> int:
    if cfg.measure_input:
        s = measure_from_json(json.loads(Path(cfg.measure_input).read_text()))
        g = None
    else:
        g = load_graph(cfg)
        s = build_measure(cfg, g)
    doc = {"schema": SCHEMA, "command": cfg.command}
    if g is not None:
        doc["graph"] = graph_to_json(g)
    doc["measure"] = measure_to_json(s)
    reports = []

    if cfg.command == "oracle":
        reports.append(oracle_report(cfg, g, s))
        d = None
    else:
        d = build_distance(cfg, s)
        if d is not None:
            doc["distance"] = distance_to_json(d)
        if cfg.command == "verify":
            if cfg.transitional:
                reports.append(transitional_audit(s, g, tol=cfg.tol, keep_passing=False))
            if cfg.metric and d is not None:
                reports.append(metric_report(d, cfg.tol, keep_passing=False))
            if cfg.geodetic and d is not None:
                reports.append(geodetic_report(d, g, cfg.geodetic, cfg.tol, keep_passing=False))
            if cfg.oracle_compare:
                reports.append(oracle_report(cfg, g, s))
    if reports:
        doc["audits"] = [r.to_dict() for r in reports]
        doc["ok"] = all(r.ok for r in reports)
    _emit(cfg, doc, reports, s, d)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_AUDIT


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    error_json = "--error-json" in argv
    try:
        cfg = config_from_args(argv)
        return run(cfg)
    except (GeodistError, OSError, json.JSONDecodeError, ValueError) as exc:
        if error_json:
            err = {"schema": SCHEMA, "error": {"type": type(exc).__name__, "message": str(exc)}}
            if isinstance(exc, ParseError) and exc.line is not None:
                err["error"]["line"] = exc.line
            sys.stderr.write(json.dumps(err) + "\n")
        else:
            sys.stderr.write(f"geodist: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
