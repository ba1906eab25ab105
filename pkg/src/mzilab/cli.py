"""Command-line frontend.

Subcommands
-----------
scan-h        tabulate the sequential functional h (or its general-input
              variant) over angle grids, or run a named preset
parallel      multi-state overlap presets (fig3b, fig3c, k5-equator)
graph         vertices / cycles / membership / distance queries on an
              event graph given as JSON
interrogate   analytic / scan / mc reports for the interrogation task
scenario      build an operational scenario from a graph, or verify the
              interferometer realization of its mixture equivalences

Angles are decimal radians or fractions like ``3*pi/4``; numeric CSV output
uses 12 significant digits; identical invocations (seed included) write
byte-identical files.  ``--plot PATH`` (or bare ``--plot`` next to a file
``--out``) renders a figure of the scan alongside the delimited output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from pathlib import Path

import numpy as np

from . import interrogation, scans
from .eventgraph import (
    classical_vertices,
    enumerate_cycles,
    graph_from_document,
    named_functionals,
    weights_from_document,
)
from .geometry import l1_distance, membership, violation_lower_bound
from .optics import sequential_triple
from .scenario import (
    build_lsss,
    perp_state,
    scenario_document,
    verify_operational_equivalences,
)

_ANGLE_RE = re.compile(r"([+-]?[\d.]*)\s*\*?\s*pi(?:\s*/\s*([\d.]+))?")


def parse_angle(text):
    """Parse a decimal-radian or 'a*pi/b' angle string."""
    s = str(text).strip().lower()
    try:
        return float(s)
    except ValueError:
        pass
    match = _ANGLE_RE.fullmatch(s)
    if not match:
        raise ValueError(f"cannot parse angle {text!r} (use radians or 'a*pi/b')")
    a_text, b_text = match.groups()
    if a_text in ("", "+"):
        a = 1.0
    elif a_text == "-":
        a = -1.0
    else:
        a = float(a_text)
    return a * math.pi / (float(b_text) if b_text else 1.0)


def parse_axis(text):
    """Parse an axis argument: a fixed angle or a 'start:stop' range."""
    s = str(text).strip()
    if ":" in s:
        lo, hi = s.split(":", 1)
        return (parse_angle(lo), parse_angle(hi))
    return parse_angle(s)


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".12g")


def _json_ready(value):
    if isinstance(value, dict):
        return {k: _json_ready(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(format(float(value), ".12g"))
    return value


class _Output:
    """Destination for the delimited report: a file path or stdout."""

    def __init__(self, out):
        self.path = None if out in (None, "-") else Path(out)

    def write_text(self, text):
        if self.path is None:
            sys.stdout.write(text)
        else:
            self.path.write_text(text, encoding="utf-8")

    def info_stream(self):
        # keep stdout clean when the table itself goes to stdout
        return sys.stderr if self.path is None else sys.stdout

    def sibling(self, suffix):
        if self.path is None:
            return None
        return self.path.with_suffix(suffix)


def _render_table(columns, rows, summary, fmt):
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])
        return buffer.getvalue()
    document = {
        "columns": list(columns),
        "rows": [[_json_ready(x) for x in row] for row in rows],
        "summary": _json_ready(summary or {}),
    }
    return json.dumps(document, indent=2) + "\n"


def _emit(columns, rows, summary, args, summary_line=None):
    output = _Output(args.out)
    output.write_text(_render_table(columns, rows, summary, args.format))
    if summary_line:
        print(summary_line, file=output.info_stream())
    return output


def _plot_path(args, output):
    plot = getattr(args, "plot", None)
    if plot is None:
        return None
    if plot != "auto":
        return Path(plot)
    sibling = output.sibling(".png")
    if sibling is None:
        raise ValueError("--plot without a path requires --out FILE to derive the image name")
    return sibling


def _add_output_options(parser, plot=False):
    parser.add_argument("--out", default="-", help="output file (default: stdout)")
    parser.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format (default csv)"
    )
    if plot:
        parser.add_argument(
            "--plot",
            nargs="?",
            const="auto",
            default=None,
            metavar="PATH",
            help="render a figure (default: alongside --out with .png suffix)",
        )


def _load_json_argument(text, what):
    candidate = Path(text)
    try:
        if candidate.is_file():
            raw = candidate.read_text(encoding="utf-8")
        else:
            raw = text
        return json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot parse {what} ({exc})") from exc


def _scan_summary_line(summary):
    value_key = next(k for k in summary if k.startswith("max_") and k != "max_violation")
    parts = [f"{value_key.removeprefix('max_')} max = {_fmt(summary[value_key])}"]
    for key in summary:
        if key.startswith("argmax_"):
            parts.append(f"{key.removeprefix('argmax_')} = {_fmt(summary[key])}")
    parts.append(f"max violation = {_fmt(summary['max_violation'])}")
    if "violating_fraction" in summary:
        parts.append(f"violating fraction = {_fmt(summary['violating_fraction'])}")
    return "; ".join(parts)


def _cmd_scan_h(args):
    if args.preset:
        result = scans.scan_h_preset(args.preset, step=args.step)
    else:
        if args.theta1 is None or args.phi1 is None:
            raise ValueError("scan-h needs --theta1 and --phi1 (or --preset)")
        theta0 = parse_angle(args.theta0) if args.theta0 is not None else None
        phi0 = parse_angle(args.phi0) if args.phi0 is not None else None
        result = scans.scan_h(
            parse_axis(args.theta1),
            parse_axis(args.phi1),
            args.step or 0.01,
            theta0=theta0,
            phi0=phi0,
        )
    output = _emit(result.columns, result.rows, result.summary, args, _scan_summary_line(result.summary))
    path = _plot_path(args, output)
    if path is not None:
        from . import plots

        plots.render_scan(result, path)
    return 0


def _cmd_parallel(args):
    result = scans.parallel_preset(args.preset, step=args.step)
    output = _emit(result.columns, result.rows, result.summary, args, _scan_summary_line(result.summary))
    path = _plot_path(args, output)
    if path is not None:
        from . import plots

        plots.render_scan(result, path)
    return 0


def _load_graph(args):
    return graph_from_document(_load_json_argument(args.graph, "graph document"))


def _cmd_graph(args):
    graph = _load_graph(args)
    if args.query == "vertices":
        vertex_set = classical_vertices(graph)
        columns = [f"{i}-{j}" for i, j in vertex_set.edges]
        rows = vertex_set.as_array()
        summary = {"count": len(vertex_set)}
        _emit(columns, rows, summary, args, f"classical vertices: {len(vertex_set)}")
        return 0
    if args.query == "cycles":
        cycles = enumerate_cycles(graph)
        columns = ("index", "length", "edges")
        rows = [
            (k, len(cycle), " ".join(f"{i}-{j}" for i, j in cycle))
            for k, cycle in enumerate(cycles)
        ]
        if args.format == "json":
            document = {
                "count": len(cycles),
                "cycles": [[f"{i}-{j}" for i, j in cycle] for cycle in cycles],
            }
            _Output(args.out).write_text(json.dumps(document, indent=2) + "\n")
        else:
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(columns)
            writer.writerows(rows)
            _Output(args.out).write_text(buffer.getvalue())
        print(f"cycles: {len(cycles)}", file=_Output(args.out).info_stream())
        return 0
    if args.weights is None:
        raise ValueError(f"graph {args.query} requires --weights")
    weights = weights_from_document(_load_json_argument(args.weights, "weights"), graph)
    vertex_set = classical_vertices(graph)
    if args.query == "membership":
        functionals = named_functionals(graph)
        result = membership(weights, vertex_set, functionals=functionals)
        lower = max(violation_lower_bound(f, weights) for f in functionals)
        columns = ("inside", "distance_lower_bound")
        rows = [(result.inside, lower)]
        summary = {
            "inside": bool(result.inside),
            "distance_lower_bound": lower,
            "max_violation_found": result.max_violation_found,
        }
        _emit(columns, rows, summary, args, f"inside = {_fmt(result.inside)}")
        return 0
    if args.query == "distance":
        result = l1_distance(weights, vertex_set)
        columns = ["distance"] + [f"near_{i}-{j}" for i, j in vertex_set.edges]
        rows = [
            [result.distance] + [result.nearest_point[e] for e in vertex_set.edges]
        ]
        summary = {
            "distance": result.distance,
            "nearest_point": {f"{i}-{j}": result.nearest_point[(i, j)] for i, j in vertex_set.edges},
        }
        _emit(columns, rows, summary, args, f"distance = {_fmt(result.distance)}")
        return 0
    raise ValueError(f"unknown graph query {args.query!r}")


def _cmd_interrogate(args):
    if args.mode == "analytic":
        if args.r is None:
            raise ValueError("interrogate analytic requires --r")
        report = interrogation.analytic_report(args.r)
        columns = ("r", "p_succ", "p_bomb", "eta", "eta_nc", "gap")
        rows = [(report.r_theta0, report.p_succ, report.p_bomb, report.eta, report.eta_nc, report.gap)]
        _emit(columns, rows, {"gap": report.gap}, args, f"eta = {_fmt(report.eta)}; gap = {_fmt(report.gap)}")
        return 0
    if args.mode == "scan":
        scan = interrogation.advantage_scan(args.step or 1e-3)
        summary = {"max_gap": scan.max_gap, "argmax_r": scan.argmax_r}
        output = _emit(
            ("r", "eta", "eta_nc", "gap"),
            scan.table,
            summary,
            args,
            f"max gap = {_fmt(scan.max_gap)} at r = {_fmt(scan.argmax_r)}",
        )
        path = _plot_path(args, output)
        if path is not None:
            from . import plots

            plots.render_advantage(scan.table, path)
        return 0
    if args.mode == "mc":
        if args.theta is None:
            raise ValueError("interrogate mc requires --theta")
        report = interrogation.simulate(parse_angle(args.theta), args.trials, args.seed)
        columns = (
            "theta", "trials", "seed", "n_bomb", "n_succ",
            "p_bomb", "p_succ", "eta", "se_eta", "degenerate",
        )
        rows = [(
            report.theta, report.trials, report.seed, report.n_bomb, report.n_succ,
            report.p_bomb, report.p_succ, report.eta, report.se_eta, report.degenerate,
        )]
        summary = {
            "seed": report.seed,
            "eta": None if report.degenerate else report.eta,
            "se_eta": None if report.degenerate else report.se_eta,
        }
        _emit(columns, rows, summary, args, f"seed = {report.seed}; eta = {_fmt(report.eta)}")
        return 0
    raise ValueError(f"unknown interrogate mode {args.mode!r}")


def _cmd_scenario(args):
    if args.action == "build":
        if args.graph is None:
            raise ValueError("scenario build requires --graph")
        graph = _load_graph(args)
        epsilons = args.epsilon
        if args.epsilons is not None:
            mapping = _load_json_argument(args.epsilons, "epsilons")
            epsilons = {int(k): float(v) for k, v in mapping.items()}
        built = build_lsss(graph, epsilons=epsilons, merged=args.merged)
        document = scenario_document(built)
        _Output(args.out).write_text(json.dumps(_json_ready(document), indent=2) + "\n")
        counts = built.signature()
        print(
            f"preparations = {counts[0]}; measurements = {counts[1]}; "
            f"equivalences = {counts[3]}",
            file=_Output(args.out).info_stream(),
        )
        return 0
    if args.action == "verify":
        theta1 = parse_angle(args.theta1)
        phi1 = parse_angle(args.phi1)
        triple = sequential_triple(theta1, phi1)
        states = {}
        for index, psi in enumerate((triple.psi1, triple.psi2, triple.psi3), start=1):
            states[f"P_{index}"] = psi
            states[f"P_{index}_perp"] = perp_state(psi)
        from .eventgraph import cycle_graph

        built = build_lsss(cycle_graph(3), merged=True)
        report = verify_operational_equivalences(built, states)
        columns = ("edge", "deviation")
        rows = list(report.deviations.items())
        if args.format == "json":
            document = {
                "theta1": theta1,
                "phi1": phi1,
                "passed": report.passed,
                "max_deviation": report.max_deviation,
                "deviations": report.deviations,
            }
            _Output(args.out).write_text(json.dumps(_json_ready(document), indent=2) + "\n")
        else:
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(columns)
            for edge, deviation in rows:
                writer.writerow([edge, _fmt(deviation)])
            _Output(args.out).write_text(buffer.getvalue())
        print(
            f"passed = {_fmt(report.passed)}; max deviation = {_fmt(report.max_deviation)}",
            file=_Output(args.out).info_stream(),
        )
        return 0
    raise ValueError(f"unknown scenario action {args.action!r}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mzilab",
        description="Interferometer scans, overlap inequalities, and interrogation reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan_parser = sub.add_parser("scan-h", help="tabulate the sequential functional h")
    scan_parser.add_argument("--preset", choices=scans.SCAN_H_PRESETS)
    scan_parser.add_argument("--theta1", help="fixed angle or start:stop")
    scan_parser.add_argument("--phi1", help="fixed angle or start:stop")
    scan_parser.add_argument("--theta0", help="general-input splitter angle")
    scan_parser.add_argument("--phi0", help="general-input phase")
    scan_parser.add_argument("--step", type=float, help="grid step in radians")
    _add_output_options(scan_parser, plot=True)
    scan_parser.set_defaults(handler=_cmd_scan_h)

    parallel_parser = sub.add_parser("parallel", help="multi-state overlap presets")
    parallel_parser.add_argument("--preset", required=True, choices=scans.PARALLEL_PRESETS)
    parallel_parser.add_argument("--step", type=float, help="phase-grid step in radians")
    _add_output_options(parallel_parser, plot=True)
    parallel_parser.set_defaults(handler=_cmd_parallel)

    graph_parser = sub.add_parser("graph", help="event-graph queries")
    graph_parser.add_argument("query", choices=("vertices", "cycles", "membership", "distance"))
    graph_parser.add_argument("--graph", required=True, help="graph JSON file or inline JSON")
    graph_parser.add_argument("--weights", help="weights JSON file or inline JSON (keys 'i-j')")
    _add_output_options(graph_parser)
    graph_parser.set_defaults(handler=_cmd_graph)

    interrogate_parser = sub.add_parser("interrogate", help="interrogation-task reports")
    interrogate_parser.add_argument("mode", choices=("analytic", "scan", "mc"))
    interrogate_parser.add_argument("--r", type=float, help="overlap r in [0, 1] (analytic)")
    interrogate_parser.add_argument("--step", type=float, help="r-grid step (scan)")
    interrogate_parser.add_argument("--theta", help="splitter angle (mc)")
    interrogate_parser.add_argument("--trials", type=int, default=100000, help="mc trials")
    interrogate_parser.add_argument("--seed", type=int, default=0, help="mc RNG seed")
    _add_output_options(interrogate_parser, plot=True)
    interrogate_parser.set_defaults(handler=_cmd_interrogate)

    scenario_parser = sub.add_parser("scenario", help="operational-scenario tools")
    scenario_parser.add_argument("action", choices=("build", "verify"))
    scenario_parser.add_argument("--graph", help="graph JSON file or inline JSON (build)")
    scenario_parser.add_argument("--merged", action="store_true", help="one perp label per vertex")
    scenario_parser.add_argument("--epsilon", type=float, default=0.0, help="uniform epsilon")
    scenario_parser.add_argument("--epsilons", help="per-vertex epsilon JSON (build)")
    scenario_parser.add_argument("--theta1", default="pi/6", help="splitter angle (verify)")
    scenario_parser.add_argument("--phi1", default="pi", help="phase (verify)")
    _add_output_options(scenario_parser)
    scenario_parser.set_defaults(handler=_cmd_scenario)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
