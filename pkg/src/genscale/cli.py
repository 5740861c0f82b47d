"""Batch command-line front end.

    genscale analyze <config> [--cap N] [--out DIR]
    genscale lcm <config> <s> <t> [--grid] [--json]
    genscale zeta <config> --beta B1,B2 --cutoff N
    genscale graph <config> --dot FILE

Exit codes: 0 scale exists, 1 scale absent, 2 inconclusive, 3 config or
usage error, 4 a grid precondition was violated.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from genscale.coregraph import beta_component_action, build_core_graph, to_dot
from genscale.families import ConfigError, family_section, load_family, read_config_file
from genscale.kernel import Monoid
from genscale.lcm_engine import GridError, make_word, word_lcm
from genscale.scale import DEFAULT_BOUND, INCONCLUSIVE, check_conditions, zeta_partial

EXIT_OK, EXIT_ABSENT, EXIT_INCONCLUSIVE, EXIT_CONFIG, EXIT_GRID = 0, 1, 2, 3, 4
CAP_ENV = "GENSCALE_CAP"
OUTPUTS = ("graph-dot", "scale-json", "zeta-csv", "grid-json")


@dataclass
class RunConfig:
    family: Mapping
    cap: int = 64
    bound: int = DEFAULT_BOUND
    outputs: tuple[str, ...] = ("graph-dot", "scale-json")
    betas: tuple[float, ...] = ()
    cutoff: int = 10**6
    grids: list[tuple[str, str]] = field(default_factory=list)

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        data = read_config_file(path)
        if not isinstance(data, Mapping):
            raise ConfigError(str(path), "top level must be a table")
        analysis = data.get("analysis", {})
        zeta = data.get("zeta", {})
        cfg = cls(family_section(data))
        cfg.cap = _positive(analysis, "cap", "analysis", int(os.environ.get(CAP_ENV, cfg.cap)))
        cfg.bound = _positive(analysis, "bound", "analysis", cfg.bound)
        outs = analysis.get("outputs", list(cfg.outputs))
        for k, o in enumerate(outs):
            if o not in OUTPUTS:
                raise ConfigError(f"analysis.outputs[{k}]", f"unknown artifact {o!r}; expected one of {', '.join(OUTPUTS)}")
        cfg.outputs = tuple(outs)
        cfg.betas = tuple(float(b) for b in zeta.get("betas", []))
        cfg.cutoff = _positive(zeta, "cutoff", "zeta", cfg.cutoff)
        if "zeta-csv" in cfg.outputs and not cfg.betas:
            raise ConfigError("zeta.betas", "must be nonempty when zeta-csv is requested")
        for k, g in enumerate(data.get("grid", [])):
            if not isinstance(g, Mapping) or "s" not in g or "t" not in g:
                raise ConfigError(f"grid[{k}]", "expected a table with s and t")
            cfg.grids.append((str(g["s"]), str(g["t"])))
        return cfg


def _positive(table: Mapping, key: str, path: str, default: int) -> int:
    val = table.get(key, default)
    if not isinstance(val, int) or val < 1:
        raise ConfigError(f"{path}.{key}", f"must be a positive integer, got {val!r}")
    return val


def split_letters(text: str) -> list[str]:
    """Split an element string into letters at top-level '*' or whitespace and between ')('."""
    out, cur, depth = [], [], 0
    for ch in text.strip():
        if depth == 0 and ch in "* \t":
            if cur:
                out.append("".join(cur))
            cur = []
            continue
        if ch == "(" and depth == 0 and cur and cur[-1] == ")":
            out.append("".join(cur))
            cur = []
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    if cur:
        out.append("".join(cur))
    return out


def parse_letters(S: Monoid, text: str):
    letters = split_letters(text)
    if not letters:
        raise ValueError("empty element string")
    return [S.parse(x) for x in letters]


def _format_outcome(S: Monoid, res) -> str:
    if not res.is_meet:
        return "Orthogonal"
    return (
        f"Meet lcm={S.format(res.lcm)} cofactor_left={S.format(res.cofactor_left)} "
        f"cofactor_right={S.format(res.cofactor_right)}"
    )


def _analyze(cfg: RunConfig):
    S = load_family(cfg.family)
    graph = build_core_graph(S, cfg.cap)
    report = check_conditions(S, graph, bound=cfg.bound)
    return S, graph, report


def _exit_for(report) -> int:
    if report.exists is True:
        return EXIT_OK
    if report.exists == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_ABSENT


def cmd_analyze(args, out) -> int:
    cfg = RunConfig.from_file(args.config)
    if args.cap is not None:
        cfg.cap = args.cap
    S, graph, report = _analyze(cfg)
    print(f"family: {S.tag}", file=out)
    print(f"core graph: {len(graph.vertices)} vertices, {len(graph.edges)} edges, exhaustive={graph.exhaustive}", file=out)
    for i, block in enumerate(graph.components):
        names = ", ".join(graph.labels[v] for v in block)
        print(f"  V{i}: |V|={graph.component_cards[i]} {{{names}}}", file=out)
    for key, v in report.conditions().items():
        if v.status == "fail":
            print(f"condition ({key}) failed: {v.reason}", file=out)
        else:
            print(f"condition ({key}) {v.status}: {v.reason}", file=out)
    beta = beta_component_action(S, graph)
    for a in beta.actions:
        print(f"beta[{a.generator}]: {a.kind}", file=out)
    if report.exists is True:
        table = ", ".join(f"V{i}->{c}" for i, c in sorted(report.scale_on_components.items()))
        print(f"scale exists: {table}", file=out)
    else:
        print(f"scale exists: {report.exists}", file=out)
    if args.out:
        _write_artifacts(Path(args.out), cfg, S, graph, report, beta)
    return _exit_for(report)


def _write_artifacts(outdir: Path, cfg: RunConfig, S, graph, report, beta) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    if "graph-dot" in cfg.outputs:
        (outdir / "graph.dot").write_text(to_dot(graph), encoding="utf-8")
    if "scale-json" in cfg.outputs:
        doc = report.to_dict()
        doc["core_graph"] = graph.to_dict()
        doc["beta"] = beta.to_dict()
        (outdir / "scale.json").write_text(json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    if "zeta-csv" in cfg.outputs and report.exists is True:
        (outdir / "zeta.csv").write_text(_zeta_csv(report, cfg.betas, cfg.cutoff), encoding="utf-8")
    if "grid-json" in cfg.outputs:
        grids = []
        for s_txt, t_txt in cfg.grids:
            s = make_word(S, graph, parse_letters(S, s_txt))
            t = make_word(S, graph, parse_letters(S, t_txt))
            grids.append(word_lcm(S, graph, s, t).to_dict(S))
        (outdir / "grid.json").write_text(json.dumps(grids, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def cmd_lcm(args, out) -> int:
    cfg = RunConfig.from_file(args.config)
    S = load_family(cfg.family)
    try:
        s_letters, t_letters = parse_letters(S, args.s), parse_letters(S, args.t)
    except ValueError as exc:
        raise ConfigError("element", str(exc)) from None
    if not args.grid:
        print(_format_outcome(S, S.right_lcm(S.product(s_letters), S.product(t_letters))), file=out)
        return EXIT_OK
    graph = build_core_graph(S, args.cap or cfg.cap)
    try:
        s = make_word(S, graph, s_letters)
        t = make_word(S, graph, t_letters)
    except (ValueError, LookupError) as exc:
        raise ConfigError("element", str(exc)) from None
    grid = word_lcm(S, graph, s, t)
    print(grid.to_json(S) if args.json else grid.render_text(S), file=out, end="" if not args.json else "\n")
    print("process log: [" + ",".join(grid.log_sequence()) + "]", file=out)
    return EXIT_OK


def _zeta_csv(report, betas: Sequence[float], cutoff: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["beta", "partial_sum", "euler_closed_form", "abs_diff"])
    nsg = report.semigroup()
    for b in betas:
        z = zeta_partial(nsg, b, cutoff)
        if z.divergent:
            w.writerow([repr(b), repr(z.partial_sum), "divergent", ""])
        else:
            w.writerow([repr(b), repr(z.partial_sum), repr(z.euler_closed_form), repr(z.abs_diff)])
    return buf.getvalue()


def cmd_zeta(args, out) -> int:
    try:
        betas = [float(b) for b in args.beta.split(",") if b.strip()]
    except ValueError:
        raise ConfigError("--beta", f"cannot parse {args.beta!r}") from None
    if not betas:
        raise ConfigError("--beta", "need at least one value")
    if args.cutoff < 1:
        raise ConfigError("--cutoff", "must be at least 1")
    cfg = RunConfig.from_file(args.config)
    S, graph, report = _analyze(cfg)
    if report.exists is not True:
        failed = ", ".join(f"({k})" for k in report.failed()) or "inconclusive"
        print(f"no generalized scale: condition {failed}", file=out)
        return _exit_for(report)
    out.write(_zeta_csv(report, betas, args.cutoff))
    return EXIT_OK


def cmd_graph(args, out) -> int:
    cfg = RunConfig.from_file(args.config)
    S = load_family(cfg.family)
    graph = build_core_graph(S, args.cap or cfg.cap)
    Path(args.dot).write_text(to_dot(graph), encoding="utf-8")
    print(f"wrote {args.dot}: {len(graph.vertices)} vertices, {len(graph.components)} coconnected components", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genscale", description="Generalized scales on right LCM monoids")
    sub = p.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="check the four conditions and build the scale")
    a.add_argument("config")
    a.add_argument("--cap", type=int, default=None, help=f"class enumeration cap (env {CAP_ENV})")
    a.add_argument("--out", default=None, help="directory for artifacts")
    a.set_defaults(func=cmd_analyze)
    l = sub.add_parser("lcm", help="right LCM of two elements")
    l.add_argument("config")
    l.add_argument("s")
    l.add_argument("t")
    l.add_argument("--grid", action="store_true", help="run the grid algorithm on the letters")
    l.add_argument("--json", action="store_true", help="with --grid, print the grid as JSON")
    l.add_argument("--cap", type=int, default=None)
    l.set_defaults(func=cmd_lcm)
    z = sub.add_parser("zeta", help="partial sums of the zeta series")
    z.add_argument("config")
    z.add_argument("--beta", required=True, help="comma-separated list")
    z.add_argument("--cutoff", type=int, default=10**6)
    z.set_defaults(func=cmd_zeta)
    g = sub.add_parser("graph", help="export the core graph as DOT")
    g.add_argument("config")
    g.add_argument("--dot", required=True)
    g.add_argument("--cap", type=int, default=None)
    g.set_defaults(func=cmd_graph)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    if getattr(args, "cap", None) is not None and args.cap < 1:
        print("error: --cap: must be a positive integer", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args, out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except GridError as exc:
        print(f"grid error: {exc}", file=sys.stderr)
        return EXIT_GRID
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
