"""Command-line front end: ``skeinlab <subcommand> ...``.

Exit status is 0 on success, 1 when a computation is refused or a check
fails, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import diagram, generators, homfly, kauffman, linkgraph, recurrences
from .laurent import PolyError, render, render2

EXIT_OK, EXIT_REFUSED, EXIT_INPUT = 0, 1, 2
THREADS_ENV = "SKEIN_THREADS"


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    fmt: str = "text"
    threads: int = 1
    output: str | None = None


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _sizes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list: {text!r}")


def _directions(text: str) -> tuple[bool, ...]:
    if not text or set(text) - set("+-"):
        raise argparse.ArgumentTypeError("directions are a string of + and -")
    return tuple(ch == "+" for ch in text)


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from exc


def _load_pd(path: str | None):
    text = _read(path)
    s = text.lstrip()
    if not s:
        raise InputError("empty diagram input")
    if s.startswith("{"):
        try:
            return diagram.from_json(s)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad JSON: {exc}") from exc
    return diagram.from_text(text)


def _emit(cfg: RunConfig, text: str, data) -> None:
    out = json.dumps(data, sort_keys=True, indent=2) if cfg.fmt == "json" else text
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _poly_json(p) -> dict:
    return {"text": render(p) if hasattr(p, "var") else render2(p), "terms": p.to_json()}


# subcommands

def cmd_gen(cfg: RunConfig, a) -> int:
    spec = generators.FamilySpec(a.family, a.n, a.sizes)
    pd = generators.generate(spec, handedness=a.handedness)
    if a.unoriented:
        data = pd.to_json()
    else:
        data = diagram.orient(pd, a.directions).to_json()
    if cfg.fmt == "text" and a.unoriented:
        _emit(cfg, pd.to_text().rstrip("\n"), data)
    else:
        # PD JSON is the interchange format, so text mode also writes JSON
        out = RunConfig(cfg.command, "json", cfg.threads, cfg.output)
        _emit(out, "", data)
    return EXIT_OK


def cmd_bracket(cfg: RunConfig, a) -> int:
    d = _load_pd(a.input)
    pd = d.pd if isinstance(d, diagram.OrientedDiagram) else d
    plan = None
    if a.plan:
        try:
            plan = json.loads(_read(a.plan))
        except json.JSONDecodeError as exc:
            raise InputError(f"bad plan JSON: {exc}") from exc
        if a.method == "naive":
            raise InputError("--plan only applies to the gathered method")
    p = kauffman.bracket(pd, a.method, plan)
    _emit(cfg, render(p), _poly_json(p))
    return EXIT_OK


def _oriented(path):
    d = _load_pd(path)
    if not isinstance(d, diagram.OrientedDiagram):
        raise InputError("HOMFLY input needs an orientation block")
    return d


def cmd_homfly(cfg: RunConfig, a) -> int:
    d = _oriented(a.input)
    p = homfly.homfly(d, cap=a.cap)
    target = cfg.command
    if target == "homfly":
        if a.substitution_check:
            homfly.jones(p)
            homfly.alexander(p)
        _emit(cfg, render2(p), _poly_json(p))
        return EXIT_OK
    q = homfly.jones(p) if target == "jones" else homfly.alexander(p)
    _emit(cfg, render(q), _poly_json(q))
    return EXIT_OK


def _verify_one(job):
    family, n, sizes, method = job
    spec = generators.FamilySpec(family, n, sizes)
    t0 = time.perf_counter()
    pd = generators.generate(spec)
    try:
        got = kauffman.bracket(pd, method)
    except kauffman.CapExceeded as exc:
        return spec.label(), len(pd.crossings), None, str(exc), time.perf_counter() - t0
    want = recurrences.family_value(family, n, sizes)
    return spec.label(), len(pd.crossings), got == want, "", time.perf_counter() - t0


def _pool_map(fn, jobs, threads):
    if threads <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, jobs))


def cmd_verify(cfg: RunConfig, a) -> int:
    jobs = [(a.family, n, s, a.method) for n, s in recurrences.family_sizes(a.family, a.max_n)]
    rows = _pool_map(_verify_one, jobs, cfg.threads)
    lines = [f"{'case':<32} {'crossings':>9}  result"]
    data = []
    for label, nc, ok, note, _ in rows:
        verdict = "pass" if ok else ("refused" if ok is None else "FAIL")
        lines.append(f"{label:<32} {nc:>9}  {verdict}{'  ' + note if note else ''}")
        data.append({"case": label, "crossings": nc, "result": verdict})
    _emit(cfg, "\n".join(lines), {"family": a.family, "rows": data})
    return EXIT_OK if all(r[2] for r in rows) else EXIT_REFUSED


def cmd_graph(cfg: RunConfig, a) -> int:
    g = linkgraph.load(_read(a.input))
    diags = linkgraph.validate_graph(g)
    if diags:
        _emit(cfg, "\n".join(f"invalid ({d.axiom}): {d.message}" for d in diags),
              {"valid": False, "diagnostics": [d.to_json() for d in diags]})
        return EXIT_INPUT
    data: dict = {"valid": True, "m_g": sorted(map(str, linkgraph.m_g(g)))}
    lines = [f"valid link graph: {len(g.vertices)} vertices, {len(g.edges)} edges, |M_G| = {len(data['m_g'])}"]
    if a.reduce:
        r = linkgraph.reduce(g)
        data["reduced"] = linkgraph.to_json(r)
        lines.append(f"reduced: {len(r.vertices)} vertices, {len(r.edges)} edges")
    unl = linkgraph.is_unlinked(g)
    data["unlinked"] = unl
    lines.append(f"unlinked: {'yes' if unl else 'no'}")
    if a.report or a.minimal_sets is not None:
        rep = linkgraph.brunnian_report(g, k=a.minimal_sets if a.minimal_sets is not None else 3)
        data["report"] = rep.to_json()
        lines.append(f"brunnian: {'yes' if rep.is_brunnian else 'no'}")
        lines.append(f"strongly brunnian: {'yes' if rep.is_strongly_brunnian else 'no'}")
        for col, ok in sorted(rep.per_colour.items()):
            lines.append(f"  colour {col}: endpoints {'initial' if ok else 'not initial'}")
        if rep.partial:
            lines.append("minimal initial sets: skipped, |M_G| above the search bound")
        else:
            shown = ", ".join("{" + ", ".join(map(str, s)) + "}" for s in rep.minimal_initial_sets) or "none"
            lines.append(f"minimal initial sets: {shown}")
    _emit(cfg, "\n".join(lines), data)
    return EXIT_OK


def cmd_bench(cfg: RunConfig, a) -> int:
    spec = generators.FamilySpec(a.family, a.n, a.sizes)
    pd = generators.generate(spec)
    results: dict = {}
    refused: dict = {}
    lines = [f"{spec.label()}: {len(pd.crossings)} crossings"]
    for m in a.methods:
        best = None
        value = None
        try:
            for _ in range(a.repeat):
                t0 = time.perf_counter()
                if m == "naive":
                    value = kauffman.bracket_naive(pd, cap=a.naive_cap)
                else:
                    value = kauffman.bracket(pd, m)
                dt = time.perf_counter() - t0
                best = dt if best is None else min(best, dt)
        except kauffman.CapExceeded as exc:
            refused[m] = str(exc)
            lines.append(f"  {m:<9} refused: {exc}")
            continue
        results[m] = (value, best)
        lines.append(f"  {m:<9} {best:9.4f} s")
    values = [v for v, _ in results.values()]
    same = all(v == values[0] for v in values)
    lines.append(f"  values identical: {'yes' if same else 'NO'} ({len(values)} methods completed)")
    data = {"case": spec.label(), "crossings": len(pd.crossings), "identical": same,
            "seconds": {m: round(t, 6) for m, (_, t) in results.items()}, "refused": refused}
    if values:
        data["value"] = render(values[0])
    _emit(cfg, "\n".join(lines), data)
    return EXIT_OK if same and values else EXIT_REFUSED


# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skeinlab", description="Link polynomial computations.")
    p.add_argument("--threads", type=_positive, default=None,
                   help=f"worker cap (default ${THREADS_ENV} or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_input=True):
        if with_input:
            sp.add_argument("input", nargs="?", default="-", help="input file, - for stdin")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("-o", "--output")

    g = sub.add_parser("gen", help="emit a family diagram as PD JSON")
    g.add_argument("--family", required=True, choices=generators.FAMILIES)
    g.add_argument("--n", type=int)
    g.add_argument("--sizes", type=_sizes, default=())
    g.add_argument("--directions", type=_directions, default=None)
    g.add_argument("--handedness", choices=("same", "opposite"), default="opposite")
    g.add_argument("--unoriented", action="store_true")
    common(g, with_input=False)

    b = sub.add_parser("bracket", help="Kauffman bracket of a PD file")
    b.add_argument("--method", choices=("naive", "gathered", "auto"), default="auto")
    b.add_argument("--plan")
    common(b)

    for name in ("homfly", "jones", "alexander"):
        h = sub.add_parser(name, help=f"{name} polynomial of an oriented PD file")
        h.add_argument("--cap", type=_positive, default=homfly.DEFAULT_CAP)
        h.add_argument("--substitution-check", action="store_true")
        common(h)

    v = sub.add_parser("verify", help="recurrence against diagram evaluation")
    v.add_argument("--family", required=True, choices=generators.FAMILIES)
    v.add_argument("--max-n", type=_positive, required=True)
    v.add_argument("--method", choices=("naive", "gathered", "auto"), default="auto")
    common(v, with_input=False)

    gr = sub.add_parser("graph", help="link graph analysis")
    gr.add_argument("--report", action="store_true")
    gr.add_argument("--minimal-sets", type=int, default=None)
    gr.add_argument("--reduce", action="store_true")
    common(gr)

    be = sub.add_parser("bench", help="time bracket methods on one family member")
    be.add_argument("--family", required=True, choices=generators.FAMILIES)
    be.add_argument("--n", type=int)
    be.add_argument("--sizes", type=_sizes, default=())
    be.add_argument("--methods", default="naive,gathered",
                    type=lambda s: [m for m in s.split(",") if m])
    be.add_argument("--repeat", type=_positive, default=1)
    be.add_argument("--naive-cap", type=_positive, default=kauffman.DEFAULT_NAIVE_CAP)
    common(be, with_input=False)
    return p


_COMMANDS = {
    "gen": cmd_gen, "bracket": cmd_bracket, "homfly": cmd_homfly, "jones": cmd_homfly,
    "alexander": cmd_homfly, "verify": cmd_verify, "graph": cmd_graph, "bench": cmd_bench,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(a.command, a.format, a.threads or _default_threads(), a.output)
    if a.command == "bench":
        bad = [m for m in a.methods if m not in ("naive", "gathered", "auto")]
        if bad:
            print(f"skeinlab: unknown method(s) {', '.join(bad)}", file=sys.stderr)
            return EXIT_INPUT
    try:
        return _COMMANDS[a.command](cfg, a)
    except (kauffman.CapExceeded, homfly.CapExceeded) as exc:
        print(f"skeinlab: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except PolyError as exc:
        if cfg.command in ("homfly", "jones", "alexander"):
            print(f"skeinlab: {exc}", file=sys.stderr)
            return EXIT_REFUSED
        print(f"skeinlab: bad input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, diagram.DiagramError, generators.ParameterError, linkgraph.GraphError,
            ValueError) as exc:
        print(f"skeinlab: bad input: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
