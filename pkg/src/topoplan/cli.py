"""Command line front end.

Exit codes: 0 success, 1 infeasible problem, 2 usage or document
error, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import platform
import sys
import time

from . import benchmarks, io, oracle, render
from .enumerate import diff_topologies, enumerate_topologies
from .optimize import optimize_all, optimize_topology, rank

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_MISMATCH = 3


def _load_problem(ref):
    """A problem path or a bundled benchmark name."""
    if os.path.exists(ref):
        return io.load_problem(ref)
    try:
        return benchmarks.load_benchmark(ref)
    except KeyError:
        raise ValueError(
            f"{ref!r} is neither a problem file nor a bundled benchmark "
            f"(have: {', '.join(benchmarks.list_benchmarks())})"
        ) from None


def _apply_flags(problem, args):
    for toggle in args.switch or ():
        name, _, value = toggle.partition("=")
        if value not in ("on", "off"):
            raise ValueError(f"--switch wants NAME=on|off, got {toggle!r}")
        problem.switches[name] = value == "on"
    if args.module_refine > 1:
        problem = io.rescale(problem, args.module_refine)
    return problem


def _out_dir(args):
    d = args.out or os.environ.get("TOPOPLAN_OUT") or "."
    os.makedirs(d, exist_ok=True)
    return d


def _progress_printer(quiet):
    if quiet:
        return None
    state = {"t": 0.0}

    def prog(res):
        now = time.monotonic()
        if now - state["t"] >= 2.0:
            state["t"] = now
            print(
                f"  ... candidates={res.candidates} n1={res.n1} n2={res.n2}",
                file=sys.stderr,
            )

    return prog


def _enumerate(problem, args):
    res = enumerate_topologies(
        problem, progress=_progress_printer(args.quiet), max_classes=args.max_classes
    )
    return res


def _infeasible_exit(problem):
    print(
        f"{problem.name}: no consistent topology. The grid may be too "
        f"coarse for the stated dimensions; try --module-refine 2 (or "
        f"higher) to subdivide the module.",
        file=sys.stderr,
    )
    return EXIT_INFEASIBLE


def cmd_enumerate(args):
    problem = _apply_flags(_load_problem(args.problem), args)
    res = _enumerate(problem, args)
    print(json.dumps(res.summary()))
    out = _out_dir(args)
    io.save_solutions(problem, res, os.path.join(out, f"{problem.name}.solutions.json"))
    if args.gallery:
        for t in res.topologies:
            path = os.path.join(out, f"{problem.name}.t{t.index:03d}.svg")
            with open(path, "w") as fh:
                fh.write(render.render_sketch(problem, t))
    if res.n2 == 0:
        return _infeasible_exit(problem)
    return EXIT_OK


def _optimize_pool(problem, topologies, cost_spec, jobs):
    import multiprocessing as mp

    payload = [(problem, t, cost_spec) for t in topologies]
    with mp.Pool(jobs) as pool:
        results = pool.starmap(optimize_topology, payload)
    return [r for r in results if r is not None]


def cmd_optimize(args):
    problem = _apply_flags(_load_problem(args.problem), args)
    if args.cost:
        problem.cost = {
            "criteria": [
                {"name": n, "weight": int(w)}
                for n, _, w in (c.partition("=") for c in args.cost)
            ]
        }
    res = _enumerate(problem, args)
    if res.n2 == 0:
        return _infeasible_exit(problem)
    if args.jobs > 1:
        optimized = _optimize_pool(problem, res.topologies, problem.cost, args.jobs)
        optimized.sort(key=lambda o: o.topology.index)
    else:
        optimized = optimize_all(problem, res.topologies, problem.cost)
    out = _out_dir(args)
    by_index = {o.topology.index: o for o in optimized}
    io.save_solutions(
        problem, res, os.path.join(out, f"{problem.name}.solutions.json"), by_index
    )
    ordered = rank(optimized)
    for o in ordered:
        print(f"topology {o.topology.index:3d}  cost {o.cost}  optima {len(o.solutions)}")
    if args.gallery:
        for pos, o in enumerate(ordered):
            sol = o.best()
            path = os.path.join(
                out, f"{problem.name}.rank{pos:03d}.t{o.topology.index:03d}.svg"
            )
            with open(path, "w") as fh:
                fh.write(
                    render.render_solution(
                        problem, sol, caption=f"cost {o.cost}"
                    )
                )
    return EXIT_OK


def cmd_render(args):
    problem = _load_problem(args.problem)
    doc = io.load_solutions(args.solutions)
    out = _out_dir(args)
    wrote = 0
    for entry in doc["topologies"]:
        sols = entry.get("solutions") or [entry["witness"]]
        for k, sol in enumerate(sols if args.all else sols[:1]):
            path = os.path.join(
                out, f"{problem.name}.t{entry['index']:03d}.{k}.svg"
            )
            with open(path, "w") as fh:
                fh.write(render.render_solution(problem, sol))
            wrote += 1
    print(f"wrote {wrote} files to {out}")
    return EXIT_OK


def cmd_diff(args):
    problem = _apply_flags(_load_problem(args.problem), args)
    res = _enumerate(problem, args)
    if res.n2 == 0:
        return _infeasible_exit(problem)
    try:
        ta, tb = res.topologies[args.a], res.topologies[args.b]
    except IndexError:
        print(f"only {res.n2} topologies", file=sys.stderr)
        return EXIT_USAGE
    for label, (va, vb) in diff_topologies(ta, tb).items():
        print(f"{label}: {va} -> {vb}")
    out = _out_dir(args)
    path = os.path.join(out, f"{problem.name}.diff.{args.a}-{args.b}.svg")
    with open(path, "w") as fh:
        fh.write(render.render_diff(problem, ta, tb))
    print(f"wrote {path}")
    return EXIT_OK


def cmd_bench(args):
    names = args.names or [n for n in benchmarks.list_benchmarks() if _is_fast(n)]
    expected = benchmarks.expected_counts()
    rows = []
    code = EXIT_OK
    for name in names:
        problem = benchmarks.load_benchmark(name)
        t0 = time.monotonic()
        res = enumerate_topologies(problem, progress=_progress_printer(args.quiet))
        dt = time.monotonic() - t0
        want = expected.get(name, {})
        ok = want.get("n2") is None or want["n2"] == res.n2
        if not ok:
            code = EXIT_MISMATCH
        rows.append(
            (
                name,
                len(problem.spaces),
                res.n1,
                res.n2,
                f"{100 * res.n2 // res.n1 if res.n1 else 0}%",
                f"{dt:.2f}s",
                "ok" if ok else f"expected {want['n2']}",
            )
        )
    widths = [max(len(str(r[i])) for r in rows + [_HEADER]) for i in range(7)]
    for r in [_HEADER] + rows:
        print("  ".join(str(v).ljust(w) for v, w in zip(r, widths)))
    print(
        f"# wall-clock on {platform.machine()}/{platform.python_implementation()}"
        f" {platform.python_version()}; counts are the reproducible quantity,"
        f" times are not comparable across machines"
    )
    return code


_HEADER = ("problem", "rooms", "N1", "N2", "N2/N1", "time", "check")


def _is_fast(name):
    return name in ("pfefferkorn", "lauriere", "tong", "col9")


def cmd_oracle_check(args):
    names = args.names or ["pfefferkorn", "tong"]
    code = EXIT_OK
    for name in names:
        problem = benchmarks.load_benchmark(name) if not os.path.exists(name) else io.load_problem(name)
        code = max(code, _oracle_one(problem, args))
    for k in range(args.random):
        problem = oracle.random_instance(args.seed + k)
        code = max(code, _oracle_one(problem, args))
    return code


def _oracle_one(problem, args):
    t0 = time.monotonic()
    try:
        ores = oracle.solve(problem, node_cap=args.node_cap)
    except oracle.OracleRefusal as e:
        print(f"{problem.name}: oracle refused ({e})")
        return EXIT_USAGE
    res = enumerate_topologies(problem)
    costs = None
    if problem.cost:
        costs = {}
        for t in res.topologies:
            opt = optimize_topology(problem, t, problem.cost)
            if opt is None:
                print(f"{problem.name}: optimizer found no layout for class {t.index}")
                return EXIT_MISMATCH
            costs[t.signature] = opt.scaled_cost
    verdict = oracle.compare(ores, res.topologies, engine_costs=costs)
    dt = time.monotonic() - t0
    if verdict.ok:
        print(f"{problem.name}: ok ({len(ores.classes)} classes, {dt:.1f}s)")
        return EXIT_OK
    print(f"{problem.name}: MISMATCH {verdict!r}")
    for tag, sigs in (("missing", verdict.missing), ("extra", verdict.extra)):
        for sig in sigs[:3]:
            print(f"  {tag}: {sig}")
    for sig, got, want in verdict.cost_mismatches[:3]:
        print(f"  cost: engine {got} oracle {want} at {sig}")
    return EXIT_MISMATCH


def cmd_serve(args):
    import uvicorn

    from .service import create_app

    ui = args.ui or os.environ.get("TOPOPLAN_UI")
    uvicorn.run(
        create_app(ui_dir=ui), host=args.host, port=args.port, log_level="info"
    )
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="topoplan",
        description="Enumerate and optimize rectangular floor-plan topologies",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", "-o", help="output directory (default: TOPOPLAN_OUT or .)")
        p.add_argument("--switch", action="append", metavar="NAME=on|off",
                       help="override a reduction switch")
        p.add_argument("--module-refine", type=int, default=1, metavar="K",
                       help="subdivide the module K-fold")
        p.add_argument("--max-classes", type=int, default=None)
        p.add_argument("--quiet", "-q", action="store_true")

    p = sub.add_parser("enumerate", help="enumerate topological classes")
    p.add_argument("problem")
    common(p)
    p.add_argument("--gallery", action="store_true", help="write one sketch per class")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("optimize", help="enumerate, then optimize each class")
    p.add_argument("problem")
    common(p)
    p.add_argument("--cost", action="append", metavar="CRITERION=WEIGHT")
    p.add_argument("--jobs", "-j", type=int, default=1)
    p.add_argument("--gallery", action="store_true")
    p.set_defaults(fn=cmd_optimize)

    p = sub.add_parser("render", help="render a saved solutions file")
    p.add_argument("problem")
    p.add_argument("solutions")
    p.add_argument("--out", "-o")
    p.add_argument("--all", action="store_true", help="every stored layout, not just the first")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("diff", help="compare two enumerated classes")
    p.add_argument("problem")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    common(p)
    p.set_defaults(fn=cmd_diff)

    p = sub.add_parser("bench", help="run the bundled corpus")
    p.add_argument("names", nargs="*")
    p.add_argument("--quiet", "-q", action="store_true")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("oracle-check", help="independent recount of small instances")
    p.add_argument("names", nargs="*")
    p.add_argument("--random", type=int, default=0, metavar="N",
                   help="also check N seeded random instances")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--node-cap", type=int, default=5 * 10**6)
    p.set_defaults(fn=cmd_oracle_check)

    p = sub.add_parser("serve", help="start the exploration service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--ui", metavar="DIR",
                   help="serve a built browser UI from DIR (or $TOPOPLAN_UI)")
    p.set_defaults(fn=cmd_serve)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
