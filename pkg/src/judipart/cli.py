"""Command-line surface.

One binary, six subcommands:

  partition  full engine run on a file or generated instance
  oracle     exact best min-direction cut by exhaustive search (small n)
  gap        minimum-gap partition of a chosen X
  tight      tight-component report for D[Y]
  certify    quantity bundle plus every in-regime inequality check
  gen        write a generated instance as an edge list (+ .props.json sidecar)

Instances come from --input FILE (edge-list format: header "n m", one "u v"
line per arc, # comments) or --gen FAMILY with family parameters (--n, --q,
--copies, --extra, --augment, --gen-d; the analysis commands reuse --seed for
the generator). X sets for gap/tight/certify come from --x-file (one vertex id
per line) or --x-auto (the degree-threshold split).

Exit codes: 0 success, 2 bad input, 3 resource limit exceeded. --json emits a
RunRecord whose "outcome" object is byte-identical across reruns with the
same inputs and seed.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .certify import build_certificate, render_text
from .digraph import Digraph, load_edge_list, save_edge_list, min_outdegree
from .engine import (
    EngineConfig,
    partition as run_partition,
    split_by_degree,
)
from .errors import InputError, LimitError
from .gap import min_gap_partition
from .generators import FAMILIES
from .oracle import exact_max_min_cut
from .tight import essential_tight_components

_GEN_PARAM_FLAGS = {
    "n": "n",
    "q": "q",
    "copies": "copies",
    "extra": "extra",
    "augment": "augment",
    "d": "gen_d",
    "seed": "seed",
}


def _add_input_args(sp: argparse.ArgumentParser) -> None:
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="edge-list file")
    src.add_argument("--gen", choices=sorted(FAMILIES), help="generate the instance")
    sp.add_argument("--n", type=int, help="generator: vertex count")
    sp.add_argument("--q", type=int, help="generator: clique order")
    sp.add_argument("--copies", type=int, help="generator: small-clique copies")
    sp.add_argument("--extra", type=int, help="generator: extra random arcs")
    sp.add_argument("--gen-d", type=int, help="generator: per-vertex outdegree")
    sp.add_argument("--augment", action="store_true",
                    help="generator: wire small cliques into the big one")


def _gen_kwargs(args, seed: int) -> dict:
    func, params = FAMILIES[args.gen]
    kwargs = {}
    for p in params:
        flag = _GEN_PARAM_FLAGS[p]
        val = seed if p == "seed" else getattr(args, flag, None)
        if val is None:
            if p in ("extra", "copies"):
                val = 0
            elif p == "augment":
                val = False
            else:
                raise InputError(
                    f"generator {args.gen!r} needs --{flag.replace('_', '-')}"
                )
        kwargs[p] = val
    return kwargs


def _load_instance(args) -> tuple[Digraph, dict]:
    seed = getattr(args, "seed", 0) or 0
    if args.input:
        return load_edge_list(args.input), {"path": args.input}
    kwargs = _gen_kwargs(args, seed)
    func, _ = FAMILIES[args.gen]
    return func(**kwargs), {"family": args.gen, "params": kwargs}


def _load_x(args, D: Digraph) -> tuple[int, ...]:
    if getattr(args, "x_auto", False):
        cfg = EngineConfig(d=max(getattr(args, "d", 1) or 1, 1),
                           threshold_exponent=args.threshold_exp)
        return split_by_degree(D, cfg).x
    path = getattr(args, "x_file", None)
    if path is None:
        return ()
    xs = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                xs.append(int(line))
            except ValueError:
                raise InputError(f"{path}:{lineno}: not a vertex id: {line!r}")
            if not 0 <= xs[-1] < D.n:
                raise InputError(
                    f"{path}:{lineno}: vertex {xs[-1]} out of range, n={D.n}"
                )
    return tuple(sorted(set(xs)))


def _emit(args, record: dict, human: str, record_path: str | None = None) -> None:
    if args.json:
        text = json.dumps(record, sort_keys=True, indent=2)
    else:
        text = human
    if record_path is None:
        record_path = getattr(args, "output", None)
    if record_path:
        with open(record_path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True, indent=2) + "\n")
    print(text)


def _record(command: str, inp: dict, config: dict, outcome, started: float) -> dict:
    return {
        "command": command,
        "input": inp,
        "config": config,
        "outcome": outcome,
        "version": __version__,
        "wall_time_s": round(time.monotonic() - started, 3),
    }


def cmd_partition(args) -> int:
    started = time.monotonic()
    D, inp = _load_instance(args)
    sweep = tuple(float(s) for s in args.p_sweep.split(",") if s) if args.p_sweep else ()
    cfg = EngineConfig(
        d=args.d, epsilon=args.eps, trials=args.trials, seed=args.seed,
        threads=args.threads, local_improve_rounds=args.rounds,
        p_sweep=sweep,
    )
    out = run_partition(D, cfg)
    record = _record(
        "partition", inp,
        {"d": cfg.d, "eps": cfg.epsilon, "trials": cfg.trials,
         "seed": cfg.seed, "threads": cfg.threads, "rounds": cfg.local_improve_rounds,
         "p_sweep": list(sweep)},
        out.to_jsonable(), started,
    )
    lines = [
        f"n={D.n} m={D.m} d={out.d_configured} (actual min outdegree {out.d_actual})",
        f"best candidate={out.candidate_used} cut: e12={out.cut.e12} "
        f"e21={out.cut.e21} min={out.cut.minval}",
        f"ratio={out.ratio:.6f} target={out.guarantee_target:.6f}"
        + (" [shortcut]" if out.shortcut else "")
        + (" [huge-even]" if out.huge_even else ""),
        "per-candidate:",
    ]
    for r in out.per_candidate:
        lines.append(f"  {r.label} p={r.p}: e12={r.cut.e12} e21={r.cut.e21} "
                     f"min={r.cut.minval}")
    for w in out.warnings:
        lines.append(f"warning: {w}")
    if args.certify:
        lines.append(render_text(out.certificate))
    else:
        failing = sum(1 for c in out.certificate.checks if not c.holds)
        lines.append(
            f"certificate: {len(out.certificate.checks)} checks, "
            f"{failing} failing (--certify for detail)"
        )
    _emit(args, record, "\n".join(lines))
    return 0


def cmd_oracle(args) -> int:
    started = time.monotonic()
    D, inp = _load_instance(args)
    res = exact_max_min_cut(D, limit=args.limit)
    outcome = {
        "optimum": res.optimum,
        "witness_side1": list(res.witness.side1()),
        "evaluated": res.evaluated,
        "m": D.m,
        "ratio": res.optimum / D.m if D.m else 0.0,
    }
    record = _record("oracle", inp, {"limit": args.limit}, outcome, started)
    human = (
        f"n={D.n} m={D.m} optimum={res.optimum} "
        f"ratio={outcome['ratio']:.6f}\n"
        f"witness side1={list(res.witness.side1())} "
        f"(evaluated {res.evaluated} partitions)"
    )
    _emit(args, record, human)
    return 0


def cmd_gap(args) -> int:
    started = time.monotonic()
    D, inp = _load_instance(args)
    xs = _load_x(args, D)
    ys = tuple(v for v in range(D.n) if v not in set(xs))
    gr = min_gap_partition(D, xs, ys, exhaustive_limit=args.limit)
    outcome = {
        "x": list(gr.x), "x1": list(gr.x1), "x2": list(gr.x2),
        "theta": gr.theta, "theta_abs": gr.theta_abs_min,
        "huge": list(gr.huge), "k": gr.k, "g": gr.g, "b": gr.b,
        "forward": list(gr.forward), "backward": list(gr.backward),
    }
    record = _record("gap", inp, {"limit": args.limit, "x_auto": args.x_auto},
                     outcome, started)
    human = (
        f"|X|={len(gr.x)} theta={gr.theta} (|theta|={gr.theta_abs_min})\n"
        f"x1={list(gr.x1)}\nx2={list(gr.x2)}\n"
        f"huge={list(gr.huge)} k={gr.k} g={gr.g} b={gr.b}"
    )
    _emit(args, record, human)
    return 0


def cmd_tight(args) -> int:
    started = time.monotonic()
    D, inp = _load_instance(args)
    xs = _load_x(args, D)
    ys = tuple(v for v in range(D.n) if v not in set(xs))
    tr = essential_tight_components(D, ys)
    outcome = {
        "tau": tr.tau,
        "components": [list(c) for c in tr.components],
        "tight": list(tr.tight_flags),
        "essential": list(tr.essential_flags),
    }
    record = _record("tight", inp, {"x_auto": args.x_auto}, outcome, started)
    lines = [f"|Y|={len(ys)} components={len(tr.components)} tau={tr.tau}"]
    for comp, tf, ef in list(zip(tr.components, tr.tight_flags, tr.essential_flags))[:20]:
        tag = "essential-tight" if ef else ("tight" if tf else "loose")
        lines.append(f"  size={len(comp)} {tag}: {list(comp)[:12]}"
                     + ("..." if len(comp) > 12 else ""))
    if len(tr.components) > 20:
        lines.append(f"  ... {len(tr.components) - 20} more")
    _emit(args, record, "\n".join(lines))
    return 0


def cmd_certify(args) -> int:
    started = time.monotonic()
    D, inp = _load_instance(args)
    xs = _load_x(args, D)
    ys = tuple(v for v in range(D.n) if v not in set(xs))
    cfg = EngineConfig(d=args.d, epsilon=args.eps,
                       threshold_exponent=args.threshold_exp)
    gr = min_gap_partition(D, xs, ys, exhaustive_limit=cfg.exhaustive_x_limit)
    tr = essential_tight_components(D, ys)
    cert = build_certificate(D, xs, ys, gr, tr, cfg)
    record = _record("certify", inp,
                     {"d": args.d, "eps": args.eps, "x_auto": args.x_auto},
                     cert.to_jsonable(), started)
    _emit(args, record, render_text(cert))
    return 0


def cmd_gen(args) -> int:
    started = time.monotonic()
    func, params = FAMILIES[args.family]
    kwargs = {}
    for p in params:
        flag = _GEN_PARAM_FLAGS[p] if p != "d" else "d"
        val = getattr(args, flag, None)
        if val is None:
            if p in ("extra", "copies"):
                val = 0
            elif p == "augment":
                val = False
            elif p == "seed":
                val = args.seed
            else:
                raise InputError(f"family {args.family!r} needs --{p}")
        kwargs[p] = val
    D = func(**kwargs)
    save_edge_list(D, args.output)
    props = {
        "family": args.family,
        "n": D.n,
        "m": D.m,
        "min_outdegree": min_outdegree(D),
        "params": {k: v for k, v in kwargs.items()},
    }
    with open(args.output + ".props.json", "w", encoding="utf-8") as fh:
        fh.write(json.dumps(props, sort_keys=True, indent=2) + "\n")
    record = _record("gen", {"family": args.family, "params": kwargs},
                     {"output": args.output}, props, started)
    human = (
        f"wrote {args.output} ({D.n} vertices, {D.m} arcs, "
        f"min outdegree {props['min_outdegree']})"
    )
    # -o here is the instance path, not a record destination
    _emit(args, record, human, record_path="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="judipart",
        description="judicious bipartitions of digraphs with outdegree bounds",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="run the full partition engine")
    _add_input_args(p)
    p.add_argument("--d", type=int, required=True, help="claimed min outdegree")
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--trials", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--rounds", type=int, default=10, help="local improve sweeps")
    p.add_argument("--p-sweep", default="", help="extra p values, comma separated")
    p.add_argument("--certify", action="store_true", help="print the full certificate")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output", help="also write the JSON record here")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("oracle", help="exact optimum by exhaustive search")
    _add_input_args(p)
    p.add_argument("--limit", type=int, default=24, help="max n for 2^(n-1) scan")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gap", help="minimum-gap partition of X")
    _add_input_args(p)
    xgrp = p.add_mutually_exclusive_group()
    xgrp.add_argument("--x-file", help="file of X vertex ids, one per line")
    xgrp.add_argument("--x-auto", action="store_true",
                      help="X from the degree threshold")
    p.add_argument("--threshold-exp", type=float, default=0.75)
    p.add_argument("--limit", type=int, default=24, help="exhaustive |X| cap")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("tight", help="tight components of D[Y]")
    _add_input_args(p)
    xgrp = p.add_mutually_exclusive_group()
    xgrp.add_argument("--x-file")
    xgrp.add_argument("--x-auto", action="store_true")
    p.add_argument("--threshold-exp", type=float, default=0.75)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tight)

    p = sub.add_parser("certify", help="evaluate all in-regime checks")
    _add_input_args(p)
    xgrp = p.add_mutually_exclusive_group()
    xgrp.add_argument("--x-file")
    xgrp.add_argument("--x-auto", action="store_true")
    p.add_argument("--threshold-exp", type=float, default=0.75)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--copies", type=int)
    p.add_argument("--extra", type=int)
    p.add_argument("--augment", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LimitError as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return 3
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
