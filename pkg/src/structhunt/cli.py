"""Command-line interface.

Exit codes for hunt-config / verify-witness: 0 = verified witness,
2 = hypotheses unmet, 3 = out-of-regime (trace emitted).  All outputs are
structured text; hunt-config writes into a run directory.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .cleaning import (clean_c_plus_black, clean_c_plus_yellow, clean_match,
                       clean_yellow, envelope)
from .configurations import (ConfigParams, verify_configuration,
                             verify_preconfiguration, PRECONFIG_TAGS)
from .exactmath import RootVal
from .fileio import (dump_split, dump_spot_line, load_instance_dir,
                     parse_witness)
from .graphcore import LayeredGraph, fmt_vertex_set, load_graph, parse_vertex_set
from .lks import derive_common_sets
from .pipeline import hunt_configuration
from .regularity import Sampled, check_regular_pair
from .shadows import ShadowQuery, shadow_iter
from .splitting import proportional_split, random_split
from .spots import greedy_dense_cover


def _read_graph(path: str) -> LayeredGraph:
    return load_graph(Path(path).read_text())


def _vs(arg: str, n: int):
    return parse_vertex_set(arg or "", n)


def cmd_shadow(args) -> int:
    g = _read_graph(args.graph)
    U = _vs(args.set, g.n)
    q = ShadowQuery(args.layer, U, Fraction(args.ell), args.depth)
    result = shadow_iter(g, q)
    print(fmt_vertex_set(result))
    return 0


def cmd_split(args) -> int:
    g = _read_graph(args.graph)
    q = [Fraction(x) for x in args.q.split(",")]
    split = random_split(g, g.vertices(), q, args.seed)
    text = dump_split(split)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_check_regular(args) -> int:
    g = _read_graph(args.graph)
    U = _vs(args.U, g.n)
    W = _vs(args.W, g.n)
    mode = "exact" if args.mode == "exact" else Sampled(args.trials, args.seed)
    cert = check_regular_pair(g, args.layer, U, W, Fraction(args.eps), mode)
    print("verdict: %s" % cert.verdict)
    print("density: %s" % cert.density)
    if cert.witness:
        Up, Wp, dsub = cert.witness
        print("witness: U'=%s W'=%s d'=%s" % (fmt_vertex_set(Up),
                                              fmt_vertex_set(Wp), dsub))
    if cert.note:
        print("note: %s" % cert.note)
    return 0 if cert.is_regular else 3


def cmd_find_spots(args) -> int:
    g = _read_graph(args.graph)
    cover, residual = greedy_dense_cover(g, args.layer, Fraction(args.m),
                                         Fraction(args.gamma))
    for s in cover:
        print(dump_spot_line(s))
    print("residual edges: %d" % len(residual))
    return 0


def cmd_clean(args) -> int:
    g = _read_graph(args.graph)
    n = g.n
    sets = [_vs(x, n) for x in args.sets.split("/")]
    Y = _vs(args.Y, n)
    k = Fraction(args.k)
    if args.op == "envelope":
        Pp, Qp, Qpp, rep = envelope(g, args.layer, sets[0], sets[1], Y,
                                    Fraction(args.psi), Fraction(args.Gamma),
                                    Fraction(args.Omega), k)
        print("P' = %s" % fmt_vertex_set(Pp))
        print("Q' = %s" % fmt_vertex_set(Qp))
        print("Q'' = %s" % fmt_vertex_set(Qpp))
    elif args.op == "cyellow":
        Xp, rep = clean_c_plus_yellow(g, args.layer, sets, Y, len(sets) - 1,
                                      Fraction(args.Omega),
                                      RootVal(Fraction(args.Omega2)),
                                      Fraction(args.delta),
                                      Fraction(args.gamma),
                                      Fraction(args.eta), k)
        for i, X in enumerate(Xp):
            print("X%d' = %s" % (i, fmt_vertex_set(X)))
    elif args.op == "cblack":
        clusters = [frozenset(int(v) for v in c.split(",")) if c else frozenset()
                    for c in (args.clusters.split("/") if args.clusters else [])]
        X0p, X1p, rep = clean_c_plus_black(g, args.layer, sets[0], sets[1], Y,
                                           clusters, Fraction(args.delta),
                                           Fraction(args.eta),
                                           Fraction(args.Omega),
                                           RootVal(Fraction(args.Omega2)),
                                           Fraction(args.h), k)
        print("X0' = %s" % fmt_vertex_set(X0p))
        print("X1' = %s" % fmt_vertex_set(X1p))
    elif args.op == "yellow":
        layers = args.layers.split(",")
        Xp, rep = clean_yellow(g, layers, sets, Y, len(layers),
                               Fraction(args.Omega), Fraction(args.gamma),
                               Fraction(args.delta), Fraction(args.eta), k)
        for i, X in enumerate(Xp):
            print("X%d' = %s" % (i, fmt_vertex_set(X)))
    else:  # match
        layers = args.layers.split(",")
        partitions = []
        for part in args.partitions.split(";"):
            left, right = part.split("|")
            partitions.append((frozenset(int(v) for v in left.split(",")),
                               frozenset(int(v) for v in right.split(","))))
        qpairs, Xp, rep = clean_match(g, layers, sets, Y, partitions,
                                      len(layers), Fraction(args.Omega),
                                      Fraction(args.gamma), Fraction(args.eta),
                                      Fraction(args.delta), Fraction(args.eps),
                                      Fraction(args.mu), Fraction(args.d), k)
        for j, (q0, q1) in enumerate(qpairs):
            print("Q%d = %s | %s" % (j, fmt_vertex_set(q0), fmt_vertex_set(q1)))
        for i, X in enumerate(Xp):
            print("X%d' = %s" % (i, fmt_vertex_set(X)))
    print(rep.render())
    return 0


def _build_bundle(instance_dir, seed):
    g, p, sd, MA, MB, split = load_instance_dir(instance_dir)
    b = derive_common_sets(g, sd, p, MA, MB)
    if split is None:
        third = Fraction(1, 3)
        split, _rep = proportional_split(b, third, third, third, seed)
    return b, split


def cmd_hunt(args) -> int:
    b, split = _build_bundle(args.instance_dir, args.seed)
    overrides = {}
    if args.force_case:
        overrides["force_%s" % args.force_case] = True
    out = hunt_configuration(b, split, args.seed, overrides)
    run_dir = Path(args.out or (Path(args.instance_dir) / "run"))
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / "outcome.txt").write_text(out.dump())
    if out.witness is not None:
        from .fileio import dump_witness

        (run_dir / "witness.txt").write_text(
            dump_witness(out.witness, out.config_params))
    print("status: %s" % out.status)
    print("outcome written to %s" % (run_dir / "outcome.txt"))
    return out.exit_code


def cmd_verify_witness(args) -> int:
    b, split = _build_bundle(args.instance_dir, args.seed)
    w = parse_witness(Path(args.witness).read_text())
    cp = getattr(w, "params", None) or ConfigParams()
    try:
        if w.tag in PRECONFIG_TAGS:
            rep = verify_preconfiguration(w, b, split, cp)
        else:
            rep = verify_configuration(w, b, split, cp)
    except TypeError as exc:
        if "exact rational" in str(exc):
            print("witness file lacks required numeric parameters "
                  "(add 'param <name> = <value>' lines)")
            return 3
        raise
    print(rep.render())
    return 0 if rep.ok else 3


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="structhunt",
                                 description="layered-graph structure toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("shadow", help="iterated shadow of a vertex set")
    s.add_argument("--graph", required=True)
    s.add_argument("--layer", default="G")
    s.add_argument("--set", required=True)
    s.add_argument("--ell", required=True)
    s.add_argument("--depth", type=int, default=1)
    s.set_defaults(func=cmd_shadow)

    s = sub.add_parser("split", help="seeded categorical vertex split")
    s.add_argument("--graph", required=True)
    s.add_argument("--q", required=True, help="comma-separated fractions")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("check-regular", help="regular-pair certificate")
    s.add_argument("--graph", required=True)
    s.add_argument("--layer", default="G")
    s.add_argument("-U", required=True)
    s.add_argument("-W", required=True)
    s.add_argument("--eps", required=True)
    s.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    s.add_argument("--trials", type=int, default=2000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_check_regular)

    s = sub.add_parser("find-spots", help="greedy dense cover")
    s.add_argument("--graph", required=True)
    s.add_argument("--layer", default="G")
    s.add_argument("-m", required=True)
    s.add_argument("--gamma", required=True)
    s.set_defaults(func=cmd_find_spots)

    s = sub.add_parser("clean", help="run a cleaning algorithm")
    s.add_argument("op", choices=["envelope", "cyellow", "cblack", "yellow",
                                  "match"])
    s.add_argument("--graph", required=True)
    s.add_argument("--layer", default="G")
    s.add_argument("--layers", default="G", help="per-level layers (yellow/match)")
    s.add_argument("--sets", required=True, help="slash-separated id lists")
    s.add_argument("--Y", default="")
    s.add_argument("--clusters", default="")
    s.add_argument("--partitions", default="")
    s.add_argument("--k", required=True)
    s.add_argument("--psi", default="1/10")
    s.add_argument("--Gamma", default="2")
    s.add_argument("--Omega", default="2")
    s.add_argument("--Omega2", default="1100")
    s.add_argument("--delta", default="1/100")
    s.add_argument("--gamma", default="1/2")
    s.add_argument("--eta", default="1/2")
    s.add_argument("--eps", default="1/100")
    s.add_argument("--mu", default="1")
    s.add_argument("--d", default="1/2")
    s.add_argument("--h", default="2")
    s.set_defaults(func=cmd_clean)

    s = sub.add_parser("hunt-config", help="run the configuration hunt")
    s.add_argument("instance_dir")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--force-case", choices=["huge", "k1", "k2", "matching",
                                            "wa"])
    s.add_argument("--out")
    s.set_defaults(func=cmd_hunt)

    s = sub.add_parser("verify-witness", help="check a witness file")
    s.add_argument("instance_dir")
    s.add_argument("witness")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify_witness)

    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
