"""Command-line frontend.

Subcommands: generate, centrality, group, community, sparsify, profile.
Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 algorithm
precondition violation.  All numbers are written with full round-trip
precision.  ``NETAN_THREADS`` overrides ``--threads``.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import centrality as _cent
from . import community as _comm
from . import generators as _gen
from . import group as _grp
from . import io as _io
from . import sparsify as _sp
from ._accel import set_threads
from .errors import ParseError, PreconditionError
from .profiling import build_profile, render_html, render_json


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 1
        raise UsageError(message)


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _write_text(path, text: str):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_graph(args):
    if not args.input:
        raise UsageError("--input is required for this subcommand")
    return _io.read_graph(args.input, fmt=args.format)


def _add_common(sub, needs_input=True):
    if needs_input:
        sub.add_argument("--input", help="graph file to read")
        sub.add_argument(
            "--format", choices=_io.FORMATS, default="edgelist", help="graph file format"
        )
    sub.add_argument("--seed", type=int, default=None, help="random seed")
    sub.add_argument("--threads", type=int, default=None, help="worker threads")
    sub.add_argument("--out", default=None, help="output path (default: stdout)")


def _csv(rows, header: str) -> str:
    lines = [header]
    lines += [",".join(_fmt(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def _json_text(obj) -> str:
    import json

    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_generate(args) -> int:
    if args.model == "gnp":
        g = _gen.gnp(args.n, args.p, seed=args.seed)
    elif args.model == "ba":
        g = _gen.barabasi_albert(args.n, args.k0, seed=args.seed)
    elif args.model == "ws":
        g = _gen.watts_strogatz(args.n, args.ws_k, args.ws_beta, seed=args.seed)
    elif args.model == "chunglu":
        if not args.weights:
            raise UsageError("chunglu needs --weights w1,w2,...")
        weights = [float(x) for x in args.weights.split(",")]
        g = _gen.chung_lu(weights, seed=args.seed)
    elif args.model == "plantedpartition":
        if not args.blocks:
            raise UsageError("plantedpartition needs --blocks s1,s2,...")
        sizes = [int(x) for x in args.blocks.split(",")]
        g, part = _gen.planted_partition(sizes, args.p_in, args.p_out, seed=args.seed)
        if args.partition_out:
            rows = [(v, int(part.labels[v])) for v in range(part.n)]
            _write_text(args.partition_out, _csv(rows, "vertex,community"))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown model {args.model}")
    if args.out is None:
        raise UsageError("generate needs --out")
    _io.write_graph(g, args.out, fmt=args.format)
    sys.stdout.write(f"generated n={g.n} m={g.m}\n")
    return 0


def _cmd_centrality(args) -> int:
    g = _load_graph(args)
    m = args.measure
    if m == "top-k-closeness":
        res = _cent.top_k_closeness(g, args.k)
        text = _csv(res.items, "vertex,score")
        _write_text(args.out, text)
        sys.stdout.write(
            f"completed_sssps={res.completed_sssps} pruned_sssps={res.pruned_sssps}\n"
        )
        return 0
    if m == "improve-betweenness":
        if args.target is None:
            raise UsageError("improve-betweenness needs --target")
        res = _cent.improve_betweenness(g, args.target, args.budget)
        rows = [
            (i + 1, u, v, s)
            for i, ((u, v), s) in enumerate(zip(res.edges, res.scores))
        ]
        _write_text(args.out, _csv(rows, "round,u,v,score"))
        return 0
    if m == "degree":
        res = _cent.degree_centrality(g)
    elif m == "closeness":
        res = _cent.closeness(g)
    elif m == "harmonic":
        res = _cent.harmonic(g, normalized=args.normalized)
    elif m == "betweenness":
        res = _cent.betweenness(g, normalized=args.normalized)
    elif m == "betweenness-approx":
        res = _cent.betweenness_approx(
            g, epsilon=args.epsilon, delta=args.delta, seed=args.seed
        )
    elif m == "katz":
        res = _cent.katz(g, alpha=args.alpha)
    elif m == "pagerank":
        res = _cent.pagerank(g, damping=args.damping)
    elif m == "electrical":
        res = _cent.electrical_closeness(
            g, epsilon=args.epsilon, delta=args.delta, seed=args.seed
        )
    else:  # pragma: no cover
        raise UsageError(f"unknown measure {m}")
    rows = [(v, float(res.scores[v])) for v in range(g.n)]
    _write_text(args.out, _csv(rows, "vertex,score"))
    return 0


def _cmd_group(args) -> int:
    g = _load_graph(args)
    meas, method = args.measure, args.method
    if meas == "closeness":
        if method == "localsearch":
            grp = _grp.group_closeness_local_search(g, args.k, seed=args.seed)
        else:
            grp = _grp.group_closeness_greedy(g, args.k)
    elif meas == "harmonic":
        grp = _grp.group_harmonic_greedy(g, args.k)
    elif meas == "degree":
        grp = _grp.group_degree_greedy(g, args.k)
    elif meas == "gedwalk":
        grp = _grp.ged_walk_greedy(g, args.k, alpha=args.alpha)
    else:  # pragma: no cover
        raise UsageError(f"unknown measure {meas}")
    if meas != "closeness" and method == "localsearch":
        raise UsageError("localsearch is only available for group closeness")
    payload = {
        "measure": grp.measure,
        "method": method,
        "k": args.k,
        "members": [int(v) for v in grp.members],
        "score": grp.score,
    }
    _write_text(args.out, _json_text(payload))
    return 0


def _cmd_community(args) -> int:
    g = _load_graph(args)
    if args.seed_vertex is not None:
        com = _comm.expand_seed(
            g, [args.seed_vertex], strategy=args.strategy, size=args.size
        )
        payload = {
            "seeds": list(com.seeds),
            "members": [int(v) for v in com.members],
            "conductance": com.quality,
            "strategy": args.strategy,
        }
        _write_text(args.out, _json_text(payload))
        return 0
    if args.algo == "plm":
        part = _comm.louvain(g, seed=args.seed, refine=args.refine, gamma=args.gamma)
    elif args.algo == "plp":
        part = _comm.label_propagation(g, seed=args.seed)
    else:  # pragma: no cover
        raise UsageError(f"unknown algorithm {args.algo}")
    rows = [(v, int(part.labels[v])) for v in range(part.n)]
    _write_text(args.out, _csv(rows, "vertex,community"))
    q = _comm.modularity(g, part) if g.m else 0.0
    sys.stdout.write(f"communities={part.k} modularity={_fmt(q)}\n")
    return 0


def _cmd_sparsify(args) -> int:
    g = _load_graph(args)
    if args.scorer == "random":
        scores = _sp.score_random(g, seed=args.seed)
    elif args.scorer == "triangles":
        scores = _sp.score_triangles(g)
    elif args.scorer == "jaccard":
        scores = _sp.score_jaccard(g)
    elif args.scorer == "localdeg":
        scores = _sp.score_local_degree(g)
    else:  # pragma: no cover
        raise UsageError(f"unknown scorer {args.scorer}")
    if args.local_filter is not None:
        if not 0.0 <= args.local_filter <= 1.0:
            raise UsageError("--local-filter exponent must lie in [0, 1]")
        scores = _sp.local_filter_transform(g, scores)
    if args.scores_out:
        us, vs, _ = g.edge_arrays()
        rows = [
            (e, int(us[e]), int(vs[e]), float(scores.values[e])) for e in range(g.m)
        ]
        _write_text(args.scores_out, _csv(rows, "edge,u,v,score"))
    sub = _sp.filter_fraction(g, scores, args.fraction)
    if args.out is None:
        raise UsageError("sparsify needs --out")
    _io.write_graph(sub, args.out, fmt=args.format)
    sys.stdout.write(f"kept m={sub.m} of {g.m}\n")
    return 0


def _cmd_profile(args) -> int:
    g = _load_graph(args)
    measures = args.measures.split(",") if args.measures else None
    report = build_profile(
        g,
        measures=measures,
        seed=args.seed,
        bins=args.bins,
        timestamp=not args.no_timestamp,
    )
    text = render_html(report) if args.render == "html" else render_json(report) + "\n"
    _write_text(args.out, text)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    p = _Parser(prog="netan", description="network analysis toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="synthesize a graph")
    g.add_argument("--model", choices=["gnp", "ba", "ws", "chunglu", "plantedpartition"],
                   required=True)
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--p", type=float, default=0.0)
    g.add_argument("--k0", type=int, default=1)
    g.add_argument("--ws-k", type=int, default=2)
    g.add_argument("--ws-beta", type=float, default=0.0)
    g.add_argument("--weights", default=None)
    g.add_argument("--blocks", default=None)
    g.add_argument("--p-in", type=float, default=0.0)
    g.add_argument("--p-out", type=float, default=0.0)
    g.add_argument("--partition-out", default=None)
    g.add_argument("--format", choices=_io.FORMATS, default="edgelist")
    _add_common(g, needs_input=False)
    g.set_defaults(func=_cmd_generate)

    c = sub.add_parser("centrality", help="per-vertex centrality scores")
    c.add_argument("--measure", required=True, choices=[
        "degree", "closeness", "harmonic", "betweenness", "betweenness-approx",
        "katz", "pagerank", "electrical", "top-k-closeness", "improve-betweenness",
    ])
    c.add_argument("--k", type=int, default=10)
    c.add_argument("--target", type=int, default=None)
    c.add_argument("--budget", type=int, default=1)
    c.add_argument("--epsilon", type=float, default=0.05)
    c.add_argument("--delta", type=float, default=0.1)
    c.add_argument("--alpha", type=float, default=None)
    c.add_argument("--damping", type=float, default=0.85)
    c.add_argument("--normalized", action="store_true")
    _add_common(c)
    c.set_defaults(func=_cmd_centrality)

    gr = sub.add_parser("group", help="group centrality maximization")
    gr.add_argument("--measure", required=True,
                    choices=["closeness", "harmonic", "degree", "gedwalk"])
    gr.add_argument("--k", type=int, required=True)
    gr.add_argument("--method", choices=["greedy", "localsearch"], default="greedy")
    gr.add_argument("--alpha", type=float, default=None)
    _add_common(gr)
    gr.set_defaults(func=_cmd_group)

    cm = sub.add_parser("community", help="community detection")
    cm.add_argument("--algo", choices=["plm", "plp"], default="plm")
    cm.add_argument("--refine", action="store_true")
    cm.add_argument("--gamma", type=float, default=1.0)
    cm.add_argument("--seed-vertex", type=int, default=None)
    cm.add_argument("--strategy", choices=["greedy", "clique", "bfs"], default="greedy")
    cm.add_argument("--size", type=int, default=None)
    _add_common(cm)
    cm.set_defaults(func=_cmd_community)

    sp = sub.add_parser("sparsify", help="edge scoring and filtering")
    sp.add_argument("--scorer", required=True,
                    choices=["random", "triangles", "jaccard", "localdeg"])
    sp.add_argument("--local-filter", type=float, default=None,
                    help="apply the top-d^e transform with this exponent")
    sp.add_argument("--fraction", type=float, required=True)
    sp.add_argument("--scores-out", default=None)
    _add_common(sp)
    sp.set_defaults(func=_cmd_sparsify)

    pr = sub.add_parser("profile", help="statistical profiling report")
    pr.add_argument("--measures", default=None,
                    help="comma-separated; default: degree,closeness,betweenness,katz,pagerank")
    pr.add_argument("--bins", type=int, default=None)
    pr.add_argument("--render", choices=["json", "html"], default="json")
    pr.add_argument("--no-timestamp", action="store_true")
    _add_common(pr)
    pr.set_defaults(func=_cmd_profile)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        threads = os.environ.get("NETAN_THREADS")
        if threads is not None:
            set_threads(int(threads))
        elif getattr(args, "threads", None):
            set_threads(args.threads)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    except (ParseError, FileNotFoundError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except PreconditionError as exc:
        sys.stderr.write(f"precondition violated: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
