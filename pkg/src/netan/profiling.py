"""Statistical profiling reports: global stats, per-measure histograms and a
Spearman rank-correlation matrix, rendered as JSON or self-contained HTML.

Degenerate correlations (a constant score vector has no ranking) are kept as
``None``/``null``/an em-dash rather than being forced to a number.
"""

from __future__ import annotations

import datetime as _dt
import html as _html
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import centrality as _c
from .errors import PreconditionError
from .graph import Graph, connected_components, local_clustering
from .kernels import multisource_bfs

DEFAULT_MEASURES = ("degree", "closeness", "betweenness", "katz", "pagerank")
EXACT_BETWEENNESS_LIMIT = 2000
EXACT_DIAMETER_LIMIT = 1000


def average_ranks(x) -> np.ndarray:
    """Ranks 1..n with ties averaged."""
    x = np.asarray(x, dtype=np.float64)
    order = np.argsort(x, kind="stable")
    ranks = np.empty(x.shape[0])
    sx = x[order]
    i = 0
    while i < len(sx):
        j = i
        while j + 1 < len(sx) and sx[j + 1] == sx[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0
        i = j + 1
    return ranks


def spearman(x, y) -> float | None:
    """Rank correlation with average ranks; ``None`` when either input has
    zero rank variance (no defined ranking)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise PreconditionError("score vectors differ in length")
    if x.size < 2:
        raise PreconditionError("need at least two observations")
    rx = average_ranks(x)
    ry = average_ranks(y)
    dx = rx - rx.mean()
    dy = ry - ry.mean()
    vx = float(dx @ dx)
    vy = float(dy @ dy)
    if vx == 0.0 or vy == 0.0:
        return None
    return float((dx @ dy) / math.sqrt(vx * vy))


# ---------------------------------------------------------------------------
# report building
# ---------------------------------------------------------------------------


@dataclass
class ProfileReport:
    glob: dict
    measures: dict  # name -> {status, scores-stats, histogram, ...}
    correlation: dict  # {"order": [names], "matrix": [[float|None]]}
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "global": self.glob,
            "measures": self.measures,
            "correlation": self.correlation,
            "meta": self.meta,
        }


def _double_sweep_lower_bound(g: Graph, start: int) -> int:
    indptr, nbrs, _, _ = g.csr()
    d1 = multisource_bfs(indptr, nbrs, np.array([start], np.int64))
    d1[~np.isfinite(d1)] = -1.0
    far = int(np.argmax(d1))
    d2 = multisource_bfs(indptr, nbrs, np.array([far], np.int64))
    d2[~np.isfinite(d2)] = -1.0
    return int(d2.max())


def _diameter_info(g: Graph) -> dict:
    """Exact diameter via all-source BFS when small, else a double-sweep
    lower bound; disconnected graphs are measured on the largest component."""
    if g.n == 0:
        return {"value": 0, "exact": True, "largest_component_only": False}
    comps = connected_components(g)
    whole = comps.k == 1
    if whole:
        sub = g
        vertices = np.arange(g.n)
    else:
        sizes = comps.sizes()
        big = int(np.argmax(sizes))
        vertices = comps.members(big)
        remap = -np.ones(g.n, np.int64)
        remap[vertices] = np.arange(vertices.size)
        us, vs, ws = g.edge_arrays()
        keep = (remap[us] >= 0) & (remap[vs] >= 0)
        sub = Graph.from_edges(
            int(vertices.size), remap[us[keep]], remap[vs[keep]], None
        )
    if sub.n <= 1:
        return {"value": 0, "exact": True, "largest_component_only": not whole}
    if sub.n <= EXACT_DIAMETER_LIMIT:
        indptr, nbrs, _, _ = sub.csr()
        ecc = 0
        for s in range(sub.n):
            d = multisource_bfs(indptr, nbrs, np.array([s], np.int64))
            ecc = max(ecc, int(d[np.isfinite(d)].max()))
        return {"value": ecc, "exact": True, "largest_component_only": not whole}
    return {
        "value": _double_sweep_lower_bound(sub, 0),
        "exact": False,
        "largest_component_only": not whole,
    }


def _summary_stats(scores: np.ndarray) -> dict:
    s = np.sort(scores)
    n = s.shape[0]
    total = float(s.sum())
    if total > 0:
        gini = float(((2 * np.arange(1, n + 1) - n - 1) * s).sum() / (n * total))
    else:
        gini = 0.0
    return {
        "min": float(s[0]),
        "max": float(s[-1]),
        "mean": float(s.mean()),
        "median": float(np.median(s)),
        "stddev": float(s.std()),
        "gini": gini,
    }


def _histogram(scores: np.ndarray, bins: int | None) -> dict:
    n = scores.shape[0]
    if bins is None:
        bins = max(1, math.ceil(math.log2(n)) + 1) if n > 1 else 1
    counts, edges = np.histogram(scores, bins=bins)
    return {"bin_edges": [float(e) for e in edges], "counts": [int(c) for c in counts]}


def _run_measure(g: Graph, name: str, seed, connected: bool):
    if name == "degree":
        return _c.degree_centrality(g), None
    if name == "closeness":
        if not g.directed and not connected:
            res = _c.harmonic(g)
            return res, "graph is disconnected; harmonic centrality used instead"
        return _c.closeness(g), None
    if name == "harmonic":
        return _c.harmonic(g), None
    if name == "betweenness":
        if g.n <= EXACT_BETWEENNESS_LIMIT:
            return _c.betweenness(g, normalized=True), None
        res = _c.betweenness_approx(g, epsilon=0.01, delta=0.1, seed=seed)
        return res, (
            f"n > {EXACT_BETWEENNESS_LIMIT}: sampled approximation "
            "(epsilon=0.01, delta=0.1)"
        )
    if name == "katz":
        return _c.katz(g), None
    if name == "pagerank":
        return _c.pagerank(g), None
    raise ValueError(f"unknown measure {name!r}")


def build_profile(
    g: Graph,
    measures=None,
    seed=None,
    bins: int | None = None,
    timestamp: bool = True,
) -> ProfileReport:
    """Run the selected measures and assemble the statistics report.

    Per-measure failures are recorded in the report instead of aborting it.
    """
    from .kernels import BACKEND

    requested = list(measures) if measures is not None else list(DEFAULT_MEASURES)
    connected = False
    comp_count = 0
    if g.n > 0 and not g.directed:
        comp_count = connected_components(g).k
        connected = comp_count == 1
    glob = {
        "n": g.n,
        "m": g.m,
        "directed": g.directed,
        "weighted": g.weighted,
        "density": float(2.0 * g.m / (g.n * (g.n - 1))) if g.n > 1 else 0.0,
        "components": comp_count,
        "mean_clustering": float(local_clustering(g).mean()) if g.n and not g.directed else 0.0,
        "diameter": _diameter_info(g) if not g.directed else None,
    }
    results: dict[str, np.ndarray] = {}
    measures_out: dict[str, dict] = {}
    for name in requested:
        entry: dict = {}
        try:
            res, note = _run_measure(g, name, seed, connected)
            entry["status"] = "ok"
            entry["measure"] = res.measure
            entry["normalized"] = res.normalized
            if note:
                entry["note"] = note
            entry["stats"] = _summary_stats(res.scores)
            entry["histogram"] = _histogram(res.scores, bins)
            for key in ("num_samples", "epsilon", "delta", "alpha", "iterations"):
                if key in res.extras:
                    entry[key] = res.extras[key]
            results[name] = res.scores
        except Exception as exc:  # per-measure failure stays in the report
            entry["status"] = "error"
            entry["error"] = f"{type(exc).__name__}: {exc}"
        measures_out[name] = entry
    ok_names = [name for name in requested if name in results]
    matrix: list[list[float | None]] = []
    for a in ok_names:
        row: list[float | None] = []
        for b in ok_names:
            row.append(spearman(results[a], results[b]) if g.n >= 2 else None)
        matrix.append(row)
    meta = {"seed": seed, "backend": BACKEND}
    if timestamp:
        meta["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat()
    return ProfileReport(
        glob=glob,
        measures=measures_out,
        correlation={"order": ok_names, "matrix": matrix},
        meta=meta,
    )


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def render_json(report: ProfileReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True, allow_nan=False)


def _svg_histogram(hist: dict, width=420, height=120) -> str:
    counts = hist["counts"]
    if not counts or max(counts) == 0:
        return "<svg/>"
    peak = max(counts)
    bar_w = width / len(counts)
    bars = []
    for i, c in enumerate(counts):
        h = 0 if peak == 0 else (c / peak) * (height - 10)
        bars.append(
            f'<rect x="{i * bar_w:.1f}" y="{height - h:.1f}" '
            f'width="{max(bar_w - 1, 1):.1f}" height="{h:.1f}" fill="#4878a8"/>'
        )
    return (
        f'<svg viewBox="0 0 {width} {height}" width="{width}" height="{height}" '
        f'xmlns="http://www.w3.org/2000/svg">{"".join(bars)}</svg>'
    )


def _cell_color(v: float | None) -> str:
    if v is None:
        return "#eeeeee"
    t = (v + 1.0) / 2.0
    r = int(255 * (1 - t) + 40 * t)
    gr = int(230 * (1 - t) + 90 * t)
    b = int(230 * (1 - t) + 150 * t)
    return f"rgb({r},{gr},{b})"


def render_html(report: ProfileReport) -> str:
    d = report.to_dict()
    g = d["global"]
    parts = [
        "<!DOCTYPE html><html><head><meta charset='utf-8'>",
        "<title>network profile</title>",
        "<style>body{font-family:sans-serif;margin:2em;}table{border-collapse:collapse;}"
        "td,th{border:1px solid #999;padding:4px 8px;text-align:right;}"
        "h2{margin-top:1.4em;}.deg{color:#777;}</style></head><body>",
        "<h1>Network profile</h1>",
        "<h2>Global properties</h2><table>",
    ]
    for key in sorted(g):
        parts.append(
            f"<tr><th>{_html.escape(str(key))}</th>"
            f"<td>{_html.escape(json.dumps(g[key]))}</td></tr>"
        )
    parts.append("</table>")
    for name, entry in d["measures"].items():
        parts.append(f"<h2>{_html.escape(name)}</h2>")
        if entry.get("status") != "ok":
            parts.append(f"<p class='deg'>{_html.escape(entry.get('error', 'failed'))}</p>")
            continue
        if "note" in entry:
            parts.append(f"<p class='deg'>{_html.escape(entry['note'])}</p>")
        stats = entry["stats"]
        parts.append("<table><tr>")
        parts.append("".join(f"<th>{_html.escape(k)}</th>" for k in sorted(stats)))
        parts.append("</tr><tr>")
        parts.append("".join(f"<td>{stats[k]!r}</td>" for k in sorted(stats)))
        parts.append("</tr></table>")
        parts.append(_svg_histogram(entry["histogram"]))
    order = d["correlation"]["order"]
    matrix = d["correlation"]["matrix"]
    parts.append("<h2>Spearman rank correlations</h2><table><tr><th></th>")
    parts.append("".join(f"<th>{_html.escape(nm)}</th>" for nm in order))
    parts.append("</tr>")
    for i, nm in enumerate(order):
        parts.append(f"<tr><th>{_html.escape(nm)}</th>")
        for v in matrix[i]:
            label = "&mdash;" if v is None else f"{v:.3f}"
            parts.append(f"<td style='background:{_cell_color(v)}'>{label}</td>")
        parts.append("</tr>")
    parts.append("</table>")
    ts = d["meta"].get("generated_at")
    if ts:
        parts.append(f"<p class='deg'>generated {_html.escape(ts)}</p>")
    parts.append("</body></html>")
    return "".join(parts)
