"""Reading and writing graphs: whitespace edge lists and METIS files.

Edge list: one ``u v [w]`` per line, 0-indexed, ``#`` starts a comment.  The
writer emits a ``# n <count>`` header so edgeless/trailing vertices survive a
round trip; the reader falls back to ``max id + 1`` without it.

METIS: 1-indexed, header ``n m [fmt]``, ``%`` comments.  Supported fmt codes
are the plain and edge-weighted variants (``0``/``1``, zero-padded forms
included).  The adjacency rows must be symmetric and must match the header
edge count.
"""

from __future__ import annotations

import numpy as np

from .errors import ParseError
from .graph import Graph

FORMATS = ("edgelist", "metis")


def read_graph(path, fmt: str = "edgelist", directed: bool = False) -> Graph:
    if fmt == "edgelist":
        return _read_edgelist(path, directed)
    if fmt == "metis":
        if directed:
            raise ParseError("METIS files are undirected")
        return _read_metis(path)
    raise ValueError(f"unknown format {fmt!r}")


def write_graph(g: Graph, path, fmt: str = "edgelist") -> None:
    if fmt == "edgelist":
        _write_edgelist(g, path)
    elif fmt == "metis":
        if g.directed:
            raise ValueError("METIS files are undirected")
        _write_metis(g, path)
    else:
        raise ValueError(f"unknown format {fmt!r}")


def _fmt_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() else repr(float(w))


# -- edge list ---------------------------------------------------------------


def _read_edgelist(path, directed: bool) -> Graph:
    us, vs, ws = [], [], []
    declared_n = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line.startswith("#"):
                toks = line[1:].split()
                if len(toks) == 2 and toks[0] == "n":
                    try:
                        declared_n = int(toks[1])
                    except ValueError:
                        raise ParseError("bad vertex count header", lineno)
                continue
            if not line:
                continue
            line = line.split("#", 1)[0]
            toks = line.split()
            if len(toks) not in (2, 3):
                raise ParseError(f"expected 'u v [w]', got {len(toks)} fields", lineno)
            try:
                u, v = int(toks[0]), int(toks[1])
                w = float(toks[2]) if len(toks) == 3 else None
            except ValueError as exc:
                raise ParseError(str(exc), lineno)
            if ws and (w is None) != (ws[0] is None):
                raise ParseError("mixed weighted/unweighted lines", lineno)
            us.append(u)
            vs.append(v)
            ws.append(w)
    weighted = bool(ws) and ws[0] is not None
    if us:
        inferred = max(max(us), max(vs)) + 1
    else:
        inferred = 0
    n = declared_n if declared_n is not None else inferred
    try:
        return Graph.from_edges(
            n,
            np.array(us, np.int64),
            np.array(vs, np.int64),
            np.array([w for w in ws], np.float64) if weighted else None,
            directed=directed,
            weighted=weighted,
        )
    except ValueError as exc:
        raise ParseError(str(exc))


def _write_edgelist(g: Graph, path) -> None:
    us, vs, ws = g.edge_arrays()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# n {g.n}\n")
        if g.weighted:
            for u, v, w in zip(us, vs, ws):
                fh.write(f"{u} {v} {_fmt_weight(w)}\n")
        else:
            for u, v in zip(us, vs):
                fh.write(f"{u} {v}\n")


# -- METIS -------------------------------------------------------------------


def _read_metis(path) -> Graph:
    rows = []
    header = None
    header_line = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line.startswith("%"):
                continue
            if header is None:
                header = line.split()
                header_line = lineno
            else:
                rows.append((lineno, line.split()))
    if header is None:
        raise ParseError("missing METIS header")
    if len(header) not in (2, 3):
        raise ParseError("header must be 'n m [fmt]'", header_line)
    try:
        n, m_decl = int(header[0]), int(header[1])
        fmt = int(header[2]) if len(header) == 3 else 0
    except ValueError as exc:
        raise ParseError(str(exc), header_line)
    if fmt not in (0, 1):
        raise ParseError(f"unsupported METIS fmt code {header[2]}", header_line)
    has_weights = fmt == 1
    if len(rows) != n:
        raise ParseError(
            f"header declares {n} vertices but file has {len(rows)} adjacency rows",
            header_line,
        )

    seen: dict[tuple[int, int], float] = {}
    counts: dict[tuple[int, int], int] = {}
    for u, (lineno, toks) in enumerate(rows):
        if has_weights and len(toks) % 2 != 0:
            raise ParseError("odd token count in weighted adjacency row", lineno)
        step = 2 if has_weights else 1
        row_seen = set()
        for i in range(0, len(toks), step):
            try:
                v1 = int(toks[i])
                w = float(toks[i + 1]) if has_weights else 1.0
            except ValueError as exc:
                raise ParseError(str(exc), lineno)
            if not 1 <= v1 <= n:
                raise ParseError(f"neighbor {v1} out of range [1, {n}]", lineno)
            v = v1 - 1
            if v == u:
                raise ParseError("self-loop not allowed", lineno)
            if v in row_seen:
                raise ParseError(f"duplicate neighbor {v1}", lineno)
            row_seen.add(v)
            key = (min(u, v), max(u, v))
            if key in seen:
                if seen[key] != w:
                    raise ParseError("asymmetric edge weight", lineno)
            else:
                seen[key] = w
            counts[key] = counts.get(key, 0) + 1
    if any(c != 2 for c in counts.values()):
        raise ParseError("adjacency rows are not symmetric")
    if len(seen) != m_decl:
        raise ParseError(
            f"header declares {m_decl} edges but rows list {len(seen)}", header_line
        )
    weighted = has_weights
    if seen:
        us, vs = map(np.array, zip(*seen.keys()))
        ws = np.array(list(seen.values()))
    else:
        us = vs = np.empty(0, np.int64)
        ws = np.empty(0, np.float64)
    return Graph.from_edges(n, us, vs, ws if weighted else None, weighted=weighted)


def _write_metis(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if g.weighted:
            fh.write(f"{g.n} {g.m} 1\n")
            for v in range(g.n):
                parts = []
                for u, w in zip(g._nbr[v], g._wt[v]):
                    parts.append(f"{u + 1} {_fmt_weight(w)}")
                fh.write(" ".join(parts) + "\n")
        else:
            fh.write(f"{g.n} {g.m}\n")
            for v in range(g.n):
                fh.write(" ".join(str(u + 1) for u in g._nbr[v]) + "\n")
