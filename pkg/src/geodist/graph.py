"""Weighted multidigraphs, Laplacians, reachability and simple paths.

Vertices are labelled 1..n in every public signature; internally arrays are
0-based.  Arc weights are kept exactly as given (``Fraction`` when parsed from
text) and converted to the requested scalar backend only when a matrix is
built.
"""

from __future__ import annotations

import dataclasses
import json
from collections import deque
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .caps import default_caps
from .errors import ParseError, PreconditionError, ResourceError
from .linalg import check_backend, convert, zeros

ONE_WAY = "one-way"
EITHER = "either-direction"
SEPARATION_MODES = (ONE_WAY, EITHER)


@dataclasses.dataclass(frozen=True)
class WeightedDigraph:
    n: int
    arcs: tuple = ()
    allow_loops: bool = False
    undirected: bool = False

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise PreconditionError(f"vertex count must be a positive integer, got {self.n!r}")
        arcs = []
        for idx, arc in enumerate(self.arcs):
            tail, head, weight = arc
            if not (1 <= tail <= self.n and 1 <= head <= self.n):
                raise PreconditionError(f"arc {idx}: vertex out of range 1..{self.n}: {tail}->{head}")
            if tail == head and not self.allow_loops:
                raise PreconditionError(f"arc {idx}: loop at vertex {tail} not allowed")
            if not weight > 0:
                raise PreconditionError(f"arc {idx}: non-positive weight {weight}")
            arcs.append((int(tail), int(head), weight))
        object.__setattr__(self, "arcs", tuple(arcs))

    @property
    def m(self):
        return len(self.arcs)

    @property
    def has_loops(self):
        return any(t == h for t, h, _ in self.arcs)

    def directed(self) -> "WeightedDigraph":
        """The digraph the measures act on: undirected input is symmetrized."""
        return transform(self, "symmetrize") if self.undirected else self

    def weight_matrix(self, backend="float"):
        """Matrix W of total arc weights (parallel arcs summed, loops kept)."""
        g = self.directed()
        w = zeros(g.n, backend)
        for t, h, x in g.arcs:
            w[t - 1, h - 1] += convert(x, backend)
        return w

    def out_arcs(self):
        """Per-vertex list of (head, arc index), 0-based heads."""
        g = self.directed()
        out = [[] for _ in range(g.n)]
        for idx, (t, h, _) in enumerate(g.arcs):
            out[t - 1].append((h - 1, idx))
        return out


@dataclasses.dataclass(frozen=True)
class Path:
    vertices: tuple
    arcs: tuple
    weight: object

    @property
    def length(self):
        return len(self.vertices) - 1


# -- parsing -----------------------------------------------------------------

def parse_weight(token, line=None):
    if isinstance(token, bool):
        raise ParseError(f"invalid weight {token!r}", line)
    try:
        if isinstance(token, (int, Fraction)):
            w = Fraction(token)
        elif isinstance(token, float):
            w = Fraction(token)
        else:
            w = Fraction(str(token).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"invalid weight {token!r}: {exc}", line) from None
    if w <= 0:
        raise ParseError(f"non-positive weight {token}", line)
    return w


def _parse_vertex(token, n, line):
    try:
        v = int(token)
    except (TypeError, ValueError):
        raise ParseError(f"invalid vertex {token!r}", line) from None
    if isinstance(token, float) and token != v:
        raise ParseError(f"invalid vertex {token!r}", line)
    if not 1 <= v <= n:
        raise ParseError(f"vertex index {v} out of range 1..{n}", line)
    return v


def _parse_edge_list(text, undirected, allow_loops):
    n = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise ParseError("first line must hold the vertex count n", lineno)
            try:
                n = int(fields[0])
            except ValueError:
                raise ParseError(f"invalid vertex count {fields[0]!r}", lineno) from None
            if n < 1:
                raise ParseError(f"vertex count must be positive, got {n}", lineno)
            continue
        if len(fields) != 3:
            raise ParseError(f"expected 'tail head weight', got {len(fields)} fields", lineno)
        tail = _parse_vertex(fields[0], n, lineno)
        head = _parse_vertex(fields[1], n, lineno)
        if tail == head and not allow_loops:
            raise ParseError(f"loop at vertex {tail}", lineno)
        arcs.append((tail, head, parse_weight(fields[2], lineno)))
    if n is None:
        raise ParseError("empty input: missing vertex count")
    return WeightedDigraph(n, tuple(arcs), allow_loops=allow_loops, undirected=undirected)


def _parse_json(text, undirected, allow_loops):
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict) or "n" not in doc:
        raise ParseError("JSON graph must be an object with an 'n' field")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"invalid vertex count {n!r}")
    undirected = bool(doc.get("undirected", undirected))
    allow_loops = bool(doc.get("allow_loops", allow_loops))
    arcs = []
    for idx, item in enumerate(doc.get("arcs", [])):
        where = f"arcs[{idx}]"
        if not isinstance(item, dict):
            raise ParseError(f"{where}: arc must be an object")
        try:
            tail = _parse_vertex(item["from"], n, where)
            head = _parse_vertex(item["to"], n, where)
        except KeyError as exc:
            raise ParseError(f"missing field {exc.args[0]!r}", where) from None
        if tail == head and not allow_loops:
            raise ParseError(f"loop at vertex {tail}", where)
        arcs.append((tail, head, parse_weight(item.get("w", 1), where)))
    return WeightedDigraph(n, tuple(arcs), allow_loops=allow_loops, undirected=undirected)


def parse_graph(text: str, format: str = "edge-list", *, undirected=False,
                allow_loops=False) -> WeightedDigraph:
    """Parse an edge list or JSON document into a :class:`WeightedDigraph`.

    Arcs keep their input order and parallel arcs stay separate entries.
    Weights may be decimals or ``p/q`` strings; both are read exactly.
    """
    if format == "edge-list":
        return _parse_edge_list(text, undirected, allow_loops)
    if format == "json":
        return _parse_json(text, undirected, allow_loops)
    raise PreconditionError(f"unknown graph format {format!r}")


def graph_to_json(g: WeightedDigraph) -> dict:
    doc = {"n": g.n, "arcs": [{"from": t, "to": h, "w": str(Fraction(w))} for t, h, w in g.arcs]}
    if g.undirected:
        doc["undirected"] = True
    if g.allow_loops:
        doc["allow_loops"] = True
    return doc


# -- matrices and transforms -------------------------------------------------

def laplacian(g: WeightedDigraph, kind="row", backend="float"):
    """Row Laplacian (out-weight diagonal) or column Laplacian (in-weight diagonal)."""
    check_backend(backend)
    g = g.directed()
    if g.has_loops:
        raise PreconditionError("the Laplacian is defined for loop-free digraphs only")
    if kind not in ("row", "column"):
        raise PreconditionError(f"unknown Laplacian kind {kind!r}")
    lap = -g.weight_matrix(backend)
    axis = 1 if kind == "row" else 0
    sums = -lap.sum(axis=axis)
    for i in range(g.n):
        lap[i, i] = sums[i]
    return lap


def transform(g: WeightedDigraph, op: str) -> WeightedDigraph:
    if op == "reverse":
        return WeightedDigraph(g.n, tuple((h, t, w) for t, h, w in g.arcs),
                               allow_loops=g.allow_loops, undirected=g.undirected)
    if op == "symmetrize":
        if not g.undirected:
            raise PreconditionError("symmetrize expects a graph flagged as undirected")
        arcs = []
        for t, h, w in g.arcs:
            arcs.append((t, h, w))
            if t != h:
                arcs.append((h, t, w))
        return WeightedDigraph(g.n, tuple(arcs), allow_loops=g.allow_loops)
    raise PreconditionError(f"unknown transform {op!r}")


# -- reachability ------------------------------------------------------------

def reachable_from(g: WeightedDigraph, source: int, removed: Optional[int] = None) -> set:
    """Vertices reachable from ``source`` (1-based), optionally deleting one vertex."""
    out = g.out_arcs()
    src, cut = source - 1, None if removed is None else removed - 1
    if src == cut:
        return set()
    seen = {src}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for h, _ in out[v]:
            if h != cut and h not in seen:
                seen.add(h)
                queue.append(h)
    return {v + 1 for v in seen}


def is_strong(g: WeightedDigraph) -> bool:
    g = g.directed()
    full = set(range(1, g.n + 1))
    return reachable_from(g, 1) == full and reachable_from(transform(g, "reverse"), 1) == full


def _one_way(g, i, j, k):
    if j == i or j == k:
        return True
    if k not in reachable_from(g, i):
        return True  # vacuous: no i->k path at all
    return k not in reachable_from(g, i, removed=j)


def separates(g: WeightedDigraph, i: int, j: int, k: int, mode: str = ONE_WAY) -> bool:
    """Whether every i->k path contains j (and every k->i path too, in either-direction mode).

    When k is unreachable from i the empty path set counts as separated.
    """
    g = g.directed()
    for v in (i, j, k):
        if not 1 <= v <= g.n:
            raise PreconditionError(f"vertex {v} out of range 1..{g.n}")
    if mode == ONE_WAY:
        return _one_way(g, i, j, k)
    if mode == EITHER:
        return _one_way(g, i, j, k) and _one_way(g, k, j, i)
    raise PreconditionError(f"unknown separation mode {mode!r}")


def separation_table(g: WeightedDigraph, mode: str = ONE_WAY) -> np.ndarray:
    """Boolean array ``T[i, j, k]`` (0-based) of :func:`separates` for all triples."""
    g = g.directed()
    n = g.n
    reach = [reachable_from(g, i + 1) for i in range(n)]
    avoid = [[reachable_from(g, i + 1, removed=j + 1) for j in range(n)] for i in range(n)]
    one = np.zeros((n, n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                one[i, j, k] = (j == i or j == k or (k + 1) not in reach[i]
                                or (k + 1) not in avoid[i][j])
    if mode == ONE_WAY:
        return one
    if mode == EITHER:
        return one & one.transpose(2, 1, 0)
    raise PreconditionError(f"unknown separation mode {mode!r}")


# -- simple paths ------------------------------------------------------------

def enumerate_simple_paths(g: WeightedDigraph, i: int, k: int, exclude: Optional[int] = None,
                           caps=None) -> list:
    """All simple i->k paths avoiding ``exclude``, parallel arcs giving distinct paths.

    Sorted lexicographically by vertex sequence, then by arc indices.
    """
    g = g.directed()
    caps = caps or default_caps()
    if g.n > caps.path_vertices:
        raise ResourceError(f"path enumeration capped at n <= {caps.path_vertices}, got n = {g.n}")
    if i == exclude:
        return []
    out = g.out_arcs()
    weights = [w for _, _, w in g.arcs]
    found = []

    def walk(v, verts, arcs, on_path):
        if v == k - 1:
            w = 1
            for a in arcs:
                w = w * weights[a]
            found.append(Path(tuple(x + 1 for x in verts), tuple(arcs), w))
            return
        for h, a in out[v]:
            if h in on_path or (exclude is not None and h == exclude - 1):
                continue
            on_path.add(h)
            verts.append(h)
            arcs.append(a)
            walk(h, verts, arcs, on_path)
            arcs.pop()
            verts.pop()
            on_path.discard(h)

    walk(i - 1, [i - 1], [], {i - 1})
    found.sort(key=lambda p: (p.vertices, p.arcs))
    return found


def arc_arrays(g: WeightedDigraph):
    """0-based (tails, heads, weights) for the kernels."""
    g = g.directed()
    tails = np.array([t - 1 for t, _, _ in g.arcs], dtype=np.int64)
    heads = np.array([h - 1 for _, h, _ in g.arcs], dtype=np.int64)
    return tails, heads, [w for _, _, w in g.arcs]


def make_graph(n: int, arcs: Sequence, **kwargs) -> WeightedDigraph:
    """Convenience constructor accepting (tail, head) pairs with unit weight."""
    full = [(a[0], a[1], a[2] if len(a) > 2 else 1) for a in arcs]
    return WeightedDigraph(n, tuple(full), **kwargs)
