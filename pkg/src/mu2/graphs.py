"""Graphs, digraphs and multigraphs, plus smoothing and homeomorphism.

Vertices are opaque hashable ids (integers in practice).  All three graph
kinds are immutable; conversions follow the usual conventions:

* ``gtodg`` turns every edge into two antiparallel arcs,
* ``dgtog`` forgets directions and contracts antiparallel arcs,
* ``dgtomg`` forgets directions without contracting anything,
* ``gtomg`` / ``mgtog`` go between simple graphs and multigraphs.

In a multigraph a loop ``{v}`` of multiplicity ``k`` contributes ``k`` to the
degree of ``v``.
"""

from __future__ import annotations

import heapq
import os
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Mapping

Vertex = Hashable


class GraphError(ValueError):
    pass


class CycleCapExceeded(GraphError):
    pass


class SearchLimitExceeded(GraphError):
    pass


def _vkey(v):
    # numeric order first, then anything else by repr
    return (0, v, "") if isinstance(v, int) else (1, 0, repr(v))


@dataclass(frozen=True)
class Digraph:
    vertices: frozenset
    arcs: frozenset

    def __post_init__(self):
        for a, b in self.arcs:
            if a == b:
                raise GraphError(f"loop at {a!r}")
            if a not in self.vertices or b not in self.vertices:
                raise GraphError(f"arc {(a, b)!r} leaves the vertex set")

    @classmethod
    def from_arcs(cls, arcs: Iterable[tuple], vertices: Iterable = ()) -> "Digraph":
        arcs = frozenset((a, b) for a, b in arcs)
        vs = set(vertices)
        for a, b in arcs:
            vs.add(a)
            vs.add(b)
        return cls(frozenset(vs), arcs)

    @cached_property
    def succ(self) -> dict:
        out = {v: [] for v in self.vertices}
        for a, b in self.arcs:
            out[a].append(b)
        for v in out:
            out[v].sort(key=_vkey)
        return out

    @cached_property
    def pred(self) -> dict:
        out = {v: [] for v in self.vertices}
        for a, b in self.arcs:
            out[b].append(a)
        for v in out:
            out[v].sort(key=_vkey)
        return out

    def indeg(self, v) -> int:
        return len(self.pred[v])

    def outdeg(self, v) -> int:
        return len(self.succ[v])

    def degree(self, v) -> int:
        return self.indeg(v) + self.outdeg(v)

    def sorted_vertices(self) -> list:
        return sorted(self.vertices, key=_vkey)

    def transpose(self) -> "Digraph":
        return Digraph(self.vertices, frozenset((b, a) for a, b in self.arcs))

    def relabel(self, f: Mapping) -> "Digraph":
        return Digraph(frozenset(f[v] for v in self.vertices),
                       frozenset((f[a], f[b]) for a, b in self.arcs))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.sorted_vertices():
            lines.append(f'  "{v}";')
        for a, b in sorted(self.arcs, key=lambda e: (_vkey(e[0]), _vkey(e[1]))):
            lines.append(f'  "{a}" -> "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Graph:
    vertices: frozenset
    edges: frozenset  # of 2-element frozensets

    def __post_init__(self):
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"edge {set(e)!r} is not a 2-element set")
            if not e <= self.vertices:
                raise GraphError(f"edge {set(e)!r} leaves the vertex set")

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable], vertices: Iterable = ()) -> "Graph":
        es = frozenset(frozenset(e) for e in edges)
        vs = set(vertices)
        for e in es:
            vs |= e
        return cls(frozenset(vs), es)

    @cached_property
    def adj(self) -> dict:
        out = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            out[a].add(b)
            out[b].add(a)
        return out

    def degree(self, v) -> int:
        return len(self.adj[v])

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in sorted(self.vertices, key=_vkey):
            lines.append(f'  "{v}";')
        for e in sorted((tuple(sorted(e, key=_vkey)) for e in self.edges),
                        key=lambda t: (_vkey(t[0]), _vkey(t[1]))):
            lines.append(f'  "{e[0]}" -- "{e[1]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Multigraph:
    vertices: frozenset
    mult: Mapping = field(compare=False)  # frozenset of size 1 or 2 -> positive int

    def __post_init__(self):
        clean = {}
        for e, k in self.mult.items():
            e = frozenset(e)
            if not 1 <= len(e) <= 2 or not e <= self.vertices:
                raise GraphError(f"bad multigraph edge {set(e)!r}")
            if k < 0:
                raise GraphError("negative multiplicity")
            if k:
                clean[e] = clean.get(e, 0) + k
        object.__setattr__(self, "mult", clean)

    @cached_property
    def _key(self):
        return (self.vertices, frozenset(self.mult.items()))

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def multiplicity(self, a, b=None) -> int:
        e = frozenset((a,)) if b is None else frozenset((a, b))
        return self.mult.get(e, 0)

    @cached_property
    def _incidence(self) -> dict:
        out = {v: {} for v in self.vertices}
        for e, k in self.mult.items():
            if len(e) == 1:
                (a,) = e
                out[a][a] = k
            else:
                a, b = tuple(e)
                out[a][b] = k
                out[b][a] = k
        return out

    def neighbours(self, v) -> dict:
        """Map neighbour -> multiplicity (``v`` itself when it carries a loop)."""
        return self._incidence[v]

    def degree(self, v) -> int:
        return sum(self._incidence[v].values())

    def edge_count(self) -> int:
        return sum(self.mult.values())

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in sorted(self.vertices, key=_vkey):
            lines.append(f'  "{v}";')
        items = sorted(((tuple(sorted(e, key=_vkey)), k) for e, k in self.mult.items()),
                       key=lambda t: [_vkey(x) for x in t[0]])
        for e, k in items:
            a, b = (e[0], e[0]) if len(e) == 1 else e
            for _ in range(k):
                lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- conversions --------------------------------------------------------------

def gtodg(G: Graph) -> Digraph:
    arcs = set()
    for e in G.edges:
        a, b = tuple(e)
        arcs.add((a, b))
        arcs.add((b, a))
    return Digraph(G.vertices, frozenset(arcs))


def dgtog(G: Digraph) -> Graph:
    return Graph(G.vertices, frozenset(frozenset(a) for a in G.arcs))


def gtomg(G: Graph) -> Multigraph:
    return Multigraph(G.vertices, {e: 1 for e in G.edges})


def mgtog(M: Multigraph) -> Graph:
    return Graph(M.vertices, frozenset(e for e in M.mult if len(e) == 2))


def dgtomg(G: Digraph) -> Multigraph:
    return Multigraph(G.vertices, Counter(frozenset(a) for a in G.arcs))


def convert(G, target: str):
    """Dispatch by name: one of gtodg, dgtog, gtomg, mgtog, dgtomg."""
    table: dict[str, tuple[type, Callable]] = {
        "gtodg": (Graph, gtodg),
        "dgtog": (Digraph, dgtog),
        "gtomg": (Graph, gtomg),
        "mgtog": (Multigraph, mgtog),
        "dgtomg": (Digraph, dgtomg),
    }
    if target not in table:
        raise GraphError(f"unknown conversion {target!r}")
    kind, fn = table[target]
    if not isinstance(G, kind):
        raise GraphError(f"{target} expects a {kind.__name__}")
    return fn(G)


def cycle_graph(n: int) -> Graph:
    """The standard cycle graph on vertices 1..n (n >= 3)."""
    if n < 3:
        raise GraphError("cycle graphs need at least 3 vertices")
    return Graph.from_edges([(i, i % n + 1) for i in range(1, n + 1)])


def cycle_digraph(n: int, start: int = 1) -> Digraph:
    """Directed cycle start -> start+1 -> ... -> start+n-1 -> start (n >= 2)."""
    if n < 2:
        raise GraphError("cycle digraphs need at least 2 vertices")
    vs = list(range(start, start + n))
    return Digraph.from_arcs(zip(vs, vs[1:] + vs[:1]))


def disjoint_union(*gs: Digraph) -> Digraph:
    vs: set = set()
    arcs: set = set()
    for g in gs:
        if vs & g.vertices:
            raise GraphError("vertex sets are not disjoint")
        vs |= g.vertices
        arcs |= g.arcs
    return Digraph(frozenset(vs), frozenset(arcs))


# -- linear vertices and smoothing -------------------------------------------

def linear_vertices(G) -> frozenset:
    if isinstance(G, Digraph):
        return frozenset(v for v in G.vertices if G.indeg(v) == 1 and G.outdeg(v) == 1)
    if isinstance(G, Multigraph):
        return frozenset(v for v in G.vertices if G.degree(v) == 2)
    raise GraphError("linear_vertices expects a Digraph or Multigraph")


def smooth(M: Multigraph, order: Callable | None = None) -> Multigraph:
    """Perform smoothing steps as long as possible.

    At every step the smallest smoothable vertex under ``order`` (a sort key,
    numeric order by default) is removed, so an isolated cycle collapses to a
    loop at its largest vertex.
    """
    key = order or _vkey
    inc: dict = {v: dict(nb) for v, nb in M._incidence.items()}

    def smoothable(v) -> bool:
        nb = inc[v]
        return v not in nb and sum(nb.values()) == 2

    heap = [(key(v), i, v) for i, v in enumerate(M.vertices)]
    heapq.heapify(heap)
    alive = set(M.vertices)
    counter = len(heap)
    while heap:
        _, _, v = heapq.heappop(heap)
        if v not in alive or not smoothable(v):
            continue
        nb = inc.pop(v)
        alive.discard(v)
        ends = [w for w, k in nb.items() for _ in range(k)]
        u, w = ends
        for x in set(ends):
            del inc[x][v]
        if u == w:
            inc[u][u] = inc[u].get(u, 0) + 1
        else:
            inc[u][w] = inc[u].get(w, 0) + 1
            inc[w][u] = inc[w].get(u, 0) + 1
        # neighbours may have become smoothable only when they were linear before
        for x in set(ends):
            heapq.heappush(heap, (key(x), counter, x))
            counter += 1
    mult = {}
    for v, nb in inc.items():
        for w, k in nb.items():
            mult[frozenset((v, w))] = k
    return Multigraph(frozenset(alive), mult)


# -- multigraph isomorphism ----------------------------------------------------

def _refine(M: Multigraph) -> dict:
    colour = {v: (M.degree(v), M.multiplicity(v)) for v in M.vertices}
    while True:
        sig = {
            v: (colour[v], tuple(sorted((repr(colour[w]), k) for w, k in M.neighbours(v).items() if w != v)))
            for v in M.vertices
        }
        ids = {s: i for i, s in enumerate(sorted(set(sig.values()), key=repr))}
        new = {v: ids[sig[v]] for v in M.vertices}
        if len(set(new.values())) == len(set(colour.values())):
            return new
        colour = new


def multigraph_isomorphic(M: Multigraph, N: Multigraph, max_steps: int = 200_000) -> dict | None:
    """Find a multiplicity-preserving bijection V(M) -> V(N), or None.

    Colour refinement followed by backtracking; vertices are matched in
    breadth-first order so that each new vertex is adjacent to a matched one.
    Raises :class:`SearchLimitExceeded` after ``max_steps`` search nodes.
    """
    if len(M.vertices) != len(N.vertices) or M.edge_count() != N.edge_count():
        return None
    cm, cn = _refine_pair(M, N)
    if sorted(Counter(cm.values()).items()) != sorted(Counter(cn.values()).items()):
        return None
    by_colour = defaultdict(list)
    for v in sorted(N.vertices, key=_vkey):
        by_colour[cn[v]].append(v)

    order = _bfs_order(M, cm)
    f: dict = {}
    used: set = set()
    steps = 0

    def consistent(v, w) -> bool:
        if M.multiplicity(v) != N.multiplicity(w):
            return False
        for x, k in M.neighbours(v).items():
            if x != v and x in f and N.multiplicity(w, f[x]) != k:
                return False
        for y, k in N.neighbours(w).items():
            if y != w and y in used:
                # y must be the image of a matched neighbour of v
                pass
        return sum(1 for x in M.neighbours(v) if x != v and x in f) == \
            sum(1 for y in N.neighbours(w) if y != w and y in used)

    def rec(i: int) -> bool:
        nonlocal steps
        if i == len(order):
            return True
        v = order[i]
        anchor = next((x for x in M.neighbours(v) if x != v and x in f), None)
        cands = by_colour[cm[v]]
        if anchor is not None:
            cands = [w for w in N.neighbours(f[anchor]) if w in set(cands)]
        for w in cands:
            if w in used:
                continue
            steps += 1
            if steps > max_steps:
                raise SearchLimitExceeded("multigraph isomorphism search limit exceeded")
            if consistent(v, w):
                f[v] = w
                used.add(w)
                if rec(i + 1):
                    return True
                del f[v]
                used.discard(w)
        return False

    return dict(f) if rec(0) else None


def _refine_pair(M: Multigraph, N: Multigraph) -> tuple[dict, dict]:
    # refine the disjoint union so colours are comparable across M and N
    tag = {("M", v): v for v in M.vertices} | {("N", v): v for v in N.vertices}
    mult = {}
    for e, k in M.mult.items():
        mult[frozenset(("M", v) for v in e)] = k
    for e, k in N.mult.items():
        mult[frozenset(("N", v) for v in e)] = k
    U = Multigraph(frozenset(tag), mult)
    col = _refine(U)
    return ({v: col[("M", v)] for v in M.vertices}, {v: col[("N", v)] for v in N.vertices})


def _bfs_order(M: Multigraph, colour: dict) -> list:
    freq = Counter(colour.values())
    remaining = sorted(M.vertices, key=lambda v: (freq[colour[v]], _vkey(v)))
    seen: set = set()
    order = []
    for root in remaining:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in sorted(M.neighbours(v), key=_vkey):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def homeomorphic(M: Multigraph, N: Multigraph) -> bool:
    return multigraph_isomorphic(smooth(M), smooth(N)) is not None


# -- cycles ---------------------------------------------------------------------

def default_cycle_cap(G: Digraph) -> int:
    env = os.environ.get("MU2_CYCLE_CAP")
    if env:
        return int(env)
    return 10 * max(1, len(G.vertices))


def enumerate_cycles(G: Digraph, cap: int | None = None) -> list[tuple]:
    """All directed cycles of G, each as a vertex tuple starting at its least vertex.

    Raises :class:`CycleCapExceeded` if more than ``cap`` cycles exist
    (default ``10 * |V|``, overridable through ``MU2_CYCLE_CAP``).
    """
    if cap is None:
        cap = default_cycle_cap(G)
    rank = {v: i for i, v in enumerate(G.sorted_vertices())}
    succ = G.succ
    cycles: list[tuple] = []
    for s in G.sorted_vertices():
        r = rank[s]
        path = [s]
        on_path = {s}
        stack = [iter(succ[s])]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if w == s:
                cycles.append(tuple(path))
                if len(cycles) > cap:
                    raise CycleCapExceeded(f"more than {cap} cycles")
            elif rank[w] > r and w not in on_path:
                path.append(w)
                on_path.add(w)
                stack.append(iter(succ[w]))
    return cycles
