"""Weak double cycles: recognition, structure, dihedral isomorphisms, bracelets.

An m-WDC is described by a ring of small cycles ``K_0 .. K_{m-1}``.  ``P_i``
is the directed path shared by ``K_i`` and ``K_{i+1}``; the small cycle
``K_i`` runs ``P_{i-1} -> A_i -> P_i -> B_i -> P_{i-1}``, where the sections
``A_i`` and ``B_i`` are (possibly empty) paths of linear vertices.  The two
big cycles are ``P_0 A_1 P_1 A_2 ...`` and ``P_{m-1} B_{m-1} P_{m-2} ...``.
Every such ring with ``m >= 3`` is a WDC and every WDC has this form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graphs import (
    CycleCapExceeded,
    Digraph,
    Graph,
    GraphError,
    Multigraph,
    _vkey,
    dgtomg,
    enumerate_cycles,
)

Bracelet = str


class WDCError(ValueError):
    pass


@dataclass(frozen=True)
class WDCStructure:
    overlaps: tuple[tuple, ...]    # P_i, shared by K_i and K_{i+1}
    sections_a: tuple[tuple, ...]  # A_i, from end(P_{i-1}) to start(P_i)
    sections_b: tuple[tuple, ...]  # B_i, from end(P_i) to start(P_{i-1})

    def __post_init__(self):
        m = len(self.overlaps)
        if m < 3 or len(self.sections_a) != m or len(self.sections_b) != m:
            raise WDCError("a WDC structure needs m >= 3 small cycles")
        if any(len(p) == 0 for p in self.overlaps):
            raise WDCError("overlaps must be nonempty")
        vs = self.vertex_order()
        if len(set(vs)) != len(vs):
            raise WDCError("structure lists a vertex twice")

    @property
    def m(self) -> int:
        return len(self.overlaps)

    def tokens(self) -> tuple[tuple[int, int, int], ...]:
        """Per small cycle: (overlap_next, section_a_len, section_b_len)."""
        return tuple((len(p), len(a), len(b))
                     for p, a, b in zip(self.overlaps, self.sections_a, self.sections_b))

    def vertex_order(self) -> list:
        out: list = []
        for p, a, b in zip(self.overlaps, self.sections_a, self.sections_b):
            out.extend(p)
            out.extend(a)
            out.extend(b)
        return out

    def arcs(self) -> set:
        m = self.m
        arcs = set()
        for i in range(m):
            p = self.overlaps[i]
            arcs.update(zip(p, p[1:]))
            prev = self.overlaps[i - 1]
            for path in ((prev[-1], *self.sections_a[i], p[0]),
                         (p[-1], *self.sections_b[i], prev[0])):
                arcs.update(zip(path, path[1:]))
        return arcs

    def digraph(self) -> Digraph:
        return Digraph(frozenset(self.vertex_order()), frozenset(self.arcs()))

    def small_cycle(self, i: int) -> tuple:
        i %= self.m
        return (*self.overlaps[i - 1], *self.sections_a[i], *self.overlaps[i], *self.sections_b[i])

    def big_cycles(self) -> tuple[tuple, tuple]:
        m = self.m
        one: list = []
        for i in range(m):
            one.extend(self.overlaps[i])
            one.extend(self.sections_a[(i + 1) % m])
        two: list = []
        for i in range(m - 1, -1, -1):
            two.extend(self.overlaps[i])
            two.extend(self.sections_b[i])
        return tuple(one), tuple(two)

    def linear_vertices(self) -> frozenset:
        out = set()
        for p, a, b in zip(self.overlaps, self.sections_a, self.sections_b):
            out.update(p[1:-1])
            out.update(a)
            out.update(b)
        return frozenset(out)

    def is_nonlinear(self) -> bool:
        return not self.linear_vertices()

    def nonlinear_reduct(self) -> "WDCStructure":
        """Drop every linear vertex (the structure of the smoothed WDC)."""
        ps = tuple(p if len(p) <= 2 else (p[0], p[-1]) for p in self.overlaps)
        empty = tuple(() for _ in ps)
        return WDCStructure(ps, empty, empty)

    def to_dot(self, name: str = "WDC") -> str:
        palette = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"]
        colour = {}
        for i in range(self.m):
            cyc = self.small_cycle(i)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                colour.setdefault((a, b), palette[i % len(palette)])
        lines = [f"digraph {name} {{"]
        for v in sorted(self.vertex_order(), key=_vkey):
            lines.append(f'  "{v}";')
        for a, b in sorted(self.arcs(), key=lambda e: (_vkey(e[0]), _vkey(e[1]))):
            lines.append(f'  "{a}" -> "{b}" [color={colour.get((a, b), "black")}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- recognition -------------------------------------------------------------------

def _runs(x: Sequence, inter: set, y_arcs: set) -> list[list]:
    """Maximal runs of cycle x inside another cycle: consecutive x-vertices
    belong to the same run iff the x-arc between them is also an arc of y."""
    n = len(x)
    arc_in = [(x[j], x[(j + 1) % n]) in y_arcs for j in range(n)]
    starts = [j for j in range(n) if x[j] in inter and not arc_in[j - 1]]
    runs = []
    for s in starts:
        run = [x[s]]
        j = s
        while arc_in[j]:
            j = (j + 1) % n
            run.append(x[j])
        runs.append(run)
    return runs


def _cycle_arcs(c: Sequence) -> set:
    return set(zip(c, tuple(c[1:]) + tuple(c[:1])))


def recognize_wdc(G: Digraph, cap: int | None = None) -> WDCStructure | None:
    """Return a WDC structure of G, or None if G is not a WDC.

    The structure is read off the two big cycles: they are the unique pair of
    cycles meeting in more than one run; the runs are the overlap paths and
    the gaps are the sections.  The result is checked to generate exactly G.
    """
    if not G.arcs:
        return None
    try:
        cycles = enumerate_cycles(G, cap)
    except CycleCapExceeded:
        return None
    m = len(cycles) - 2
    if m < 3:
        return None
    arcsets = [_cycle_arcs(c) for c in cycles]
    vsets = [set(c) for c in cycles]
    pair = None
    for i, j in itertools.combinations(range(len(cycles)), 2):
        inter = vsets[i] & vsets[j]
        if len(inter) < 2:
            continue
        if len(_runs(cycles[i], inter, arcsets[j])) >= 2:
            if pair is not None:
                return None
            pair = (i, j)
    if pair is None:
        return None
    X, Y = cycles[pair[0]], cycles[pair[1]]
    runs = _runs(X, vsets[pair[0]] & vsets[pair[1]], arcsets[pair[1]])
    if len(runs) != m:
        return None
    # order runs along X starting from the run holding X[0]
    pos = {v: k for k, v in enumerate(X)}
    runs.sort(key=lambda r: pos[r[0]])
    n = len(X)
    sections_a = []
    for i in range(m):
        prev, cur = runs[i - 1], runs[i]
        s, e = (pos[prev[-1]] + 1) % n, pos[cur[0]]
        sections_a.append(tuple(X[(s + t) % n] for t in range((e - s) % n)))
    # Y must visit the runs in reverse order; B_i lies between P_i and P_{i-1}
    ypos = {v: k for k, v in enumerate(Y)}
    ny = len(Y)
    sections_b = []
    for i in range(m):
        cur, prev = runs[i], runs[i - 1]
        if cur[-1] not in ypos or prev[0] not in ypos:
            return None
        s, e = (ypos[cur[-1]] + 1) % ny, ypos[prev[0]]
        seg = tuple(Y[(s + t) % ny] for t in range((e - s) % ny))
        sections_b.append(seg)
    try:
        S = WDCStructure(tuple(tuple(r) for r in runs), tuple(sections_a), tuple(sections_b))
    except WDCError:
        return None
    if set(S.vertex_order()) != set(G.vertices) or S.arcs() != set(G.arcs):
        return None
    return S


def require_wdc(G: Digraph) -> WDCStructure:
    S = recognize_wdc(G)
    if S is None:
        raise WDCError("digraph is not a weak double cycle")
    return S


def cycle_multigraph(G: Digraph, cap: int | None = None) -> Multigraph:
    """Vertices are the cycles of G (as vertex tuples); edge multiplicity is the
    number of shared vertices, and each cycle carries a loop of its length."""
    cycles = enumerate_cycles(G, cap)
    mult = {}
    for c in cycles:
        mult[frozenset((c,))] = len(c)
    for c, d in itertools.combinations(cycles, 2):
        k = len(set(c) & set(d))
        if k:
            mult[frozenset((c, d))] = k
    return Multigraph(frozenset(cycles), mult)


# -- splitting ---------------------------------------------------------------------

def split_vertex(G: Digraph, x, u, v) -> Digraph:
    """Replace x by an arc u -> v; in-arcs of x enter u, out-arcs leave v."""
    if x not in G.vertices:
        raise GraphError(f"vertex {x!r} missing")
    if u == v or (u in G.vertices and u != x) or (v in G.vertices and v != x):
        raise GraphError("new vertices must be fresh and distinct")
    arcs = {(a, b) for a, b in G.arcs if x not in (a, b)}
    arcs |= {(a, u) for a in G.pred[x]}
    arcs |= {(v, b) for b in G.succ[x]}
    arcs.add((u, v))
    return Digraph((G.vertices - {x}) | {u, v}, frozenset(arcs))


def split_arc(G: Digraph, arc: tuple, v) -> Digraph:
    x, y = arc
    if (x, y) not in G.arcs:
        raise GraphError(f"arc {arc!r} missing")
    if v in G.vertices:
        raise GraphError(f"vertex {v!r} is not fresh")
    arcs = (set(G.arcs) - {(x, y)}) | {(x, v), (v, y)}
    return Digraph(G.vertices | {v}, frozenset(arcs))


# -- dihedral traversals -----------------------------------------------------------

@dataclass(frozen=True)
class DihedralMap:
    rotation: int
    reflected: bool = False
    transposed: bool = False

    def compose(self, other: "DihedralMap", m: int) -> "DihedralMap":
        """self after other, as maps j -> r + s*j on Z_m."""
        s = -1 if self.reflected else 1
        return DihedralMap((self.rotation + s * other.rotation) % m,
                           self.reflected != other.reflected,
                           self.transposed != other.transposed)


def dihedral_maps(m: int, transposed: bool | None = False) -> list[DihedralMap]:
    ts = (False, True) if transposed is None else (transposed,)
    return [DihedralMap(r, f, t) for t in ts for f in (False, True) for r in range(m)]


def traverse(S: WDCStructure, d: DihedralMap) -> tuple[tuple, list]:
    """Re-index S by d.  Returns (tokens, vertex order).

    Untransposed traversals are WDC structures of the same digraph;
    transposed ones are structures of the transposed digraph.  Two traversals
    with equal tokens induce an isomorphism by matching vertex orders.
    """
    m = S.m
    toks = []
    order: list = []
    for j in range(m):
        if not d.reflected:
            i = (d.rotation + j) % m
            p = S.overlaps[i]
            a, b = S.sections_a[i], S.sections_b[i]
        else:
            i = (d.rotation - j) % m
            p = S.overlaps[(d.rotation - j - 1) % m]
            a, b = S.sections_b[i], S.sections_a[i]
        if d.transposed:
            p, a, b = p[::-1], b[::-1], a[::-1]
        toks.append((len(p), len(a), len(b)))
        order.extend(p)
        order.extend(a)
        order.extend(b)
    return tuple(toks), order


def as_structure(S: WDCStructure, d: DihedralMap) -> WDCStructure:
    m = S.m
    ps, as_, bs = [], [], []
    for j in range(m):
        if not d.reflected:
            i = (d.rotation + j) % m
            p, a, b = S.overlaps[i], S.sections_a[i], S.sections_b[i]
        else:
            i = (d.rotation - j) % m
            p, a, b = S.overlaps[(d.rotation - j - 1) % m], S.sections_b[i], S.sections_a[i]
        if d.transposed:
            p, a, b = p[::-1], b[::-1], a[::-1]
        ps.append(tuple(p))
        as_.append(tuple(a))
        bs.append(tuple(b))
    return WDCStructure(tuple(ps), tuple(as_), tuple(bs))


def wdc_isomorphisms(G: Digraph, H: Digraph, SG: WDCStructure | None = None,
                     SH: WDCStructure | None = None) -> list[dict]:
    """All digraph isomorphisms G -> H between WDCs."""
    SG = SG or require_wdc(G)
    SH = SH or require_wdc(H)
    if SG.m != SH.m or len(G.vertices) != len(H.vertices) or len(G.arcs) != len(H.arcs):
        return []
    base_toks, base_order = traverse(SG, DihedralMap(0))
    found: list[dict] = []
    seen: set = set()
    for d in dihedral_maps(SH.m):
        toks, order = traverse(SH, d)
        if toks != base_toks:
            continue
        f = dict(zip(base_order, order))
        key = tuple(sorted(f.items(), key=lambda t: _vkey(t[0])))
        if key in seen:
            continue
        if {(f[a], f[b]) for a, b in G.arcs} != set(H.arcs):
            raise WDCError("positional map failed to be an isomorphism")
        seen.add(key)
        found.append(f)
    return found


def wdc_automorphisms(G: Digraph, S: WDCStructure | None = None) -> list[dict]:
    S = S or require_wdc(G)
    return wdc_isomorphisms(G, G, S, S)


def structure_digraph(tokens: Sequence[tuple[int, int, int]]) -> tuple[WDCStructure, Digraph]:
    """Build the WDC with the given tokens on vertices 0, 1, 2, ... in traversal order."""
    nxt = itertools.count()
    ps, as_, bs = [], [], []
    for p, a, b in tokens:
        ps.append(tuple(next(nxt) for _ in range(p)))
        as_.append(tuple(next(nxt) for _ in range(a)))
        bs.append(tuple(next(nxt) for _ in range(b)))
    S = WDCStructure(tuple(ps), tuple(as_), tuple(bs))
    return S, S.digraph()


# -- orientation of multigraphs ------------------------------------------------------

@dataclass(frozen=True)
class _Thread:
    ends: tuple          # (x, y)
    interior: tuple      # ordered from x to y
    ident: int

    def other(self, v):
        x, y = self.ends
        return y if v == x else x

    def from_end(self, v) -> tuple:
        return self.interior if v == self.ends[0] else self.interior[::-1]


def _threads(M: Multigraph) -> list[_Thread]:
    """Decompose M into maximal paths through degree-2 vertices."""
    for e in M.mult:
        if len(e) == 1:
            raise WDCError("a WDC multigraph has no loops")
    inc: dict = {v: [] for v in M.vertices}
    edges = []
    for e, k in sorted(M.mult.items(), key=lambda t: sorted(map(_vkey, t[0]))):
        a, b = sorted(e, key=_vkey)
        for _ in range(k):
            eid = len(edges)
            edges.append((a, b))
            inc[a].append(eid)
            inc[b].append(eid)
    hubs = [v for v in sorted(M.vertices, key=_vkey) if M.degree(v) != 2]
    if any(M.degree(v) not in (3, 4) for v in hubs):
        raise WDCError("WDC multigraphs have degrees 2, 3 and 4 only")
    used: set = set()
    out = []
    for h in hubs:
        for eid in inc[h]:
            if eid in used:
                continue
            used.add(eid)
            path = [h]
            cur = edges[eid][1] if edges[eid][0] == h else edges[eid][0]
            last = eid
            while M.degree(cur) == 2:
                path.append(cur)
                (nxt,) = [x for x in inc[cur] if x != last]
                used.add(nxt)
                a, b = edges[nxt]
                cur = b if a == cur else a
                last = nxt
            out.append(_Thread((h, cur), tuple(path[1:]), len(out)))
    if len(used) != len(edges):
        raise WDCError("multigraph has a component without branch vertices")
    return out


def _matchings(nodes: list, options: dict) -> Iterator[dict]:
    """Perfect matchings of nodes using the given threads, as node -> thread."""
    if not nodes:
        yield {}
        return
    v = nodes[0]
    for t in options.get(v, ()):
        w = t.other(v)
        if w in nodes[1:]:
            rest = [x for x in nodes[1:] if x != w]
            for sub in _matchings(rest, options):
                yield {v: t, w: t, **sub}


def _orientations(M: Multigraph) -> Iterator[WDCStructure]:
    threads = _threads(M)
    deg3 = [v for v in sorted(M.vertices, key=_vkey) if M.degree(v) == 3]
    deg4 = [v for v in sorted(M.vertices, key=_vkey) if M.degree(v) == 4]
    options: dict = {}
    for t in threads:
        x, y = t.ends
        if x != y and M.degree(x) == 3 and M.degree(y) == 3:
            options.setdefault(x, []).append(t)
            options.setdefault(y, []).append(t)
    for match in _matchings(deg3, options):
        yield from _orient_with_units(M, threads, deg4, match)


def _orient_with_units(M, threads, deg4, match) -> Iterator[WDCStructure]:
    unit_of: dict = {}
    units: list[tuple] = []
    pthreads = {t.ident for t in match.values()}
    for v in deg4:
        unit_of[v] = len(units)
        units.append((v,))
    done = set()
    for v, t in match.items():
        if t.ident in done:
            continue
        done.add(t.ident)
        unit_of[t.ends[0]] = unit_of[t.ends[1]] = len(units)
        units.append(t.ends)
    m = len(units)
    if m < 3:
        return
    links: dict = {}
    for t in threads:
        if t.ident in pthreads:
            continue
        ux, uy = unit_of[t.ends[0]], unit_of[t.ends[1]]
        if ux == uy:
            return
        links.setdefault(frozenset((ux, uy)), []).append(t)
    nbrs: dict = {u: set() for u in range(m)}
    for key, ts in links.items():
        if len(ts) != 2:
            return
        a, b = tuple(key)
        nbrs[a].add(b)
        nbrs[b].add(a)
    if any(len(s) != 2 for s in nbrs.values()):
        return
    # each endpoint of a two-vertex unit meets each neighbouring unit once
    for u, ends in enumerate(units):
        if len(ends) == 2:
            for w in nbrs[u]:
                ts = links[frozenset((u, w))]
                if sorted(_vkey(t.ends[0] if unit_of[t.ends[0]] == u else t.ends[1]) for t in ts) \
                        != sorted(_vkey(e) for e in ends):
                    return
    # walk the ring from the unit holding the least vertex
    start = min(range(m), key=lambda u: min(_vkey(v) for v in units[u]))
    second = min(nbrs[start], key=lambda u: min(_vkey(v) for v in units[u]))
    ring = [start, second]
    while len(ring) < m:
        nxt = [w for w in nbrs[ring[-1]] if w != ring[-2]]
        if len(nxt) != 1 or nxt[0] in ring:
            return
        ring.append(nxt[0])
    if ring[0] not in nbrs[ring[-1]]:
        return
    # ring[j] plays P_j; cycle K_j sits between ring[j-1] and ring[j]
    ptail = {}
    for u, ends in enumerate(units):
        if len(ends) == 2:
            (t,) = [match[ends[0]]]
            ptail[u] = t

    def end_in(t: _Thread, u: int):
        return t.ends[0] if unit_of[t.ends[0]] == u else t.ends[1]

    # orientation of a unit: (start, end)
    def unit_options(u):
        ends = units[u]
        return [(ends[0], ends[0])] if len(ends) == 1 else [(ends[0], ends[1]), (ends[1], ends[0])]

    seen: set = set()

    def rec(j: int, orient: dict, choice: list):
        if j == m:
            # close the ring: cycle K_0 between ring[m-1] and ring[0]
            yield from finish(orient, choice)
            return
        prev_u, cur_u = ring[j - 1], ring[j]
        ts = links[frozenset((prev_u, cur_u))]
        for f in (0, 1):
            ta, tb = ts[f], ts[1 - f]
            for ou in ([orient[cur_u]] if cur_u in orient else unit_options(cur_u)):
                op = orient[prev_u]
                if end_in(ta, prev_u) != op[1] or end_in(ta, cur_u) != ou[0]:
                    continue
                if end_in(tb, cur_u) != ou[1] or end_in(tb, prev_u) != op[0]:
                    continue
                new = dict(orient)
                new[cur_u] = ou
                yield from rec(j + 1, new, choice + [(ta, tb)])
            if ts[0].ends == ts[1].ends and not ts[0].interior and not ts[1].interior:
                break  # two parallel plain edges: both choices coincide

    def finish(orient, choice):
        ps = []
        for j in range(m):
            u = ring[j]
            s, e = orient[u]
            if s == e:
                ps.append((s,))
            else:
                ps.append((s, *ptail[u].from_end(s), e))
        as_, bs = [], []
        for j in range(m):
            ta, tb = choice[j]
            prev_u = ring[j - 1]
            as_.append(tuple(ta.from_end(end_in(ta, prev_u))))
            bs.append(tuple(tb.from_end(end_in(tb, ring[j]))))
        try:
            S = WDCStructure(tuple(ps), tuple(as_), tuple(bs))
        except WDCError:
            return
        key = frozenset(S.arcs())
        if key in seen:
            return
        seen.add(key)
        if dgtomg(S.digraph()) == M:
            yield S

    last = ring[-1]
    for o in unit_options(last):
        # K_0 joins ring[-1] and ring[0]; treat ring[-1] as already oriented
        yield from rec(0, {last: o}, [])


def orientations(M: Multigraph) -> Iterator[Digraph]:
    """All digraphs G (as WDCs, up to duplicates) with dgtomg(G) = M."""
    seen: set = set()
    for S in _orientations(M):
        G = S.digraph()
        if G.arcs in seen:
            continue
        seen.add(G.arcs)
        yield G


def orient_multigraph(M: Multigraph, skew_symmetric: bool = False) -> Digraph:
    """A WDC G with dgtomg(G) = M.

    With ``skew_symmetric`` the first orientation admitting a unit-free
    skew-symmetry is returned.
    """
    for G in orientations(M):
        if not skew_symmetric:
            return G
        if unit_free_skews(G):
            return G
    raise WDCError("multigraph admits no WDC orientation"
                   + (" with a unit-free skew-symmetry" if skew_symmetric else ""))


def unit_free_skews(G: Digraph, S: WDCStructure | None = None) -> list[dict]:
    """Fixed-point-free involutive isomorphisms G -> G^T without units."""
    S = S or require_wdc(G)
    T = G.transpose()
    out = []
    for f in wdc_isomorphisms(G, T, S, as_structure(S, DihedralMap(0, False, True))):
        if any(f[v] == v or f[f[v]] != v for v in f):
            continue
        if any((v, f[v]) in G.arcs for v in f):
            continue
        out.append(f)
    return out


def wdc_preimages(H: Graph) -> Iterator[Digraph]:
    """All WDCs G (as digraphs on V(H)) with dgtog(G) = H.

    Chains of degree-2 vertices of H are either all doubled (runs of
    2-cycles) or all kept single (linear vertices).  A degree-3 vertex of H
    is incident to at most one doubled chain, a degree-4 vertex to none.
    """
    chains = _graph_chains(H)
    if not chains:
        return
    seen: set = set()

    def rec(i: int, doubled: list, load: dict):
        if i == len(chains):
            mult: dict = {}
            for c, d in zip(chains, doubled):
                path = (c[0], *c[1], c[2])
                for a, b in zip(path, path[1:]):
                    e = frozenset((a, b))
                    mult[e] = mult.get(e, 0) + (2 if d else 1)
            try:
                for G in orientations(Multigraph(H.vertices, mult)):
                    if G.arcs not in seen:
                        seen.add(G.arcs)
                        yield G
            except WDCError:
                return
            return
        x, _, y = chains[i]
        for d in (False, True):
            new = dict(load)
            if d:
                for v in (x, y):
                    new[v] = new.get(v, 0) + 1
                if any(H.degree(v) + new[v] > 4 for v in (x, y)):
                    continue
            yield from rec(i + 1, doubled + [d], new)

    yield from rec(0, [], {})


def graph_to_wdc(H: Graph, skew_symmetric: bool = False) -> Digraph:
    """Reconstruct a WDC from its underlying graph.

    Distinct WDCs may share an underlying graph; the preimage with the most
    small cycles is returned (the first one found among equals).  With
    ``skew_symmetric`` only preimages with a unit-free skew-symmetry count.
    """
    best = None
    for G in wdc_preimages(H):
        if skew_symmetric and not unit_free_skews(G):
            continue
        m = len(enumerate_cycles(G)) - 2
        if best is None or m > best[0]:
            best = (m, G)
    if best is None:
        raise WDCError("graph is not the underlying graph of a WDC")
    return best[1]


def _graph_chains(H: Graph) -> list[tuple]:
    """Maximal paths of H through degree-2 vertices, as (x, interior, y).
    A cycle component becomes a single closed chain at its least vertex."""
    hubs = [v for v in sorted(H.vertices, key=_vkey) if H.degree(v) != 2]
    used: set = set()
    out = []
    for h in hubs:
        for w in sorted(H.adj[h], key=_vkey):
            e = frozenset((h, w))
            if e in used:
                continue
            used.add(e)
            path = []
            prev, cur = h, w
            while H.degree(cur) == 2:
                path.append(cur)
                (nxt,) = [x for x in H.adj[cur] if x != prev]
                used.add(frozenset((cur, nxt)))
                prev, cur = cur, nxt
            out.append((h, tuple(path), cur))
    for v in sorted(H.vertices, key=_vkey):
        if H.degree(v) != 2 or any(frozenset((v, w)) in used for w in H.adj[v]):
            continue
        # isolated cycle: split it into single edges so each is a chain of its own
        cyc = [v]
        prev, cur = None, v
        while True:
            nxt = min((x for x in H.adj[cur] if x != prev), key=_vkey)
            if nxt == v:
                break
            cyc.append(nxt)
            prev, cur = cur, nxt
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            used.add(frozenset((a, b)))
            out.append((a, (), b))
    return out


# -- bracelets -----------------------------------------------------------------------

def bracelet_of(S: WDCStructure) -> Bracelet:
    """Overlap of one vertex -> '0', of two vertices -> '1' (nonlinear WDCs only)."""
    if not S.is_nonlinear():
        raise WDCError("bracelets are defined for nonlinear WDCs")
    return "".join("1" if len(p) == 2 else "0" for p in S.overlaps)


def bracelet_images(b: Bracelet) -> list[Bracelet]:
    m = len(b)
    rots = [b[i:] + b[:i] for i in range(m)] or [b]
    return rots + [r[::-1] for r in rots]


def bracelet_canon(b: Bracelet) -> Bracelet:
    if set(b) - {"0", "1"}:
        raise WDCError(f"not a binary string: {b!r}")
    return min(bracelet_images(b))


def enumerate_bracelets(m: int) -> list[Bracelet]:
    if m < 1:
        raise WDCError("bracelet length must be positive")
    return sorted({bracelet_canon("".join(t)) for t in itertools.product("01", repeat=m)})
