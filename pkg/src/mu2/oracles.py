"""Brute-force reference implementations.

These share no code with the fast paths beyond the basic data types; they
are slow on purpose and refuse inputs above their size caps.
"""

from __future__ import annotations

from typing import Iterator

import networkx as nx

from .formula import ClauseSet, FormulaError, rename
from .graphs import Digraph


class OracleCapExceeded(ValueError):
    pass


TABLE_CAP = 24


def _var_mask(j: int, nbits: int) -> int:
    """Bitmask over all 2^nbits assignments of the assignments setting bit j."""
    half = 1 << j
    block = ((1 << half) - 1) << half
    length = 2 * half
    total = 1 << nbits
    mask = block
    while length < total:
        mask |= mask << length
        length *= 2
    return mask


def table_sat(F: ClauseSet, cap: int = TABLE_CAP) -> bool:
    """Truth-table satisfiability with one bit per total assignment."""
    if F.has_empty_clause:
        return False
    vs = sorted(F.variables)
    if len(vs) > cap:
        raise OracleCapExceeded(f"{len(vs)} variables exceed the truth-table cap {cap}")
    nbits = len(vs)
    full = (1 << (1 << nbits)) - 1
    pos = {v: _var_mask(j, nbits) for j, v in enumerate(vs)}
    alive = full
    for c in F:
        sat = 0
        for x in c:
            sat |= pos[x] if x > 0 else full ^ pos[-x]
        alive &= sat
        if not alive:
            return False
    return True


def dp_sat(F: ClauseSet) -> bool:
    """Eliminate every variable by DP-reduction; unsatisfiable iff ⊥ appears."""
    clauses = set(F.clauses)
    while True:
        if frozenset() in clauses:
            return False
        vs = {abs(x) for c in clauses for x in c}
        if not vs:
            return True
        v = min(vs)
        pos = [c for c in clauses if v in c]
        neg = [c for c in clauses if -v in c]
        rest = {c for c in clauses if v not in c and -v not in c}
        for p in pos:
            for q in neg:
                r = (p - {v}) | (q - {-v})
                if not any(-x in r for x in r):
                    rest.add(r)
        clauses = rest


def brute_sat(F: ClauseSet, method: str = "both") -> bool:
    if method == "table":
        return table_sat(F)
    if method == "dp":
        return dp_sat(F)
    a, b = table_sat(F), dp_sat(F)
    if a != b:
        raise AssertionError("truth table and DP disagree")
    return a


def brute_mu(F: ClauseSet) -> bool:
    if brute_sat(F):
        return False
    return all(brute_sat(F.without(c)) for c in F)


# -- clause-set isomorphism -------------------------------------------------------------

def _iter_isos(F: ClauseSet, G: ClauseSet, max_vars: int) -> Iterator[dict]:
    if F.n > max_vars or G.n > max_vars:
        raise OracleCapExceeded(f"more than {max_vars} variables")
    if (F.n, F.c) != (G.n, G.c):
        return
    fv = sorted(F.variables)
    gv = sorted(G.variables)
    Gc = G.clauses
    by_max: dict[int, list] = {}
    rank = {v: i for i, v in enumerate(fv)}
    for c in F:
        last = max((rank[abs(x)] for x in c), default=-1)
        by_max.setdefault(last, []).append(c)
    f: dict = {}

    def rec(i: int, used: set):
        if i == len(fv):
            yield dict(f)
            return
        v = fv[i]
        for w in gv:
            if w in used:
                continue
            for s in (1, -1):
                f[v], f[-v] = s * w, -s * w
                if all(frozenset(f[x] for x in c) in Gc for c in by_max.get(i, ())):
                    used.add(w)
                    yield from rec(i + 1, used)
                    used.discard(w)
        f.pop(v, None)
        f.pop(-v, None)

    if F.has_empty_clause != G.has_empty_clause:
        return
    yield from rec(0, set())


def brute_isomorphisms(F: ClauseSet, G: ClauseSet, max_vars: int = 7) -> list[dict]:
    """All complement-preserving literal bijections f with f(F) = G."""
    out = []
    for f in _iter_isos(F, G, max_vars):
        if rename(F, f) != G:
            raise AssertionError("exhaustive search produced a non-isomorphism")
        out.append(f)
    return out


def brute_iso(F: ClauseSet, G: ClauseSet, max_vars: int = 7) -> dict | None:
    for f in _iter_isos(F, G, max_vars):
        if rename(F, f) != G:
            raise AssertionError("exhaustive search produced a non-isomorphism")
        return f
    return None


# -- digraphs ---------------------------------------------------------------------------------

def brute_digraph_isomorphisms(G: Digraph, H: Digraph, max_vertices: int = 16) -> list[dict]:
    """All vertex bijections f with f(E(G)) = E(H), by backtracking."""
    if max(len(G.vertices), len(H.vertices)) > max_vertices:
        raise OracleCapExceeded(f"more than {max_vertices} vertices")
    if len(G.vertices) != len(H.vertices) or len(G.arcs) != len(H.arcs):
        return []
    gv = G.sorted_vertices()
    hv = H.sorted_vertices()
    sig = {v: (G.indeg(v), G.outdeg(v)) for v in gv}
    hsig = {w: (H.indeg(w), H.outdeg(w)) for w in hv}
    f: dict = {}
    used: set = set()
    out = []

    def rec(i: int):
        if i == len(gv):
            out.append(dict(f))
            return
        v = gv[i]
        for w in hv:
            if w in used or hsig[w] != sig[v]:
                continue
            good = True
            for u in gv[:i]:
                if ((u, v) in G.arcs) != ((f[u], w) in H.arcs) or ((v, u) in G.arcs) != ((w, f[u]) in H.arcs):
                    good = False
                    break
            if good:
                f[v] = w
                used.add(w)
                rec(i + 1)
                used.discard(w)
                del f[v]

    rec(0)
    return out


def brute_skews(G: Digraph, max_vertices: int = 14) -> list[dict]:
    """All fixed-point-free involutions sigma with (a,b) in E => (sigma b, sigma a) in E."""
    if len(G.vertices) > max_vertices:
        raise OracleCapExceeded(f"more than {max_vertices} vertices")
    vs = G.sorted_vertices()
    if len(vs) % 2:
        return []
    sigma: dict = {}
    out = []

    def consistent(a, b) -> bool:
        # arcs among paired vertices must have their images
        for x in (a, b):
            for y in G.succ[x]:
                if y in sigma and (sigma[y], sigma[x]) not in G.arcs:
                    return False
            for y in G.pred[x]:
                if y in sigma and (sigma[x], sigma[y]) not in G.arcs:
                    return False
        return True

    def rec():
        free = [v for v in vs if v not in sigma]
        if not free:
            out.append(dict(sigma))
            return
        a = free[0]
        for b in free[1:]:
            sigma[a], sigma[b] = b, a
            if consistent(a, b):
                rec()
            del sigma[a], sigma[b]

    rec()
    return out


def has_unit(G: Digraph, sigma: dict) -> bool:
    return any((v, sigma[v]) in G.arcs for v in G.vertices)


def skew_iso_classes(G: Digraph, skews: list[dict]) -> list[list[dict]]:
    """Group skew-symmetries of G into isomorphism types of (G, sigma)."""
    auts = brute_digraph_isomorphisms(G, G)
    classes: list[list[dict]] = []
    for s in skews:
        for cl in classes:
            t = cl[0]
            if any(all(p[s[v]] == t[p[v]] for v in G.vertices) for p in auts):
                cl.append(s)
                break
        else:
            classes.append([s])
    return classes


# -- incidence-graph isomorphism (networkx) ------------------------------------------------------

def incidence_graph(F: ClauseSet) -> nx.Graph:
    """Literal-clause incidence graph with complement edges; clause-set
    isomorphism is graph isomorphism respecting the node kinds."""
    H = nx.Graph()
    for x in F.literals:
        H.add_node(("l", x), kind="lit")
    for v in F.variables:
        H.add_edge(("l", v), ("l", -v), kind="comp")
    for i, c in enumerate(F.sorted_clauses()):
        H.add_node(("c", i), kind=f"clause{len(c)}")
        for x in c:
            H.add_edge(("c", i), ("l", x), kind="occ")
    return H


def nx_isomorphic(F: ClauseSet, G: ClauseSet) -> bool:
    return nx.is_isomorphic(
        incidence_graph(F), incidence_graph(G),
        node_match=lambda a, b: a["kind"] == b["kind"],
        edge_match=lambda a, b: a["kind"] == b["kind"],
    )


def nx_invariant(F: ClauseSet) -> str:
    return nx.weisfeiler_lehman_graph_hash(incidence_graph(F), node_attr="kind", edge_attr="kind")


def nx_dedup(instances) -> list[ClauseSet]:
    """One representative per isomorphism class, using networkx only."""
    buckets: dict[tuple, list[ClauseSet]] = {}
    for F in instances:
        key = (F.n, F.c, nx_invariant(F))
        reps = buckets.setdefault(key, [])
        if not any(nx_isomorphic(F, R) for R in reps):
            reps.append(F)
    return [R for reps in buckets.values() for R in reps]


def nx_enumerate_counts(k: int, n_max: int) -> dict[int, int]:
    """Class counts for deficiency k, n = k..n_max, deduplicated only by networkx.

    Uses the same two-phase extension scheme as the fast enumerator but none
    of its canonical-form machinery.
    """
    def bpt(k):
        cl = [[-i, i + 1] for i in range(1, k)] + [[i, -(i + 1)] for i in range(1, k)]
        return ClauseSet(cl + [[1, k], [-1, -k]])

    def fresh(F):
        return max(F.variables) + 1

    plus = [[bpt(k)]]
    while len(plus) <= n_max - k:
        nxt = []
        for F in plus[-1]:
            for x in sorted(F.literals):
                if F.ldeg(x) == 2 and F.ldeg(-x) == 2:
                    old = F.occurrences(x)
                    y = fresh(F)
                    nxt.append(F.replace(old, [[y, x]] + [[-y, *(c - {x})] for c in old]))
        nxt = nx_dedup(nxt)
        if not nxt:
            break
        plus.append(nxt)
    counts = {k: 1}
    level = plus[0]
    for m in range(k + 1, n_max + 1):
        cand = list(plus[m - k]) if m - k < len(plus) else []
        for F in level:
            v = fresh(F)
            for c in F.sorted_clauses():
                if len(c) == 2:
                    x, y = c
                    cand.append(F.replace([c], [[v, x], [-v, y]]))
        level = nx_dedup(cand)
        counts[m] = len(level)
    return counts


def check_literal_map(f: dict) -> None:
    for x, y in f.items():
        if f.get(-x) != -y:
            raise FormulaError("map is not complement-preserving")
