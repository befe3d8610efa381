"""Implication digraphs, skew-symmetries, 2-SAT, MU testing and DP-reduction.

The implication digraph of a 2-CNF has the literals as vertices; a binary
clause ``{x, y}`` yields the arcs ``-x -> y`` and ``-y -> x``, a unit clause
``{x}`` yields ``-x -> x``.  Literal complementation is a skew-symmetry of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .formula import ClauseSet, FormulaError, make_clause
from .graphs import Digraph, Graph, Multigraph, dgtog, dgtomg

# vertex id of the extra loop vertex representing the empty clause in img(F)
V_BOTTOM = 0


class NotTwoCNF(FormulaError):
    pass


class NotMU(FormulaError):
    pass


class SkewError(ValueError):
    pass


def _check_2cnf(F: ClauseSet, allow_bottom: bool = True) -> None:
    for c in F:
        if len(c) > 2:
            raise NotTwoCNF(f"clause of length {len(c)}")
        if not c and not allow_bottom:
            raise NotTwoCNF("empty clause not allowed here")


def _arcs(F: ClauseSet) -> set[tuple[int, int]]:
    arcs = set()
    for c in F:
        if len(c) == 1:
            (x,) = c
            arcs.add((-x, x))
        elif len(c) == 2:
            x, y = c
            arcs.add((-x, y))
            arcs.add((-y, x))
    return arcs


def build_idg(F: ClauseSet) -> Digraph:
    """Implication digraph of F; vertices are the literals of F."""
    _check_2cnf(F, allow_bottom=False)
    return Digraph(F.literals, frozenset(_arcs(F)))


def build_ig(F: ClauseSet) -> Graph:
    return dgtog(build_idg(F))


def build_img(F: ClauseSet) -> Multigraph:
    """Implication multigraph; the empty clause becomes a looped vertex ``V_BOTTOM``."""
    _check_2cnf(F)
    G = build_idg(F.without(()))
    M = dgtomg(G)
    if not F.has_empty_clause:
        return M
    mult = dict(M.mult)
    mult[frozenset((V_BOTTOM,))] = 1
    return Multigraph(M.vertices | {V_BOTTOM}, mult)


# -- skew-symmetries --------------------------------------------------------------

def natural_skew(F: ClauseSet) -> dict[int, int]:
    return {x: -x for x in F.literals}


def check_skew(G: Digraph, sigma: Mapping) -> None:
    """Raise :class:`SkewError` unless sigma is a skew-symmetry of G."""
    if set(sigma) != set(G.vertices):
        raise SkewError("skew-symmetry must be defined exactly on the vertices")
    for v, w in sigma.items():
        if w == v:
            raise SkewError(f"fixed point {v!r}")
        if sigma.get(w) != v:
            raise SkewError(f"not an involution at {v!r}")
    for a, b in G.arcs:
        if (sigma[b], sigma[a]) not in G.arcs:
            raise SkewError(f"image of arc {(a, b)!r} missing")


def is_skew(G: Digraph, sigma: Mapping) -> bool:
    try:
        check_skew(G, sigma)
    except SkewError:
        return False
    return True


def is_unit_free(G: Digraph, sigma: Mapping) -> bool:
    return all((v, sigma[v]) not in G.arcs for v in G.vertices)


def clause_set_of(G: Digraph, sigma: Mapping, labels: Mapping | None = None) -> ClauseSet:
    """The 2-CNF whose implication digraph with complementation is (G, sigma).

    Vertices are labelled as literals: each sigma-orbit ``{v, sigma(v)}`` gets a
    variable, ``v`` the positive literal for the smaller vertex (or as given
    by ``labels``, which must be complement-compatible).
    """
    check_skew(G, sigma)
    if labels is None:
        labels = {}
        nxt = 1
        for v in G.sorted_vertices():
            if v in labels:
                continue
            labels[v] = nxt
            labels[sigma[v]] = -nxt
            nxt += 1
    else:
        for v in G.vertices:
            if labels[sigma[v]] != -labels[v]:
                raise SkewError("labels are not compatible with sigma")
    clauses = set()
    for a, b in G.arcs:
        if sigma[a] == b:
            clauses.add(frozenset((labels[b],)))
        else:
            clauses.add(make_clause((labels[sigma[a]], labels[b])))
    return ClauseSet._from_frozen(frozenset(clauses))


# -- satisfiability ----------------------------------------------------------------

def strongly_connected_components(vertices: Iterable, succ: Mapping) -> dict:
    """Iterative Tarjan; returns vertex -> component index."""
    index: dict = {}
    low: dict = {}
    comp: dict = {}
    stack: list = []
    on_stack: set = set()
    counter = 0
    ncomp = 0
    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            w = next(it, None)
            if w is not None:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def is_satisfiable(F: ClauseSet) -> bool:
    _check_2cnf(F)
    if F.has_empty_clause:
        return False
    succ: dict = {}
    for a, b in _arcs(F):
        succ.setdefault(a, []).append(b)
    comp = strongly_connected_components(sorted(F.literals), succ)
    return all(comp[v] != comp[-v] for v in F.variables)


def is_mu(F: ClauseSet) -> bool:
    if is_satisfiable(F):
        return False
    return all(is_satisfiable(F.without(c)) for c in F)


def require_mu(F: ClauseSet) -> None:
    if not is_mu(F):
        raise NotMU("clause-set is not minimally unsatisfiable")


# -- DP-reduction ------------------------------------------------------------------

def dp_reduce(F: ClauseSet, v: int) -> ClauseSet:
    """Replace all clauses containing variable v by their non-tautological resolvents."""
    v = abs(v)
    if v not in F.variables:
        raise FormulaError(f"variable {v} does not occur")
    pos = [c for c in F if v in c]
    neg = [c for c in F if -v in c]
    rest = {c for c in F if v not in c and -v not in c}
    for p in pos:
        for q in neg:
            r = (p - {v}) | (q - {-v})
            if any(-x in r for x in r):
                continue
            rest.add(r)
    return ClauseSet._from_frozen(frozenset(rest))


def one_singular_variables(F: ClauseSet) -> list[int]:
    return sorted(v for v in F.variables if F.vdeg(v) == 2)


def singular_variables(F: ClauseSet) -> list[int]:
    return sorted(v for v in F.variables if F.ldeg(v) == 1 or F.ldeg(-v) == 1)


def one_singular_fixpoint(F: ClauseSet, check: bool = True) -> ClauseSet:
    """DP-reduce on degree-2 variables (smallest first) until none is left."""
    if check:
        require_mu(F)
    while True:
        vs = one_singular_variables(F)
        if not vs:
            return F
        F = dp_reduce(F, vs[0])


@dataclass(frozen=True)
class DPStep:
    variable: int
    removed: frozenset
    added: frozenset


@dataclass(frozen=True)
class SingularReduction:
    start: ClauseSet
    result: ClauseSet
    steps: tuple[DPStep, ...]


def singular_dp_sequence(F: ClauseSet, check: bool = True) -> SingularReduction:
    """Eliminate singular variables (smallest first) until F is nonsingular."""
    if check:
        _check_2cnf(F)
        require_mu(F)
    start = F
    steps = []
    while True:
        vs = singular_variables(F)
        if not vs:
            return SingularReduction(start, F, tuple(steps))
        v = vs[0]
        G = dp_reduce(F, v)
        steps.append(DPStep(v, F.clauses - G.clauses, G.clauses - F.clauses))
        F = G


def singular_dp_to_nonsingular(F: ClauseSet, check: bool = True) -> ClauseSet:
    return singular_dp_sequence(F, check).result


def is_mu_plus(F: ClauseSet) -> bool:
    """Every variable has degree at least 3 (no 1-singular variable)."""
    return all(F.vdeg(v) >= 3 for v in F.variables)


@dataclass(frozen=True)
class SmoothingReduct:
    result: ClauseSet
    contraction_units: frozenset  # unit clauses created by contraction


def smoothing_reduct(F: ClauseSet) -> SmoothingReduct:
    """Maximal 1-singular DP-reduction that never touches contraction units.

    A unit ``{x}`` obtained from ``{v,x}, {-v,x}`` corresponds to a doubled
    edge between ``x`` and ``-x`` in the implication multigraph, so it counts
    twice towards the degree of ``var(x)``; variables are eliminated only
    while their weighted degree is 2.
    """
    _check_2cnf(F)
    tagged: set = set()

    def weight(v: int) -> int:
        extra = sum(1 for u in ((v,), (-v,)) if frozenset(u) in tagged)
        return F.vdeg(v) + extra

    while True:
        vs = sorted(v for v in F.variables if weight(v) == 2)
        if not vs:
            return SmoothingReduct(F, frozenset(tagged))
        v = vs[0]
        (p,) = [c for c in F if v in c]
        (q,) = [c for c in F if -v in c]
        G = dp_reduce(F, v)
        rest_p, rest_q = p - {v}, q - {-v}
        if len(rest_p) == 1 and rest_p == rest_q:
            tagged.add(frozenset(rest_p))
        tagged &= set(G.clauses)
        F = G
