"""Classification of 2-MUs: deficiency-1 families, isomorphism, canonical forms,
automorphism groups and homeomorphism fingerprints."""

from __future__ import annotations

import json
from collections import OrderedDict
from dataclasses import dataclass
from typing import Mapping

from .formula import BOTTOM, ClauseSet, FormulaError, rename, write_dimacs
from .graphs import enumerate_cycles, linear_vertices
from .implication import NotMU, build_idg, build_img, is_mu
from .wdc import (
    WDCError,
    WDCStructure,
    _threads,
    bracelet_canon,
    bracelet_of,
    dihedral_maps,
    require_wdc,
    structure_digraph,
    traverse,
    unit_free_skews,
    wdc_automorphisms,
    wdc_isomorphisms,
)
from .implication import clause_set_of

FAMILIES = ("U2", "U1", "U0i", "U0xy")


class ClassifyError(ValueError):
    pass


@dataclass(frozen=True)
class UFamily:
    tag: str
    n: int
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise ClassifyError(f"unknown family {self.tag!r}")

    def check_range(self, allow_degenerate: bool = False) -> None:
        n, L = self.n, self.params
        ok = {
            "U2": lambda: len(L) == 0 and n >= 1,
            "U1": lambda: len(L) == 1 and n >= 2 and 1 <= L[0] <= (n if allow_degenerate else n - 1),
            "U0i": lambda: len(L) == 1 and n >= 3 and 2 <= L[0] and 2 * L[0] <= n + 1,
            "U0xy": lambda: (len(L) == 2 and n >= 4 and 2 <= L[0] < L[1] <= n - 1
                             and L[0] + L[1] <= n + 1),
        }[self.tag]()
        if not ok:
            raise ClassifyError(f"parameters out of range for {self.tag}: n={n}, {list(L)}")

    def label(self) -> str:
        return f"{self.tag}({', '.join(map(str, (self.n, *self.params)))})"


def _middle(n: int) -> list[list[int]]:
    return [[-j, j + 1] for j in range(1, n)]


def build_ufamily(spec: UFamily) -> ClauseSet:
    """The family member over variables 1..n.  ``U1`` with ``i = n`` is
    accepted as the degenerate spelling of ``U2``."""
    spec.check_range(allow_degenerate=True)
    n, L = spec.n, spec.params
    extra = {
        "U2": lambda: [[1], [-n]],
        "U1": lambda: [[1], [-n, -L[0]]] if L[0] != n else [[1], [-n]],
        "U0i": lambda: [[1, L[0]], [-n, -L[0]]],
        "U0xy": lambda: [[1, L[0]], [-n, -L[1]]],
    }[spec.tag]()
    return ClauseSet(_middle(n) + extra)


def ufamily_members(n: int) -> list[UFamily]:
    """All in-range family members with n variables (one per class)."""
    if n < 1:
        raise ClassifyError("n must be positive")
    out = [UFamily("U2", n)]
    out += [UFamily("U1", n, (i,)) for i in range(1, n)]
    out += [UFamily("U0i", n, (i,)) for i in range(2, (n + 1) // 2 + 1) if n >= 3]
    out += [UFamily("U0xy", n, (x, y)) for x in range(2, n) for y in range(x + 1, n)
            if x + y <= n + 1 and n >= 4]
    return out


# -- deficiency one ----------------------------------------------------------------------

def _require_2mu(F: ClauseSet, check: bool) -> None:
    if F.max_clause_length() > 2:
        raise ClassifyError("not a 2-CNF")
    if check and not is_mu(F):
        raise NotMU("clause-set is not minimally unsatisfiable")


def classify_d1(F: ClauseSet, check: bool = True) -> UFamily:
    """Family and parameters of a deficiency-1 2-MU other than {⊥}.

    Dispatches on the number of unit clauses; parameters are read off path
    lengths in the implication graph.
    """
    _require_2mu(F, check)
    if F.deficiency != 1:
        raise ClassifyError(f"deficiency is {F.deficiency}, not 1")
    if F.has_empty_clause:
        raise ClassifyError("{⊥} has no family")
    n = F.n
    u = len(F.unit_clauses())
    if u == 2:
        return UFamily("U2", n)
    if u == 1:
        lengths = {len(c) for c in enumerate_cycles(build_idg(F))}
        if len(lengths) != 1:
            raise ClassifyError("unexpected cycle structure for one unit clause")
        return UFamily("U1", n, (lengths.pop() - n,))
    if u != 0:
        raise ClassifyError("more than two unit clauses")
    threads = _threads(build_img(F))
    deg4 = [v for v in F.variables if F.vdeg(v) == 4]
    if deg4:
        i = min(len(t.interior) + 1 for t in threads)
        return UFamily("U0i", n, (i,))
    groups: dict = {}
    for t in threads:
        groups.setdefault(frozenset(t.ends), []).append(len(t.interior) + 1)
    pairs = [g[0] for g in groups.values() if len(g) == 2]
    if len(pairs) != 2:
        raise ClassifyError("unexpected thread structure")
    p, q = sorted(pairs)
    return UFamily("U0xy", n, (p, n - q + 1))


def _clause_iso_search(F: ClauseSet, G: ClauseSet, max_steps: int = 1_000_000) -> dict | None:
    """Backtracking for a clause-set isomorphism, guided by shared clauses."""
    if (F.n, F.c) != (G.n, G.c):
        return None
    Fdeg = sorted((F.ldeg(x), F.ldeg(-x)) for x in F.variables)
    Gdeg = sorted((G.ldeg(x), G.ldeg(-x)) for x in G.variables)
    if sorted(map(sorted, Fdeg)) != sorted(map(sorted, Gdeg)):
        return None
    # variable order: breadth first through shared clauses
    order: list[int] = []
    seen: set = set()
    for root in sorted(F.variables, key=lambda v: (-F.vdeg(v), v)):
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for c in sorted(F.occurrences(v) + F.occurrences(-v), key=sorted):
                for x in sorted(c):
                    if abs(x) not in seen:
                        seen.add(abs(x))
                        queue.append(abs(x))
    Fby = {x: F.occurrences(x) for x in F.literals}
    Gby = {x: G.occurrences(x) for x in G.literals}
    f: dict = {}
    steps = 0

    def ok(v: int) -> bool:
        for x in (v, -v):
            if F.ldeg(x) != G.ldeg(f[x]):
                return False
            for c in Fby[x]:
                if all(y in f for y in c) and frozenset(f[y] for y in c) not in G:
                    return False
        return True

    def rec(j: int) -> bool:
        nonlocal steps
        if j == len(order):
            return True
        v = order[j]
        cands: list[int] = []
        for x in (v, -v):
            for c in Fby[x]:
                anchor = next((y for y in c if y != x and y in f), None)
                if anchor is not None:
                    cands = [z for d in Gby[f[anchor]] for z in d if z != f[anchor]]
                    cands = [z if x == v else -z for z in cands]
                    break
            if cands:
                break
        if not cands:
            cands = sorted(G.literals, key=lambda z: (abs(z), z))
        used = {abs(z) for z in f.values()}
        for z in dict.fromkeys(cands):
            if abs(z) in used:
                continue
            steps += 1
            if steps > max_steps:
                raise ClassifyError("isomorphism search limit exceeded")
            f[v], f[-v] = z, -z
            if ok(v) and rec(j + 1):
                return True
            del f[v], f[-v]
        return False

    return dict(f) if rec(0) else None


# -- isomorphism ----------------------------------------------------------------------------

def _verified(F: ClauseSet, G: ClauseSet, f: Mapping) -> bool:
    try:
        return rename(F, f) == G
    except FormulaError:
        return False


def _literal_map(f: Mapping) -> dict[int, int] | None:
    """Restrict a vertex map on literals to a complement-preserving literal map."""
    for x, y in f.items():
        if f.get(-x) != -y:
            return None
    return dict(f)


def are_isomorphic(F: ClauseSet, G: ClauseSet, check: bool = True) -> dict | None:
    """A verified clause-set isomorphism F -> G between 2-MUs, or None."""
    _require_2mu(F, check)
    _require_2mu(G, check)
    if (F.deficiency, F.n, F.c) != (G.deficiency, G.n, G.c):
        return None
    if F.deficiency == 1:
        if F.has_empty_clause or G.has_empty_clause:
            return {} if F == G else None
        if classify_d1(F, check=False) != classify_d1(G, check=False):
            return None
        f = _clause_iso_search(F, G)
        if f is None or not _verified(F, G, f):
            raise ClassifyError("equal families but no verified isomorphism")
        return f
    GF, GG = build_idg(F), build_idg(G)
    isos = wdc_isomorphisms(GF, GG)
    for h in isos:
        f = _literal_map(h)
        if f is not None and _verified(F, G, f):
            return f
    if isos:
        raise ClassifyError("digraph isomorphisms exist but none is a clause-set isomorphism")
    return None


def clause_isomorphisms_d2(F: ClauseSet, G: ClauseSet) -> list[dict]:
    """All clause-set isomorphisms between deficiency >= 2 2-MUs, via their digraphs."""
    out = []
    for h in wdc_isomorphisms(build_idg(F), build_idg(G)):
        f = _literal_map(h)
        if f is None or not _verified(F, G, f):
            raise ClassifyError("digraph isomorphism is not a clause-set isomorphism")
        out.append(f)
    return out


# -- canonical forms ------------------------------------------------------------------------

def _canon_wdc(F: ClauseSet) -> ClauseSet:
    if F.unit_clauses():
        raise ClassifyError("deficiency >= 2 2-MUs have no unit clauses")
    G = build_idg(F)
    S = require_wdc(G)
    best = None
    for d in dihedral_maps(S.m, None):
        toks, order = traverse(S, d)
        if best is None or toks < best[0]:
            best = (toks, order, d)
    toks, order, d = best
    pos = {v: i for i, v in enumerate(order)}
    _, D = structure_digraph(toks)
    src = G.transpose() if d.transposed else G
    if {(pos[a], pos[b]) for a, b in src.arcs} != set(D.arcs):
        raise ClassifyError("canonical traversal does not reproduce the digraph")
    sigma = {pos[x]: pos[-x] for x in G.vertices}
    labels: dict = {}
    nxt = 1
    for p in range(len(order)):
        if p not in labels:
            labels[p] = nxt
            labels[sigma[p]] = -nxt
            nxt += 1
    return clause_set_of(D, sigma, labels)


def canon(F: ClauseSet, check: bool = True) -> ClauseSet:
    """Canonical representative: equal for isomorphic 2-MUs, isomorphic to F."""
    _require_2mu(F, check)
    if F.has_empty_clause:
        return BOTTOM
    if F.deficiency == 1:
        return build_ufamily(classify_d1(F, check=False))
    return _canon_wdc(F)


def canonical_key(F: ClauseSet, check: bool = True) -> tuple:
    return tuple(canon(F, check).sorted_clauses())


def unique_unit_free_skew(G, S: WDCStructure | None = None) -> dict | None:
    """The unit-free skew-symmetry of a WDC, if any; two or more is an error."""
    found = unit_free_skews(G, S)
    if len(found) > 1:
        raise ClassifyError(f"{len(found)} unit-free skew-symmetries found; at most one may exist")
    return found[0] if found else None


# -- automorphisms ------------------------------------------------------------------------------

@dataclass(frozen=True)
class AutomorphismGroup:
    elements: tuple[dict, ...]
    table: tuple[tuple[int, ...], ...]  # table[i][j] = index of elements[i] after elements[j]
    identity: int

    @property
    def order(self) -> int:
        return len(self.elements)

    def inverse(self, i: int) -> int:
        return next(j for j in range(self.order) if self.table[i][j] == self.identity)


def _key(f: Mapping) -> tuple:
    return tuple(sorted(f.items()))


def automorphism_group(F: ClauseSet, check: bool = True) -> AutomorphismGroup:
    _require_2mu(F, check)
    k = F.deficiency
    if k < 2:
        raise ClassifyError("automorphism groups are provided for deficiency >= 2 only")
    elems = []
    for h in wdc_automorphisms(build_idg(F)):
        f = _literal_map(h)
        if f is None or not _verified(F, F, f):
            raise ClassifyError("digraph automorphism is not a clause-set automorphism")
        elems.append(f)
    elems.sort(key=lambda f: [f[x] for x in sorted(F.literals, key=lambda z: (abs(z), z))])
    index = {_key(f): i for i, f in enumerate(elems)}
    table = []
    for f in elems:
        row = []
        for g in elems:
            comp = {x: f[g[x]] for x in g}
            j = index.get(_key(comp))
            if j is None:
                raise ClassifyError("automorphisms not closed under composition")
            row.append(j)
        table.append(tuple(row))
    ident = index.get(_key({x: x for x in F.literals}))
    if ident is None:
        raise ClassifyError("identity missing from automorphism group")
    group = AutomorphismGroup(tuple(elems), tuple(table), ident)
    for i in range(group.order):
        if all(table[i][j] != ident for j in range(group.order)):
            raise ClassifyError("automorphism without inverse")
    if group.order > 4 * k:
        raise ClassifyError("automorphism group larger than 4k")
    return group


# -- homeomorphism type ------------------------------------------------------------------------------

def wdc_bracelet(F: ClauseSet) -> str:
    """The length-2k bracelet of the smoothed implication digraph."""
    S = require_wdc(build_idg(F))
    return bracelet_of(S.nonlinear_reduct())


def homeo_fingerprint(F: ClauseSet, check: bool = True) -> str:
    _require_2mu(F, check)
    k = F.deficiency
    if k < 2:
        raise ClassifyError("fingerprints are defined for deficiency >= 2")
    b = wdc_bracelet(F)
    if len(b) != 2 * k or b[:k] != b[k:]:
        raise ClassifyError(f"bracelet {b} does not have period {k}")
    return bracelet_canon(b[:k])


# -- full classification --------------------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    deficiency: int
    n: int
    c: int
    family: str | None
    params: tuple[int, ...] | None
    bracelet: str | None
    wdc_bracelet: str | None
    aut_order: int | None
    linear_vertices: tuple[int, ...]
    canonical: ClauseSet

    def to_dict(self) -> OrderedDict:
        return OrderedDict([
            ("deficiency", self.deficiency),
            ("n", self.n),
            ("c", self.c),
            ("family", self.family),
            ("params", list(self.params) if self.params is not None else None),
            ("bracelet", self.bracelet),
            ("wdc_bracelet", self.wdc_bracelet),
            ("aut_order", self.aut_order),
            ("linear_vertices", list(self.linear_vertices)),
            ("canonical_dimacs", write_dimacs(self.canonical)),
        ])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def classify(F: ClauseSet, check: bool = True) -> Classification:
    _require_2mu(F, check)
    k = F.deficiency
    if F.has_empty_clause:
        return Classification(k, F.n, F.c, "bottom", (), None, None, None, (), BOTTOM)
    lin = tuple(sorted(linear_vertices(build_idg(F)), key=lambda x: (abs(x), -x)))
    if k == 1:
        fam = classify_d1(F, check=False)
        return Classification(k, F.n, F.c, fam.tag, (fam.n, *fam.params), None, None, None,
                              lin, build_ufamily(fam))
    try:
        return Classification(k, F.n, F.c, None, None, homeo_fingerprint(F, check=False),
                              wdc_bracelet(F), automorphism_group(F, check=False).order,
                              lin, _canon_wdc(F))
    except WDCError as e:
        raise ClassifyError(str(e)) from e
