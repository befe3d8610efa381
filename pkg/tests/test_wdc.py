import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import D3_EXAMPLE
from mu2.formula import ClauseSet
from mu2.generate import bpt, extend_2singular
from mu2.graphs import (
    Digraph,
    GraphError,
    cycle_digraph,
    cycle_graph,
    dgtog,
    dgtomg,
    enumerate_cycles,
    gtodg,
)
from mu2.implication import build_idg, build_ig, natural_skew
from mu2.oracles import brute_digraph_isomorphisms
from mu2.wdc import (
    WDCError,
    WDCStructure,
    as_structure,
    bracelet_canon,
    bracelet_of,
    cycle_multigraph,
    dihedral_maps,
    enumerate_bracelets,
    graph_to_wdc,
    orient_multigraph,
    orientations,
    recognize_wdc,
    require_wdc,
    split_arc,
    split_vertex,
    structure_digraph,
    traverse,
    unit_free_skews,
    wdc_automorphisms,
    wdc_isomorphisms,
    wdc_preimages,
)

TOKEN_CHOICES = [(1, 0, 0), (2, 0, 0), (1, 1, 0), (1, 0, 1), (3, 0, 0), (2, 1, 0)]

# 2-MUs whose WDCs have linear vertices and non-isomorphic orientations
LINEAR_AMBIGUOUS = ClauseSet([[-3, 1], [-2, -1], [-2, 3], [-1, 2], [1, 2]])
LINEAR_AMBIGUOUS_SKEW = ClauseSet([[-5, -2], [-5, 1], [-4, 5], [-3, 4], [-2, 3], [-1, 2], [1, 3]])


def small_structures(max_vertices=12, ms=(3, 4)):
    for m in ms:
        for toks in itertools.product(TOKEN_CHOICES, repeat=m):
            if sum(map(sum, toks)) <= max_vertices:
                yield toks


def double_cycle(m):
    return gtodg(cycle_graph(m))


def nonlinear(bits):
    return structure_digraph([(int(b) + 1, 0, 0) for b in bits])


# -- structure ---------------------------------------------------------------------

def test_structure_validation():
    with pytest.raises(WDCError):
        WDCStructure(((1,), (2,)), ((), ()), ((), ()))
    with pytest.raises(WDCError):
        WDCStructure(((1,), (), (3,)), ((),) * 3, ((),) * 3)
    with pytest.raises(WDCError):
        WDCStructure(((1,), (1,), (3,)), ((),) * 3, ((),) * 3)


def test_structure_digraph_vertex_count_and_cycles():
    for toks in [((1, 0, 0),) * 3, ((2, 1, 0), (1, 0, 2), (3, 0, 0), (1, 1, 1))]:
        S, G = structure_digraph(toks)
        assert len(G.vertices) == sum(map(sum, toks))
        assert len(enumerate_cycles(G)) == S.m + 2
        assert recognize_wdc(G).tokens() in {traverse(S, d)[0] for d in dihedral_maps(S.m)}


def test_small_and_big_cycles_are_cycles():
    S, G = structure_digraph(((2, 1, 0), (1, 0, 2), (3, 0, 0), (1, 1, 1)))
    cycles = set(enumerate_cycles(G))
    norm = lambda c: min(c[i:] + c[:i] for i in range(len(c)))
    listed = [S.small_cycle(i) for i in range(S.m)] + list(S.big_cycles())
    assert {norm(tuple(c)) for c in listed} == {norm(c) for c in cycles}


# -- splitting -------------------------------------------------------------------------

def test_split_arc_keeps_five_cycles():
    G = double_cycle(3)
    H = split_arc(G, (1, 2), 7)
    assert len(H.vertices) == 4 and len(enumerate_cycles(H)) == 5
    H = split_arc(H, (2, 1), 8)
    assert len(H.vertices) == 5 and len(enumerate_cycles(H)) == 5


def test_split_errors():
    G = double_cycle(3)
    with pytest.raises(GraphError):
        split_arc(G, (1, 9), 7)
    with pytest.raises(GraphError):
        split_arc(G, (1, 2), 3)
    with pytest.raises(GraphError):
        split_vertex(G, 9, 10, 11)
    with pytest.raises(GraphError):
        split_vertex(G, 1, 2, 11)
    with pytest.raises(GraphError):
        split_vertex(G, 1, 10, 10)


def test_split_degree4_vertex():
    G = double_cycle(4)
    H = split_vertex(G, 1, 10, 11)
    assert H.degree(10) == H.degree(11) == 3
    assert len(enumerate_cycles(H)) == 6


@pytest.mark.parametrize("k", [2, 3, 4])
def test_complementary_splits_are_two_singular_extension(k):
    F = bpt(k)
    for x in sorted(F.literals):
        y = k + 1
        G = split_vertex(build_idg(F), -x, -x, y)
        G = split_vertex(G, x, -y, x)
        assert G == build_idg(extend_2singular(F, x, y))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_random_splits_keep_cycle_count(seed):
    rng = random.Random(seed)
    m = rng.randint(3, 5)
    G = double_cycle(m)
    fresh = 100
    for _ in range(rng.randint(1, 4)):
        if rng.random() < 0.5:
            G = split_arc(G, rng.choice(sorted(G.arcs)), fresh)
            fresh += 1
        else:
            cand = sorted(v for v in G.vertices if G.degree(v) == 4)
            if not cand:
                continue
            G = split_vertex(G, rng.choice(cand), fresh, fresh + 1)
            fresh += 2
        assert len(enumerate_cycles(G)) == m + 2
        assert require_wdc(G).m == m


# -- recognition -------------------------------------------------------------------------

@pytest.mark.parametrize("m", [3, 4, 5, 7])
def test_recognize_double_cycle(m):
    S = recognize_wdc(double_cycle(m))
    assert S.m == m and S.tokens() == ((1, 0, 0),) * m


def test_recognize_d3_example():
    G = build_idg(D3_EXAMPLE)
    S = recognize_wdc(G)
    assert S.m == 6
    assert S.digraph() == G
    assert len(enumerate_cycles(G)) == 8


def test_recognize_rejects():
    assert recognize_wdc(cycle_digraph(5)) is None
    two = Digraph.from_arcs([(1, 2), (2, 1), (3, 4), (4, 3), (1, 3), (3, 1)])
    assert recognize_wdc(two) is None
    with pytest.raises(WDCError):
        require_wdc(cycle_digraph(4))
    assert recognize_wdc(Digraph.from_arcs([(1, 2), (2, 3), (3, 1), (1, 4), (4, 1)])) is None


def test_bpt_idg_is_double_cycle():
    for k in (2, 3, 4):
        S = require_wdc(build_idg(bpt(k)))
        assert S.m == 2 * k and S.is_nonlinear() and bracelet_of(S) == "0" * (2 * k)
        assert len(enumerate_cycles(build_idg(bpt(k)))) == 2 * k + 2


# -- cycle multigraph ----------------------------------------------------------------------

def test_cycle_multigraph_double_triangle():
    M = cycle_multigraph(double_cycle(3))
    assert len(M.vertices) == 5
    loops = sorted(M.multiplicity(v) for v in M.vertices)
    assert loops == [2, 2, 2, 3, 3]


def test_cycle_multigraph_shape():
    for G in [build_idg(bpt(3)), build_idg(D3_EXAMPLE)]:
        M = cycle_multigraph(G)
        S = require_wdc(G)
        assert len(M.vertices) == S.m + 2
        big = [c for c in M.vertices if all(M.multiplicity(c, d) for d in M.vertices if d != c)]
        assert len(big) == 2
        small = [c for c in M.vertices if c not in big]
        for c in small:
            assert sum(1 for d in small if d != c and M.multiplicity(c, d)) == 2
            assert M.multiplicity(c) == len(c)


# -- isomorphisms --------------------------------------------------------------------------

@pytest.mark.parametrize("k", [2, 3])
def test_bpt_full_dihedral_symmetry(k):
    G = build_idg(bpt(k))
    autos = wdc_automorphisms(G)
    assert len(autos) == 4 * k
    assert len(brute_digraph_isomorphisms(G, G)) == 4 * k


def test_d3_example_not_bpt3():
    G, H = build_idg(D3_EXAMPLE), build_idg(bpt(3))
    assert require_wdc(G).m == require_wdc(H).m == 6
    assert wdc_isomorphisms(G, H) == []


def test_isomorphisms_match_brute_force():
    rng = random.Random(5)
    items = [structure_digraph(t)[1] for t in small_structures(10)]
    rng.shuffle(items)
    items = items[:60]
    for G in items:
        H = G.relabel({v: 100 + 7 * v for v in G.vertices})
        assert _same_maps(wdc_isomorphisms(G, H), brute_digraph_isomorphisms(G, H))
    for G, H in zip(items, items[1:]):
        if len(G.vertices) == len(H.vertices):
            assert _same_maps(wdc_isomorphisms(G, H), brute_digraph_isomorphisms(G, H))


def _same_maps(a, b):
    key = lambda f: tuple(sorted(f.items()))
    return sorted(map(key, a)) == sorted(map(key, b))


def test_automorphisms_form_small_group():
    for toks in list(small_structures(9))[::7]:
        S, G = structure_digraph(toks)
        autos = wdc_automorphisms(G, S)
        assert 1 <= len(autos) <= 2 * S.m
        keys = {tuple(sorted(f.items())) for f in autos}
        for f in autos:
            for g in autos:
                assert tuple(sorted((v, f[g[v]]) for v in G.vertices)) in keys


def test_dihedral_composition():
    m = 5
    maps = dihedral_maps(m, transposed=None)
    assert len(maps) == 4 * m
    S, _ = structure_digraph(((2, 1, 0), (1, 0, 2), (3, 0, 0), (1, 1, 1), (1, 0, 0)))
    for a in maps[::3]:
        for b in maps[::4]:
            # re-indexing by b and then by a reads index b(a(j))
            assert as_structure(as_structure(S, b), a) == as_structure(S, b.compose(a, m))


def test_transposition_isomorphic_for_nonlinear_and_implication_digraphs():
    for m in range(3, 7):
        for bits in enumerate_bracelets(m):
            _, G = nonlinear(bits)
            assert wdc_isomorphisms(G, G.transpose())
    for F in [D3_EXAMPLE, LINEAR_AMBIGUOUS, bpt(3)]:
        G = build_idg(F)
        assert wdc_isomorphisms(G, G.transpose())


def test_transposition_not_isomorphic_with_linear_vertices():
    # checked against the brute-force oracle: no isomorphism to the transpose exists
    _, G = structure_digraph(((1, 0, 0), (2, 0, 0), (1, 1, 0)))
    assert wdc_isomorphisms(G, G.transpose()) == []
    assert brute_digraph_isomorphisms(G, G.transpose()) == []


def test_wdc_isomorphisms_requires_wdc():
    with pytest.raises(WDCError):
        wdc_isomorphisms(cycle_digraph(4), double_cycle(3))


# -- orientation and reconstruction --------------------------------------------------------

def test_orient_double_triangle():
    G = double_cycle(3)
    assert wdc_isomorphisms(orient_multigraph(dgtomg(G)), G)


def test_orient_d3_example():
    G = build_idg(D3_EXAMPLE)
    H = orient_multigraph(dgtomg(G), skew_symmetric=True)
    assert dgtomg(H) == dgtomg(G)
    assert wdc_isomorphisms(G, H)


def test_orientations_contain_original():
    for toks in list(small_structures(10))[::11]:
        S, G = structure_digraph(toks)
        assert any(H == G for H in orientations(dgtomg(G)))


def test_nonlinear_orientations_all_isomorphic():
    for m in range(3, 7):
        for bits in enumerate_bracelets(m):
            _, G = nonlinear(bits)
            outs = list(orientations(dgtomg(G)))
            assert outs and all(wdc_isomorphisms(G, H) for H in outs)


def test_orientation_not_unique_with_linear_vertices():
    G = build_idg(LINEAR_AMBIGUOUS)
    outs = list(orientations(dgtomg(G)))
    assert all(dgtomg(H) == dgtomg(G) for H in outs)
    bad = [H for H in outs if not brute_digraph_isomorphisms(G, H)]
    assert bad


def test_orientation_not_unique_with_unit_free_skew():
    G = build_idg(LINEAR_AMBIGUOUS_SKEW)
    bad = [H for H in orientations(dgtomg(G)) if not brute_digraph_isomorphisms(G, H)]
    assert any(unit_free_skews(H) for H in bad)


def test_graph_to_wdc_d3_example():
    G = build_idg(D3_EXAMPLE)
    H = graph_to_wdc(build_ig(D3_EXAMPLE), skew_symmetric=True)
    assert dgtog(H) == dgtog(G)
    assert wdc_isomorphisms(G, H)


def test_graph_to_wdc_double_triangle():
    H = graph_to_wdc(cycle_graph(3))
    assert wdc_isomorphisms(H, double_cycle(3))


def test_graph_to_wdc_split_arcs():
    G = double_cycle(3)
    for a in sorted(G.arcs):
        H = split_arc(G, a, 99)
        assert wdc_isomorphisms(H, graph_to_wdc(dgtog(H)))


def test_graph_to_wdc_nonlinear_round_trip():
    for m in range(3, 7):
        for bits in enumerate_bracelets(m):
            _, G = nonlinear(bits)
            R = graph_to_wdc(dgtog(G))
            assert dgtog(R) == dgtog(G) and wdc_isomorphisms(G, R)


def test_underlying_graph_ambiguity():
    # double 4-cycle with one vertex split vs a 3-WDC with a 3-vertex overlap:
    # same underlying graph, different numbers of cycles
    G = split_vertex(double_cycle(4), 1, 10, 11)
    _, H = structure_digraph(((3, 0, 0), (1, 0, 0), (1, 0, 0)))
    H = H.relabel(dict(zip(H.sorted_vertices(), [10, 11, 2, 3, 4])))
    assert len(enumerate_cycles(G)) == 6 and len(enumerate_cycles(H)) == 5
    from mu2.graphs import multigraph_isomorphic, gtomg
    assert multigraph_isomorphic(gtomg(dgtog(G)), gtomg(dgtog(H)))
    assert brute_digraph_isomorphisms(G, H) == []
    R = graph_to_wdc(dgtog(H))
    assert require_wdc(R).m == 4
    assert {require_wdc(P).m for P in wdc_preimages(dgtog(H))} >= {3, 4}


def test_graph_to_wdc_rejects():
    with pytest.raises(WDCError):
        graph_to_wdc(dgtog(Digraph.from_arcs([(1, 2), (2, 1)])))


def test_unit_free_skews_of_idg_match_natural():
    for F in [D3_EXAMPLE, bpt(2), bpt(3), LINEAR_AMBIGUOUS]:
        G = build_idg(F)
        assert unit_free_skews(G) == [natural_skew(F)]


# -- bracelets ---------------------------------------------------------------------------

def test_bracelet_counts():
    assert enumerate_bracelets(1) == ["0", "1"]
    assert len(enumerate_bracelets(3)) == 4
    assert enumerate_bracelets(3) == ["000", "001", "011", "111"]
    assert len(enumerate_bracelets(4)) == 6
    assert enumerate_bracelets(4) == sorted(map(bracelet_canon, ["0000", "1000", "1100", "1010", "1110", "1111"]))
    assert [len(enumerate_bracelets(m)) for m in range(1, 9)] == [2, 3, 4, 6, 8, 13, 18, 30]


def test_bracelet_canon_examples():
    assert bracelet_canon("100100") == "001001"
    assert bracelet_canon("0000") == "0000"
    assert bracelet_canon("110") == bracelet_canon("011") == "011"
    with pytest.raises(WDCError):
        bracelet_canon("012")


def test_bracelet_of_examples():
    assert bracelet_of(require_wdc(double_cycle(5))) == "00000"
    S = require_wdc(build_idg(D3_EXAMPLE)).nonlinear_reduct()
    assert bracelet_canon(bracelet_of(S)) == bracelet_canon("100100")
    with pytest.raises(WDCError):
        bracelet_of(require_wdc(build_idg(D3_EXAMPLE)))


@pytest.mark.parametrize("m,splits", [(4, [1]), (5, [1, 3]), (6, [2, 3, 5])])
def test_vertex_splittings_give_ones(m, splits):
    G = double_cycle(m)
    for i, x in enumerate(splits):
        G = split_vertex(G, x, 100 + 2 * i, 101 + 2 * i)
    assert bracelet_of(require_wdc(G)).count("1") == len(splits)


def test_nonlinear_iso_iff_bracelet_equal():
    for m in range(3, 7):
        words = ["".join(t) for t in itertools.product("01", repeat=m)]
        graphs = {w: nonlinear(w)[1] for w in words}
        reps = {}
        for w in words:
            reps.setdefault(bracelet_canon(w), w)
        rng = random.Random(m)
        for w in rng.sample(words, min(len(words), 12)):
            for c, r in reps.items():
                G, H = graphs[w], graphs[r]
                if len(G.vertices) != len(H.vertices):
                    assert bracelet_canon(w) != c
                    continue
                assert bool(brute_digraph_isomorphisms(G, H)) == (bracelet_canon(w) == c)
                assert bool(wdc_isomorphisms(G, H)) == (bracelet_canon(w) == c)


def test_to_dot():
    S = require_wdc(build_idg(D3_EXAMPLE))
    text = S.to_dot()
    assert text.startswith("digraph WDC {") and text.count("->") == len(S.arcs())
