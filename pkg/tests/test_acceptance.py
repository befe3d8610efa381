"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line with its runtime, regardless of
output capturing.
"""

import random
import time
from contextlib import contextmanager

from helpers import D3_EXAMPLE, D3_REDUCT, TWO_CYCLES_SAT, TWO_CYCLES_UNSAT, random_renaming
from mu2.classify import (
    UFamily,
    are_isomorphic,
    automorphism_group,
    build_ufamily,
    canonical_key,
    classify,
)
from mu2.formula import rename
from mu2.generate import (
    bpt,
    bracelet_histogram,
    count_table,
    count_d1,
    enumerate_2mu,
    enumerate_d1,
    generate_d1_rules,
)
from mu2.graphs import cycle_digraph, disjoint_union, enumerate_cycles
from mu2.implication import (
    build_idg,
    clause_set_of,
    is_satisfiable,
    natural_skew,
    one_singular_fixpoint,
    singular_dp_to_nonsingular,
)
from mu2.oracles import (
    brute_digraph_isomorphisms,
    brute_iso,
    brute_isomorphisms,
    brute_skews,
    has_unit,
    skew_iso_classes,
)
from mu2.wdc import bracelet_canon, enumerate_bracelets, require_wdc, wdc_isomorphisms

COUNTS_K2 = {2: 1, 3: 2, 4: 6, 5: 12, 6: 25, 7: 44, 8: 77, 9: 124, 10: 196, 11: 294,
             12: 433, 13: 616, 14: 862}


@contextmanager
def criterion(capsys, number, title, limit):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {number:2d}: {title} ({elapsed:.2f}s, limit {limit:g}s)")
    assert within, f"criterion {number} took {elapsed:.1f}s, limit {limit}s"


def _key(f):
    return tuple(sorted(f.items()))


def test_criterion_01_d1_census(capsys):
    with criterion(capsys, 1, "deficiency-1 census matches the closed formula", 10):
        expected = [1, 2, 4, 6, 9, 12, 16, 20, 25, 30, 36, 42]
        got = [len(enumerate_d1(n)) for n in range(1, 13)]
        assert got == expected == [count_d1(n) for n in range(1, 13)]


def test_criterion_02_rule_cross_check(capsys):
    with criterion(capsys, 2, "rule-based generation gives the same class counts", 30):
        for n in range(1, 11):
            insts = generate_d1_rules(n)
            keys = {canonical_key(F) for F in insts}
            assert len(keys) == len(insts) == count_d1(n)
            assert keys == {canonical_key(F) for F in enumerate_d1(n)}


def test_criterion_03_bracelet_counts(capsys):
    with criterion(capsys, 3, "bracelet counts", 1):
        assert len(enumerate_bracelets(3)) == 4
        assert len(enumerate_bracelets(4)) == 6
        # exhaustive string enumeration, independent of enumerate_bracelets
        for m, golden in ((5, 8), (6, 13)):
            classes = set()
            for i in range(2 ** m):
                s = format(i, f"0{m}b")
                classes.add(min([s[j:] + s[:j] for j in range(m)] + [(s[j:] + s[:j])[::-1] for j in range(m)]))
            assert len(classes) == golden == len(enumerate_bracelets(m))


def test_criterion_04_homeomorphism_correspondence(capsys):
    with criterion(capsys, 4, "fingerprints cover exactly the bracelets of length k", 120):
        for k, n_max in ((2, 8), (3, 9)):
            seen = set()
            for n in range(k, n_max + 1):
                seen |= set(bracelet_histogram(enumerate_2mu(k, n)))
            assert sorted(seen) == enumerate_bracelets(k)


def test_criterion_05_unique_unit_free_skew(capsys):
    with criterion(capsys, 5, "exactly one unit-free skew-symmetry, the natural one", 300):
        insts = ([F for n in range(2, 7) for F in enumerate_2mu(2, n)]
                 + [F for n in range(3, 8) for F in enumerate_2mu(3, n)])
        for F in insts:
            G = build_idg(F)
            unit_free = [s for s in brute_skews(G) if not has_unit(G, s)]
            assert unit_free == [natural_skew(F)]


def test_criterion_06_cycle_skews(capsys):
    with criterion(capsys, 6, "skew-symmetries of cycle digraphs", 60):
        for n in range(3, 13):
            C = cycle_digraph(n)
            skews = brute_skews(C)
            if n % 2:
                assert skews == []
                continue
            assert len(skews) == n // 2
            U = build_ufamily(UFamily("U2", n // 2))
            for s in skews:
                assert brute_iso(clause_set_of(C, s), U) is not None
        assert brute_skews(cycle_digraph(11)) == []


def test_criterion_07_isomorphism_set_equality(capsys):
    with criterion(capsys, 7, "clause-set, digraph and WDC isomorphism sets coincide", 300):
        rng = random.Random(77)
        pool = ([F for n in range(2, 8) for F in enumerate_2mu(2, n)]
                + [F for n in range(3, 8) for F in enumerate_2mu(3, n)])
        pairs = []
        while len(pairs) < 25:
            F = rng.choice(pool)
            if len(pairs) % 2 == 0:
                G = rename(F, random_renaming(F, rng))
            else:
                same = [H for H in pool if (H.n, H.c) == (F.n, F.c)]
                G = rename(rng.choice(same), random_renaming(F, rng))
            pairs.append((F, G))
        nonempty = 0
        for F, G in pairs:
            clause = {_key(f) for f in brute_isomorphisms(F, G)}
            digraph = {_key(f) for f in brute_digraph_isomorphisms(build_idg(F), build_idg(G))}
            fast = {_key(f) for f in wdc_isomorphisms(build_idg(F), build_idg(G))}
            assert clause == digraph == fast
            nonempty += bool(clause)
        assert nonempty >= 13


def test_criterion_08_canon_soundness(capsys):
    with criterion(capsys, 8, "canonical forms induce the brute-force isomorphism partition", 300):
        rng = random.Random(8)
        base = ([F for n in range(2, 7) for F in enumerate_2mu(2, n)]
                + [F for n in range(1, 6) for F in enumerate_d1(n)])
        pool = base + [rename(F, random_renaming(F, rng)) for F in base]
        for i, F in enumerate(pool):
            for G in pool[i + 1:]:
                if (F.n, F.c) != (G.n, G.c):
                    assert canonical_key(F) != canonical_key(G)
                    continue
                assert (canonical_key(F) == canonical_key(G)) == (brute_iso(F, G) is not None)


def test_criterion_09_automorphism_bound(capsys):
    with criterion(capsys, 9, "automorphism groups are groups of order at most 4k", 60):
        for k, n_max in ((2, 8), (3, 7)):
            for n in range(k, n_max + 1):
                for F in enumerate_2mu(k, n):
                    grp = automorphism_group(F)
                    assert 1 <= grp.order <= 4 * k
                    e = grp.identity
                    for i in range(grp.order):
                        assert grp.table[i][e] == grp.table[e][i] == i
                        assert any(grp.table[i][j] == e for j in range(grp.order))
        for k in (2, 3, 4, 5):
            assert automorphism_group(bpt(k)).order == 4 * k


def test_criterion_10_wdc_cycle_count(capsys):
    with criterion(capsys, 10, "implication digraphs have 2k+2 cycles", 60):
        for k, n_max in ((2, 9), (3, 8)):
            for n in range(k, n_max + 1):
                for F in enumerate_2mu(k, n):
                    assert len(enumerate_cycles(build_idg(F))) == 2 * k + 2


def test_criterion_11_d3_example(capsys):
    with criterion(capsys, 11, "deficiency-3 example golden", 1):
        cl = classify(D3_EXAMPLE)
        assert cl.deficiency == 3
        assert set(cl.linear_vertices) == {5, -5, 6, -6}
        assert one_singular_fixpoint(D3_EXAMPLE) == D3_REDUCT
        assert are_isomorphic(singular_dp_to_nonsingular(D3_EXAMPLE), bpt(3)) is not None
        assert len(cl.wdc_bracelet) == 6
        assert bracelet_canon(cl.wdc_bracelet) == bracelet_canon("100100")
        assert require_wdc(build_idg(D3_EXAMPLE)).m == 6


def test_criterion_12_two_cycle_examples(capsys):
    with criterion(capsys, 12, "two 4-cycle examples", 10):
        assert (is_satisfiable(TWO_CYCLES_SAT), is_satisfiable(TWO_CYCLES_UNSAT)) == (True, False)
        assert brute_iso(TWO_CYCLES_SAT, TWO_CYCLES_UNSAT) is None
        assert brute_digraph_isomorphisms(build_idg(TWO_CYCLES_SAT), build_idg(TWO_CYCLES_UNSAT))
        two = disjoint_union(cycle_digraph(4, 1), cycle_digraph(4, 5))
        skews = brute_skews(two)
        assert len(skews) == 8
        assert len(skew_iso_classes(two, skews)) == 2


def test_criterion_13_count_tables(capsys):
    with criterion(capsys, 13, "count table regression goldens for k=2, n <= 14", 120):
        counts = count_table(2, 14)
        assert counts == COUNTS_K2
        values = list(counts.values())
        assert all(a < b for a, b in zip(values, values[1:]))
