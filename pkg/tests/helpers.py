"""Shared instances and small utilities for the test-suite."""

from __future__ import annotations

import random

from mu2.formula import ClauseSet, literal_map

D3_EXAMPLE = ClauseSet([[1, -5], [3, 5], [-1, 4], [-4, 6], [-6, 2],
                     [-2, 3], [-1, -3], [1, -2], [-3, 4]])
D3_REDUCT = ClauseSet([[1, 3], [-1, 4], [2, -4], [-2, 3], [-1, -3], [1, -2], [-3, 4]])
D3_DIMACS = "p cnf 6 9\n1 -5 0\n3 5 0\n-1 4 0\n-4 6 0\n-6 2 0\n-2 3 0\n-1 -3 0\n1 -2 0\n-3 4 0\n"

# two 2-CNFs whose implication digraphs are two disjoint 4-cycles
TWO_CYCLES_SAT = ClauseSet([[-1, 2], [-2, 3], [-3, 4], [1, -4]])
TWO_CYCLES_UNSAT = ClauseSet([[-1], [1, 2], [-2], [-3], [3, 4], [-4]])


def random_renaming(F: ClauseSet, rng: random.Random, pool: int | None = None) -> dict:
    """A random complement-preserving literal bijection defined on lit(F)."""
    vs = sorted(F.variables)
    targets = rng.sample(range(1, (pool or len(vs)) + 1), len(vs))
    flips = [v for v in vs if rng.random() < 0.5]
    return literal_map(dict(zip(vs, targets)), flips)


def random_2cnf(rng: random.Random, n: int, c: int, unit_prob: float = 0.1) -> ClauseSet:
    clauses = set()
    tries = 0
    while len(clauses) < c and tries < 50 * c:
        tries += 1
        v = rng.randint(1, n)
        x = v if rng.random() < 0.5 else -v
        if rng.random() < unit_prob:
            clauses.add(frozenset((x,)))
            continue
        w = rng.randint(1, n)
        if w == v:
            continue
        y = w if rng.random() < 0.5 else -w
        clauses.add(frozenset((x, y)))
    return ClauseSet(clauses)
