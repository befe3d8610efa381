"""Constructors, extensions and exhaustive enumeration of 2-MUs up to isomorphism."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .classify import (
    build_ufamily,
    canon,
    canonical_key,
    classify_d1,
    homeo_fingerprint,
    ufamily_members,
)
from .formula import ClauseSet, FormulaError, make_clause, write_dimacs


class GenerationError(ValueError):
    pass


class CapExceeded(GenerationError):
    pass


def bpt(k: int) -> ClauseSet:
    """The cycle of equivalences 1 <-> 2 <-> ... <-> k closed by {1,k}, {-1,-k}."""
    if k < 2:
        raise GenerationError("bpt(k) needs k >= 2")
    clauses = []
    for i in range(1, k):
        clauses += [[-i, i + 1], [i, -(i + 1)]]
    clauses += [[1, k], [-1, -k]]
    return ClauseSet(clauses)


def fresh_variable(F: ClauseSet) -> int:
    return max(F.variables, default=0) + 1


def extend_1singular(F: ClauseSet, clause, v: int | None = None) -> ClauseSet:
    """Replace {x, y} by {v, x}, {-v, y} for a fresh variable v."""
    C = make_clause(clause)
    if C not in F or len(C) != 2:
        raise GenerationError(f"{sorted(C)} is not a binary clause of F")
    v = fresh_variable(F) if v is None else v
    if v <= 0 or v in F.variables:
        raise GenerationError(f"variable {v} is not fresh")
    x, y = sorted(C)
    return F.replace([C], [[v, x], [-v, y]])


def extend_2singular(F: ClauseSet, x: int, y: int | None = None) -> ClauseSet:
    """Replace the clauses {x,a}, {x,b} by {y,x}, {-y,a}, {-y,b} (y fresh)."""
    if F.ldeg(x) != 2 or F.ldeg(-x) != 2:
        raise GenerationError(f"literal {x} must occur twice in each polarity")
    y = fresh_variable(F) if y is None else y
    if y == 0 or abs(y) in F.variables:
        raise GenerationError(f"variable {abs(y)} is not fresh")
    old = F.occurrences(x)
    rest = [c - {x} for c in old]
    if any(len(r) != 1 for r in rest):
        raise GenerationError(f"the {x}-clauses must be binary")
    new = [[y, x]] + [[-y, *r] for r in rest]
    return F.replace(old, new)


def two_singular_candidates(F: ClauseSet) -> list[int]:
    return sorted((x for x in F.literals if F.ldeg(x) == 2 and F.ldeg(-x) == 2),
                  key=lambda z: (abs(z), z))


def binary_clauses(F: ClauseSet) -> list[tuple[int, int]]:
    return [c for c in F.sorted_clauses() if len(c) == 2]


@dataclass(frozen=True)
class Step:
    kind: str        # "2sing" (literal x) or "1sing" (clause)
    target: tuple    # (x,) or the clause
    new_var: int


@dataclass(frozen=True)
class GenerationTrace:
    start: ClauseSet
    steps: tuple[Step, ...] = ()

    def then(self, step: Step) -> "GenerationTrace":
        return GenerationTrace(self.start, self.steps + (step,))

    def replay(self) -> ClauseSet:
        F = self.start
        for s in self.steps:
            if s.kind == "2sing":
                F = extend_2singular(F, s.target[0], s.new_var)
            else:
                F = extend_1singular(F, s.target, s.new_var)
        return F

    def is_two_phase(self) -> bool:
        kinds = [s.kind for s in self.steps]
        return kinds == sorted(kinds, key=lambda k: k != "2sing")


# -- enumeration -------------------------------------------------------------------------

def default_cap(k: int) -> int:
    return {2: 14, 3: 10}.get(k, 2 * k + 1)


@dataclass
class _Pool:
    items: dict = field(default_factory=dict)  # canonical key -> (instance, trace)

    def add(self, F: ClauseSet, trace: GenerationTrace) -> None:
        key = canonical_key(F, check=False)
        if key not in self.items:
            self.items[key] = (F, trace)


def _check_args(k: int, n: int, force: bool) -> None:
    if k < 2:
        raise GenerationError("k must be at least 2")
    if n < k:
        raise GenerationError("n must be at least k")
    if n > default_cap(k) and not force:
        raise CapExceeded(f"n={n} exceeds the default cap {default_cap(k)} for k={k}")


def _levels(k: int, n: int, force: bool):
    """Yield (m, pool) for m = k..n; each pool holds one instance per class."""
    _check_args(k, n, force)
    start = bpt(k)
    plus = [_Pool()]
    plus[0].add(start, GenerationTrace(start))
    while len(plus) <= n - k:
        nxt = _Pool()
        for F, tr in plus[-1].items.values():
            for x in two_singular_candidates(F):
                v = fresh_variable(F)
                nxt.add(extend_2singular(F, x, v), tr.then(Step("2sing", (x,), v)))
        if not nxt.items:
            break
        plus.append(nxt)
    level = plus[0]
    yield k, level
    for m in range(k + 1, n + 1):
        nxt = _Pool()
        if m - k < len(plus):
            for key, val in plus[m - k].items.items():
                nxt.items.setdefault(key, val)
        for F, tr in level.items.values():
            v = fresh_variable(F)
            for C in binary_clauses(F):
                nxt.add(extend_1singular(F, C, v), tr.then(Step("1sing", C, v)))
        level = nxt
        yield m, level


def enumerate_2mu_traced(k: int, n: int, force: bool = False) -> list[tuple[ClauseSet, GenerationTrace]]:
    """Representatives (raw, with generation traces) of all classes with n variables."""
    for _, level in _levels(k, n, force):
        pass
    return [level.items[key] for key in sorted(level.items)]


def enumerate_2mu(k: int, n: int, force: bool = False) -> list[ClauseSet]:
    """Canonical representatives of all deficiency-k 2-MUs with n variables."""
    return [canon(F, check=False) for F, _ in enumerate_2mu_traced(k, n, force)]


def count_2mu(k: int, n: int, force: bool = False) -> int:
    return len(enumerate_2mu_traced(k, n, force))


def count_table(k: int, n: int, force: bool = False) -> dict[int, int]:
    """Class counts for every m = k..n, computed in a single pass."""
    return {m: len(level.items) for m, level in _levels(k, n, force)}


# -- deficiency one ------------------------------------------------------------------------

def count_d1(n: int) -> int:
    if n < 0:
        raise GenerationError("n must be nonnegative")
    if n == 0:
        return 1
    return n * (n + 2) // 4 if n % 2 == 0 else (n + 1) ** 2 // 4


def enumerate_d1(n: int) -> list[ClauseSet]:
    if n < 1:
        raise GenerationError("n must be at least 1")
    return [build_ufamily(u) for u in ufamily_members(n)]


def rule_a(F: ClauseSet, x: int, v: int) -> ClauseSet:
    return F.replace([[x]], [[x, v], [-v]])


def rule_b(F: ClauseSet, x: int, v: int) -> ClauseSet:
    return F.replace([[x]], [[x, v], [x, -v]])


def rule_ii(F: ClauseSet, C, v: int) -> ClauseSet:
    x, y = sorted(C)
    return F.replace([C], [[x, v], [-v, y]])


RULE_SEQUENCES = ("", "A", "B", "AB", "BB", "ABB")


def _apply_rules(F: ClauseSet, seq: str):
    """All outcomes of the rule sequence, over every choice of unit clause."""
    if not seq:
        yield F
        return
    v = fresh_variable(F)
    for (x,) in sorted(tuple(c) for c in F.unit_clauses()):
        G = rule_a(F, x, v) if seq[0] == "A" else rule_b(F, x, v)
        yield from _apply_rules(G, seq[1:])


def d1_seeds() -> dict[str, ClauseSet]:
    """One outcome per rule sequence, always expanding the unit on the newest variable."""
    out = {}
    for seq in RULE_SEQUENCES:
        F = ClauseSet([[1], [-1]])
        for r in seq:
            (x,) = max(F.unit_clauses(), key=lambda c: abs(next(iter(c))))
            v = fresh_variable(F)
            F = rule_a(F, x, v) if r == "A" else rule_b(F, x, v)
        out[seq] = F
    return out


def generate_d1_rules(n: int) -> list[ClauseSet]:
    """One representative per class with n variables, generated by the rules:
    at most one A, then at most two B, then rule (ii) repeatedly; every choice
    of unit and binary clause is explored."""
    if n < 1:
        raise GenerationError("n must be at least 1")
    by_size: dict[int, dict] = {}
    base = ClauseSet([[1], [-1]])
    for seq in RULE_SEQUENCES:
        for F in _apply_rules(base, seq):
            if F.n <= n:
                by_size.setdefault(F.n, {}).setdefault(canonical_key(F, check=False), F)
    for size in range(1, n):
        for F in list(by_size.get(size, {}).values()):
            v = fresh_variable(F)
            for C in binary_clauses(F):
                G = rule_ii(F, C, v)
                by_size.setdefault(size + 1, {}).setdefault(canonical_key(G, check=False), G)
    level = by_size.get(n, {})
    return [level[key] for key in sorted(level)]


# -- output ---------------------------------------------------------------------------------

def bracelet_histogram(instances) -> dict[str, int]:
    return dict(sorted(Counter(homeo_fingerprint(F, check=False) for F in instances).items()))


def write_enumeration(out_dir: str | Path, k: int, n: int, force: bool = False) -> dict:
    """Write one DIMACS file per class and an index.json; returns the index."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    instances = enumerate_2mu(k, n, force)
    width = max(3, len(str(len(instances))))
    for i, F in enumerate(instances, start=1):
        (out / f"mu2_k{k}_n{n}_{i:0{width}d}.cnf").write_text(write_dimacs(F))
    index = {"k": k, "n": n, "count": len(instances), "bracelets": bracelet_histogram(instances)}
    (out / "index.json").write_text(json.dumps(index, indent=2) + "\n")
    return index


def is_d1_family_member(F: ClauseSet) -> bool:
    try:
        classify_d1(F)
    except (ValueError, FormulaError):
        return False
    return True
