"""Literals, clauses and clause-sets, with DIMACS input/output.

Literals are nonzero integers in the DIMACS convention: ``v`` is a variable,
``-v`` its complement.  A clause is a ``frozenset`` of literals, a clause-set
is a :class:`ClauseSet` (an immutable set of clauses).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

Literal = int
Clause = frozenset


class FormulaError(ValueError):
    """Raised for ill-formed literals, clauses or clause-sets."""


class DimacsError(FormulaError):
    """Raised when DIMACS text cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def var(x: Literal) -> int:
    return abs(x)


def complement(x: Literal) -> Literal:
    return -x


def make_clause(literals: Iterable[int]) -> frozenset[int]:
    c = frozenset(int(x) for x in literals)
    if 0 in c:
        raise FormulaError("0 is not a literal")
    for x in c:
        if -x in c:
            raise FormulaError(f"tautological clause contains {x} and {-x}")
    return c


def clause_key(c: Iterable[int]) -> tuple[int, ...]:
    """Sort key giving the deterministic clause order used on output."""
    return tuple(sorted(c))


class ClauseSet:
    """An immutable finite set of clash-free clauses."""

    __slots__ = ("_clauses", "__dict__")

    def __init__(self, clauses: Iterable[Iterable[int]] = ()):
        self._clauses = frozenset(make_clause(c) for c in clauses)

    @classmethod
    def _from_frozen(cls, clauses: frozenset) -> "ClauseSet":
        obj = cls.__new__(cls)
        obj._clauses = clauses
        return obj

    @property
    def clauses(self) -> frozenset:
        return self._clauses

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self._clauses)

    def __len__(self) -> int:
        return len(self._clauses)

    def __contains__(self, clause) -> bool:
        return frozenset(clause) in self._clauses

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClauseSet):
            return NotImplemented
        return self._clauses == other._clauses

    def __hash__(self) -> int:
        return hash(self._clauses)

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, c)) + "}" for c in self.sorted_clauses())
        return f"ClauseSet({{{body}}})"

    def sorted_clauses(self) -> list[tuple[int, ...]]:
        return sorted(clause_key(c) for c in self._clauses)

    @cached_property
    def variables(self) -> frozenset[int]:
        return frozenset(abs(x) for c in self._clauses for x in c)

    @cached_property
    def literals(self) -> frozenset[int]:
        vs = self.variables
        return vs | frozenset(-v for v in vs)

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def c(self) -> int:
        return len(self._clauses)

    @property
    def deficiency(self) -> int:
        return self.c - self.n

    @property
    def has_empty_clause(self) -> bool:
        return frozenset() in self._clauses

    @cached_property
    def literal_degrees(self) -> Counter:
        return Counter(x for c in self._clauses for x in c)

    def ldeg(self, x: Literal) -> int:
        return self.literal_degrees.get(x, 0)

    def vdeg(self, v: int) -> int:
        return self.ldeg(v) + self.ldeg(-v)

    def max_clause_length(self) -> int:
        return max((len(c) for c in self._clauses), default=0)

    def unit_clauses(self) -> list[frozenset[int]]:
        return [c for c in self._clauses if len(c) == 1]

    def occurrences(self, x: Literal) -> list[frozenset[int]]:
        return sorted((c for c in self._clauses if x in c), key=clause_key)

    def without(self, *clauses: Iterable[int]) -> "ClauseSet":
        drop = {frozenset(c) for c in clauses}
        return ClauseSet._from_frozen(self._clauses - drop)

    def replace(self, old: Iterable[Iterable[int]], new: Iterable[Iterable[int]]) -> "ClauseSet":
        drop = {frozenset(c) for c in old}
        return ClauseSet._from_frozen((self._clauses - drop) | {make_clause(c) for c in new})


BOTTOM = ClauseSet([[]])


@dataclass(frozen=True)
class DegreeReport:
    n: int
    c: int
    deficiency: int
    ldeg: dict[int, int]
    vdeg: dict[int, int]
    units: int


def stats(F: ClauseSet) -> DegreeReport:
    lits = sorted(F.literals, key=lambda x: (abs(x), x))
    return DegreeReport(
        n=F.n,
        c=F.c,
        deficiency=F.deficiency,
        ldeg={x: F.ldeg(x) for x in lits},
        vdeg={v: F.vdeg(v) for v in sorted(F.variables)},
        units=len(F.unit_clauses()),
    )


def rename(F: ClauseSet, f: Mapping[int, int]) -> ClauseSet:
    """Apply a complement-preserving literal bijection to every clause of F."""
    for x in F.literals:
        if x not in f:
            raise FormulaError(f"renaming undefined on literal {x}")
        if f[-x] != -f[x]:
            raise FormulaError(f"renaming not complement-preserving at {x}")
    image = [f[x] for x in F.literals]
    if len(set(image)) != len(image):
        raise FormulaError("renaming is not injective")
    return ClauseSet._from_frozen(frozenset(frozenset(f[x] for x in c) for c in F))


def literal_map(perm: Mapping[int, int], flips: Iterable[int] = ()) -> dict[int, int]:
    """Build a literal map from a variable map and a set of flipped variables."""
    flips = set(flips)
    out: dict[int, int] = {}
    for v, w in perm.items():
        s = -1 if v in flips else 1
        out[v] = s * w
        out[-v] = -s * w
    return out


def parse_dimacs(text: str | bytes, max_clause_len: int | None = None) -> ClauseSet:
    """Parse DIMACS CNF text.

    Every clause line must end with its terminating 0.  Tautologies, duplicate
    clauses (up to literal order) and a 0 in the middle of a clause are errors.
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("ascii")
    header: tuple[int, int] | None = None
    seen: set[frozenset[int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise DimacsError("second header", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError("negative header field", lineno)
            continue
        if header is None:
            raise DimacsError("clause before header", lineno)
        try:
            toks = [int(t) for t in line.split()]
        except ValueError:
            raise DimacsError(f"non-integer token in {line!r}", lineno) from None
        if toks[-1] != 0:
            raise DimacsError("clause not terminated by 0", lineno)
        body = toks[:-1]
        if 0 in body:
            raise DimacsError("literal 0 inside clause body", lineno)
        for x in body:
            if abs(x) > header[0]:
                raise DimacsError(f"variable {abs(x)} exceeds header bound {header[0]}", lineno)
        lits = frozenset(body)
        if any(-x in lits for x in lits):
            raise DimacsError(f"tautological clause {line!r}", lineno)
        if max_clause_len is not None and len(lits) > max_clause_len:
            raise DimacsError(f"clause longer than {max_clause_len}", lineno)
        if lits in seen:
            raise DimacsError(f"duplicate clause {line!r}", lineno)
        seen.add(lits)
    if header is None:
        raise DimacsError("missing header")
    if len(seen) != header[1]:
        raise DimacsError(f"header announces {header[1]} clauses, found {len(seen)}")
    return ClauseSet._from_frozen(frozenset(seen))


def write_dimacs(F: ClauseSet) -> str:
    maxvar = max(F.variables, default=0)
    lines = [f"p cnf {maxvar} {F.c}"]
    for c in F.sorted_clauses():
        lines.append(" ".join([*map(str, c), "0"]))
    return "\n".join(lines) + "\n"
