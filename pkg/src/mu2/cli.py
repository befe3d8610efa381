"""Command-line interface: ``mu2 <command> ...``.

Exit codes: 0 success (or isomorphic), 1 not isomorphic, 2 unreadable or
malformed input, 3 not a 2-CNF, 4 not minimally unsatisfiable, 5 size cap
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import ClassifyError, are_isomorphic, automorphism_group, canon, classify
from .formula import ClauseSet, DimacsError, parse_dimacs, write_dimacs
from .generate import CapExceeded, count_d1, count_table, write_enumeration
from .graphs import SearchLimitExceeded, smooth
from .implication import build_idg, build_ig, build_img, is_mu, is_satisfiable
from .oracles import OracleCapExceeded, brute_iso, brute_isomorphisms, brute_mu, brute_sat
from .wdc import WDCError

EXIT_OK, EXIT_NONISO, EXIT_INPUT, EXIT_NOT2CNF, EXIT_NOTMU, EXIT_CAP = range(6)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str) -> ClauseSet:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {e.strerror}") from None
    try:
        F = parse_dimacs(data)
    except (DimacsError, UnicodeDecodeError) as e:
        raise CliError(EXIT_INPUT, f"{path}: {e}") from None
    if F.max_clause_length() > 2:
        raise CliError(EXIT_NOT2CNF, f"{path}: clause of length {F.max_clause_length()}")
    return F


def _load_mu(path: str) -> ClauseSet:
    F = _load(path)
    if not is_mu(F):
        raise CliError(EXIT_NOTMU, f"{path}: not minimally unsatisfiable")
    return F


def _emit(text: str, dest: str | None) -> None:
    if dest:
        Path(dest).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _map_json(f: dict) -> dict:
    return {str(x): f[x] for x in sorted(f, key=lambda z: (abs(z), -z))}


def cmd_classify(a) -> int:
    F = _load_mu(a.file)
    cl = classify(F, check=False)
    d = cl.to_dict()
    if a.brute:
        d["brute_check"] = brute_iso(F, cl.canonical) is not None
    _emit(_dump(d), a.json)
    return EXIT_OK


def cmd_iso(a) -> int:
    F, G = _load_mu(a.file), _load_mu(a.file2)
    f = brute_iso(F, G) if a.brute else are_isomorphic(F, G, check=False)
    out = {"isomorphic": f is not None}
    if f is not None:
        out["witness"] = _map_json(f)
    _emit(_dump(out), a.json)
    return EXIT_OK if f is not None else EXIT_NONISO


def cmd_canon(a) -> int:
    F = _load_mu(a.file)
    _emit(write_dimacs(canon(F, check=False)), a.out)
    return EXIT_OK


def cmd_auto(a) -> int:
    F = _load_mu(a.file)
    if a.brute:
        elems = brute_isomorphisms(F, F)
        out = {"order": len(elems), "elements": [_map_json(f) for f in elems]}
    else:
        grp = automorphism_group(F, check=False)
        out = {"order": grp.order, "identity": grp.identity,
               "elements": [_map_json(f) for f in grp.elements],
               "table": [list(r) for r in grp.table]}
    _emit(_dump(out), a.json)
    return EXIT_OK


def cmd_check(a) -> int:
    F = _load(a.file)
    out = {"n": F.n, "c": F.c, "deficiency": F.deficiency,
           "satisfiable": is_satisfiable(F), "mu": is_mu(F)}
    if a.brute:
        out["brute_satisfiable"] = brute_sat(F)
        out["brute_mu"] = brute_mu(F)
    _emit(_dump(out), a.json)
    return EXIT_OK


def cmd_smooth(a) -> int:
    F = _load(a.file)
    _emit(smooth(build_img(F)).to_dot("smooth"), a.dot)
    return EXIT_OK


def cmd_render(a) -> int:
    F = _load(a.file)
    if a.kind == "img":
        text = build_img(F).to_dot("img")
    elif a.kind == "ig":
        text = build_ig(F).to_dot("ig")
    else:
        text = build_idg(F).to_dot("idg")
    _emit(text, a.dot)
    return EXIT_OK


def cmd_gen(a) -> int:
    index = write_enumeration(a.out, a.k, a.n, force=a.force)
    sys.stdout.write(_dump(index))
    return EXIT_OK


def cmd_count(a) -> int:
    if a.d1 is not None:
        sys.stdout.write(f"{count_d1(a.d1)}\n")
        return EXIT_OK
    if a.k is None or a.n is None:
        raise CliError(EXIT_INPUT, "count needs --d1 N or K N")
    lines = ["n\tcount"]
    for m, cnt in count_table(a.k, a.n, force=a.force).items():
        lines.append(f"{m}\t{cnt}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mu2", description="Classify minimally unsatisfiable 2-CNFs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, files=1, json_out=True, dot_out=False, brute=False):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help="DIMACS CNF input")
        if files == 2:
            sp.add_argument("file2", help="second DIMACS CNF input")
        if json_out:
            sp.add_argument("--json", metavar="OUT", help="write JSON here instead of stdout")
        if dot_out:
            sp.add_argument("--dot", metavar="OUT", help="write DOT here instead of stdout")
        if brute:
            sp.add_argument("--brute", action="store_true", help="use the brute-force oracles")
        sp.set_defaults(func=fn)
        return sp

    add("classify", cmd_classify, "classification record as JSON", brute=True)
    add("iso", cmd_iso, "decide isomorphism; exit 0 if isomorphic, 1 if not", files=2, brute=True)
    sp = add("canon", cmd_canon, "canonical DIMACS form", json_out=False)
    sp.add_argument("--out", metavar="OUT", help="write DIMACS here instead of stdout")
    add("auto", cmd_auto, "automorphism group table as JSON", brute=True)
    add("check", cmd_check, "satisfiability and MU report", brute=True)
    add("smooth", cmd_smooth, "DOT of the homeomorphism type", json_out=False, dot_out=True)
    sp = add("render", cmd_render, "DOT of idg, ig or img", json_out=False, dot_out=True)
    sp.add_argument("--kind", choices=("idg", "ig", "img"), default="idg")

    sp = sub.add_parser("gen", help="enumerate all classes into a directory")
    sp.add_argument("k", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("--out", default=".", help="output directory")
    sp.add_argument("--force", action="store_true", help="allow n beyond the default cap")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("count", help="class counts")
    sp.add_argument("k", type=int, nargs="?")
    sp.add_argument("n", type=int, nargs="?")
    sp.add_argument("--d1", type=int, metavar="N", help="deficiency-1 count for N variables")
    sp.add_argument("--force", action="store_true", help="allow n beyond the default cap")
    sp.set_defaults(func=cmd_count)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"mu2: {e}", file=sys.stderr)
        return e.code
    except CapExceeded as e:
        print(f"mu2: {e}; use --force to go beyond it", file=sys.stderr)
        return EXIT_CAP
    except (OracleCapExceeded, SearchLimitExceeded) as e:
        print(f"mu2: {e}", file=sys.stderr)
        return EXIT_CAP
    except (ClassifyError, WDCError, ValueError) as e:
        print(f"mu2: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
