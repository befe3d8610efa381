"""Classification of minimally unsatisfiable 2-CNFs."""

from .classify import (
    Classification,
    UFamily,
    are_isomorphic,
    automorphism_group,
    build_ufamily,
    canon,
    classify,
    classify_d1,
    homeo_fingerprint,
    unique_unit_free_skew,
)
from .formula import BOTTOM, ClauseSet, parse_dimacs, rename, stats, write_dimacs
from .generate import (
    bpt,
    count_2mu,
    count_table,
    count_d1,
    enumerate_2mu,
    enumerate_d1,
    extend_1singular,
    extend_2singular,
    generate_d1_rules,
)
from .implication import (
    build_idg,
    build_img,
    clause_set_of,
    dp_reduce,
    is_mu,
    is_satisfiable,
    natural_skew,
    one_singular_fixpoint,
    singular_dp_to_nonsingular,
)
from .wdc import bracelet_canon, enumerate_bracelets, recognize_wdc, wdc_isomorphisms

__all__ = [
    "are_isomorphic",
    "automorphism_group",
    "BOTTOM",
    "bpt",
    "bracelet_canon",
    "build_idg",
    "build_img",
    "build_ufamily",
    "canon",
    "Classification",
    "classify",
    "classify_d1",
    "clause_set_of",
    "ClauseSet",
    "count_2mu",
    "count_d1",
    "count_table",
    "dp_reduce",
    "enumerate_2mu",
    "enumerate_bracelets",
    "enumerate_d1",
    "extend_1singular",
    "extend_2singular",
    "generate_d1_rules",
    "homeo_fingerprint",
    "is_mu",
    "is_satisfiable",
    "natural_skew",
    "one_singular_fixpoint",
    "parse_dimacs",
    "recognize_wdc",
    "rename",
    "singular_dp_to_nonsingular",
    "stats",
    "UFamily",
    "unique_unit_free_skew",
    "wdc_isomorphisms",
    "write_dimacs",
]

__version__ = "0.1.0"
