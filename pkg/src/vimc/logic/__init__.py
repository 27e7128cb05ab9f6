from .ast import (
    Adjacent,
    And,
    Equal,
    ExistsSet,
    ExistsVertex,
    ForallSet,
    ForallVertex,
    Formula,
    Iff,
    Implies,
    Member,
    Named,
    Not,
    NotEqual,
    Or,
    conj,
    disj,
    free_variables,
    is_sentence,
    strip_positions,
)
from .parser import parse_formula
from .printer import print_formula
from .transform import (
    QuantifierProfile,
    desugar,
    is_prenex,
    quantifier_profile,
    rename_apart,
    to_prenex,
)

__all__ = [
    "Adjacent",
    "And",
    "Equal",
    "ExistsSet",
    "ExistsVertex",
    "ForallSet",
    "ForallVertex",
    "Formula",
    "Iff",
    "Implies",
    "Member",
    "Named",
    "Not",
    "NotEqual",
    "Or",
    "QuantifierProfile",
    "conj",
    "desugar",
    "disj",
    "free_variables",
    "is_prenex",
    "is_sentence",
    "parse_formula",
    "print_formula",
    "quantifier_profile",
    "rename_apart",
    "strip_positions",
    "to_prenex",
]
