"""Grammar workbench for the two readings of parsing-expression grammars.

One grammar representation, two matchers: non-deterministic choice (the
context-free reading, where a match result is a set of consumed-prefix
lengths) and ordered choice with explicit failure and the not-predicate
(the deterministic reading).  On top sit FIRST/FOLLOW-style lookahead
analyses, checkers for the LL(1), strong-LL(k), right-linear, and
LL-regular classes, the guard-insertion transforms that carry grammars
from those classes to the ordered reading without changing the language,
and a differential harness that verifies the whole story by bounded
exhaustive enumeration.
"""

from .analysis import (
    ClassReport,
    ClassViolation,
    LookaheadTables,
    PartitionReport,
    RegularPartition,
    block,
    cat_k,
    compute_tables,
    is_ll1,
    is_ll_regular,
    is_right_linear,
    is_strong_llk,
    prefix_partition,
    prefix_property,
    rl_to_dfa,
    take_k,
)
from .automata import Dfa
from .cfg import CfgMatchResult, ProofTreeCount, cfg_language, cfg_match, count_proof_trees
from .equivalence import (
    DiffReport,
    GeneratorConfig,
    OracleLimit,
    compare_languages,
    oracle_membership,
    random_grammar,
)
from .exprs import (
    EMPTY,
    END_MARKER,
    Choice,
    Concat,
    Empty,
    Expr,
    NonTerminal,
    Not,
    Star,
    Terminal,
    alternatives,
    and_pred,
)
from .grammar import (
    BnfReport,
    Grammar,
    GrammarError,
    ProductionList,
    cfg_to_pecfg,
    check_bnf,
    desugar,
    left_recursive_nonterminals,
    normalize_bnf,
    nullable_nonterminals,
    pecfg_to_cfg,
    remove_useless,
)
from .peg import PegMatchResult, peg_language, peg_match
from .textfmt import (
    GrammarSyntaxError,
    load_grammar_text,
    parse_grammar,
    parse_partition_blocks,
    render_expr,
    render_grammar,
)
from .transforms import (
    ClassCheckFailed,
    TransformedGrammar,
    choice_of,
    erase_predicates,
    phi_after,
    phi_before,
    pi_prefix,
    reorder_ll1,
    rho_ll_regular,
    string_to_expr,
)

__all__ = [name for name in dir() if not name.startswith("_")]
