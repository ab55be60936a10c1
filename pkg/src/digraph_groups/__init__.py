"""Classification of balanced digraph groups with verified certificates.

A digraph group takes a finite simple digraph and a fixed cyclically
reduced relator pattern R(a, b) involving both letters; it is presented
by one generator per vertex and one relator R(x_u, x_v) per arc (u, v).
When the digraph has as many arcs as vertices and its underlying graph
has girth at least 4, the finite such groups are cyclic of an explicitly
computable order.  This package decides the classification, emits
machine-checkable certificates for the infinite cases, and cross-checks
every finite verdict with Todd-Coxeter coset enumeration and exact
Smith-Normal-Form abelianization.
"""

from .classify import (
    ClassifyConfig,
    Verdict,
    classify,
    cross_verify,
    order_formula,
    verdict_from_json,
    verdict_to_json,
)
from .cosets import CosetTable, Exceeded, Order, enumerate_cosets, validate_table
from .digraphs import (
    DegreeCensus,
    Digraph,
    DigraphError,
    PruneResult,
    ShapeMatch,
    analyze,
    build_template,
    parse_digraph,
    parse_template,
    prune,
    recognize_shape,
    reflect_digraph,
)
from .oracle import (
    KProbeResult,
    OracleConfig,
    OracleVerdict,
    QuotientCertificate,
    Witness,
    check_power_equality,
    probe_k_structure,
    verify_evidence,
)
from .presentations import (
    EliminationStep,
    Presentation,
    PresentationError,
    SNFResult,
    abelian_invariants,
    derive_power_relator,
    eliminate_generator,
    instantiate,
    kill_generators,
    replay_trace,
    simplify_to_cyclic,
    smith_normal_form,
)
from .words import (
    ExponentProfile,
    Word,
    WordSyntaxError,
    cyclic_reduce,
    exponent_profile,
    parse_word,
    reflect_word,
    substitute,
)

__all__ = [
    "ClassifyConfig",
    "CosetTable",
    "DegreeCensus",
    "Digraph",
    "DigraphError",
    "EliminationStep",
    "Exceeded",
    "ExponentProfile",
    "KProbeResult",
    "OracleConfig",
    "OracleVerdict",
    "Order",
    "Presentation",
    "PresentationError",
    "PruneResult",
    "QuotientCertificate",
    "ShapeMatch",
    "SNFResult",
    "Verdict",
    "Witness",
    "Word",
    "WordSyntaxError",
    "abelian_invariants",
    "analyze",
    "build_template",
    "check_power_equality",
    "classify",
    "cross_verify",
    "cyclic_reduce",
    "derive_power_relator",
    "eliminate_generator",
    "enumerate_cosets",
    "exponent_profile",
    "instantiate",
    "kill_generators",
    "order_formula",
    "parse_digraph",
    "parse_template",
    "parse_word",
    "probe_k_structure",
    "prune",
    "recognize_shape",
    "reflect_digraph",
    "reflect_word",
    "replay_trace",
    "simplify_to_cyclic",
    "smith_normal_form",
    "substitute",
    "validate_table",
    "verdict_from_json",
    "verdict_to_json",
    "verify_evidence",
]

__version__ = "0.1.0"
