"""Rigorous enclosures and identity verification for q-deformed multiple
zeta values.

The library computes nested q-series (and their classical limits) as
certified rational enclosures, and verifies the decomposition of the product
zeta_q[s] * zeta_q[t] three ways: exact polynomial identity for the
underlying rational-function lemma, certified numeric comparison of both
sides, and cross-checks against the independent stuffle expansion.
"""

from .enclosure import DyadicContext, Enclosure
from .identities import (
    IdentityInstance,
    VerificationReport,
    ZetaTerm,
    build_identity,
    cross_check,
    euler_terms,
    evaluate_identity,
    proof_sum_S,
    proof_sum_T,
    q_euler_terms,
    stuffle_terms,
    sum_terms,
    verify_proof_sums,
)
from .poly import (
    FractionSum,
    MultiPoly,
    RationalFunction,
    rf_equal,
)
from .scalars import Rational, as_rational, decimal_str, rat_parse, rat_str
from .series import (
    DEFAULT_MAX_TERMS,
    ClassicalZeta,
    Composition,
    Phi,
    QZeta,
    SeriesResult,
    TruncationLimitError,
    eval_classical,
    eval_phi,
    eval_qzeta,
    evaluate_target,
    phi_q,
    phi_tail_bound,
    q_integer,
    qzeta_tail_bound,
    zeta_classical,
    zeta_q,
    zeta_q_bruteforce,
)
from .symbolic import (
    LemmaInstance,
    build_lemma,
    derive_lemma_by_operator,
    lemma_terms,
    render_lemma,
    verify_lemma,
    verify_parfrac,
    verify_parfrac_substitution,
    verify_q1_reduction,
)

__version__ = "0.1.0"

__all__ = [
    "ClassicalZeta",
    "Composition",
    "DEFAULT_MAX_TERMS",
    "DyadicContext",
    "Enclosure",
    "FractionSum",
    "IdentityInstance",
    "LemmaInstance",
    "MultiPoly",
    "Phi",
    "QZeta",
    "Rational",
    "RationalFunction",
    "SeriesResult",
    "TruncationLimitError",
    "VerificationReport",
    "ZetaTerm",
    "as_rational",
    "build_identity",
    "build_lemma",
    "cross_check",
    "decimal_str",
    "derive_lemma_by_operator",
    "euler_terms",
    "eval_classical",
    "eval_phi",
    "eval_qzeta",
    "evaluate_identity",
    "evaluate_target",
    "lemma_terms",
    "phi_q",
    "phi_tail_bound",
    "proof_sum_S",
    "proof_sum_T",
    "q_euler_terms",
    "q_integer",
    "qzeta_tail_bound",
    "rat_parse",
    "rat_str",
    "render_lemma",
    "rf_equal",
    "stuffle_terms",
    "sum_terms",
    "verify_lemma",
    "verify_parfrac",
    "verify_parfrac_substitution",
    "verify_proof_sums",
    "verify_q1_reduction",
    "zeta_classical",
    "zeta_q",
    "zeta_q_bruteforce",
]
