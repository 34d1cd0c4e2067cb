"""Core package initialization"""

from hyperprover.core.config import Config
from hyperprover.core.constants import CalculusId, Dialect, Logic, Model, RuleId
from hyperprover.core.errors import (
    DialectError,
    ElaborationError,
    EvaluationError,
    FormulaSyntaxError,
    LabelRegularityError,
    LPResourceError,
    ProofFormatError,
    RuleApplicationError,
    SearchTimeout,
    TranslationError,
)

# Syntax, structures and semantics
from hyperprover.core.syntax import (
    Formula,
    Kind,
    normalize,
    parse_focused,
    parse_formula,
    parse_hypersequent,
    parse_labelled,
    parse_sequent,
    render_formula,
)
from hyperprover.core.structures import (
    FocusedHypersequent,
    Hypersequent,
    LabelledFormula,
    LabelledSequent,
    LabelTree,
    Multiset,
    Sequent,
)
from hyperprover.core.semantics import Valuation, eval_a, eval_l, holds, random_refute

# Proofs and provers
from hyperprover.core.proof import CheckResult, ProofTree, Verdict
from hyperprover.core.hyper_calculi import check_proof, prove_ga, prove_gl
from hyperprover.core.terminating import prove_ga_t, prove_gl_t
from hyperprover.core.labelled import prove_ga_i, prove_ga_l, prove_gl_l, reduce_label_regular
from hyperprover.core.single_sequent import check_gas_proof, check_gls_proof, elaborate_to_gas
from hyperprover.core.translate import enthymematic, material, star, transfer_countermodel, translate
from hyperprover.core.engine import Engine, parse_goal, resolve_calculus

__all__ = [
    "Config",
    "CalculusId",
    "Dialect",
    "Logic",
    "Model",
    "RuleId",
    "DialectError",
    "ElaborationError",
    "EvaluationError",
    "FormulaSyntaxError",
    "LabelRegularityError",
    "LPResourceError",
    "ProofFormatError",
    "RuleApplicationError",
    "SearchTimeout",
    "TranslationError",
    "Formula",
    "Kind",
    "normalize",
    "parse_focused",
    "parse_formula",
    "parse_hypersequent",
    "parse_labelled",
    "parse_sequent",
    "render_formula",
    "FocusedHypersequent",
    "Hypersequent",
    "LabelledFormula",
    "LabelledSequent",
    "LabelTree",
    "Multiset",
    "Sequent",
    "Valuation",
    "eval_a",
    "eval_l",
    "holds",
    "random_refute",
    "CheckResult",
    "ProofTree",
    "Verdict",
    "check_proof",
    "prove_ga",
    "prove_gl",
    "prove_ga_t",
    "prove_gl_t",
    "prove_ga_i",
    "prove_ga_l",
    "prove_gl_l",
    "reduce_label_regular",
    "check_gas_proof",
    "check_gls_proof",
    "elaborate_to_gas",
    "enthymematic",
    "material",
    "star",
    "transfer_countermodel",
    "translate",
    "Engine",
    "parse_goal",
    "resolve_calculus",
]
