"""
Exception types raised by the prover core.

Every exception carries the structured fields a caller needs to report the
failure; the messages are built once in ``__init__``.
"""
from typing import Optional


class FormulaSyntaxError(ValueError):
    """Raised when formula or sequent text does not parse."""

    def __init__(self, text: str, line: int = 0, column: int = 0, detail: str = ""):
        self.text = text
        self.line = line
        self.column = column
        self.detail = detail
        msg = f"Syntax error at line {line}, column {column} in {text!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class DialectError(ValueError):
    """Raised when a connective is not available in a dialect or target calculus."""

    def __init__(self, connective: str, dialect: str):
        self.connective = connective
        self.dialect = dialect
        super().__init__(f"Connective '{connective}' is not available in {dialect}")


class EvaluationError(ValueError):
    """Raised for unassigned variables or out-of-range Ł values."""

    def __init__(self, message: str, variable: Optional[str] = None):
        self.variable = variable
        super().__init__(message)


class LPResourceError(RuntimeError):
    """Raised when Fourier-Motzkin elimination exceeds its constraint limit."""

    def __init__(self, limit: int, size: int):
        self.limit = limit
        self.size = size
        super().__init__(
            f"Linear system grew to {size} constraints (limit {limit}); "
            "raise lp.max_constraints to continue"
        )


class RuleApplicationError(ValueError):
    """Raised when a rule's side conditions or a kernel's preconditions fail."""

    def __init__(self, rule: str, reason: str):
        self.rule = rule
        self.reason = reason
        super().__init__(f"Cannot apply {rule}: {reason}")


class LabelRegularityError(ValueError):
    """Raised when labels do not form root-to-node paths of a tree."""


class SearchTimeout(RuntimeError):
    """Raised when a search exceeds its deadline or step budget."""

    def __init__(self, elapsed_ms: int, steps: int, reason: str = "deadline"):
        self.elapsed_ms = elapsed_ms
        self.steps = steps
        self.reason = reason
        super().__init__(
            f"Search stopped ({reason}) after {elapsed_ms} ms and {steps} rule applications"
        )


class ProofFormatError(ValueError):
    """Raised for malformed proof JSON."""


class ElaborationError(RuntimeError):
    """Raised when a GA_i proof cannot be elaborated into GA_s."""


class TranslationError(ValueError):
    """Raised when a formula lies outside a translation's source fragment."""

    def __init__(self, translation: str, connective: str):
        self.translation = translation
        self.connective = connective
        super().__init__(f"{translation} translation does not accept '{connective}'")
