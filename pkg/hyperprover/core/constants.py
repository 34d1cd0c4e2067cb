"""
Constants Module

Centralized identifiers for dialects, calculi, models and rule names.
"""
from enum import Enum


class Dialect(str, Enum):
    """Concrete-syntax dialects"""
    ABELIAN = "a"
    LUKASIEWICZ = "l"


class Logic(str, Enum):
    """Logics decided by the prover"""
    A = "A"
    L = "Ł"


class Model(str, Enum):
    """Characteristic models used for evaluation"""
    Q = "Q"
    UNIT = "[-1,0]"


class CalculusId(str, Enum):
    """Proof calculi"""
    GA = "ga"
    GL = "gl"
    GA_T = "ga_t"
    GL_T = "gl_t"
    GA_L = "ga_l"
    GL_L = "gl_l"
    GA_S = "ga_s"
    GL_S = "gl_s"
    GA_I = "ga_i"

    @classmethod
    def all(cls) -> list:
        """Get all calculus identifiers"""
        return [calculus.value for calculus in cls]

    @property
    def logic(self) -> Logic:
        return Logic.A if self.value.startswith("ga") else Logic.L

    @property
    def dialect(self) -> Dialect:
        return Dialect.ABELIAN if self.logic is Logic.A else Dialect.LUKASIEWICZ

    @property
    def model(self) -> Model:
        return Model.Q if self.logic is Logic.A else Model.UNIT


class Side(str, Enum):
    """Side of a sequent"""
    LEFT = "left"
    RIGHT = "right"


class Keep(str, Enum):
    """Component kept by (S')"""
    FIRST = "first"
    SECOND = "second"


class RuleId(str, Enum):
    """Rule names as they appear in proof JSON"""
    # axioms
    ID = "ID"
    LAMBDA = "Lambda"
    BOT = "bot"
    # structural
    EW = "EW"
    EC = "EC"
    S = "S"
    M = "M"
    IW = "IW"
    W = "W"
    C = "C"
    # logical
    T_L = "t,l"
    T_R = "t,r"
    NEG_L = "-,l"
    NEG_R = "-,r"
    IMP_L = "->,l"
    IMP_R = "->,r"
    PLUS_L = "+,l"
    PLUS_R = "+,r"
    AND_L = "/\\,l"
    AND_R = "/\\,r"
    OR_L = "\\/,l"
    OR_R = "\\/,r"
    POS_L = "=>,l"
    POS_R = "=>,r"
    # focused calculi
    SHIFT = "shift"
    S_PRIME = "S'"
    BOT_R = "bot,r"
    # leaves certified outside the rule schemas
    CLOSURE = "closure"
    SUCCESS = "success"


AXIOMS = frozenset({RuleId.ID, RuleId.LAMBDA, RuleId.BOT})

# Reserved variable names; user input may not use the "$" namespace.
QBOT = "$qbot"
MBOT = "$mbot"
SLACK_PREFIX = "$lam_"
RESERVED_PREFIX = "$"

DEFAULT_TIMEOUT_MS = 30_000
DEFAULT_MAX_STEPS = 200_000
DEFAULT_MAX_CONSTRAINTS = 20_000
DEFAULT_CERTIFICATE_MAX_LABELS = 12

# Exit codes of the command-line front end
EXIT_VALID = 0
EXIT_INVALID = 1
EXIT_ERROR = 2
