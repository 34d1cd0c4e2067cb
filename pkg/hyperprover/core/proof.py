"""
Proof trees, verdicts and checker results.

Proof trees serialize to JSON as::

    {"rule": "S", "conclusion": "A |- B | B |- A", "premises": [...],
     "certificate": {...}, "params": {...}}

``certificate`` and ``params`` are omitted when empty. Conclusions are written
in concrete syntax and parsed back according to the calculus.
"""
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

from hyperprover.core.constants import CalculusId, RuleId
from hyperprover.core.errors import FormulaSyntaxError, ProofFormatError
from hyperprover.core.semantics import Valuation
from hyperprover.core.structures import (
    FocusedHypersequent,
    Hypersequent,
    LabelledSequent,
    Sequent,
    render_label,
)
from hyperprover.core.syntax import (
    Formula,
    parse_focused,
    parse_formula,
    parse_hypersequent,
    parse_labelled,
    parse_sequent,
)

logger = logging.getLogger(__name__)

Conclusion = Union[Hypersequent, FocusedHypersequent, LabelledSequent, Sequent]

_HYPER = {CalculusId.GA, CalculusId.GL}
_FOCUSED = {CalculusId.GA_T, CalculusId.GL_T}
_LABELLED = {CalculusId.GA_L, CalculusId.GL_L, CalculusId.GA_I}


def jsonable(value: Any) -> Any:
    """Convert proof parameters to JSON values"""
    if isinstance(value, Formula):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, frozenset):
        return render_label(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


def parse_conclusion(text: str, calculus: CalculusId) -> Conclusion:
    dialect = calculus.dialect
    if calculus in _HYPER:
        return parse_hypersequent(text, dialect, allow_reserved=True)
    if calculus in _FOCUSED:
        return parse_focused(text, dialect, allow_reserved=True)
    if calculus in _LABELLED:
        return parse_labelled(text, dialect, allow_reserved=True)
    return parse_sequent(text, dialect, allow_reserved=True)


def param_formula(value: Union[str, Formula], calculus: CalculusId) -> Formula:
    """Principal formulas may be held as Formula or as concrete syntax"""
    if isinstance(value, Formula):
        return value
    return parse_formula(str(value), calculus.dialect, allow_reserved=True)


@dataclass
class ProofTree:
    """One rule application and the derivations of its premises"""

    rule: RuleId
    conclusion: Conclusion
    premises: List["ProofTree"] = field(default_factory=list)
    certificate: Optional[Dict[str, Any]] = None
    params: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "rule": self.rule.value,
            "conclusion": self.conclusion.render(),
            "premises": [p.to_dict() for p in self.premises],
        }
        if self.certificate:
            data["certificate"] = jsonable(self.certificate)
        if self.params:
            data["params"] = jsonable(self.params)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any], calculus: Union[CalculusId, str]) -> "ProofTree":
        """
        Rebuild a proof tree

        Raises:
            ProofFormatError: Missing keys, unknown rules or unparsable conclusions
        """
        calculus = CalculusId(calculus)
        if not isinstance(data, dict):
            raise ProofFormatError("Proof node must be a JSON object")
        try:
            rule = RuleId(data["rule"])
            text = data["conclusion"]
            premises = data.get("premises", [])
        except KeyError as exc:
            raise ProofFormatError(f"Proof node misses key {exc}") from exc
        except ValueError as exc:
            raise ProofFormatError(f"Unknown rule {data.get('rule')!r}") from exc
        if not isinstance(premises, list):
            raise ProofFormatError("premises must be a list")
        try:
            conclusion = parse_conclusion(str(text), calculus)
        except (FormulaSyntaxError, ValueError) as exc:
            raise ProofFormatError(f"Bad conclusion {text!r}: {exc}") from exc
        return cls(
            rule=rule,
            conclusion=conclusion,
            premises=[cls.from_dict(p, calculus) for p in premises],
            certificate=data.get("certificate"),
            params=dict(data.get("params") or {}),
        )

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=True)

    @classmethod
    def from_json(cls, text: str, calculus: Union[CalculusId, str]) -> "ProofTree":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ProofFormatError(f"Proof file is not JSON: {exc}") from exc
        return cls.from_dict(data, calculus)

    def walk(self, path: Tuple[int, ...] = ()) -> Iterator[Tuple[Tuple[int, ...], "ProofTree"]]:
        """Pre-order nodes with their premise-index paths"""
        yield path, self
        for i, premise in enumerate(self.premises):
            yield from premise.walk(path + (i,))

    def size(self) -> int:
        return sum(1 for _ in self.walk())

    def depth(self) -> int:
        return 1 + max((p.depth() for p in self.premises), default=0)

    def leaves(self) -> List["ProofTree"]:
        return [node for _, node in self.walk() if not node.premises]

    def rules_used(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for _, node in self.walk():
            counts[node.rule.value] = counts.get(node.rule.value, 0) + 1
        return counts

    def render_tree(self, indent: str = "") -> str:
        """Indented text, conclusion first, premises below"""
        lines = [f"{indent}{self.conclusion.render()}   ({self.rule.value})"]
        for premise in self.premises:
            lines.append(premise.render_tree(indent + "  "))
        return "\n".join(lines)


@dataclass
class Verdict:
    """Valid with a proof or certificate, or Invalid with a countermodel"""

    valid: bool
    proof: Optional[ProofTree] = None
    countermodel: Optional[Valuation] = None
    certificate: Optional[Dict[str, Any]] = None
    stats: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.valid

    @classmethod
    def proved(
        cls,
        proof: Optional[ProofTree] = None,
        certificate: Optional[Dict[str, Any]] = None,
        **stats: Any,
    ) -> "Verdict":
        return cls(True, proof=proof, certificate=certificate, stats=dict(stats))

    @classmethod
    def refuted(cls, countermodel: Valuation, **stats: Any) -> "Verdict":
        return cls(False, countermodel=countermodel, stats=dict(stats))

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"verdict": "valid" if self.valid else "invalid"}
        if self.proof is not None:
            data["proof"] = self.proof.to_dict()
        if self.certificate:
            data["certificate"] = jsonable(self.certificate)
        if self.countermodel is not None:
            data["countermodel"] = self.countermodel.to_dict()
        if self.stats:
            data["stats"] = jsonable(self.stats)
        return data


@dataclass
class CheckResult:
    """Outcome of a proof check; ``path`` locates the first rejected node"""

    valid: bool
    path: Tuple[int, ...] = ()
    message: Optional[str] = None

    def __bool__(self) -> bool:
        return self.valid

    @classmethod
    def ok(cls) -> "CheckResult":
        return cls(True)

    @classmethod
    def fail(cls, path: Tuple[int, ...], message: str) -> "CheckResult":
        return cls(False, path, message)

    def render_path(self) -> str:
        return "root" + "".join(f".{i}" for i in self.path)
