"""
Goal corpora and acceptance suites.

Axiom schemas of A, Ł and Ł⁺ with their instances, exhaustive enumeration of
formulas by node count, seeded random formulas, sequents and label-regular
systems, goal files, and the suites run by ``hyperprover corpus``:

- axioms: every axiom instance is proved in every calculus of its logic
- enumerated: all calculi of a logic agree on every enumerated formula
- translations: star and material translations agree with GŁ
- reductions: label-regular reduction agrees with brute force, size 2n+m
- elaboration: GA_i proofs of random valid sequents elaborate into checked GA_s proofs
- goals: every calculus of the logic agrees with a goal file and its annotations
"""
import logging
import random
import time
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from hyperprover.core.budget import SearchBudget
from hyperprover.core.config import Config
from hyperprover.core.constants import CalculusId, Dialect, Logic, Model
from hyperprover.core.engine import Engine, as_logic, parse_goal
from hyperprover.core.errors import SearchTimeout
from hyperprover.core.events import TraceEmitter
from hyperprover.core.hyper_calculi import check_proof, countermodel_model, prove_ga, prove_gl
from hyperprover.core.labelled import (
    LabelledInequation,
    brute_force_consistent,
    reduce_label_regular,
)
from hyperprover.core.lp import feasible
from hyperprover.core.proof import Verdict
from hyperprover.core.semantics import eval_l, goal_holds, sample_valuation
from hyperprover.core.single_sequent import check_gas_proof
from hyperprover.core.structures import (
    UNIT,
    Hypersequent,
    Label,
    LabelledFormula,
    LabelTree,
    Sequent,
)
from hyperprover.core.syntax import (
    BOT,
    TOP,
    Formula,
    arrow,
    conj,
    disj,
    neg,
    parse_formula,
    plus,
    pos_arrow,
    var,
)
from hyperprover.core.terminating import prove_ga_t, prove_gl_t
from hyperprover.core.translate import enthymematic, material, material_form, star, transfer_countermodel

logger = logging.getLogger(__name__)

SUITES = ("axioms", "enumerated", "translations", "reductions", "elaboration")

A_CALCULI = (CalculusId.GA, CalculusId.GA_T, CalculusId.GA_L, CalculusId.GA_I)
L_CALCULI = (CalculusId.GL, CalculusId.GL_T, CalculusId.GL_L)

# Schemas use the metavariables A, B, C, D.
A_AXIOMS: Dict[str, str] = {
    "A1": "((A \\/ B) -> C) <-> ((A -> C) /\\ (B -> C))",
    "A2": "((A + B) -> C) <-> (A -> (B -> C))",
    "A3": "(A -> B) -> ((B -> C) -> (A -> C))",
    "A4": "((A -> B) /\\ (A -> C)) -> (A -> (B /\\ C))",
    "A5": "(A /\\ (B \\/ C)) -> ((A /\\ B) \\/ (A /\\ C))",
    "A6": "A <-> (t -> A)",
    "A7": "(A /\\ B) -> A",
    "A8": "(A /\\ B) -> B",
    "A9": "A -> ((A -> B) -> B)",
    "A10": "((A -> B) -> B) -> A",
}

L_AXIOMS: Dict[str, str] = {
    "Ł1": "A .> (B .> A)",
    "Ł2": "(A .> B) .> ((B .> C) .> (A .> C))",
    "Ł3": "((A .> B) .> B) .> ((B .> A) .> A)",
    "Ł4": "((A .> bot) .> (B .> bot)) .> (B .> A)",
}

L_PLUS_AXIOMS: Dict[str, str] = {
    "Ł⁺1": "(D =>> B) =>> ((D =>> C) =>> (D =>> (B /\\ C)))",
    "Ł⁺2": "B =>> (C =>> B)",
    "Ł⁺3": "(B =>> C) =>> ((C =>> D) =>> (B =>> D))",
    "Ł⁺4": "((B =>> C) =>> C) =>> (B \\/ C)",
    "Ł⁺5": "(B \\/ C) =>> (C \\/ B)",
    "Ł⁺6": "(B =>> C) \\/ (C =>> B)",
    "Ł⁺7": "(B /\\ C) =>> B",
    "Ł⁺8": "(B /\\ C) =>> C",
    "Ł⁺9": "t",
}

_METAVARS = ("A", "B", "C", "D")

# Substitutions applied to every schema: plain variables, then compound formulas.
A_SUBSTITUTIONS: List[Dict[str, str]] = [
    {"A": "p", "B": "q", "C": "r", "D": "s"},
    {"A": "p + q", "B": "-p", "C": "q /\\ t", "D": "s"},
]
L_SUBSTITUTIONS: List[Dict[str, str]] = [
    {"A": "p", "B": "q", "C": "r", "D": "s"},
    {"A": "p => q", "B": "bot", "C": "p /\\ q", "D": "s"},
]
L_PLUS_SUBSTITUTIONS: List[Dict[str, str]] = [
    {"A": "p", "B": "q", "C": "r", "D": "s"},
    {"A": "p", "B": "p /\\ q", "C": "q \\/ r", "D": "p =>> r"},
]


@dataclass(frozen=True)
class AxiomInstance:
    name: str
    logic: Logic
    formula: Formula


def instantiate(schema: str, mapping: Dict[str, str], dialect: Dialect) -> Formula:
    """Parse a schema and replace its metavariables by parsed formulas"""
    subst = {meta: parse_formula(text, dialect) for meta, text in mapping.items() if meta in _METAVARS}
    return parse_formula(schema, dialect).substitute(subst)


def axiom_instances() -> List[AxiomInstance]:
    """Instances of A1–A10, Ł1–Ł4 and Ł⁺1–Ł⁺9"""
    out: List[AxiomInstance] = []
    groups = [
        (A_AXIOMS, A_SUBSTITUTIONS, Dialect.ABELIAN, Logic.A),
        (L_AXIOMS, L_SUBSTITUTIONS, Dialect.LUKASIEWICZ, Logic.L),
        (L_PLUS_AXIOMS, L_PLUS_SUBSTITUTIONS, Dialect.LUKASIEWICZ, Logic.L),
    ]
    for schemas, substitutions, dialect, logic in groups:
        for name, schema in schemas.items():
            seen = set()
            for k, mapping in enumerate(substitutions):
                f = instantiate(schema, mapping, dialect)
                if f in seen:
                    continue
                seen.add(f)
                out.append(AxiomInstance(f"{name}/{k}", logic, f))
    return out


# ---------------------------------------------------------------------------
# Enumeration and random generation
# ---------------------------------------------------------------------------

A_ATOMS = (var("p"), var("q"), TOP)
L_ATOMS = (var("p"), var("q"), BOT)
A_UNARY: Tuple[Callable[[Formula], Formula], ...] = (neg,)
A_BINARY: Tuple[Callable[[Formula, Formula], Formula], ...] = (arrow, plus, conj, disj)
L_BINARY: Tuple[Callable[[Formula, Formula], Formula], ...] = (pos_arrow, conj, disj)


def _signature(logic: Logic):
    if logic is Logic.A:
        return A_ATOMS, A_UNARY, A_BINARY
    return L_ATOMS, (), L_BINARY


def enumerate_formulas(logic: Logic, max_nodes: int) -> Iterator[Formula]:
    """
    Every formula with at most ``max_nodes`` AST nodes, smallest first.

    A formulas range over p, q, t, ¬, →, +, ∧, ∨; Ł formulas over p, q, ⊥,
    ⇒, ∧, ∨.
    """
    atoms, unary, binary = _signature(logic)
    by_size: Dict[int, List[Formula]] = {}
    for n in range(1, max_nodes + 1):
        level: List[Formula] = list(atoms) if n == 1 else []
        if n >= 2:
            for op in unary:
                level.extend(op(f) for f in by_size[n - 1])
        for k in range(1, n - 1):
            for op in binary:
                for a in by_size[k]:
                    for b in by_size[n - 1 - k]:
                        level.append(op(a, b))
        by_size[n] = level
        yield from level


def random_formula(
    rng: random.Random, logic: Logic, depth: int, variables: Sequence[str] = ("p", "q", "r")
) -> Formula:
    """Random formula of depth at most ``depth``"""
    atoms, unary, binary = _signature(logic)
    leaves = [var(name) for name in variables] + [a for a in atoms if a.is_atomic and not a.is_var]
    if depth <= 0 or rng.random() < 0.25:
        return rng.choice(leaves)
    if unary and rng.random() < 0.2:
        return rng.choice(unary)(random_formula(rng, logic, depth - 1, variables))
    op = rng.choice(binary)
    return op(
        random_formula(rng, logic, depth - 1, variables),
        random_formula(rng, logic, depth - 1, variables),
    )


def random_sequent(
    rng: random.Random, logic: Logic, depth: int, max_side: int = 2
) -> Sequent:
    left = [random_formula(rng, logic, depth) for _ in range(rng.randint(0, max_side))]
    right = [random_formula(rng, logic, depth) for _ in range(rng.randint(0, max_side))]
    return Sequent.of(left, right)


def random_label_regular_system(
    rng: random.Random,
    max_labels: int = 8,
    max_inequations: int = 3,
    variables: Sequence[str] = ("p", "q", "r"),
) -> Tuple[List[LabelledInequation], LabelTree]:
    """
    Random label-regular system and its label tree.

    Each atomic label is owned by one inequation, and every label in an
    inequation is a root-to-node path through atoms it owns.
    """
    m = rng.randint(1, max_inequations)
    n = rng.randint(0, max_labels)
    tree = LabelTree()
    owned: Dict[int, List[str]] = {i: [] for i in range(m)}
    for k in range(1, n + 1):
        atom = f"x{k}"
        owner = rng.randrange(m)
        parent = rng.choice([None] + owned[owner])
        tree = tree.extend(atom, parent)
        owned[owner].append(atom)
    system: List[LabelledInequation] = []
    for i in range(m):
        paths: List[Label] = [UNIT] + [tree.path(atom) for atom in owned[i]]

        def side(count: int) -> List[LabelledFormula]:
            return [
                LabelledFormula(rng.choice(paths), var(rng.choice(list(variables))))
                for _ in range(count)
            ]

        left = side(rng.randint(0, 3))
        right = side(rng.randint(0, 3))
        # every owned atom must occur, otherwise the tree names unused labels
        for atom in owned[i]:
            target = left if rng.random() < 0.5 else right
            target.append(LabelledFormula(tree.path(atom), var(rng.choice(list(variables)))))
        system.append(LabelledInequation.of(left, right, strict=rng.random() < 0.5))
    return system, tree


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


@dataclass
class SuiteResult:
    """Pass/fail tally of one acceptance suite"""

    name: str
    passed: int = 0
    failed: int = 0
    failures: List[str] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def total(self) -> int:
        return self.passed + self.failed

    def record(self, success: bool, label: str) -> None:
        if success:
            self.passed += 1
            return
        self.failed += 1
        self.failures.append(label)
        logger.warning("Suite %s failed on %s", self.name, label)

    def record_error(self, label: str, exc: Exception) -> None:
        """Fail one goal on an unexpected exception; call from the except block"""
        self.failed += 1
        self.failures.append(f"{label}: {exc!r}")
        logger.exception("Suite %s raised on %s", self.name, label)

    def to_dict(self) -> Dict[str, object]:
        return {
            "suite": self.name,
            "passed": self.passed,
            "failed": self.failed,
            "failures": list(self.failures),
            "elapsed_ms": self.elapsed_ms,
        }


@dataclass(frozen=True)
class GoalEntry:
    """One line of a goal file"""

    text: str
    expected: Optional[bool]
    line: int


def load_goal_file(path: Union[str, Path]) -> List[GoalEntry]:
    """
    Read a goal file: one goal per line, optionally followed by ``#valid`` or
    ``#invalid``. Blank lines and lines starting with ``#`` are skipped.

    Raises:
        ValueError: A line carries an annotation other than valid/invalid
    """
    entries: List[GoalEntry] = []
    for number, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        text, _, note = stripped.partition("#")
        note = note.strip().lower()
        if note not in ("", "valid", "invalid"):
            raise ValueError(f"{path}:{number}: unknown annotation #{note}")
        expected = None if not note else note == "valid"
        entries.append(GoalEntry(text.strip(), expected, number))
    return entries


def _goal(f: Formula, calculus: CalculusId):
    seq = Sequent.of([], [f])
    if calculus in (CalculusId.GA_L, CalculusId.GL_L, CalculusId.GA_I):
        return seq
    return Hypersequent((seq,))


def sound_on_samples(goal, model: Model, samples: int, seed: int, config: Config) -> bool:
    """No sampled valuation refutes a goal proved valid"""
    rng = random.Random(seed)
    names = goal.variables()
    for _ in range(samples):
        v = sample_valuation(names, model, rng, config.numerator_range, config.denominators)
        if not goal_holds(goal, v):
            return False
    return True


def _checked(verdict: Verdict, calculus: CalculusId) -> bool:
    """Returned proofs pass their checker; closures and successes are re-verified there"""
    if verdict.proof is None:
        return True
    if calculus is CalculusId.GA_I:
        return bool(check_gas_proof(verdict.proof))
    return bool(check_proof(verdict.proof, calculus))


class SuiteRunner:
    """Runs the acceptance suites with one engine and configuration"""

    def __init__(self, config: Optional[Config] = None, engine: Optional[Engine] = None):
        self.config = config or Config.default()
        self.engine = engine or Engine(self.config)

    def run(self, suite: str, **kwargs) -> SuiteResult:
        runners = {
            "axioms": self.axioms,
            "enumerated": self.enumerated,
            "translations": self.translations,
            "reductions": self.reductions,
            "elaboration": self.elaboration,
            "goals": self.goals,
        }
        if suite not in runners:
            raise ValueError(f"Unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
        started = time.monotonic()
        result = runners[suite](**kwargs)
        result.elapsed_ms = int((time.monotonic() - started) * 1000)
        logger.info("suite_finished", extra={"search_event": result.to_dict()})
        return result

    @staticmethod
    def _guarded(result: SuiteResult, label: str, check: Callable[[], bool]) -> None:
        """Record ``check()``; an exception fails this goal only"""
        try:
            ok = check()
        except Exception as exc:
            result.record_error(label, exc)
            return
        result.record(ok, label)

    def _decide(self, goal, calculus: CalculusId) -> Optional[Verdict]:
        try:
            return self.engine.decide(goal, calculus)
        except SearchTimeout as exc:
            logger.warning("%s timed out on %s: %s", calculus.value, goal, exc.reason)
            return None

    def _proved(self, f: Formula, calculus: CalculusId) -> bool:
        verdict = self._decide(_goal(f, calculus), calculus)
        return verdict is not None and verdict.valid and _checked(verdict, calculus)

    def axioms(self, samples: Optional[int] = None) -> SuiteResult:
        samples = self.config.soundness_samples if samples is None else samples
        result = SuiteResult("axioms")
        for inst in axiom_instances():
            calculi = A_CALCULI if inst.logic is Logic.A else L_CALCULI
            for calculus in calculi:
                label = f"{inst.name} in {calculus.value}: {inst.formula}"
                self._guarded(result, label, partial(self._proved, inst.formula, calculus))
            if inst.name.startswith("Ł⁺"):
                translated = enthymematic(inst.formula)
                label = f"{inst.name} enthymematic in ga: {translated}"
                self._guarded(result, label, partial(self._proved, translated, CalculusId.GA))
            goal = Sequent.of([], [inst.formula])
            model = countermodel_model(calculi[0])
            result.record(
                sound_on_samples(goal, model, samples, self.config.seed, self.config),
                f"{inst.name} sampled soundness",
            )
        return result

    def _calculi_agree(self, f: Formula, calculi: Sequence[CalculusId], samples: int) -> bool:
        verdicts = [self._decide(_goal(f, calculus), calculus) for calculus in calculi]
        if any(v is None for v in verdicts):
            return False
        answers = {v.valid for v in verdicts}
        agree = len(answers) == 1 and all(_checked(v, c) for v, c in zip(verdicts, calculi))
        if agree and verdicts[0].valid and samples:
            agree = sound_on_samples(
                Sequent.of([], [f]), countermodel_model(calculi[0]), samples, self.config.seed, self.config
            )
        return agree

    def enumerated(self, max_nodes: Optional[int] = None, samples: Optional[int] = None) -> SuiteResult:
        max_nodes = self.config.max_nodes if max_nodes is None else max_nodes
        samples = self.config.soundness_samples if samples is None else samples
        result = SuiteResult("enumerated")
        for logic, calculi in ((Logic.A, A_CALCULI), (Logic.L, L_CALCULI)):
            for f in enumerate_formulas(logic, max_nodes):
                self._guarded(result, f"{logic.value}: {f}", partial(self._calculi_agree, f, calculi, samples))
        return result

    def _translation_agrees(self, f: Formula) -> bool:
        limit = self.config.max_constraints
        goal = Sequent.of([], [f])
        try:
            reference = prove_gl(goal, budget=SearchBudget.from_config(self.config), max_constraints=limit)
            starred = prove_ga(
                Sequent.of([], [star(f)]), budget=SearchBudget.from_config(self.config), max_constraints=limit
            )
            mat = prove_ga(
                Sequent.of([], [material(material_form(f))]),
                budget=SearchBudget.from_config(self.config),
                max_constraints=limit,
            )
        except SearchTimeout as exc:
            logger.warning("Translation check timed out on %s: %s", f, exc.reason)
            return False
        if not reference.valid == starred.valid == mat.valid:
            return False
        if starred.valid:
            return True
        v = transfer_countermodel(starred.countermodel, goal)
        return eval_l(f, v) < 0

    def translations(self, max_nodes: Optional[int] = None) -> SuiteResult:
        max_nodes = self.config.max_nodes if max_nodes is None else max_nodes
        result = SuiteResult("translations")
        for f in enumerate_formulas(Logic.L, max_nodes):
            self._guarded(result, str(f), partial(self._translation_agrees, f))
        return result

    def reductions(self, systems: Optional[int] = None, max_labels: int = 8, max_inequations: int = 3) -> SuiteResult:
        systems = int(self.config.get("corpus.reduction_systems", 200)) if systems is None else systems
        result = SuiteResult("reductions")
        rng = random.Random(self.config.seed)
        for k in range(systems):
            ineqs, tree = random_label_regular_system(rng, max_labels, max_inequations)
            lukasiewicz = rng.random() < 0.5
            n = len(tree.nodes)
            reduced = reduce_label_regular(ineqs, tree, lukasiewicz)
            same = feasible(reduced, self.config.max_constraints).feasible == brute_force_consistent(
                ineqs, lukasiewicz, self.config.max_constraints
            )
            sized = len(reduced) == 2 * n + len(ineqs)
            result.record(same and sized, f"system {k} (n={n}, m={len(ineqs)})")
        return result

    def _elaborates(self, seq: Sequent) -> bool:
        verdict = self._decide(seq, CalculusId.GA_I)
        return verdict is not None and verdict.valid and _checked(verdict, CalculusId.GA_I)

    def elaboration(self, goals: Optional[int] = None, depth: int = 4) -> SuiteResult:
        goals = int(self.config.get("corpus.elaboration_goals", 100)) if goals is None else goals
        result = SuiteResult("elaboration")
        rng = random.Random(self.config.seed)
        found = 0
        attempts = 0
        while found < goals and attempts < goals * 50:
            attempts += 1
            seq = random_sequent(rng, Logic.A, rng.randint(1, depth))
            try:
                valid = prove_ga(
                    seq, budget=SearchBudget.from_config(self.config), max_constraints=self.config.max_constraints
                ).valid
            except SearchTimeout:
                continue
            if not valid:
                continue
            found += 1
            self._guarded(result, str(seq), partial(self._elaborates, seq))
        return result

    def _goal_agrees(self, entry: GoalEntry, logic: Logic, calculi: Sequence[CalculusId]) -> bool:
        verdicts = []
        for calculus in calculi:
            try:
                goal = parse_goal(entry.text, logic, calculus)
            except ValueError:
                logger.debug("%s does not take %s", calculus.value, entry.text)
                continue
            verdicts.append((calculus, self._decide(goal, calculus)))
        if not verdicts or any(v is None for _, v in verdicts):
            return False
        answers = {v.valid for _, v in verdicts}
        ok = len(answers) == 1 and all(_checked(v, c) for c, v in verdicts)
        if ok and entry.expected is not None:
            ok = answers == {entry.expected}
        return ok

    def goals(self, path: Union[str, Path], logic: Union[Logic, str] = Logic.A) -> SuiteResult:
        """Decide every goal of a goal file in each calculus that accepts it"""
        logic = as_logic(logic)
        calculi = A_CALCULI if logic is Logic.A else L_CALCULI
        result = SuiteResult("goals")
        for entry in load_goal_file(path):
            label = f"line {entry.line}: {entry.text}"
            self._guarded(result, label, partial(self._goal_agrees, entry, logic, calculi))
        return result


@dataclass
class BenchResult:
    """Rule-application statistics of focused searches"""

    searches: int = 0
    valid: int = 0
    steps: int = 0
    violations: int = 0
    timeouts: int = 0
    errors: int = 0
    rule_counts: Dict[str, int] = field(default_factory=dict)
    max_depth: int = 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "searches": self.searches,
            "valid": self.valid,
            "steps": self.steps,
            "violations": self.violations,
            "timeouts": self.timeouts,
            "errors": self.errors,
            "max_depth": self.max_depth,
            "rule_counts": dict(sorted(self.rule_counts.items())),
        }


def run_bench(
    searches: int = 500,
    depth: int = 3,
    seed: int = 0,
    config: Optional[Config] = None,
    emitter: Optional[TraceEmitter] = None,
) -> BenchResult:
    """
    Run seeded random GA_t and GŁ_t searches with measure tracing.

    A search that raises RuntimeError broke the strict measure descent the
    provers assert on every edge and is counted as a violation.
    Any other exception is counted as an error.
    """
    config = config or Config.default()
    emitter = emitter or TraceEmitter(persist=False)
    rng = random.Random(seed)
    out = BenchResult()
    for k in range(searches):
        logic = Logic.A if k % 2 == 0 else Logic.L
        prover = prove_ga_t if logic is Logic.A else prove_gl_t
        seq = random_sequent(rng, logic, depth)
        emitter.clear()
        try:
            verdict = prover(
                Hypersequent((seq,)),
                budget=SearchBudget.from_config(config),
                emitter=emitter,
                order_seed=rng.randrange(1 << 30),
                max_constraints=config.max_constraints,
            )
        except SearchTimeout:
            out.timeouts += 1
            continue
        except RuntimeError as exc:
            logger.error("Measure violation on %s: %s", seq, exc)
            out.violations += 1
            continue
        except Exception:
            logger.exception("Search raised on %s", seq)
            out.errors += 1
            continue
        finally:
            out.searches += 1
        out.valid += int(verdict.valid)
        out.steps += len(emitter.events)
        for rule, n in emitter.rule_counts().items():
            out.rule_counts[rule] = out.rule_counts.get(rule, 0) + n
        out.max_depth = max([out.max_depth] + [event.depth for event in emitter.events])
    return out
