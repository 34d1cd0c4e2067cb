"""
Structured search events.

Provers report rule applications (with the termination measure where one is
tracked) to an optional TraceEmitter, which keeps them in memory and, when
persistence is on, appends them to ``<runtime>/events/search.jsonl``.
"""
from dataclasses import dataclass, field
from datetime import datetime
import json
import logging
import uuid
from pathlib import Path
from typing import Any, Dict, List, Optional

from hyperprover.core.runtime_paths import runtime_subdir

logger = logging.getLogger(__name__)


@dataclass
class SearchEvent:
    """One rule application seen by a prover."""

    event_id: str
    timestamp: str
    calculus: str
    rule: str
    measure: Optional[List[Any]] = None
    depth: int = 0
    metadata: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def create(
        cls,
        calculus: str,
        rule: str,
        measure: Optional[List[Any]] = None,
        depth: int = 0,
        metadata: Optional[Dict[str, Any]] = None,
    ) -> "SearchEvent":
        return cls(
            event_id=uuid.uuid4().hex,
            timestamp=datetime.now().isoformat(),
            calculus=str(getattr(calculus, "value", calculus)),
            rule=str(getattr(rule, "value", rule)),
            measure=measure,
            depth=depth,
            metadata=metadata or {},
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "event_id": self.event_id,
            "timestamp": self.timestamp,
            "calculus": self.calculus,
            "rule": self.rule,
            "measure": self.measure,
            "depth": self.depth,
            "metadata": self.metadata,
        }


class TraceEmitter:
    """Collects search events; persists them to jsonl when ``persist`` is set."""

    def __init__(
        self,
        workspace_root: Optional[Path] = None,
        config: Optional[Any] = None,
        base_dir: Optional[str] = None,
        persist: bool = True,
    ):
        self.workspace_root = workspace_root or Path.cwd()
        self.persist = persist
        self.events: List[SearchEvent] = []
        self.trace_file: Optional[Path] = None
        if persist:
            events_dir = runtime_subdir(self.workspace_root, "events", config=config, base_dir=base_dir)
            self.trace_file = events_dir / "search.jsonl"

    def emit(self, event: SearchEvent) -> None:
        self.events.append(event)
        payload = event.to_dict()
        if self.trace_file is not None:
            with self.trace_file.open("a", encoding="utf-8") as f:
                f.write(json.dumps(payload, ensure_ascii=True) + "\n")
        logger.debug("search_event", extra={"search_event": payload})

    def record(self, calculus: str, rule: str, **kwargs: Any) -> SearchEvent:
        event = SearchEvent.create(calculus, rule, **kwargs)
        self.emit(event)
        return event

    def rule_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for event in self.events:
            counts[event.rule] = counts.get(event.rule, 0) + 1
        return counts

    def clear(self) -> None:
        self.events.clear()
