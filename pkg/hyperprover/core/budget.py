"""
Search budgets: a wall-clock deadline and a cap on rule applications.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Optional

from hyperprover.core.constants import DEFAULT_MAX_STEPS, DEFAULT_TIMEOUT_MS
from hyperprover.core.errors import SearchTimeout

logger = logging.getLogger(__name__)


@dataclass
class SearchBudget:
    """Ticked once per rule application; raises SearchTimeout when exhausted"""

    timeout_ms: Optional[int] = DEFAULT_TIMEOUT_MS
    max_steps: Optional[int] = DEFAULT_MAX_STEPS
    steps: int = 0
    _started: Optional[float] = field(default=None, repr=False)

    @classmethod
    def from_config(cls, config, timeout_ms: Optional[int] = None) -> "SearchBudget":
        return cls(
            timeout_ms=timeout_ms if timeout_ms is not None else config.timeout_ms,
            max_steps=config.max_steps,
        )

    @classmethod
    def unlimited(cls) -> "SearchBudget":
        return cls(timeout_ms=None, max_steps=None)

    def start(self) -> "SearchBudget":
        self._started = time.monotonic()
        self.steps = 0
        return self

    @property
    def elapsed_ms(self) -> int:
        if self._started is None:
            return 0
        return int((time.monotonic() - self._started) * 1000)

    def tick(self, n: int = 1) -> None:
        if self._started is None:
            self.start()
        self.steps += n
        if self.max_steps is not None and self.steps > self.max_steps:
            logger.warning("Step budget of %d exhausted", self.max_steps)
            raise SearchTimeout(self.elapsed_ms, self.steps, reason="step budget")
        if self.timeout_ms is not None and self.elapsed_ms > self.timeout_ms:
            logger.warning("Deadline of %d ms passed", self.timeout_ms)
            raise SearchTimeout(self.elapsed_ms, self.steps)
