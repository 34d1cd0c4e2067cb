"""
Markdown reports for prover verdicts.
"""
from dataclasses import dataclass, field
from datetime import datetime
import hashlib
import logging
import re
from pathlib import Path
from typing import Any, Dict, Optional

from hyperprover.core.proof import Verdict
from hyperprover.core.runtime_paths import resolve_runtime_dir

logger = logging.getLogger(__name__)

MAX_OUTLINE_LINES = 60


def slugify(goal: str, calculus: str) -> str:
    """Filesystem-safe report name, unique per goal and calculus"""
    stem = re.sub(r"[^A-Za-z0-9]+", "-", goal).strip("-").lower()[:40] or "goal"
    digest = hashlib.sha1(f"{calculus}:{goal}".encode("utf-8")).hexdigest()[:8]
    return f"{calculus}-{stem}-{digest}"


@dataclass
class ProofReport:
    goal: str
    calculus: str
    verdict: Verdict
    elapsed_ms: Optional[int] = None
    created_at: str = field(default_factory=lambda: datetime.now().isoformat())

    def to_markdown(self) -> str:
        v = self.verdict
        lines = [
            f"# Proof Report: {self.goal}",
            "",
            f"- Calculus: {self.calculus}",
            f"- Verdict: {'VALID' if v.valid else 'INVALID'}",
            f"- Created: {self.created_at}",
        ]
        if self.elapsed_ms is not None:
            lines.append(f"- Elapsed: {self.elapsed_ms} ms")
        lines.append("")

        if v.countermodel is not None:
            lines.append("## Countermodel")
            for name, value in v.countermodel.to_dict().items():
                lines.append(f"- {name} = {value}")
            lines.append("")

        if v.proof is not None:
            outline = v.proof.render_tree().splitlines()
            lines.append(f"## Proof ({v.proof.size()} nodes, depth {v.proof.depth()})")
            lines.append("")
            lines.append("```")
            lines.extend(outline[:MAX_OUTLINE_LINES])
            if len(outline) > MAX_OUTLINE_LINES:
                lines.append(f"... {len(outline) - MAX_OUTLINE_LINES} more lines")
            lines.append("```")
            lines.append("")
            lines.append("## Rules")
            for rule, n in sorted(v.proof.rules_used().items()):
                lines.append(f"- {rule}: {n}")
            lines.append("")

        if v.certificate:
            lines.append("## Certificate")
            lines.append(f"- kind: {v.certificate.get('kind', 'unknown')}")
            lines.append("")

        if v.stats:
            lines.append("## Statistics")
            for key, value in sorted(v.stats.items()):
                lines.append(f"- {key}: {value}")
        return "\n".join(lines).rstrip() + "\n"


class ReportManager:
    """Writes proof reports under <runtime>/reports."""

    def __init__(
        self,
        workspace_root: Optional[Path] = None,
        reports_dir: Optional[Path] = None,
        config: Optional[Dict[str, Any]] = None,
        base_dir: Optional[str] = None,
    ) -> None:
        self.workspace_root = workspace_root or Path.cwd()
        if reports_dir is not None:
            self.reports_dir = reports_dir
        else:
            runtime_dir = resolve_runtime_dir(self.workspace_root, config=config, base_dir=base_dir)
            self.reports_dir = runtime_dir / "reports"

    def save(self, report: ProofReport) -> Path:
        self.reports_dir.mkdir(parents=True, exist_ok=True)
        path = self.reports_dir / f"{slugify(report.goal, report.calculus)}.md"
        path.write_text(report.to_markdown(), encoding="utf-8")
        logger.info("Proof report saved to %s", path)
        return path
