"""Locations of the prover's runtime artifacts (search traces, reports)."""
from pathlib import Path
from typing import Any, Dict, Optional, Union

DEFAULT_RUNTIME_DIR = ".prover"


def resolve_runtime_dir(
    workspace_root: Path,
    config: Optional[Union[Dict[str, Any], Any]] = None,
    base_dir: Optional[str] = None,
) -> Path:
    """Runtime directory: explicit base_dir, then runtime.base_dir, then .prover.

    ``config`` may be a plain mapping or a Config instance.
    """
    if base_dir:
        return workspace_root / base_dir
    data = getattr(config, "data", config)
    if isinstance(data, dict):
        configured = data.get("runtime", {}).get("base_dir")
        if configured:
            return workspace_root / configured
    return workspace_root / DEFAULT_RUNTIME_DIR


def runtime_subdir(
    workspace_root: Path,
    name: str,
    config: Optional[Union[Dict[str, Any], Any]] = None,
    base_dir: Optional[str] = None,
) -> Path:
    """``<runtime>/<name>``, created on first use."""
    path = resolve_runtime_dir(workspace_root, config=config, base_dir=base_dir) / name
    path.mkdir(parents=True, exist_ok=True)
    return path
