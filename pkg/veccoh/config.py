"""
Runtime settings read from the environment.

VECCOH_THREADS   upper bound on worker threads for rank computations
VECCOH_DUMP_DIR  default directory for matrix dumps
"""

import os
from typing import Mapping, Optional

from .types import RuntimeConfig, SpecError

DEFAULT_MAX_THREADS = 4


def default_threads() -> int:
    return max(1, min(DEFAULT_MAX_THREADS, os.cpu_count() or 1))


def load_runtime_config(environ: Optional[Mapping[str, str]] = None) -> RuntimeConfig:
    """
    Read the runtime configuration.

    Args:
        environ: Mapping to read from; ``os.environ`` when omitted

    Returns:
        RuntimeConfig dict

    Raises:
        SpecError: If VECCOH_THREADS is not a positive integer
    """
    env = os.environ if environ is None else environ
    raw = env.get("VECCOH_THREADS", "").strip()
    if raw:
        try:
            threads = int(raw)
        except ValueError:
            raise SpecError(f"VECCOH_THREADS must be a positive integer, got {raw!r}") from None
        if threads < 1:
            raise SpecError(f"VECCOH_THREADS must be a positive integer, got {raw!r}")
    else:
        threads = default_threads()
    dump_dir = env.get("VECCOH_DUMP_DIR") or None
    return {"threads": threads, "dump_dir": dump_dir}
