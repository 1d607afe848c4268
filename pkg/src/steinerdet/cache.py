"""On-disk cache for resultant outcomes, keyed by canonical tree code.

The directory comes from the STEINER_CACHE environment variable, falling
back to ./.steiner-cache.  Keys are (canonical code, k, mode,
normalization), so isomorphic trees under any labeling share entries.
One JSON file per entry; writes go through a temp file + rename so a
killed run never leaves a truncated entry behind.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .macaulay import ResultantOutcome, outcome_from_json
from .trees import Tree, canonical_code

ENV_VAR = "STEINER_CACHE"
DEFAULT_DIR = ".steiner-cache"

# process-wide tally, snapshotted by the CLI for run manifests
GLOBAL_STATS = {"cache_hits": 0, "cache_misses": 0}


def cache_dir(override: str | os.PathLike | None = None) -> Path:
    if override is not None:
        return Path(override)
    return Path(os.environ.get(ENV_VAR, DEFAULT_DIR))


def cache_key(t: Tree, k: int, mode: str, normalization: str) -> str:
    code = canonical_code(t).hex()
    h = hashlib.sha256(f"{code}|{k}|{mode}|{normalization}".encode()).hexdigest()[:24]
    return f"k{k}-n{t.v_count}-{mode}-{normalization}-{h}"


def load(
    t: Tree, k: int, mode: str, normalization: str,
    directory: str | os.PathLike | None = None,
) -> ResultantOutcome | None:
    path = cache_dir(directory) / (cache_key(t, k, mode, normalization) + ".json")
    if not path.is_file():
        return None
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    return outcome_from_json(obj["outcome"])


def store(
    t: Tree, k: int, mode: str, normalization: str,
    outcome: ResultantOutcome,
    directory: str | os.PathLike | None = None,
) -> Path:
    d = cache_dir(directory)
    d.mkdir(parents=True, exist_ok=True)
    path = d / (cache_key(t, k, mode, normalization) + ".json")
    payload = {
        "canonical_code": canonical_code(t).hex(),
        "k": k,
        "mode": mode,
        "normalization": normalization,
        "outcome": outcome.to_json(),
    }
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh, indent=1)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def cached_resultant(
    t: Tree, k: int, mode: str,
    seed: int = 0,
    normalization: str = "paper-g",
    directory: str | os.PathLike | None = None,
    refresh: bool = False,
    stats: dict | None = None,
) -> ResultantOutcome:
    """Resultant of the tree's gradient system, cached on disk.

    mode: "exact", "nonzero-witness", or "zero-certificate".
    With normalization "full-Dp" the forms are k * g_r (the literal
    partial derivatives of the Steiner polynomial).
    """
    from .macaulay import (
        resultant_exact,
        resultant_nonzero_witness,
        resultant_zero_certify,
    )
    from .steiner import gradient_system

    if not refresh:
        hit = load(t, k, mode, normalization, directory)
        if hit is not None:
            GLOBAL_STATS["cache_hits"] += 1
            if stats is not None:
                stats["cache_hits"] = stats.get("cache_hits", 0) + 1
            return hit
    GLOBAL_STATS["cache_misses"] += 1
    if stats is not None:
        stats["cache_misses"] = stats.get("cache_misses", 0) + 1
    gs = gradient_system(t, k)
    forms = gs.scaled_by_k() if normalization == "full-Dp" else gs.forms
    if normalization not in ("paper-g", "full-Dp"):
        raise ValueError(f"unknown normalization {normalization!r}")
    if mode == "exact":
        out = resultant_exact(forms, seed=seed, normalization=normalization)
    elif mode == "nonzero-witness":
        out = resultant_nonzero_witness(forms, seed=seed, normalization=normalization)
    elif mode == "zero-certificate":
        out = resultant_zero_certify(forms, seed=seed, normalization=normalization)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    # don't cache inconclusive probes; a rerun with another seed may do better
    if not out.inconclusive:
        store(t, k, mode, normalization, out, directory)
    return out
