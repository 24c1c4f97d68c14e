"""On-disk cache for computed subspaces.

Entries are JSON files keyed by a content hash of (format version, spec,
object id). Field elements serialize canonically: residues as decimal
integers, rationals as "num/den" in lowest terms. Corrupt or
wrong-version entries behave as misses.
"""

from __future__ import annotations

import hashlib
import json
import sys
from pathlib import Path
from typing import Optional

from .linalg import Subspace
from .words import AlgebraSpec

CACHE_FORMAT_VERSION = "nilpow-cache-1"


def spec_key(spec: AlgebraSpec) -> dict:
    return {
        "m": spec.m,
        "nil": list(spec.nil),
        "field": str(spec.field),
        "max_degree": spec.max_degree,
    }


def cache_key(spec: AlgebraSpec, object_id: str) -> str:
    payload = json.dumps(
        {"version": CACHE_FORMAT_VERSION, "spec": spec_key(spec), "object": object_id},
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def subspace_to_payload(s: Subspace) -> dict:
    f = s.spec.field
    rows = {}
    for d, r in s.dims():
        if r:
            rows[str(d)] = [
                [[o, f.format_coeff(c)] for o, c in row]
                for row in s.block(d).sparse_rows()
            ]
    return {"version": CACHE_FORMAT_VERSION, "rows": rows}


def subspace_from_payload(spec: AlgebraSpec, payload: dict) -> Subspace:
    s = Subspace(spec)
    f = spec.field
    for d_str, rows in payload["rows"].items():
        d = int(d_str)
        for row in rows:
            blk = s.block(d)
            v = s.arith.zeros(blk.dim)
            for o, c in row:
                v[int(o)] = f.parse_coeff(c)
            blk.insert(v)
    return s


def cache_put(cache_dir: str | Path, key: str, payload: dict) -> None:
    d = Path(cache_dir)
    d.mkdir(parents=True, exist_ok=True)
    tmp = d / f"{key}.tmp"
    tmp.write_text(json.dumps(payload, sort_keys=True))
    tmp.replace(d / f"{key}.json")


def cache_get(cache_dir: str | Path, key: str) -> Optional[dict]:
    path = Path(cache_dir) / f"{key}.json"
    if not path.exists():
        return None
    try:
        payload = json.loads(path.read_text())
    except (json.JSONDecodeError, OSError):
        print(f"warning: ignoring corrupt cache entry {path}", file=sys.stderr)
        return None
    if not isinstance(payload, dict) or payload.get("version") != CACHE_FORMAT_VERSION:
        return None
    return payload
