"""Loader for the embedded reference data (root index tables, classification
string tables, special-case registry, elementary-orbit rows).

All files are checksummed against MANIFEST.json at load time.  The data
directory can be overridden with the ORBITKIT_DATA environment variable.
"""

from __future__ import annotations

import hashlib
import json
import os
from functools import lru_cache
from importlib import resources
from pathlib import Path


class DataIntegrityError(RuntimeError):
    pass


def data_dir() -> Path:
    env = os.environ.get("ORBITKIT_DATA")
    if env:
        return Path(env)
    return Path(str(resources.files("orbitkit") / "data"))


@lru_cache(maxsize=None)
def _manifest() -> dict:
    with open(data_dir() / "MANIFEST.json") as fh:
        return json.load(fh)


def read_text(rel: str) -> str:
    path = data_dir() / rel
    text = path.read_text()
    want = _manifest().get(rel)
    if want is None:
        raise DataIntegrityError(f"{rel} not listed in MANIFEST.json")
    got = hashlib.sha256(text.encode()).hexdigest()
    if got != want:
        raise DataIntegrityError(f"checksum mismatch for {rel}")
    return text


@lru_cache(maxsize=None)
def root_index_table(family: str, rank: int) -> dict | None:
    """CHEVIE-indexed roots as {index: coefficient tuple}, or None if the
    rank is outside table coverage."""
    rel = f"root_index/{family}{rank}.txt"
    if rel not in _manifest():
        return None
    lines = read_text(rel).splitlines()
    fam, r = lines[0].split()
    assert fam == family and int(r) == rank
    out = {}
    for line in lines[1:]:
        parts = line.split()
        out[int(parts[0])] = tuple(int(c) for c in parts[1:])
    return out


def _parse_strings(text: str, dim: int) -> dict:
    lines = text.splitlines()
    head, d = lines[0].split()
    assert head == "dim" and int(d) == dim
    out: dict = {}
    for line in lines[1:]:
        fam, rank, s = line.split()
        key = (fam, int(rank))
        out.setdefault(key, [])
        if s != "-":
            out[key].append(s)
    return out


@lru_cache(maxsize=None)
def class_string_tables(dim: int) -> dict:
    """Reference classification strings: {(family, rank): [padded strings]}.

    Keys present with an empty list mean the reference explicitly reports no
    extensive orbits of that dimension for the system.
    """
    if dim == 2:
        return _parse_strings(read_text("class_strings/dim2.txt"), 2)
    if dim == 4:
        return _parse_strings(read_text("class_strings/dim4.txt"), 4)
    if dim == 6:
        out: dict = {}
        for rel in sorted(_manifest()):
            if rel.startswith("class_strings/dim6_"):
                out.update(_parse_strings(read_text(rel), 6))
        return out
    raise ValueError(f"no reference tables for dimension {dim}")


@lru_cache(maxsize=None)
def table_errata(dim: int) -> dict:
    """Strata missing from the printed reference tables (each entry is
    independently certified by the brute-force oracle): {(family, rank):
    [strings]}."""
    if dim != 6:
        return {}
    return _parse_strings(read_text("class_strings/dim6_errata.txt"), 6)


@lru_cache(maxsize=None)
def special_cases() -> tuple:
    return tuple(json.loads(read_text("special_cases.json")))


@lru_cache(maxsize=None)
def elementary_tables() -> dict:
    return json.loads(read_text("elementary_tables.json"))
