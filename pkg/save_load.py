"""
On-disk formats.

- LSSD documents (JSON): v, k, lambda, w, blocks keyed "i,j" with 1-based
  fibers i < j, optional metadata. One matrix row per line so files diff well
  and serialise byte-identically.
- Hadamard text: the order on the first line, then one row of '+'/'-' per line.
- Orthogonal array text: "n cols" on the first line, then n^2 rows of
  space-separated symbols 1..n.
- Gram documents (JSON): dim, scale, optional rank and the scaled entries.
- The optional INI settings file read by the CLI.
"""

from __future__ import annotations

import configparser
import json
import logging
from collections.abc import Mapping
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Any, TypeAlias

import numpy as np

from geometry import ScaledGram
from hadamard_oa import HadamardMatrix, OrthogonalArray
from lssd_core import FormatError, IntMatrix, InvalidParametersError, LssdError
from lssd_designs import DesignParams
from lssd_system import LssdGraph, fiber_label

log = logging.getLogger(__name__)

PathLike: TypeAlias = str | Path
Document: TypeAlias = dict[str, Any]


# --- files ---
def _read_text(filename: PathLike) -> str:
    try:
        with open(filename, encoding="utf-8") as fh:
            return fh.read()
    except UnicodeDecodeError as e:
        raise FormatError(f"{filename}: not UTF-8 text at byte {e.start}", "document") from e


def _write_text(filename: PathLike, text: str) -> None:
    with open(filename, "w", encoding="utf-8") as fh:
        _ = fh.write(text)


# --- LSSD documents ---
def lssd_to_document(g: LssdGraph) -> Document:
    doc: Document = {
        "v": g.params.v,
        "k": g.params.k,
        "lambda": g.params.lam,
        "w": g.w,
        "blocks": {fiber_label(i, j): b.tolist() for (i, j), b in g.blocks.items()},
    }
    if g.provenance:
        doc["metadata"] = {"provenance": g.provenance}
    return doc


def _require_int(doc: Mapping[str, Any], name: str) -> int:
    if name not in doc:
        raise FormatError(f"missing field '{name}'", name)
    value = doc[name]
    if not isinstance(value, int) or isinstance(value, bool):
        raise FormatError(f"field '{name}' must be an integer, got {value!r}", name)
    return value


def _parse_block(raw: object, v: int, name: str) -> IntMatrix:
    if not isinstance(raw, list) or len(raw) != v:
        raise FormatError(f"{name} must be a list of {v} rows", name)
    for r, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != v:
            raise FormatError(f"{name} row {r} must hold {v} entries", f"{name}[{r}]")
        for c, x in enumerate(row):
            if x not in (0, 1) or isinstance(x, bool):
                raise FormatError(f"{name}[{r}][{c}] = {x!r} is not 0 or 1", f"{name}[{r}][{c}]")
    return IntMatrix(np.array(raw, dtype=np.int64))


def lssd_from_document(doc: Mapping[str, Any]) -> LssdGraph:
    """Validate and convert a parsed document; errors name the offending field."""
    if not isinstance(doc, Mapping):
        raise FormatError("an LSSD document must be a JSON object", "document")
    v, k, lam, w = (_require_int(doc, name) for name in ("v", "k", "lambda", "w"))
    try:
        params = DesignParams(v, k, lam)
    except InvalidParametersError as e:
        raise FormatError(f"parameters ({v},{k},{lam}) are invalid: {e}", "lambda") from e
    if w < 2:
        raise FormatError(f"w = {w} must be at least 2", "w")
    raw_blocks = doc.get("blocks")
    if not isinstance(raw_blocks, Mapping):
        raise FormatError("missing object 'blocks'", "blocks")
    blocks: dict[tuple[int, int], IntMatrix] = {}
    for i, j in combinations(range(w), 2):
        key = fiber_label(i, j)
        if key not in raw_blocks:
            raise FormatError(f"missing block blocks[{key}]", f"blocks[{key}]")
        blocks[(i, j)] = _parse_block(raw_blocks[key], v, f"blocks[{key}]")
    expected = {fiber_label(i, j) for i, j in blocks}
    if extra := sorted(set(raw_blocks) - expected):
        raise FormatError(f"unexpected block key '{extra[0]}'", f"blocks[{extra[0]}]")
    metadata = doc.get("metadata") or {}
    provenance = metadata.get("provenance", "") if isinstance(metadata, Mapping) else ""
    return LssdGraph(w, params, blocks, str(provenance))


def _matrix_lines(rows: list[list[int]], indent: str) -> str:
    inner = f",\n{indent}  ".join(json.dumps(row, separators=(",", ":")) for row in rows)
    return f"[\n{indent}  {inner}\n{indent}]"


def dumps_lssd(g: LssdGraph) -> str:
    doc = lssd_to_document(g)
    head = ",\n".join(f"  {json.dumps(name)}: {doc[name]}" for name in ("v", "k", "lambda", "w"))
    blocks = ",\n".join(
        f"    {json.dumps(key)}: {_matrix_lines(rows, '    ')}" for key, rows in doc["blocks"].items()
    )
    parts = [head, f'  "blocks": {{\n{blocks}\n  }}']
    if "metadata" in doc:
        parts.append(f'  "metadata": {json.dumps(doc["metadata"], sort_keys=True)}')
    return "{\n" + ",\n".join(parts) + "\n}\n"


def loads_lssd(text: str) -> LssdGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON at line {e.lineno}: {e.msg}", "document") from e
    return lssd_from_document(doc)


def save_lssd(g: LssdGraph, filename: PathLike) -> None:
    _write_text(filename, dumps_lssd(g))
    log.info("saved %r to %s", g, filename)


def load_lssd(filename: PathLike) -> LssdGraph:
    return loads_lssd(_read_text(filename))


# --- Hadamard text ---
def format_hadamard(h: HadamardMatrix) -> str:
    return "\n".join([str(h.order), *h.signs()]) + "\n"


def parse_hadamard(text: str) -> HadamardMatrix:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise FormatError("empty Hadamard file", "order")
    try:
        order = int(lines[0])
    except ValueError as e:
        raise FormatError(f"first line must be the order, got {lines[0]!r}", "order") from e
    rows = lines[1:]
    if len(rows) != order:
        raise FormatError(f"expected {order} rows, found {len(rows)}", "rows")
    for r, row in enumerate(rows, start=1):
        if len(row) != order:
            raise FormatError(f"row {r} has {len(row)} characters, expected {order}", f"row {r}")
        if bad := set(row) - {"+", "-"}:
            raise FormatError(f"row {r} contains {sorted(bad)[0]!r}", f"row {r}")
    try:
        return HadamardMatrix.from_signs(rows)
    except LssdError as e:
        raise FormatError(f"not a Hadamard matrix: {e}", "rows") from e


def save_hadamard(h: HadamardMatrix, filename: PathLike) -> None:
    _write_text(filename, format_hadamard(h))


def load_hadamard(filename: PathLike) -> HadamardMatrix:
    return parse_hadamard(_read_text(filename))


# --- orthogonal array text ---
def format_oa(o: OrthogonalArray) -> str:
    lines = [f"{o.n} {o.cols}", *(" ".join(str(int(x)) for x in row) for row in o.rows)]
    return "\n".join(lines) + "\n"


def parse_oa(text: str) -> OrthogonalArray:
    """Parse without the orthogonality check; `OrthogonalArray.check_pairs` does that."""
    lines = [line.split() for line in text.splitlines() if line.strip()]
    if not lines or len(lines[0]) != 2:
        raise FormatError("first line must be 'n cols'", "header")
    try:
        n, cols = int(lines[0][0]), int(lines[0][1])
        rows = [[int(x) for x in line] for line in lines[1:]]
    except ValueError as e:
        raise FormatError(f"non-integer symbol: {e}", "rows") from e
    if len(rows) != n * n:
        raise FormatError(f"expected {n * n} rows, found {len(rows)}", "rows")
    for r, row in enumerate(rows, start=1):
        if len(row) != cols:
            raise FormatError(f"row {r} has {len(row)} symbols, expected {cols}", f"row {r}")
        if bad := [x for x in row if not 1 <= x <= n]:
            raise FormatError(f"row {r} has symbol {bad[0]} outside 1..{n}", f"row {r}")
    try:
        return OrthogonalArray(n, np.array(rows, dtype=np.int64))
    except LssdError as e:
        raise FormatError(str(e), "rows") from e


def save_oa(o: OrthogonalArray, filename: PathLike) -> None:
    _write_text(filename, format_oa(o))


def load_oa(filename: PathLike) -> OrthogonalArray:
    return parse_oa(_read_text(filename))


# --- Gram documents ---
def dumps_gram(gram: ScaledGram) -> str:
    head = f'  "dim": {gram.dim},\n  "scale": {gram.scale},\n'
    if gram.claimed_rank is not None:
        head += f'  "rank": {gram.claimed_rank},\n'
    return "{\n" + head + f'  "entries": {_matrix_lines(gram.entries.tolist(), "  ")}\n}}\n'


def loads_gram(text: str) -> ScaledGram:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"invalid JSON at line {e.lineno}: {e.msg}", "document") from e
    dim, scale = _require_int(doc, "dim"), _require_int(doc, "scale")
    rows = doc.get("entries")
    if not isinstance(rows, list) or len(rows) != dim or any(
        not isinstance(row, list) or len(row) != dim for row in rows
    ):
        raise FormatError(f"entries must be a {dim}x{dim} integer grid", "entries")
    try:
        return ScaledGram(scale, IntMatrix.from_rows(rows), doc.get("rank"))
    except (LssdError, TypeError) as e:
        raise FormatError(f"invalid Gram matrix: {e}", "entries") from e


def save_gram(gram: ScaledGram, filename: PathLike) -> None:
    _write_text(filename, dumps_gram(gram))


def load_gram(filename: PathLike) -> ScaledGram:
    return loads_gram(_read_text(filename))


# --- settings ---
@dataclass(frozen=True)
class Settings:
    log_level: str | None = None
    budget: int | None = None
    workers: int | None = None


_SETTINGS_KEYS: dict[tuple[str, str], str] = {
    ("logging", "level"): "log_level",
    ("search", "budget"): "budget",
    ("verify", "workers"): "workers",
}


def load_settings(filename: PathLike) -> Settings:
    """
    Read the optional INI settings file.

    A missing file raises FileNotFoundError; undecodable or unparsable files
    raise FormatError. Unknown sections or keys and malformed values are
    skipped with a warning.
    """
    path = Path(filename)
    if not path.is_file():
        raise FileNotFoundError(f"settings file not found: {path}")
    config = configparser.ConfigParser()
    try:
        config.read_string(_read_text(path), source=str(path))
    except configparser.Error as e:
        raise FormatError(f"{path}: {e.message}", "settings") from e
    values: dict[str, Any] = {}
    for section in config.sections():
        for key, raw in config.items(section):
            attr = _SETTINGS_KEYS.get((section, key))
            if attr is None:
                log.warning("%s: ignoring unknown setting [%s] %s", path, section, key)
                continue
            if attr == "log_level":
                values[attr] = raw.strip().upper()
                continue
            try:
                values[attr] = int(raw)
            except ValueError:
                log.warning("%s: skipping malformed [%s] %s = %r", path, section, key, raw)
    return Settings(**values)
