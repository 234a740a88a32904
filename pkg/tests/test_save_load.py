from __future__ import annotations

import json
import logging
from collections.abc import Callable
from pathlib import Path

import pytest

from geometry import ScaledGram, simplex_gram
from hadamard_oa import reference_h4, reference_oa16
from lssd_core import FormatError, IntMatrix
from lssd_designs import DesignParams
from lssd_system import LssdGraph
from save_load import (
    Settings,
    dumps_gram,
    dumps_lssd,
    format_hadamard,
    format_oa,
    load_gram,
    load_hadamard,
    load_lssd,
    load_oa,
    load_settings,
    loads_gram,
    loads_lssd,
    lssd_from_document,
    lssd_to_document,
    parse_hadamard,
    parse_oa,
    save_gram,
    save_hadamard,
    save_lssd,
    save_oa,
)

REPO_ROOT = Path(__file__).resolve().parent.parent


def test_lssd_round_trip(kerdock3: LssdGraph, tmp_path: Path) -> None:
    path = tmp_path / "kerdock.json"
    save_lssd(kerdock3, path)
    loaded = load_lssd(path)
    assert loaded == kerdock3
    assert loaded.provenance == kerdock3.provenance
    assert dumps_lssd(loaded) == path.read_text()


def test_beth_wocjan_matches_golden_file(beth_wocjan3: LssdGraph) -> None:
    golden = REPO_ROOT / "tests" / "golden" / "beth_wocjan16_w3.json"
    assert dumps_lssd(beth_wocjan3) == golden.read_text(encoding="utf-8")
    assert load_lssd(golden) == beth_wocjan3


def test_lssd_document_layout(kerdock3: LssdGraph) -> None:
    text = dumps_lssd(kerdock3)
    doc = json.loads(text)
    assert (doc["v"], doc["k"], doc["lambda"], doc["w"]) == (16, 10, 6, 3)
    assert sorted(doc["blocks"]) == ["1,2", "1,3", "2,3"]
    assert doc["metadata"] == {"provenance": kerdock3.provenance}
    # one matrix row per line
    first_row = json.dumps(kerdock3.blocks[(0, 1)].tolist()[0], separators=(",", ":"))
    assert f"      {first_row},\n" in text


def _field_of(doc: dict[str, object]) -> str:
    with pytest.raises(FormatError) as info:
        _ = lssd_from_document(doc)
    return info.value.field


def test_document_errors_name_the_field(kerdock3: LssdGraph) -> None:
    doc = lssd_to_document(kerdock3)
    del doc["blocks"]["1,3"]
    assert _field_of(doc) == "blocks[1,3]"

    doc = lssd_to_document(kerdock3)
    doc["blocks"]["1,2"][0][0] = 2
    assert _field_of(doc) == "blocks[1,2][0][0]"

    doc = lssd_to_document(kerdock3)
    doc["lambda"] = 5
    assert _field_of(doc) == "lambda"

    doc = lssd_to_document(kerdock3)
    doc["w"] = 1
    assert _field_of(doc) == "w"

    doc = lssd_to_document(kerdock3)
    del doc["v"]
    assert _field_of(doc) == "v"

    doc = lssd_to_document(kerdock3)
    doc["blocks"]["1,4"] = doc["blocks"]["1,2"]
    assert _field_of(doc) == "blocks[1,4]"

    doc = lssd_to_document(kerdock3)
    doc["blocks"]["2,3"] = doc["blocks"]["2,3"][:3]
    assert _field_of(doc) == "blocks[2,3]"


def test_invalid_json() -> None:
    with pytest.raises(FormatError) as info:
        _ = loads_lssd("{ not json")
    assert info.value.field == "document"


def test_documents_without_metadata(degenerate3: LssdGraph) -> None:
    doc = lssd_to_document(degenerate3.with_provenance(""))
    assert "metadata" not in doc
    g = lssd_from_document(doc)
    assert g.params == DesignParams(4, 1, 0)
    assert g.provenance == ""


def test_hadamard_text(tmp_path: Path) -> None:
    h4 = reference_h4()
    assert format_hadamard(h4) == "4\n-+++\n+-++\n++-+\n+++-\n"
    path = tmp_path / "h4.txt"
    save_hadamard(h4, path)
    assert load_hadamard(path) == h4


@pytest.mark.parametrize(
    ("text", "field"),
    [
        ("", "order"),
        ("four\n", "order"),
        ("2\n++\n", "rows"),
        ("2\n++\n+x\n", "row 2"),
        ("2\n++\n+\n", "row 2"),
        ("2\n++\n++\n", "rows"),
    ],
)
def test_hadamard_text_errors(text: str, field: str) -> None:
    with pytest.raises(FormatError) as info:
        _ = parse_hadamard(text)
    assert info.value.field == field


def test_oa_text(tmp_path: Path) -> None:
    oa = reference_oa16()
    text = format_oa(oa)
    assert text.splitlines()[:3] == ["4 3", "1 1 1", "1 2 2"]
    path = tmp_path / "oa.txt"
    save_oa(oa, path)
    loaded = load_oa(path)
    assert loaded.rows.tolist() == oa.rows.tolist()
    assert loaded.check_pairs()


def test_oa_parse_skips_orthogonality() -> None:
    oa = parse_oa("2 2\n1 1\n1 1\n2 2\n2 2\n")
    assert not oa.check_pairs()


@pytest.mark.parametrize(
    ("text", "field"),
    [
        ("2\n", "header"),
        ("2 2\n1 1\n", "rows"),
        ("2 2\n1 1\n1 2\n2 1\n2 a\n", "rows"),
        ("2 2\n1 1\n1 2\n2 1\n2\n", "row 4"),
        ("2 2\n1 3\n1 2\n2 1\n2 2\n", "row 1"),
    ],
)
def test_oa_text_errors(text: str, field: str) -> None:
    with pytest.raises(FormatError) as info:
        _ = parse_oa(text)
    assert info.value.field == field


def test_gram_round_trip(kerdock3: LssdGraph, tmp_path: Path) -> None:
    gram, _ = simplex_gram(DesignParams(16, 10, 6), 3, kerdock3)
    path = tmp_path / "gram.json"
    save_gram(gram, path)
    loaded = load_gram(path)
    assert loaded == gram
    assert loaded.claimed_rank == 15
    assert json.loads(dumps_gram(gram))["dim"] == 48


def test_gram_errors() -> None:
    with pytest.raises(FormatError) as info:
        _ = loads_gram('{"dim": 2, "scale": 1, "entries": [[1, 0]]}')
    assert info.value.field == "entries"
    with pytest.raises(FormatError) as info:
        _ = loads_gram('{"dim": 2, "scale": 1, "entries": [[1, 2], [0, 1]]}')
    assert info.value.field == "entries"
    with pytest.raises(FormatError) as info:
        _ = loads_gram('{"scale": 1, "entries": []}')
    assert info.value.field == "dim"
    gram = loads_gram('{"dim": 2, "scale": 3, "entries": [[3, 1], [1, 3]]}')
    assert gram == ScaledGram(3, IntMatrix.from_rows([[3, 1], [1, 3]]))
    assert gram.claimed_rank is None


def test_repository_settings() -> None:
    assert load_settings(REPO_ROOT / "lssd.ini") == Settings("WARNING", 1_000_000, 4)


def test_settings_skip_unknown_and_malformed(
    tmp_path: Path, caplog: pytest.LogCaptureFixture
) -> None:
    path = tmp_path / "lssd.ini"
    _ = path.write_text(
        "[logging]\nlevel = debug\n[search]\nbudget = lots\n[verify]\nworkers = 2\ncolour = red\n"
    )
    with caplog.at_level(logging.WARNING, logger="save_load"):
        settings = load_settings(path)
    assert settings == Settings(log_level="DEBUG", budget=None, workers=2)
    messages = [r.getMessage() for r in caplog.records]
    assert any("malformed" in m and "budget" in m for m in messages)
    assert any("unknown" in m and "colour" in m for m in messages)


def test_missing_settings_file(tmp_path: Path) -> None:
    with pytest.raises(FileNotFoundError):
        _ = load_settings(tmp_path / "absent.ini")


@pytest.mark.parametrize("loader", [load_lssd, load_hadamard, load_oa, load_gram])
def test_loaders_reject_undecodable_files(loader: Callable[[Path], object], tmp_path: Path) -> None:
    path = tmp_path / "binary.dat"
    _ = path.write_bytes(b"\xff\xfe{}")
    with pytest.raises(FormatError) as info:
        _ = loader(path)
    assert info.value.field == "document"


def test_settings_format_errors(tmp_path: Path) -> None:
    path = tmp_path / "lssd.ini"
    _ = path.write_bytes(b"[verify]\nworkers = \xff\n")
    with pytest.raises(FormatError) as info:
        _ = load_settings(path)
    assert info.value.field == "document"
    _ = path.write_text("workers = 2\n")
    with pytest.raises(FormatError) as info:
        _ = load_settings(path)
    assert info.value.field == "settings"
