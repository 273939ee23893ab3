"""State files, JSON reports and sweep CSVs."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from .errors import ParseError
from .family7 import SweepRow
from .state import PureState, make_state

SIG_DIGITS = 12
SWEEP_HEADER = ("c1sq", "c2sq", "csq", "rxx", "rzz", "bound", "gamut")


def fmt(x: float) -> str:
    return format(float(x), f".{SIG_DIGITS}g")


def round_floats(obj: Any) -> Any:
    """Recursively round floats to 12 significant digits for stable output."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if not math.isfinite(x) else float(fmt(x))
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [round_floats(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(round_floats(obj), indent=2)


def state_from_dict(doc: dict) -> PureState:
    try:
        n = int(doc["n"])
        entries = [
            (str(e["basis"]), complex(float(e.get("re", 0.0)), float(e.get("im", 0.0))))
            for e in doc["amplitudes"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"state document malformed: {exc!r}") from exc
    return make_state(n, entries)


def state_to_dict(state: PureState, tol: float = 0.0) -> dict:
    return {
        "n": state.n,
        "amplitudes": [
            {"basis": bits, "re": amp.real, "im": amp.imag}
            for bits, amp in state.basis_terms(tol)
        ],
    }


def loads_state(text: str) -> PureState:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[: exc.pos].encode("utf-8"))
        raise ParseError(f"invalid JSON at byte offset {offset}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("state document must be a JSON object")
    return state_from_dict(doc)


def load_state(path: str | Path) -> PureState:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return loads_state(text)


def save_state(state: PureState, path: str | Path) -> None:
    Path(path).write_text(json.dumps(state_to_dict(state), indent=2) + "\n", encoding="utf-8")


def _cell(x: float | None) -> str:
    return "" if x is None else fmt(x)


def write_sweep_csv(rows: Iterable[SweepRow], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SWEEP_HEADER)
        for r in rows:
            w.writerow(
                [fmt(r.c1sq), fmt(r.c2sq), fmt(r.csq), _cell(r.rxx), _cell(r.rzz), _cell(r.bound),
                 "in" if r.gamut else "out"]
            )


def read_sweep_csv(path: str | Path) -> list[SweepRow]:
    def num(s: str) -> float | None:
        return float(s) if s else None

    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != SWEEP_HEADER:
            raise ParseError(f"unexpected sweep header {reader.fieldnames}")
        return [
            SweepRow(float(r["c1sq"]), float(r["c2sq"]), float(r["csq"]), num(r["rxx"]),
                     num(r["rzz"]), num(r["bound"]), r["gamut"] == "in")
            for r in reader
        ]
