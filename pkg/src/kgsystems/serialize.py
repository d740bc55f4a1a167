"""JSON and CSV encodings for matrices, systems and degree bundles.

Scalars are always written as GAUSS strings (``"3/5"``, ``"-4/5i"``,
``"1+8i"``).  Key order is fixed so output is byte-stable.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Optional, Sequence

from .kg import KGSystem, KrawtchoukDegree
from .matrix import ExactMatrix
from .scalar import GaussianRational


class MalformedInputError(ValueError):
    pass


def scalar_from_json(x: Any) -> GaussianRational:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise MalformedInputError(f"scalars must be GAUSS strings or integers, got {x!r}")
    try:
        return GaussianRational.parse(x) if isinstance(x, str) else GaussianRational(x)
    except ValueError as exc:
        raise MalformedInputError(str(exc)) from None


def matrix_to_json(M: ExactMatrix) -> dict:
    out = {
        "rows": M.nrows,
        "cols": M.ncols,
        "entries": [[str(x) for x in r] for r in M.rows],
    }
    if M.table is not None:
        out["degree"] = M.table.N
        out["dim"] = M.table.d
    return out


def matrix_from_json(obj: Any) -> ExactMatrix:
    if isinstance(obj, list):
        obj = {"entries": obj}
    if not isinstance(obj, dict) or "entries" not in obj:
        raise MalformedInputError("matrix JSON needs an 'entries' list")
    entries = obj["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise MalformedInputError("'entries' must be a list of rows")
    rows = [[scalar_from_json(x) for x in r] for r in entries]
    if any(len(r) != len(rows[0]) for r in rows) or not rows:
        raise MalformedInputError("matrix rows are empty or ragged")
    M = ExactMatrix(rows)
    for key, actual in (("rows", M.nrows), ("cols", M.ncols)):
        if key in obj and obj[key] != actual:
            raise MalformedInputError(f"declared {key}={obj[key]} but entries give {actual}")
    return M


def vector_from_json(obj: Any, name: str) -> list:
    if not isinstance(obj, list):
        raise MalformedInputError(f"'{name}' must be a list of scalars")
    return [scalar_from_json(x) for x in obj]


def system_to_json(sys: KGSystem, reflect: Optional[dict] = None) -> dict:
    out = {
        "A": matrix_to_json(sys.A),
        "p": [str(x) for x in sys.p],
        "D": [str(x) for x in sys.D],
    }
    if reflect is not None:
        out["reflect"] = reflect
    return out


def system_from_json(obj: Any) -> KGSystem:
    if not isinstance(obj, dict) or not {"A", "p", "D"} <= obj.keys():
        raise MalformedInputError("system JSON needs keys 'A', 'p', 'D'")
    A = matrix_from_json(obj["A"])
    p = vector_from_json(obj["p"], "p")
    D = vector_from_json(obj["D"], "D")
    if not A.is_square() or len(p) != A.nrows or len(D) != A.nrows:
        raise MalformedInputError("A must be square with len(p) = len(D) = extent of A")
    return KGSystem(A, p, D)


def reflect_to_json(v: Sequence, s: Sequence) -> dict:
    return {"v": [str(x) for x in v], "s": [str(x) for x in s]}


def bundle_to_json(kd: KrawtchoukDegree, reflect: Optional[dict] = None) -> dict:
    return {
        "system": system_to_json(kd.system, reflect),
        "degree": kd.N,
        "Phi": matrix_to_json(kd.Phi),
        "B": matrix_to_json(kd.B),
        "pbar": matrix_to_json(kd.pbar),
        "Dbar": matrix_to_json(kd.Dbar),
        "Rec": [matrix_to_json(kd.rec(j)) for j in range(kd.d + 1)],
        "Spec": [matrix_to_json(kd.spec(j)) for j in range(kd.d + 1)],
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def matrix_to_csv(M: ExactMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for r in M.rows:
        writer.writerow(str(x) for x in r)
    return buf.getvalue()


def load_json_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInputError(f"cannot read JSON from {path}: {exc}") from None
