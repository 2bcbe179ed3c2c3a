"""Matrix files (JSON), reports (JSON) and scan tables (CSV).

Matrix file schema::

    {"dims": [d1, ...], "name": str?, "convention": "null"|"nonneg"?,
     "matrix": [[[re, im], ...], ...]}

Floats are written with 17 significant digits so a parse/serialise cycle
reproduces the file byte for byte.
"""

import csv
import io
import json
import math
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import ParseError
from .states import DensityMatrix
from .witness import CONVENTIONS, Witness


def fmt_float(x: float) -> str:
    x = float(x) + 0.0  # folds -0.0
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _scalar(x) -> str:
    if x is None or isinstance(x, bool):
        return json.dumps(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return fmt_float(x) if math.isfinite(x) else "null"
    if isinstance(x, str):
        return json.dumps(x, ensure_ascii=False)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _depth(x) -> int:
    if isinstance(x, (list, tuple)):
        return 1 + max((_depth(e) for e in x), default=0)
    if isinstance(x, dict):
        return 99
    return 0


def to_json(obj, indent: int = 0) -> str:
    """Deterministic JSON text. Lists nested at most two deep stay on one line."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {to_json(v, indent + 2)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if _depth(obj) <= 2:
            return "[" + ", ".join(to_json(e, indent) for e in obj) + "]"
        items = [inner + to_json(e, indent + 2) for e in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _scalar(obj)


def matrix_doc(mat, dims, name: Optional[str] = None,
               convention: Optional[str] = None) -> dict:
    m = np.asarray(mat, dtype=np.complex128)
    doc = {"dims": [int(d) for d in dims]}
    if name is not None:
        doc["name"] = name
    if convention is not None:
        doc["convention"] = convention
    doc["matrix"] = [[[float(z.real), float(z.imag)] for z in row] for row in m]
    return doc


def dump_matrix(mat, dims, name=None, convention=None) -> str:
    return to_json(matrix_doc(mat, dims, name, convention)) + "\n"


def parse_matrix(text: str) -> dict:
    """Parse matrix-file text into ``{"dims", "matrix", "name", "convention"}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "dims" not in doc or "matrix" not in doc:
        raise ParseError("matrix file needs 'dims' and 'matrix' keys")
    try:
        dims = tuple(int(d) for d in doc["dims"])
        arr = np.asarray(doc["matrix"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed dims/matrix: {exc}") from None
    n = int(np.prod(dims)) if dims else 0
    if arr.shape != (n, n, 2):
        raise ParseError(f"matrix shape {arr.shape[:-1] if arr.ndim else arr.shape} does "
                         f"not match dims {list(dims)} (expected {n}x{n} of [re, im])")
    conv = doc.get("convention")
    if conv is not None and conv not in CONVENTIONS:
        raise ParseError(f"convention must be one of {CONVENTIONS}, got {conv!r}")
    return {"dims": dims, "matrix": arr[..., 0] + 1j * arr[..., 1],
            "name": doc.get("name"), "convention": conv}


def read_matrix(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_matrix(text)


def load_state(path) -> DensityMatrix:
    doc = read_matrix(path)
    return DensityMatrix.from_array(doc["matrix"], doc["dims"], renormalize=True,
                                    name=doc["name"])


def load_witness(path) -> Witness:
    doc = read_matrix(path)
    if doc["convention"] is None:
        raise ParseError(f"{path}: witness files must carry a 'convention' tag")
    name = doc["name"] or Path(path).stem
    return Witness(doc["matrix"], doc["dims"], doc["convention"], name)


def csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt_float(x) if isinstance(x, (float, np.floating)) else x
                         for x in row])
    return buf.getvalue()
