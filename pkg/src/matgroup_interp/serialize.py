"""JSON formats for matrices, words, cocycles and deformations."""

from __future__ import annotations

import json
import re
from typing import Any

from .cohom import Cocycle, FinAbGroup
from .errors import AlgebraError, ParseError
from .matgroup import Matrix
from .ring import RingSpec
from .wordcalc import TransvectionWord


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}:{e.lineno}:{e.colno}: {e.msg} (offset {e.pos})") from None


def load_file(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    return loads(text, path)


def _need(obj: Any, key: str, kind, where: str):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a JSON object")
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    val = obj[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise ParseError(f"{where}: field {key!r} has the wrong type")
    return val


def _ring(obj: Any, where: str) -> RingSpec:
    text = _need(obj, "ring", str, where)
    try:
        return RingSpec.parse(text)
    except AlgebraError as e:
        raise ParseError(f"{where}.ring: {e}") from None


def _elem(spec: RingSpec, v: Any, where: str):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ParseError(f"{where}: ring element must be an integer or a string")
    try:
        return spec.elem(v)
    except (ValueError, ZeroDivisionError, AlgebraError) as e:
        raise ParseError(f"{where}: bad ring element {v!r} ({e})") from None


# -- matrices -----------------------------------------------------------------


def matrix_to_json(a: Matrix) -> dict:
    return {"ring": str(a.spec), "n": a.n, "entries": [[str(x) for x in row] for row in a.rows()]}


def matrix_from_json(obj: Any, where: str = "matrix") -> Matrix:
    spec = _ring(obj, where)
    rows = _need(obj, "entries", list, where)
    n = obj.get("n", len(rows))
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"{where}.n: expected a positive integer")
    if len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise ParseError(f"{where}.entries: expected {n} rows of {n} entries")
    return Matrix.from_rows(
        spec, [[_elem(spec, v, f"{where}.entries[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(rows)]
    )


# -- words ----------------------------------------------------------------------


def word_to_json(w: TransvectionWord) -> dict:
    out: dict = {"ring": str(w.spec), "n": w.n, "letters": [[i, j, str(a)] for (i, j, a) in w.letters]}
    if w.diag is not None:
        out["diag"] = {"index": w.diag[0], "value": str(w.diag[1]), "position": w.diag_pos}
    return out


def word_from_json(obj: Any, where: str = "word") -> TransvectionWord:
    spec = _ring(obj, where)
    n = _need(obj, "n", int, where)
    letters = []
    for k, let in enumerate(_need(obj, "letters", list, where)):
        if not isinstance(let, list) or len(let) != 3 or not all(isinstance(t, int) for t in let[:2]):
            raise ParseError(f"{where}.letters[{k}]: expected [i, j, value]")
        i, j = let[0], let[1]
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(f"{where}.letters[{k}]: bad indices ({i}, {j})")
        letters.append((i, j, _elem(spec, let[2], f"{where}.letters[{k}][2]")))
    diag = pos = None
    if "diag" in obj and obj["diag"] is not None:
        d = obj["diag"]
        idx = _need(d, "index", int, f"{where}.diag")
        diag = (idx, _elem(spec, d.get("value"), f"{where}.diag.value"))
        pos = d.get("position", len(letters))
    return TransvectionWord(spec, n, tuple(letters), diag, pos)


# -- cocycles -------------------------------------------------------------------

_TUPLE = re.compile(r"^\(\s*(-?\d+(\s*,\s*-?\d+)*)?\s*\)$")


def _tuple(text: str, where: str) -> tuple:
    if not isinstance(text, str) or not _TUPLE.match(text.strip()):
        raise ParseError(f"{where}: expected a residue tuple like '(1,0)', got {text!r}")
    body = text.strip()[1:-1].strip()
    return tuple(int(t) for t in body.split(",")) if body else ()


def cocycle_to_json(f: Cocycle, skip_identity: bool = True) -> dict:
    B, A = f.domain, f.codomain
    table = {}
    for x in B.elements():
        for y in B.elements():
            v = f(x, y)
            if skip_identity and v == A.zero:
                continue
            table[f"{B.fmt(x)}|{B.fmt(y)}"] = A.fmt(v)
    return {"domain": list(B.orders), "codomain": list(A.orders), "table": table}


def cocycle_from_json(obj: Any, where: str = "cocycle", symmetric: bool = True) -> Cocycle:
    dom = _need(obj, "domain", list, where)
    cod = _need(obj, "codomain", list, where)
    if not all(isinstance(m, int) and m >= 1 for m in dom + cod):
        raise ParseError(f"{where}: cyclic orders must be positive integers")
    B, A = FinAbGroup(tuple(dom)), FinAbGroup(tuple(cod))
    raw = obj.get("table", {})
    if not isinstance(raw, dict):
        raise ParseError(f"{where}.table: expected an object")
    table = {(x, y): A.zero for x in B.elements() for y in B.elements()}
    for key, val in raw.items():
        parts = key.split("|")
        if len(parts) != 2:
            raise ParseError(f"{where}.table[{key!r}]: expected 'x|y'")
        try:
            x, y = B.canon(_tuple(parts[0], where)), B.canon(_tuple(parts[1], where))
            v = A.canon(_tuple(val, f"{where}.table[{key!r}]"))
        except ValueError as e:
            raise ParseError(f"{where}.table[{key!r}]: {e}") from None
        table[(x, y)] = v
    return Cocycle(B, A, table, symmetric)


# -- deformations ----------------------------------------------------------------


def deformation_from_json(obj: Any, where: str = "deformation"):
    from .deform import TnDeformation, UnitLog

    spec = _ring(obj, where)
    n = _need(obj, "n", int, where)
    Zo = _need(obj, "Z", list, where)
    if not all(isinstance(m, int) and m >= 1 for m in Zo):
        raise ParseError(f"{where}.Z: cyclic orders must be positive integers")
    Z = FinAbGroup(tuple(Zo))
    try:
        B = UnitLog(spec).group(n - 1)
    except AlgebraError as e:
        raise ParseError(f"{where}: {e}") from None
    if obj.get("cocycle") is None:
        return TnDeformation.trivial(spec, n, Z)
    c = dict(obj["cocycle"]) if isinstance(obj["cocycle"], dict) else None
    if c is None:
        raise ParseError(f"{where}.cocycle: expected an object")
    c.setdefault("domain", list(B.orders))
    c.setdefault("codomain", list(Z.orders))
    f = cocycle_from_json(c, f"{where}.cocycle")
    return TnDeformation(spec, n, Z, f)


def deformation_to_json(d) -> dict:
    return {"ring": str(d.spec), "n": d.n, "Z": list(d.Z.orders), "cocycle": cocycle_to_json(d.f)}
