"""JSON documents for N-complexes and chain maps.

A complex document looks like::

    {
      "format_version": "1",
      "kind": "complex",
      "N": 3,
      "coeff": "Fp:5",
      "objects": {"0": 1, "1": 1},
      "diff": {"0": [[1]]}
    }

``objects`` maps degrees to ranks, ``diff`` maps a degree ``i`` to the matrix of
``d^i : X^i -> X^(i+1)`` (rows indexed by ``X^(i+1)``).  Missing differentials
are zero.  Entries are integers or ``"a/b"`` strings.  A chain-map document has
``"kind": "map"`` with embedded ``source`` and ``target`` complex documents and
a ``components`` table in the same shape as ``diff``.

:func:`dumps` is canonical: degrees sorted numerically, zero objects dropped,
one matrix row per line.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .complexes import ChainMap, NComplex, check_chain_map, check_valid
from .errors import ParseError, UnsupportedDomain
from .linalg import CoefficientDomain, ExactMatrix

FORMAT_VERSION = "1"
# Dense exact linear algebra is cubic; refuse documents far beyond desk scale.
MAX_DIMENSION = 4096


# -- reading ------------------------------------------------------------------------


def _line_of(text: str | None, section: str, key: str) -> int | None:
    """Best-effort line number of ``"key"`` inside the ``section`` object."""
    if text is None:
        return None
    in_section = False
    for n, line in enumerate(text.splitlines(), 1):
        if f'"{section}"' in line:
            in_section = True
            tail = line.split(f'"{section}"', 1)[1]
            if f'"{key}"' in tail:
                return n
            continue
        if in_section and f'"{key}"' in line:
            return n
    return None


def _degree(key: str, text, section: str) -> int:
    try:
        return int(key)
    except (TypeError, ValueError):
        raise ParseError(f"degree key {key!r} in {section!r} is not an integer", line=_line_of(text, section, key)) from None


def _scalar(domain: CoefficientDomain, x, where: str):
    if isinstance(x, bool) or isinstance(x, float):
        raise ParseError(f"entry {x!r} in {where} must be an integer or an \"a/b\" string")
    if isinstance(x, str):
        try:
            x = Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational literal {x!r} in {where}") from None
    if not isinstance(x, (int, Fraction)):
        raise ParseError(f"entry {x!r} in {where} must be an integer or an \"a/b\" string")
    try:
        return domain.coerce(x)
    except (UnsupportedDomain, ZeroDivisionError, ValueError) as exc:
        raise ParseError(f"entry {x!r} in {where}: {exc}") from None


def _matrix(domain, rows, nrows: int, ncols: int, where: str, line, degree) -> ExactMatrix:
    if not isinstance(rows, list):
        raise ParseError(f"{where} must be a list of rows", line=line, degree=degree)
    if rows == [] and (nrows == 0 or ncols == 0):
        return ExactMatrix.zeros(domain, nrows, ncols)
    if len(rows) != nrows or any(not isinstance(r, list) or len(r) != ncols for r in rows):
        got_c = len(rows[0]) if rows and isinstance(rows[0], list) else 0
        raise ParseError(
            f"{where} has shape {len(rows)}x{got_c}, expected {nrows}x{ncols}", line=line, degree=degree
        )
    flat = tuple(_scalar(domain, x, where) for r in rows for x in r)
    return ExactMatrix(domain, nrows, ncols, flat)


def _require(doc: dict, key: str, text):
    if key not in doc:
        raise ParseError(f"missing field {key!r}")
    return doc[key]


def complex_from_dict(doc: Any, text: str | None = None, validate: bool = True) -> NComplex:
    if not isinstance(doc, dict):
        raise ParseError("a complex document must be a JSON object")
    version = _require(doc, "format_version", text)
    if str(version) != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}")
    kind = doc.get("kind", "complex")
    if kind != "complex":
        raise ParseError(f"expected kind 'complex', got {kind!r}")
    N = _require(doc, "N", text)
    if isinstance(N, bool) or not isinstance(N, int) or N < 2:
        raise ParseError(f"N must be an integer >= 2, got {N!r}", line=_line_of(text, "N", "N"))
    try:
        domain = CoefficientDomain.parse(str(_require(doc, "coeff", text)))
    except UnsupportedDomain as exc:
        raise ParseError(str(exc), line=_line_of(text, "coeff", "coeff")) from None
    objects = _require(doc, "objects", text)
    if not isinstance(objects, dict):
        raise ParseError("'objects' must map degrees to dimensions")
    dims: dict[int, int] = {}
    for key, n in objects.items():
        i = _degree(key, text, "objects")
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise ParseError(f"dimension {n!r} is not a nonnegative integer", line=_line_of(text, "objects", key), degree=i)
        if n > MAX_DIMENSION:
            raise ParseError(f"dimension {n} exceeds the limit {MAX_DIMENSION}", line=_line_of(text, "objects", key), degree=i)
        dims[i] = n
    diff = doc.get("diff", {})
    if not isinstance(diff, dict):
        raise ParseError("'diff' must map degrees to matrices")
    mats = {}
    for key, rows in diff.items():
        i = _degree(key, text, "diff")
        mats[i] = _matrix(domain, rows, dims.get(i + 1, 0), dims.get(i, 0), f"d^{i}", _line_of(text, "diff", key), i)
    X = NComplex.build(N, domain, dims, mats)
    return check_valid(X) if validate else X


def map_from_dict(doc: Any, text: str | None = None) -> ChainMap:
    if not isinstance(doc, dict):
        raise ParseError("a map document must be a JSON object")
    if doc.get("kind") != "map":
        raise ParseError(f"expected kind 'map', got {doc.get('kind')!r}")
    if str(_require(doc, "format_version", text)) != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {doc['format_version']!r}")
    X = complex_from_dict(_require(doc, "source", text))
    Y = complex_from_dict(_require(doc, "target", text))
    if X.N != Y.N or X.domain != Y.domain:
        raise ParseError("source and target live in different categories")
    comps_doc = doc.get("components", {})
    if not isinstance(comps_doc, dict):
        raise ParseError("'components' must map degrees to matrices")
    comps = {}
    for key, rows in comps_doc.items():
        i = _degree(key, text, "components")
        comps[i] = _matrix(X.domain, rows, Y.dim(i), X.dim(i), f"f^{i}", _line_of(text, "components", key), i)
    return check_chain_map(ChainMap(X, Y, comps))


def _parse_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None


def loads(text: str) -> NComplex | ChainMap:
    """Parse a complex or chain-map document (dispatching on ``kind``)."""
    doc = _parse_json(text)
    if isinstance(doc, dict) and doc.get("kind") == "map":
        return map_from_dict(doc, text)
    return complex_from_dict(doc, text)


def load(path: str | Path) -> NComplex | ChainMap:
    try:
        text = Path(path).read_text()
    except UnicodeDecodeError:
        raise ParseError(f"{path} is not UTF-8 text") from None
    return loads(text)


# -- writing ------------------------------------------------------------------------


def _matrix_literal(M: ExactMatrix) -> list[list]:
    return [[M.domain.format(x) for x in row] for row in M.rows()]


def complex_to_dict(X: NComplex) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "complex",
        "N": X.N,
        "coeff": str(X.domain),
        "objects": {str(i): X.dim(i) for i in X.degrees() if X.dim(i)},
        "diff": {
            str(i): _matrix_literal(X.diff(i)) for i in X.degrees() if X.dim(i) and X.dim(i + 1)
        },
    }


def map_to_dict(f: ChainMap) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "map",
        "source": complex_to_dict(f.source),
        "target": complex_to_dict(f.target),
        "components": {str(i): _matrix_literal(m) for i, m in sorted(f.components.items())},
    }


def to_dict(obj: NComplex | ChainMap) -> dict:
    return map_to_dict(obj) if isinstance(obj, ChainMap) else complex_to_dict(obj)


def _emit(value: Any, indent: int) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f'{pad}  {json.dumps(k)}: {_emit(v, indent + 1)}' for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list) and value and all(isinstance(r, list) for r in value):
        # matrix: one row per line
        rows = [pad + "  " + json.dumps(r, separators=(", ", ": ")) for r in value]
        return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
    return json.dumps(value, separators=(", ", ": "))


def dumps(obj: NComplex | ChainMap) -> str:
    """Canonical document text (ends with a newline)."""
    return _emit(to_dict(obj), 0) + "\n"


def save(obj: NComplex | ChainMap, path: str | Path) -> None:
    Path(path).write_text(dumps(obj))


def canonicalize(text: str) -> str:
    """``dumps(loads(text))``: the canonical form of a document."""
    return dumps(loads(text))

