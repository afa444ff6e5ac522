"""JSON instance files.

Every document carries a ``"kind"`` discriminator (``skew``, ``betti``,
``section``, ``ideal``) and, where scalars occur, a ``"field"`` tag ``"Q"``
or ``"Fp:<p>"``.  Rationals are written as integers or ``"p/q"`` strings;
residues as their representative in ``[0, p)``.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from typing import Any

from .errors import InputFormatError, ResonanceKitError
from .exactalg import QQ, Residue, field_from_tag
from .polyring import Poly, Ring

KINDS = ("skew", "betti", "section", "ideal")


def scalar_to_json(x) -> int | str:
    if isinstance(x, Residue):
        return x.value
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    raise InputFormatError(f"not an exact scalar: {x!r}")


def scalar_from_json(x, field):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputFormatError(f"scalar must be an integer or a 'p/q' string, got {x!r}")
    try:
        return field(x)
    except ResonanceKitError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise InputFormatError(f"bad scalar {x!r}") from exc


def _require(doc: dict, key: str, kind: type | tuple):
    if key not in doc:
        raise InputFormatError(f"missing key {key!r}")
    val = doc[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise InputFormatError(f"key {key!r} has the wrong type")
    return val


def _field_of(doc: dict):
    tag = doc.get("field", "Q")
    if not isinstance(tag, str):
        raise InputFormatError("field tag must be a string")
    return field_from_tag(tag)


def _vars_of(doc: dict) -> tuple:
    names = _require(doc, "vars", list)
    if not all(isinstance(v, str) and v.isidentifier() for v in names):
        raise InputFormatError("variable names must be identifiers")
    if len(set(names)) != len(names):
        raise InputFormatError("repeated variable names")
    return tuple(names)


# -- skew matrices ----------------------------------------------------------------


def skew_to_json(a) -> dict:
    upper = []
    for (i, j) in sorted(a.upper):
        coeffs = a.entry(i, j).linear_coefficients()
        upper.append([i + 1, j + 1, [scalar_to_json(c) for c in coeffs]])
    return {"kind": "skew", "n": a.n, "vars": list(a.ring.names), "field": a.ring.field.tag, "upper": upper}


def skew_from_json(doc: dict):
    from .skewpfaff import SkewLinearMatrix

    n = _require(doc, "n", int)
    if n < 1:
        raise InputFormatError(f"n must be positive, got {n}")
    field = _field_of(doc)
    ring = Ring(_vars_of(doc), field)
    upper = _require(doc, "upper", list)
    triples = []
    seen = set()
    for item in upper:
        if not (isinstance(item, list) and len(item) == 3):
            raise InputFormatError(f"upper entry must be [i, j, coeffs]: {item!r}")
        i, j, coeffs = item
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= n):
            raise InputFormatError(f"bad index pair ({i!r}, {j!r}) for n = {n}")
        if (i, j) in seen:
            raise InputFormatError(f"entry ({i},{j}) given twice")
        seen.add((i, j))
        if not isinstance(coeffs, list) or len(coeffs) != ring.nvars:
            raise InputFormatError(f"entry ({i},{j}) needs {ring.nvars} coefficients")
        triples.append((i, j, [scalar_from_json(c, field) for c in coeffs]))
    return SkewLinearMatrix.from_coefficients(n, ring, triples)


# -- ideals ------------------------------------------------------------------------


def ideal_to_json(ring: Ring, gens: list[Poly]) -> dict:
    return {"kind": "ideal", "vars": list(ring.names), "field": ring.field.tag, "generators": [str(g) for g in gens]}


def ideal_from_json(doc: dict):
    from .groebner import Ideal

    ring = Ring(_vars_of(doc), _field_of(doc))
    gens = _require(doc, "generators", list)
    if not all(isinstance(g, str) for g in gens):
        raise InputFormatError("generators must be polynomial strings")
    return Ideal(ring, tuple(ring.parse(g) for g in gens))


# -- dispatch ----------------------------------------------------------------------


def load_instance(doc: Any):
    """Decode a parsed JSON document into the matching object."""
    if not isinstance(doc, dict):
        raise InputFormatError("instance must be a JSON object")
    kind = doc.get("kind", "skew" if "upper" in doc else None)
    if kind == "skew":
        return skew_from_json(doc)
    if kind == "ideal":
        return ideal_from_json(doc)
    if kind == "betti":
        from .betti import BettiTable

        return BettiTable.from_json(doc)
    if kind == "section":
        from .grassmann import LinearSection

        return LinearSection.from_json(doc)
    raise InputFormatError(f"unknown instance kind {kind!r}")


def dump_instance(obj) -> dict:
    from .groebner import Ideal
    from .skewpfaff import SkewLinearMatrix

    if isinstance(obj, SkewLinearMatrix):
        return skew_to_json(obj)
    if isinstance(obj, Ideal):
        return ideal_to_json(obj.ring, list(obj.generators))
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise InputFormatError(f"cannot encode {type(obj).__name__}")


def parse_text(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"invalid JSON: {exc}") from exc
    return load_instance(doc)


def read_instance(path: str):
    """Parse the instance stored at ``path``; ``-`` reads stdin."""
    if path == "-":
        return parse_text(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_text(text)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=False, separators=(", ", ": "))


__all__ = [
    "KINDS",
    "QQ",
    "dump_instance",
    "dumps",
    "ideal_from_json",
    "ideal_to_json",
    "load_instance",
    "parse_text",
    "read_instance",
    "scalar_from_json",
    "scalar_to_json",
    "skew_from_json",
    "skew_to_json",
]
