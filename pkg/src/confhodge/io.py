"""File formats: algebra documents in, result tables out.

Both formats are JSON with all rationals spelled as "num/den" strings
(never binary floats) and fully sorted keys, so identical inputs always
produce byte-identical documents.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from . import __version__
from .algebra import BasisClass, HodgeAlgebra
from .errors import ParseError, ValidationError
from .tables import HodgeTable


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def _parse_rational(text) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ParseError(f"rational must be a 'num/den' string, got {text!r}")
    return Fraction(text)


def _format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def algebra_from_document(doc) -> HodgeAlgebra:
    """Build an algebra from a parsed document; structural problems raise
    ParseError, math violations are left for validate_algebra."""
    if not isinstance(doc, dict):
        raise ParseError("algebra document must be an object")
    try:
        name = doc["name"]
        dim = doc["complex_dimension"]
        basis_doc = doc["basis"]
        unit = doc["unit"]
        fundamental = doc["fundamental"]
        products_doc = doc.get("products", [])
    except KeyError as e:
        raise ParseError(f"missing field {e.args[0]!r}") from None
    if not isinstance(dim, int):
        raise ParseError("complex_dimension must be an integer")
    basis = []
    for entry in basis_doc:
        try:
            basis.append(
                BasisClass(str(entry["id"]), int(entry["degree"]),
                           int(entry["p"]), int(entry["q"]))
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"bad basis entry {entry!r}: {e}") from None
    products = {}
    for entry in products_doc:
        try:
            left, right = str(entry["left"]), str(entry["right"])
            result = entry["result"]
        except (KeyError, TypeError) as e:
            raise ParseError(f"bad product entry {entry!r}: {e}") from None
        if (left, right) in products:
            raise ParseError(f"duplicate product entry ({left},{right})")
        acc = {}
        for item in result:
            if not isinstance(item, list) or len(item) != 2:
                raise ParseError(f"bad product term {item!r}; expected [\"num/den\", id]")
            coeff, target = _parse_rational(item[0]), str(item[1])
            acc[target] = acc.get(target, Fraction(0)) + coeff
        products[(left, right)] = acc
    try:
        return HodgeAlgebra(name, dim, basis, str(unit), str(fundamental), products)
    except ValidationError as e:
        # unknown ids in products are structural, not mathematical
        raise ParseError(str(e)) from None


def load_algebra(path) -> HodgeAlgebra:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from None
    return algebra_from_document(doc)


def algebra_document(alg: HodgeAlgebra) -> dict:
    products = []
    for (left, right), res in sorted(alg._raw_products.items()):
        if not res:
            continue
        products.append({
            "left": left,
            "right": right,
            "result": [[_format_rational(c), target] for target, c in sorted(res.items())],
        })
    return {
        "name": alg.name,
        "complex_dimension": alg.complex_dim,
        "basis": [
            {"id": b.id, "degree": b.degree, "p": b.p, "q": b.q} for b in alg.basis
        ],
        "unit": alg.unit,
        "fundamental": alg.fundamental,
        "products": products,
    }


def dump_algebra(alg: HodgeAlgebra) -> str:
    return json.dumps(algebra_document(alg), indent=2, sort_keys=True) + "\n"


def result_document(table: HodgeTable, algebra_name: str, n: int,
                    graph_spec: str, route: str) -> dict:
    return {
        "metadata": {
            "tool": "confhodge",
            "version": __version__,
            "algebra": algebra_name,
            "n": n,
            "graph": graph_spec,
            "route": route,
            "space": table.kind,
            "N": table.big_n,
        },
        "entries": table.rows(),
    }


def dump_result(table: HodgeTable, algebra_name: str, n: int,
                graph_spec: str, route: str) -> str:
    doc = result_document(table, algebra_name, n, graph_spec, route)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
