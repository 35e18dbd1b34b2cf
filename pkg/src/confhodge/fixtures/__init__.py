"""Bundled fixture algebras.

The five serialised fixtures (point, p1, elliptic, genus2, p1xp1) are the
cohomology rings of a point, the projective line, an elliptic curve, a
genus-2 curve and P1 x P1, with their standard bases.  The constructors
here are the source of truth; the JSON files in this directory are
generated from them and shipped for CLI use.

acyclic_extension is a test-only contractible cdga (nonzero differential,
no Poincare duality); it exercises the generic total-complex route and is
deliberately not serialised.
"""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

from ..algebra import BasisClass, HodgeAlgebra

FIXTURE_NAMES = ("point", "p1", "elliptic", "genus2", "p1xp1")


def _with_unit(unit: str, others: list[str], table: dict) -> dict:
    """Add the unit row and column to a sparse product table."""
    out = {(unit, unit): {unit: Fraction(1)}}
    for x in others:
        out[(unit, x)] = {x: Fraction(1)}
        out[(x, unit)] = {x: Fraction(1)}
    out.update(table)
    return out


def point() -> HodgeAlgebra:
    return HodgeAlgebra(
        "point", 0,
        [BasisClass("1", 0, 0, 0)],
        "1", "1",
        {("1", "1"): {"1": Fraction(1)}},
    )


def p1() -> HodgeAlgebra:
    return HodgeAlgebra(
        "p1", 1,
        [BasisClass("1", 0, 0, 0), BasisClass("h", 2, 1, 1)],
        "1", "h",
        _with_unit("1", ["h"], {}),
    )


def elliptic() -> HodgeAlgebra:
    return HodgeAlgebra(
        "elliptic", 1,
        [
            BasisClass("1", 0, 0, 0),
            BasisClass("a", 1, 1, 0),
            BasisClass("b", 1, 0, 1),
            BasisClass("t", 2, 1, 1),
        ],
        "1", "t",
        _with_unit("1", ["a", "b", "t"], {
            ("a", "b"): {"t": Fraction(1)},
            ("b", "a"): {"t": Fraction(-1)},
        }),
    )


def genus2() -> HodgeAlgebra:
    return HodgeAlgebra(
        "genus2", 1,
        [
            BasisClass("1", 0, 0, 0),
            BasisClass("a1", 1, 1, 0),
            BasisClass("a2", 1, 1, 0),
            BasisClass("b1", 1, 0, 1),
            BasisClass("b2", 1, 0, 1),
            BasisClass("t", 2, 1, 1),
        ],
        "1", "t",
        _with_unit("1", ["a1", "a2", "b1", "b2", "t"], {
            ("a1", "b1"): {"t": Fraction(1)},
            ("b1", "a1"): {"t": Fraction(-1)},
            ("a2", "b2"): {"t": Fraction(1)},
            ("b2", "a2"): {"t": Fraction(-1)},
        }),
    )


def p1xp1() -> HodgeAlgebra:
    return HodgeAlgebra(
        "p1xp1", 2,
        [
            BasisClass("1", 0, 0, 0),
            BasisClass("h1", 2, 1, 1),
            BasisClass("h2", 2, 1, 1),
            BasisClass("k", 4, 2, 2),
        ],
        "1", "k",
        _with_unit("1", ["h1", "h2", "k"], {
            ("h1", "h2"): {"k": Fraction(1)},
            ("h2", "h1"): {"k": Fraction(1)},
        }),
    )


def acyclic_extension() -> HodgeAlgebra:
    """Contractible two-generator cdga: d(x) = y kills everything above
    degree 0.  Fails Poincare duality on purpose."""
    return HodgeAlgebra(
        "acyclic_extension", 1,
        [
            BasisClass("1", 0, 0, 0),
            BasisClass("x", 1, 1, 0),
            BasisClass("y", 2, 1, 1),
        ],
        "1", "y",
        _with_unit("1", ["x", "y"], {}),
        differential={"x": {"y": Fraction(1)}},
    )


_BUILDERS = {
    "point": point,
    "p1": p1,
    "elliptic": elliptic,
    "genus2": genus2,
    "p1xp1": p1xp1,
}


def build(name: str) -> HodgeAlgebra:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; have {sorted(_BUILDERS)}") from None


def path(name: str):
    """Filesystem path of a bundled fixture's JSON document."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {sorted(FIXTURE_NAMES)}")
    return resources.files(__package__) / f"{name}.json"
