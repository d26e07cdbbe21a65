"""Built-in example inputs: cubes, a square, a segment and the 26-vertex
bordism polytope with an equalized action and a singular Chow quotient."""

from __future__ import annotations

import hashlib
from itertools import product

# Columns are vertices in Z^4; the action is the projection to the 4th coordinate.
BRUS_MATRIX = (
    (0, 0, 0, 0, 0, -1, -2, -2, -2, -2, -2, -2, -3, -5, 0, 0, 0, 0, 0, -1, -3, -5, -6, -6, -6, -6),
    (0, 0, -1, -4, -4, 0, 0, 0, -1, -3, -4, -4, -4, -4, 0, 0, -1, -4, -4, 0, -4, -4, 0, 0, -4, -4),
    (0, -6, 0, -3, -6, 0, -1, -6, 0, 0, -1, -6, 0, 0, 0, -6, 0, -3, -6, 0, 0, 0, -5, -6, -1, -6),
    (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 3, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4),
)

BRUS_VERTICES = tuple(tuple(row[c] for row in BRUS_MATRIX) for c in range(26))
BRUS_NU = (0, 0, 0, 1)

# sha256 of the matrix rows written as comma-separated integers, one row per line
BRUS_SHA256 = "064156e2d9635fff7141d62d58d64bce35be37bd38b85518395fb940f9765dac"


def brus_checksum() -> str:
    text = "\n".join(",".join(map(str, row)) for row in BRUS_MATRIX)
    return hashlib.sha256(text.encode()).hexdigest()


def cube_vertices(n: int) -> list[tuple[int, ...]]:
    if n < 1:
        raise ValueError("cube needs n >= 1")
    return [tuple(p) for p in product((0, 1), repeat=n)]


def example_document(name: str, n: int = 3) -> dict:
    """PolytopeDocument for a named example."""
    if name == "cube":
        verts = cube_vertices(n)
        nu = (1,) * n
        title = f"cube{n}"
    elif name == "brus":
        verts, nu, title = BRUS_VERTICES, BRUS_NU, "brus"
    elif name == "segment":
        verts, nu, title = [(0,), (1,)], (1,), "segment"
    elif name == "square":
        verts, nu, title = [(0, 0), (1, 0), (0, 1), (1, 1)], (1, 1), "square"
    else:
        raise KeyError(f"unknown example {name!r}")
    return {
        "schema_version": "1",
        "name": title,
        "ambient_dim": len(nu),
        "vertices": [[str(x) for x in v] for v in verts],
        "nu": [str(x) for x in nu],
    }


EXAMPLE_NAMES = ("cube", "brus", "segment", "square")
