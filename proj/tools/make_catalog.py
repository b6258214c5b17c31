"""Regenerates catalog/*.json and the rejection fixtures in tests/data."""

import json
import math
import re
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def hexagon(r):
    return [[r * math.cos(k * math.pi / 3), r * math.sin(k * math.pi / 3)] for k in range(6)]


def hex_disk():
    verts = [[0.0, 0.0]] + hexagon(1.0)
    tris = [[0, k, k % 6 + 1] for k in range(1, 7)]
    return verts, tris


def hex_annulus():
    verts = hexagon(1.0) + hexagon(2.0)
    tris = []
    for k in range(6):
        a, b = k, (k + 1) % 6
        tris.append([a, b, 6 + a])
        tris.append([b, 6 + b, 6 + a])
    return verts, tris


def shift_perm(shift):
    # Center fixed, rim vertex k -> k + shift.
    return [0] + [1 + (k + shift) % 6 for k in range(6)]


UNIT_CIRCLE = {"circles": [{"center": [0, 0], "radius": 1, "outer": True}]}
Z3 = {"generators": [{"rotation_turns": "1/3", "vertex_perm": shift_perm(2)}]}
Z2 = {"generators": [{"matrix": [[-1, 0], [0, -1]], "vertex_perm": shift_perm(3)}]}


def disk(name, description, field, group=None, checks=None, expected=None):
    verts, tris = hex_disk()
    s = {
        "schema": 1,
        "name": name,
        "description": description,
        "dim": 2,
        "complex": {"vertices": verts, "simplices": tris},
        "field": field,
        "boundary_param": UNIT_CIRCLE,
    }
    if group:
        s["group"] = group
    if checks:
        s["checks"] = checks
    if expected:
        s["expected"] = expected
    return s


NO_DOUBLE = ["theorem", "expected", "morse", "winding", "chi", "inertia"]

CATALOG = [
    {
        "schema": 1,
        "name": "interval_outflow",
        "description": "Y = d/dx on [0, 1]; leaves through x = 1.",
        "dim": 1,
        "complex": {"vertices": [[0.0], [0.5], [1.0]], "simplices": [[0, 1], [1, 2]]},
        "field": ["1"],
        "expected": {"lhs": "0", "chi_relative": "-1", "chain_terms": ["1"]},
    },
    disk(
        "disk_trivial_inward",
        "Inward radial field on the unit disk.",
        ["-x1", "-x2"],
        checks=NO_DOUBLE,
        expected={"lhs": "1", "chi_relative": "1", "chain_terms": []},
    ),
    disk(
        "disk_z3_radial",
        "Outward radial field on the unit disk modulo rotation by 2pi/3.",
        ["x1", "x2"],
        group=Z3,
        checks=NO_DOUBLE,
        expected={"lhs": "1/3", "chi_relative": "1/3", "chain_terms": ["0"]},
    ),
    disk(
        "disk_z2_saddle",
        "Saddle (x, -y) on the unit disk modulo -I.",
        ["x1", "-x2"],
        group=Z2,
        expected={"lhs": "-1/2", "chi_relative": "1/2", "chain_terms": ["-1"]},
    ),
    disk(
        "disk_trivial_saddle",
        "Saddle (x, -y) on the unit disk.",
        ["x1", "-x2"],
        expected={"lhs": "-1", "chi_relative": "1", "chain_terms": ["-2"]},
    ),
    disk(
        "disk_z3_twisted",
        "z + conj(z)^2 / 2 on the unit disk modulo rotation by 2pi/3; six boundary zeros of Z_h.",
        ["x1 + (x1^2 - x2^2)/2", "x2 - x1*x2"],
        group=Z3,
        expected={"lhs": "1/3", "chi_relative": "1/3", "chain_terms": ["0"]},
    ),
]


def annulus(name, description, field, expected):
    verts, tris = hex_annulus()
    return {
        "schema": 1,
        "name": name,
        "description": description,
        "dim": 2,
        "complex": {"vertices": verts, "simplices": tris},
        "field": field,
        "boundary_param": {
            "circles": [
                {"center": [0, 0], "radius": 2, "outer": True},
                {"center": [0, 0], "radius": 1, "outer": False},
            ]
        },
        "expected": expected,
    }


CATALOG.append(
    annulus(
        "annulus_trivial_rotational",
        "Rotation plus radial outflow, (x - y, x + y), on 1 <= r <= 2.",
        ["x1 - x2", "x1 + x2"],
        {"lhs": "0", "chi_relative": "0", "chain_terms": ["0"]},
    )
)
CATALOG.append(
    annulus(
        "annulus_trivial_spiral",
        "Spiral source centred at (0, 3/2) on 1 <= r <= 2.",
        ["x1/2 - (x2 - 3/2)", "x1 + (x2 - 3/2)/2"],
        {"lhs": "1", "chi_relative": "0", "chain_terms": ["-2", "3"]},
    )
)

FIXTURES = {
    "disk_trivial_rotational": disk("disk_trivial_rotational", "Rotation (-y, x): tangent along the whole boundary.",
                                    ["-x2", "x1"]),
    "disk_reflection": disk(
        "disk_reflection",
        "Reflection across the x-axis: fixed line of codimension 1.",
        ["x1", "-x2"],
        group={"generators": [{"matrix": [[1, 0], [0, -1]], "vertex_perm": [0, 1, 6, 5, 4, 3, 2]}]},
    ),
}


def write(path, data):
    data = {k: v for k, v in data.items() if v is not None}
    text = json.dumps(data, indent=2)
    # Innermost lists of scalars on one line.
    text = re.sub(r"\[\s*([^\[\]{}]*?)\s*\]", lambda m: "[" + re.sub(r"\s*\n\s*", " ", m.group(1)) + "]", text)
    path.write_text(text + "\n")


def main():
    for s in CATALOG:
        write(ROOT / "catalog" / f"{s['name']}.json", s)
    for name, s in FIXTURES.items():
        write(ROOT / "tests" / "data" / f"{name}.json", s)
    (ROOT / "tests" / "data" / "malformed.json").write_text('{"schema": 1, "name": "broken", "dim": 2,\n')


if __name__ == "__main__":
    main()
