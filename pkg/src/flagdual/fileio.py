"""JSON file format for triangulations with decorations.

    {
      "tetrahedra": N,
      "pairings": [{"tetA": n, "faceA": [i, j, k],
                    "tetB": n, "faceB": [i', j', k'],
                    "map": [[i, i'], [j, j'], [k, k']]}, ...],
      "decoration": {"mode": "coords" | "flags", "data": [...]}
    }

Vertex labels run 1..4 and faceA is oriented as the boundary of tetA.
Scalars use the shared encoding: exact values as strings "a/b" or
"a/b+c/d*i", float values as two-element [re, im] arrays.  Loading with
backend="exact" rejects files containing float literals; "float"
coerces exact literals; "auto" keeps whatever the file uses.
"""

from __future__ import annotations

import json

from .complexes import (DecoratedComplex, Decoration, FacePairing,
                        IdealTriangulation)
from .errors import FlagdualError, ParseError
from .flags import Flag, FlagTuple
from .scalars import scalar_from_json, scalar_to_json
from .tetra import TetraCoords


def _flag_from_json(data, backend):
    try:
        point = [scalar_from_json(v, backend) for v in data["point"]]
        line = [scalar_from_json(v, backend) for v in data["line"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed flag record: {data!r}") from exc
    return Flag(point, line)


def flag_to_json(flag: Flag):
    return {"point": [scalar_to_json(c) for c in flag.point],
            "line": [scalar_to_json(c) for c in flag.line]}


def load_complex(data: dict, backend: str = "auto") -> DecoratedComplex:
    if backend not in ("auto", "exact", "float"):
        raise ParseError(f"unknown backend {backend!r}")
    try:
        n = int(data["tetrahedra"])
        pairing_data = data.get("pairings", [])
        deco = data["decoration"]
        mode = deco["mode"]
        items = deco["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed complex file: {exc}") from exc
    triangulation = IdealTriangulation(
        n, [FacePairing.from_json(p) for p in pairing_data])
    if len(items) != n:
        raise ParseError(
            f"decoration has {len(items)} entries for {n} tetrahedra")
    if mode == "coords":
        try:
            coords = [TetraCoords.from_json(item, backend) for item in items]
        except (KeyError, TypeError, IndexError) as exc:
            raise ParseError(f"malformed coordinate record: {exc}") from exc
        except ValueError as exc:
            if isinstance(exc, FlagdualError):
                raise  # domain errors (bad values) keep their meaning
            raise ParseError(f"malformed coordinate record: {exc}") from exc
        decoration = Decoration(coords)
    elif mode == "flags":
        tuples = []
        for item in items:
            if len(item) != 4:
                raise ParseError("each tetrahedron needs exactly four flags")
            tuples.append(FlagTuple([_flag_from_json(f, backend)
                                     for f in item]))
        decoration = Decoration.from_flags(tuples)
    else:
        raise ParseError(f"unknown decoration mode {mode!r}")
    return DecoratedComplex(triangulation, decoration)


def dump_complex(dc: DecoratedComplex) -> dict:
    return {
        "tetrahedra": dc.triangulation.n,
        "pairings": [p.to_json() for p in dc.triangulation.pairings],
        "decoration": {
            "mode": "coords",
            "data": [c.to_json() for c in dc.coords],
        },
    }


def dump_complex_flags(dc: DecoratedComplex) -> dict:
    """Variant keeping the flag data when the decoration carries it."""
    if dc.decoration.flag_tuples is None:
        return dump_complex(dc)
    return {
        "tetrahedra": dc.triangulation.n,
        "pairings": [p.to_json() for p in dc.triangulation.pairings],
        "decoration": {
            "mode": "flags",
            "data": [[flag_to_json(f) for f in t]
                     for t in dc.decoration.flag_tuples],
        },
    }


def read_complex(path, backend: str = "auto") -> DecoratedComplex:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be a JSON object")
    return load_complex(data, backend)


def write_complex(path, dc: DecoratedComplex, keep_flags=False):
    data = dump_complex_flags(dc) if keep_flags else dump_complex(dc)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")


def complex_to_json_str(dc: DecoratedComplex) -> str:
    return json.dumps(dump_complex(dc), indent=1) + "\n"
