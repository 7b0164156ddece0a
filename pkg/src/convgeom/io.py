"""JSON file formats for lattices, posets, semilattices and closure systems.

Lattice / poset: ``{"elements": [names], "covers": [[i, j], ...]}`` (``i``
covered by ``j``) or ``{"leq": [[i, j], ...]}``.  Semilattices may instead
give ``{"meet_table": [[...], ...]}``.  Closure systems:
``{"ground": [names], "closed": [[indices], ...]}`` or
``{"ground": [...], "implications": [{"if": [indices], "then": index}, ...]}``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .bits import iter_bits
from .closure import ClosureSystem, make_closure
from .errors import ParseError
from .generators import FinitePoset, MeetSemilattice, make_poset, make_semilattice, semilattice_of_poset
from .lattice import FiniteLattice, build_lattice


def read_json(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    return data


def _elements_and_pairs(data: dict) -> tuple[list[str], list[tuple[int, int]], str]:
    if "covers" in data:
        key, mode = "covers", "covers"
    elif "leq" in data:
        key, mode = "leq", "order"
    else:
        raise ParseError("expected a 'covers' or 'leq' list")
    try:
        pairs = [(int(i), int(j)) for i, j in data[key]]
    except (TypeError, ValueError):
        raise ParseError(f"'{key}' must be a list of [i, j] pairs") from None
    if "elements" in data:
        names = [str(x) for x in data["elements"]]
    else:
        n = max((max(p) for p in pairs), default=-1) + 1
        names = [str(i) for i in range(max(n, 1))]
    return names, pairs, mode


def lattice_from_dict(data: dict) -> FiniteLattice:
    names, pairs, mode = _elements_and_pairs(data)
    return build_lattice(names, pairs, mode)


def lattice_to_dict(L: FiniteLattice) -> dict:
    return {"elements": list(L.names), "covers": [[a, b] for a, b in L.covers()]}


def poset_from_dict(data: dict) -> FinitePoset:
    names, pairs, _ = _elements_and_pairs(data)
    return make_poset(names, pairs)


def semilattice_from_dict(data: dict) -> MeetSemilattice:
    if "meet_table" in data:
        table = data["meet_table"]
        names = data.get("elements") or [str(i) for i in range(len(table))]
        return make_semilattice(names, table)
    S = semilattice_of_poset(poset_from_dict(data))
    if S is None:
        raise ParseError("poset is not a meet semilattice")
    return S


def closure_from_dict(data: dict) -> ClosureSystem:
    if "ground" not in data:
        raise ParseError("closure-system file needs 'ground'")
    ground = [str(g) for g in data["ground"]]
    if "closed" in data:
        return make_closure(ground, family=[[int(i) for i in S] for S in data["closed"]])
    if "implications" in data:
        try:
            imps = [([int(i) for i in imp["if"]], int(imp["then"])) for imp in data["implications"]]
        except (KeyError, TypeError, ValueError):
            raise ParseError("implications must look like {'if': [...], 'then': k}") from None
        return make_closure(ground, implications=imps)
    raise ParseError("closure-system file needs 'closed' or 'implications'")


def closure_to_dict(cs: ClosureSystem) -> dict:
    """Always written as the explicit family of closed sets."""
    return {"ground": list(cs.ground), "closed": [list(iter_bits(A)) for A in cs.closed_sets()]}


def is_closure_file(data: dict) -> bool:
    return "ground" in data


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_default)


def _default(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if hasattr(o, "to_dict"):
        return o.to_dict()
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


