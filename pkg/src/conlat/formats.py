"""JSON reading and writing for lattices, semilattices, maps, families and diagrams."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .diagram import Diagram, IndexPoset
from .errors import ConlatError, ParseError
from .lattice import FiniteLattice, LatticeHom, _transitive_closure, builtin, lattice_from_covers
from .semilattice import FiniteJoinSemilattice0, JoinZeroHom


def _labels_in(obj, n):
    raw = obj.get("labels")
    if raw is None:
        return None
    if isinstance(raw, list):
        return [str(x) for x in raw]
    labels = [str(i) for i in range(n)]
    for k, v in raw.items():
        labels[int(k)] = str(v)
    return labels


def _covers_in(obj) -> tuple[int, list]:
    try:
        n = int(obj["size"])
        covers = [(int(a), int(b)) for a, b in obj.get("covers", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad carrier: {exc}") from exc
    return n, covers


def lattice_from_json(obj) -> FiniteLattice:
    """``{"name", "size", "covers", "labels"?}`` or ``{"builtin": "chain(3)"}``."""
    if isinstance(obj, str):
        return builtin(obj)
    if "builtin" in obj:
        return builtin(obj["builtin"])
    n, covers = _covers_in(obj)
    try:
        return lattice_from_covers(n, covers, labels=_labels_in(obj, n), name=obj.get("name"))
    except ConlatError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def lattice_to_json(L: FiniteLattice) -> dict:
    out = {"name": L.name, "size": L.size, "covers": sorted([list(c) for c in L.covers])}
    if L.labels is not None:
        out["labels"] = {str(i): s for i, s in enumerate(L.labels)}
    return out


def semilattice_from_json(obj) -> FiniteJoinSemilattice0:
    n, covers = _covers_in(obj)
    if "zero" not in obj:
        raise ParseError("semilattice needs a \"zero\" field")
    zero = int(obj["zero"])
    leq = _transitive_closure(n, covers)
    if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
        raise ParseError("covers contain a cycle")
    if not leq[zero].all():
        raise ParseError(f"{zero} is not below every element")
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            ub = np.flatnonzero(leq[a] & leq[b])
            least = [u for u in ub if leq[u, ub].all()]
            if len(least) != 1:
                raise ParseError(f"elements {a} and {b} have no join")
            join[a][b] = int(least[0])
    return FiniteJoinSemilattice0(join, zero, labels=_labels_in(obj, n), name=obj.get("name"))


def semilattice_to_json(S: FiniteJoinSemilattice0) -> dict:
    out = {"name": S.name, "size": S.size, "zero": S.zero, "covers": sorted([list(c) for c in S.covers])}
    if S.labels is not None:
        out["labels"] = {str(i): s for i, s in enumerate(S.labels)}
    return out


def carrier_from_json(obj):
    """A semilattice when ``zero`` is present, otherwise a lattice."""
    if isinstance(obj, dict) and "zero" in obj:
        return semilattice_from_json(obj)
    return lattice_from_json(obj)


def carrier_to_json(X) -> dict:
    return semilattice_to_json(X) if isinstance(X, FiniteJoinSemilattice0) else lattice_to_json(X)


def map_to_json(f) -> dict:
    return {"source": f.source.name, "target": f.target.name, "map": list(f.map)}


def parse_arrow_key(key: str) -> tuple[str, str]:
    for sep in ("→", "->"):
        if sep in key:
            p, q = key.split(sep, 1)
            return p.strip(), q.strip()
    raise ParseError(f"arrow key {key!r} is not of the form p→q")


def diagram_from_json(obj) -> Diagram:
    try:
        poset = IndexPoset(obj["poset"]["objects"], [tuple(c) for c in obj["poset"]["covers"]])
        objects = {name: carrier_from_json(c) for name, c in obj["objects"].items()}
        arrows = {}
        for key, m in obj.get("arrows", {}).items():
            p, q = parse_arrow_key(key)
            mapping = m["map"] if isinstance(m, dict) else m
            src, tgt = objects[p], objects[q]
            if isinstance(src, FiniteJoinSemilattice0):
                arrows[(p, q)] = JoinZeroHom(src, tgt, mapping)
            else:
                arrows[(p, q)] = LatticeHom(src, tgt, mapping)
        return Diagram(poset, objects, arrows)
    except ConlatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad diagram: {exc}") from exc


def diagram_to_json(d: Diagram) -> dict:
    return {
        "poset": {"objects": list(d.index.objects), "covers": [list(c) for c in d.index.covers]},
        "objects": {o: carrier_to_json(X) for o, X in d.objects.items()},
        "arrows": {f"{p}→{q}": list(f.map) for (p, q), f in d.arrows.items()},
    }


def family_from_json(obj) -> dict:
    """``{"epsilon", "pairs", "X"?}`` with congruence-lattice indices."""
    try:
        out = {"epsilon": obj.get("epsilon"), "pairs": [(int(a), int(b)) for a, b in obj["pairs"]]}
        if obj.get("X") is not None:
            out["X"] = frozenset(int(i) for i in obj["X"])
        return out
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad family: {exc}") from exc


def load_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
