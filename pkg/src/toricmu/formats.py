"""JSON file formats for fans, polytopes and xi, plus canonical rational text."""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .eq_cohomology import XiClass
from .errors import ToricError
from .multifan import SimplicialMultiFan
from .polytope import HRepPolytope

_RAT = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class InputError(ToricError, ValueError):
    """Malformed or invalid input file; ``location`` names the offending spot."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


def format_rat(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rat(text, where: str = "") -> Fraction:
    """Integers and "p/q" strings only; decimals are rejected."""
    if isinstance(text, bool):
        raise InputError("expected a rational", where)
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, str):
        m = _RAT.match(text)
        if m:
            den = int(m.group(2) or 1)
            if den == 0:
                raise InputError("zero denominator", where)
            return Fraction(int(m.group(1)), den)
    raise InputError(f"expected a rational \"p/q\" or integer, got {text!r}", where)


def _int(x, where) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"expected an integer, got {x!r}", where)
    return x


def _int_list(x, where) -> list[int]:
    if not isinstance(x, list):
        raise InputError("expected a list of integers", where)
    return [_int(a, f"{where}[{i}]") for i, a in enumerate(x)]


def _field(obj, key, where):
    if not isinstance(obj, dict):
        raise InputError("expected an object", where)
    if key not in obj:
        raise InputError(f"missing field '{key}'", where)
    return obj[key]


def load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(exc.strerror or str(exc), str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None


def fan_from_data(data, where: str = "fan") -> SimplicialMultiFan:
    rank = _int(_field(data, "rank", where), f"{where}.rank")
    edges_raw = _field(data, "edges", where)
    cones_raw = _field(data, "cones", where)
    if not isinstance(edges_raw, list) or not isinstance(cones_raw, list):
        raise InputError("edges and cones must be lists", where)
    edges = []
    for i, e in enumerate(edges_raw):
        w = f"{where}.edges[{i}]"
        eid = _field(e, "id", w)
        if not isinstance(eid, str):
            raise InputError("edge id must be a string", w)
        vec = _int_list(_field(e, "vector", w), f"{w}.vector")
        if len(vec) != rank:
            raise InputError(f"vector length {len(vec)} != rank {rank}", f"{w}.vector")
        edges.append((eid, vec))
    cones = []
    for i, c in enumerate(cones_raw):
        w = f"{where}.cones[{i}]"
        names = _field(c, "edges", w)
        if not isinstance(names, list) or not all(isinstance(x, str) for x in names):
            raise InputError("cone edges must be a list of ids", w)
        if len(names) != rank:
            raise InputError(f"cone has {len(names)} edges, expected {rank}", w)
        cones.append((names, _int(c.get("weight", 1), f"{w}.weight")))
    try:
        return SimplicialMultiFan.build(rank, edges, cones)
    except ToricError as exc:
        raise InputError(str(exc), where) from None


def polytope_from_data(data, where: str = "polytope") -> HRepPolytope:
    rank = _int(_field(data, "rank", where), f"{where}.rank")
    facets_raw = _field(data, "facets", where)
    if not isinstance(facets_raw, list) or not facets_raw:
        raise InputError("facets must be a nonempty list", where)
    facets = []
    for i, f in enumerate(facets_raw):
        w = f"{where}.facets[{i}]"
        normal = _int_list(_field(f, "normal", w), f"{w}.normal")
        if len(normal) != rank:
            raise InputError(f"normal length {len(normal)} != rank {rank}", f"{w}.normal")
        if not any(normal):
            raise InputError("zero normal", f"{w}.normal")
        facets.append((normal, parse_rat(_field(f, "offset", w), f"{w}.offset")))
    try:
        return HRepPolytope.from_facets(facets)
    except ToricError as exc:
        raise InputError(str(exc), where) from None


def xi_from_data(data, fan: SimplicialMultiFan, where: str = "xi") -> XiClass:
    if not isinstance(data, dict):
        raise InputError("expected a map edge id -> rational", where)
    missing = [e for e in fan.edge_ids if e not in data]
    if missing:
        raise InputError(f"no value for edge {missing[0]}", where)
    extra = sorted(set(data) - set(fan.edge_ids))
    if extra:
        raise InputError(f"unknown edge {extra[0]}", where)
    return XiClass(fan, tuple(parse_rat(data[e], f"{where}.{e}") for e in fan.edge_ids))


def fan_to_data(fan: SimplicialMultiFan) -> dict:
    return {
        "rank": fan.rank,
        "edges": [{"id": e, "vector": list(v)} for e, v in zip(fan.edge_ids, fan.vectors)],
        "cones": [{"edges": [fan.edge_ids[i] for i in I], "weight": w}
                  for I, w in zip(fan.cones, fan.weights)],
    }


def polytope_to_data(P: HRepPolytope) -> dict:
    return {
        "rank": P.rank,
        "facets": [{"normal": list(v), "offset": format_rat(d)}
                   for v, d in zip(P.normals, P.offsets)],
    }


def xi_to_data(xi: XiClass) -> dict:
    return {e: format_rat(d) for e, d in zip(xi.fan.edge_ids, xi.coeffs)}
