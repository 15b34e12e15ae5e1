"""Named test fans and polytopes used by the CLI and the test suite."""
from __future__ import annotations

from dataclasses import dataclass

from .eq_cohomology import XiClass
from .multifan import SimplicialMultiFan
from .polytope import HRepPolytope, normal_fan


@dataclass(frozen=True, eq=False)
class Fixture:
    name: str
    fan: SimplicialMultiFan
    xi: XiClass | None
    polytope: HRepPolytope | None = None


def _from_polytope(name, facets, ids=None) -> Fixture:
    P = HRepPolytope.from_facets(facets)
    fan, xi = normal_fan(P, ids)
    return Fixture(name, fan, xi, P)


def unit_square() -> Fixture:
    return _from_polytope("F1", [((1, 0), 1), ((0, 1), 1), ((-1, 0), 0), ((0, -1), 0)],
                          ["e1", "e2", "-e1", "-e2"])


def standard_simplex() -> Fixture:
    return _from_polytope("F2'", [((-1, 0), 0), ((0, -1), 0), ((1, 1), 1)])


def triangle() -> Fixture:
    """conv{(0,0), (2,0), (0,1)}; the vertex (2,0) has a Z/2 normal cone."""
    return _from_polytope("F3", [((-1, 0), 0), ((0, -1), 0), ((1, 2), 2)])


def tetrahedron() -> Fixture:
    """conv{0, 2e1, e2, e3}: two singular vertices."""
    return _from_polytope("T3", [((-1, 0, 0), 0), ((0, -1, 0), 0), ((0, 0, -1), 0),
                                 ((1, 2, 2), 2)])


def unit_cube() -> Fixture:
    facets = []
    for r in range(3):
        e = [0, 0, 0]
        e[r] = 1
        facets.append((tuple(e), 1))
        facets.append((tuple(-x for x in e), 0))
    return _from_polytope("C3", facets)


def projective_plane() -> Fixture:
    fan = SimplicialMultiFan.build(
        2, [("a", (1, 0)), ("b", (0, 1)), ("c", (-1, -1))],
        [(("a", "b"), 1), (("b", "c"), 1), (("a", "c"), 1)])
    return Fixture("F2", fan, XiClass(fan, (0, 0, 1)))


def doubled_line() -> Fixture:
    """Rank-1 multi-fan: edges +1 and -1, each cone of weight 2."""
    fan = SimplicialMultiFan.build(1, [("p", (1,)), ("m", (-1,))],
                                   [(("p",), 2), (("m",), 2)])
    return Fixture("MF1", fan, XiClass(fan, (1, 1)))


def half_line() -> Fixture:
    fan = SimplicialMultiFan.build(1, [("p", (1,))], [(("p",), 1)])
    return Fixture("HALF", fan, None)


FIXTURES = {
    "F1": unit_square,
    "square": unit_square,
    "F2'": standard_simplex,
    "F2p": standard_simplex,
    "simplex": standard_simplex,
    "F3": triangle,
    "triangle": triangle,
    "T3": tetrahedron,
    "C3": unit_cube,
    "cube": unit_cube,
    "F2": projective_plane,
    "P2": projective_plane,
    "MF1": doubled_line,
    "HALF": half_line,
}

POLYTOPE_FIXTURES = ("F1", "F2'", "F3")


def get(name: str) -> Fixture:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name}") from None
