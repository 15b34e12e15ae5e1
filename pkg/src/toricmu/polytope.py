"""Simple lattice polytopes in H-representation and the brute-force oracles.

``P = {u : <u, v_i> <= d_i}``.  The oracles here (box-scan counting,
interpolation, triangulated face volumes) never touch the cohomological
machinery, so they can check it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import ceil, factorial, floor, gcd
from typing import Sequence

from .eq_cohomology import XiClass
from .errors import DegenerateError, FanError
from .exact_core import annihilator, coordinates, det, dot, saturate, solve
from .multifan import Simplex, SimplicialMultiFan, is_complete


@dataclass(frozen=True)
class VertexData:
    point: tuple[Fraction, ...]
    facets: Simplex


@dataclass(frozen=True, eq=False)
class HRepPolytope:
    rank: int
    normals: tuple[tuple[int, ...], ...]
    offsets: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.normals) != len(self.offsets):
            raise FanError("one offset per facet normal")
        for v in self.normals:
            if len(v) != self.rank:
                raise FanError("normal length differs from rank")
            g = 0
            for x in v:
                g = gcd(g, x)
            if g != 1:
                raise FanError(f"normal {v} is not primitive")
        object.__setattr__(self, "offsets", tuple(Fraction(d) for d in self.offsets))

    @classmethod
    def from_facets(cls, facets: Sequence[tuple[Sequence[int], object]]) -> "HRepPolytope":
        rank = len(facets[0][0])
        return cls(rank, tuple(tuple(int(x) for x in v) for v, _ in facets),
                   tuple(Fraction(d) for _, d in facets))

    def contains(self, u: Sequence, nu=1) -> bool:
        return all(dot(u, v) <= nu * d for v, d in zip(self.normals, self.offsets))

    @cached_property
    def vertices(self) -> list[VertexData]:
        """Vertex enumeration by solving every n-subset of facet equations."""
        n = self.rank
        found: dict = {}
        for sub in combinations(range(len(self.normals)), n):
            rows = [self.normals[i] for i in sub]
            if det(rows) == 0:
                continue
            u = tuple(solve(rows, [self.offsets[i] for i in sub]))
            if u in found or not self.contains(u):
                continue
            tight = tuple(i for i, (v, d) in enumerate(zip(self.normals, self.offsets))
                          if dot(u, v) == d)
            if len(tight) != n:
                raise FanError("polytope not simple")
            found[u] = VertexData(u, tight)
        if not found:
            raise FanError("not a polytope")
        return sorted(found.values(), key=lambda vd: vd.point)

    @cached_property
    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for vd in self.vertices for x in vd.point)

    def bounding_box(self, nu=1) -> list[range]:
        pts = [vd.point for vd in self.vertices]
        return [range(floor(min(p[r] for p in pts) * nu), ceil(max(p[r] for p in pts) * nu) + 1)
                for r in range(self.rank)]


def normal_fan(P: HRepPolytope, ids: Sequence[str] | None = None
               ) -> tuple[SimplicialMultiFan, XiClass]:
    """Normal fan (edges = facet normals, cones = vertex facet sets) and xi."""
    ids = tuple(ids) if ids is not None else tuple(f"f{i}" for i in range(len(P.normals)))
    verts = P.vertices
    try:
        fan = SimplicialMultiFan(P.rank, ids, P.normals,
                                 tuple(vd.facets for vd in verts), (1,) * len(verts))
    except FanError as exc:
        if "dangling" in str(exc):
            raise FanError("redundant facet inequality") from None
        raise
    if not is_complete(fan):
        raise FanError("not a polytope")
    return fan, XiClass(fan, P.offsets)


def brute_count(P: HRepPolytope, nu: int = 1, face: Simplex = ()) -> int:
    """Lattice points of nu*P (or of its face cut out by the facets in ``face``)
    by scanning the integer bounding box."""
    return sum(1 for u in product(*P.bounding_box(nu))
               if P.contains(u, nu)
               and all(dot(u, P.normals[k]) == nu * P.offsets[k] for k in face))


def interpolate(values: Sequence[tuple[int, object]], degree: int) -> list[Fraction]:
    """Coefficients (highest power first) of the polynomial through the points."""
    rows = [[Fraction(x) ** (degree - j) for j in range(degree + 1)] for x, _ in values]
    return solve(rows, [Fraction(y) for _, y in values])


def ehrhart_interpolate(P: HRepPolytope) -> list[Fraction]:
    """a_0..a_n with #(nu P) = sum_k a_k nu^(n-k), from counts at nu = 1..n+1."""
    n = P.rank
    return interpolate([(nu, brute_count(P, nu)) for nu in range(1, n + 2)], n)


# --------------------------------------------------------------------------
# lattice-normalized face volumes


def face_vertices(P: HRepPolytope, J: Simplex) -> list[tuple[Fraction, ...]]:
    js = set(J)
    return [vd.point for vd in P.vertices if js <= set(vd.facets)]


def _triangulate(P: HRepPolytope, J: Simplex) -> list[list[tuple[Fraction, ...]]]:
    """Pulling triangulation of the face P_J, as vertex lists."""
    verts = face_vertices(P, J)
    if len(J) == P.rank:
        return [[verts[0]]]
    apex = verts[0]
    js = set(J)
    facets = sorted({i for vd in P.vertices if js <= set(vd.facets) for i in vd.facets} - js)
    out = []
    for i in facets:
        sub = tuple(sorted(js | {i}))
        sv = face_vertices(P, sub)
        if not sv or apex in sv:
            continue
        for simplex in _triangulate(P, sub):
            out.append([apex] + simplex)
    return out


def face_volume_geometric(P: HRepPolytope, J: Simplex) -> Fraction:
    """Volume of P_J normalized by the lattice M ∩ aff(P_J)."""
    J = tuple(sorted(J))
    verts = face_vertices(P, J)
    if not verts:
        raise FanError("empty face")
    d = P.rank - len(J)
    if d == 0:
        return Fraction(1)
    direction = annihilator([P.normals[j] for j in J], P.rank)
    lattice = saturate(direction, P.rank)
    total = Fraction(0)
    for simplex in _triangulate(P, J):
        base = simplex[0]
        coords = [coordinates(lattice, [a - b for a, b in zip(p, base)]) for p in simplex[1:]]
        total += abs(det(coords))
    if total == 0:
        raise DegenerateError("face is not full-dimensional in its affine hull")
    return total / factorial(d)
