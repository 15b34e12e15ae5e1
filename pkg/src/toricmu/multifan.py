"""Simplicial multi-fans: validation, faces, degree, completeness,
projections and the finite groups G_I."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .cyclo_series import CycNum, root_of_unity
from .errors import DegenerateError, FanError, GenericityError
from .exact_core import (
    det,
    dot,
    dual_basis,
    inverse,
    quotient_group,
    unimodular_completion,
)

Simplex = tuple  # sorted tuple of edge indices


@dataclass(frozen=True, eq=False)
class SimplicialMultiFan:
    """Delta = (Sigma, C, w) together with the edge vectors V.

    Edges are addressed by index (declaration order); ``edge_ids`` keeps the
    user-facing names.  ``cones`` are the maximal simplices as sorted index
    tuples; Sigma is their subset closure.
    """

    rank: int
    edge_ids: tuple[str, ...]
    vectors: tuple[tuple[int, ...], ...]
    cones: tuple[Simplex, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        n = self.rank
        if len(set(self.edge_ids)) != len(self.edge_ids):
            raise FanError("duplicate edge id")
        if len(self.vectors) != len(self.edge_ids):
            raise FanError("edge ids and vectors differ in length")
        for eid, v in zip(self.edge_ids, self.vectors):
            if len(v) != n:
                raise FanError(f"edge {eid}: vector length {len(v)} != rank {n}")
            if not any(v):
                raise FanError(f"edge {eid}: zero vector")
        if not self.cones:
            raise FanError("no maximal cones")
        if len(self.weights) != len(self.cones):
            raise FanError("one weight per maximal cone required")
        if len(set(self.cones)) != len(self.cones):
            raise FanError("duplicate maximal cone")
        used = set()
        for I in self.cones:
            if len(I) != n or len(set(I)) != n or tuple(sorted(I)) != I:
                raise FanError(f"cone {self.names(I)} must list {n} distinct edges")
            if any(not 0 <= i < len(self.vectors) for i in I):
                raise FanError("cone refers to an unknown edge")
            if n and det([self.vectors[i] for i in I]) == 0:
                raise DegenerateError(f"degenerate cone {self.names(I)}")
            used.update(I)
        dangling = [self.edge_ids[i] for i in range(len(self.vectors)) if i not in used]
        if dangling:
            raise FanError(f"dangling edge {dangling[0]}")

    @classmethod
    def build(cls, rank: int, edges: Sequence[tuple[str, Sequence[int]]],
              cones: Iterable[tuple[Iterable[str], int]]) -> "SimplicialMultiFan":
        ids = tuple(e[0] for e in edges)
        index = {eid: i for i, eid in enumerate(ids)}
        cone_list, weights = [], []
        for names, w in cones:
            try:
                cone_list.append(tuple(sorted(index[x] for x in names)))
            except KeyError as exc:
                raise FanError(f"cone refers to unknown edge {exc.args[0]}") from None
            weights.append(int(w))
        return cls(rank, ids, tuple(tuple(int(x) for x in e[1]) for e in edges),
                   tuple(cone_list), tuple(weights))

    # ---- combinatorics --------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.vectors)

    def names(self, J: Iterable[int]) -> str:
        return "{" + ",".join(self.edge_ids[i] for i in J) + "}"

    def index_of(self, eid: str) -> int:
        try:
            return self.edge_ids.index(eid)
        except ValueError:
            raise FanError(f"unknown edge {eid}") from None

    def simplex(self, ids: Iterable[str]) -> Simplex:
        return tuple(sorted(self.index_of(x) for x in ids))

    @cached_property
    def faces(self) -> frozenset:
        out = set()
        for I in self.cones:
            for k in range(len(I) + 1):
                out.update(combinations(I, k))
        return frozenset(out)

    def faces_of_dim(self, k: int) -> list[Simplex]:
        return sorted(J for J in self.faces if len(J) == k)

    def is_face(self, J: Iterable[int]) -> bool:
        return tuple(sorted(J)) in self.faces

    def is_face_support(self, exps: Sequence[int]) -> bool:
        return tuple(i for i, a in enumerate(exps) if a) in self.faces

    def cones_containing(self, K: Simplex) -> list[Simplex]:
        ks = set(K)
        return [I for I in self.cones if ks <= set(I)]

    def containing_cone(self, J: Simplex) -> Simplex:
        for I in self.cones:
            if set(J) <= set(I):
                return I
        raise FanError(f"{self.names(J)} is not a simplex of the fan")

    def link_edges(self, K: Simplex) -> list[int]:
        ks = set(K)
        return sorted({i for I in self.cones_containing(K) for i in I if i not in ks})

    @cached_property
    def _weight(self) -> dict:
        return dict(zip(self.cones, self.weights))

    def weight(self, I: Simplex) -> int:
        return self._weight[I]

    # ---- per-cone linear data -------------------------------------------

    @cached_property
    def _duals(self) -> dict:
        return {I: dual_basis([self.vectors[i] for i in I]) for I in self.cones}

    def duals(self, I: Simplex) -> list[tuple[Fraction, ...]]:
        """``u_i^I`` for ``i`` in ``I`` (in the order of ``I``)."""
        return self._duals[I]

    def dual(self, I: Simplex, i: int) -> tuple[Fraction, ...]:
        return self._duals[I][I.index(i)]

    @cached_property
    def _h_orders(self) -> dict:
        return {}

    def h_group(self, J: Simplex):
        cache = self._h_orders
        if J not in cache:
            cache[J] = quotient_group([self.vectors[i] for i in J], self.rank)
        return cache[J]

    def h_order(self, J: Simplex) -> int:
        return self.h_group(J).order

    # ---- genericity -----------------------------------------------------

    @cached_property
    def walls(self) -> list[Simplex]:
        return self.faces_of_dim(self.rank - 1) if self.rank else []

    def is_generic(self, v: Sequence) -> bool:
        """``v`` avoids the span of every cone of dimension < n."""
        if self.rank == 0:
            return True
        return all(det([self.vectors[i] for i in J] + [list(v)]) != 0 for J in self.walls)

    def generic_vector(self, seed: int = 0, bound: int = 4) -> tuple[int, ...]:
        """Seeded integer vector off all walls; the box doubles on rejection."""
        rng = random.Random(seed)
        while True:
            v = tuple(rng.randint(-bound, bound) for _ in range(self.rank))
            if any(v) and self.is_generic(v):
                return v
            bound *= 2


@dataclass(frozen=True)
class Diagnostics:
    face_counts: tuple[int, ...]
    complete: bool
    todd_genus: int | None


def validate(fan: SimplicialMultiFan) -> Diagnostics:
    counts = tuple(len(fan.faces_of_dim(k)) for k in range(fan.rank + 1))
    complete = is_complete(fan)
    return Diagnostics(counts, complete, todd_genus(fan) if complete else None)


def degree(fan: SimplicialMultiFan, v: Sequence) -> int:
    """Weighted number of maximal cones containing the generic vector ``v``."""
    if not fan.is_generic(v):
        raise GenericityError("vector on a wall")
    total = 0
    for I, w in zip(fan.cones, fan.weights):
        if all(dot(u, v) > 0 for u in fan.duals(I)):
            total += w
    return total


def _balanced(fan: SimplicialMultiFan) -> bool:
    """Pre-completeness of a rank-1 multi-fan: weights agree on both sides."""
    plus = sum(w for I, w in zip(fan.cones, fan.weights) if fan.vectors[I[0]][0] > 0)
    minus = sum(w for I, w in zip(fan.cones, fan.weights) if fan.vectors[I[0]][0] < 0)
    return plus == minus


def is_complete(fan: SimplicialMultiFan) -> bool:
    if fan.rank == 0:
        return True
    # balanced walls force d_v to be locally constant across every wall
    return all(_balanced(project(fan, J).fan) for J in fan.walls)


def todd_genus(fan: SimplicialMultiFan) -> int:
    if not is_complete(fan):
        raise FanError("Todd genus needs a complete multi-fan")
    if fan.rank == 0:
        return sum(fan.weights)
    return degree(fan, fan.generic_vector())


# --------------------------------------------------------------------------
# projections


@dataclass(frozen=True)
class ProjectedFan:
    """Delta_K over N^K = N / N_K.

    ``basis`` is a unimodular matrix whose first |K| columns span N_K;
    projected coordinates are the trailing entries of ``basis^{-1} v``.
    ``edge_map[j]`` is the base-fan index of projected edge ``j``.
    """

    base: SimplicialMultiFan
    K: Simplex
    basis: tuple[tuple[int, ...], ...]
    fan: SimplicialMultiFan
    edge_map: tuple[int, ...] = field(default=())

    def quotient(self, v: Sequence) -> tuple[Fraction, ...]:
        inv = inverse(self.basis)
        k = len(self.K)
        coords = [dot(row, v) for row in inv]
        return tuple(coords[k:])


def project(fan: SimplicialMultiFan, K: Simplex) -> ProjectedFan:
    K = tuple(sorted(K))
    if K not in fan.faces:
        raise FanError(f"{fan.names(K)} is not a simplex of the fan")
    n = fan.rank
    basis = unimodular_completion([fan.vectors[i] for i in K], n)
    if not K:
        return ProjectedFan(fan, K, tuple(map(tuple, basis)), fan, tuple(range(fan.m)))
    inv = inverse(basis)
    k = len(K)
    link = fan.link_edges(K)
    edges = []
    for i in link:
        img = [dot(row, fan.vectors[i]) for row in inv][k:]
        edges.append((fan.edge_ids[i], tuple(int(x) for x in img)))
    cones = []
    for I in fan.cones_containing(K):
        cones.append(([fan.edge_ids[i] for i in I if i not in K], fan.weight(I)))
    if not edges:
        sub = SimplicialMultiFan(0, (), (), tuple(() for _ in cones),
                                 tuple(w for _, w in cones))
    else:
        sub = SimplicialMultiFan.build(n - k, edges, cones)
    return ProjectedFan(fan, K, tuple(map(tuple, basis)), sub, tuple(link))


# --------------------------------------------------------------------------
# the groups G_I and G_Delta


@dataclass(frozen=True)
class GroupElement:
    """``g`` in (Q/Z)^m with its characters ``chi_i(g) = exp(2 pi i v_i(g))``."""

    frac: tuple[Fraction, ...]
    chi: tuple[CycNum, ...]

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, a in enumerate(self.frac) if a)


def group_G(fan: SimplicialMultiFan, I: Simplex) -> list[GroupElement]:
    """G_I: for each ``h`` in H_{I,V}, the vector ``<u_i^I, v(h)>`` mod 1 on I."""
    qg = fan.h_group(I)
    out = []
    for fr in qg.fractions:
        vec = [Fraction(0)] * fan.m
        for i, a in zip(I, fr):
            vec[i] = a
        out.append(GroupElement(tuple(vec), tuple(root_of_unity(a) for a in vec)))
    return out


def _union(fan: SimplicialMultiFan, cones: Iterable[Simplex]) -> list[GroupElement]:
    seen, out = set(), []
    for I in cones:
        for g in group_G(fan, I):
            if g.frac not in seen:
                seen.add(g.frac)
                out.append(g)
    return out


def group_G_delta(fan: SimplicialMultiFan) -> list[GroupElement]:
    return _union(fan, fan.cones)


def group_G_link(fan: SimplicialMultiFan, K: Simplex) -> list[GroupElement]:
    """G_{Delta_K}: union of G_I over maximal ``I`` containing ``K``."""
    return _union(fan, fan.cones_containing(tuple(sorted(K))))
