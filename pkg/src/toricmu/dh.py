"""Multi-polytopes, Duistermaat-Heckman functions and equivariant Todd classes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import ceil, floor
from typing import Sequence

from .cyclo_series import MultiPoly, assert_rational, todd_x_series
from .eq_cohomology import (
    CohClass,
    XiClass,
    p_star,
    pushforward_series,
    xi_power_over_factorial,
)
from .errors import FanError, GenericityError
from .exact_core import dot
from .multifan import (
    Simplex,
    SimplicialMultiFan,
    group_G_delta,
    group_G_link,
    todd_genus,
)
from .verdict import Verdict

EPSILON = Fraction(1, 2)


@dataclass(frozen=True, eq=False)
class MultiPolytope:
    """The pair (Delta_K, {F_i}) cut out by ``xi`` in the affine space A_K^*."""

    fan: SimplicialMultiFan
    xi: XiClass
    face: Simplex = ()

    @cached_property
    def cones(self) -> list[Simplex]:
        return self.fan.cones_containing(self.face)

    @cached_property
    def vertices(self) -> dict:
        return {I: self.xi.vertex(I) for I in self.cones}

    @cached_property
    def walls(self) -> list[int]:
        return self.fan.link_edges(self.face)

    def on_wall(self, u: Sequence) -> bool:
        return any(dot(u, self.fan.vectors[i]) == self.xi.coeffs[i] for i in self.walls)


def dhf_eval(po: MultiPolytope, u: Sequence, v: Sequence | None = None) -> int:
    """``sum_I (-1)^I w(I) phi_I(u)`` for ``u`` in A_K^* off the hyperplanes."""
    fan, K = po.fan, set(po.face)
    if po.on_wall(u):
        raise GenericityError("point on hyperplane")
    if v is None:
        v = fan.generic_vector()
    total = 0
    for I in po.cones:
        uI = po.vertices[I]
        diff = [a - b for a, b in zip(u, uI)]
        sign, inside = 1, True
        for i, ui in zip(I, fan.duals(I)):
            if i in K:
                continue
            pv = dot(ui, v)
            if pv == 0:
                raise GenericityError("auxiliary vector is not generic")
            if pv > 0:
                sign = -sign
            # u - u_I = sum_i <u - u_I, v_i> u_i^I on this cone
            c = dot(diff, fan.vectors[i])
            if (c > 0) != (pv > 0) or c == 0:
                inside = False
        if inside:
            total += sign * fan.weight(I)
    return total


def _lattice_points(po: MultiPolytope) -> list[tuple[int, ...]]:
    """Integer points of A_K^* inside the vertex bounding box (margin 1)."""
    fan = po.fan
    pts = list(po.vertices.values())
    box = [range(floor(min(p[r] for p in pts)) - 1, ceil(max(p[r] for p in pts)) + 2)
           for r in range(fan.rank)]
    return [u for u in product(*box)
            if all(dot(u, fan.vectors[k]) == po.xi.coeffs[k] for k in po.face)]


def count_points(po: MultiPolytope, K: Simplex | None = None,
                 v: Sequence | None = None) -> int:
    """#(P(xi)_K): DHF of the face with non-K offsets shifted by 1/2, summed over A_K^* ∩ M."""
    K = po.face if K is None else tuple(sorted(K))
    if not po.xi.is_t_cartier:
        raise FanError("xi is not T-Cartier")
    shifted = MultiPolytope(po.fan, po.xi.shifted(EPSILON, skip=K), K)
    return sum(dhf_eval(shifted, u, v) for u in _lattice_points(shifted))


# --------------------------------------------------------------------------
# Todd classes


def _todd_sum(fan: SimplicialMultiFan, group, edges: Sequence[int], order: int) -> CohClass:
    keep = fan.is_face_support
    total = MultiPoly(fan.m, {}, order)
    for g in group:
        acc = MultiPoly.constant(fan.m, 1, order)
        for i in edges:
            factor = MultiPoly.univariate(fan.m, i, todd_x_series(g.chi[i], order), order)
            acc = acc.mul(factor, keep=keep, order=order)
            if not acc.terms:
                break
        total = total.add(acc)
    # per-g terms are cyclotomic; the group sum is rational
    return CohClass(fan, total.map_coeffs(assert_rational), order)


def todd_class(fan: SimplicialMultiFan, order: int | None = None) -> CohClass:
    """``T_T = sum_{g in G_Delta} prod_i x_i / (1 - chi_i(g) e^{-x_i})``, exact through ``order``."""
    order = fan.rank if order is None else order
    return _todd_sum(fan, group_G_delta(fan), range(fan.m), order)


def todd_class_K(fan: SimplicialMultiFan, K: Simplex, order: int | None = None) -> CohClass:
    """Same product over the link edges of ``K``, ``g`` over G_{Delta_K}."""
    order = fan.rank if order is None else order
    K = tuple(sorted(K))
    return _todd_sum(fan, group_G_link(fan, K), fan.link_edges(K), order)


def count_via_todd(fan: SimplicialMultiFan, xi: XiClass, K: Simplex = ()) -> int:
    """``p_*(e^xi x_K T_T(Delta, V)_K)``, asserted integral."""
    if not xi.is_t_cartier:
        raise FanError("xi is not T-Cartier")
    K = tuple(sorted(K))
    cls = CohClass.x_face(fan, K) * todd_class_K(fan, K, fan.rank - len(K))
    value = p_star(cls, xi)
    if value.denominator != 1:
        raise ArithmeticError(f"lattice-point count {value} is not an integer")
    return int(value)


def volume(fan: SimplicialMultiFan, xi: XiClass, K: Simplex = ()) -> Fraction:
    """``|H_K| p_*(e^xi x_K)``: lattice-normalized volume of the face P(xi)_K."""
    K = tuple(sorted(K))
    return fan.h_order(K) * p_star(CohClass.x_face(fan, K), xi)


def ehrhart(fan: SimplicialMultiFan, xi: XiClass, todd: CohClass | None = None
            ) -> list[Fraction]:
    """``a_k = p_*(xi^{n-k}/(n-k)! (T_T)_k)`` for k = 0..n."""
    n = fan.rank
    todd = todd_class(fan, n) if todd is None else todd
    return [p_star(xi_power_over_factorial(xi, n - k) * todd.homogeneous(k)) for k in range(n + 1)]


def rigidity_check(fan: SimplicialMultiFan, order: int | None = None,
                   vectors: Sequence[Sequence[int]] | None = None) -> Verdict:
    """``pi_*(T_T)`` is the constant Td[Delta] through ``s^order``."""
    n = fan.rank
    order = n if order is None else order
    td = todd_genus(fan)
    todd = todd_class(fan, n + order)
    if vectors is None:
        vectors = [fan.generic_vector(seed) for seed in range(3)]
    bad = []
    for v in vectors:
        series = pushforward_series(todd, None, v, order)
        for d in range(-n, order + 1):
            expect = td if d == 0 else 0
            if series.coeff(d) != expect:
                bad.append(f"v={tuple(v)} s^{d}: {series.coeff(d)}")
    return Verdict(not bad, f"constant = {td}" if not bad else "; ".join(bad))
