"""Coefficients mu(x, J) evaluated at sample planes E on the Grassmannian,
and exact verifiers for the decomposition identities built on them.

For a generic (n-k+1)-plane E and a k-simplex J, E ∩ N_J is a line spanned
by ``v_EJ``; then ``mu(x, J)(E) = iota_J^*(x)(v_EJ) / prod_j <u_j^J, v_EJ>``.
All functions are degree-0 homogeneous in ``v_EJ``, so its normalization is
irrelevant.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from .cyclo_series import LaurentSeries, assert_rational, root_of_unity, todd_factor
from .dh import todd_class, volume
from .eq_cohomology import CohClass, GradedQuotient, XiClass, iota_eval, p_star
from .errors import GenericityError
from .exact_core import (
    annihilator,
    coordinates,
    dot,
    dual_basis,
    nullspace,
    primitive,
    quotient_group,
    rank,
    saturate,
    transpose,
    wedge_pairing,
)
from .multifan import Simplex, SimplicialMultiFan
from .verdict import Verdict


@dataclass(frozen=True)
class GrassmannPoint:
    """A rational (n-k+1)-plane E, given by integer basis rows."""

    k: int
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.basis:
            raise ValueError("empty plane")
        n = len(self.basis[0])
        if len(self.basis) != n - self.k + 1:
            raise ValueError(f"plane for k={self.k} needs {n - self.k + 1} basis rows")
        if rank(self.basis) != len(self.basis):
            raise GenericityError("basis rows are dependent")

    @property
    def n(self) -> int:
        return len(self.basis[0])

    @classmethod
    def of(cls, k: int, rows: Sequence[Sequence[int]]) -> "GrassmannPoint":
        return cls(k, tuple(tuple(int(x) for x in r) for r in rows))


def intersection_line(E: GrassmannPoint, vectors: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Primitive spanning vector of ``E ∩ span(vectors)``."""
    r = len(E.basis)
    cols = [list(w) for w in E.basis] + [[-x for x in v] for v in vectors]
    kernel = nullspace(transpose(cols), r + len(vectors))
    if len(kernel) != 1:
        raise GenericityError("non-generic E")
    a = kernel[0][:r]
    v = [sum(a[l] * E.basis[l][t] for l in range(r)) for t in range(E.n)]
    if not any(v):
        raise GenericityError("non-generic E")
    return primitive(v)


def cone_weights(vectors: Sequence[Sequence[int]], v: Sequence) -> list[Fraction]:
    """``<u_j^J, v>`` for ``v`` in the span of the cone: its coordinates in V_J."""
    return coordinates([list(x) for x in vectors], v)


def v_EJ(E: GrassmannPoint, fan: SimplicialMultiFan, J: Simplex) -> tuple[int, ...]:
    return intersection_line(E, [fan.vectors[j] for j in J])


def is_generic_plane(fan: SimplicialMultiFan, E: GrassmannPoint) -> bool:
    return all(_cone_generic(E, [fan.vectors[j] for j in J]) for J in fan.faces_of_dim(E.k))


def _cone_generic(E: GrassmannPoint, vectors) -> bool:
    try:
        v = intersection_line(E, vectors)
    except GenericityError:
        return False
    return all(c != 0 for c in cone_weights(vectors, v))


def _sample_plane(n: int, k: int, seed: int, accept) -> GrassmannPoint:
    if k == 1:
        E = GrassmannPoint.of(1, [[int(r == s) for s in range(n)] for r in range(n)])
        if accept(E):
            return E
    rng = random.Random(seed)
    bound = 3
    while True:
        rows = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n - k + 1)]
        if rank(rows) == len(rows):
            E = GrassmannPoint.of(k, saturate(rows, n))
            if accept(E):
                return E
        bound *= 2


def sample_generic_E(fan: SimplicialMultiFan, k: int, seed: int = 0) -> GrassmannPoint:
    """Seeded rejection sampling with an exact genericity certificate."""
    if not 1 <= k <= fan.rank:
        raise ValueError("need 1 <= k <= n")
    return _sample_plane(fan.rank, k, seed, lambda E: is_generic_plane(fan, E))


def sample_plane_for_cones(cones: Sequence[Sequence[Sequence[int]]], k: int,
                           seed: int = 0) -> GrassmannPoint:
    n = len(cones[0][0])
    return _sample_plane(n, k, seed, lambda E: all(_cone_generic(E, c) for c in cones))


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class MuValue:
    J: Simplex
    value: Fraction
    E: GrassmannPoint | None
    k: int


def mu(x: CohClass, J: Simplex, E: GrassmannPoint) -> MuValue:
    """``iota_J^*(x)(v_EJ) / prod_{j in J} <u_j^J, v_EJ>``, through a maximal I ⊇ J."""
    fan = x.fan
    J = tuple(sorted(J))
    v = v_EJ(E, fan, J)
    I = fan.containing_cone(J)
    c = [dot(fan.dual(I, j), v) for j in J]
    if any(ci == 0 for ci in c):
        raise GenericityError("non-generic E")
    value = assert_rational(iota_eval(I, x, v)) / prod(c, start=Fraction(1))
    return MuValue(J, value, E, len(J))


def mu_todd_at(vectors: Sequence[Sequence[int]], v: Sequence) -> Fraction:
    """``(1/|H_J|) sum_h [prod_j 1/(1 - chi(u_j^J, h) e^{-c_j s})]_0`` with ``c_j = <u_j^J, v>``.

    ``v`` must lie in the span of the cone; any nonzero multiple gives the
    same value.
    """
    k = len(vectors)
    if k == 0:
        return Fraction(1)
    c = cone_weights(vectors, v)
    if any(ci == 0 for ci in c):
        raise GenericityError("non-generic E")
    qg = quotient_group(vectors, len(v))
    total = 0
    for fr in qg.fractions:
        series = None
        for cj, a in zip(c, fr):
            f = todd_factor(cj, root_of_unity(a), k)
            series = f if series is None else series * f
        total = total + series.coeff(0)
    return assert_rational(total) / qg.order


def mu_todd_cone(vectors: Sequence[Sequence[int]], E: GrassmannPoint | None) -> Fraction:
    if not vectors:
        return Fraction(1)
    return mu_todd_at(vectors, intersection_line(E, vectors))


def mu_todd(fan: SimplicialMultiFan, k: int, J: Simplex, E: GrassmannPoint | None) -> MuValue:
    J = tuple(sorted(J))
    if len(J) != k:
        raise ValueError(f"simplex has {len(J)} edges, expected {k}")
    return MuValue(J, mu_todd_cone([fan.vectors[j] for j in J], E), E, k)


# --------------------------------------------------------------------------
# verifiers


def theorem_main_rhs(x: CohClass, xi: XiClass | None, E: GrassmannPoint) -> Fraction:
    fan = x.fan
    return sum(
        (mu(x, J, E).value * p_star(CohClass.x_face(fan, J), xi) for J in fan.faces_of_dim(E.k)),
        Fraction(0),
    )


def verify_theorem_main(x: CohClass, xi: XiClass | None, E: GrassmannPoint) -> Verdict:
    """``p_*(e^xi x) == sum_J mu(x, J)(E) p_*(e^xi x_J)``."""
    if x.degrees() - {E.k}:
        raise ValueError(f"class must be homogeneous of degree {E.k}")
    lhs = p_star(x, xi)
    rhs = theorem_main_rhs(x, xi, E)
    return Verdict(lhs == rhs, f"residual {lhs - rhs}", lhs, rhs)


def verify_corollary_main(x: CohClass, E: GrassmannPoint,
                          quotient: GradedQuotient | None = None) -> Verdict:
    """``x - sum_J mu(x, J)(E) x_J`` vanishes in H^{2k}(Delta)_Q."""
    fan = x.fan
    quotient = quotient or GradedQuotient(fan, E.k)
    diff = x
    for J in fan.faces_of_dim(E.k):
        diff = diff - CohClass.x_face(fan, J) * mu(x, J, E).value
    residue = quotient.reduce(diff)
    return Verdict(not residue, f"residue {residue}" if residue else "reduces to 0")


def verify_lemma_wEvJ(fan: SimplicialMultiFan, J: Simplex, E: GrassmannPoint,
                      flip: bool = False) -> Verdict:
    """``<u_j^J ∧ omega_J, w_E>`` is a nonzero constant multiple of ``<u_j^J, v_EJ>``.

    Checked through every maximal cone containing ``J``; ``flip`` reverses
    the orientation of omega_J (or of E when omega_J is empty).
    """
    J = tuple(sorted(J))
    omega = annihilator([fan.vectors[j] for j in J], fan.rank)
    e_basis = [list(w) for w in E.basis]
    if flip:
        if omega:
            omega = [tuple(-x for x in omega[0])] + list(omega[1:])
        else:
            e_basis[0] = [-x for x in e_basis[0]]
    v = v_EJ(E, fan, J)
    ratios = set()
    for I in fan.cones_containing(J):
        for j in J:
            u = fan.dual(I, j)
            wedge = wedge_pairing(u, omega, e_basis)
            direct = dot(u, v)
            if wedge == 0 or direct == 0:
                return Verdict(False, f"vanishing pairing at {fan.names([j])}")
            ratios.add(direct / wedge)
    return Verdict(len(ratios) == 1, f"ratios {sorted(ratios)}")


def verify_lemma_MKQ(fan: SimplicialMultiFan, K: Simplex, E: GrassmannPoint) -> Verdict:
    """The annihilator M_K of N_K surjects onto E^* (for |K| < k)."""
    if len(K) >= E.k:
        raise ValueError("needs |K| < k")
    basis = annihilator([fan.vectors[i] for i in K], fan.rank)
    r = rank([[dot(u, w) for w in E.basis] for u in basis])
    return Verdict(r == len(E.basis), f"rank {r} of {len(E.basis)}")


def corollary_ak_sum(fan: SimplicialMultiFan, xi: XiClass, k: int,
                     E: GrassmannPoint | None) -> Fraction:
    """``sum_{J in Sigma^(k)} mu_k(J)(E) vol P(xi)_J``."""
    return sum(
        (mu_todd(fan, k, J, E).value * volume(fan, xi, J) for J in fan.faces_of_dim(k)),
        Fraction(0),
    )


def verify_mu_equivalence(fan: SimplicialMultiFan, J: Simplex, E: GrassmannPoint,
                          todd: CohClass | None = None) -> Verdict:
    """``mu((T_T)_k, J)(E) == |H_J| mu_k(J)(E)``.

    The Todd class sums over the whole group while mu_k averages over H_J,
    hence the factor |H_J|.
    """
    k = len(J)
    todd = todd_class(fan, fan.rank) if todd is None else todd
    lhs = mu(todd.homogeneous(k), J, E).value
    rhs = fan.h_order(tuple(sorted(J))) * mu_todd(fan, k, J, E).value
    return Verdict(lhs == rhs, f"{lhs} vs {rhs}", lhs, rhs)


# --------------------------------------------------------------------------
# additivity under subdivision


def _in_cone(parent, vectors) -> bool:
    for w in vectors:
        try:
            coords = coordinates([list(p) for p in parent], w)
        except (ValueError, GenericityError):
            return False
        if any(c < 0 for c in coords):
            return False
    return True


def verify_mu_additivity(parent: Sequence[Sequence[int]],
                         pieces: Sequence[Sequence[Sequence[int]]],
                         E: GrassmannPoint) -> Verdict:
    """``mu_k(parent)(E) == sum over pieces of mu_k(piece)(E)``."""
    if not all(_in_cone(parent, p) for p in pieces):
        return Verdict(False, "a piece is not contained in the parent cone")
    lhs = mu_todd_cone(parent, E)
    rhs = sum((mu_todd_cone(p, E) for p in pieces), Fraction(0))
    return Verdict(lhs == rhs, f"{lhs} vs {rhs}", lhs, rhs)


def cone_todd_series(vectors: Sequence[Sequence[int]], v: Sequence, order: int) -> LaurentSeries:
    """``Td_T`` of one full-dimensional simplicial cone, localized along ``v``."""
    n = len(vectors)
    duals = dual_basis(vectors)
    c = [dot(u, v) for u in duals]
    if any(ci == 0 for ci in c):
        raise GenericityError("localization vector is not generic")
    qg = quotient_group(vectors, n)
    total = None
    for fr in qg.fractions:
        term = None
        for ci, a in zip(c, fr):
            f = todd_factor(ci, root_of_unity(a), order + n - 1)
            term = f if term is None else term * f
        total = term if total is None else total + term
    total = total.truncate(order)
    return LaurentSeries(total.min_deg, [assert_rational(x) / qg.order for x in total.coeffs])


def td_series(cones: Sequence[Sequence[Sequence[int]]], v: Sequence, order: int) -> LaurentSeries:
    total = None
    for cone in cones:
        s = cone_todd_series(cone, v, order)
        total = s if total is None else total + s
    return total


def verify_td_additivity(parent: Sequence[Sequence[int]],
                         pieces: Sequence[Sequence[Sequence[int]]],
                         v: Sequence, order: int) -> Verdict:
    """Localized ``Td_T(parent) == Td_T(subdivision)`` through ``s^order``."""
    if not all(_in_cone(parent, p) for p in pieces):
        return Verdict(False, "a piece is not contained in the parent cone")
    lhs = cone_todd_series(parent, v, order)
    rhs = td_series(pieces, v, order)
    ok = lhs.agrees_with(rhs, order)
    return Verdict(ok, f"{lhs!r} vs {rhs!r}", lhs, rhs)
