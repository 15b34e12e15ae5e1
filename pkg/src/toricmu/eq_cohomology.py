"""The Stanley-Reisner model of equivariant cohomology of a multi-fan.

Classes are polynomials in the edge generators ``x_i`` with every monomial
supported on a simplex; non-face monomials vanish identically.  The
push-forward is computed by localization along a single generic line:
each linear form ``u`` in ``M_Q`` is specialized to ``<u, v> s``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from math import factorial, prod
from typing import Sequence

from .cyclo_series import LaurentSeries, MultiPoly, assert_rational, exp_series
from .errors import GenericityError, IdentityError, TruncationError
from .exact_core import dot, rref
from .multifan import Simplex, SimplicialMultiFan


class CohClass:
    """An element of the Stanley-Reisner ring H_T^*(Delta, V) tensor Q.

    ``order`` is None for exact polynomials; otherwise the class is a
    truncated series, exact through total degree ``order``.
    """

    __slots__ = ("fan", "poly")

    def __init__(self, fan: SimplicialMultiFan, terms: dict | MultiPoly | None = None,
                 order: int | None = None):
        self.fan = fan
        if isinstance(terms, MultiPoly):
            order = terms.order if order is None else order
            terms = terms.terms
        self.poly = MultiPoly(fan.m, terms or {}, order, keep=fan.is_face_support)

    # constructors
    @classmethod
    def one(cls, fan, c=1) -> "CohClass":
        return cls(fan, {(0,) * fan.m: c})

    @classmethod
    def monomial(cls, fan, exps: Sequence[int], c=1) -> "CohClass":
        return cls(fan, {tuple(exps): c})

    @classmethod
    def x(cls, fan, i: int) -> "CohClass":
        e = [0] * fan.m
        e[i] = 1
        return cls(fan, {tuple(e): 1})

    @classmethod
    def x_face(cls, fan, J: Simplex) -> "CohClass":
        e = [0] * fan.m
        for i in J:
            e[i] = 1
        return cls(fan, {tuple(e): 1})

    # ---- arithmetic -----------------------------------------------------

    @property
    def terms(self) -> dict:
        return self.poly.terms

    @property
    def order(self) -> int | None:
        return self.poly.order

    def __add__(self, other):
        if not isinstance(other, CohClass):
            other = CohClass.one(self.fan, other)
        return CohClass(self.fan, self.poly.add(other.poly))

    __radd__ = __add__

    def __neg__(self):
        return CohClass(self.fan, self.poly.scale(-1))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CohClass):
            return CohClass(self.fan, self.poly.mul(other.poly, keep=self.fan.is_face_support))
        return CohClass(self.fan, self.poly.scale(other))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = CohClass.one(self.fan)
        for _ in range(e):
            out = out * self
        return out

    def truncated(self, order: int) -> "CohClass":
        return CohClass(self.fan, {e: c for e, c in self.terms.items() if sum(e) <= order}, order)

    def homogeneous(self, d: int) -> "CohClass":
        return CohClass(self.fan, self.poly.homogeneous(d))

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.poly == other.poly

    def __repr__(self):
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: _mono_key(t[0])):
            mono = "*".join(
                self.fan.edge_ids[i] + (f"^{a}" if a > 1 else "") for i, a in enumerate(e) if a
            )
            parts.append(f"{c}" + (f"*x[{mono}]" if mono else ""))
        return " + ".join(parts) or "0"


def _mono_key(e: Sequence[int]):
    """Canonical monomial order: by degree, then the sorted index multiset."""
    multiset = tuple(i for i, a in enumerate(e) for _ in range(a))
    return (len(multiset), multiset)


@dataclass(frozen=True, eq=False)
class XiClass:
    """``xi = sum_i d_i x_i``."""

    fan: SimplicialMultiFan
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.fan.m:
            raise ValueError("xi needs one coefficient per edge")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def zero(cls, fan) -> "XiClass":
        return cls(fan, (0,) * fan.m)

    def as_class(self) -> CohClass:
        terms = {}
        for i, d in enumerate(self.coeffs):
            e = [0] * self.fan.m
            e[i] = 1
            terms[tuple(e)] = d
        return CohClass(self.fan, terms)

    def vertex(self, I: Simplex) -> tuple[Fraction, ...]:
        """``iota_I^*(xi) = sum_{i in I} d_i u_i^I``."""
        n = self.fan.rank
        u = [Fraction(0)] * n
        for i, ui in zip(I, self.fan.duals(I)):
            for r in range(n):
                u[r] += self.coeffs[i] * ui[r]
        return tuple(u)

    @cached_property
    def is_t_cartier(self) -> bool:
        return all(x.denominator == 1 for I in self.fan.cones for x in self.vertex(I))

    def scaled(self, nu) -> "XiClass":
        return XiClass(self.fan, tuple(c * nu for c in self.coeffs))

    def shifted(self, eps, skip: Simplex = ()) -> "XiClass":
        return XiClass(
            self.fan, tuple(c + (0 if i in skip else eps) for i, c in enumerate(self.coeffs))
        )


def theta(fan: SimplicialMultiFan, u: Sequence) -> CohClass:
    """The image of ``u`` in M: ``sum_i <u, v_i> x_i``."""
    terms = {}
    for i, v in enumerate(fan.vectors):
        e = [0] * fan.m
        e[i] = 1
        terms[tuple(e)] = dot(u, v)
    return CohClass(fan, terms)


# --------------------------------------------------------------------------
# restriction to fixed points


def iota_eval(I: Simplex, x: CohClass, v: Sequence):
    """``iota_I^*(x)`` evaluated at ``v`` in N_Q (exact polynomial part only)."""
    fan = x.fan
    c = {i: dot(u, v) for i, u in zip(I, fan.duals(I))}
    total = 0
    for e, coeff in x.terms.items():
        if all(a == 0 or i in c for i, a in enumerate(e)):
            total = total + coeff * prod((c[i] ** a for i, a in enumerate(e) if a), start=Fraction(1))
    return total


def iota_poly(I: Simplex, x: CohClass) -> MultiPoly:
    """``iota_I^*(x)`` as a polynomial on N in the standard coordinates of M."""
    fan = x.fan
    n = fan.rank
    lin = {
        i: MultiPoly(n, {tuple(int(r == s) for s in range(n)): u[r] for r in range(n)})
        for i, u in zip(I, fan.duals(I))
    }
    out = MultiPoly(n, {}, x.order)
    for e, coeff in x.terms.items():
        if any(a and i not in lin for i, a in enumerate(e)):
            continue
        term = MultiPoly.constant(n, coeff)
        for i, a in enumerate(e):
            for _ in range(a):
                term = term.mul(lin[i])
        out = out.add(term)
    return out


# --------------------------------------------------------------------------
# push-forward


def _check_generic(fan: SimplicialMultiFan, v: Sequence) -> None:
    if not fan.is_generic(v):
        raise GenericityError("localization vector is not generic")


def pushforward_series(x: CohClass, xi: XiClass | None = None, v: Sequence | None = None,
                       order: int = 0, check_poles: bool = True) -> LaurentSeries:
    """``pi_*(e^xi x)`` along the line ``u -> <u, v> s``, degrees ``-n..order``.

    For complete multi-fans the polar part cancels; a nonzero polar
    coefficient raises ``IdentityError``.
    """
    fan = x.fan
    n = fan.rank
    if v is None:
        v = fan.generic_vector()
    _check_generic(fan, v)
    need = order + n
    if x.order is not None and x.order < need:
        raise TruncationError(f"class exact through degree {x.order}, need {need}")
    total = [Fraction(0)] * (need + 1)  # index d <-> s^{d - n}
    for I, w in zip(fan.cones, fan.weights):
        c = {i: dot(u, v) for i, u in zip(I, fan.duals(I))}
        loc = [Fraction(0)] * (need + 1)
        for e, coeff in x.terms.items():
            d = sum(e)
            if d > need or any(a and i not in c for i, a in enumerate(e)):
                continue
            loc[d] = loc[d] + coeff * prod((c[i] ** a for i, a in enumerate(e) if a),
                                           start=Fraction(1))
        shift = dot(xi.vertex(I), v) if xi is not None else Fraction(0)
        ex = exp_series(shift, need).coeffs
        scale = Fraction(w, fan.h_order(I)) / prod(c.values(), start=Fraction(1))
        for d in range(need + 1):
            acc = sum((loc[j] * ex[d - j] for j in range(d + 1) if loc[j]), Fraction(0))
            if acc:
                total[d] = total[d] + scale * acc
    series = LaurentSeries(-n, total)
    if check_poles and any(total[d] != 0 for d in range(n)):
        raise IdentityError("fan not complete or internal error: polar part survives")
    return series


def p_star(x: CohClass, xi: XiClass | None = None, v: Sequence | None = None) -> Fraction:
    """Degree-zero part of ``pi_*(e^xi x)``."""
    return assert_rational(pushforward_series(x, xi, v, order=0).coeff(0))


# --------------------------------------------------------------------------
# spanning sets and the ordinary-cohomology quotient


def face_monomials(fan: SimplicialMultiFan, k: int) -> list[tuple[int, ...]]:
    """All degree-``k`` monomials supported on a simplex, canonically ordered."""
    out = set()
    for J in fan.faces:
        if len(J) > k or (k > 0 and not J):
            continue
        for extra in combinations_with_replacement(J, k - len(J)):
            e = [0] * fan.m
            for i in J:
                e[i] += 1
            for i in extra:
                e[i] += 1
            out.add(tuple(e))
    return sorted(out, key=_mono_key)


def spanning_set(fan: SimplicialMultiFan, k: int) -> list[CohClass]:
    """``theta(e_a1) ... theta(e_ak1) x_J`` with ``J`` in Sigma^(k - k1), 0 <= k1 < k."""
    if k == 0:
        return [CohClass.one(fan)]
    n = fan.rank
    basis = [tuple(int(r == s) for s in range(n)) for r in range(n)]
    thetas = [theta(fan, u) for u in basis]
    out = []
    for k1 in range(k):
        for combo in combinations_with_replacement(range(n), k1):
            prefix = CohClass.one(fan)
            for a in combo:
                prefix = prefix * thetas[a]
            for J in fan.faces_of_dim(k - k1):
                out.append(prefix * CohClass.x_face(fan, J))
    return out


class GradedQuotient:
    """H^{2k}(Delta)_Q: degree-k classes modulo the ideal generated by M.

    The basis consists of the non-pivot monomials of the reduced relation
    matrix; ``reduce`` writes a class in that basis.
    """

    def __init__(self, fan: SimplicialMultiFan, k: int):
        self.fan, self.k = fan, k
        self.monomials = face_monomials(fan, k)
        self._col = {e: j for j, e in enumerate(self.monomials)}
        relations = []
        if k >= 1:
            n = fan.rank
            lower = face_monomials(fan, k - 1)
            for r in range(n):
                t = theta(fan, tuple(int(r == s) for s in range(n)))
                for e in lower:
                    rel = t * CohClass.monomial(fan, e)
                    if not rel.is_zero():
                        relations.append(self._vector(rel))
        self._rows, self._pivots = rref(relations) if relations else ([], [])
        pivset = set(self._pivots)
        self.basis = [e for j, e in enumerate(self.monomials) if j not in pivset]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _vector(self, x: CohClass) -> list:
        vec = [Fraction(0)] * len(self.monomials)
        for e, c in x.terms.items():
            if sum(e) != self.k:
                raise ValueError(f"class is not homogeneous of degree {self.k}")
            vec[self._col[e]] += c
        return vec

    def reduce(self, x: CohClass) -> dict:
        vec = self._vector(x)
        for row, p in zip(self._rows, self._pivots):
            if vec[p]:
                f = vec[p]
                vec = [a - f * b for a, b in zip(vec, row)]
        return {e: vec[self._col[e]] for e in self.basis if vec[self._col[e]] != 0}

    def basis_classes(self) -> list[CohClass]:
        return [CohClass.monomial(self.fan, e) for e in self.basis]


def graded_quotient(fan: SimplicialMultiFan, k: int) -> GradedQuotient:
    return GradedQuotient(fan, k)


def poincare_pairing(fan: SimplicialMultiFan, k: int) -> list[list[Fraction]]:
    """``p_*(b_i c_j)`` for quotient bases of degrees k and n - k."""
    lo = graded_quotient(fan, k).basis_classes()
    hi = graded_quotient(fan, fan.rank - k).basis_classes()
    return [[p_star(b * c) for c in hi] for b in lo]


def xi_power_over_factorial(xi: XiClass, j: int) -> CohClass:
    return xi.as_class() ** j * Fraction(1, factorial(j))
