"""Cyclotomic numbers and truncated Laurent / multivariate series.

``CycNum`` represents an element of Q(zeta_m) as a dense vector of rational
coefficients modulo the m-th cyclotomic polynomial.  Numbers with different
conductors are promoted to the lcm on contact.  Plain ``int`` and
``Fraction`` mix freely with ``CycNum``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd
from typing import Callable, Iterable, Union

from .errors import GenericityError, NotRationalError, TruncationError

Scalar = Union[int, Fraction, "CycNum"]


# --------------------------------------------------------------------------
# dense polynomials over Q, low degree first


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
    return _trim(q), _trim(a)


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[Fraction, ...]:
    """Coefficients of Phi_m, low degree first."""
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num, r = _pdivmod(num, list(cyclotomic_poly(d)))
            assert not r
    return tuple(num)


def _reduce(p, m):
    phi = cyclotomic_poly(m)
    _, r = _pdivmod(p, list(phi))
    r = r + [Fraction(0)] * (len(phi) - 1 - len(r))
    return tuple(r)


# --------------------------------------------------------------------------


class CycNum:
    """Element of the cyclotomic field Q(zeta_m)."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Iterable):
        self.m = m
        self.coeffs = _reduce([Fraction(c) for c in coeffs], m)

    @classmethod
    def rational(cls, q) -> "CycNum":
        return cls(1, [q])

    def lift(self, m: int) -> "CycNum":
        """The same number viewed in Q(zeta_m); ``self.m`` must divide ``m``."""
        if m == self.m:
            return self
        step = m // self.m
        p = [Fraction(0)] * (step * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            p[i * step] = c
        return CycNum(m, p)

    def _coerce(self, other) -> tuple["CycNum", "CycNum"] | None:
        if isinstance(other, (int, Fraction)):
            other = CycNum(1, [other])
        if not isinstance(other, CycNum):
            return None
        m = self.m * other.m // gcd(self.m, other.m)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycNum(a.m, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.m, [-x for x in self.coeffs])

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycNum(a.m, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.m, [x * other for x in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycNum(a.m, _pmul(list(a.coeffs), list(b.coeffs)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNum(self.m, [x / other for x in self.coeffs])
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[0] * cyc_inv(pair[1])

    def __rtruediv__(self, other):
        return cyc_inv(self) * other

    def __pow__(self, e: int):
        if e < 0:
            return cyc_inv(self) ** (-e)
        out, base = CycNum(1, [1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return pair[0].coeffs == pair[1].coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0] if self.coeffs else Fraction(0))
        return hash((self.m, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.m}^{i}")
        return " + ".join(terms) or "0"


def root_of_unity(q) -> CycNum:
    """``exp(2 pi i q)`` as an exact cyclotomic number."""
    q = Fraction(q)
    q -= q.numerator // q.denominator
    m = q.denominator
    p = [0] * q.numerator + [1]
    return CycNum(m, p)


def cyc_inv(a: CycNum) -> CycNum:
    """Inverse via the extended Euclidean algorithm modulo Phi_m."""
    if isinstance(a, (int, Fraction)):
        if a == 0:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        return CycNum(1, [Fraction(1) / Fraction(a)])
    if a.is_zero():
        raise ZeroDivisionError("division by zero in cyclotomic field")
    r0, r1 = list(cyclotomic_poly(a.m)), _trim(list(a.coeffs))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        qs = _pmul(q, s1)
        s_new = [Fraction(0)] * max(len(s0), len(qs))
        for i, x in enumerate(s0):
            s_new[i] += x
        for i, x in enumerate(qs):
            s_new[i] -= x
        s0, s1 = s1, _trim(s_new)
    c = r1[0]
    return CycNum(a.m, [x / c for x in s1])


def assert_rational(a) -> Fraction:
    """Return ``a`` as a Fraction, raising if it has an irrational part."""
    if isinstance(a, (int, Fraction)):
        return Fraction(a)
    if not a.is_rational():
        raise NotRationalError(f"expected rational result, got {a!r}")
    return a.coeffs[0] if a.coeffs else Fraction(0)


def _is_one(chi) -> bool:
    return chi == 1


# --------------------------------------------------------------------------


class LaurentSeries:
    """Truncated Laurent series ``sum_{d=min_deg}^{max_deg} c_d s^d + O(s^{max_deg+1})``.

    Coefficients below ``min_deg`` are exactly zero; coefficients above
    ``max_deg`` are unknown.
    """

    __slots__ = ("min_deg", "coeffs")

    def __init__(self, min_deg: int, coeffs: Iterable):
        self.min_deg = min_deg
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise TruncationError("empty series window")

    @property
    def max_deg(self) -> int:
        return self.min_deg + len(self.coeffs) - 1

    @classmethod
    def monomial(cls, c, k: int, max_deg: int) -> "LaurentSeries":
        return cls(k, [c] + [0] * (max_deg - k))

    def coeff(self, d: int):
        """Coefficient of ``s^d``; zero below ``min_deg``, an error above ``max_deg``."""
        if d > self.max_deg:
            raise TruncationError(f"truncation too short for degree {d}")
        if d < self.min_deg:
            return 0
        return self.coeffs[d - self.min_deg]

    def truncate(self, max_deg: int) -> "LaurentSeries":
        if max_deg > self.max_deg:
            raise TruncationError("truncation too short")
        return LaurentSeries(self.min_deg, self.coeffs[: max_deg - self.min_deg + 1])

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries(0, [other] + [0] * max(self.max_deg, 0))
        lo = min(self.min_deg, other.min_deg)
        hi = min(self.max_deg, other.max_deg)
        out = []
        for d in range(lo, hi + 1):
            a = self.coeffs[d - self.min_deg] if d >= self.min_deg else 0
            b = other.coeffs[d - other.min_deg] if d >= other.min_deg else 0
            out.append(a + b)
        return LaurentSeries(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.min_deg, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return LaurentSeries(self.min_deg, [c * other for c in self.coeffs])
        lo = self.min_deg + other.min_deg
        hi = min(self.max_deg + other.min_deg, other.max_deg + self.min_deg)
        out = []
        for d in range(lo, hi + 1):
            acc = 0
            for i in range(self.min_deg, self.max_deg + 1):
                j = d - i
                if other.min_deg <= j <= other.max_deg:
                    a = self.coeffs[i - self.min_deg]
                    if a:
                        acc = acc + a * other.coeffs[j - other.min_deg]
            out.append(acc)
        return LaurentSeries(lo, out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentSeries":
        return LaurentSeries(self.min_deg + k, self.coeffs)

    def inverse(self) -> "LaurentSeries":
        """Reciprocal; the coefficient at ``min_deg`` must be nonzero."""
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("leading coefficient vanishes")
        inv0 = Fraction(1) / a[0] if isinstance(a[0], (int, Fraction)) else cyc_inv(a[0])
        b = [inv0]
        for k in range(1, len(a)):
            acc = 0
            for j in range(1, k + 1):
                if a[j]:
                    acc = acc + a[j] * b[k - j]
            b.append(-(acc * inv0))
        # window: degrees -min_deg .. -min_deg + len(a) - 1
        return LaurentSeries(-self.min_deg, b)

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.min_deg, self.max_deg) == (other.min_deg, other.max_deg) and all(
            x == y for x, y in zip(self.coeffs, other.coeffs)
        )

    def agrees_with(self, other: "LaurentSeries", upto: int) -> bool:
        lo = min(self.min_deg, other.min_deg)
        for d in range(lo, upto + 1):
            a = self.coeffs[d - self.min_deg] if d >= self.min_deg else 0
            b = other.coeffs[d - other.min_deg] if d >= other.min_deg else 0
            if d > self.max_deg or d > other.max_deg:
                raise TruncationError("truncation too short")
            if a != b:
                return False
        return True

    def __repr__(self):
        return f"LaurentSeries({self.min_deg}, {list(self.coeffs)!r})"


def series_coeff(f: LaurentSeries, d: int):
    return f.coeff(d)


def exp_series(c, order: int) -> LaurentSeries:
    """``exp(c s)`` through ``s^order``."""
    c = Fraction(c) if isinstance(c, int) else c
    out, term = [], Fraction(1)
    for j in range(order + 1):
        out.append(term)
        term = term * c / (j + 1)
    return LaurentSeries(0, out)


def todd_factor(c, chi, order: int) -> LaurentSeries:
    """``1 / (1 - chi * exp(-c s))`` through ``s^order``."""
    c = Fraction(c)
    if _is_one(chi):
        if c == 0:
            raise GenericityError("non-generic specialization")
        # (1 - e^{-cs}) / s = sum_{j>=1} -(-c)^j / j! s^{j-1}
        body = [-((-c) ** j) / factorial(j) for j in range(1, order + 3)]
        return LaurentSeries(0, body).inverse().shift(-1).truncate(order)
    e = exp_series(-c, order)
    denom = LaurentSeries(0, [1 - chi * e.coeffs[0]] + [-(chi * x) for x in e.coeffs[1:]])
    return denom.inverse()


def todd_x_series(chi, order: int) -> list:
    """Coefficients of ``x / (1 - chi e^{-x})`` in degrees 0..order."""
    f = todd_factor(1, chi, order).shift(1)
    return [f.coeff(d) for d in range(order + 1)]


# --------------------------------------------------------------------------


class MultiPoly:
    """Truncated polynomial in ``n_vars`` variables.

    ``terms`` maps exponent tuples to nonzero coefficients.  ``order`` is the
    total degree through which the polynomial is exact; ``None`` means exact
    in every degree.
    """

    __slots__ = ("n_vars", "terms", "order")

    def __init__(self, n_vars: int, terms: dict | None = None, order: int | None = None,
                 keep: Callable[[tuple], bool] | None = None):
        self.n_vars = n_vars
        self.order = order
        clean = {}
        for exps, c in (terms or {}).items():
            if c == 0:
                continue
            if order is not None and sum(exps) > order:
                continue
            if keep is not None and not keep(exps):
                continue
            clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def constant(cls, n_vars: int, c=1, order=None) -> "MultiPoly":
        return cls(n_vars, {(0,) * n_vars: c}, order)

    @classmethod
    def univariate(cls, n_vars: int, var: int, coeffs, order=None) -> "MultiPoly":
        terms = {}
        for d, c in enumerate(coeffs):
            e = [0] * n_vars
            e[var] = d
            terms[tuple(e)] = c
        return cls(n_vars, terms, order)

    def min_degree(self) -> float:
        return min((sum(e) for e in self.terms), default=float("inf"))

    def _order_with(self, other) -> int | None:
        cands = []
        if self.order is not None:
            cands.append(self.order + other.min_degree())
        if other.order is not None:
            cands.append(other.order + self.min_degree())
        cands = [c for c in cands if c != float("inf")]
        if not cands:
            orders = [o for o in (self.order, other.order) if o is not None]
            return min(orders) if orders else None
        return int(min(cands))

    def add(self, other: "MultiPoly", keep=None) -> "MultiPoly":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        orders = [o for o in (self.order, other.order) if o is not None]
        return MultiPoly(self.n_vars, terms, min(orders) if orders else None, keep)

    def scale(self, c) -> "MultiPoly":
        return MultiPoly(self.n_vars, {e: v * c for e, v in self.terms.items()}, self.order)

    def mul(self, other: "MultiPoly", keep=None, order: int | None = None) -> "MultiPoly":
        out_order = self._order_with(other)
        if order is not None:
            out_order = order if out_order is None else min(out_order, order)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if out_order is not None and d1 + sum(e2) > out_order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                if keep is not None and not keep(e):
                    continue
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.n_vars, terms, out_order)

    def homogeneous(self, d: int) -> "MultiPoly":
        if self.order is not None and d > self.order:
            raise TruncationError("truncation too short")
        return MultiPoly(self.n_vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def map_coeffs(self, f) -> "MultiPoly":
        return MultiPoly(self.n_vars, {e: f(c) for e, c in self.terms.items()}, self.order)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def __repr__(self):
        return f"MultiPoly({self.n_vars}, {self.terms!r}, order={self.order})"
