import random
from fractions import Fraction as F

import pytest
import sympy

from toricmu.dh import todd_class, volume, ehrhart
from toricmu.eq_cohomology import CohClass, XiClass, spanning_set, theta
from toricmu.errors import GenericityError
from toricmu.exact_core import dot
from toricmu.fixtures import get
from toricmu.morelli import (
    GrassmannPoint,
    corollary_ak_sum,
    cone_todd_series,
    is_generic_plane,
    mu,
    mu_todd,
    mu_todd_at,
    sample_generic_E,
    sample_plane_for_cones,
    theorem_main_rhs,
    v_EJ,
    verify_corollary_main,
    verify_lemma_MKQ,
    verify_lemma_wEvJ,
    verify_mu_additivity,
    verify_mu_equivalence,
    verify_td_additivity,
    verify_theorem_main,
)

FANS = ["F1", "F2'", "F3", "MF1", "T3"]
s = sympy.symbols("s")


def sympy_mu2(ca, cb):
    """s^0 coefficient of 1/((1-e^{-ca s})(1-e^{-cb s})) by sympy series."""
    expr = 1 / ((1 - sympy.exp(-ca * s)) * (1 - sympy.exp(-cb * s)))
    return sympy.series(expr, s, 0, 1).removeO().coeff(s, 0)


def test_plane_sampling(F1):
    fan = F1.fan
    assert is_generic_plane(fan, GrassmannPoint.of(2, [(1, 2)]))
    assert not is_generic_plane(fan, GrassmannPoint.of(2, [(1, 0)]))
    E = sample_generic_E(fan, 1, 0)
    assert E.basis == ((1, 0), (0, 1))
    assert sample_generic_E(fan, 2, 4) == sample_generic_E(fan, 2, 4)
    assert is_generic_plane(fan, sample_generic_E(fan, 2, 4))
    with pytest.raises(GenericityError):
        mu_todd(fan, 2, fan.cones[0], GrassmannPoint.of(2, [(1, 0)]))


def test_v_EJ_examples(F1, T3):
    fan = F1.fan
    E1 = sample_generic_E(fan, 1, 0)
    for i in range(fan.m):
        v = v_EJ(E1, fan, (i,))
        assert v in (fan.vectors[i], tuple(-x for x in fan.vectors[i]))
    E = GrassmannPoint.of(2, [(1, 2)])
    assert all(v_EJ(E, fan, I) == (1, 2) for I in fan.cones)
    # 3D: cross-check against a sympy kernel computation
    fan = T3.fan
    E = sample_generic_E(fan, 2, 3)
    for J in fan.faces_of_dim(2):
        v = v_EJ(E, fan, J)
        cols = [list(w) for w in E.basis] + [[-x for x in fan.vectors[j]] for j in J]
        ker = sympy.Matrix(cols).T.nullspace()
        assert len(ker) == 1
        a = ker[0]
        w = sum((a[l] * sympy.Matrix(E.basis[l]) for l in range(len(E.basis))), sympy.zeros(3, 1))
        ratio = {w[t] / v[t] for t in range(3) if v[t]}
        assert len(ratio) == 1 and all(w[t] == 0 for t in range(3) if not v[t])


def test_mu_base_cases(F3):
    fan = F3.fan
    E = sample_generic_E(fan, 2, 1)
    for J0 in fan.faces_of_dim(2):
        x = CohClass.x_face(fan, J0)
        for J in fan.faces_of_dim(2):
            assert mu(x, J, E).value == (1 if J == J0 else 0)
    E1 = sample_generic_E(fan, 1, 1)
    for i in range(fan.m):
        assert mu(CohClass.x(fan, i), (i,), E1).value == 1


@pytest.mark.parametrize("name", FANS)
def test_mu_todd_low_degrees(name):
    fan = get(name).fan
    assert mu_todd(fan, 0, (), None).value == 1
    for seed in range(3):
        E = sample_generic_E(fan, 1, seed)
        for i in range(fan.m):
            assert mu_todd(fan, 1, (i,), E).value == F(1, 2)


def test_mu_todd_unit_square_against_sympy(F1):
    fan = F1.fan
    E = GrassmannPoint.of(2, [(1, 2)])
    values = {}
    for I in fan.cones:
        c = [dot(u, (1, 2)) for u in fan.duals(I)]
        expected = sympy_mu2(*c)
        got = mu_todd(fan, 2, I, E).value
        assert sympy.Rational(got.numerator, got.denominator) == expected
        values[fan.names(I)] = got
    assert values == {"{e1,e2}": F(11, 24), "{e1,-e2}": F(1, 24),
                      "{e2,-e1}": F(1, 24), "{-e1,-e2}": F(11, 24)}
    assert sum(values.values()) == 1


def test_mu_todd_singular_against_sympy():
    # cone {(-1,0),(1,2)}: H = Z/2, nontrivial element acts by -1 on both slots
    vectors = [(-1, 0), (1, 2)]
    v = (3, 7)
    from toricmu.exact_core import coordinates
    ca, cb = coordinates(vectors, v)
    ca, cb = sympy.Rational(ca.numerator, ca.denominator), sympy.Rational(cb.numerator, cb.denominator)
    twisted = 1 / ((1 + sympy.exp(-ca * s)) * (1 + sympy.exp(-cb * s)))
    expected = (sympy_mu2(ca, cb) + sympy.series(twisted, s, 0, 1).removeO().coeff(s, 0)) / 2
    got = mu_todd_at(vectors, v)
    assert sympy.Rational(got.numerator, got.denominator) == expected


@pytest.mark.parametrize("vectors", [[(1, 0), (0, 1)], [(-1, 0), (1, 2)], [(1, 0, 0), (1, 2, 0)]])
def test_mu_todd_scale_invariant(vectors):
    v = [3 * a + 5 * b for a, b in zip(*vectors)]
    base = mu_todd_at(vectors, v)
    for scale in (F(-3, 2), 7, F(1, 5)):
        assert mu_todd_at(vectors, [scale * x for x in v]) == base


@pytest.mark.parametrize("name", FANS)
def test_corollary_ak(name):
    f = get(name)
    a = ehrhart(f.fan, f.xi)
    for k in range(f.fan.rank + 1):
        for seed in range(3):
            E = sample_generic_E(f.fan, k, seed) if k else None
            assert corollary_ak_sum(f.fan, f.xi, k, E) == a[k]


def _random_xi(fan, rng):
    return XiClass(fan, tuple(rng.randint(-3, 3) for _ in range(fan.m)))


def test_theorem_main_base_case(F3):
    fan = F3.fan
    rng = random.Random(0)
    E = sample_generic_E(fan, 2, 0)
    for J0 in fan.faces_of_dim(2):
        for _ in range(3):
            assert verify_theorem_main(CohClass.x_face(fan, J0), _random_xi(fan, rng), E).ok


def test_theorem_main_todd_component(F1):
    fan = F1.fan
    x = todd_class(fan, 2).homogeneous(1)
    rng = random.Random(2)
    E = sample_generic_E(fan, 1, 0)
    for _ in range(3):
        assert verify_theorem_main(x, _random_xi(fan, rng), E).ok


@pytest.mark.parametrize("name", ["MF1", "F3", "T3"])
def test_theorem_main_spanning_set(name):
    fan = get(name).fan
    rng = random.Random(11)
    xis = [_random_xi(fan, rng) for _ in range(3)]
    for k in range(1, fan.rank + 1):
        for seed in range(2):
            E = sample_generic_E(fan, k, seed)
            for x in spanning_set(fan, k):
                for xi in xis:
                    assert verify_theorem_main(x, xi, E).ok


@pytest.mark.parametrize("name", ["F1", "F3"])
def test_rhs_constant_on_grassmannian(name):
    fan = get(name).fan
    rng = random.Random(4)
    xi = _random_xi(fan, rng)
    for k in range(1, fan.rank + 1):
        for x in spanning_set(fan, k):
            values = {theorem_main_rhs(x, xi, sample_generic_E(fan, k, seed)) for seed in range(5)}
            assert len(values) == 1


def test_single_mu_not_constant(F1):
    fan = F1.fan
    values = {mu_todd(fan, 2, fan.cones[0], sample_generic_E(fan, 2, seed)).value
              for seed in range(5)}
    assert len(values) > 1


def test_corollary_main(F1, F3):
    for fan in (F1.fan,):
        for x in [CohClass.monomial(fan, e) for e in
                  [(2, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 1), (0, 2, 0, 0)]]:
            for seed in range(2):
                assert verify_corollary_main(x, sample_generic_E(fan, 2, seed)).ok
    fan = F3.fan
    x = todd_class(fan, 2).homogeneous(2)
    for seed in range(2):
        assert verify_corollary_main(x, sample_generic_E(fan, 2, seed)).ok
    J0 = fan.cones[0]
    assert verify_corollary_main(CohClass.x_face(fan, J0), sample_generic_E(fan, 2, 0)).ok


def test_corollary_main_detects_wrong_coefficients(F1):
    from toricmu.eq_cohomology import GradedQuotient
    fan = F1.fan
    gq = GradedQuotient(fan, 2)
    # a single vertex class is nonzero in H^4
    assert gq.reduce(CohClass.x_face(fan, fan.cones[0])) != {}


@pytest.mark.parametrize("name", FANS)
def test_lemma_wEvJ(name):
    fan = get(name).fan
    for k in range(1, fan.rank + 1):
        E = sample_generic_E(fan, k, 2)
        for J in fan.faces_of_dim(k):
            assert verify_lemma_wEvJ(fan, J, E).ok
            assert verify_lemma_wEvJ(fan, J, E, flip=True).ok


def test_lemma_wEvJ_unit_square(F1):
    E = GrassmannPoint.of(2, [(1, 2)])
    for I in F1.fan.cones:
        assert verify_lemma_wEvJ(F1.fan, I, E).ok


@pytest.mark.parametrize("name", FANS)
def test_lemma_MKQ(name):
    fan = get(name).fan
    for k in range(1, fan.rank + 1):
        E = sample_generic_E(fan, k, 0)
        for size in range(k):
            for K in fan.faces_of_dim(size):
                assert verify_lemma_MKQ(fan, K, E).ok


@pytest.mark.parametrize("name", FANS)
def test_mu_formula_equivalence(name):
    """mu of the Todd component equals |H_J| times the averaged mu_k."""
    fan = get(name).fan
    todd = todd_class(fan, fan.rank)
    for k in range(1, fan.rank + 1):
        for seed in range(3):
            E = sample_generic_E(fan, k, seed)
            for J in fan.faces_of_dim(k):
                assert verify_mu_equivalence(fan, J, E, todd).ok


def test_case_a_linearity(F3):
    fan = F3.fan
    E = sample_generic_E(fan, 2, 0)
    u = (2, -3)
    K = (1,)
    x = theta(fan, u) * CohClass.x_face(fan, K)
    for J in fan.faces_of_dim(2):
        direct = mu(x, J, E).value
        expanded = sum(dot(u, fan.vectors[i]) * mu(CohClass.x(fan, i) * CohClass.x_face(fan, K), J, E).value
                       for i in range(fan.m))
        assert direct == expanded


QUADRANT = ([(1, 0), (0, 1)], [[(1, 0), (1, 1)], [(1, 1), (0, 1)]])
SINGULAR = ([(1, 0), (1, 2)], [[(1, 0), (1, 1)], [(1, 1), (1, 2)]])


@pytest.mark.parametrize("parent,pieces", [QUADRANT, SINGULAR])
def test_mu_additivity(parent, pieces):
    for seed in range(3):
        E = sample_plane_for_cones([parent] + pieces, 2, seed)
        assert verify_mu_additivity(parent, [parent], E).ok
        assert verify_mu_additivity(parent, pieces, E).ok


def test_mu_additivity_quadrant_value():
    E = GrassmannPoint.of(2, [(1, 2)])
    parent, pieces = QUADRANT
    v = verify_mu_additivity(parent, pieces, E)
    assert v.ok and v.lhs == F(11, 24)


def test_mu_additivity_rejects_outside_piece():
    E = GrassmannPoint.of(2, [(1, 3)])
    assert not verify_mu_additivity([(1, 0), (0, 1)], [[(1, 0), (-1, 1)]], E).ok


@pytest.mark.parametrize("parent,pieces", [QUADRANT, SINGULAR])
@pytest.mark.parametrize("order", [0, 1, 2, 3])
def test_td_additivity(parent, pieces, order):
    for v in [(3, 7), (-5, 2)]:
        assert verify_td_additivity(parent, [parent], v, order).ok
        assert verify_td_additivity(parent, pieces, v, order).ok


def test_cone_todd_series_against_sympy():
    v = (3, 7)
    series = cone_todd_series([(1, 0), (0, 1)], v, 2)
    expr = 1 / ((1 - sympy.exp(-3 * s)) * (1 - sympy.exp(-7 * s)))
    ser = sympy.expand(sympy.series(expr, s, 0, 3).removeO())
    for d in range(-2, 3):
        got = series.coeff(d)
        assert sympy.Rational(got.numerator, got.denominator) == ser.coeff(s, d)
