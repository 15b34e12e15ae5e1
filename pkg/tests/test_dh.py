import random
from fractions import Fraction as F
from itertools import product

import pytest

from toricmu.dh import (
    MultiPolytope,
    count_points,
    count_via_todd,
    dhf_eval,
    ehrhart,
    rigidity_check,
    todd_class,
    todd_class_K,
    volume,
)
from toricmu.eq_cohomology import CohClass
from toricmu.errors import FanError, GenericityError
from toricmu.fixtures import get
from toricmu.polytope import brute_count, face_volume_geometric

ALL = ["F1", "F2'", "F3", "MF1", "T3"]


def test_dhf_examples(F1, MF1):
    po = MultiPolytope(F1.fan, F1.xi)
    assert dhf_eval(po, (F(1, 2), F(1, 2))) == 1
    assert dhf_eval(po, (2, 2)) == 0
    assert dhf_eval(MultiPolytope(MF1.fan, MF1.xi), (F(1, 2),)) == 2
    with pytest.raises(GenericityError):
        dhf_eval(po, (1, F(1, 2)))


@pytest.mark.parametrize("name", ALL)
def test_dhf_independent_of_v(name):
    f = get(name)
    po = MultiPolytope(f.fan, f.xi)
    rng = random.Random(5)
    points = []
    while len(points) < 10:
        u = tuple(F(rng.randint(-7, 9), 4) for _ in range(f.fan.rank))
        if not po.on_wall(u):
            points.append(u)
    for u in points:
        values = {dhf_eval(po, u, f.fan.generic_vector(seed)) for seed in range(5)}
        assert len(values) == 1


@pytest.mark.parametrize("name", ["F1", "F3", "MF1"])
def test_dhf_support_in_vertex_hull(name):
    f = get(name)
    po = MultiPolytope(f.fan, f.xi)
    verts = list(po.vertices.values())
    lo = [min(p[r] for p in verts) for r in range(f.fan.rank)]
    hi = [max(p[r] for p in verts) for r in range(f.fan.rank)]
    for u in product(*[[l - F(3, 4), h + F(3, 4), h + F(5, 2)] for l, h in zip(lo, hi)]):
        assert dhf_eval(po, u) == 0


def test_count_points_examples(F1, F3, MF1):
    assert count_points(MultiPolytope(F1.fan, F1.xi)) == 4
    assert F3.xi.coeffs == (0, 0, 2)
    assert count_points(MultiPolytope(F3.fan, F3.xi)) == 4
    assert count_points(MultiPolytope(MF1.fan, MF1.xi)) == 6


def test_count_requires_cartier(F1):
    from toricmu.eq_cohomology import XiClass
    xi = XiClass(F1.fan, (F(1, 2), 1, 0, 0))
    with pytest.raises(FanError):
        count_points(MultiPolytope(F1.fan, xi))
    with pytest.raises(FanError):
        count_via_todd(F1.fan, xi)


def _x(fan, *ids):
    out = CohClass.one(fan)
    for i in ids:
        out = out * CohClass.x(fan, fan.index_of(i))
    return out


def test_todd_class_unimodular(F1):
    fan = F1.fan
    T = todd_class(fan, 2)
    assert T.homogeneous(0) == CohClass.one(fan)
    # prod_i (1 + x_i/2 + x_i^2/12), pruned to faces
    expected = CohClass.one(fan) * 0
    for i in fan.edge_ids:
        expected = expected + _x(fan, i) * F(1, 2) + _x(fan, i, i) * F(1, 12)
    for I in fan.cones:
        a, b = (fan.edge_ids[j] for j in I)
        expected = expected + _x(fan, a, b) * F(1, 4)
    assert T.truncated(2) - CohClass.one(fan) == expected


def test_todd_class_singular_average(F3):
    # identity:  sum x_i^2/12 + sum_{i<j} x_i x_j / 4
    # g = (1/2, 0, 1/2): (x0/2)(x2/2) added once
    fan = F3.fan
    T = todd_class(fan, 2).homogeneous(2)
    expected = (_x(fan, "f0", "f0") + _x(fan, "f1", "f1") + _x(fan, "f2", "f2")) * F(1, 12) \
        + (_x(fan, "f0", "f1") + _x(fan, "f1", "f2")) * F(1, 4) + _x(fan, "f0", "f2") * F(1, 2)
    assert T == expected


def test_todd_class_K(F1):
    fan = F1.fan
    assert todd_class_K(fan, (), 2) == todd_class(fan, 2)
    K = fan.simplex(["e1"])
    T = todd_class_K(fan, K, 1)
    assert T == CohClass.one(fan) + (_x(fan, "e2") + _x(fan, "-e2")) * F(1, 2)
    I = fan.cones[0]
    assert todd_class_K(fan, I, 0) == CohClass.one(fan)


@pytest.mark.parametrize("name", ALL)
def test_counts_agree_on_all_faces(name):
    f = get(name)
    fan = f.fan
    for k in range(fan.rank + 1):
        for K in fan.faces_of_dim(k):
            c = count_via_todd(fan, f.xi, K)
            assert c == count_points(MultiPolytope(fan, f.xi, K))
            if f.polytope is not None:
                assert c == brute_count(f.polytope, 1, K)


def test_volume_examples(F1, F3):
    assert volume(F1.fan, F1.xi) == 1
    assert volume(F3.fan, F3.xi) == 1
    sing = F3.fan.simplex(["f0", "f2"])
    from toricmu.eq_cohomology import p_star
    assert p_star(CohClass.x_face(F3.fan, sing), F3.xi) == F(1, 2)
    assert volume(F3.fan, F3.xi, sing) == 1


@pytest.mark.parametrize("name", ["F1", "F2'", "F3", "T3"])
def test_volume_matches_geometry_all_faces(name):
    f = get(name)
    for k in range(f.fan.rank + 1):
        for K in f.fan.faces_of_dim(k):
            assert volume(f.fan, f.xi, K) == face_volume_geometric(f.polytope, K)


def test_ehrhart_examples(F1, F2p, MF1):
    assert ehrhart(F1.fan, F1.xi) == [1, 2, 1]
    assert ehrhart(F2p.fan, F2p.xi) == [F(1, 2), F(3, 2), 1]
    assert ehrhart(MF1.fan, MF1.xi) == [4, 2]


@pytest.mark.parametrize("name", ALL)
def test_ehrhart_predicts_dilates(name):
    f = get(name)
    n = f.fan.rank
    a = ehrhart(f.fan, f.xi)
    for nu in range(1, n + 3):
        predicted = sum(c * nu ** (n - k) for k, c in enumerate(a))
        assert predicted == count_points(MultiPolytope(f.fan, f.xi.scaled(nu)))


@pytest.mark.parametrize("name", ["F1", "F2'", "F3", "T3"])
def test_leading_coefficients(name):
    f = get(name)
    fan = f.fan
    a = ehrhart(fan, f.xi)
    assert a[0] == volume(fan, f.xi)
    assert a[1] == F(1, 2) * sum(volume(fan, f.xi, (i,)) for i in range(fan.m))


def test_leading_coefficients_multifan(MF1):
    a = ehrhart(MF1.fan, MF1.xi)
    assert a[0] == volume(MF1.fan, MF1.xi)
    assert a[1] == F(1, 2) * sum(volume(MF1.fan, MF1.xi, (i,)) for i in range(MF1.fan.m))


@pytest.mark.parametrize("name,value", [("F1", 1), ("F2'", 1), ("F3", 1), ("MF1", 2), ("T3", 1)])
def test_rigidity(name, value):
    v = rigidity_check(get(name).fan)
    assert v.ok, v.detail
    assert v.detail == f"constant = {value}"
