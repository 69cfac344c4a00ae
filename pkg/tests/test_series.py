from fractions import Fraction

import pytest

from wfk.groups import cyclic_group, trivial_group
from wfk.series import (
    GSet,
    NonIntegralResult,
    PowerSeries,
    euler_product,
    gottsche_poincare,
    hodge_product,
    orbifold_euler_bruteforce,
    swap_action,
    wreath_gset,
    wreath_orbifold_euler_check,
)
from wfk.wreath import enumerate_types


def pentagonal_partition_numbers(order):
    """Independent oracle: p(n) by Euler's pentagonal-number recurrence."""
    p = [1] + [0] * order
    for n in range(1, order + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > n and g2 > n:
                break
            sign = -1 if k % 2 == 0 else 1
            if g1 <= n:
                total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


def test_euler_product_partition_numbers():
    order = 12
    coeffs = euler_product(1, order).q_coefficients_scalar()
    assert coeffs == [Fraction(x) for x in pentagonal_partition_numbers(order)]


def test_euler_product_zero_and_two():
    assert euler_product(0, 6).q_coefficients_scalar() == [1, 0, 0, 0, 0, 0, 0]
    two = euler_product(2, 4).q_coefficients_scalar()
    assert two == [1, 2, 5, 10, 20]
    # cross-module count: types of Z/2 wreath levels
    z2 = cyclic_group(2)
    assert [len(enumerate_types(z2, n)) for n in range(5)] == two


def test_euler_product_negative_exponent():
    series = euler_product(-1, 6) * euler_product(1, 6)
    assert series.q_coefficients_scalar() == [1, 0, 0, 0, 0, 0, 0]


def test_euler_exponent_additivity():
    order = 12
    for e1, e2 in ((1, 1), (2, 3), (-2, 5)):
        lhs = euler_product(e1, order) * euler_product(e2, order)
        assert lhs == euler_product(e1 + e2, order)


def test_gottsche_q1_coefficient():
    b = (1, 2, 3, 2, 1)
    series = gottsche_poincare(b, 3)
    poly = series.q_coefficient(1)
    # q^1 coefficient is b0 + b1 t + b2 t^2 + b3 t^3 + b4 t^4
    assert poly == {(0,): 1, (1,): 2, (2,): 3, (3,): 2, (4,): 1}


def test_gottsche_p2_q2_frozen():
    series = gottsche_poincare((1, 0, 1, 0, 1), 4)
    poly = series.q_coefficient(2)
    assert poly == {(0,): 1, (2,): 2, (4,): 3, (6,): 2, (8,): 1}


def test_gottsche_t_specializations():
    b = (1, 0, 1, 0, 1)
    order = 8
    series = gottsche_poincare(b, order)
    at1 = series.substitute_unit("t", 1)
    # h_ev = 3, h_odd = 0: matches prod (1-q^m)^(-3)
    assert at1 == euler_product(3, order)
    atm1 = series.substitute_unit("t", -1)
    assert atm1 == euler_product(1 - 0 + 1 - 0 + 1, order)


def test_gottsche_with_odd_betti_at_unit():
    b = (1, 2, 2, 2, 1)
    order = 6
    series = gottsche_poincare(b, order)
    h_ev, h_odd = 4, 4
    at1 = series.substitute_unit("t", 1)
    # (1+q^m)^{h_odd} / (1-q^m)^{h_ev} expansion equals the specialization
    expected = euler_product(h_ev, order)
    for m in range(1, order + 1):
        from wfk.series import _binomial_plus
        expected = expected * _binomial_plus(("q",), order, {"q": m}, h_odd)
    assert at1 == expected
    # Euler number 0: t = -1 gives 1
    atm1 = series.substitute_unit("t", -1)
    assert atm1.q_coefficients_scalar() == [1] + [0] * order


def test_graded_dimension_matches_product_formula():
    # cross-module: Fock monomial counts equal the product expansion
    from wfk.fock import ColorSpace, graded_dimension
    from wfk.series import _binomial_plus
    profiles = [(1, 0), (0, 1), (3, 0), (2, 2)]
    order = 6
    for h_ev, h_odd in profiles:
        space = ColorSpace([f"e{i}" for i in range(h_ev)] + [f"o{i}" for i in range(h_odd)],
                           [0] * h_ev + [1] * h_odd,
                           [[0] * (h_ev + h_odd)] * (h_ev + h_odd))
        counts = graded_dimension(space, order)
        series = euler_product(h_ev, order)
        for m in range(1, order + 1):
            series = series * _binomial_plus(("q",), order, {"q": m}, h_odd)
        assert [Fraction(c) for c in counts] == series.q_coefficients_scalar()


def test_hodge_q1_is_e_polynomial():
    h = {(0, 0): 1, (1, 1): 1, (2, 2): 1}
    series = hodge_product(h, 3)
    poly = series.q_coefficient(1)
    assert poly == {(0, 0): 1, (1, 1): -1 * -1, (2, 2): 1}
    # e(X; x, y) = sum (-1)^(s+t) h^(s,t) x^s y^t: all plus for P2
    assert poly == {(0, 0): 1, (1, 1): 1, (2, 2): 1}


def test_hodge_p2_q2_specialization_matches_poincare():
    h = {(0, 0): 1, (1, 1): 1, (2, 2): 1}
    series = hodge_product(h, 2)
    # substitute x = y = t by re-keying exponents
    poly = series.q_coefficient(2)
    collapsed = {}
    for (s, t), c in poly.items():
        collapsed[s + t] = collapsed.get(s + t, Fraction(0)) + c
    expected = gottsche_poincare((1, 0, 1, 0, 1), 2).q_coefficient(2)
    assert collapsed == {k[0]: v for k, v in expected.items()}


def test_hodge_structural_identity():
    h1 = {(0, 0): 1, (1, 1): 4, (2, 2): 1}
    h2 = dict(h1)
    assert hodge_product(h1, 4) == hodge_product(h2, 4)


def test_orbifold_point_counts_classes():
    for G in (cyclic_group(2), cyclic_group(3), cyclic_group(4)):
        S = GSet.trivial(G, 1)
        assert orbifold_euler_bruteforce(S) == len(G.conjugacy())


def test_orbifold_trivial_group():
    S = GSet.trivial(trivial_group(), 5)
    assert orbifold_euler_bruteforce(S) == 5


def test_orbifold_swap_frozen():
    # Z/2 swapping two points: (2 + 0 + 0 + 0)/2 = 1
    S = swap_action(cyclic_group(2))
    assert orbifold_euler_bruteforce(S) == 1


def test_wreath_orbifold_z2_point():
    S = GSet.trivial(cyclic_group(2), 1)
    rep = wreath_orbifold_euler_check(S, 4)
    assert rep.passed
    values = [p.lhs for p in rep.probes]
    assert values == ["1", "2", "5", "10", "20"]


def test_wreath_orbifold_trivial_point():
    S = GSet.trivial(trivial_group(), 1)
    rep = wreath_orbifold_euler_check(S, 4)
    assert rep.passed
    assert [p.lhs for p in rep.probes] == ["1", "1", "2", "3", "5"]


def test_wreath_orbifold_z3_and_two_points():
    assert wreath_orbifold_euler_check(GSet.trivial(cyclic_group(3), 1), 3).passed
    assert wreath_orbifold_euler_check(swap_action(cyclic_group(2)), 3).passed
    assert wreath_orbifold_euler_check(GSet.trivial(trivial_group(), 2), 4).passed


def test_action_validation():
    G = cyclic_group(2)
    with pytest.raises(ValueError):
        GSet(G, [[0, 1], [1, 1]])  # tau not a bijection compatible with product


def test_series_ring_guards():
    a = euler_product(1, 5)
    b = euler_product(1, 6)
    with pytest.raises(ValueError):
        _ = a * b
    with pytest.raises(ValueError):
        PowerSeries(("t", "q"), 3)
