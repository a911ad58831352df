import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvhom import jets
from curvhom.jets import (
    Jet,
    jet_add,
    jet_compose_univariate,
    jet_constant,
    jet_derivative,
    jet_div,
    jet_exp,
    jet_log,
    jet_mul,
    jet_powi,
    jet_sin,
    jet_sqrt,
    jet_variable,
    partial,
)

T, X, Y = 0, 1, 2


def finite_jets(order=3):
    def build(values):
        return Jet(order, np.asarray(values))

    return st.lists(
        st.floats(min_value=-10, max_value=10, allow_nan=False),
        min_size=jets.table_size(order),
        max_size=jets.table_size(order),
    ).map(build)


def test_multi_index_tables_are_graded_prefixes():
    for order in range(6):
        assert jets.multi_indices(order) == jets.multi_indices(order + 1)[: jets.table_size(order)]
    assert jets.table_size(3) == 20  # C(6,3)


def test_product_rule_x_times_x():
    x = jet_variable(X, 2.0, 2)
    sq = jet_mul(x, x)
    assert sq.value == 4.0
    assert partial(sq, (0, 1, 0)) == 4.0
    assert partial(sq, (0, 2, 0)) == 2.0


def test_compose_exp_of_2x():
    inner = jet_mul(jet_constant(2.0, 3), jet_variable(X, 0.0, 3))
    e = jet_exp(inner)
    assert [partial(e, (0, k, 0)) for k in range(4)] == pytest.approx([1, 2, 4, 8])


def test_div_third_by_second_derivative_of_cubic():
    # h = t^3 at t = 2: h'' = 6t, h''' = 6
    t = jet_variable(T, 2.0, 5)
    h = jet_powi(t, 3)
    h2 = jet_derivative(jet_derivative(h, T), T)
    h3 = jet_derivative(h2, T)
    q = jet_div(h3, h2)
    assert q.value == pytest.approx(6.0 / 12.0)


def test_partial_examples():
    sq = jet_mul(jet_variable(X, 3.0, 2), jet_variable(X, 3.0, 2))
    assert partial(sq, (0, 1, 0)) == pytest.approx(6.0)

    inner = jet_mul(jet_constant(2.0, 2), jet_variable(X, 0.0, 2))
    assert partial(jet_exp(inner), (0, 2, 0)) == pytest.approx(4.0)

    assert partial(sq, (0, 0, 0)) == sq.value


def test_partial_rejects_out_of_order_index():
    j = jet_variable(X, 1.0, 2)
    with pytest.raises(ValueError):
        partial(j, (1, 1, 1))
    with pytest.raises(ValueError):
        partial(j, (0, -1, 0))


@given(finite_jets(), finite_jets())
def test_add_and_mul_commute(a, b):
    np.testing.assert_allclose(jet_add(a, b).coeffs, jet_add(b, a).coeffs, rtol=1e-12)
    np.testing.assert_allclose(jet_mul(a, b).coeffs, jet_mul(b, a).coeffs, rtol=1e-12, atol=1e-12)


@given(finite_jets(order=2), finite_jets(order=2), finite_jets(order=2))
@settings(max_examples=50)
def test_mul_associates(a, b, c):
    left = jet_mul(jet_mul(a, b), c)
    right = jet_mul(a, jet_mul(b, c))
    scale = max(1.0, np.abs(left.coeffs).max())
    np.testing.assert_allclose(left.coeffs / scale, right.coeffs / scale, atol=1e-12)


def test_mul_matches_leibniz_expansion_exhaustively():
    rng = np.random.default_rng(7)
    order = 3
    a = Jet(order, rng.normal(size=jets.table_size(order)))
    b = Jet(order, rng.normal(size=jets.table_size(order)))
    prod = jet_mul(a, b)
    for gamma in jets.multi_indices(order):
        total = 0.0
        for alpha in jets.multi_indices(order):
            beta = tuple(g - al for g, al in zip(gamma, alpha))
            if min(beta) < 0:
                continue
            w = math.prod(math.comb(g, al) for g, al in zip(gamma, alpha))
            total += w * partial(a, alpha) * partial(b, beta)
        assert partial(prod, gamma) == pytest.approx(total, rel=1e-12, abs=1e-12)


@given(finite_jets(), finite_jets())
@settings(max_examples=60)
def test_div_inverts_mul(a, b):
    if abs(b.value) < 0.1:
        return
    prod = jet_mul(a, b)
    back = jet_div(prod, b)
    scale = max(1.0, np.abs(a.coeffs).max())
    np.testing.assert_allclose(back.coeffs / scale, a.coeffs / scale, atol=1e-10)


def test_div_by_zero_value_jet():
    with pytest.raises(ZeroDivisionError):
        jet_div(jet_constant(1.0, 2), jet_variable(X, 0.0, 2))


def test_log_sin_sqrt_derivatives():
    x = jet_variable(X, 2.0, 4)
    lg = jet_log(x)
    assert [partial(lg, (0, k, 0)) for k in range(5)] == pytest.approx(
        [math.log(2), 0.5, -0.25, 0.25, -0.375]
    )
    s = jet_sin(jet_variable(X, 0.3, 3))
    assert [partial(s, (0, k, 0)) for k in range(4)] == pytest.approx(
        [math.sin(0.3), math.cos(0.3), -math.sin(0.3), -math.cos(0.3)]
    )
    r = jet_sqrt(jet_variable(X, 4.0, 2))
    assert [partial(r, (0, k, 0)) for k in range(3)] == pytest.approx([2.0, 0.25, -1.0 / 32])


def test_negative_integer_power():
    x = jet_variable(X, 2.0, 2)
    inv = jet_powi(x, -2)  # d/dx x^-2 = -2 x^-3, d2 = 6 x^-4
    assert [partial(inv, (0, k, 0)) for k in range(3)] == pytest.approx([0.25, -0.25, 0.375])


def test_domain_errors_in_univariate_functions():
    with pytest.raises(ValueError):
        jet_log(jet_constant(-1.0, 2))
    with pytest.raises(ValueError):
        jet_sqrt(jet_constant(0.0, 2))


def test_combined_order_is_min_of_operands():
    a = jet_variable(X, 1.0, 4)
    b = jet_variable(Y, 2.0, 2)
    assert jet_mul(a, b).order == 2
    assert jet_add(a, b).order == 2


def test_compose_needs_enough_outer_derivatives():
    with pytest.raises(ValueError):
        jet_compose_univariate(jet_variable(X, 0.0, 3), [1.0, 1.0])
