import math

import pytest

import oracles

from mosums import (
    EXACT,
    MOParams,
    c_closed,
    c_rational_oracle,
    c_table,
    first_difference,
    mo_coefficient,
    modular,
    prefactor_generic,
    sigma,
    u_series,
    u_series_definition,
    u_series_identity,
    u_series_identity_generic,
)


# -- closed-form coefficients ---------------------------------------------------


def test_c_closed_binomial_case():
    assert c_closed(2, 1, 3) == math.comb(4, 2) == 6
    assert c_closed(2, 3, 3) == 1
    assert [c_closed(2, 2, n) for n in range(9)] == [0, 0, 1, 5, 15, 35, 70, 126, 210]


def test_c_closed_vanishes_below_t():
    for a in (-2, -1, 0, 1, 2):
        for t in range(1, 7):
            for n in range(t):
                assert c_closed(a, t, n) == 0


def test_c_closed_frozen_rows():
    assert [c_closed(-2, 1, n) for n in range(7)] == [0, 1, -5, 14, -30, 55, -91]
    assert [c_closed(-2, 2, n) for n in range(9)] == [0, 0, 1, -7, 27, -77, 182, -378, 714]
    assert [c_closed(-1, 2, n) for n in range(9)] == [0, 0, 1, -4, 6, -1, -11, 18, -6]
    assert [c_closed(0, 2, n) for n in range(9)] == [0, 0, 1, -1, -3, 3, 6, -6, -10]
    assert [c_closed(1, 2, n) for n in range(9)] == [0, 0, 1, 2, 0, -5, -7, 0, 12]
    assert [c_closed(1, 1, n) for n in range(7)] == [0, 1, 1, -1, -3, -2, 2]


def test_c_closed_rejects_unsupported_parameters():
    with pytest.raises(ValueError):
        c_closed(3, 1, 5)
    with pytest.raises(ValueError):
        c_closed(2, 0, 5)


def test_c_rational_examples():
    assert c_rational_oracle(2, 1, 3) == 6
    assert c_rational_oracle(-2, 1, 1) == 1
    assert c_rational_oracle(7, 2, 1) == 0


def test_c_closed_equals_rational_extraction():
    for a in (-2, -1, 0, 1, 2):
        for t in range(1, 7):
            for n in range(31):
                assert c_closed(a, t, n) == c_rational_oracle(a, t, n), (a, t, n)


def test_c_rational_matches_naive_polynomial_oracle():
    for a in (-4, -2, 0, 3, 5):
        for t in (1, 2, 3):
            for n in range(16):
                assert c_rational_oracle(a, t, n) == oracles.c_oracle(a, t, n), (a, t, n)


def test_division_in_closed_form_is_exact():
    # (2t+1) | (2n+1) * binom(n+t, 2t); c_closed asserts this internally
    for t in range(1, 31):
        for n in range(201):
            assert ((2 * n + 1) * math.comb(n + t, 2 * t)) % (2 * t + 1) == 0
    assert c_closed(-2, 30, 200) == c_rational_oracle(-2, 30, 200)


def test_c_table():
    assert c_table(-2, 2, 8) == [0, 0, 1, -7, 27, -77, 182, -378, 714]


# -- parameter validation ----------------------------------------------------------


def test_params_require_positive_t():
    with pytest.raises(ValueError):
        MOParams(1, 0)
    with pytest.raises(ValueError):
        MOParams(1, -3)
    assert MOParams(7, 1).t == 1


# -- defining-sum expansion ----------------------------------------------------------


def test_definition_row_is_divisor_sums():
    s = u_series_definition(MOParams(-2, 1), EXACT, 12)
    assert list(s.coeffs) == [0, 1, 3, 4, 7, 6, 12, 8, 15, 13, 18, 12, 28]
    assert s.coefficient_at(6) == 12


def test_definition_matches_distinct_size_dp():
    for a, t in ((-2, 2), (1, 2), (-2, 1), (3, 2), (-5, 3)):
        s = u_series_definition(MOParams(a, t), EXACT, 30)
        assert list(s.coeffs) == oracles.macmahon_counts(a, t, 30), (a, t)


def test_support_starts_at_triangular_number():
    for a in (-2, 0, 2, 5):
        for t in (1, 2, 3, 4):
            s = u_series_definition(MOParams(a, t), EXACT, 25)
            bound = t * (t + 1) // 2
            for n in range(min(bound, 26)):
                assert s.coefficient_at(n) == 0
            if bound <= 25:
                assert s.coefficient_at(bound) == 1


def test_definition_with_tiny_order_is_zero():
    s = u_series_definition(MOParams(1, 4), EXACT, 5)
    assert s.is_zero()


def test_exact_vanishing_on_the_shifted_progression():
    # rows for a=1 vanish identically at indices 2 mod 3
    for t in (1, 2, 3, 4):
        s = u_series_definition(MOParams(1, t), EXACT, 50)
        for n in range(2, 51, 3):
            assert s.coefficient_at(n) == 0


# -- product-identity expansion ---------------------------------------------------------


def test_identity_equals_definition_small_grid():
    for a in (-2, -1, 0, 1, 2):
        for t in (1, 2, 3):
            d = u_series_definition(MOParams(a, t), EXACT, 60)
            i = u_series_identity(MOParams(a, t), EXACT, 60)
            assert first_difference(d, i) is None, (a, t)


def test_identity_mod3_on_shifted_progression():
    s = u_series_identity(MOParams(1, 3), EXACT, 40)
    for n in range(1, 41, 3):
        assert s.coefficient_at(n) % 3 == 0


def test_identity_requires_closed_form_a():
    with pytest.raises(ValueError):
        u_series_identity(MOParams(3, 1), EXACT, 10)


def test_identity_accepts_shared_prefactor():
    from mosums import prefactor_series

    pre = prefactor_series(-2, EXACT, 80)
    with_pre = u_series_identity(MOParams(-2, 2), EXACT, 40, prefactor=pre.truncate(40))
    plain = u_series_identity(MOParams(-2, 2), EXACT, 40)
    assert with_pre.coeffs == plain.coeffs
    longer = u_series_identity(MOParams(-2, 2), EXACT, 40, prefactor=pre)
    assert longer.coeffs == plain.coeffs


def test_identity_rejects_mismatched_prefactor():
    from mosums import prefactor_series

    short = prefactor_series(-2, EXACT, 10)
    with pytest.raises(ValueError):
        u_series_identity(MOParams(-2, 2), EXACT, 40, prefactor=short)
    wrong_ring = prefactor_series(-2, modular(5), 40)
    with pytest.raises(ValueError):
        u_series_identity(MOParams(-2, 2), EXACT, 40, prefactor=wrong_ring)


# -- generic quadratic parameter ------------------------------------------------------------


def test_generic_prefactor_agrees_with_closed_forms():
    for a in (-2, -1, 0, 1, 2):
        from mosums import prefactor_series

        assert prefactor_generic(a, EXACT, 50).coeffs == prefactor_series(a, EXACT, 50).coeffs


def test_generic_identity_path_matches_definition():
    for a in range(-5, 6):
        for t in (1, 2, 3):
            d = u_series_definition(MOParams(a, t), EXACT, 60)
            i = u_series_identity_generic(MOParams(a, t), EXACT, 60)
            assert first_difference(d, i) is None, (a, t)


# -- coefficient conveniences -----------------------------------------------------------------


def test_mo_coefficient_examples():
    assert mo_coefficient(-2, 1, 6) == 12
    for a, t in ((3, 1), (-2, 2), (1, 3)):
        assert mo_coefficient(a, t, t * (t + 1) // 2) == 1


def test_u_series_dispatcher():
    by_def = u_series(MOParams(1, 2), EXACT, 20, method="definition")
    by_id = u_series(MOParams(1, 2), EXACT, 20, method="identity")
    assert by_def.coeffs == by_id.coeffs
    assert list(by_def.coeffs[:13]) == [0, 0, 0, 1, 0, 0, 3, 0, 0, 4, 0, 0, 7]
    with pytest.raises(ValueError):
        u_series(MOParams(1, 2), EXACT, 20, method="magic")


def test_modular_rings_work_end_to_end():
    exact = u_series_identity(MOParams(-2, 2), EXACT, 60)
    mod5 = u_series_identity(MOParams(-2, 2), modular(5), 60)
    assert [c % 5 for c in exact.coeffs] == list(mod5.coeffs)


# -- divisor-sum helper ---------------------------------------------------------------------


def test_sigma_matches_trial_division_oracle():
    for n in range(1, 201):
        assert sigma(n) == oracles.sigma_divisors(n)
    assert sigma(6) == 12
    assert sigma(1) == 1
    with pytest.raises(ValueError):
        sigma(0)
