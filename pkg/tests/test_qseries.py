import random

import pytest

from mosums import (
    EXACT,
    CoefficientRing,
    NonUnitError,
    RingMismatchError,
    TruncatedSeries,
    TruncationError,
    first_difference,
    make,
    modular,
)


def _random_series(rng, ring, order, unit=False):
    coeffs = [rng.randrange(-50, 51) for _ in range(order + 1)]
    if unit:
        coeffs[0] = rng.choice([1, -1]) if ring.is_exact else rng.choice([1, 2, 3, 4])
    return make(ring, coeffs, order)


# -- rings --------------------------------------------------------------------


def test_exact_ring_descriptor_and_repr():
    assert EXACT.is_exact
    assert EXACT.descriptor() == "exact"
    assert repr(EXACT) == "Z"
    assert EXACT.reduce(-7) == -7


def test_modular_ring_reduces_to_canonical_range():
    r5 = modular(5)
    assert r5.descriptor() == "mod:5"
    assert repr(r5) == "Z/5"
    assert r5.reduce(7) == 2
    assert r5.reduce(-1) == 4
    assert all(0 <= r5.reduce(x) < 5 for x in range(-20, 20))


def test_modulus_below_two_rejected():
    with pytest.raises(ValueError):
        modular(1)
    with pytest.raises(ValueError):
        modular(0)


def test_ring_descriptor_round_trip():
    for ring in (EXACT, modular(2), modular(625)):
        assert CoefficientRing.from_descriptor(ring.descriptor()) == ring


def test_exact_units_are_plus_minus_one():
    assert EXACT.is_unit(1) and EXACT.is_unit(-1)
    assert not EXACT.is_unit(2)
    assert EXACT.unit_inverse(-1) == -1


def test_modular_units_are_coprime_residues():
    r6 = modular(6)
    assert r6.is_unit(5) and not r6.is_unit(2) and not r6.is_unit(3)
    assert (r6.unit_inverse(5) * 5) % 6 == 1


# -- construction -------------------------------------------------------------


def test_make_pads_with_zeros():
    s = make(EXACT, [1, 1], 2)
    assert s.coeffs == (1, 1, 0)
    assert s.order == 2


def test_make_reduces_into_modular_ring():
    s = make(modular(5), [7], 0)
    assert s.coeffs == (2,)


def test_make_empty_is_zero():
    s = make(EXACT, [], 3)
    assert s.coeffs == (0, 0, 0, 0)
    assert s.is_zero()


def test_make_rejects_excess_coefficients():
    with pytest.raises(ValueError):
        make(EXACT, [1, 2, 3], 1)


def test_monomial():
    s = TruncatedSeries.monomial(EXACT, 5, 2, 4)
    assert s.coeffs == (0, 0, 5, 0, 0)


def test_zero_and_one():
    assert TruncatedSeries.zero(EXACT, 2).coeffs == (0, 0, 0)
    assert TruncatedSeries.one(EXACT, 2).coeffs == (1, 0, 0)


# -- coefficient access -------------------------------------------------------


def test_coefficient_at():
    s = make(EXACT, [1, 2], 1)
    assert s.coefficient_at(1) == 2
    assert s.coefficient_at(0) == 1
    assert s[1] == 2


def test_coefficient_beyond_order_is_an_error():
    s = make(EXACT, [1, 2], 1)
    with pytest.raises(TruncationError):
        s.coefficient_at(5)
    # the error is an IndexError so it is never mistaken for a zero
    with pytest.raises(IndexError):
        s.coefficient_at(2)


def test_nonzero_items():
    s = make(EXACT, [0, 3, 0, -1], 3)
    assert s.nonzero_items() == [(1, 3), (3, -1)]


# -- arithmetic ---------------------------------------------------------------


def test_mul_difference_of_squares():
    s = make(EXACT, [1, 1], 2) * make(EXACT, [1, -1], 2)
    assert s.coeffs == (1, 0, -1)


def test_add_zero_is_identity():
    s = make(EXACT, [3, -2, 7], 2)
    assert (s + TruncatedSeries.zero(EXACT, 2)).coeffs == s.coeffs


def test_square_mod_two_collapses_cross_term():
    s = make(modular(2), [1, 1], 2)
    assert (s * s).coeffs == (1, 0, 1)


def test_sub():
    a = make(EXACT, [5, 5], 1)
    b = make(EXACT, [2, 7], 1)
    assert (a - b).coeffs == (3, -2)


def test_result_order_is_minimum_of_operands():
    a = make(EXACT, [1, 1, 1, 1], 3)
    b = make(EXACT, [1, 1], 1)
    assert (a * b).order == 1
    assert (a + b).order == 1


def test_ring_mismatch_rejected():
    a = make(EXACT, [1], 0)
    b = make(modular(5), [1], 0)
    with pytest.raises(RingMismatchError):
        a * b
    with pytest.raises(RingMismatchError):
        a + b


# -- inverse ------------------------------------------------------------------


def test_inverse_geometric_series():
    s = make(EXACT, [1, -1], 3)
    assert s.inverse().coeffs == (1, 1, 1, 1)


def test_inverse_of_one_is_one():
    assert TruncatedSeries.one(EXACT, 4).inverse().coeffs == (1, 0, 0, 0, 0)


def test_inverse_of_squared_binomial():
    s = make(EXACT, [1, 2, 1], 4)
    assert s.inverse().coeffs == (1, -2, 3, -4, 5)


def test_inverse_requires_unit_constant():
    with pytest.raises(NonUnitError):
        make(EXACT, [0, 1], 2).inverse()
    with pytest.raises(NonUnitError):
        make(EXACT, [2, 1], 2).inverse()
    with pytest.raises(NonUnitError):
        make(modular(6), [2, 1], 2).inverse()


def test_inverse_with_negative_unit_constant():
    s = make(EXACT, [-1, 1], 3)
    assert (s * s.inverse()).coeffs == (1, 0, 0, 0)


def test_random_unit_series_invert_cleanly():
    rng = random.Random(20240801)
    for ring in (EXACT, modular(7)):
        one = TruncatedSeries.one(ring, 64)
        for _ in range(100):
            s = _random_series(rng, ring, 64, unit=True)
            assert (s * s.inverse()).coeffs == one.coeffs


# -- pow ----------------------------------------------------------------------


def test_pow_square():
    assert make(EXACT, [1, 1], 2).pow(2).coeffs == (1, 2, 1)


def test_pow_zero_is_one():
    s = make(EXACT, [4, 5, 6], 2)
    assert s.pow(0).coeffs == (1, 0, 0)


def test_pow_cube():
    assert make(EXACT, [1, -1], 3).pow(3).coeffs == (1, -3, 3, -1)
    assert (make(EXACT, [1, -1], 3) ** 3).coeffs == (1, -3, 3, -1)


def test_pow_matches_repeated_mul():
    rng = random.Random(7)
    s = _random_series(rng, EXACT, 20)
    by_mul = TruncatedSeries.one(EXACT, 20)
    for _ in range(5):
        by_mul = by_mul * s
    assert s.pow(5).coeffs == by_mul.coeffs


# -- substitutions ------------------------------------------------------------


def test_substitute_power_spreads_exponents():
    s = make(EXACT, [1, 1], 1).substitute_power(3)
    assert s.order == 3
    assert s.coeffs == (1, 0, 0, 1)


def test_substitute_power_identity():
    s = make(EXACT, [3, 1, 4], 2)
    assert s.substitute_power(1) is s


def test_substitute_power_doubling():
    s = make(EXACT, [1, 1, 1], 2).substitute_power(2)
    assert s.coeffs == (1, 0, 1, 0, 1)


def test_substitute_power_composes_multiplicatively():
    rng = random.Random(11)
    s = _random_series(rng, EXACT, 10)
    assert s.substitute_power(2).substitute_power(3).coeffs == s.substitute_power(6).coeffs


def test_substitute_power_rejects_zero():
    with pytest.raises(ValueError):
        make(EXACT, [1], 0).substitute_power(0)


def test_negate_variable_alternates_signs():
    assert make(EXACT, [1, 1], 1).negate_variable().coeffs == (1, -1)
    assert make(EXACT, [1, 1, 1, 1], 3).negate_variable().coeffs == (1, -1, 1, -1)


def test_negate_variable_is_involution():
    rng = random.Random(13)
    s = _random_series(rng, EXACT, 30)
    assert s.negate_variable().negate_variable().coeffs == s.coeffs


def test_negate_variable_distributes_over_mul():
    rng = random.Random(17)
    a = _random_series(rng, EXACT, 25)
    b = _random_series(rng, EXACT, 25)
    assert (a * b).negate_variable().coeffs == (a.negate_variable() * b.negate_variable()).coeffs


# -- modular reduction --------------------------------------------------------


def test_reduce_mod_basics():
    assert make(EXACT, [5, 6, 7], 2).reduce_mod(5).coeffs == (0, 1, 2)
    assert TruncatedSeries.zero(EXACT, 3).reduce_mod(7).is_zero()
    assert make(EXACT, [-1], 0).reduce_mod(3).coeffs == (2,)


def test_reduce_mod_rejects_small_modulus():
    with pytest.raises(ValueError):
        make(EXACT, [1], 0).reduce_mod(1)


def test_reduce_mod_commutes_with_arithmetic():
    rng = random.Random(19)
    a = _random_series(rng, EXACT, 40)
    b = _random_series(rng, EXACT, 40)
    for m in (2, 3, 5, 9):
        assert (a * b).reduce_mod(m).coeffs == (a.reduce_mod(m) * b.reduce_mod(m)).coeffs
        assert (a + b).reduce_mod(m).coeffs == (a.reduce_mod(m) + b.reduce_mod(m)).coeffs
        assert a.pow(3).reduce_mod(m).coeffs == a.reduce_mod(m).pow(3).coeffs


# -- algebraic laws -----------------------------------------------------------


def test_ring_axioms_on_random_series():
    rng = random.Random(23)
    for ring in (EXACT, modular(11)):
        for _ in range(20):
            order = rng.randrange(0, 65)
            s1 = _random_series(rng, ring, order)
            s2 = _random_series(rng, ring, order)
            s3 = _random_series(rng, ring, order)
            assert (s1 * s2).coeffs == (s2 * s1).coeffs
            assert ((s1 * s2) * s3).coeffs == (s1 * (s2 * s3)).coeffs
            assert (s1 * (s2 + s3)).coeffs == (s1 * s2 + s1 * s3).coeffs


# -- truncation helpers -------------------------------------------------------


def test_truncate_and_extend():
    s = make(EXACT, [1, 2, 3, 4], 3)
    assert s.truncate(1).coeffs == (1, 2)
    assert s.truncate(3) is s
    assert s.extend_with_zeros(5).coeffs == (1, 2, 3, 4, 0, 0)
    with pytest.raises(TruncationError):
        s.truncate(4)
    with pytest.raises(ValueError):
        s.extend_with_zeros(2)


def test_scale():
    s = make(modular(5), [1, 2, 3], 2).scale(3)
    assert s.coeffs == (3, 1, 4)


# -- serialization ------------------------------------------------------------


def test_serialize_format_is_line_oriented():
    s = make(EXACT, [1, -2, 3], 2)
    assert s.serialize() == "exact; 2; 1 -2 3"
    t = make(modular(5), [7, 1], 1)
    assert t.serialize() == "mod:5; 1; 2 1"


def test_parse_round_trip_on_random_series():
    rng = random.Random(29)
    for ring in (EXACT, modular(13)):
        for _ in range(25):
            s = _random_series(rng, ring, rng.randrange(0, 40))
            back = TruncatedSeries.parse(s.serialize())
            assert back.ring == s.ring
            assert back.order == s.order
            assert back.coeffs == s.coeffs


def test_parse_rejects_malformed_lines():
    with pytest.raises(ValueError):
        TruncatedSeries.parse("exact; 2")
    with pytest.raises(ValueError):
        TruncatedSeries.parse("exact; 2; 1 2")  # declares order 2, carries 3 slots minus one
    with pytest.raises(ValueError):
        TruncatedSeries.parse("weird:4; 0; 1")


# -- comparison ---------------------------------------------------------------


def test_first_difference():
    a = make(EXACT, [1, 2, 3], 2)
    assert first_difference(a, make(EXACT, [1, 2, 3], 2)) is None
    assert first_difference(a, make(EXACT, [1, 5, 3], 2)) == 1
    # comparison runs over the common prefix only
    assert first_difference(a, make(EXACT, [1, 2], 1)) is None
