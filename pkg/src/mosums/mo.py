"""MacMahon-type sums of divisors U_t(a, q) and their coefficients MO(a, t; n).

U_t(a, q) = sum over 1 <= n_1 < ... < n_t of
    q^(n_1 + ... + n_t) / prod_k (1 + a q^(n_k) + q^(2 n_k)),

with U_0 = 1.  Specializations recover classical counting functions, e.g.
MO(-2, 1; n) is the divisor sum sigma(n).

Two independent expansion paths are provided:

  * u_series_definition  enumerates index tuples directly from the sum above;
  * u_series_identity    multiplies a closed eta-quotient prefactor by a
    sparse series supported on triangular numbers with closed-form
    coefficients c_n(a, t).

Agreement of the two paths to high order is the core self-check of the
package.  The identity path is the fast one and the default everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, isqrt

from .qseries import EXACT, CoefficientRing, TruncatedSeries
from .etaquotients import prefactor_series

SUPPORTED_A = (-2, -1, 0, 1, 2)


def c_closed(a: int, t: int, n: int) -> int:
    """Closed-form triangular coefficient c_n(a, t) for a in {-2,-1,0,1,2}.

    Each branch is a finite binomial sum or product; the a = -2 branch
    contains an exact division by 2t+1, asserted rather than rounded.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n < t:
        return 0
    if a == 2:
        return comb(n + t, 2 * t)
    if a == -2:
        num = (2 * n + 1) * comb(n + t, 2 * t)
        q, r = divmod(num, 2 * t + 1)
        assert r == 0, f"(2n+1) C(n+t,2t) not divisible by 2t+1 at t={t}, n={n}"
        return (-1) ** (n + t) * q
    if a == 0:
        m = (n + t) // 2
        return (-1) ** (n + m) * comb(m, t)
    if a == 1:
        s = 0
        for k in range(t, n + 1):
            s += (-1) ** (n + k) * (comb(n + k + 1, 2 * k + 1) + comb(n + k, 2 * k + 1)) * comb(k, t) * 3 ** (k - t)
        return s
    if a == -1:
        s = 0
        for k in range(t, n + 1):
            s += (-1) ** (n + k) * (comb(n + k + 1, 2 * k + 1) + comb(n + k, 2 * k + 1)) * comb(k, t)
        return s
    raise ValueError(f"no closed form for a={a}; supported: {SUPPORTED_A}")


def c_rational_oracle(a: int, t: int, n: int) -> int:
    """c_n(a, t) extracted from its rational generating function.

    c_n(a, t) = (-1)^(n-t) [z^n] z^t (1+z) / (1 + a z + z^2)^(t+1),
    valid for every integer a.  Slower than c_closed but branch-free;
    used to cross-check the per-a closed forms.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n < t:
        return 0
    order = n - t
    den = TruncatedSeries.make(EXACT, [1, a, 1][: order + 1], order)
    inv = den.inverse().pow(t + 1)
    num = TruncatedSeries.make(EXACT, [1, 1][: order + 1], order)
    val = num.mul(inv).coefficient_at(order)
    return (-1) ** (n - t) * val


def c_table(a: int, t: int, n_max: int) -> list[int]:
    """[c_0, ..., c_{n_max}] via the closed forms."""
    return [c_closed(a, t, n) for n in range(n_max + 1)]


@dataclass(frozen=True)
class MOParams:
    """Parameter pair (a, t) for U_t(a, q); t >= 1, any integer a."""

    a: int
    t: int

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValueError(f"t must be >= 1, got {self.t}")


def _factor_series(a: int, j: int, ring: CoefficientRing, order: int) -> TruncatedSeries:
    """q^j / (1 + a q^j + q^(2j)) to the given order; support on multiples of j."""
    sub_order = order // j
    if sub_order < 1:
        return TruncatedSeries.zero(ring, order)
    den = TruncatedSeries.make(ring, [1, a, 1][: sub_order + 1], sub_order)
    inv = den.inverse()
    base = TruncatedSeries.monomial(ring, 1, 1, sub_order).mul(inv)
    dilated = base.substitute_power(j)
    if dilated.order < order:
        dilated = dilated.extend_with_zeros(order)
    return dilated.truncate(order)


def u_series_definition(params: MOParams, ring: CoefficientRing, order: int) -> TruncatedSeries:
    """Expand U_t(a, q) straight from its defining sum over index tuples.

    Tuples 1 <= n_1 < ... < n_t are enumerated depth-first.  A prefix with
    k indices chosen, largest j, can only contribute if the minimal possible
    completion (j+1) + (j+2) + ... still fits under the order, which prunes
    almost everything at large j.  Prefix products are shared along the
    recursion, and each factor series starts at q^(n_k) so products are
    multiplied by increasing valuation.
    """
    a, t = params.a, params.t
    factors: dict[int, TruncatedSeries] = {}
    total = [0] * (order + 1)

    def tail_min(j: int, remaining: int) -> int:
        # minimal sum of `remaining` distinct indices all > j
        return remaining * j + remaining * (remaining + 1) // 2

    def descend(j_min: int, remaining: int, prefix: TruncatedSeries, valuation: int) -> None:
        j = j_min
        while valuation + j + tail_min(j, remaining - 1) <= order:
            g = factors.get(j)
            if g is None:
                g = _factor_series(a, j, ring, order)
                factors[j] = g
            prod = prefix.mul(g)
            if remaining == 1:
                for i, c in enumerate(prod.coeffs):
                    if c:
                        total[i] += c
            else:
                descend(j + 1, remaining - 1, prod, valuation + j)
            j += 1

    descend(1, t, TruncatedSeries.one(ring, order), 0)
    return TruncatedSeries.make(ring, [ring.reduce(c) for c in total], order)


def _triangular_part(a: int, t: int, ring: CoefficientRing, order: int) -> TruncatedSeries:
    """sum_n c_n(a, t) q^(n(n+1)/2) to the given order, computed exactly."""
    cs = [0] * (order + 1)
    n = t
    while n * (n + 1) // 2 <= order:
        cs[n * (n + 1) // 2] = ring.reduce(c_closed(a, t, n))
        n += 1
    return TruncatedSeries.make(ring, cs, order)


def u_series_identity(
    params: MOParams,
    ring: CoefficientRing,
    order: int,
    prefactor: TruncatedSeries | None = None,
) -> TruncatedSeries:
    """Expand U_t(a, q) as prefactor(a) times the triangular c_n(a, t) series.

    Requires a in {-2,-1,0,1,2}.  An already-expanded prefactor at matching
    ring and order may be passed in to share it across many t values.
    """
    a, t = params.a, params.t
    if a not in SUPPORTED_A:
        raise ValueError(f"identity path needs a in {SUPPORTED_A}, got {a}")
    if prefactor is None:
        prefactor = prefactor_series(a, ring, order)
    elif prefactor.ring != ring or prefactor.order < order:
        raise ValueError("supplied prefactor has wrong ring or insufficient order")
    if prefactor.order > order:
        prefactor = prefactor.truncate(order)
    return prefactor.mul(_triangular_part(a, t, ring, order))


def prefactor_generic(a: int, ring: CoefficientRing, order: int) -> TruncatedSeries:
    """b_k(a) series for arbitrary a: invert prod (1 + a q^n + q^(2n))(1 - q^n).

    Slower than the closed eta-quotient forms but valid for every a; each
    factor has at most three terms, so building the product is cheap.
    """
    den = TruncatedSeries.one(ring, order)
    for n in range(1, order + 1):
        cs = [0] * (order + 1)
        cs[0] = 1
        cs[n] += a
        if 2 * n <= order:
            cs[2 * n] += 1
        den = den.mul(TruncatedSeries.make(ring, cs, order))
        cs = [0] * (order + 1)
        cs[0] = 1
        cs[n] -= 1
        den = den.mul(TruncatedSeries.make(ring, cs, order))
    return den.inverse()


def u_series_identity_generic(params: MOParams, ring: CoefficientRing, order: int) -> TruncatedSeries:
    """Identity-form expansion for arbitrary integer a.

    The prefactor comes from direct product inversion and the triangular
    coefficients from the rational extraction, so no per-a closed form is
    needed.  Intended as an independent check of the product identity.
    """
    a, t = params.a, params.t
    cs = [0] * (order + 1)
    n = t
    while n * (n + 1) // 2 <= order:
        cs[n * (n + 1) // 2] = ring.reduce(c_rational_oracle(a, t, n))
        n += 1
    tri = TruncatedSeries.make(ring, cs, order)
    return prefactor_generic(a, ring, order).mul(tri)


def u_series(
    params: MOParams,
    ring: CoefficientRing,
    order: int,
    method: str = "identity",
    prefactor: TruncatedSeries | None = None,
) -> TruncatedSeries:
    """Dispatch between the two expansion paths by name."""
    if method == "identity":
        return u_series_identity(params, ring, order, prefactor)
    if method == "definition":
        return u_series_definition(params, ring, order)
    raise ValueError(f"unknown method {method!r}; expected 'identity' or 'definition'")


def mo_coefficient(a: int, t: int, n: int) -> int:
    """Exact integer MO(a, t; n), via the fast path when available."""
    params = MOParams(a, t)
    if a in SUPPORTED_A:
        return u_series_identity(params, EXACT, n).coefficient_at(n)
    return u_series_definition(params, EXACT, n).coefficient_at(n)


def sigma(n: int) -> int:
    """Sum of divisors of n >= 1, by trial division up to sqrt(n)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    s = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            s += d
            if d * d != n:
                s += n // d
        d += 1
    return s
