"""Congruence claims about MO(a, t; n), their verification, and residue search.

A claim states MO(a, t; A*N + B) == 0 (mod m) for all N >= 0, uniformly over
a family of t values indexed by J.  Verification expands U_t(a, q) along the
identity path over Z/m (coefficients c_n computed exactly, then reduced) and
checks every coefficient in the progression up to a budget; claims marked
expect_zero_exactly are checked over exact integers instead.  Refutation is
a verdict with the lexicographically smallest (J, N) counterexample, never
an exception.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .qseries import EXACT, CoefficientRing, TruncatedSeries, first_difference, modular
from .etaquotients import (
    EtaQuotient,
    FamilyName,
    expand_f,
    expand_quotient,
    extract,
    family_series,
    prefactor_series,
    theta_legendre3,
    theta_phi,
    theta_triangular_alt,
    theta_x,
)
from .mo import MOParams, u_series_identity


def is_prime(p: int) -> bool:
    """Trial division; all moduli in scope are tiny."""
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def lucas_binom(n: int, k: int, p: int) -> int:
    """binom(n, k) mod p via digit-wise binomials in base p."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    from math import comb

    out = 1
    while n or k:
        ni, n = n % p, n // p
        ki, k = k % p, k // p
        if ki > ni:
            return 0
        out = out * comb(ni, ki) % p
    return out


@dataclass(frozen=True)
class CongruenceClaim:
    """MO(a, t; step*N + offset) == 0 (mod modulus) for all N, over a t family.

    t_rule "linear" means t = t_base + t_step*J for J = 0..J_max (t_step = 0
    pins a single t); "pow2" means t = 2^J - 2 for J = j_min..J_max.  With
    expect_zero_exactly the claim is equality with 0 over exact integers and
    the modulus is ignored by the checker.
    """

    name: str
    a: int
    t_base: int
    t_step: int
    step: int
    offset: int
    modulus: int
    expect_zero_exactly: bool = False
    t_rule: str = "linear"
    j_min: int = 0
    default_j_max: int | None = None
    default_n_max: int | None = None

    def __post_init__(self) -> None:
        if self.t_base < 1:
            raise ValueError(f"t_base must be >= 1, got {self.t_base}")
        if self.t_step < 0:
            raise ValueError(f"t_step must be >= 0, got {self.t_step}")
        if self.step < 1 or not 0 <= self.offset < self.step:
            raise ValueError(f"need 0 <= offset < step, got {self.offset}, {self.step}")
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if self.t_rule not in ("linear", "pow2"):
            raise ValueError(f"unknown t_rule {self.t_rule!r}")

    def t_of(self, j: int) -> int:
        if self.t_rule == "pow2":
            return 2**j - 2
        return self.t_base + self.t_step * j

    def j_values(self, j_max: int) -> list[int]:
        if self.t_rule == "pow2":
            return list(range(self.j_min, max(self.j_min, j_max) + 1))
        if self.t_step == 0:
            return [0]
        return list(range(0, j_max + 1))

    def describe(self) -> str:
        if self.t_rule == "pow2":
            t_expr = "2^J-2"
        elif self.t_step == 0:
            t_expr = str(self.t_base)
        else:
            t_expr = f"{self.t_step}J+{self.t_base}"
        head = f"MO({self.a}, {t_expr}; {self.step}N+{self.offset})"
        if self.expect_zero_exactly:
            return f"{head} = 0"
        return f"{head} == 0 (mod {self.modulus})"


CSV_HEADER = ["claim", "verdict", "counterexample", "n_max", "order", "elapsed_ms"]


@dataclass(frozen=True)
class VerificationReport:
    claim: CongruenceClaim
    j_values_checked: tuple[int, ...]
    n_max: int
    verdict: str
    counterexample: tuple[int, int, int] | None
    series_order_used: int
    elapsed_seconds: float

    def __post_init__(self) -> None:
        assert (self.verdict == "Refuted") == (self.counterexample is not None)

    def json_dict(self) -> dict:
        ce = None
        if self.counterexample is not None:
            j, n, value = self.counterexample
            ce = {"J": j, "N": n, "value": str(value)}
        return {
            "claim": self.claim.name,
            "verdict": self.verdict,
            "counterexample": ce,
            "n_max": self.n_max,
            "order": self.series_order_used,
            "elapsed_ms": round(self.elapsed_seconds * 1000),
        }

    def csv_row(self) -> list[str]:
        ce = ""
        if self.counterexample is not None:
            j, n, value = self.counterexample
            ce = f"J={j};N={n};value={value}"
        return [
            self.claim.name,
            self.verdict,
            ce,
            str(self.n_max),
            str(self.series_order_used),
            str(round(self.elapsed_seconds * 1000)),
        ]


def default_budgets(claim: CongruenceClaim) -> tuple[int, int]:
    """(J_max, N_max) when the caller gives none: N scales inversely with step."""
    n_max = claim.default_n_max if claim.default_n_max is not None else max(5, 1500 // claim.step)
    if claim.default_j_max is not None:
        j_max = claim.default_j_max
    else:
        j_max = 0 if claim.t_base >= 40 else 1
    return j_max, n_max


def verify_claim(
    claim: CongruenceClaim,
    j_max: int | None = None,
    n_max: int | None = None,
    prefactor: TruncatedSeries | None = None,
) -> VerificationReport:
    """Check the claim for every J in its family and every N up to the budget.

    Returns Verified or Refuted with the smallest failing (J, N) in
    lexicographic order.  A precomputed prefactor (matching ring, order at
    least step*n_max + offset) may be shared across claims.
    """
    dj, dn = default_budgets(claim)
    j_max = dj if j_max is None else j_max
    n_max = dn if n_max is None else n_max
    order = claim.step * n_max + claim.offset
    ring = EXACT if claim.expect_zero_exactly else modular(claim.modulus)
    js = claim.j_values(j_max)
    t0 = time.perf_counter()
    if prefactor is None:
        prefactor = prefactor_series(claim.a, ring, order)
    counterexample = None
    for j in js:
        t = claim.t_of(j)
        series = u_series_identity(MOParams(claim.a, t), ring, order, prefactor=prefactor)
        for n in range(n_max + 1):
            value = series.coefficient_at(claim.step * n + claim.offset)
            if value != 0:
                counterexample = (j, n, value)
                break
        if counterexample is not None:
            break
    elapsed = time.perf_counter() - t0
    return VerificationReport(
        claim=claim,
        j_values_checked=tuple(js),
        n_max=n_max,
        verdict="Refuted" if counterexample else "Verified",
        counterexample=counterexample,
        series_order_used=order,
        elapsed_seconds=elapsed,
    )


def _claims() -> list[CongruenceClaim]:
    c = CongruenceClaim
    return [
        # a = 1
        c("MO1.3n+2.zero", 1, 1, 1, 3, 2, 2, expect_zero_exactly=True, default_j_max=3, default_n_max=40),
        c("MO3n+1v2.3J+3", 1, 3, 3, 3, 1, 3),
        c("MO3n+1v2.3J+2", 1, 2, 3, 3, 1, 3),
        c("MO3n+1v3", 1, 2, 3, 3, 1, 9),
        c("MO5n+2.m5", 1, 4, 5, 5, 2, 5),
        c("MO5n+2.m7", 1, 6, 7, 7, 1, 7),
        c("MO5n+2.m11", 1, 10, 11, 11, 7, 11),
        # a = -1
        c("MOm1", -1, 1, 1, 3, 2, 2),
        c("MOm14", -1, 2, 0, 3, 2, 4, t_rule="pow2", j_min=2, default_j_max=4),
        c("MOm1m5", -1, 3, 0, 15, 13, 5),
        c("MOneg1mod3.27n+9", -1, 4, 9, 27, 9, 3),
        c("MOneg1mod3.27n", -1, 7, 9, 27, 0, 3),
        # a = 2
        c("MO2.27n+9", 2, 4, 9, 27, 9, 3),
        c("MO2.27n", 2, 7, 9, 27, 0, 3),
        c("MO25.625n+250", 2, 12, 25, 625, 250, 5),
        c("MO25.625n+375", 2, 12, 25, 625, 375, 5),
        # a = -2, new families
        c("MOm211", -2, 4, 11, 11, 6, 11),
        c("MOm211r", -2, 10, 11, 11, 7, 11),
        c("MOm225.25n+13", -2, 11, 25, 25, 13, 5),
        c("MOm225.25n+22", -2, 24, 25, 25, 22, 5),
        c("MOm225.49n+11", -2, 23, 49, 49, 11, 7),
        c("MOm225.49n+18", -2, 23, 49, 49, 18, 7),
        c("MOm225.49n+25", -2, 23, 49, 49, 25, 7),
        c("MOm225.49n+46", -2, 23, 49, 49, 46, 7),
        c("MOm225.49n+15", -2, 48, 49, 49, 15, 7),
        c("MOm225.49n+29", -2, 48, 49, 49, 29, 7),
        c("MOm225.49n+36", -2, 48, 49, 49, 36, 7),
        c("MOm225.49n+43", -2, 48, 49, 49, 43, 7),
        c("mod9.3J", -2, 3, 3, 3, 2, 9),
        c("mod9.3J+2", -2, 2, 3, 3, 2, 9),
        # a = 0
        c("MO0", 0, 26, 27, 27, 26, 3),
        # a = -2, known results regression
        c("MOm2known.5n+2", -2, 2, 0, 5, 2, 5),
        c("MOm2known.7n+3", -2, 3, 0, 7, 3, 7),
        c("MOm2known.7n+5", -2, 3, 0, 7, 5, 7),
        c("MOm2known.11n+7", -2, 10, 0, 11, 7, 11),
        c("MOm2known.3n+1", -2, 2, 3, 3, 1, 3),
        c("MOm2known.3n+2", -2, 2, 3, 3, 2, 3),
        c("MOm2known.17n+15", -2, 16, 17, 17, 15, 17),
    ]


THEOREM_CATALOG: dict[str, CongruenceClaim] = {cl.name: cl for cl in _claims()}


def catalog_lookup(name: str) -> list[CongruenceClaim]:
    """Resolve a catalog key: exact name, or a group prefix before a dot."""
    if name in THEOREM_CATALOG:
        return [THEOREM_CATALOG[name]]
    group = [cl for key, cl in THEOREM_CATALOG.items() if key.startswith(name + ".")]
    if not group:
        raise KeyError(f"unknown claim name {name!r}")
    return group


def _shared_prefactor(a: int, ring: CoefficientRing, order: int, cache_dir: str | None) -> TruncatedSeries:
    if cache_dir is None:
        return prefactor_series(a, ring, order)
    from .cache import CacheKey, cache_get, cache_put
    from .etaquotients import PREFACTOR_QUOTIENTS

    key = CacheKey.for_eta(PREFACTOR_QUOTIENTS[a], ring, order)
    hit = cache_get(cache_dir, key)
    if hit is not None:
        return hit
    series = prefactor_series(a, ring, order)
    cache_put(cache_dir, key, series)
    return series


def verify_catalog(
    j_max: int | None = None,
    n_max: int | None = None,
    overrides: dict[str, tuple[int | None, int | None]] | None = None,
    names: list[str] | None = None,
    cache_dir: str | None = None,
) -> list[VerificationReport]:
    """Run verify_claim over the catalog, sharing prefactors where possible.

    Budget precedence per claim: overrides entry, then the j_max/n_max
    arguments, then per-claim and global defaults.  Reports come back
    sorted by claim name.  With a cache directory, shared prefactors are
    loaded from and stored to disk.
    """
    overrides = overrides or {}
    selected = sorted(names if names is not None else THEOREM_CATALOG)
    jobs: list[tuple[CongruenceClaim, int | None, int]] = []
    for name in selected:
        claim = THEOREM_CATALOG[name]
        o_j, o_n = overrides.get(name, (None, None))
        use_j = o_j if o_j is not None else j_max
        use_n = o_n if o_n is not None else n_max
        if use_n is None:
            use_n = default_budgets(claim)[1]
        jobs.append((claim, use_j, use_n))
    # one prefactor per (a, ring) pair, expanded to the largest order needed
    needed: dict[tuple[int, str], int] = {}
    for claim, _, use_n in jobs:
        ring = EXACT if claim.expect_zero_exactly else modular(claim.modulus)
        key = (claim.a, ring.descriptor())
        order = claim.step * use_n + claim.offset
        needed[key] = max(needed.get(key, 0), order)
    shared = {
        (a, desc): _shared_prefactor(a, CoefficientRing.from_descriptor(desc), order, cache_dir)
        for (a, desc), order in needed.items()
    }
    reports = []
    for claim, use_j, use_n in jobs:
        ring = EXACT if claim.expect_zero_exactly else modular(claim.modulus)
        pre = shared[(claim.a, ring.descriptor())]
        reports.append(verify_claim(claim, use_j, use_n, prefactor=pre))
    return sorted(reports, key=lambda r: r.claim.name)


CANDIDATE_LABEL = "empirical, unproved"


@dataclass(frozen=True)
class SearchResult:
    offset: int
    candidate: bool
    first_fail_n: int | None

    def status(self) -> str:
        return CANDIDATE_LABEL if self.candidate else f"fails at N={self.first_fail_n}"


def search(a: int, t: int, m: int, step: int, n_max: int) -> list[SearchResult]:
    """Scan every offset B in 0..step-1 for MO(a, t; step*N+B) == 0 (mod m).

    One series expansion at order step*n_max + step serves all offsets.
    Hits are candidates only: the label marks them as unproved evidence.
    """
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    order = step * n_max + step
    series = u_series_identity(MOParams(a, t), modular(m), order)
    out = []
    for b in range(step):
        fail = None
        for n in range(n_max + 1):
            if series.coefficient_at(step * n + b) != 0:
                fail = n
                break
        out.append(SearchResult(offset=b, candidate=fail is None, first_fail_n=fail))
    return out


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    passed: bool
    first_diff: int | None


def _quotient(text_factors: list[tuple[int, int]]) -> EtaQuotient:
    return EtaQuotient.of(*text_factors)


def appendix_identity_suite(order: int) -> list[IdentityCheck]:
    """Series-equality checks threading the B3BAR mod-5 derivation chain.

    Items are exact except the last, which holds modulo 5; each side is
    computed independently and compared coefficient-for-coefficient up to
    the given order.
    """
    checks: list[IdentityCheck] = []

    def add(name: str, lhs: TruncatedSeries, rhs: TruncatedSeries) -> None:
        diff = first_difference(lhs, rhs)
        checks.append(IdentityCheck(name, diff is None, diff))

    ring = EXACT
    # alternating-sign product equals an eta quotient
    add(
        "negq-product",
        expand_f(1, ring, order).negate_variable(),
        expand_quotient(_quotient([(2, 3), (1, -1), (4, -1)]), ring, order),
    )
    # classical theta series in eta form
    add("phi-eta", theta_phi(ring, order), expand_quotient(_quotient([(2, 5), (1, -2), (4, -2)]), ring, order))
    add(
        "x-eta",
        theta_x(ring, order),
        expand_quotient(_quotient([(2, 2), (3, 1), (12, 1), (1, -1), (4, -1), (6, -1)]), ring, order),
    )
    # overpartitions on 3n+1, with q -> -q
    overp = family_series(FamilyName.OVERP, ring, 3 * order + 1)
    add(
        "overp-3n+1",
        extract(overp, 3, 1).truncate(order).negate_variable(),
        expand_quotient(
            _quotient([(1, 7), (4, 7), (6, 9), (2, -18), (3, -3), (12, -3)]), ring, order
        ).scale(2),
    )
    # same extraction for B3BAR, against the factored right side
    b3 = family_series(FamilyName.B3BAR, ring, 3 * order + 1)
    grouped = _quotient(
        [(1, 5), (4, 5), (6, 10), (2, -15), (3, -5), (12, -5)]  # fifth power of the core quotient
        + [(1, 1), (4, 1), (2, -1)]
        + [(3, 2), (12, 2), (6, -1)]
    )
    add(
        "b3bar-3n+1",
        extract(b3, 3, 1).truncate(order).negate_variable(),
        expand_quotient(grouped, ring, order).scale(2),
    )
    # theta forms of the two factors
    add("tri-alt-theta", expand_quotient(_quotient([(1, 1), (4, 1), (2, -1)]), ring, order), theta_triangular_alt(ring, order))
    add("legendre3-theta", expand_quotient(_quotient([(3, 2), (12, 2), (6, -1)]), ring, order), theta_legendre3(ring, order))
    # dilated quotient congruent to a fifth power, mod 5
    mod5 = modular(5)
    add(
        "frobenius5",
        expand_quotient(_quotient([(5, 1), (20, 1), (30, 2), (10, -3), (15, -1), (60, -1)]), mod5, order).scale(2),
        expand_quotient(_quotient([(1, 5), (4, 5), (6, 10), (2, -15), (3, -5), (12, -5)]), mod5, order).scale(2),
    )
    return checks
