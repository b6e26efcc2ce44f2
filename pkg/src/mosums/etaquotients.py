"""Eta-quotient and theta-type series expansions.

f_r denotes the infinite product prod_{k>=1} (1 - q^(r k)); an eta quotient
is a finite product prod f_r^e with integer exponents e.  f_1 is expanded
through Euler's pentagonal sparse form, never the naive product, and f_r is
its dilation q -> q^r.  The named partition families used throughout the
congruence work are all eta quotients:

    P        1/f1            integer partitions
    POD      f2/(f1 f4)      partitions with distinct odd parts
    OVERP    f2/f1^2         overpartitions
    B3BAR    f2 f3/(f1^2 f6) almost 3-regular overpartitions
    PMINUS3  1/f1^3          three-colored partitions
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .qseries import EXACT, CoefficientRing, TruncatedSeries


@dataclass(frozen=True)
class EtaQuotient:
    """Normalized multiset of (dilation r, exponent e) factors, e != 0."""

    factors: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, *factors: tuple[int, int]) -> "EtaQuotient":
        """Normalize: merge repeated dilations, drop zero exponents, sort by r."""
        merged: dict[int, int] = {}
        for r, e in factors:
            if r < 1:
                raise ValueError(f"dilation must be >= 1, got {r}")
            merged[r] = merged.get(r, 0) + e
        kept = tuple(sorted((r, e) for r, e in merged.items() if e != 0))
        return cls(kept)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(f"f{r}" if e == 1 else f"f{r}^{e}" for r, e in self.factors)


_ETA_TOKEN = re.compile(r"^f(\d+)(?:\^(-?\d+))?$")


def parse_eta_quotient(text: str) -> EtaQuotient:
    """Parse the CLI/cache syntax 'f1^-2 f2 f3 f6^-1'; unknown tokens are errors."""
    factors = []
    for pos, token in enumerate(text.split()):
        m = _ETA_TOKEN.match(token)
        if not m:
            raise ValueError(f"bad eta-quotient token {token!r} at position {pos}")
        r = int(m.group(1))
        if r < 1:
            raise ValueError(f"bad dilation in token {token!r} at position {pos}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        factors.append((r, e))
    return EtaQuotient.of(*factors)


class FamilyName(Enum):
    P = "P"
    POD = "POD"
    OVERP = "OVERP"
    B3BAR = "B3BAR"
    PMINUS3 = "PMINUS3"


FAMILY_QUOTIENTS: dict[FamilyName, EtaQuotient] = {
    FamilyName.P: EtaQuotient.of((1, -1)),
    FamilyName.POD: EtaQuotient.of((2, 1), (1, -1), (4, -1)),
    FamilyName.OVERP: EtaQuotient.of((2, 1), (1, -2)),
    FamilyName.B3BAR: EtaQuotient.of((2, 1), (3, 1), (1, -2), (6, -1)),
    FamilyName.PMINUS3: EtaQuotient.of((1, -3)),
}

# prefactor of the product identity, indexed by the quadratic parameter a
PREFACTOR_QUOTIENTS: dict[int, EtaQuotient] = {
    1: EtaQuotient.of((3, -1)),
    -1: EtaQuotient.of((2, 1), (3, 1), (1, -2), (6, -1)),
    2: EtaQuotient.of((1, 1), (2, -2)),
    -2: EtaQuotient.of((1, -3)),
    0: EtaQuotient.of((2, 1), (1, -1), (4, -1)),
}


def pentagonal_f1(ring: CoefficientRing, order: int) -> TruncatedSeries:
    """f_1 via Euler's pentagonal series: nonzero only at k(3k-1)/2, value (-1)^k."""
    cs = [0] * (order + 1)
    k = 0
    while True:
        hit = False
        for kk in (k, -k) if k else (0,):
            e = kk * (3 * kk - 1) // 2
            if e <= order:
                cs[e] = ring.reduce(-1 if kk % 2 else 1)
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return TruncatedSeries.make(ring, cs, order)


def expand_f(r: int, ring: CoefficientRing, order: int) -> TruncatedSeries:
    """Expand f_r = prod (1 - q^(r k)) to the given order.

    Pentagonal form of f_1 followed by q -> q^r; coefficients strictly
    between the dilated support points are exactly zero, so the order can
    be completed to N without loss.
    """
    if r < 1:
        raise ValueError(f"dilation must be >= 1, got {r}")
    base = pentagonal_f1(ring, order // r)
    dilated = base.substitute_power(r)
    return dilated.extend_with_zeros(order) if dilated.order < order else dilated.truncate(order)


def expand_quotient(eq: EtaQuotient, ring: CoefficientRing, order: int) -> TruncatedSeries:
    """Expand prod f_r^e exactly to the given order.

    Positive powers are multiplied out sparsely; the collected denominator
    is inverted once (its constant term is 1 for any genuine eta quotient).
    """
    num = TruncatedSeries.one(ring, order)
    den = TruncatedSeries.one(ring, order)
    for r, e in eq.factors:
        f = expand_f(r, ring, order)
        if e > 0:
            num = num.mul(f.pow(e))
        else:
            den = den.mul(f.pow(-e))
    if any(den.coeffs[1:]):
        return num.mul(den.inverse())
    return num


def prefactor_series(a: int, ring: CoefficientRing, order: int) -> TruncatedSeries:
    """The series of b_k(a) coefficients multiplying the triangular-number sum.

    Closed eta-quotient forms exist exactly for a in {-2,-1,0,1,2}.
    """
    if a not in PREFACTOR_QUOTIENTS:
        raise ValueError(f"no closed prefactor form for a={a}; supported: -2..2")
    return expand_quotient(PREFACTOR_QUOTIENTS[a], ring, order)


def family_series(name: FamilyName, ring: CoefficientRing, order: int) -> TruncatedSeries:
    """Generating function of a named partition family, expanded to the order."""
    return expand_quotient(FAMILY_QUOTIENTS[name], ring, order)


def theta_phi(ring: CoefficientRing, order: int) -> TruncatedSeries:
    """Classical theta: sum over all integers n of q^(n^2)."""
    cs = [0] * (order + 1)
    n = 0
    while n * n <= order:
        cs[n * n] += 1 if n == 0 else 2
        n += 1
    return TruncatedSeries.make(ring, cs, order)


def theta_x(ring: CoefficientRing, order: int) -> TruncatedSeries:
    """Theta-type lattice sum over all integers n of q^(3n^2 + 2n)."""
    cs = [0] * (order + 1)
    n = 0
    while True:
        hit = False
        for nn in (n, -n) if n else (0,):
            e = 3 * nn * nn + 2 * nn
            if 0 <= e <= order:
                cs[e] += 1
                hit = True
        if not hit and n > 0:
            break
        n += 1
    return TruncatedSeries.make(ring, cs, order)


def theta_triangular_alt(ring: CoefficientRing, order: int) -> TruncatedSeries:
    """sum_{k>=0} (-q)^(k(k+1)/2): support on triangular numbers, sign (-1)^T."""
    cs = [0] * (order + 1)
    k = 0
    while k * (k + 1) // 2 <= order:
        t = k * (k + 1) // 2
        cs[t] += (-1) ** t
        k += 1
    return TruncatedSeries.make(ring, cs, order)


def chi3(j: int) -> int:
    """The quadratic character mod 3: 0, 1, -1 for j = 0, 1, 2 (mod 3)."""
    return (0, 1, -1)[j % 3]


def theta_legendre3(ring: CoefficientRing, order: int) -> TruncatedSeries:
    """sum_{j>=1} chi3(j) * j * q^(j^2 - 1)."""
    cs = [0] * (order + 1)
    j = 1
    while j * j - 1 <= order:
        cs[j * j - 1] += chi3(j) * j
        j += 1
    return TruncatedSeries.make(ring, cs, order)


def extract(s: TruncatedSeries, step: int, offset: int) -> TruncatedSeries:
    """Arithmetic-progression extraction: result[n] = s[step*n + offset]."""
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    if not 0 <= offset < step:
        raise ValueError(f"offset must lie in 0..{step - 1}, got {offset}")
    if s.order < offset:
        raise ValueError(f"series order {s.order} too small for offset {offset}")
    n = (s.order - offset) // step
    cs = tuple(s.coeffs[step * i + offset] for i in range(n + 1))
    return TruncatedSeries(s.ring, n, cs)
