"""Truncated formal power series in q with exact coefficient arithmetic.

A TruncatedSeries stores the coefficients of q^0 .. q^N exactly, over either
the ring of integers or the integers modulo m.  Every operation here either
guarantees exact coefficients up to the stated truncation order or raises;
nothing is silently approximated.  Series values are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


class RingMismatchError(ValueError):
    """Two series from different coefficient rings were combined."""


class NonUnitError(ValueError):
    """Inversion was attempted on a series whose constant term is not a unit."""


class TruncationError(IndexError):
    """A coefficient beyond the truncation order was requested."""


@dataclass(frozen=True)
class CoefficientRing:
    """Exact integers (modulus None) or integers modulo m, m >= 2.

    Modular elements are kept reduced to canonical representatives 0..m-1.
    """

    modulus: int | None = None

    def __post_init__(self) -> None:
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")

    @property
    def is_exact(self) -> bool:
        return self.modulus is None

    def reduce(self, x: int) -> int:
        if self.modulus is None:
            return x
        return x % self.modulus

    def is_unit(self, x: int) -> bool:
        if self.modulus is None:
            return x in (1, -1)
        return math.gcd(x, self.modulus) == 1

    def unit_inverse(self, x: int) -> int:
        """Multiplicative inverse of a unit; raises NonUnitError otherwise."""
        if self.modulus is None:
            if x in (1, -1):
                return x
            raise NonUnitError(f"{x} is not a unit in the exact integers")
        try:
            return pow(x, -1, self.modulus)
        except ValueError:
            raise NonUnitError(f"{x} is not a unit modulo {self.modulus}") from None

    def descriptor(self) -> str:
        """Ring tag used by the serialization format: 'exact' or 'mod:<m>'."""
        return "exact" if self.modulus is None else f"mod:{self.modulus}"

    @staticmethod
    def from_descriptor(text: str) -> "CoefficientRing":
        if text == "exact":
            return EXACT
        if text.startswith("mod:"):
            return CoefficientRing(int(text[4:]))
        raise ValueError(f"unknown ring descriptor {text!r}")

    def __repr__(self) -> str:
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


EXACT = CoefficientRing()


def modular(m: int) -> CoefficientRing:
    return CoefficientRing(m)


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of q^0 .. q^order over a CoefficientRing.

    coeffs has length order + 1; index i holds the coefficient of q^i,
    already reduced into the ring.  Use make() rather than the raw
    constructor so the invariants are enforced.
    """

    ring: CoefficientRing
    order: int
    coeffs: tuple[int, ...]

    # -- construction ------------------------------------------------------

    @classmethod
    def make(cls, ring: CoefficientRing, coeffs: Iterable[int], order: int) -> "TruncatedSeries":
        """Build a series of the given order, zero-padding short coefficient lists."""
        if order < 0:
            raise ValueError(f"order must be >= 0, got {order}")
        cs = [ring.reduce(c) for c in coeffs]
        if len(cs) > order + 1:
            raise ValueError(f"{len(cs)} coefficients exceed order {order}")
        cs.extend([0] * (order + 1 - len(cs)))
        return cls(ring, order, tuple(cs))

    @classmethod
    def zero(cls, ring: CoefficientRing, order: int) -> "TruncatedSeries":
        return cls.make(ring, (), order)

    @classmethod
    def one(cls, ring: CoefficientRing, order: int) -> "TruncatedSeries":
        return cls.make(ring, (1,), order)

    @classmethod
    def monomial(cls, ring: CoefficientRing, coeff: int, exponent: int, order: int) -> "TruncatedSeries":
        """coeff * q^exponent as a series of the given order."""
        if not 0 <= exponent <= order:
            raise ValueError(f"exponent {exponent} outside 0..{order}")
        cs = [0] * (order + 1)
        cs[exponent] = ring.reduce(coeff)
        return cls(ring, order, tuple(cs))

    # -- coefficient access ------------------------------------------------

    def coefficient_at(self, n: int) -> int:
        """Coefficient of q^n; beyond the order this is an error, never zero."""
        if not 0 <= n <= self.order:
            raise TruncationError(
                f"coefficient of q^{n} requested but series is truncated at order {self.order}"
            )
        return self.coeffs[n]

    def __getitem__(self, n: int) -> int:
        return self.coefficient_at(n)

    def nonzero_items(self) -> list[tuple[int, int]]:
        return [(i, c) for i, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _require_same_ring(self, other: "TruncatedSeries") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(f"cannot combine series over {self.ring} and {other.ring}")

    # -- ring operations ----------------------------------------------------

    def add(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_same_ring(other)
        n = min(self.order, other.order)
        red = self.ring.reduce
        cs = tuple(red(a + b) for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))
        return TruncatedSeries(self.ring, n, cs)

    def sub(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_same_ring(other)
        n = min(self.order, other.order)
        red = self.ring.reduce
        cs = tuple(red(a - b) for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))
        return TruncatedSeries(self.ring, n, cs)

    def mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Cauchy product, exact to the minimum of the two orders.

        Schoolbook convolution; stored zero coefficients of the sparser
        operand are skipped, which changes nothing (dropped terms are 0).
        """
        self._require_same_ring(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        # iterate over the operand with fewer nonzero terms
        na = sum(1 for c in a[: n + 1] if c)
        nb = sum(1 for c in b[: n + 1] if c)
        if nb < na:
            a, b = b, a
        out = [0] * (n + 1)
        for i, ci in enumerate(a[: n + 1]):
            if not ci:
                continue
            seg = out[i:]
            out[i:] = [x + ci * y for x, y in zip(seg, b[: n + 1 - i])]
        m = self.ring.modulus
        if m is not None:
            out = [x % m for x in out]
        return TruncatedSeries(self.ring, n, tuple(out))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.add(other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.sub(other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self.mul(other)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse by the standard coefficient recurrence.

        Requires a unit constant term; mul(self, inverse) == 1 up to order.
        """
        c0 = self.coeffs[0]
        if not self.ring.is_unit(c0):
            raise NonUnitError(
                f"constant term {c0} is not a unit in {self.ring}; series has no inverse"
            )
        n = self.order
        inv0 = self.ring.unit_inverse(c0)
        m = self.ring.modulus
        rest = [(k, c) for k, c in enumerate(self.coeffs) if k and c]
        out = [0] * (n + 1)
        out[0] = inv0
        for i in range(1, n + 1):
            acc = 0
            for k, c in rest:
                if k > i:
                    break
                acc += c * out[i - k]
            v = -inv0 * acc
            out[i] = v % m if m is not None else v
        return TruncatedSeries(self.ring, n, tuple(out))

    def pow(self, e: int) -> "TruncatedSeries":
        """Non-negative integer power by repeated squaring; pow(s, 0) == 1."""
        if e < 0:
            raise ValueError("negative exponents are not supported; invert first")
        result = TruncatedSeries.one(self.ring, self.order)
        base = self
        while e:
            if e & 1:
                result = result.mul(base)
            e >>= 1
            if e:
                base = base.mul(base)
        return result

    def __pow__(self, e: int) -> "TruncatedSeries":
        return self.pow(e)

    # -- variable substitutions ---------------------------------------------

    def substitute_power(self, r: int) -> "TruncatedSeries":
        """q -> q^r.  Result order is r * order: exactly the information kept."""
        if r < 1:
            raise ValueError(f"dilation must be >= 1, got {r}")
        if r == 1:
            return self
        n = self.order * r
        cs = [0] * (n + 1)
        for i, c in enumerate(self.coeffs):
            cs[i * r] = c
        return TruncatedSeries(self.ring, n, tuple(cs))

    def negate_variable(self) -> "TruncatedSeries":
        """q -> -q: coefficient i picks up the sign (-1)^i."""
        red = self.ring.reduce
        cs = tuple(c if i % 2 == 0 else red(-c) for i, c in enumerate(self.coeffs))
        return TruncatedSeries(self.ring, self.order, cs)

    # -- ring changes and reshaping ------------------------------------------

    def reduce_mod(self, m: int) -> "TruncatedSeries":
        """Coefficient-wise reduction of an exact series into Z/m."""
        if not self.ring.is_exact:
            raise RingMismatchError("reduce_mod applies to series over the exact integers")
        ring = CoefficientRing(m)
        return TruncatedSeries(ring, self.order, tuple(c % m for c in self.coeffs))

    def truncate(self, order: int) -> "TruncatedSeries":
        """Drop coefficients above a lower order."""
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        if order == self.order:
            return self
        return TruncatedSeries(self.ring, order, self.coeffs[: order + 1])

    def extend_with_zeros(self, order: int) -> "TruncatedSeries":
        """Raise the order, asserting the new coefficients are known to be zero.

        Only valid when the caller can prove exactness (e.g. a dilated series
        whose next support point lies beyond the new order).
        """
        if order < self.order:
            raise ValueError("use truncate() to lower the order")
        cs = self.coeffs + (0,) * (order - self.order)
        return TruncatedSeries(self.ring, order, cs)

    def scale(self, c: int) -> "TruncatedSeries":
        """Multiply every coefficient by the constant c."""
        red = self.ring.reduce
        c = red(c)
        return TruncatedSeries(self.ring, self.order, tuple(red(c * x) for x in self.coeffs))

    # -- serialization -------------------------------------------------------

    def serialize(self) -> str:
        """Line format fixed for the on-disk cache: 'ring; order; c0 c1 ...'."""
        body = " ".join(str(c) for c in self.coeffs)
        return f"{self.ring.descriptor()}; {self.order}; {body}"

    @classmethod
    def parse(cls, line: str) -> "TruncatedSeries":
        parts = line.strip().split(";")
        if len(parts) != 3:
            raise ValueError(f"malformed series line: expected 'ring; order; coeffs', got {line!r}")
        ring = CoefficientRing.from_descriptor(parts[0].strip())
        order = int(parts[1].strip())
        body = parts[2].split()
        if len(body) != order + 1:
            raise ValueError(f"series line declares order {order} but carries {len(body)} coefficients")
        return cls.make(ring, [int(c) for c in body], order)

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if self.order >= 8 else ""
        return f"TruncatedSeries({self.ring}, order={self.order}, [{shown}{tail}])"


def make(ring: CoefficientRing, coeffs: Sequence[int], order: int) -> TruncatedSeries:
    """Module-level alias for TruncatedSeries.make."""
    return TruncatedSeries.make(ring, coeffs, order)


def first_difference(s1: TruncatedSeries, s2: TruncatedSeries) -> int | None:
    """Smallest index where the two series differ, up to the common order."""
    n = min(s1.order, s2.order)
    for i in range(n + 1):
        if s1.coeffs[i] != s2.coeffs[i]:
            return i
    return None
