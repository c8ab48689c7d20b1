"""Coefficient rings: Z, Z/m and Z[1/S] for a finite set of primes S.

Coefficients are plain Python ints, except over Z[1/S] where non-integral
values are ``fractions.Fraction`` with S-smooth denominators.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NotDivisible


try:
    from gmpy2 import is_prime as _gmp_is_prime
except ImportError:  # pragma: no cover
    _gmp_is_prime = None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if _gmp_is_prime is not None and n > 1 << 20:
        return bool(_gmp_is_prime(n))
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k, or None."""
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p = fs[0]
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return p, k


def _smooth_part_removed(n: int, primes) -> int:
    n = abs(n)
    for p in primes:
        while n and n % p == 0:
            n //= p
    return n


@dataclass(frozen=True)
class Scalar:
    """One of ``Z``, ``Z/m`` or ``Z[1/S]``.

    ``kind`` is ``"Z"``, ``"mod"`` or ``"inv"``. ``Z/1`` is accepted internally
    as the zero ring (it arises when a presentation collapses).
    """

    kind: str
    m: int = 0
    S: tuple = ()

    def __post_init__(self):
        if self.kind == "mod":
            if self.m < 1:
                raise ValueError("modulus must be positive")
        elif self.kind == "inv":
            if not self.S or list(self.S) != sorted(set(self.S)):
                raise ValueError("inverted primes must be a nonempty sorted set")
            if not all(is_prime(p) for p in self.S):
                raise ValueError(f"not all primes: {self.S}")
        elif self.kind != "Z":
            raise ValueError(f"unknown scalar kind {self.kind!r}")

    # -- construction -----------------------------------------------------
    @staticmethod
    def integers() -> "Scalar":
        return ZZ

    @staticmethod
    def mod(m: int) -> "Scalar":
        return Scalar("mod", m=int(m))

    @staticmethod
    def inverted(primes) -> "Scalar":
        return Scalar("inv", S=tuple(sorted(set(int(p) for p in primes))))

    # -- predicates -------------------------------------------------------
    @property
    def is_field(self) -> bool:
        return self.kind == "mod" and is_prime(self.m)

    @property
    def is_zero_ring(self) -> bool:
        return self.kind == "mod" and self.m == 1

    @property
    def characteristic(self) -> int:
        return self.m if self.kind == "mod" else 0

    @property
    def torsion_free(self) -> bool:
        return self.kind != "mod"

    def __str__(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.kind == "mod":
            return f"Z/{self.m}"
        return "Z[1/" + ",".join(map(str, self.S)) + "]"

    # -- coefficient arithmetic ----------------------------------------------
    def coerce(self, c):
        """Canonical representative of ``c`` (an int or Fraction) in this ring."""
        if self.kind == "Z":
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"{c} is not an integer")
                return c.numerator
            return int(c)
        if self.kind == "mod":
            m = self.m
            if isinstance(c, Fraction):
                den = c.denominator
                if gcd(den, m) != 1:
                    raise ValueError(f"{c} has a denominator not invertible mod {m}")
                return c.numerator * pow(den, -1, m) % m
            return int(c) % m
        if isinstance(c, Fraction):
            if c.denominator == 1:
                return c.numerator
            if _smooth_part_removed(c.denominator, self.S) != 1:
                raise ValueError(f"{c} is not in {self}")
            return c
        return int(c)

    def is_unit(self, c) -> bool:
        if self.kind == "Z":
            return c in (1, -1)
        if self.kind == "mod":
            return gcd(int(c), self.m) == 1
        num = c.numerator if isinstance(c, Fraction) else c
        return num != 0 and _smooth_part_removed(num, self.S) == 1

    def inverse(self, c):
        if not self.is_unit(c):
            raise ValueError(f"{c} is not a unit in {self}")
        if self.kind == "Z":
            return c
        if self.kind == "mod":
            return pow(int(c), -1, self.m)
        return self.coerce(1 / Fraction(c))

    def divide(self, c, k: int, monomial="1"):
        """Exact quotient c/k, raising NotDivisible when it does not exist."""
        if k == 0:
            raise ZeroDivisionError("division by zero scalar")
        if self.kind == "Z":
            if c % k:
                raise NotDivisible(c, monomial, k)
            return c // k
        if self.kind == "mod":
            g = gcd(k, self.m)
            if g != 1:
                # quotients exist only up to m/g-torsion; refuse the ambiguity
                raise NotDivisible(c, monomial, k)
            return c * pow(k, -1, self.m) % self.m
        q = Fraction(c) / k
        try:
            return self.coerce(q)
        except ValueError:
            raise NotDivisible(c, monomial, k) from None

    def fmt(self, c) -> str:
        if isinstance(c, Fraction):
            return f"{c.numerator}/{c.denominator}"
        return str(c)

    def lift_int(self, c):
        """An integral (or Z[1/S]) representative used when lifting to a flat ring."""
        return c

    def flat_lift(self) -> "Scalar":
        """The torsion-free scalar ring this one is a quotient of (or itself)."""
        return ZZ if self.kind == "mod" else self

    def quotient(self, k: int) -> "Scalar":
        """This ring modulo the integer k."""
        k = abs(k)
        if self.kind == "Z":
            return Scalar.mod(k) if k != 0 else self
        if self.kind == "mod":
            return Scalar.mod(gcd(self.m, k))
        if k == 0:
            return self
        return Scalar.mod(_smooth_part_removed(k, self.S))

    def maps_to(self, other: "Scalar") -> bool:
        """Whether the canonical map self -> other exists."""
        if other.kind == "mod":
            if self.kind == "Z":
                return True
            if self.kind == "mod":
                return self.m % other.m == 0
            return all(gcd(p, other.m) == 1 for p in self.S)
        if self.kind == "mod":
            return False
        if self.kind == "Z":
            return True
        return other.kind == "inv" and set(self.S) <= set(other.S)

    def join_inverted(self, primes) -> "Scalar":
        """Z or Z[1/S] with the given primes additionally inverted."""
        if self.kind == "mod":
            raise ValueError("cannot invert primes over Z/m here")
        return Scalar.inverted(set(self.S) | set(primes))


ZZ = Scalar("Z")
