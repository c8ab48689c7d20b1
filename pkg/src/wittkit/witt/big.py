"""Big Witt vectors for a finite set of primes, realized by nesting.

``BigWittCtx({2: 1, 3: 1}, A, order=[2, 3])`` is W_{2,1}(W_{3,1}(A)). The
flattened ghost view indexes ghost entries by d = prod p^k_p (k_p <= n_p);
it is independent of the nesting order, which is how orders are compared.
"""
from __future__ import annotations

from itertools import product as iproduct
from typing import Mapping, Sequence

from ..errors import CtxMismatch
from ..scalars import is_prime
from .vectors import GhostVec, WittCtx, WittVec


class BigWittCtx:
    def __init__(self, lengths: Mapping[int, int], ring, order: Sequence[int] | None = None):
        lengths = {int(p): int(n) for p, n in lengths.items()}
        if not lengths:
            raise ValueError("need at least one prime")
        for p, n in lengths.items():
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            if n < 0:
                raise ValueError("lengths must be nonnegative")
        order = list(order) if order is not None else sorted(lengths)
        if sorted(order) != sorted(lengths) or len(set(order)) != len(order):
            raise CtxMismatch(f"nesting order {order} does not match primes {sorted(lengths)}")
        self.lengths = lengths
        self.ring = ring
        self.order = order
        ctx = ring
        self.levels: list[WittCtx] = []
        for p in reversed(order):
            ctx = WittCtx(p, lengths[p], ctx)
            self.levels.insert(0, ctx)
        self.outer = ctx

    def __repr__(self):
        inner = ", ".join(f"{p}:{self.lengths[p]}" for p in self.order)
        return f"BigW[{inner}]({self.ring})"

    def __eq__(self, other):
        return (isinstance(other, BigWittCtx) and self.lengths == other.lengths
                and self.order == other.order and self.ring == other.ring)

    def __hash__(self):
        return hash((tuple(sorted(self.lengths.items())), tuple(self.order), self.ring))

    # -- indexing ---------------------------------------------------------------
    def exponent_tuples(self) -> list[tuple[int, ...]]:
        """Exponent tuples (k_p for p in self.order), lexicographic."""
        return list(iproduct(*[range(self.lengths[p] + 1) for p in self.order]))

    def divisor(self, ks: Sequence[int]) -> int:
        d = 1
        for p, k in zip(self.order, ks):
            d *= p ** k
        return d

    def divisors(self) -> list[int]:
        return sorted(self.divisor(ks) for ks in self.exponent_tuples())

    def exponents_of(self, d: int) -> tuple[int, ...]:
        ks = []
        for p in self.order:
            k = 0
            while d % p == 0:
                d //= p
                k += 1
            ks.append(k)
        if d != 1:
            raise ValueError("not a supported divisor")
        return tuple(ks)

    # -- elements -------------------------------------------------------------
    def zero(self) -> WittVec:
        return self.outer.zero()

    def one(self) -> WittVec:
        return self.outer.one()

    def from_int(self, c: int) -> WittVec:
        return self.outer.from_int(c)

    def teich(self, a) -> WittVec:
        x = a
        for ctx in reversed(self.levels):
            x = ctx.teich(x)
        return x

    def random(self, rng, **kw) -> WittVec:
        return self.outer.random(rng, **kw)

    def _check(self, v):
        if not isinstance(v, WittVec) or v.ctx != self.outer:
            raise CtxMismatch(f"vector does not belong to {self}")

    # -- flattened ghost --------------------------------------------------------
    def ghost_grid(self, v: WittVec) -> dict[tuple[int, ...], object]:
        """Map exponent tuple -> ghost entry in the base ring."""
        self._check(v)

        def rec(x, level):
            if level == len(self.levels):
                return {(): x}
            ctx = self.levels[level]
            out = {}
            for k, w in enumerate(ctx.ghost(x).entries):
                for rest, val in rec(w, level + 1).items():
                    out[(k,) + rest] = val
            return out
        return rec(v, 0)

    def flatten_ghost(self, v: WittVec) -> dict[int, object]:
        """Map divisor d -> w_d(v)."""
        return {self.divisor(ks): val for ks, val in self.ghost_grid(v).items()}

    def from_flat_ghost(self, flat: Mapping[int, object]) -> WittVec:
        """Inverse of :meth:`flatten_ghost` (the base ring must be flat over Z)."""

        def rec(level, fixed):
            if level == len(self.levels):
                return flat[self.divisor(fixed)]
            ctx = self.levels[level]
            p = self.order[level]
            entries = [rec(level + 1, fixed + (k,)) for k in range(self.lengths[p] + 1)]
            return ctx.from_ghost(GhostVec(ctx, tuple(entries)))
        return rec(0, ())

    def reorder(self, v: WittVec, order: Sequence[int]) -> WittVec:
        """The same element in the nesting with a different prime order."""
        other = BigWittCtx(self.lengths, self.ring, order)
        return other.from_flat_ghost(self.flatten_ghost(v))

    def with_order(self, order: Sequence[int]) -> "BigWittCtx":
        return BigWittCtx(self.lengths, self.ring, order)


def big_witt(lengths, ring, order=None) -> BigWittCtx:
    return BigWittCtx(lengths, ring, order)
