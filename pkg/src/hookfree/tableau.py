"""Stabilizer simulation with symbolic measurement phases.

Standard destabilizer/stabilizer tableau tracking, except that row phases
are affine GF(2) expressions over the random bits introduced by
indeterminate measurements instead of plain signs. A measurement outcome
is therefore returned as such an expression: its mask says exactly which
earlier random outcomes it depends on, so a detector (an XOR of outcomes)
is deterministic precisely when the masks cancel. Substituting zeros for
all random bits yields the reference sample.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PhaseExpr:
    """const XOR (parity of random bits selected by mask)."""

    const: int
    mask: int

    def __xor__(self, other: "PhaseExpr") -> "PhaseExpr":
        return PhaseExpr(self.const ^ other.const, self.mask ^ other.mask)

    @property
    def deterministic(self) -> bool:
        return self.mask == 0

    def evaluate(self, random_bits: int = 0) -> int:
        return self.const ^ ((self.mask & random_bits).bit_count() & 1)


ZERO = PhaseExpr(0, 0)


class Tableau:
    """Aaronson-Gottaman style simulator over qubits 0..n-1."""

    def __init__(self, n: int):
        self.n = n
        # rows 0..n-1 destabilizers, n..2n-1 stabilizers; start in |0...0>
        self.xs = [0] * (2 * n)
        self.zs = [0] * (2 * n)
        self.phase: list[PhaseExpr] = [ZERO] * (2 * n)
        for i in range(n):
            self.xs[i] = 1 << i
            self.zs[n + i] = 1 << i
        self.num_random = 0

    # -- gates -----------------------------------------------------------

    def cx(self, c: int, t: int) -> None:
        cb, tb = 1 << c, 1 << t
        for i in range(2 * self.n):
            x, z = self.xs[i], self.zs[i]
            xc, zt = x & cb, z & tb
            if xc and zt:
                xt = x & tb
                zc = z & cb
                if bool(xt) == bool(zc):
                    self.phase[i] = self.phase[i] ^ PhaseExpr(1, 0)
            if xc:
                self.xs[i] = x = x ^ tb
            if zt:
                self.zs[i] = z ^ cb

    def h(self, q: int) -> None:
        qb = 1 << q
        for i in range(2 * self.n):
            x, z = self.xs[i] & qb, self.zs[i] & qb
            if x and z:
                self.phase[i] = self.phase[i] ^ PhaseExpr(1, 0)
            if bool(x) != bool(z):
                self.xs[i] ^= qb
                self.zs[i] ^= qb

    # -- internal row arithmetic ------------------------------------------

    def _rowsum(self, h: int, i: int) -> None:
        """row h *= row i, tracking the sign exactly."""
        x1, z1 = self.xs[i], self.zs[i]
        x2, z2 = self.xs[h], self.zs[h]
        pos = (
            (x1 & z1 & z2 & ~x2)
            | (x1 & ~z1 & x2 & z2)
            | (~x1 & z1 & x2 & ~z2)
        )
        neg = (
            (x1 & z1 & x2 & ~z2)
            | (x1 & ~z1 & ~x2 & z2)
            | (~x1 & z1 & x2 & z2)
        )
        g = (pos.bit_count() - neg.bit_count()) % 4
        if g % 2:
            raise AssertionError("non-real stabilizer product; tableau corrupted")
        extra = PhaseExpr(1, 0) if g == 2 else ZERO
        self.phase[h] = self.phase[h] ^ self.phase[i] ^ extra
        self.xs[h] = x2 ^ x1
        self.zs[h] = z2 ^ z1

    # -- measurements and resets -------------------------------------------

    def mz(self, q: int) -> PhaseExpr:
        n = self.n
        qb = 1 << q
        pivot = next(
            (p for p in range(n, 2 * n) if self.xs[p] & qb), None
        )
        if pivot is not None:
            # indeterminate: outcome is a fresh random bit
            for i in range(2 * n):
                if i != pivot and i != pivot - n and self.xs[i] & qb:
                    self._rowsum(i, pivot)
            self.xs[pivot - n] = self.xs[pivot]
            self.zs[pivot - n] = self.zs[pivot]
            self.phase[pivot - n] = self.phase[pivot]
            outcome = PhaseExpr(0, 1 << self.num_random)
            self.num_random += 1
            self.xs[pivot] = 0
            self.zs[pivot] = qb
            self.phase[pivot] = outcome
            return outcome
        # determinate: accumulate into a scratch row
        sx, sz, sp = 0, 0, ZERO
        for i in range(n):
            if self.xs[i] & qb:
                x1, z1 = self.xs[n + i], self.zs[n + i]
                pos = (
                    (x1 & z1 & sz & ~sx)
                    | (x1 & ~z1 & sx & sz)
                    | (~x1 & z1 & sx & ~sz)
                )
                neg = (
                    (x1 & z1 & sx & ~sz)
                    | (x1 & ~z1 & ~sx & sz)
                    | (~x1 & z1 & sx & sz)
                )
                g = (pos.bit_count() - neg.bit_count()) % 4
                if g % 2:
                    raise AssertionError("non-real product; tableau corrupted")
                sp = sp ^ self.phase[n + i] ^ (PhaseExpr(1, 0) if g == 2 else ZERO)
                sx ^= x1
                sz ^= z1
        return sp

    def mx(self, q: int) -> PhaseExpr:
        self.h(q)
        out = self.mz(q)
        self.h(q)
        return out

    def rz(self, q: int) -> None:
        out = self.mz(q)
        if out.const or out.mask:
            # conditionally flip with X^outcome so the state ends in |0>
            qb = 1 << q
            for i in range(2 * self.n):
                if self.zs[i] & qb:
                    self.phase[i] = self.phase[i] ^ out

    def rx(self, q: int) -> None:
        self.h(q)
        self.rz(q)
        self.h(q)
