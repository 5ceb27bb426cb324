"""Small dense GF(2) linear-algebra helpers on integer bitmasks.

Vectors are plain Python ints (bit i = coordinate i), which keeps XOR
arithmetic exact and fast for the few-hundred-bit systems that show up in
layout validation and detector bookkeeping.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

__all__ = ["rank", "row_basis", "in_span", "solve", "nullspace", "left_nullspace"]


def row_basis(rows: Iterable[int]) -> dict[int, int]:
    """Echelon basis of the row space, keyed by pivot bit position."""
    basis: dict[int, int] = {}
    for row in rows:
        cur = row
        while cur:
            p = cur.bit_length() - 1
            if p not in basis:
                basis[p] = cur
                break
            cur ^= basis[p]
    return basis


def rank(rows: Iterable[int]) -> int:
    return len(row_basis(rows))


def in_span(row: int, basis: dict[int, int]) -> bool:
    cur = row
    while cur:
        p = cur.bit_length() - 1
        if p not in basis:
            return False
        cur ^= basis[p]
    return True


def solve(equations: Sequence[tuple[int, int]], n_vars: int) -> int | None:
    """One solution x of the GF(2) system ``mask . x = b`` per equation.

    Each equation is (mask, b) with mask a bitmask over the n_vars unknowns.
    Free variables are set to 0. Returns None when inconsistent.
    """
    # Reduced echelon form so pivots appear in exactly one row each; then a
    # solution is read off directly with free variables zeroed.
    basis: dict[int, tuple[int, int]] = {}
    for mask, b in equations:
        for p in list(basis):
            if (mask >> p) & 1:
                m2, b2 = basis[p]
                mask ^= m2
                b ^= b2
        if mask == 0:
            if b:
                return None
            continue
        p = mask.bit_length() - 1
        for q, (m2, b2) in list(basis.items()):
            if (m2 >> p) & 1:
                basis[q] = (m2 ^ mask, b2 ^ b)
        basis[p] = (mask, b)
    x = 0
    for p, (_mask, b) in basis.items():
        if b:
            x |= 1 << p
    if x >> n_vars:
        raise ValueError("equation mask wider than n_vars")
    return x


def nullspace(masks: Iterable[int], n_vars: int) -> list[int]:
    """Basis of {x : mask . x = 0 for every mask}."""
    basis: dict[int, int] = {}
    for m in masks:
        for p in list(basis):
            if (m >> p) & 1:
                m ^= basis[p]
        if m:
            p = m.bit_length() - 1
            for q in list(basis):
                if (basis[q] >> p) & 1:
                    basis[q] ^= m
            basis[p] = m
    out = []
    for f in range(n_vars):
        if f in basis:
            continue
        v = 1 << f
        for p, m in basis.items():
            if (m >> f) & 1:
                v |= 1 << p
        out.append(v)
    return out


def left_nullspace(rows: Sequence[int]) -> list[int]:
    """Bitmasks c over row indices with ``XOR_{i in c} rows[i] == 0``.

    Returns one combination per dependent row (a basis of the left null
    space when the input rows are processed in order).
    """
    basis: dict[int, tuple[int, int]] = {}
    combos: list[int] = []
    for i, row in enumerate(rows):
        cur, tag = row, 1 << i
        while cur:
            p = cur.bit_length() - 1
            if p not in basis:
                basis[p] = (cur, tag)
                break
            m2, t2 = basis[p]
            cur ^= m2
            tag ^= t2
        else:
            combos.append(tag)
    return combos
