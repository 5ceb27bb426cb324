"""Independent reference computations used to freeze expected test values.

Everything here is deliberately written against plain numpy/scipy rather
than the package's own linear-algebra helpers, so a bug in the package
cannot hide inside its oracle. Routines are slow and exhaustive on purpose.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

Coord = tuple[int, int]


def symplectic_rows(
    operators: Sequence, order: Sequence[Coord]
) -> np.ndarray:
    """Binary (x | z) rows, one per operator, columns per `order` qubit."""
    index = {q: i for i, q in enumerate(order)}
    n = len(order)
    rows = np.zeros((len(operators), 2 * n), dtype=np.uint8)
    for r, op in enumerate(operators):
        for q in op.xs:
            rows[r, index[q]] = 1
        for q in op.zs:
            rows[r, n + index[q]] = 1
    return rows


def _rref_basis(rows: np.ndarray) -> np.ndarray:
    """Row-reduced basis of the GF(2) row space."""
    m = rows.copy() % 2
    basis: list[np.ndarray] = []
    pivots: list[int] = []
    for row in m:
        row = row.copy()
        for b, p in zip(basis, pivots):
            if row[p]:
                row ^= b
        nz = np.flatnonzero(row)
        if nz.size:
            basis.append(row)
            pivots.append(int(nz[0]))
    return np.array(basis, dtype=np.uint8) if basis else np.zeros((0, rows.shape[1]), np.uint8)


def _in_span(vec: np.ndarray, basis: np.ndarray) -> bool:
    v = vec.copy() % 2
    for row in basis:
        p = int(np.flatnonzero(row)[0])
        if v[p]:
            v ^= row
    return not v.any()


def _commutes_all(vec: np.ndarray, stab_rows: np.ndarray, n: int) -> bool:
    # symplectic form: <a, b> = a_x . b_z + a_z . b_x (mod 2)
    prods = (stab_rows[:, n:] @ vec[:n] + stab_rows[:, :n] @ vec[n:]) % 2
    return not prods.any()


def logical_min_weight_bruteforce(
    layout, wmax: int, alphabet: str = "XYZ"
) -> int | None:
    """Exhaustive search over all Pauli operators of weight <= wmax.

    Returns the smallest weight of an operator that commutes with every
    stabilizer yet lies outside the stabilizer row space, or None.
    Restrict `alphabet` to "X" or "Z" for single-basis minima.
    """
    order = sorted(layout.data_qubits)
    n = len(order)
    stab_rows = symplectic_rows(layout.stabilizer_operators(), order)
    basis = _rref_basis(stab_rows)
    for w in range(1, wmax + 1):
        for support in itertools.combinations(range(n), w):
            for paulis in itertools.product(alphabet, repeat=w):
                vec = np.zeros(2 * n, dtype=np.uint8)
                for i, pl in zip(support, paulis):
                    if pl in ("X", "Y"):
                        vec[i] = 1
                    if pl in ("Z", "Y"):
                        vec[n + i] = 1
                if _commutes_all(vec, stab_rows, n) and not _in_span(vec, basis):
                    return w
    return None


def logical_min_weight_milp(layout) -> int:
    """Exact minimum logical weight via integer programming.

    One MILP per stored logical-pair representative g: minimise the support
    weight of a Pauli commuting with every stabilizer and anticommuting
    with g (which certifies it is outside the stabilizer group). The code
    distance is the minimum over all representatives.
    """
    order = sorted(layout.data_qubits)
    n = len(order)
    stabs = layout.stabilizer_operators()
    stab_rows = symplectic_rows(stabs, order)
    reps = [op for pair in layout.logical_pairs for op in pair]
    rep_rows = symplectic_rows(reps, order)
    best = None
    for g in rep_rows:
        val = _milp_min_weight(stab_rows, g, n)
        if val is not None and (best is None or val < best):
            best = val
    if best is None:
        raise RuntimeError("no logical operator found; layout has no logical qubits?")
    return best


class DenseSim:
    """Exact statevector simulation of reset/measure/CX circuits.

    Small and slow on purpose; used to cross-check the tableau simulator.
    Measurement outcomes with probability strictly between 0 and 1 are
    drawn from the supplied RNG.
    """

    def __init__(self, n: int, rng: np.random.Generator):
        self.n = n
        self.rng = rng
        self.state = np.zeros(2**n, dtype=np.complex128)
        self.state[0] = 1.0

    def _axes(self, q: int) -> np.ndarray:
        idx = np.arange(2**self.n)
        return (idx >> q) & 1

    def h(self, q: int) -> None:
        bit = self._axes(q).astype(bool)
        a = self.state[~bit].copy()
        b = self.state[bit].copy()
        s = np.sqrt(0.5)
        new = self.state.copy()
        new[~bit] = s * (a + b)
        new[bit] = s * (a - b)
        self.state = new

    def cx(self, c: int, t: int) -> None:
        # the CX permutation is an involution, so gather equals scatter
        idx = np.arange(2**self.n)
        src = np.where((idx >> c) & 1 == 1, idx ^ (1 << t), idx)
        self.state = self.state[src]

    def prob_one(self, q: int) -> float:
        bit = self._axes(q).astype(bool)
        return float(np.sum(np.abs(self.state[bit]) ** 2))

    def mz(self, q: int) -> int:
        p1 = self.prob_one(q)
        if p1 < 1e-9:
            outcome = 0
        elif p1 > 1 - 1e-9:
            outcome = 1
        else:
            outcome = int(self.rng.random() < p1)
        bit = self._axes(q).astype(bool)
        keep = bit if outcome else ~bit
        self.state = np.where(keep, self.state, 0)
        self.state /= np.linalg.norm(self.state)
        return outcome

    def is_z_deterministic(self, q: int) -> bool:
        p1 = self.prob_one(q)
        return p1 < 1e-9 or p1 > 1 - 1e-9

    def mx(self, q: int) -> int:
        self.h(q)
        out = self.mz(q)
        self.h(q)
        return out

    def rz(self, q: int) -> int:
        out = self.mz(q)
        if out:
            idx = np.arange(2**self.n)
            self.state = self.state[idx ^ (1 << q)]
        return out

    def rx(self, q: int) -> int:
        self.h(q)
        out = self.rz(q)
        self.h(q)
        return out


def _milp_min_weight(stab_rows: np.ndarray, g: np.ndarray, n: int) -> int | None:
    # variables: x_0..x_{n-1}, z_0..z_{n-1}, w_0..w_{n-1}, then one integer
    # slack per parity constraint (stabilizers + g)
    n_par = stab_rows.shape[0] + 1
    n_var = 3 * n + n_par
    c = np.zeros(n_var)
    c[2 * n : 3 * n] = 1.0

    rows = []
    lo: list[float] = []
    hi: list[float] = []
    # parity: sum_i x_i * s_z[i] + z_i * s_x[i] - 2 t = 0 (or = 1 for g)
    for j, s in enumerate(list(stab_rows) + [g]):
        row = np.zeros(n_var)
        row[:n] = s[n:]
        row[n : 2 * n] = s[:n]
        row[3 * n + j] = -2.0
        rows.append(row)
        rhs = 1.0 if j == n_par - 1 else 0.0
        lo.append(rhs)
        hi.append(rhs)
    # support indicators: x_i <= w_i, z_i <= w_i
    for i in range(n):
        for col in (i, n + i):
            row = np.zeros(n_var)
            row[col] = 1.0
            row[2 * n + i] = -1.0
            rows.append(row)
            lo.append(-np.inf)
            hi.append(0.0)

    bounds_lo = np.zeros(n_var)
    bounds_hi = np.ones(n_var)
    bounds_hi[3 * n :] = n  # parity slacks
    res = milp(
        c,
        constraints=LinearConstraint(np.array(rows), np.array(lo), np.array(hi)),
        integrality=np.ones(n_var),
        bounds=Bounds(bounds_lo, bounds_hi),
    )
    if not res.success:
        return None
    return int(round(res.fun))
