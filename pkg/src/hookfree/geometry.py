"""Rotated-surface-code patch layouts on doubled integer coordinates.

Data qubits sit at (even, even) positions and plaquette auxiliaries at
(odd, odd); doubling keeps every position an exact integer pair. All
patches share one global checkerboard, so merging patches never creates
conflicting bulk plaquettes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Mapping, Sequence

from . import gf2

Coord = tuple[int, int]

CORNER_OFFSETS: dict[str, Coord] = {
    "NW": (-1, 1),
    "NE": (1, 1),
    "SW": (-1, -1),
    "SE": (1, -1),
}


class PauliType(str, Enum):
    X = "X"
    Z = "Z"

    def dual(self) -> "PauliType":
        return PauliType.Z if self is PauliType.X else PauliType.X


def checkerboard(center: Coord) -> PauliType:
    """Bulk plaquette type at an (odd, odd) auxiliary position."""
    x, y = center
    if x % 2 == 0 or y % 2 == 0:
        msg = f"checkerboard is defined on (odd, odd) centers, got {center}"
        raise ValueError(msg)
    return PauliType.X if (x + y) % 4 == 0 else PauliType.Z


@dataclass(frozen=True)
class PauliString:
    """Pauli operator on data qubits; a qubit in both sets carries Y."""

    xs: frozenset[Coord]
    zs: frozenset[Coord]

    @staticmethod
    def x_string(coords: Iterable[Coord]) -> "PauliString":
        return PauliString(frozenset(coords), frozenset())

    @staticmethod
    def z_string(coords: Iterable[Coord]) -> "PauliString":
        return PauliString(frozenset(), frozenset(coords))

    @property
    def support(self) -> frozenset[Coord]:
        return self.xs | self.zs

    @property
    def weight(self) -> int:
        return len(self.support)

    def commutes(self, other: "PauliString") -> bool:
        return (len(self.xs & other.zs) + len(self.zs & other.xs)) % 2 == 0

    def __mul__(self, other: "PauliString") -> "PauliString":
        return PauliString(self.xs ^ other.xs, self.zs ^ other.zs)


@dataclass(frozen=True)
class Plaquette:
    """One stabilizer measurement unit.

    Non-stretched plaquettes measure ``pauli`` on every support. A stretched
    plaquette spans a 2x1 rectangle across a domain-wall column; its measured
    operator is mixed: the support pair on the lower-coordinate side of the
    long axis carries ``pauli.dual()`` and the far pair carries ``pauli``.
    """

    center: Coord
    pauli: PauliType
    supports: tuple[Coord, ...]
    stretched: bool = False

    def operator(self) -> PauliString:
        if not self.stretched:
            coords = frozenset(self.supports)
            if self.pauli is PauliType.X:
                return PauliString(coords, frozenset())
            return PauliString(frozenset(), coords)
        xs_vals = {x for x, _ in self.supports}
        ys_vals = {y for _, y in self.supports}
        # the stretch direction spans two cells; the other axis spans one
        x_span = max(xs_vals) - min(xs_vals)
        y_span = max(ys_vals) - min(ys_vals)
        axis = 0 if x_span > y_span else 1
        lo = min(xs_vals) if axis == 0 else min(ys_vals)
        near = frozenset(c for c in self.supports if c[axis] == lo)
        far = frozenset(self.supports) - near
        if self.pauli is PauliType.X:
            return PauliString(far, near)
        return PauliString(near, far)


@dataclass(frozen=True)
class PatchLayout:
    """A static patch: qubits, stabilizers, boundary typing, logicals.

    ``logical_pairs`` stores one (X-like, Z-like) anticommuting pair per
    tracked logical qubit; ``n_logical`` is the full logical count of the
    stabilizer group (the two differ only when a layout carries an
    untracked spectator sector).
    """

    name: str
    data_qubits: frozenset[Coord]
    plaquettes: tuple[Plaquette, ...]
    boundary_segments: tuple[tuple[str, PauliType], ...]
    logical_pairs: tuple[tuple[PauliString, PauliString], ...]
    n_logical: int

    # -- derived views -------------------------------------------------

    def sorted_data(self) -> list[Coord]:
        return sorted(self.data_qubits)

    def stabilizer_operators(self) -> list[PauliString]:
        return [p.operator() for p in self.plaquettes]

    def plaquettes_of_type(self, pauli: PauliType) -> list[Plaquette]:
        return [p for p in self.plaquettes if p.pauli is pauli]

    # -- validation ----------------------------------------------------

    def validate(self) -> "PatchLayout":
        for q in self.data_qubits:
            if q[0] % 2 or q[1] % 2:
                msg = f"{self.name}: data qubit {q} not on (even, even)"
                raise ValueError(msg)
        seen_centers: set[tuple[Coord, PauliType]] = set()
        for p in self.plaquettes:
            cx, cy = p.center
            if p.stretched:
                if (cx % 2) + (cy % 2) != 1:
                    msg = f"{self.name}: stretched center {p.center} not on a rectangle midpoint"
                    raise ValueError(msg)
                if len(p.supports) != 4:
                    msg = f"{self.name}: stretched plaquette at {p.center} must have 4 supports"
                    raise ValueError(msg)
            else:
                if cx % 2 == 0 or cy % 2 == 0:
                    msg = f"{self.name}: plaquette center {p.center} not on (odd, odd)"
                    raise ValueError(msg)
                if len(p.supports) not in (2, 3, 4):
                    msg = f"{self.name}: plaquette at {p.center} has weight {len(p.supports)}"
                    raise ValueError(msg)
                for s in p.supports:
                    if max(abs(s[0] - cx), abs(s[1] - cy)) != 1:
                        msg = f"{self.name}: support {s} not a corner of {p.center}"
                        raise ValueError(msg)
            if not set(p.supports) <= self.data_qubits:
                msg = f"{self.name}: plaquette at {p.center} has supports outside the patch"
                raise ValueError(msg)
            key = (p.center, p.pauli)
            if key in seen_centers:
                msg = f"{self.name}: duplicate plaquette at {p.center}"
                raise ValueError(msg)
            seen_centers.add(key)

        ops = self.stabilizer_operators()
        for i in range(len(ops)):
            for j in range(i + 1, len(ops)):
                if not ops[i].commutes(ops[j]):
                    msg = (
                        f"{self.name}: stabilizers at {self.plaquettes[i].center} "
                        f"and {self.plaquettes[j].center} anticommute"
                    )
                    raise ValueError(msg)
                pi, pj = self.plaquettes[i], self.plaquettes[j]
                if pi.pauli is not pj.pauli and not (pi.stretched or pj.stretched):
                    overlap = len(set(pi.supports) & set(pj.supports))
                    if overlap not in (0, 2):
                        msg = (
                            f"{self.name}: opposite-type plaquettes at {pi.center} and "
                            f"{pj.center} overlap on {overlap} qubits"
                        )
                        raise ValueError(msg)

        per_type: dict[tuple[Coord, PauliType], int] = {}
        covered: set[Coord] = set()
        for p in self.plaquettes:
            op = p.operator()
            covered |= op.support
            for q in op.xs:
                per_type[(q, PauliType.X)] = per_type.get((q, PauliType.X), 0) + 1
            for q in op.zs:
                per_type[(q, PauliType.Z)] = per_type.get((q, PauliType.Z), 0) + 1
        if covered != self.data_qubits:
            missing = sorted(self.data_qubits - covered)
            msg = f"{self.name}: data qubits {missing} not covered by any plaquette"
            raise ValueError(msg)
        for (q, t), count in per_type.items():
            if count > 2:
                msg = f"{self.name}: qubit {q} touched by {count} {t.value}-type plaquette terms"
                raise ValueError(msg)

        index = {q: i for i, q in enumerate(self.sorted_data())}
        n = len(index)
        stab_rows = [_sym_vec(op, index, n) for op in ops]
        n_logical = n - gf2.rank(stab_rows)
        if n_logical != self.n_logical:
            msg = f"{self.name}: n_logical={self.n_logical} but rank gives {n_logical}"
            raise ValueError(msg)
        if len(self.logical_pairs) > n_logical:
            msg = f"{self.name}: more logical pairs than logical qubits"
            raise ValueError(msg)

        basis = gf2.row_basis(stab_rows)
        flat = [op for pair in self.logical_pairs for op in pair]
        for op in flat:
            if not op.support <= self.data_qubits:
                msg = f"{self.name}: logical operator leaves the patch"
                raise ValueError(msg)
            for s, p in zip(ops, self.plaquettes):
                if not op.commutes(s):
                    msg = f"{self.name}: logical operator anticommutes with plaquette at {p.center}"
                    raise ValueError(msg)
            if gf2.in_span(_sym_vec(op, index, n), basis):
                msg = f"{self.name}: stored logical operator is a stabilizer product"
                raise ValueError(msg)
        for i, (xi, zi) in enumerate(self.logical_pairs):
            if xi.commutes(zi):
                msg = f"{self.name}: logical pair {i} does not anticommute"
                raise ValueError(msg)
            for j, (xj, zj) in enumerate(self.logical_pairs):
                if i == j:
                    continue
                for a, b in ((xi, xj), (xi, zj), (zi, xj), (zi, zj)):
                    if not a.commutes(b):
                        msg = f"{self.name}: logical pairs {i} and {j} are not symplectic"
                        raise ValueError(msg)
        return self

    # -- serialization ---------------------------------------------------

    def to_json(self) -> str:
        def ps(op: PauliString) -> dict:
            return {"x": sorted(op.xs), "z": sorted(op.zs)}

        doc = {
            "name": self.name,
            "data_qubits": sorted(self.data_qubits),
            "plaquettes": [
                {
                    "center": list(p.center),
                    "pauli": p.pauli.value,
                    "supports": [list(s) for s in p.supports],
                    "stretched": p.stretched,
                }
                for p in self.plaquettes
            ],
            "boundary_segments": [[d, t.value] for d, t in self.boundary_segments],
            "logical_pairs": [[ps(a), ps(b)] for a, b in self.logical_pairs],
            "n_logical": self.n_logical,
        }
        return json.dumps(doc, indent=1, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "PatchLayout":
        doc = json.loads(text)

        def ps(d: dict) -> PauliString:
            return PauliString(
                frozenset(tuple(c) for c in d["x"]),
                frozenset(tuple(c) for c in d["z"]),
            )

        return PatchLayout(
            name=doc["name"],
            data_qubits=frozenset(tuple(q) for q in doc["data_qubits"]),
            plaquettes=tuple(
                Plaquette(
                    center=tuple(p["center"]),
                    pauli=PauliType(p["pauli"]),
                    supports=tuple(tuple(s) for s in p["supports"]),
                    stretched=p["stretched"],
                )
                for p in doc["plaquettes"]
            ),
            boundary_segments=tuple((d, PauliType(t)) for d, t in doc["boundary_segments"]),
            logical_pairs=tuple((ps(a), ps(b)) for a, b in doc["logical_pairs"]),
            n_logical=doc["n_logical"],
        )


@dataclass(frozen=True)
class Transition:
    """Qubit turnover between consecutive slices of a LayoutSequence."""

    measure: tuple[tuple[Coord, PauliType], ...]
    reset: tuple[tuple[Coord, PauliType], ...]


@dataclass(frozen=True)
class LayoutSequence:
    name: str
    slices: tuple[PatchLayout, ...]
    transitions: tuple[Transition, ...]

    def validate(self) -> "LayoutSequence":
        if len(self.transitions) != len(self.slices) - 1:
            msg = f"{self.name}: need one transition per slice boundary"
            raise ValueError(msg)
        for i, tr in enumerate(self.transitions):
            old = self.slices[i].data_qubits
            new = self.slices[i + 1].data_qubits
            measured = {q for q, _ in tr.measure}
            reset = {q for q, _ in tr.reset}
            if not measured <= old:
                msg = f"{self.name}: transition {i} measures qubits outside slice {i}"
                raise ValueError(msg)
            if reset & old:
                msg = f"{self.name}: transition {i} resets qubits already present"
                raise ValueError(msg)
            if (old - measured) | reset != new:
                msg = f"{self.name}: transition {i} does not produce slice {i + 1}"
                raise ValueError(msg)
        for s in self.slices:
            s.validate()
        return self


# -- symplectic helpers --------------------------------------------------


def _sym_vec(op: PauliString, index: Mapping[Coord, int], n: int) -> int:
    v = 0
    for q in op.xs:
        v |= 1 << index[q]
    for q in op.zs:
        v |= 1 << (n + index[q])
    return v


def _sym_product_mask(op: PauliString, index: Mapping[Coord, int], n: int) -> int:
    # <v, op> = v_x . op_z + v_z . op_x with v laid out as [x bits | z bits]
    m = 0
    for q in op.zs:
        m |= 1 << index[q]
    for q in op.xs:
        m |= 1 << (n + index[q])
    return m


def _solve_partner(
    data: Sequence[Coord],
    stabilizers: Sequence[PauliString],
    anticommute_with: PauliString,
    commute_with: Sequence[PauliString],
) -> PauliString:
    """Any Pauli commuting with all stabilizers and ``commute_with`` while
    anticommuting with ``anticommute_with``; used to complete logical pairs."""
    index = {q: i for i, q in enumerate(data)}
    n = len(data)
    eqs = [(_sym_product_mask(s, index, n), 0) for s in stabilizers]
    eqs += [(_sym_product_mask(s, index, n), 0) for s in commute_with]
    eqs.append((_sym_product_mask(anticommute_with, index, n), 1))
    v = gf2.solve(eqs, 2 * n)
    if v is None:
        msg = "no logical partner exists; pairing constraints are inconsistent"
        raise ValueError(msg)
    xs = frozenset(q for q, i in index.items() if (v >> i) & 1)
    zs = frozenset(q for q, i in index.items() if (v >> (n + i)) & 1)
    return PauliString(xs, zs)


def _complete_pairs(
    data: Iterable[Coord],
    stabilizers: Sequence[PauliString],
    tracked: Sequence[tuple[PauliString | None, PauliString | None]],
) -> tuple[tuple[PauliString, PauliString], ...]:
    """Fill the missing member of each (X-like, Z-like) pair by GF(2) solve."""
    order = sorted(data)
    known: list[PauliString] = [op for pair in tracked for op in pair if op is not None]
    pairs: list[tuple[PauliString, PauliString]] = []
    for x_like, z_like in tracked:
        if x_like is not None and z_like is not None:
            pairs.append((x_like, z_like))
            continue
        present = x_like if x_like is not None else z_like
        assert present is not None
        others = [op for op in known if op is not present]
        others += [op for pair in pairs for op in pair if op not in known]
        partner = _solve_partner(order, stabilizers, present, others)
        known.append(partner)
        pairs.append((x_like or partner, z_like or partner))
    return tuple(pairs)


def _extend_to_full_pairs(
    data: Iterable[Coord],
    stabilizers: Sequence[PauliString],
    pairs: Sequence[tuple[PauliString, PauliString]],
    n_logical: int,
) -> tuple[tuple[PauliString, PauliString], ...]:
    """Append symplectic pairs for any logical sectors not yet represented."""
    order = sorted(data)
    index = {q: i for i, q in enumerate(order)}
    n = len(order)
    out = list(pairs)
    while len(out) < n_logical:
        listed = [op for pair in out for op in pair]
        constraints = [_sym_product_mask(s, index, n) for s in stabilizers]
        constraints += [_sym_product_mask(op, index, n) for op in listed]
        centre = gf2.nullspace(constraints, 2 * n)
        span = gf2.row_basis(
            [_sym_vec(s, index, n) for s in stabilizers]
            + [_sym_vec(op, index, n) for op in listed]
        )
        rep = next(v for v in centre if not gf2.in_span(v, span))
        xs = frozenset(q for q, i in index.items() if (rep >> i) & 1)
        zs = frozenset(q for q, i in index.items() if (rep >> (n + i)) & 1)
        first = PauliString(xs, zs)
        second = _solve_partner(order, stabilizers, first, listed)
        out.append((first, second))
    return tuple(out)


# -- plaquette collection -------------------------------------------------


def _cell_data(k: int, origin: Coord) -> set[Coord]:
    ox, oy = origin
    return {(ox + 2 * i, oy + 2 * j) for i in range(2 * k + 1) for j in range(2 * k + 1)}


def _collect_plaquettes(
    data: frozenset[Coord],
    boundary_type: Callable[[Coord], PauliType | None],
) -> tuple[Plaquette, ...]:
    """All bulk plaquettes plus the boundary ones whose checkerboard type
    matches the local segment type (the inclusion rule for weight-2/3)."""
    candidates: set[Coord] = set()
    for x, y in data:
        for dx, dy in CORNER_OFFSETS.values():
            candidates.add((x + dx, y + dy))
    out: list[Plaquette] = []
    for c in sorted(candidates):
        corners = tuple(
            sorted((c[0] + dx, c[1] + dy) for dx, dy in CORNER_OFFSETS.values() if (c[0] + dx, c[1] + dy) in data)
        )
        w = len(corners)
        if w <= 1:
            continue
        if w == 2 and corners[0][0] != corners[1][0] and corners[0][1] != corners[1][1]:
            continue  # diagonal pair at a pinch point, never a valid stabilizer
        t = checkerboard(c)
        if w == 4:
            out.append(Plaquette(c, t, corners))
            continue
        seg = boundary_type(c)
        if seg is not None and seg is t:
            out.append(Plaquette(c, t, corners))
    return tuple(out)


def _require_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        msg = f"k must be a positive integer, got {k!r}"
        raise ValueError(msg)


# -- builders --------------------------------------------------------------


def build_memory(
    k: int,
    top_bottom: PauliType = PauliType.X,
    *,
    origin: Coord = (0, 0),
    name: str | None = None,
) -> PatchLayout:
    """Square distance-(2k+1) memory patch.

    ``top_bottom`` is the boundary type of the top and bottom edges; the
    left/right edges carry the dual type.
    """
    _require_k(k)
    ox, oy = origin
    data = frozenset(_cell_data(k, origin))
    side = top_bottom.dual()
    hi = 4 * k

    def boundary_type(c: Coord) -> PauliType | None:
        x, y = c
        if y == oy + hi + 1 or y == oy - 1:
            return top_bottom
        if x == ox - 1 or x == ox + hi + 1:
            return side
        return None

    plaquettes = _collect_plaquettes(data, boundary_type)
    col = PauliString.x_string({(ox, oy + 2 * j) for j in range(2 * k + 1)})
    row = PauliString.z_string({(ox + 2 * i, oy) for i in range(2 * k + 1)})
    if top_bottom is PauliType.X:
        pairs = ((col, row),)
    else:
        pairs = (
            (
                PauliString.x_string({(ox + 2 * i, oy) for i in range(2 * k + 1)}),
                PauliString.z_string({(ox, oy + 2 * j) for j in range(2 * k + 1)}),
            ),
        )
    return PatchLayout(
        name=name or f"memory_k{k}_{top_bottom.value.lower()}tb",
        data_qubits=data,
        plaquettes=plaquettes,
        boundary_segments=(
            ("top", top_bottom),
            ("bottom", top_bottom),
            ("west", side),
            ("east", side),
        ),
        logical_pairs=pairs,
        n_logical=1,
    ).validate()


def build_l_junction(k: int) -> PatchLayout:
    """Two patches merged into an L: a 2x1 strip plus one square on the far
    end of the second cell.

    Every convex corner of a rotated patch must flip the boundary type
    (otherwise the corner qubit loses one stabilizer type), and the L has
    five convex corners plus one reentrant bend, so the consistent typing
    makes the two arm ends opposite types: west end X, north end Z, with
    the remaining arcs alternating. The reentrant weight-3 candidate
    straddles arcs of different types and is excluded.
    """
    _require_k(k)
    pitch = 4 * k + 2
    data = frozenset(
        _cell_data(k, (0, 0)) | _cell_data(k, (pitch, 0)) | _cell_data(k, (pitch, pitch))
    )
    hi = 4 * k

    def boundary_type(c: Coord) -> PauliType | None:
        x, y = c
        if x == -1:
            return PauliType.X  # west end
        if y == pitch + hi + 1:
            return PauliType.Z  # north end
        if y == -1:
            return PauliType.Z  # bottom side
        if x == pitch + hi + 1:
            return PauliType.X  # east side
        if y == hi + 1 and x < hi + 1:
            return PauliType.Z  # inner side along the strip
        if x == hi + 1 and y > hi + 1:
            return PauliType.X  # inner side along the end cell
        return None  # the reentrant bend straddles a type change

    plaquettes = _collect_plaquettes(data, boundary_type)
    stabs = [p.operator() for p in plaquettes]
    z_across_strip = PauliString.z_string({(0, 2 * j) for j in range(2 * k + 1)})
    z_end_to_end = PauliString.z_string({(pitch, 2 * j) for j in range(4 * k + 2)})
    pairs = _complete_pairs(
        data, stabs, [(None, z_across_strip), (None, z_end_to_end)]
    )
    return PatchLayout(
        name=f"l_junction_k{k}",
        data_qubits=data,
        plaquettes=plaquettes,
        boundary_segments=(
            ("west_end", PauliType.X),
            ("north_end", PauliType.Z),
            ("bottom", PauliType.Z),
            ("east", PauliType.X),
            ("inner_lower", PauliType.Z),
            ("inner_upper", PauliType.X),
        ),
        logical_pairs=pairs,
        n_logical=2,
    ).validate()


def build_x_junction(k: int) -> PatchLayout:
    """Central patch merged with four neighbors; arm ends are X-type and
    every side segment is Z-type, so all seams meet same-type boundaries."""
    _require_k(k)
    pitch = 4 * k + 2
    cells = [(0, 0), (0, pitch), (pitch, 0), (0, -pitch), (-pitch, 0)]
    data = frozenset(q for c in cells for q in _cell_data(k, c))
    hi = 4 * k
    far = pitch + hi + 1  # outer edge of the positive arms
    near = -pitch - 1  # outer edge of the negative arms (origins are lower-left)

    def boundary_type(c: Coord) -> PauliType | None:
        x, y = c
        if x in (far, near) or y in (far, near):
            return PauliType.X  # arm ends
        if x in (-1, hi + 1) or y in (-1, hi + 1):
            return PauliType.Z  # arm sides and the reentrant bends
        return None

    plaquettes = _collect_plaquettes(data, boundary_type)
    span = {2 * i for i in range(2 * k + 1)}
    z_north = PauliString.z_string({(x, pitch) for x in span})
    z_east = PauliString.z_string({(pitch, y) for y in span})
    z_south = PauliString.z_string({(x, -2) for x in span})
    stabs = [p.operator() for p in plaquettes]
    pairs = _complete_pairs(data, stabs, [(None, z_north), (None, z_east), (None, z_south)])
    return PatchLayout(
        name=f"x_junction_k{k}",
        data_qubits=data,
        plaquettes=plaquettes,
        boundary_segments=(
            ("north_end", PauliType.X),
            ("east_end", PauliType.X),
            ("south_end", PauliType.X),
            ("west_end", PauliType.X),
            ("northwest_side", PauliType.Z),
            ("northeast_side", PauliType.Z),
            ("southeast_side", PauliType.Z),
            ("southwest_side", PauliType.Z),
        ),
        logical_pairs=pairs,
        n_logical=3,
    ).validate()


class Orientation(str, Enum):
    VERTICAL = "vertical"
    HORIZONTAL = "horizontal"


def _transpose_layout(layout: PatchLayout) -> PatchLayout:
    def t(c: Coord) -> Coord:
        return (c[1], c[0])

    def tps(op: PauliString) -> PauliString:
        return PauliString(frozenset(map(t, op.xs)), frozenset(map(t, op.zs)))

    return PatchLayout(
        name=layout.name,
        data_qubits=frozenset(map(t, layout.data_qubits)),
        plaquettes=tuple(
            Plaquette(t(p.center), p.pauli, tuple(sorted(map(t, p.supports))), p.stretched)
            for p in layout.plaquettes
        ),
        boundary_segments=layout.boundary_segments,
        logical_pairs=tuple((tps(a), tps(b)) for a, b in layout.logical_pairs),
        n_logical=layout.n_logical,
    )


def build_hadamard_interface(
    k: int, orientation: Orientation | str = Orientation.VERTICAL
) -> PatchLayout:
    """Two patches merged through a domain wall of stretched plaquettes.

    The left patch has X top/bottom boundaries, the right patch Z top/bottom,
    and the seam column between them is empty of patch data: each stretched
    plaquette spans a 2x1 rectangle whose left data pair carries Z and right
    pair carries X. The facing boundary weight-2 stabilizers of the two
    patches are not measured during the merge (their auxiliary positions are
    occupied by the interface chain), which leaves a spectator logical pair
    alongside the tracked one; only the tracked pair enters experiment
    observables.
    """
    _require_k(k)
    orientation = Orientation(orientation)
    hi = 4 * k
    shift = hi + 4  # right patch origin; column hi+2 stays empty
    data = frozenset(_cell_data(k, (0, 0)) | _cell_data(k, (shift, 0)))

    def boundary_type(c: Coord) -> PauliType | None:
        x, y = c
        if x in (hi + 1, hi + 3):
            return None  # facing boundary w2s suppressed along the wall
        if y == hi + 1 or y == -1:
            return PauliType.X if x < hi + 2 else PauliType.Z
        if x == -1:
            return PauliType.Z
        if x == shift + hi + 1:
            return PauliType.X
        return None

    plaquettes = list(_collect_plaquettes(data, boundary_type))
    for j in range(2 * k):
        y = 2 * j
        # The stretched operator fuses the two facing seam w2s, so its side
        # types continue the bulk checkerboard: pauli is the right-side type.
        plaquettes.append(
            Plaquette(
                center=(hi + 2, y + 1),
                pauli=checkerboard((hi + 3, y + 1)),
                supports=((hi, y), (hi, y + 2), (shift, y), (shift, y + 2)),
                stretched=True,
            )
        )
    stabs = [p.operator() for p in plaquettes]
    tracked_x = PauliString.x_string({(0, 2 * j) for j in range(2 * k + 1)})
    pairs = _complete_pairs(data, stabs, [(tracked_x, None)])
    pairs = _extend_to_full_pairs(data, stabs, pairs, 2)
    layout = PatchLayout(
        name=f"hadamard_k{k}_{orientation.value}",
        data_qubits=data,
        plaquettes=tuple(plaquettes),
        boundary_segments=(
            ("west", PauliType.Z),
            ("top_left", PauliType.X),
            ("top_right", PauliType.Z),
            ("east", PauliType.X),
            ("bottom_right", PauliType.Z),
            ("bottom_left", PauliType.X),
        ),
        logical_pairs=pairs,
        n_logical=2,
    )
    if orientation is Orientation.HORIZONTAL:
        layout = _transpose_layout(layout)
    return layout.validate()


def _build_rotation_rectangle(k: int) -> PatchLayout:
    """2x1 rectangle with six boundary segments: the left half keeps the
    original patch's boundary types and the right half is born rotated."""
    hi = 4 * k
    seam = hi + 1  # boundary auxiliary column where segment types change
    data = frozenset(_cell_data(k, (0, 0)) | _cell_data(k, (hi + 2, 0)))

    def boundary_type(c: Coord) -> PauliType | None:
        x, y = c
        if y == hi + 1 or y == -1:
            if x == seam:
                return None  # straddles the segment-type change, excluded
            return PauliType.X if x < seam else PauliType.Z
        if x == -1:
            return PauliType.Z
        if x == 2 * hi + 3:
            return PauliType.X
        return None

    plaquettes = _collect_plaquettes(data, boundary_type)
    stabs = [p.operator() for p in plaquettes]
    left_col = PauliString.x_string({(0, 2 * j) for j in range(2 * k + 1)})
    right_col = PauliString.z_string({(hi + 2, 2 * j) for j in range(2 * k + 1)})
    pairs = _complete_pairs(data, stabs, [(left_col, None), (None, right_col)])
    return PatchLayout(
        name=f"rotation_rect_k{k}",
        data_qubits=data,
        plaquettes=plaquettes,
        boundary_segments=(
            ("top_left", PauliType.X),
            ("top_right", PauliType.Z),
            ("east", PauliType.X),
            ("bottom_right", PauliType.Z),
            ("bottom_left", PauliType.X),
            ("west", PauliType.Z),
        ),
        logical_pairs=pairs,
        n_logical=2,
    )


def build_rotation_sequence(k: int) -> LayoutSequence:
    """Patch rotation movie: grow east into a six-segment rectangle, hold,
    then shrink onto the rotated half.

    Four slices of d rounds each (the rectangle is held for two) give the
    1+2+2+1 = 6 patch-steps of spacetime volume. The grown half is reset in
    Z, which makes the new vertical Z-logical deterministic at birth; the
    shrink measures the original half in X, reading out the original
    X-logical. Experiments track both observables.
    """
    _require_k(k)
    start = build_memory(k, PauliType.X, name=f"rotation_start_k{k}")
    rect = _build_rotation_rectangle(k).validate()
    end = build_memory(
        k, PauliType.Z, origin=(4 * k + 2, 0), name=f"rotation_end_k{k}"
    )
    grown = sorted(rect.data_qubits - start.data_qubits)
    shrunk = sorted(rect.data_qubits - end.data_qubits)
    transitions = (
        Transition(measure=(), reset=tuple((q, PauliType.Z) for q in grown)),
        Transition(measure=(), reset=()),
        Transition(measure=tuple((q, PauliType.X) for q in shrunk), reset=()),
    )
    return LayoutSequence(
        name=f"rotation_k{k}",
        slices=(start, rect, rect, end),
        transitions=transitions,
    ).validate()
