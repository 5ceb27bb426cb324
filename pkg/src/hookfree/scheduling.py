"""Gate-order schedules and their static analysis.

A Schedule fixes the order and time slots in which one plaquette couples
its data qubits to its auxiliary. A ScheduleAssignment gives one schedule
per plaquette plus the temporal mode (same every round, or alternated with
the time-reversed order) and the hardware timing model. The checks here
are purely combinatorial; the circuit module holds the simulation oracle
that must agree with them.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum

from .geometry import Coord, PatchLayout, PauliString, PauliType, Plaquette

Offset = tuple[int, int]


class ScheduleName(str, Enum):
    N = "N"
    Z = "Z"
    N_REVERSED = "N_reversed"
    Z_REVERSED = "Z_reversed"
    DIAGONAL_X = "DiagonalX"
    DIAGONAL_Z = "DiagonalZ"
    CUSTOM = "custom"


class Temporal(str, Enum):
    STATIC = "static"
    ALTERNATING = "alternating"


class HookOrientation(str, Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    DIAGONAL = "diagonal"
    SINGLE = "single"
    NONE = "none"


@dataclass(frozen=True)
class TimingModel:
    """parallel_mr: measurements/resets may share time steps with gates."""

    parallel_mr: bool = True


@dataclass(frozen=True)
class Schedule:
    """Coupling order for one plaquette.

    `order` lists the corner offsets (support minus center) in coupling
    order. `slots` gives each coupling's time slot relative to
    `start_offset`; None means consecutive slots 0,1,2,...
    """

    name: ScheduleName
    order: tuple[Offset, ...]
    start_offset: int = 1
    slots: tuple[int, ...] | None = None
    window: int | None = None

    def __post_init__(self) -> None:
        if len(set(self.order)) != len(self.order):
            raise ValueError("schedule order repeats a corner offset")
        if self.slots is not None:
            if len(self.slots) != len(self.order):
                raise ValueError("slots and order lengths differ")
            if list(self.slots) != sorted(set(self.slots)):
                raise ValueError("slots must be strictly increasing")
            if self.slots and self.slots[0] < 0:
                raise ValueError("slots must be non-negative")
        if self.start_offset < 1:
            raise ValueError("start_offset must leave slot room for the reset")
        if self.window is not None and self.window < max(self._rel_slots(), default=0):
            raise ValueError("window smaller than the last gate slot")

    def _rel_slots(self) -> tuple[int, ...]:
        if self.slots is not None:
            return self.slots
        return tuple(range(len(self.order)))

    # -- absolute timing within one round --------------------------------

    def gate_slots(self) -> tuple[int, ...]:
        return tuple(self.start_offset + s for s in self._rel_slots())

    def reset_slot(self) -> int:
        return self.start_offset - 1

    def measure_slot(self) -> int:
        return self.start_offset + self._window() + 1

    def cycle_length(self) -> int:
        return self.measure_slot() - self.reset_slot() + 1

    def _window(self) -> int:
        if self.window is not None:
            return self.window
        return max(self._rel_slots(), default=0)

    def reversed_(self) -> "Schedule":
        """Time-reversed coupling order, mirrored inside the gate window.

        Mirroring uses the full template window so that boundary plaquettes
        keep inheriting the slots of their present corners.
        """
        span = self._window()
        mirrored = sorted(
            ((span - s, o) for o, s in zip(self.order, self._rel_slots())),
        )
        return Schedule(
            name=self.name,
            order=tuple(o for _, o in mirrored),
            start_offset=self.start_offset,
            slots=tuple(s for s, _ in mirrored),
            window=span,
        )

    def specialize(self, offsets: Iterable[Offset]) -> "Schedule":
        """Restrict a four-corner template to the offsets actually present,
        keeping each present corner's slot."""
        present = set(offsets)
        kept = [(o, s) for o, s in zip(self.order, self._rel_slots()) if o in present]
        if len(kept) != len(present):
            raise ValueError("schedule template does not cover all supports")
        return Schedule(
            name=self.name,
            order=tuple(o for o, _ in kept),
            start_offset=self.start_offset,
            slots=tuple(s for _, s in kept),
            window=self._window(),
        )

    def to_json(self) -> dict:
        return {
            "name": self.name.value,
            "order": [list(o) for o in self.order],
            "start_offset": self.start_offset,
            "slots": list(self.slots) if self.slots is not None else None,
            "window": self.window,
        }

    @staticmethod
    def from_json(doc: Mapping) -> "Schedule":
        return Schedule(
            name=ScheduleName(doc["name"]),
            order=tuple((int(a), int(b)) for a, b in doc["order"]),
            start_offset=int(doc["start_offset"]),
            slots=None if doc.get("slots") is None else tuple(int(s) for s in doc["slots"]),
            window=None if doc.get("window") is None else int(doc["window"]),
        )


# -- schedule catalog -----------------------------------------------------

_CORNER = {"NW": (-1, 1), "NE": (1, 1), "SW": (-1, -1), "SE": (1, -1)}

_ORDERS: dict[ScheduleName, tuple[str, ...]] = {
    ScheduleName.Z: ("NE", "NW", "SE", "SW"),
    ScheduleName.N: ("NE", "SE", "NW", "SW"),
    ScheduleName.Z_REVERSED: ("SW", "SE", "NW", "NE"),
    ScheduleName.N_REVERSED: ("SW", "NW", "SE", "NE"),
    ScheduleName.DIAGONAL_X: ("NW", "SE", "NE", "SW"),
    ScheduleName.DIAGONAL_Z: ("NE", "SW", "NW", "SE"),
}

# letter-shaped schedules leave one idle slot so that any mixture of them
# stays collision-free; the compressed variants drop it
_GAPPED_SLOTS: dict[ScheduleName, tuple[int, ...]] = {
    ScheduleName.Z: (0, 1, 2, 4),
    ScheduleName.N: (0, 2, 3, 4),
    ScheduleName.Z_REVERSED: (0, 2, 3, 4),
    ScheduleName.N_REVERSED: (0, 1, 2, 4),
}


def _corner_offsets(p: Plaquette) -> dict[str, Offset]:
    out: dict[str, Offset] = {}
    cx, cy = p.center
    for sx, sy in p.supports:
        name = ("N" if sy > cy else "S") + ("W" if sx < cx else "E")
        out[name] = (sx - cx, sy - cy)
    return out


def template(
    name: ScheduleName, p: Plaquette, *, compressed: bool = True, start_offset: int = 1
) -> Schedule:
    """Instantiate a catalog schedule for one plaquette."""
    corners = _corner_offsets(p)
    order_names = _ORDERS[name]
    if compressed or name in (ScheduleName.DIAGONAL_X, ScheduleName.DIAGONAL_Z):
        slots: tuple[int, ...] = (0, 1, 2, 3)
    else:
        slots = _GAPPED_SLOTS[name]
    full = Schedule(
        name=name,
        order=tuple(corners.get(n, _CORNER[n]) for n in order_names),
        start_offset=start_offset,
        slots=slots,
    )
    return full.specialize(corners.values())


@dataclass(frozen=True)
class ScheduleAssignment:
    """One schedule per plaquette (keyed by plaquette center) over a layout."""

    layout: PatchLayout
    per_plaquette: dict[Coord, Schedule]
    temporal: Temporal = Temporal.STATIC
    timing: TimingModel = field(default_factory=TimingModel)

    def __post_init__(self) -> None:
        for p in self.layout.plaquettes:
            sched = self.per_plaquette.get(p.center)
            if sched is None:
                raise ValueError(f"plaquette {p.center} has no schedule")
            offsets = {(sx - p.center[0], sy - p.center[1]) for sx, sy in p.supports}
            if set(sched.order) != offsets:
                raise ValueError(
                    f"schedule order for {p.center} is not a permutation of its corners"
                )

    def schedule_for(self, p: Plaquette, round_parity: int = 0) -> Schedule:
        base = self.per_plaquette[p.center]
        if self.temporal is Temporal.ALTERNATING and round_parity % 2 == 1:
            return base.reversed_()
        return base

    def to_json(self) -> dict:
        return {
            "layout": self.layout.name,
            "temporal": self.temporal.value,
            "parallel_mr": self.timing.parallel_mr,
            "per_plaquette": {
                f"{c[0]},{c[1]}": s.to_json() for c, s in sorted(self.per_plaquette.items())
            },
        }

    @staticmethod
    def from_json(layout: PatchLayout, doc: Mapping) -> "ScheduleAssignment":
        per: dict[Coord, Schedule] = {}
        for key, sdoc in doc["per_plaquette"].items():
            x, y = key.split(",")
            per[(int(x), int(y))] = Schedule.from_json(sdoc)
        return ScheduleAssignment(
            layout=layout,
            per_plaquette=per,
            temporal=Temporal(doc.get("temporal", "static")),
            timing=TimingModel(parallel_mr=bool(doc.get("parallel_mr", True))),
        )


# -- assignment builders ---------------------------------------------------


def letter_assignment(
    layout: PatchLayout,
    *,
    x_shape: ScheduleName = ScheduleName.Z,
    z_shape: ScheduleName = ScheduleName.N,
    compressed: bool = True,
    temporal: Temporal = Temporal.STATIC,
    timing: TimingModel | None = None,
) -> ScheduleAssignment:
    """Uniform letter-shaped tiling: one shape for X plaquettes, one for Z."""
    per = {
        p.center: template(
            x_shape if p.pauli is PauliType.X else z_shape, p, compressed=compressed
        )
        for p in layout.plaquettes
    }
    return ScheduleAssignment(
        layout=layout,
        per_plaquette=per,
        temporal=temporal,
        timing=timing or TimingModel(),
    )


def mixed_letter_assignment(
    layout: PatchLayout,
    *,
    compressed: bool = False,
    temporal: Temporal = Temporal.STATIC,
    timing: TimingModel | None = None,
) -> ScheduleAssignment:
    """Arm-dependent letter tiling for junction layouts.

    East/west arms swap the two shapes so hook residuals stay perpendicular
    to the logical operators running along those arms; the swap puts
    differently-shaped same-type plaquettes diagonally adjacent near the
    junction center, which is exactly what forces the idle slot (period 7)
    when the tiling is not compressed.
    """
    per: dict[Coord, Schedule] = {}
    for p in layout.plaquettes:
        x, y = p.center
        east_west = abs(x) > abs(y)
        if east_west:
            name = ScheduleName.N if p.pauli is PauliType.X else ScheduleName.Z
        else:
            name = ScheduleName.Z if p.pauli is PauliType.X else ScheduleName.N
        per[p.center] = template(name, p, compressed=compressed)
    return ScheduleAssignment(
        layout=layout,
        per_plaquette=per,
        temporal=temporal,
        timing=timing or TimingModel(),
    )


def diagonal_assignment(
    layout: PatchLayout,
    *,
    timing: TimingModel | None = None,
    temporal: Temporal = Temporal.STATIC,
    x_delay: int = 0,
) -> ScheduleAssignment:
    """Globally uniform diagonal schedules: X plaquettes start their gates
    two slots before Z plaquettes, giving each auxiliary a six-step cycle.
    `x_delay` shifts the whole pattern later; the sequential-timing variant
    with x_delay=1 leaves slot 1 free for interface chains."""
    per: dict[Coord, Schedule] = {}
    for p in layout.plaquettes:
        if p.pauli is PauliType.X:
            per[p.center] = template(ScheduleName.DIAGONAL_X, p, start_offset=1 + x_delay)
        else:
            per[p.center] = template(ScheduleName.DIAGONAL_Z, p, start_offset=3 + x_delay)
    return ScheduleAssignment(
        layout=layout,
        per_plaquette=per,
        temporal=temporal,
        timing=timing or TimingModel(),
    )


# -- timing analysis -------------------------------------------------------


def _base_period(assign: ScheduleAssignment) -> int:
    scheds = [assign.per_plaquette[p.center] for p in assign.layout.plaquettes]
    if not scheds:
        return 1
    if assign.timing.parallel_mr:
        # per-auxiliary cycles pipeline; the round length is the longest one
        return max(s.cycle_length() for s in scheds)
    # global reset step at 0 and one global measure step after the last gate
    return max(max(s.gate_slots()) for s in scheds) + 2


def check_collisions(
    layout: PatchLayout, assign: ScheduleAssignment
) -> list[tuple[int, Coord, tuple[Coord, Coord]]]:
    """Every (time step, qubit, plaquette pair) addressed twice at once.

    Rounds repeat with the base period (doubled when alternating), so the
    schedule is laid out over a four-round window and duplicate qubit use
    at one absolute step is reported modulo the repeating pattern. Under
    sequential timing, a gate scheduled during the global measure or reset
    step is a collision too, reported with the plaquette paired with itself.
    """
    if assign.layout is not layout and assign.layout != layout:
        raise ValueError("assignment was built for a different layout")
    period = _base_period(assign)
    parities = (0, 1) if assign.temporal is Temporal.ALTERNATING else (0,)
    super_period = period * len(parities)
    busy: dict[tuple[int, Coord], list[Coord]] = defaultdict(list)
    out: set[tuple[int, Coord, tuple[Coord, Coord]]] = set()
    for n in range(4):
        base = n * period
        parity = n % len(parities)
        for p in layout.plaquettes:
            s = assign.schedule_for(p, parity)
            cx, cy = p.center
            for (ox, oy), slot in zip(s.order, s.gate_slots()):
                busy[(base + slot, (cx + ox, cy + oy))].append(p.center)
                busy[(base + slot, p.center)].append(p.center)
                if not assign.timing.parallel_mr and slot % period in (0, period - 1):
                    out.add(((base + slot) % super_period, (cx + ox, cy + oy), (p.center, p.center)))
            if assign.timing.parallel_mr:
                busy[(base + s.reset_slot(), p.center)].append(p.center)
                busy[(base + s.measure_slot(), p.center)].append(p.center)
            else:
                busy[(base, p.center)].append(p.center)
                busy[(base + period - 1, p.center)].append(p.center)
    for (t, qubit), centers in busy.items():
        if len(centers) > 1:
            for i in range(len(centers)):
                for j in range(i + 1, len(centers)):
                    pair = tuple(sorted((centers[i], centers[j])))
                    out.add((t % super_period, qubit, pair))  # type: ignore[arg-type]
    return sorted(out)


def compute_period(assign: ScheduleAssignment) -> int:
    """Round length in time steps; rejects colliding assignments."""
    collisions = check_collisions(assign.layout, assign)
    if collisions:
        raise ValueError(f"assignment has collisions: {collisions[:3]}")
    return _base_period(assign)


def check_validity(
    layout: PatchLayout, assign: ScheduleAssignment
) -> tuple[bool, list[tuple[Coord, Coord]]]:
    """Interleaving rule over every opposite-type pair with shared support.

    For each pair and every relative round shift, the number of shared
    qubits the first plaquette couples before the second must be even.
    Returns (valid, violating center pairs).
    """
    period = _base_period(assign)
    flavors = 2 if assign.temporal is Temporal.ALTERNATING else 1
    plaqs = layout.plaquettes
    violations: set[tuple[Coord, Coord]] = set()

    def couple_times(p: Plaquette, parity: int) -> dict[Coord, int]:
        s = assign.schedule_for(p, parity)
        cx, cy = p.center
        return {
            (cx + ox, cy + oy): slot
            for (ox, oy), slot in zip(s.order, s.gate_slots())
        }

    for i, a in enumerate(plaqs):
        for b in plaqs[i + 1 :]:
            shared = set(a.supports) & set(b.supports)
            # only positions where the two coupling letters anticommute can
            # spread auxiliary randomness into the other outcome
            conflict = {
                q
                for q in shared
                if _coupling_letter(a, q) is not _coupling_letter(b, q)
            }
            if not conflict:
                continue
            for fb in range(flavors):
                tb = couple_times(b, fb)
                for j in range(-2 * flavors, 2 * flavors + 1):
                    ta = couple_times(a, (fb + j) % flavors)
                    crossings = sum(
                        1 for q in conflict if ta[q] + j * period < tb[q]
                    )
                    if crossings % 2:
                        violations.add((a.center, b.center))
    return (not violations, sorted(violations))


# -- hook-error analysis ----------------------------------------------------


@dataclass(frozen=True)
class HookReport:
    """Residual data error left by an auxiliary fault mid-extraction."""

    plaquette_id: Coord
    fault_step: int
    residual: PauliString
    orientation: HookOrientation


def _coupling_letter(p: Plaquette, support: Coord) -> PauliType:
    op = p.operator()
    if support in op.xs:
        return PauliType.X
    return PauliType.Z


def _classify(qubits: Sequence[Coord]) -> HookOrientation:
    if len(qubits) == 0:
        return HookOrientation.NONE
    if len(qubits) == 1:
        return HookOrientation.SINGLE
    (x1, y1), (x2, y2) = sorted(qubits)[:2]
    if len(qubits) > 2:
        return HookOrientation.NONE
    if y1 == y2:
        return HookOrientation.HORIZONTAL
    if x1 == x2:
        return HookOrientation.VERTICAL
    return HookOrientation.DIAGONAL


def analyze_hooks(layout: PatchLayout, assign: ScheduleAssignment) -> list[HookReport]:
    """Propagate one auxiliary fault per inter-gate position per plaquette.

    The fault component that spreads to data is the one matching the
    plaquette's type (X for X-auxiliaries, Z for Z-auxiliaries); what is
    reported is the residual reduced modulo the plaquette's own operator
    whenever that lowers its weight.
    """
    period = _base_period(assign)
    parities = (0, 1) if assign.temporal is Temporal.ALTERNATING else (0,)
    reports: list[HookReport] = []
    for p in layout.plaquettes:
        stab = p.operator()
        for parity in parities:
            s = assign.schedule_for(p, parity)
            slots = s.gate_slots()
            cx, cy = p.center
            coupled = [(cx + ox, cy + oy) for ox, oy in s.order]
            for cut in range(1, len(coupled)):
                remaining = coupled[cut:]
                xs = frozenset(
                    q for q in remaining if _coupling_letter(p, q) is PauliType.X
                )
                zs = frozenset(
                    q for q in remaining if _coupling_letter(p, q) is PauliType.Z
                )
                residual = PauliString(xs, zs)
                reduced = residual * stab
                if reduced.weight < residual.weight:
                    residual = reduced
                reports.append(
                    HookReport(
                        plaquette_id=p.center,
                        fault_step=slots[cut - 1] + parity * period,
                        residual=residual,
                        orientation=_classify(sorted(residual.support)),
                    )
                )
    return reports
