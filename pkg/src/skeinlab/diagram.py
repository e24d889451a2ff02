"""Planar diagram (PD) codes.

Each crossing is a 4-tuple of arc labels listed clockwise, starting with an
arc of the over-strand.  Positions 0 and 2 are therefore the over-strand and
positions 1 and 3 the under-strand.  The A-smoothing joins positions 0-1 and
2-3, the B-smoothing joins 0-3 and 1-2.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .laurent import LaurentPoly

Crossing = tuple[int, int, int, int]

A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))


class DiagramError(ValueError):
    """Invalid PD input or a broken contract."""


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[Crossing, ...] = ()
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(a) for a in c) for c in self.crossings))
        if any(len(c) != 4 for c in self.crossings):
            raise DiagramError("every crossing needs exactly four arcs")
        if self.free_loops < 0:
            raise DiagramError("free_loops must be non-negative")

    def __len__(self) -> int:
        return len(self.crossings)

    def arcs(self) -> set[int]:
        return {a for c in self.crossings for a in c}

    def slots(self) -> dict[int, list[tuple[int, int]]]:
        """Map arc label -> list of (crossing index, position) occurrences."""
        out: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for i, c in enumerate(self.crossings):
            for p, a in enumerate(c):
                out[a].append((i, p))
        return out

    def boundary(self) -> list[int]:
        """Arcs used exactly once (non-empty only for tangle fragments)."""
        return sorted(a for a, s in self.slots().items() if len(s) == 1)

    def to_json(self) -> dict:
        return {"crossings": [list(c) for c in self.crossings], "free_loops": self.free_loops}

    def to_text(self) -> str:
        lines = [f"X {a} {b} {c} {d}" for a, b, c, d in self.crossings]
        if self.free_loops:
            lines.append(f"O {self.free_loops}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class OrientedDiagram:
    """A PD plus, per crossing, the positions of the incoming over arc (0 or 2)
    and the incoming under arc (1 or 3)."""

    pd: PlanarDiagram
    in_over: tuple[int, ...]
    in_under: tuple[int, ...]
    components: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.pd.crossings)
        if len(self.in_over) != n or len(self.in_under) != n:
            raise DiagramError("orientation flags must match the crossing count")
        if any(p not in (0, 2) for p in self.in_over) or any(p not in (1, 3) for p in self.in_under):
            raise DiagramError("in_over must be 0/2 and in_under 1/3")

    @property
    def crossings(self):
        return self.pd.crossings

    def signs(self) -> tuple[int, ...]:
        return tuple(crossing_sign(o, u) for o, u in zip(self.in_over, self.in_under))

    def to_json(self) -> dict:
        d = self.pd.to_json()
        d["orientation"] = [[o, u] for o, u in zip(self.in_over, self.in_under)]
        return d


def crossing_sign(in_over: int, in_under: int) -> int:
    """Sign of an oriented crossing.

    Travelling in from position ``k`` (0 top, 1 right, 2 bottom, 3 left) points
    at angle ``270 - 90k``.  The crossing is positive when turning the incoming
    under direction 90 degrees counterclockwise gives the incoming over
    direction, i.e. when ``in_over == in_under - 1 (mod 4)``.
    """
    return 1 if (in_under - in_over) % 4 == 1 else -1


# validation ---------------------------------------------------------------

def validate(pd: PlanarDiagram, boundary: Iterable[int] = ()) -> list[str]:
    """Return a list of violations; empty means valid.

    Declared ``boundary`` arcs must occur exactly once, all others twice.
    """
    problems = []
    bset = set(boundary)
    for a, s in sorted(pd.slots().items()):
        want = 1 if a in bset else 2
        if len(s) != want:
            problems.append(f"arc {a} occurs {len(s)} times (expected {want})")
        if a < 0:
            problems.append(f"arc {a} is negative")
    missing = bset - pd.arcs()
    for a in sorted(missing):
        problems.append(f"boundary arc {a} does not occur")
    for i, c in enumerate(pd.crossings):
        if c[0] == c[2] and c[1] == c[3]:
            problems.append(f"crossing {i} has both strands closing on themselves")
    return problems


def require_valid(pd: PlanarDiagram) -> None:
    problems = validate(pd)
    if problems:
        raise DiagramError("; ".join(problems))


# tracing ------------------------------------------------------------------

def _normalize_state(state: Sequence, n: int) -> list[bool]:
    """True means A-smoothing."""
    if len(state) != n:
        raise DiagramError(f"state length {len(state)} != crossing count {n}")
    out = []
    for s in state:
        if s in ("A", "a", True, 1):
            out.append(True)
        elif s in ("B", "b", False, 0):
            out.append(False)
        else:
            raise DiagramError(f"bad smoothing choice {s!r}")
    return out


def count_loops(pd: PlanarDiagram, state: Sequence) -> int:
    """Number of circles after smoothing every crossing (plus free loops)."""
    flags = _normalize_state(state, len(pd.crossings))
    slots = pd.slots()
    if any(len(s) != 2 for s in slots.values()):
        raise DiagramError("count_loops needs a closed diagram")
    parent: dict[int, int] = {a: a for a in slots}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c, a_choice in zip(pd.crossings, flags):
        for p, q in (A_PAIRS if a_choice else B_PAIRS):
            ra, rb = find(c[p]), find(c[q])
            if ra != rb:
                parent[ra] = rb
    return len({find(a) for a in slots}) + pd.free_loops


def trace_components(pd: PlanarDiagram) -> list[list[tuple[int, int]]]:
    """Components as lists of (crossing, entry position) steps.

    A strand entering at position p leaves at p+2.  Each component starts at
    its lowest arc label, heading into that arc's first slot in crossing order.
    """
    slots = pd.slots()
    seen_arcs: set[int] = set()
    comps = []
    for start in sorted(slots):
        if start in seen_arcs:
            continue
        steps = []
        arc = start
        ci, p = min(slots[arc])
        while True:
            seen_arcs.add(arc)
            steps.append((ci, p))
            out_p = (p + 2) % 4
            arc = pd.crossings[ci][out_p]
            occ = slots[arc]
            if len(occ) != 2:
                raise DiagramError(f"arc {arc} is not closed")
            nxt = occ[0] if occ[1] == (ci, out_p) else occ[1]
            if nxt == steps[0]:
                break
            ci, p = nxt
        comps.append(steps)
    return comps


def component_count(pd: PlanarDiagram) -> int:
    return len(trace_components(pd)) + pd.free_loops


def component_of(pd: PlanarDiagram) -> dict[int, int]:
    """Arc label -> component index (following :func:`trace_components`)."""
    out = {}
    for k, steps in enumerate(trace_components(pd)):
        for ci, p in steps:
            out[pd.crossings[ci][p]] = k
    return out


# structure ----------------------------------------------------------------

def split_disjoint(pd: PlanarDiagram) -> list[PlanarDiagram]:
    """Split into pieces connected through shared arcs; each free loop is its
    own unit (an empty diagram with ``free_loops=1``)."""
    n = len(pd.crossings)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for occ in pd.slots().values():
        for (i, _), (j, _) in zip(occ, occ[1:]):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    groups: dict[int, list[int]] = defaultdict(list)
    for i in range(n):
        groups[find(i)].append(i)
    pieces = [PlanarDiagram(tuple(pd.crossings[i] for i in idx)) for idx in
              sorted(groups.values(), key=min)]
    pieces.extend(PlanarDiagram((), 1) for _ in range(pd.free_loops))
    return pieces


def disjoint_union(*pds: PlanarDiagram) -> PlanarDiagram:
    crossings = []
    loops = 0
    offset = 0
    for pd in pds:
        arcs = pd.arcs()
        shift = offset - (min(arcs) if arcs else 0)
        crossings.extend(tuple(a + shift for a in c) for c in pd.crossings)
        offset += (max(arcs) - min(arcs) + 1) if arcs else 0
        loops += pd.free_loops
    return PlanarDiagram(tuple(crossings), loops)


def mirror(pd: PlanarDiagram) -> PlanarDiagram:
    """Swap over and under at every crossing (rotate each tuple by one)."""
    return PlanarDiagram(tuple((b, c, d, a) for a, b, c, d in pd.crossings), pd.free_loops)


def relabel(pd: PlanarDiagram, start: int = 1) -> PlanarDiagram:
    """Relabel arcs densely in order of first appearance."""
    mapping: dict[int, int] = {}
    for c in pd.crossings:
        for a in c:
            if a not in mapping:
                mapping[a] = start + len(mapping)
    return PlanarDiagram(tuple(tuple(mapping[a] for a in c) for c in pd.crossings), pd.free_loops)


def splice(crossings: Sequence[Crossing], removed: Iterable[int],
           joins: Iterable[tuple[int, int]]) -> tuple[list[Crossing], int, dict[int, int]]:
    """Delete crossings and reconnect their loose arc ends.

    ``joins`` lists pairs of arc labels that become one arc.  Returns the
    surviving crossings (relabelled), the number of circles closed off without
    any remaining crossing, and the label renaming applied.
    """
    removed = set(removed)
    keep = [c for i, c in enumerate(crossings) if i not in removed]
    alive: dict[int, int] = defaultdict(int)
    for c in keep:
        for a in c:
            alive[a] += 1
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in joins:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry
    classes: dict[int, list[int]] = defaultdict(list)
    for x in list(parent):
        classes[find(x)].append(x)
    rename: dict[int, int] = {}
    loops = 0
    for members in classes.values():
        live = [x for x in members if alive[x]]
        if not live:
            loops += 1
            continue
        target = min(live)
        for x in members:
            rename[x] = target
    out = [tuple(rename.get(a, a) for a in c) for c in keep]
    return out, loops, rename


def _kink_factor(pos: tuple[int, int]) -> LaurentPoly:
    # a curl closed across an A-corner gives A*delta + A^-1 = -A^3
    p = tuple(sorted(pos))
    if p in ((0, 1), (2, 3)):
        return LaurentPoly({6: -1})
    return LaurentPoly({-6: -1})


def find_r1(pd: PlanarDiagram) -> tuple[int, tuple[int, int]] | None:
    for i, c in enumerate(pd.crossings):
        for p in range(4):
            q = (p + 1) % 4
            if c[p] == c[q]:
                return i, (p, q)
    return None


def find_r2(pd: PlanarDiagram) -> tuple[int, int, int, int, int, int] | None:
    """Find a bigon whose strands pass over-over and under-under.

    Returns (i, pi_over, pi_under, j, pj_over, pj_under): arc ``c_i[pi_over] ==
    c_j[pj_over]`` is the shared over arc, similarly for under.
    """
    slots = pd.slots()
    cr = pd.crossings
    for i, c in enumerate(cr):
        for po in (0, 2):
            a = c[po]
            occ = slots[a]
            if len(occ) != 2:
                continue
            (j, qo) = occ[0] if occ[1] == (i, po) else occ[1]
            if j == i or qo not in (0, 2):
                continue
            for pu in ((po + 1) % 4, (po - 1) % 4):
                b = c[pu]
                if b == a:
                    continue
                for (k, qu) in slots[b]:
                    if k != j or qu not in (1, 3):
                        continue
                    # bigon: the cyclic order at j must be the reverse of that at i
                    di = (pu - po) % 4
                    dj = (qu - qo) % 4
                    if di != dj and {di, dj} == {1, 3}:
                        return i, po, pu, j, qo, qu
    return None


def simplify(pd: PlanarDiagram) -> tuple[PlanarDiagram, LaurentPoly]:
    """Remove R1 curls and crossing-reducing R2 bigons.

    Returns the simplified diagram and the bracket multiplier, so that
    ``bracket(pd) == multiplier * bracket(simplified)``.
    """
    crossings = list(pd.crossings)
    loops = pd.free_loops
    mult = LaurentPoly.one()
    while True:
        cur = PlanarDiagram(tuple(crossings), loops)
        r1 = find_r1(cur)
        if r1 is not None:
            i, (p, q) = r1
            c = crossings[i]
            others = [c[k] for k in range(4) if k not in (p, q)]
            mult = mult * _kink_factor((p, q))
            crossings, new_loops, _ = splice(crossings, [i], [tuple(others)])
            loops += new_loops
            continue
        r2 = find_r2(cur)
        if r2 is not None:
            i, po, pu, j, qo, qu = r2
            ci, cj = crossings[i], crossings[j]
            over_join = (ci[(po + 2) % 4], cj[(qo + 2) % 4])
            under_join = (ci[(pu + 2) % 4], cj[(qu + 2) % 4])
            crossings, new_loops, _ = splice(crossings, [i, j], [over_join, under_join])
            loops += new_loops
            continue
        break
    return PlanarDiagram(tuple(crossings), loops), mult


# orientation --------------------------------------------------------------

def orient(pd: PlanarDiagram, component_directions: Sequence[bool] | None = None) -> OrientedDiagram:
    """Orient each traced component; ``False`` reverses that component.

    Components follow :func:`trace_components`; ``None`` means all forward.
    """
    comps = trace_components(pd)
    if component_directions is None:
        component_directions = [True] * len(comps)
    if len(component_directions) != len(comps):
        raise DiagramError(f"need {len(comps)} direction flags, got {len(component_directions)}")
    n = len(pd.crossings)
    in_over: list[int | None] = [None] * n
    in_under: list[int | None] = [None] * n
    comp_arcs = []
    for steps, fwd in zip(comps, component_directions):
        arcs = []
        for ci, p in steps:
            entry = p if fwd else (p + 2) % 4
            if p % 2 == 0:
                in_over[ci] = entry
            else:
                in_under[ci] = entry
            arcs.append(pd.crossings[ci][p])
        comp_arcs.append(tuple(arcs))
    return OrientedDiagram(pd, tuple(in_over), tuple(in_under), tuple(comp_arcs))


def writhe(d: OrientedDiagram) -> int:
    return sum(d.signs())


def oriented_mirror(d: OrientedDiagram) -> OrientedDiagram:
    """Mirror image keeping the orientation (each tuple rotated by one)."""
    pd = mirror(d.pd)
    in_over = tuple((u - 1) % 4 for u in d.in_under)
    in_under = tuple((o - 1) % 4 for o in d.in_over)
    return OrientedDiagram(pd, in_over, in_under, d.components)


# io -----------------------------------------------------------------------

def from_json(data: dict | str) -> PlanarDiagram | OrientedDiagram:
    """Parse the PD JSON format; returns an OrientedDiagram when an
    ``orientation`` block is present."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        pd = PlanarDiagram(tuple(tuple(c) for c in data.get("crossings", [])),
                           int(data.get("free_loops", 0)))
    except (TypeError, ValueError) as exc:
        raise DiagramError(f"malformed PD JSON: {exc}") from exc
    require_valid(pd)
    orient_block = data.get("orientation")
    if orient_block is None:
        return pd
    try:
        in_over = tuple(int(o) for o, _ in orient_block)
        in_under = tuple(int(u) for _, u in orient_block)
    except (TypeError, ValueError) as exc:
        raise DiagramError(f"malformed orientation block: {exc}") from exc
    d = OrientedDiagram(pd, in_over, in_under)
    check_orientation(d)
    return d


def check_orientation(d: OrientedDiagram) -> None:
    """Every arc must leave one crossing and enter another."""
    heads: dict[int, int] = defaultdict(int)
    tails: dict[int, int] = defaultdict(int)
    for c, o, u in zip(d.crossings, d.in_over, d.in_under):
        heads[c[o]] += 1
        heads[c[u]] += 1
        tails[c[(o + 2) % 4]] += 1
        tails[c[(u + 2) % 4]] += 1
    for a in d.pd.arcs():
        if heads[a] != 1 or tails[a] != 1:
            raise DiagramError(f"arc {a} is not consistently oriented")


def from_text(text: str) -> PlanarDiagram:
    crossings = []
    loops = 0
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "X" and len(parts) == 5:
            crossings.append(tuple(int(x) for x in parts[1:]))
        elif parts[0] == "O" and len(parts) == 2:
            loops += int(parts[1])
        else:
            raise DiagramError(f"bad PD line: {raw!r}")
    pd = PlanarDiagram(tuple(crossings), loops)
    require_valid(pd)
    return pd
