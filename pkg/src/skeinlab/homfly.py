"""HOMFLY-PT polynomial by skein-tree resolution, plus the Jones and
Alexander specialisations.

Convention: ``l P(L+) + l^-1 P(L-) + m P(L0) = 0`` and ``P(unknot) = 1``.
Crossing signs come from :func:`skeinlab.diagram.crossing_sign`.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .diagram import (
    DiagramError, OrientedDiagram, PlanarDiagram, check_orientation, crossing_sign, find_r1, find_r2,
    splice,
)
from .diagram import writhe as _writhe
from .laurent import LaurentPoly, LaurentPoly2, PolyError, poly_substitute

DEFAULT_CAP = 40

ONE2 = LaurentPoly2.one()
# delta_H = -(l + l^-1) / m
DELTA_H = LaurentPoly2({(1, -1): -1, (-1, -1): -1})

JONES_L = {-2: (0, 1)}             # l -> i q^-1
JONES_M = {-1: (0, 1), 1: (0, -1)}  # m -> i (q^-1/2 - q^1/2)
ALEX_L = {0: (0, 1)}               # l -> i
ALEX_M = {1: (0, 1), -1: (0, -1)}  # m -> i (t^1/2 - t^-1/2)


class CapExceeded(RuntimeError):
    """The diagram is larger than the configured crossing cap."""


@dataclass(frozen=True)
class _State:
    crossings: tuple[tuple[int, int, int, int], ...]
    in_over: tuple[int, ...]
    in_under: tuple[int, ...]
    loops: int


def _from_oriented(d: OrientedDiagram) -> _State:
    return _State(tuple(d.pd.crossings), tuple(d.in_over), tuple(d.in_under), d.pd.free_loops)


def _canonical(s: _State) -> _State:
    mapping: dict[int, int] = {}
    out = []
    for c in s.crossings:
        out.append(tuple(mapping.setdefault(a, len(mapping)) for a in c))
    return _State(tuple(out), s.in_over, s.in_under, s.loops)


def _drop(s: _State, removed: list[int], joins: list[tuple[int, int]]) -> _State:
    kept, loops, _ = splice(s.crossings, removed, joins)
    rm = set(removed)
    io = tuple(o for i, o in enumerate(s.in_over) if i not in rm)
    iu = tuple(u for i, u in enumerate(s.in_under) if i not in rm)
    return _State(tuple(kept), io, iu, s.loops + loops)


def _simplify(s: _State) -> _State:
    """R1 and R2 moves; both leave HOMFLY unchanged."""
    while s.crossings:
        pd = PlanarDiagram(s.crossings, 0)
        r1 = find_r1(pd)
        if r1 is not None:
            i, (p, q) = r1
            c = s.crossings[i]
            others = tuple(c[k] for k in range(4) if k not in (p, q))
            s = _drop(s, [i], [others])
            continue
        r2 = find_r2(pd)
        if r2 is not None:
            i, po, pu, j, qo, qu = r2
            ci, cj = s.crossings[i], s.crossings[j]
            s = _drop(s, [i, j], [(ci[(po + 2) % 4], cj[(qo + 2) % 4]),
                                  (ci[(pu + 2) % 4], cj[(qu + 2) % 4])])
            continue
        break
    return s


def _split(s: _State) -> list[_State]:
    n = len(s.crossings)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    where: dict[int, int] = {}
    for i, c in enumerate(s.crossings):
        for a in c:
            if a in where:
                ra, rb = find(where[a]), find(i)
                if ra != rb:
                    parent[ra] = rb
            else:
                where[a] = i
    groups: dict[int, list[int]] = defaultdict(list)
    for i in range(n):
        groups[find(i)].append(i)
    parts = []
    for idx in groups.values():
        parts.append(_State(tuple(s.crossings[i] for i in idx), tuple(s.in_over[i] for i in idx),
                            tuple(s.in_under[i] for i in idx), 0))
    return parts


def _walk(s: _State) -> tuple[int, tuple[int, bool] | None]:
    """Traverse components (lowest arc label first, in order of that label);
    return the component count and the first crossing met first on its
    under strand, if any, as ``(index, True)``."""
    heads: dict[int, tuple[int, int]] = {}
    for i, (c, o, u) in enumerate(zip(s.crossings, s.in_over, s.in_under)):
        heads[c[o]] = (i, o)
        heads[c[u]] = (i, u)
    seen_arcs: set[int] = set()
    seen_cross: set[int] = set()
    bad = None
    comps = 0
    for start in sorted(heads):
        if start in seen_arcs:
            continue
        comps += 1
        a = start
        while a not in seen_arcs:
            seen_arcs.add(a)
            i, p = heads[a]
            if i not in seen_cross:
                seen_cross.add(i)
                if p % 2 == 1 and bad is None:
                    bad = (i, True)
            a = s.crossings[i][(p + 2) % 4]
    return comps, bad


class _Engine:
    def __init__(self):
        self.memo: dict[_State, LaurentPoly2] = {}
        self.nodes = 0

    def eval(self, s: _State) -> LaurentPoly2:
        s = _simplify(s)
        loops = s.loops
        parts = _split(s) if s.crossings else []
        result = ONE2
        pieces = len(parts) + loops
        if pieces == 0:
            raise DiagramError("the empty diagram has no HOMFLY polynomial")
        for part in parts:
            result = result * self._connected(part)
        return result * DELTA_H ** (pieces - 1)

    def _connected(self, s: _State) -> LaurentPoly2:
        key = _canonical(s)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.nodes += 1
        comps, bad = _walk(s)
        if bad is None:
            value = DELTA_H ** (comps - 1)
        else:
            i = bad[0]
            po, pu = s.in_over[i], s.in_under[i]
            sign = crossing_sign(po, pu)
            c = s.crossings[i]
            sw = list(s.crossings)
            sw[i] = (c[1], c[2], c[3], c[0])
            io, iu = list(s.in_over), list(s.in_under)
            io[i], iu[i] = (pu - 1) % 4, (po - 1) % 4
            switched = _State(tuple(sw), tuple(io), tuple(iu), 0)
            smoothed = _drop(s, [i], [(c[po], c[(pu + 2) % 4]), (c[pu], c[(po + 2) % 4])])
            p_sw = self.eval(switched)
            p_sm = self.eval(smoothed)
            if sign > 0:
                # P+ = -l^-2 P- - l^-1 m P0
                value = p_sw.shift(-2, 0) * -1 + p_sm.shift(-1, 1) * -1
            else:
                # P- = -l^2 P+ - l m P0
                value = p_sw.shift(2, 0) * -1 + p_sm.shift(1, 1) * -1
        self.memo[key] = value
        return value


def homfly(d: OrientedDiagram, cap: int | None = DEFAULT_CAP) -> LaurentPoly2:
    """HOMFLY-PT polynomial of an oriented diagram."""
    return homfly_with_stats(d, cap)[0]


def homfly_with_stats(d: OrientedDiagram, cap: int | None = DEFAULT_CAP) -> tuple[LaurentPoly2, int]:
    """HOMFLY-PT polynomial and the number of distinct skein-tree nodes evaluated."""
    check_orientation(d)
    n = len(d.pd.crossings)
    if cap is not None and n > cap:
        raise CapExceeded(f"{n} crossings exceeds the HOMFLY cap of {cap} (0 tree nodes evaluated)")
    engine = _Engine()
    return engine.eval(_from_oriented(d)), engine.nodes


def jones(p: LaurentPoly2) -> LaurentPoly:
    """Jones polynomial in ``q`` via l -> i q^-1, m -> i (q^-1/2 - q^1/2)."""
    try:
        return poly_substitute(p, JONES_L, JONES_M, var="q")
    except PolyError as exc:
        raise PolyError(f"Jones substitution left an imaginary residue: {exc}") from exc


def alexander(p: LaurentPoly2) -> LaurentPoly:
    """Alexander-Conway polynomial in ``t`` via l -> i, m -> i (t^1/2 - t^-1/2)."""
    try:
        return poly_substitute(p, ALEX_L, ALEX_M, var="t")
    except PolyError as exc:
        raise PolyError(f"Alexander substitution left an imaginary residue: {exc}") from exc


def writhe(d: OrientedDiagram) -> int:
    return _writhe(d)


def switch_crossing(d: OrientedDiagram, i: int) -> OrientedDiagram:
    """Change crossing ``i`` from over to under, keeping orientations."""
    c = d.pd.crossings[i]
    cr = list(d.pd.crossings)
    cr[i] = (c[1], c[2], c[3], c[0])
    io, iu = list(d.in_over), list(d.in_under)
    io[i], iu[i] = (d.in_under[i] - 1) % 4, (d.in_over[i] - 1) % 4
    return OrientedDiagram(PlanarDiagram(tuple(cr), d.pd.free_loops), tuple(io), tuple(iu))


def smooth_crossing(d: OrientedDiagram, i: int) -> OrientedDiagram:
    """Oriented smoothing of crossing ``i``."""
    s = _from_oriented(d)
    po, pu = s.in_over[i], s.in_under[i]
    c = s.crossings[i]
    t = _drop(s, [i], [(c[po], c[(pu + 2) % 4]), (c[pu], c[(po + 2) % 4])])
    return OrientedDiagram(PlanarDiagram(t.crossings, t.loops), t.in_over, t.in_under)
