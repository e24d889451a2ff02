"""Kauffman bracket: the plain state sum and the term-gathering tangle method.

Internally coefficients are plain ``{half_exponent: int}`` dicts in the
variable A; public results are :class:`LaurentPoly`.
"""

from __future__ import annotations

import itertools
import os
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .diagram import A_PAIRS, B_PAIRS, DiagramError, PlanarDiagram, require_valid, validate
from .laurent import LaurentPoly

DEFAULT_NAIVE_CAP = 24
DEBUG_CHECKS = os.environ.get("SKEIN_DEBUG", "") not in ("", "0")

DELTA = LaurentPoly({4: -1, -4: -1})  # -A^2 - A^-2

Matching = tuple[tuple[int, int], ...]


class CapExceeded(RuntimeError):
    """The requested evaluation is larger than the configured cap."""


# small dict-polynomial helpers ----------------------------------------------

def _padd_into(acc: dict, p: Mapping, shift: int = 0) -> None:
    for e, c in p.items():
        k = e + shift
        v = acc.get(k, 0) + c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def _pmul(p: Mapping, q: Mapping) -> dict:
    out: dict[int, int] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            k = e1 + e2
            out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _delta_pow(n: int) -> tuple:
    p = {0: 1}
    for _ in range(n):
        p = _pmul(p, {4: -1, -4: -1})
    return tuple(sorted(p.items()))


def _times_delta(p: Mapping, n: int) -> dict:
    if n == 0:
        return dict(p)
    return _pmul(p, dict(_delta_pow(n)))


# Catalan numbers ------------------------------------------------------------

@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    """Catalan number via the convolution recursion."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    return sum(catalan(k) * catalan(n - 1 - k) for k in range(n))


def catalan_closed(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def region_worth(k_crossings: int, n_strands: int) -> bool:
    """True when resolving ``k`` crossings (2^k states) is worse than the
    Catalan bound on the number of distinct boundary pairings."""
    if n_strands < 0:
        raise ValueError("n_strands must be non-negative")
    return 2 ** k_crossings > catalan(n_strands)


# naive state sum --------------------------------------------------------------

def bracket_naive(pd: PlanarDiagram, cap: int = DEFAULT_NAIVE_CAP) -> LaurentPoly:
    """Sum over all 2^c smoothings of ``A^(#A-#B) * delta^(loops-1)``."""
    require_valid(pd)
    n = len(pd.crossings)
    if n > cap:
        raise CapExceeded(f"{n} crossings exceeds the naive cap of {cap}; use bracket_gathered")
    if n == 0:
        if pd.free_loops == 0:
            raise DiagramError("the empty diagram has no bracket")
        return LaurentPoly(dict(_delta_pow(pd.free_loops - 1)))
    labels = sorted(pd.arcs())
    index = {a: i for i, a in enumerate(labels)}
    cr = [tuple(index[a] for a in c) for c in pd.crossings]
    m = len(labels)
    loop_hist: dict[tuple[int, int], int] = defaultdict(int)
    for bits in range(1 << n):
        parent = list(range(m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        n_a = 0
        comps = m
        for i, c in enumerate(cr):
            if bits >> i & 1:
                pairs = B_PAIRS
            else:
                pairs = A_PAIRS
                n_a += 1
            for p, q in pairs:
                ra, rb = find(c[p]), find(c[q])
                if ra != rb:
                    parent[ra] = rb
                    comps -= 1
        loop_hist[(n_a - (n - n_a), comps + pd.free_loops)] += 1
    total: dict[int, int] = {}
    for (a_exp, loops), count in loop_hist.items():
        _padd_into(total, {k: v * count for k, v in _delta_pow(loops - 1)}, 2 * a_exp)
    return LaurentPoly(total)


# tangles ------------------------------------------------------------------------

def _norm_pairs(pairs: Iterable[tuple[int, int]]) -> Matching:
    return tuple(sorted((min(a, b), max(a, b)) for a, b in pairs))


def is_noncrossing(matching: Matching, order: Sequence[int]) -> bool:
    pos = {a: i for i, a in enumerate(order)}
    iv = sorted((min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in matching)
    for (a, b), (c, d) in itertools.combinations(iv, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


@dataclass
class Tangle:
    """Weighted sum of boundary pairings.

    ``boundary`` lists the boundary arcs in cyclic order when that order is
    known (regions of a planar diagram); ``matchings`` maps a sorted tuple of
    pairs to a coefficient dict.
    """

    boundary: tuple[int, ...]
    matchings: dict = field(default_factory=dict)
    cyclic: bool = True

    def coefficients(self) -> dict[Matching, LaurentPoly]:
        return {k: LaurentPoly(v) for k, v in self.matchings.items()}

    def __len__(self) -> int:
        return len(self.matchings)

    def check_planar(self) -> None:
        if not self.cyclic:
            return
        bound = catalan(len(self.boundary) // 2)
        if len(self.matchings) > bound:
            raise AssertionError(f"{len(self.matchings)} matchings exceed Catalan bound {bound}")
        for key in self.matchings:
            if not is_noncrossing(key, self.boundary):
                raise AssertionError(f"matching {key} crosses in cyclic order {self.boundary}")


def boundary_cycle(pd: PlanarDiagram, region: Iterable[int]) -> tuple[int, ...]:
    """Cyclic order of the arcs leaving a set of crossings.

    Walks around the region: from a boundary slot step clockwise to the next
    slot of the same crossing; an internal arc is crossed to its other end.
    Raises DiagramError if the boundary is not a single simple cycle.
    """
    region = sorted(set(region))
    inside = set(region)
    occ: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for i in region:
        for p, a in enumerate(pd.crossings[i]):
            occ[a].append((i, p))
    bnd = {a for a, s in occ.items() if len(s) == 1}
    if not bnd:
        return ()
    start = min((s[0] for a, s in occ.items() if a in bnd))
    order = []
    ci, p = start
    guard = 0
    while True:
        a = pd.crossings[ci][p]
        if a in bnd:
            order.append(a)
            ci, p = ci, (p + 1) % 4
        else:
            s = occ[a]
            other = s[0] if s[1] == (ci, p) else s[1]
            ci, p = other[0], (other[1] + 1) % 4
        if (ci, p) == start:
            break
        guard += 1
        if guard > 8 * len(region) + 8:
            raise DiagramError("region walk did not close")
    if len(order) != len(bnd) or len(set(order)) != len(order):
        raise DiagramError("region boundary is not a simple closed curve")
    del inside
    return tuple(order)


def single_crossing_tangle(c: Sequence[int]) -> Tangle:
    """Rule 2 applied to one crossing."""
    m: dict = {}
    for pairs, e in ((A_PAIRS, 2), (B_PAIRS, -2)):
        loops = 0
        matching = []
        for p, q in pairs:
            if c[p] == c[q]:
                loops += 1
            else:
                matching.append((c[p], c[q]))
        key = _norm_pairs(matching)
        _padd_into(m.setdefault(key, {}), _times_delta({e: 1}, loops))
    bnd = tuple(a for a in c if list(c).count(a) == 1)
    return Tangle(bnd, {k: v for k, v in m.items() if v}, cyclic=True)


def resolve_region(pd: PlanarDiagram, region: Iterable[int] | None = None,
                   check: bool | None = None) -> Tangle:
    """Enumerate the 2^k smoothings of a region and gather them by the
    boundary pairing they produce.  Internal loops are absorbed as powers of
    delta.  ``pd`` may itself be a tangle fragment (arcs used once)."""
    if region is None:
        region = range(len(pd.crossings))
    region = sorted(set(region))
    if any(i < 0 or i >= len(pd.crossings) for i in region):
        raise DiagramError("region refers to a missing crossing")
    cyc = boundary_cycle(pd, region)
    crs = [pd.crossings[i] for i in region]
    labels = sorted({a for c in crs for a in c})
    index = {a: i for i, a in enumerate(labels)}
    bset = set(cyc)
    cr = [tuple(index[a] for a in c) for c in crs]
    m = len(labels)
    k = len(cr)
    bidx = [index[a] for a in cyc]
    hist: dict[tuple[Matching, int, int], int] = defaultdict(int)
    for bits in range(1 << k):
        parent = list(range(m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        n_a = 0
        for i, c in enumerate(cr):
            if bits >> i & 1:
                pairs = B_PAIRS
            else:
                pairs = A_PAIRS
                n_a += 1
            for p, q in pairs:
                ra, rb = find(c[p]), find(c[q])
                if ra != rb:
                    parent[ra] = rb
        groups: dict[int, list[int]] = defaultdict(list)
        for b in bidx:
            groups[find(b)].append(labels[b])
        roots_with_boundary = set(groups)
        closed = len({find(x) for x in range(m)} - roots_with_boundary)
        key = _norm_pairs(tuple(g) for g in groups.values())
        hist[(key, 2 * n_a - k, closed)] += 1
    out: dict = {}
    for (key, a_exp, closed), count in hist.items():
        poly = {kk: v * count for kk, v in _times_delta({2 * a_exp: 1}, closed).items()}
        _padd_into(out.setdefault(key, {}), poly)
    tangle = Tangle(cyc, {kk: v for kk, v in out.items() if v}, cyclic=True)
    if DEBUG_CHECKS if check is None else check:
        tangle.check_planar()
    del bset
    return tangle


def compose(t1: Tangle, t2: Tangle) -> Tangle:
    """Glue two tangles along their shared boundary arcs."""
    shared = set(t1.boundary) & set(t2.boundary)
    outer = [a for a in t1.boundary if a not in shared] + [a for a in t2.boundary if a not in shared]
    out: dict = {}
    for m1, c1 in t1.matchings.items():
        p1 = {}
        for a, b in m1:
            p1[a] = b
            p1[b] = a
        for m2, c2 in t2.matchings.items():
            p2 = {}
            for a, b in m2:
                p2[a] = b
                p2[b] = a
            used = set()
            pairs = []
            for x in outer:
                if x in used:
                    continue
                used.add(x)
                side = p1 if x in p1 else p2
                y = side[x]
                while y in shared:
                    used.add(y)
                    side = p2 if side is p1 else p1
                    y = side[y]
                used.add(y)
                pairs.append((x, y))
            loops = 0
            for s in shared:
                if s in used:
                    continue
                loops += 1
                y = s
                while y not in used:
                    used.add(y)
                    y = p1[y]
                    used.add(y)
                    y = p2[y]
            key = _norm_pairs(pairs)
            coeff = _pmul(c1, c2)
            if loops:
                coeff = _times_delta(coeff, loops)
            _padd_into(out.setdefault(key, {}), coeff)
    return Tangle(tuple(outer), {k: v for k, v in out.items() if v}, cyclic=False)


# region planning --------------------------------------------------------------

@dataclass
class RegionPlan:
    regions: list[list[int]]

    def validate_for(self, pd: PlanarDiagram) -> None:
        flat = [i for r in self.regions for i in r]
        if sorted(flat) != list(range(len(pd.crossings))):
            raise DiagramError("plan does not partition the crossings")
        if any(not r for r in self.regions):
            raise DiagramError("plan contains an empty region")

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.regions]


def _region_boundary(pd: PlanarDiagram, region: set[int]) -> int:
    count: dict[int, int] = defaultdict(int)
    for i in region:
        for a in pd.crossings[i]:
            count[a] += 1
    return sum(1 for v in count.values() if v == 1)


def plan_regions(pd: PlanarDiagram, max_region: int = 10) -> RegionPlan:
    """Greedy region growth along shared arcs.

    A region keeps absorbing the neighbouring crossing that leaves the
    smallest boundary.  It closes once gathering pays off (``region_worth``)
    and the next step would enlarge the boundary, or at ``max_region``.
    Regions whose boundary is not a simple cycle are split into single
    crossings, which always works.
    """
    n = len(pd.crossings)
    slots = pd.slots()
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for occ in slots.values():
        for (i, _), (j, _) in itertools.combinations(occ, 2):
            if i != j:
                nbrs[i].add(j)
                nbrs[j].add(i)
    unassigned = set(range(n))
    regions: list[list[int]] = []
    while unassigned:
        # seed next to the previous regions to keep the accumulated boundary small
        seed = None
        if regions:
            touching = [i for i in sorted(unassigned) if nbrs[i] & set(regions[-1])]
            if touching:
                seed = touching[0]
            else:
                done = set(range(n)) - unassigned
                touching = [i for i in sorted(unassigned) if nbrs[i] & done]
                seed = touching[0] if touching else None
        if seed is None:
            seed = min(unassigned)
        region = {seed}
        while len(region) < max_region:
            cands = set().union(*(nbrs[i] for i in region)) & unassigned - region
            if not cands:
                break
            cur = _region_boundary(pd, region)
            scored = sorted((_region_boundary(pd, region | {c}), c) for c in cands)
            best_b, best = scored[0]
            if best_b > cur and region_worth(len(region), cur // 2):
                break
            region.add(best)
        try:
            boundary_cycle(pd, region)
            regions.append(sorted(region))
        except DiagramError:
            regions.extend([i] for i in sorted(region))
        unassigned -= region
    return RegionPlan(regions)


def bracket_gathered(pd: PlanarDiagram, plan: RegionPlan | Sequence[Sequence[int]] | str | None = "auto",
                     check: bool | None = None) -> LaurentPoly:
    """Contract region tangles one at a time, gathering equal pairings."""
    require_valid(pd)
    if not pd.crossings:
        if pd.free_loops == 0:
            raise DiagramError("the empty diagram has no bracket")
        return LaurentPoly(dict(_delta_pow(pd.free_loops - 1)))
    if plan is None or plan == "auto":
        plan = plan_regions(pd)
    elif not isinstance(plan, RegionPlan):
        plan = RegionPlan([list(r) for r in plan])
    plan.validate_for(pd)
    acc = Tangle((), {(): {0: 1}}, cyclic=False)
    for region in plan.regions:
        t = resolve_region(pd, region, check=check)
        acc = compose(acc, t)
    if acc.boundary:
        raise DiagramError("contraction left open boundary arcs")
    total = acc.matchings.get((), {})
    total = _times_delta(total, pd.free_loops)
    return LaurentPoly(total).divexact(DELTA)


def bracket(pd: PlanarDiagram, method: str = "auto", plan=None) -> LaurentPoly:
    """Dispatch on ``method``: ``naive``, ``gathered`` or ``auto``."""
    if method == "naive":
        return bracket_naive(pd)
    if method == "gathered":
        return bracket_gathered(pd, plan or "auto")
    if method == "auto":
        if len(pd.crossings) <= 12 and plan is None:
            return bracket_naive(pd)
        return bracket_gathered(pd, plan or "auto")
    raise ValueError(f"unknown method {method!r}")
