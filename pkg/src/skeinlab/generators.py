"""Planar diagrams for the Hopf and Brunnian link families.

Every family is assembled from a few crossing templates ("tiles") whose
boundary arcs are glued together.  Gluing identifies two arc labels; a tile
boundary that is glued to another boundary of the same tile is a cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .diagram import DiagramError, OrientedDiagram, PlanarDiagram, orient, relabel, require_valid

# Hopf clasp: boundary 1 (upper right), 3 (lower right) on the right circle,
# 2 (upper left), 4 (lower left) on the left circle.
HOPF_CLASP = ((1, 5, 6, 2), (5, 3, 4, 6))

# Double Hopf junction.  Left side top to bottom 1,2,3,4 (outer 1-4, inner
# 2-3); right side top to bottom 5,6,7,8 (outer 5-8, inner 6-7).
DBL_HOPF_JUNCTION = (
    (9, 11, 1, 5), (13, 12, 9, 6), (10, 16, 2, 11), (14, 15, 10, 12),
    (17, 20, 15, 14), (7, 19, 17, 13), (18, 3, 16, 20), (8, 4, 18, 19),
)

# Brunnian junction.  Left side: hooks 1-2 (top) and 3-4 (bottom); right
# side: a band with outer strand 5-8 and inner strand 6-7.
BRUNNIAN_JUNCTION = (
    (5, 15, 9, 1), (6, 11, 10, 15), (19, 16, 2, 9), (11, 17, 19, 10),
    (20, 14, 3, 16), (12, 13, 20, 17), (7, 18, 13, 12), (8, 4, 14, 18),
)

# End tiles of a Brunnian chain: the junction with the top hook removed
# (left end) and with the inner band strand removed (right end).
BRUNNIAN_LEFT_END = ((20, 14, 3, 5), (12, 13, 20, 6), (7, 18, 13, 12), (8, 4, 14, 18))
BRUNNIAN_RIGHT_END = ((5, 15, 9, 1), (15, 16, 2, 9), (20, 14, 3, 16), (8, 4, 14, 20))


FAMILIES = (
    "hopf_chain", "hopf_ring", "dbl_hopf_chain", "dbl_hopf_half_ring", "dbl_hopf_ring",
    "brunnian_chain", "brunnian_chain_dblleft", "brunnian_chain_dblends", "brunnian_ring",
    "brunnian_half_ring_plus", "brunnian_half_ring_minus", "borromean",
    "l2_hopf_chain", "l2_hopf_ring",
)

# Brunnian resolution matchings used as crossingless slots in half rings.
HALF_RING_SLOTS = {
    "plus": ((1, 5), (2, 3), (4, 6), (7, 8)),
    "minus": ((1, 7), (2, 3), (4, 8), (5, 6)),
}


class ParameterError(ValueError):
    """Family size outside its allowed range."""


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int | None = None
    sizes: tuple[int, ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}")

    def label(self) -> str:
        if self.sizes:
            return f"{self.family}[{','.join(map(str, self.sizes))}]"
        if self.n is None:
            return self.family
        return f"{self.family}({self.n})"


class _Builder:
    """Collects tile copies and boundary identifications."""

    def __init__(self):
        self.crossings: list[tuple] = []
        self.parent: dict = {}
        self.loops = 0
        self._tiles = 0

    def tile(self, template: Sequence[Sequence[int]]) -> int:
        t = self._tiles
        self._tiles += 1
        for c in template:
            self.crossings.append(tuple((t, a) for a in c))
            for a in c:
                self.parent.setdefault((t, a), (t, a))
        return t

    def _find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def glue(self, t1: int, a: int, t2: int, b: int) -> None:
        ra, rb = self._find((t1, a)), self._find((t2, b))
        if ra == rb:
            raise DiagramError("gluing would close an arc on itself")
        self.parent[ra] = rb

    def build(self) -> PlanarDiagram:
        names: dict = {}
        out = []
        for c in self.crossings:
            row = []
            for x in c:
                r = self._find(x)
                row.append(names.setdefault(r, len(names) + 1))
            out.append(tuple(row))
        pd = PlanarDiagram(tuple(out), self.loops)
        require_valid(pd)
        return relabel(pd)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterError(msg)


# Hopf families --------------------------------------------------------------

def hopf_chain(n: int) -> PlanarDiagram:
    """``n`` circles, consecutive ones Hopf linked; ``2(n-1)`` crossings."""
    _need(n >= 1, "hopf_chain needs n >= 1")
    if n == 1:
        return PlanarDiagram((), 1)
    b = _Builder()
    ts = [b.tile(HOPF_CLASP) for _ in range(n - 1)]
    for t, u in zip(ts, ts[1:]):
        b.glue(t, 1, u, 2)
        b.glue(t, 3, u, 4)
    b.glue(ts[0], 2, ts[0], 4)
    b.glue(ts[-1], 1, ts[-1], 3)
    return b.build()


def hopf_ring(n: int) -> PlanarDiagram:
    """``n`` Hopf clasps closed up cyclically.  ``n = 1`` is a single circle
    clasped to itself."""
    _need(n >= 1, "hopf_ring needs n >= 1")
    b = _Builder()
    ts = [b.tile(HOPF_CLASP) for _ in range(n)]
    for k, t in enumerate(ts):
        u = ts[(k + 1) % n]
        b.glue(t, 1, u, 2)
        b.glue(t, 3, u, 4)
    return b.build()


# double Hopf families ---------------------------------------------------------

def _dbl_link(b: _Builder, t: int, u: int) -> None:
    for r, l in zip((5, 6, 7, 8), (1, 2, 3, 4)):
        b.glue(t, r, u, l)


def dbl_hopf_chain(n2: int) -> PlanarDiagram:
    """Pairs of concentric circles linked by double Hopf junctions; ``n2``
    (even) counts circles."""
    _need(n2 >= 2 and n2 % 2 == 0, "dbl_hopf_chain needs an even count >= 2")
    if n2 == 2:
        return PlanarDiagram((), 2)
    b = _Builder()
    ts = [b.tile(DBL_HOPF_JUNCTION) for _ in range(n2 // 2 - 1)]
    for t, u in zip(ts, ts[1:]):
        _dbl_link(b, t, u)
    b.glue(ts[0], 1, ts[0], 4)
    b.glue(ts[0], 2, ts[0], 3)
    b.glue(ts[-1], 5, ts[-1], 8)
    b.glue(ts[-1], 6, ts[-1], 7)
    return b.build()


def dbl_hopf_ring(n2: int) -> PlanarDiagram:
    _need(n2 >= 2 and n2 % 2 == 0, "dbl_hopf_ring needs an even count >= 2")
    b = _Builder()
    ts = [b.tile(DBL_HOPF_JUNCTION) for _ in range(n2 // 2)]
    for k, t in enumerate(ts):
        _dbl_link(b, t, ts[(k + 1) % len(ts)])
    return b.build()


def dbl_hopf_half_ring(n21: int) -> PlanarDiagram:
    """A double Hopf ring in which one junction has been replaced by the
    merging of the two adjacent circle pairs into a single circle."""
    _need(n21 >= 3 and n21 % 2 == 1, "dbl_hopf_half_ring needs an odd count >= 3")
    b = _Builder()
    ts = [b.tile(DBL_HOPF_JUNCTION) for _ in range((n21 - 1) // 2)]
    for t, u in zip(ts, ts[1:]):
        _dbl_link(b, t, u)
    first, last = ts[0], ts[-1]
    b.glue(last, 5, first, 1)
    b.glue(last, 6, last, 7)
    b.glue(last, 8, first, 4)
    b.glue(first, 2, first, 3)
    return b.build()


# Brunnian families ---------------------------------------------------------------

def _br_chain(b: _Builder, n_mid: int, left: str, right: str) -> None:
    ts = []
    if left == "tile":
        ts.append(b.tile(BRUNNIAN_LEFT_END))
    ts.extend(b.tile(BRUNNIAN_JUNCTION) for _ in range(n_mid))
    if right == "tile":
        ts.append(b.tile(BRUNNIAN_RIGHT_END))
    for t, u in zip(ts, ts[1:]):
        _dbl_link(b, t, u)
    first, last = ts[0], ts[-1]
    if left == "tile":
        b.glue(first, 3, first, 4)
    else:
        b.glue(first, 1, first, 2)
        b.glue(first, 3, first, 4)
    if right == "tile":
        b.glue(last, 5, last, 8)
    else:
        b.glue(last, 5, last, 8)
        b.glue(last, 6, last, 7)


def brunnian_chain(n: int) -> PlanarDiagram:
    """Brunnian chain of ``n`` components (``8n - 16`` crossings for n >= 3)."""
    _need(n >= 2, "brunnian_chain needs n >= 2")
    if n == 2:
        return hopf_chain(2)
    b = _Builder()
    _br_chain(b, n - 3, "tile", "tile")
    return b.build()


def brunnian_chain_dblleft(n: int) -> PlanarDiagram:
    """Brunnian chain whose left end is a pair of rings."""
    _need(n >= 3, "brunnian_chain_dblleft needs n >= 3")
    b = _Builder()
    _br_chain(b, n - 3, "caps", "tile")
    return b.build()


def brunnian_chain_dblends(n: int) -> PlanarDiagram:
    """Brunnian chain with both ends doubled."""
    _need(n >= 4, "brunnian_chain_dblends needs n >= 4")
    b = _Builder()
    _br_chain(b, n - 3, "caps", "caps")
    return b.build()


def brunnian_ring(n: int) -> PlanarDiagram:
    """``n`` Brunnian junctions closed into a ring (``8n`` crossings)."""
    _need(n >= 2, "brunnian_ring needs n >= 2")
    b = _Builder()
    ts = [b.tile(BRUNNIAN_JUNCTION) for _ in range(n)]
    for k, t in enumerate(ts):
        _dbl_link(b, t, ts[(k + 1) % n])
    return b.build()


def brunnian_half_ring(n: int, polarity: str) -> PlanarDiagram:
    """A Brunnian ring of ``n - 1`` components with one junction resolved
    into a crossingless slot of the given polarity."""
    _need(n >= 3, "brunnian half rings need n >= 3")
    if polarity not in HALF_RING_SLOTS:
        raise ParameterError("polarity must be 'plus' or 'minus'")
    b = _Builder()
    ts = [b.tile(BRUNNIAN_JUNCTION) for _ in range(n - 2)]
    for t, u in zip(ts, ts[1:]):
        _dbl_link(b, t, u)
    first, last = ts[0], ts[-1]
    # slot label k in 1..4 faces the previous junction's right side (k+4);
    # slot label k in 5..8 faces the next junction's left side (k-4)
    ends = {k: (last, k + 4) for k in (1, 2, 3, 4)}
    ends.update({k: (first, k - 4) for k in (5, 6, 7, 8)})
    for x, y in HALF_RING_SLOTS[polarity]:
        (t1, a1), (t2, a2) = ends[x], ends[y]
        b.glue(t1, a1, t2, a2)
    return b.build()


def braid_closure(word: Sequence[int], strands: int) -> PlanarDiagram:
    """Closure of a braid drawn bottom to top.  Generator ``k`` crosses
    strands ``k`` and ``k+1`` with the strand from the lower left on top;
    ``-k`` is its inverse."""
    _need(strands >= 1, "a braid needs at least one strand")
    if any(w == 0 or abs(w) >= strands for w in word):
        raise ParameterError("braid generator out of range")
    current = list(range(1, strands + 1))
    start = list(current)
    nxt = strands + 1
    crossings = []
    for w in word:
        k = abs(w) - 1
        a, b = current[k], current[k + 1]
        c, d = nxt, nxt + 1
        nxt += 2
        crossings.append((a, c, d, b) if w > 0 else (b, a, c, d))
        current[k], current[k + 1] = c, d
    rename = dict(zip(current, start))
    crossings = [tuple(rename.get(x, x) for x in cr) for cr in crossings]
    loops = sum(1 for x, y in zip(current, start) if x == y)
    pd = PlanarDiagram(tuple(crossings), loops)
    require_valid(pd)
    return relabel(pd)


def borromean() -> PlanarDiagram:
    """The alternating 6-crossing diagram, as the closure of (s1 s2^-1)^3."""
    return braid_closure((1, -2) * 3, 3)


# level two Hopf families ------------------------------------------------------

def _flip(template):
    """Reflect a clasp top to bottom (upper and lower ends swap)."""
    swap = {1: 3, 3: 1, 2: 4, 4: 2}
    return tuple(tuple(swap.get(x, x) for x in (a, d, c, b)) for a, b, c, d in template)


L2_CLASPS = {"same": HOPF_CLASP, "opposite": _flip(HOPF_CLASP)}


def _band(b: _Builder, left: tuple, right: tuple, n: int, clasp) -> None:
    """Run a two-strand band from ``left`` to ``right`` ports (upper, lower)
    with ``n`` Hopf clasps inserted."""
    (lu, ll), (ru, rl) = left, right
    for _ in range(n):
        c = b.tile(clasp)
        b.glue(*lu, c, 2)
        b.glue(*ll, c, 4)
        lu, ll = (c, 1), (c, 3)
    b.glue(*lu, *ru)
    b.glue(*ll, *rl)


def l2_hopf(sizes: Sequence[int], ring: bool, handedness: str = "opposite") -> PlanarDiagram:
    """Level two Hopf chain or ring: thick components are flattened Hopf
    rings (bands carrying ``n_j`` clasps), neighbouring bands meet in double
    Hopf junctions.  ``handedness`` picks the inner clasp relative to the
    junction chirality."""
    sizes = tuple(int(x) for x in sizes)
    _need(len(sizes) >= 1 and all(x >= 0 for x in sizes), "sizes must be a non-empty list of non-negative ints")
    if handedness not in L2_CLASPS:
        raise ParameterError("handedness must be 'same' or 'opposite'")
    clasp = L2_CLASPS[handedness]
    k = len(sizes)
    if k == 1:
        n = sizes[0]
        if n == 0:
            return PlanarDiagram((), 2)
        b = _Builder()
        ts = [b.tile(clasp) for _ in range(n)]
        for i, t in enumerate(ts):
            u = ts[(i + 1) % n]
            b.glue(t, 1, u, 2)
            b.glue(t, 3, u, 4)
        return b.build()
    b = _Builder()
    if ring:
        js = [b.tile(DBL_HOPF_JUNCTION) for _ in range(k)]
        for j in range(k):
            t, u = js[j], js[(j + 1) % k]
            _band(b, ((t, 5), (t, 6)), ((u, 1), (u, 2)), sizes[j], clasp)
            b.glue(t, 7, u, 3)
            b.glue(t, 8, u, 4)
        return b.build()
    js = [b.tile(DBL_HOPF_JUNCTION) for _ in range(k - 1)]
    first, last = js[0], js[-1]
    _band(b, ((first, 4), (first, 3)), ((first, 1), (first, 2)), sizes[0], clasp)
    for j in range(1, k - 1):
        t, u = js[j - 1], js[j]
        _band(b, ((t, 5), (t, 6)), ((u, 1), (u, 2)), sizes[j], clasp)
        b.glue(t, 7, u, 3)
        b.glue(t, 8, u, 4)
    _band(b, ((last, 5), (last, 6)), ((last, 8), (last, 7)), sizes[-1], clasp)
    return b.build()


def generate(spec: FamilySpec | str, n: int | None = None, sizes: Sequence[int] = (),
             handedness: str = "opposite") -> PlanarDiagram:
    """Build the diagram for a family specification.  ``handedness`` only
    affects the level two families."""
    if isinstance(spec, str):
        spec = FamilySpec(spec, n, tuple(sizes))
    f, n = spec.family, spec.n
    if f == "borromean":
        return borromean()
    if f in ("l2_hopf_chain", "l2_hopf_ring"):
        _need(bool(spec.sizes), f"{f} needs a size list")
        return l2_hopf(spec.sizes, ring=f == "l2_hopf_ring", handedness=handedness)
    _need(n is not None, f"{f} needs a size n")
    if f == "brunnian_half_ring_plus":
        return brunnian_half_ring(n, "plus")
    if f == "brunnian_half_ring_minus":
        return brunnian_half_ring(n, "minus")
    return _SIMPLE[f](n)


_SIMPLE = {
    "hopf_chain": hopf_chain,
    "hopf_ring": hopf_ring,
    "dbl_hopf_chain": dbl_hopf_chain,
    "dbl_hopf_half_ring": dbl_hopf_half_ring,
    "dbl_hopf_ring": dbl_hopf_ring,
    "brunnian_chain": brunnian_chain,
    "brunnian_chain_dblleft": brunnian_chain_dblleft,
    "brunnian_chain_dblends": brunnian_chain_dblends,
    "brunnian_ring": brunnian_ring,
}


def generate_oriented(spec: FamilySpec | str, n: int | None = None, sizes: Sequence[int] = (),
                      directions: Sequence[bool] | None = None) -> OrientedDiagram:
    pd = generate(spec, n, sizes)
    return orient(pd, directions)
