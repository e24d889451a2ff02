"""Link graphs and the disconnection category.

A link graph is an edge-coloured multigraph.  Colours are components, edges
are double strands and vertices are the places where strands end or hook onto
each other.  Unlinking is decided by saturating the morphism rules of the
disconnection category rather than materialising it.
"""

from __future__ import annotations

import json
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable

Vertex = Hashable

DEFAULT_MINIMAL_K = 3
EXHAUSTIVE_LIMIT = 20
ORACLE_LIMIT = 8


class GraphError(ValueError):
    pass


def _vkey(v) -> tuple:
    return (0, v, "") if isinstance(v, int) else (1, 0, str(v))


@dataclass(frozen=True)
class Edge:
    u: Vertex
    v: Vertex
    colour: int

    def other(self, w: Vertex) -> Vertex:
        return self.v if w == self.u else self.u


@dataclass(frozen=True)
class Diagnostic:
    axiom: str
    where: tuple
    message: str

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "where": [str(w) for w in self.where], "message": self.message}


@dataclass(frozen=True)
class LinkGraph:
    vertices: tuple
    edges: tuple[Edge, ...]
    self_attached: frozenset = frozenset()
    colour_names: tuple = field(default=(), compare=False)

    @classmethod
    def build(cls, edges: Iterable[tuple], vertices: Iterable = (), self_attached: Iterable = ()) -> "LinkGraph":
        es = tuple(Edge(u, v, c) for u, v, c in edges)
        vs = set(vertices)
        for e in es:
            vs.add(e.u)
            vs.add(e.v)
        return cls(tuple(sorted(vs, key=_vkey)), es, frozenset(self_attached))

    def incident(self) -> dict[Vertex, list[Edge]]:
        inc: dict[Vertex, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e.u].append(e)
            if e.v != e.u:
                inc[e.v].append(e)
            else:
                inc[e.u].append(e)
        return inc

    def degree(self, v: Vertex) -> int:
        return len(self.incident()[v])

    def colours(self) -> list[int]:
        return sorted({e.colour for e in self.edges})

    def colour_name(self, c: int) -> str:
        return str(self.colour_names[c]) if c < len(self.colour_names) else str(c)


def _colour_counts(g: LinkGraph) -> dict[Vertex, Counter]:
    return {v: Counter(e.colour for e in es) for v, es in g.incident().items()}


def validate_graph(g: LinkGraph) -> list[Diagnostic]:
    """Check the four link-graph axioms; an empty list means the graph is valid."""
    out: list[Diagnostic] = []
    counts = _colour_counts(g)
    for v in g.vertices:
        cc = counts[v]
        deg = sum(cc.values())
        if deg > 3:
            out.append(Diagnostic("valency", (v,), f"vertex {v} has valency {deg}"))
        if len(cc) > 2:
            out.append(Diagnostic("colours", (v,), f"vertex {v} touches {len(cc)} colours"))
        if deg == 2 and len(cc) != 1:
            out.append(Diagnostic("binary", (v,), f"binary vertex {v} is not monochrome"))
        if v in g.self_attached:
            out.append(Diagnostic("self_attachment", (v,),
                                  f"vertex {v} is a self-attachment; these are not modelled"))
    for c in g.colours():
        parent: dict[Vertex, Vertex] = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in g.edges:
            if e.colour != c:
                continue
            a, b = find(e.u), find(e.v)
            if a == b:
                out.append(Diagnostic("tree", (c,), f"colour {g.colour_name(c)} contains a cycle through {e.u}"))
                break
            parent[a] = b
    return out


def require_valid(g: LinkGraph) -> None:
    diags = validate_graph(g)
    if diags:
        raise GraphError("; ".join(d.message for d in diags))


def m_g(g: LinkGraph) -> frozenset:
    """Univalent vertices and non-monochrome trivalent vertices."""
    out = set()
    for v, cc in _colour_counts(g).items():
        deg = sum(cc.values())
        if deg == 1 or (deg == 3 and len(cc) == 2):
            out.add(v)
    return frozenset(out)


def univalent(g: LinkGraph) -> frozenset:
    return frozenset(v for v, es in g.incident().items() if len(es) == 1)


def endpoints(g: LinkGraph, colour: int) -> frozenset:
    """Vertices meeting exactly one edge of ``colour``."""
    return frozenset(v for v, cc in _colour_counts(g).items() if cc[colour] == 1)


def leaf_partition(g: LinkGraph, v: Vertex) -> tuple[frozenset, frozenset]:
    """Split the leaves of the doubled-colour tree through ``v`` by which side of ``v`` they lie on."""
    inc = g.incident()
    if v not in inc:
        raise GraphError(f"unknown vertex {v}")
    cc = Counter(e.colour for e in inc[v])
    if len(inc[v]) != 3 or len(cc) != 2:
        raise GraphError(f"vertex {v} is not a two-coloured trivalent vertex")
    c = next(col for col, k in cc.items() if k == 2)
    mono: dict[Vertex, list[Vertex]] = defaultdict(list)
    for e in g.edges:
        if e.colour == c:
            mono[e.u].append(e.v)
            mono[e.v].append(e.u)
    sides = []
    for start in mono[v]:
        seen = {v, start}
        stack = [start]
        leaves = set()
        while stack:
            x = stack.pop()
            if len(mono[x]) == 1:
                leaves.add(x)
            for y in mono[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        sides.append(frozenset(leaves))
    sides.sort(key=lambda s: sorted(map(_vkey, s)))
    return sides[0], sides[1]


def _partitions(g: LinkGraph) -> dict[Vertex, tuple[frozenset, frozenset]]:
    inc = g.incident()
    return {v: leaf_partition(g, v) for v in m_g(g) if len(inc[v]) == 3}


def closure(g: LinkGraph, s: Iterable[Vertex]) -> frozenset:
    """Everything ``s`` has a morphism to: the least set containing ``s`` and
    the univalent vertices that is closed under ``L+(v) -> v`` and ``L-(v) -> v``."""
    mg = m_g(g)
    got = set(s)
    if not got <= mg:
        raise GraphError(f"vertices {sorted(map(str, got - mg))} are not in M_G")
    got |= univalent(g)
    parts = _partitions(g)
    changed = True
    while changed:
        changed = False
        for v, (lp, lm) in parts.items():
            if v not in got and (lp <= got or lm <= got):
                got.add(v)
                changed = True
    return frozenset(got)


def is_initial(g: LinkGraph, s: Iterable[Vertex]) -> bool:
    return closure(g, s) == m_g(g)


def is_unlinked(g: LinkGraph) -> bool:
    return is_initial(g, ())


def brute_force_closure(g: LinkGraph, s: Iterable[Vertex], limit: int = ORACLE_LIMIT) -> frozenset:
    """Reference oracle: enumerate every object reachable from ``s`` in the thin
    category generated by projections, products and the generating arrows."""
    mg = sorted(m_g(g), key=_vkey)
    if len(mg) > limit:
        raise GraphError(f"|M_G| = {len(mg)} exceeds the oracle limit {limit}")
    bit = {v: 1 << i for i, v in enumerate(mg)}
    gens: list[tuple[int, int]] = []
    for v in univalent(g):
        gens.append((0, bit[v]))
    for v, (lp, lm) in _partitions(g).items():
        for side in (lp, lm):
            gens.append((sum(bit[w] for w in side), bit[v]))
    start = sum(bit[v] for v in s)
    reach = {start}
    frontier = [start]
    while frontier:
        new: set[int] = set()
        for x in frontier:
            sub = x
            while True:
                new.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & x
        for src, dst in gens:
            if src in reach or src in new:
                new.add(dst)
        cur = reach | new
        for a in list(cur):
            for b in list(cur):
                new.add(a | b)
        frontier = [x for x in new if x not in reach]
        reach |= new
    top = 0
    for x in reach:
        top |= x
    return frozenset(v for v in mg if top & bit[v])


# unravelling moves

def _merge_binary(g: LinkGraph) -> LinkGraph | None:
    inc = g.incident()
    for v in g.vertices:
        es = inc[v]
        if len(es) == 2 and es[0] is not es[1] and es[0].colour == es[1].colour:
            a, b = es[0].other(v), es[1].other(v)
            if a == v or b == v:
                continue
            edges = [e for e in g.edges if e is not es[0] and e is not es[1]] + [Edge(a, b, es[0].colour)]
            return LinkGraph(tuple(w for w in g.vertices if w != v), tuple(edges), g.self_attached, g.colour_names)
    return None


def _prune_leaf(g: LinkGraph) -> LinkGraph | None:
    inc = g.incident()
    for v in g.vertices:
        if len(inc[v]) != 1:
            continue
        e = inc[v][0]
        u = e.other(v)
        if len(inc[u]) == 3 and len({f.colour for f in inc[u]}) == 1:
            edges = tuple(f for f in g.edges if f is not e)
            return LinkGraph(tuple(w for w in g.vertices if w != v), edges, g.self_attached, g.colour_names)
    return None


def _slide_off(g: LinkGraph) -> LinkGraph | None:
    inc = g.incident()
    taken = set(g.vertices)
    for v in g.vertices:
        if len(inc[v]) != 1:
            continue
        e = inc[v][0]
        u = e.other(v)
        rest = [f for f in inc[u] if f is not e]
        if len(inc[u]) != 3 or len({f.colour for f in inc[u]}) != 2:
            continue
        # the free end must belong to the strand that passes through u
        if sum(f.colour == e.colour for f in rest) != 1:
            continue
        fresh = []
        n = 0
        while len(fresh) < 2:
            cand = f"{u}.{n}"
            n += 1
            if cand not in taken:
                fresh.append(cand)
                taken.add(cand)
        edges = [f for f in g.edges if f is not e and f not in rest]
        verts = [w for w in g.vertices if w not in (u, v)]
        for f, w in zip(rest, fresh):
            edges.append(Edge(w, f.other(u), f.colour))
            verts.append(w)
        return LinkGraph(tuple(sorted(verts, key=_vkey)), tuple(edges), g.self_attached, g.colour_names)
    return None


def reduce(g: LinkGraph) -> LinkGraph:
    """Apply the three unravelling moves until none fires."""
    require_valid(g)
    while True:
        for move in (_merge_binary, _prune_leaf, _slide_off):
            h = move(g)
            if h is not None:
                g = h
                break
        else:
            return g


def components(g: LinkGraph) -> list[LinkGraph]:
    adj: dict[Vertex, set] = {v: set() for v in g.vertices}
    for e in g.edges:
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    seen: set = set()
    out = []
    for v in g.vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(LinkGraph(tuple(sorted(comp, key=_vkey)),
                             tuple(e for e in g.edges if e.u in comp), g.self_attached & comp, g.colour_names))
    return out


def is_trivially_unlinked(g: LinkGraph) -> bool:
    """Every component is a single edge between two univalent vertices."""
    return all(len(c.edges) == 1 and len(c.vertices) == 2 for c in components(g) if c.edges)


@dataclass
class BrunnianReport:
    is_brunnian: bool
    is_strongly_brunnian: bool
    per_colour: dict
    minimal_initial_sets: list
    partial: bool

    def to_json(self) -> dict:
        return {
            "is_brunnian": self.is_brunnian,
            "is_strongly_brunnian": self.is_strongly_brunnian,
            "per_colour": {str(k): v for k, v in sorted(self.per_colour.items())},
            "minimal_initial_sets": [[str(v) for v in s] for s in self.minimal_initial_sets],
            "partial": self.partial,
        }


def minimal_initial_sets(g: LinkGraph, k: int = DEFAULT_MINIMAL_K,
                         limit: int = EXHAUSTIVE_LIMIT) -> tuple[list[tuple], bool]:
    """Inclusion-minimal initial sets of size at most ``k``, and whether the
    search was cut short by the size bound."""
    mg = sorted(m_g(g), key=_vkey)
    if len(mg) > limit:
        return [], True
    found: list[frozenset] = []
    for size in range(0, min(k, len(mg)) + 1):
        for combo in combinations(mg, size):
            s = frozenset(combo)
            if any(f <= s for f in found):
                continue
            if is_initial(g, s):
                found.append(s)
    return [tuple(sorted(s, key=_vkey)) for s in found], False


def brunnian_report(g: LinkGraph, k: int = DEFAULT_MINIMAL_K, limit: int = EXHAUSTIVE_LIMIT) -> BrunnianReport:
    require_valid(g)
    per = {g.colour_name(c): is_initial(g, endpoints(g, c)) for c in g.colours()}
    strong = all(is_initial(g, {v}) for v in m_g(g))
    sets, partial = minimal_initial_sets(g, k, limit)
    return BrunnianReport(all(per.values()), strong, per, sets, partial)


# examples

def ring_graph(k: int = 3) -> LinkGraph:
    """``k`` colours, each a path whose two ends hook onto the next colour,
    with the previous colour's ends hooked onto its middle."""
    if k < 2:
        raise GraphError("a ring graph needs at least two colours")
    edges = []
    for c in range(k):
        p = (c - 1) % k
        edges += [(f"s{c}", f"s{p}", c), (f"s{p}", f"e{p}", c), (f"e{p}", f"e{c}", c)]
    return LinkGraph.build(edges)


def chain_graph(k: int = 3) -> LinkGraph:
    """``k`` colours in a row; the last colour's ends are free caps."""
    edges = [("a0", "b0", 0)] if k == 1 else []
    for c in range(1, k):
        edges += [(f"a{c}", f"a{c - 1}", c), (f"a{c - 1}", f"b{c - 1}", c), (f"b{c - 1}", f"b{c}", c)]
    if k > 1:
        edges += [("a0", "m0", 0), ("m0", "b0", 0)]
    return LinkGraph.build(edges)


# IO

def to_json(g: LinkGraph) -> dict:
    return {
        "vertices": [str(v) if not isinstance(v, int) else v for v in g.vertices],
        "edges": [{"u": e.u, "v": e.v, "colour": g.colour_name(e.colour) if g.colour_names else e.colour}
                  for e in sorted(g.edges, key=lambda e: (_vkey(e.u), _vkey(e.v), e.colour))],
        "self_attached": sorted((str(v) for v in g.self_attached)),
    }


def _intern(names: list, c) -> int:
    if c not in names:
        names.append(c)
    return names.index(c)


def from_json(data: dict | str) -> LinkGraph:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        raw = [(e["u"], e["v"], e["colour"]) for e in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    names: list = []
    if all(isinstance(c, int) for _, _, c in raw):
        edges = raw
    else:
        edges = [(u, v, _intern(names, c)) for u, v, c in raw]
    g = LinkGraph.build(edges, data.get("vertices", ()), data.get("self_attached", ()))
    return LinkGraph(g.vertices, g.edges, g.self_attached, tuple(names))


_DOT_EDGE = re.compile(r'"?([\w.]+)"?\s*--\s*"?([\w.]+)"?\s*\[([^\]]*)\]')
_DOT_ATTR = re.compile(r'(\w+)\s*=\s*"?([\w.#]+)"?')


def from_dot(text: str) -> LinkGraph:
    """Read undirected ``a -- b [colour=red]`` edges; other DOT syntax is ignored."""
    names: list = []
    edges = []
    for m in _DOT_EDGE.finditer(text):
        attrs = dict(_DOT_ATTR.findall(m.group(3)))
        c = attrs.get("colour", attrs.get("color"))
        if c is None:
            raise GraphError(f"edge {m.group(1)} -- {m.group(2)} has no colour attribute")
        edges.append((m.group(1), m.group(2), _intern(names, c)))
    if not edges:
        raise GraphError("no coloured edges found in DOT input")
    g = LinkGraph.build(edges)
    return LinkGraph(g.vertices, g.edges, g.self_attached, tuple(names))


def to_dot(g: LinkGraph) -> str:
    lines = ["graph G {"]
    for e in sorted(g.edges, key=lambda e: (_vkey(e.u), _vkey(e.v), e.colour)):
        lines.append(f'  "{e.u}" -- "{e.v}" [colour="{g.colour_name(e.colour)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def load(text: str) -> LinkGraph:
    s = text.lstrip()
    return from_json(s) if s.startswith("{") else from_dot(text)
