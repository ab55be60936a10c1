"""Finite simple digraphs: structure analysis, pruning, template recognition.

Vertices are string labels.  No loops and no multiple arcs; a pair of
antiparallel arcs counts as an undirected 2-cycle, so such digraphs have
girth 2.

Template classes (the recognizable shapes, parameters written inline):

* ``L(n)``            directed n-cycle
* ``L(n,d)``          n-cycle with one source and one sink, joined by two
                      directed paths of lengths d and n-d (d the smaller)
* ``L(n;out m)``      directed n-cycle plus an outgoing path of m arcs
                      ending in a sink leaf
* ``L(n;in m)``       mirror: an incoming path of m arcs from a source leaf
* ``L(n;out m,in l)`` outgoing path of m arcs to a junction, plus l arcs
                      from a source leaf into that junction (the junction
                      is the unique sink)
* ``L(n;in m,out l)`` a junction source feeding m arcs into the cycle and
                      l arcs out to a sink leaf
* ``L(n,d;out m)``    as L(n,d) with a path of m arcs leaving the
                      convergence vertex (the cycle's sink)
* ``L(n,d;in m)``     mirror: m arcs entering the divergence vertex

The pictures leave the attachment vertex of the two tailed L(n,d) variants
open; the encoding used here hangs the tail off the convergence (resp.
divergence) vertex, which is the only choice compatible with a single
sink (resp. source).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional

Arc = tuple[str, str]


def vertex_key(v: str) -> tuple:
    """Natural sort key: numeric labels in numeric order, then the rest."""
    return (0, int(v), "") if v.isdigit() else (1, 0, v)


class DigraphError(ValueError):
    pass


@dataclass(frozen=True)
class Digraph:
    vertices: frozenset[str]
    arcs: frozenset[Arc]

    def __post_init__(self) -> None:
        for u, v in self.arcs:
            if u == v:
                raise DigraphError(f"loop at vertex {u!r}")
            if u not in self.vertices or v not in self.vertices:
                raise DigraphError(f"arc ({u!r}, {v!r}) uses an undeclared vertex")

    @classmethod
    def of(cls, arcs: Iterable[Arc], isolated: Iterable[str] = ()) -> "Digraph":
        arcs = frozenset(arcs)
        verts = {u for u, _ in arcs} | {v for _, v in arcs} | set(isolated)
        return cls(frozenset(verts), arcs)

    def sorted_vertices(self) -> list[str]:
        return sorted(self.vertices, key=vertex_key)

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs, key=lambda a: (vertex_key(a[0]), vertex_key(a[1])))

    def out_degree(self, v: str) -> int:
        return sum(1 for u, _ in self.arcs if u == v)

    def in_degree(self, v: str) -> int:
        return sum(1 for _, w in self.arcs if w == v)

    def undirected_neighbors(self, v: str) -> set[str]:
        nbrs = set()
        for u, w in self.arcs:
            if u == v:
                nbrs.add(w)
            elif w == v:
                nbrs.add(u)
        return nbrs

    def is_source(self, v: str) -> bool:
        return self.in_degree(v) == 0 and self.out_degree(v) > 0

    def is_sink(self, v: str) -> bool:
        return self.out_degree(v) == 0 and self.in_degree(v) > 0

    def is_leaf(self, v: str) -> bool:
        return self.in_degree(v) + self.out_degree(v) == 1


@dataclass(frozen=True)
class DegreeCensus:
    """Counts of sources, sinks, source leaves and sink leaves."""

    sigma: int
    tau: int
    sigma1: int
    tau1: int


@dataclass(frozen=True)
class DigraphAnalysis:
    girth: Optional[int]  # None means no cycle (forest)
    components: tuple[frozenset[str], ...]
    census: DegreeCensus
    balanced: bool
    component_balanced: tuple[bool, ...]


@dataclass(frozen=True)
class PruneResult:
    result: Digraph
    removed: tuple[tuple[str, Arc], ...]


@dataclass(frozen=True)
class ShapeMatch:
    """Outcome of template recognition.

    ``cls`` is one of the generic tags 'L(n)', 'L(n,d)', 'L(n;out m)',
    'L(n;in m)', 'L(n;out m,in l)', 'L(n;in m,out l)', 'L(n,d;out m)',
    'L(n,d;in m)' or 'NoMatch'.  ``witness`` maps canonical template
    vertices onto the input and is a digraph isomorphism when cls is not
    'NoMatch'.
    """

    cls: str
    n: Optional[int] = None
    d: Optional[int] = None
    m: Optional[int] = None
    l: Optional[int] = None
    witness: Optional[dict[str, str]] = field(default=None, compare=False)

    @property
    def matched(self) -> bool:
        return self.cls != "NoMatch"

    def descriptor(self) -> str:
        if not self.matched:
            return "NoMatch"
        return template_descriptor(self.cls, self.n, self.d, self.m, self.l)

    def arrow_swapped(self) -> "ShapeMatch":
        swap = {
            "L(n;out m)": "L(n;in m)",
            "L(n;in m)": "L(n;out m)",
            "L(n;out m,in l)": "L(n;in m,out l)",
            "L(n;in m,out l)": "L(n;out m,in l)",
            "L(n,d;out m)": "L(n,d;in m)",
            "L(n,d;in m)": "L(n,d;out m)",
        }
        return ShapeMatch(swap.get(self.cls, self.cls), self.n, self.d, self.m, self.l, None)

    def to_json(self) -> dict:
        return {"class": self.cls, "n": self.n, "d": self.d, "m": self.m, "l": self.l}

    @classmethod
    def from_json(cls, data: dict) -> "ShapeMatch":
        return cls(data["class"], data.get("n"), data.get("d"), data.get("m"), data.get("l"))


NO_MATCH = ShapeMatch("NoMatch")


# ---------------------------------------------------------------------------
# parsing

def parse_digraph(text: str) -> Digraph:
    """Parse edge-list text: one arc per line as two vertex tokens.

    ``vertex v`` lines declare isolated vertices; ``#`` starts a comment.
    Loops and duplicate arc lines are errors.
    """
    arcs: list[Arc] = []
    seen: set[Arc] = set()
    isolated: list[str] = []
    token = re.compile(r"^[A-Za-z0-9_]+$")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) != 2 or not token.match(parts[1]):
                raise DigraphError(f"line {lineno}: bad vertex declaration {raw!r}")
            isolated.append(parts[1])
            continue
        if len(parts) != 2 or not all(token.match(p) for p in parts):
            raise DigraphError(f"line {lineno}: expected two vertex tokens, got {raw!r}")
        u, v = parts
        if u == v:
            raise DigraphError(f"line {lineno}: loop at {u!r}")
        if (u, v) in seen:
            raise DigraphError(f"line {lineno}: duplicate arc ({u}, {v})")
        seen.add((u, v))
        arcs.append((u, v))
    return Digraph.of(arcs, isolated)


# ---------------------------------------------------------------------------
# templates

def template_descriptor(cls: str, n, d, m, l) -> str:
    if cls == "L(n)":
        return f"L({n})"
    if cls == "L(n,d)":
        return f"L({n},{d})"
    if cls == "L(n;out m)":
        return f"L({n};out={m})"
    if cls == "L(n;in m)":
        return f"L({n};in={m})"
    if cls == "L(n;out m,in l)":
        return f"L({n};out={m},in={l})"
    if cls == "L(n;in m,out l)":
        return f"L({n};in={m},out={l})"
    if cls == "L(n,d;out m)":
        return f"L({n},{d};out={m})"
    if cls == "L(n,d;in m)":
        return f"L({n},{d};in={m})"
    raise ValueError(f"unknown class {cls!r}")


_TEMPLATE_RE = re.compile(
    r"""^L\(\s*(?P<n>\d+)\s*
        (?:,\s*(?P<d>\d+)\s*)?
        (?:;\s*(?P<first>out|in)\s*=\s*(?P<fv>\d+)\s*
           (?:,\s*(?P<second>out|in)\s*=\s*(?P<sv>\d+)\s*)?)?
        \)$""",
    re.VERBOSE,
)


def parse_template(text: str) -> ShapeMatch:
    """Parse a template descriptor like ``L(4)``, ``L(5,2)``, ``L(4;out=1,in=2)``."""
    mobj = _TEMPLATE_RE.match(text.strip())
    if not mobj:
        raise DigraphError(f"bad template descriptor {text!r}")
    n = int(mobj.group("n"))
    d = int(mobj.group("d")) if mobj.group("d") else None
    first, fv = mobj.group("first"), mobj.group("fv")
    second, sv = mobj.group("second"), mobj.group("sv")
    if first is None:
        cls = "L(n,d)" if d is not None else "L(n)"
        return ShapeMatch(cls, n=n, d=d)
    fv = int(fv)
    if second is None:
        if d is not None:
            cls = "L(n,d;out m)" if first == "out" else "L(n,d;in m)"
            return ShapeMatch(cls, n=n, d=d, m=fv)
        cls = "L(n;out m)" if first == "out" else "L(n;in m)"
        return ShapeMatch(cls, n=n, m=fv)
    if d is not None:
        raise DigraphError("L(n,d;...) takes a single tail")
    if first == second:
        raise DigraphError("tail directions must differ")
    sv = int(sv)
    if first == "out":
        return ShapeMatch("L(n;out m,in l)", n=n, m=fv, l=sv)
    return ShapeMatch("L(n;in m,out l)", n=n, m=fv, l=sv)


def build_template(spec: "ShapeMatch | str") -> Digraph:
    """Build the canonical instance of a template class.

    Accepts a descriptor string or a ShapeMatch carrying the parameters.
    Cycle vertices are ``1..n`` with arcs (1,2)...(n,1); for L(n,d) the
    source is ``n`` and the sink is ``n-d``; tails continue ``n+1, n+2, ...``
    """
    shape = parse_template(spec) if isinstance(spec, str) else spec
    n, d, m, l = shape.n, shape.d, shape.m, shape.l
    if n is None or n < 3:
        raise DigraphError("template needs n >= 3")

    def cyc(i: int) -> str:
        return str((i - 1) % n + 1)

    directed_cycle = [(cyc(i), cyc(i + 1)) for i in range(1, n + 1)]
    arcs: list[Arc]

    if shape.cls in ("L(n,d)", "L(n,d;out m)", "L(n,d;in m)"):
        if d is None or not 1 <= d <= n // 2:
            raise DigraphError("L(n,d) needs n/2 >= d >= 1")
        arcs = [(str(n), "1")]
        arcs += [(str(i), str(i + 1)) for i in range(1, n - d)]  # long path
        arcs += [(str(i), str(i - 1)) for i in range(n, n - d, -1)]  # short path
    else:
        arcs = list(directed_cycle)

    if shape.cls == "L(n)":
        pass
    elif shape.cls == "L(n,d)":
        pass
    elif shape.cls == "L(n;out m)":
        if not m or m < 1:
            raise DigraphError("tail length must be >= 1")
        arcs += [(str(n + i - 1) if i > 1 else str(n), str(n + i)) for i in range(1, m + 1)]
    elif shape.cls == "L(n;in m)":
        if not m or m < 1:
            raise DigraphError("tail length must be >= 1")
        arcs += [(str(n + i), str(n + i - 1) if i > 1 else str(n)) for i in range(1, m + 1)]
    elif shape.cls == "L(n;out m,in l)":
        if not m or not l or m < 1 or l < 1:
            raise DigraphError("tail lengths must be >= 1")
        arcs += [(str(n + i - 1) if i > 1 else str(n), str(n + i)) for i in range(1, m + 1)]
        junction = n + m
        arcs += [
            (str(junction + j), str(junction + j - 1) if j > 1 else str(junction))
            for j in range(1, l + 1)
        ]
    elif shape.cls == "L(n;in m,out l)":
        if not m or not l or m < 1 or l < 1:
            raise DigraphError("tail lengths must be >= 1")
        arcs += [(str(n + i), str(n + i - 1) if i > 1 else str(n)) for i in range(1, m + 1)]
        junction = n + m
        arcs += [
            (str(junction + j - 1) if j > 1 else str(junction), str(junction + j))
            for j in range(1, l + 1)
        ]
    elif shape.cls == "L(n,d;out m)":
        if not m or m < 1:
            raise DigraphError("tail length must be >= 1")
        snk = str(n - d)
        arcs += [(str(n + i - 1) if i > 1 else snk, str(n + i)) for i in range(1, m + 1)]
    elif shape.cls == "L(n,d;in m)":
        if not m or m < 1:
            raise DigraphError("tail length must be >= 1")
        src = str(n)
        arcs += [(str(n + i), str(n + i - 1) if i > 1 else src) for i in range(1, m + 1)]
    else:
        raise DigraphError(f"cannot build class {shape.cls!r}")
    return Digraph.of(arcs)


# ---------------------------------------------------------------------------
# analysis

def weak_components(g: Digraph) -> tuple[frozenset[str], ...]:
    seen: set[str] = set()
    comps: list[frozenset[str]] = []
    for start in g.sorted_vertices():
        if start in seen:
            continue
        stack, comp = [start], {start}
        while stack:
            v = stack.pop()
            for w in g.undirected_neighbors(v):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return tuple(comps)


def _simple_girth(g: Digraph) -> Optional[int]:
    """Shortest cycle length of the underlying graph (None for forests).

    Antiparallel arc pairs form 2-cycles of the underlying multigraph.
    """
    for u, v in g.arcs:
        if (v, u) in g.arcs:
            return 2
    edges = {frozenset((u, v)) for u, v in g.arcs}
    adj: dict[str, set[str]] = {v: set() for v in g.vertices}
    for e in edges:
        u, v = tuple(e)
        adj[u].add(v)
        adj[v].add(u)
    best: Optional[int] = None
    for e in edges:
        u, v = tuple(e)
        # BFS shortest u-v path avoiding edge e; cycle = path + e
        dist = {u: 0}
        frontier = [u]
        found = None
        while frontier and found is None:
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if {x, y} == {u, v} and dist[x] == 0:
                        continue
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        if y == v:
                            found = dist[y]
                            break
                        nxt.append(y)
                if found is not None:
                    break
            frontier = nxt
        if found is not None:
            cyc_len = found + 1
            if best is None or cyc_len < best:
                best = cyc_len
    return best


def census(g: Digraph) -> DegreeCensus:
    sigma = tau = sigma1 = tau1 = 0
    for v in g.vertices:
        indeg, outdeg = g.in_degree(v), g.out_degree(v)
        if indeg == 0 and outdeg > 0:
            sigma += 1
            if outdeg == 1:
                sigma1 += 1
        if outdeg == 0 and indeg > 0:
            tau += 1
            if indeg == 1:
                tau1 += 1
    return DegreeCensus(sigma, tau, sigma1, tau1)


def analyze(g: Digraph) -> DigraphAnalysis:
    comps = weak_components(g)
    comp_balanced = []
    for comp in comps:
        arcs = sum(1 for u, v in g.arcs if u in comp)
        comp_balanced.append(len(comp) == arcs)
    return DigraphAnalysis(
        girth=_simple_girth(g),
        components=comps,
        census=census(g),
        balanced=len(g.vertices) == len(g.arcs),
        component_balanced=tuple(comp_balanced),
    )


def prune(g: Digraph, kind: str = "source-leaves") -> PruneResult:
    """Recursively remove leaves of the requested kind.

    ``kind`` is one of 'source-leaves', 'sink-leaves', 'both'.  Removal
    proceeds one vertex at a time in natural label order, so the recorded
    sequence is deterministic; the fixed point itself is order-independent.
    """
    if kind not in ("source-leaves", "sink-leaves", "both"):
        raise ValueError(f"unknown prune kind {kind!r}")
    cur = g
    removed: list[tuple[str, Arc]] = []
    while True:
        candidates = []
        for v in cur.sorted_vertices():
            indeg, outdeg = cur.in_degree(v), cur.out_degree(v)
            is_src_leaf = indeg == 0 and outdeg == 1
            is_snk_leaf = outdeg == 0 and indeg == 1
            if kind == "source-leaves" and is_src_leaf:
                candidates.append(v)
            elif kind == "sink-leaves" and is_snk_leaf:
                candidates.append(v)
            elif kind == "both" and (is_src_leaf or is_snk_leaf):
                candidates.append(v)
        if not candidates:
            return PruneResult(cur, tuple(removed))
        v = candidates[0]
        arc = next(a for a in cur.sorted_arcs() if v in a)
        removed.append((v, arc))
        cur = Digraph(cur.vertices - {v}, cur.arcs - {arc})


def reflect_digraph(g: Digraph) -> Digraph:
    return Digraph(g.vertices, frozenset((v, u) for u, v in g.arcs))


# ---------------------------------------------------------------------------
# shape recognition

def _two_core(g: Digraph) -> set[str]:
    """Vertices of the unique cycle of a connected unicyclic digraph."""
    alive = set(g.vertices)
    deg = {v: 0 for v in g.vertices}
    for u, v in g.arcs:
        deg[u] += 1
        deg[v] += 1
    changed = True
    while changed:
        changed = False
        for v in sorted(alive, key=vertex_key):
            if deg[v] <= 1:
                alive.discard(v)
                for u, w in g.arcs:
                    if u == v and w in alive:
                        deg[w] -= 1
                    elif w == v and u in alive:
                        deg[u] -= 1
                changed = True
    return alive


def _cycle_order(g: Digraph, core: set[str]) -> list[str]:
    """Core vertices in cyclic order (undirected walk), deterministic start."""
    start = min(core, key=vertex_key)
    order = [start]
    prev = None
    cur = start
    while True:
        nbrs = sorted(
            (w for w in g.undirected_neighbors(cur) if w in core and w != prev),
            key=vertex_key,
        )
        # in a digon the previous vertex is also the next one
        if not nbrs:
            nbrs = [prev]
        nxt = nbrs[0]
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def recognize_shape(g: Digraph) -> ShapeMatch:
    """Match a weakly connected balanced digraph against the template classes.

    Raises DigraphError when the input is disconnected or unbalanced
    (those digraphs are not unicyclic, so the cycle-plus-attachment
    normal form does not apply).
    """
    if not g.vertices:
        raise DigraphError("empty digraph")
    comps = weak_components(g)
    if len(comps) != 1:
        raise DigraphError("recognize_shape requires a weakly connected digraph")
    if len(g.vertices) != len(g.arcs):
        raise DigraphError("recognize_shape requires |V| = |A|")

    core = _two_core(g)
    n = len(core)
    cycle = _cycle_order(g, core)
    cycle_arcs = {a for a in g.arcs if a[0] in core and a[1] in core}
    off_vertices = g.vertices - core

    # orientation profile of the cycle
    cyc_sources = [
        v
        for i, v in enumerate(cycle)
        if (v, cycle[(i + 1) % n]) in cycle_arcs and (v, cycle[(i - 1) % n]) in cycle_arcs
    ]
    cyc_sinks = [
        v
        for i, v in enumerate(cycle)
        if (cycle[(i + 1) % n], v) in cycle_arcs and (cycle[(i - 1) % n], v) in cycle_arcs
    ]

    def directed_cycle_from(anchor: str) -> Optional[list[str]]:
        """Walk the directed cycle starting at anchor, or None if not directed."""
        if cyc_sources or cyc_sinks:
            return None
        walk = [anchor]
        cur = anchor
        for _ in range(n - 1):
            nxt = next(w for (u, w) in cycle_arcs if u == cur)
            walk.append(nxt)
            cur = nxt
        return walk

    # attachment path, if any
    if off_vertices:
        attach_arcs = [a for a in g.sorted_arcs() if (a[0] in core) != (a[1] in core)]
        if len(attach_arcs) != 1:
            return NO_MATCH
        (u0, v0) = attach_arcs[0]
        c = u0 if u0 in core else v0
        path = [c]
        dirs: list[str] = []
        cur, prev = c, None
        while True:
            step = None
            for (u, v) in g.sorted_arcs():
                if u == cur and v != prev and v not in core:
                    step = (v, "out")
                    break
                if v == cur and u != prev and u not in core:
                    step = (u, "in")
                    break
            if step is None:
                break
            nxt, direction = step
            # reject branching: interior path vertices must have degree 2
            dirs.append(direction)
            path.append(nxt)
            prev, cur = cur, nxt
        if set(path[1:]) != off_vertices:
            return NO_MATCH
        if any(len(g.undirected_neighbors(v)) > 2 for v in path[1:]):
            return NO_MATCH
        k = len(dirs)
        changes = [i for i in range(k - 1) if dirs[i] != dirs[i + 1]]
        if len(changes) > 1:
            return NO_MATCH
    else:
        path, dirs, c, k = [], [], None, 0

    def cycle_witness_directed(anchor_last: str) -> dict[str, str]:
        """Map template cycle 1..n so that template vertex n lands on anchor_last."""
        walk = directed_cycle_from(anchor_last)
        assert walk is not None
        # walk = [anchor, s1, s2, ...]; template n -> anchor, i -> walk[i]
        wit = {str(n): anchor_last}
        for i in range(1, n):
            wit[str(i)] = walk[i]
        return wit

    def finish(match: ShapeMatch, witness: dict[str, str]) -> ShapeMatch:
        template = build_template(match)
        mapped = {(witness[u], witness[v]) for u, v in template.arcs}
        if mapped != set(g.arcs) or len(witness) != len(g.vertices):
            raise AssertionError("witness is not an isomorphism (recognizer bug)")
        return ShapeMatch(match.cls, match.n, match.d, match.m, match.l, witness)

    if not off_vertices:
        if not cyc_sources and not cyc_sinks:
            anchor = min(core, key=vertex_key)
            return finish(ShapeMatch("L(n)", n=n), cycle_witness_directed(anchor))
        if len(cyc_sources) == 1 and len(cyc_sinks) == 1:
            return _match_source_sink_cycle(g, cycle, cycle_arcs, n, tail=None)
        return NO_MATCH

    # tailed shapes
    if not cyc_sources and not cyc_sinks:
        wit = cycle_witness_directed(c)
        if all(d == "out" for d in dirs):
            for i, v in enumerate(path[1:], start=1):
                wit[str(n + i)] = v
            return finish(ShapeMatch("L(n;out m)", n=n, m=k), wit)
        if all(d == "in" for d in dirs):
            for i, v in enumerate(path[1:], start=1):
                wit[str(n + i)] = v
            return finish(ShapeMatch("L(n;in m)", n=n, m=k), wit)
        j = changes[0] + 1  # arcs before the direction change
        for i, v in enumerate(path[1:], start=1):
            wit[str(n + i)] = v
        if dirs[0] == "out":
            return finish(ShapeMatch("L(n;out m,in l)", n=n, m=j, l=k - j), wit)
        return finish(ShapeMatch("L(n;in m,out l)", n=n, m=j, l=k - j), wit)

    if len(cyc_sources) == 1 and len(cyc_sinks) == 1:
        if all(d == "out" for d in dirs) and c == cyc_sinks[0]:
            return _match_source_sink_cycle(g, cycle, cycle_arcs, n, tail=("out", path))
        if all(d == "in" for d in dirs) and c == cyc_sources[0]:
            return _match_source_sink_cycle(g, cycle, cycle_arcs, n, tail=("in", path))
    return NO_MATCH


def _match_source_sink_cycle(
    g: Digraph,
    cycle: list[str],
    cycle_arcs: set[Arc],
    n: int,
    tail: Optional[tuple[str, list[str]]],
) -> ShapeMatch:
    """Classify a cycle with exactly one source and one sink (optionally tailed)."""
    src = next(
        v
        for i, v in enumerate(cycle)
        if (v, cycle[(i + 1) % n]) in cycle_arcs and (v, cycle[(i - 1) % n]) in cycle_arcs
    )
    snk = next(
        v
        for i, v in enumerate(cycle)
        if (cycle[(i + 1) % n], v) in cycle_arcs and (cycle[(i - 1) % n], v) in cycle_arcs
    )
    # walk both directed paths from source to sink
    i_src = cycle.index(src)
    paths = []
    for step in (1, -1):
        walk = [src]
        j = i_src
        while walk[-1] != snk:
            j = (j + step) % n
            walk.append(cycle[j])
        paths.append(walk)
    lens = sorted((len(p) - 1 for p in paths))
    d = lens[0]
    long_path = max(paths, key=len)
    short_path = min(paths, key=len)
    if len(long_path) == len(short_path):
        # tie: deterministic choice by second vertex
        first, second = sorted(paths, key=lambda p: vertex_key(p[1]))
        long_path, short_path = first, second
    # template: source n, sink n-d, long path n,1,2,..,n-d, short n,n-1,..,n-d
    wit = {str(n): src, str(n - d): snk}
    for i, v in enumerate(long_path[1:-1], start=1):
        wit[str(i)] = v
    for i, v in enumerate(short_path[1:-1], start=1):
        wit[str(n - i)] = v
    shape: ShapeMatch
    if tail is None:
        shape = ShapeMatch("L(n,d)", n=n, d=d)
    else:
        direction, path = tail
        m = len(path) - 1
        for i, v in enumerate(path[1:], start=1):
            wit[str(n + i)] = v
        cls = "L(n,d;out m)" if direction == "out" else "L(n,d;in m)"
        shape = ShapeMatch(cls, n=n, d=d, m=m)
    template = build_template(shape)
    mapped = {(wit[u], wit[v]) for u, v in template.arcs}
    if mapped != set(g.arcs) or len(wit) != len(g.vertices):
        raise AssertionError("witness is not an isomorphism (recognizer bug)")
    return ShapeMatch(shape.cls, shape.n, shape.d, shape.m, shape.l, wit)
