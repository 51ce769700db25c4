"""Ribbon graphs, their thickened surfaces, and relative subgraphs.

A half-edge is written ``(edge, +1)`` for the end at the tail of the edge and
``(edge, -1)`` for the end at its head; in text form ``e1+`` and ``e1-``.
Cyclic orders list the half-edges at a vertex counterclockwise.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .heisenberg_core import SurfaceParams

__all__ = [
    "random_ribbon_graph",
    "RibbonGraph",
    "RelativeSubgraph",
    "SurfaceInvariants",
    "H1Basis",
    "RelativeReport",
    "GraphFormatError",
    "trace_faces",
    "surface_invariants",
    "h1_basis",
    "intersection_number",
    "standard_model",
    "validate_relative",
    "subdivide",
    "parse_graph_text",
    "graph_to_text",
    "rose",
]

HalfEdge = tuple[str, int]


def _he_str(h: HalfEdge) -> str:
    return f"{h[0]}{'+' if h[1] > 0 else '-'}"


@dataclass(frozen=True)
class RibbonGraph:
    """Finite graph with oriented edges and a cyclic order of half-edges at each vertex."""

    vertices: tuple[str, ...]
    edges: dict[str, tuple[str, str]]
    orders: dict[str, tuple[HalfEdge, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", dict(self.edges))
        object.__setattr__(self, "orders", {v: tuple(o) for v, o in self.orders.items()})
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        for e, (a, b) in self.edges.items():
            if a not in vset or b not in vset:
                raise ValueError(f"edge {e} uses an unknown vertex")
        seen: dict[HalfEdge, str] = {}
        for v, order in self.orders.items():
            if v not in vset:
                raise ValueError(f"cyclic order given for unknown vertex {v}")
            for h in order:
                if h in seen:
                    raise ValueError(f"half-edge {_he_str(h)} appears twice in cyclic orders")
                if h[0] not in self.edges:
                    raise ValueError(f"half-edge {_he_str(h)} refers to an unknown edge")
                expected = self.edges[h[0]][0 if h[1] > 0 else 1]
                if expected != v:
                    raise ValueError(f"half-edge {_he_str(h)} is listed at {v} but belongs to {expected}")
                seen[h] = v
        for e in self.edges:
            for s in (1, -1):
                if (e, s) not in seen:
                    raise ValueError(f"half-edge {_he_str((e, s))} is missing from all cyclic orders")

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(self.edges.items()), tuple(sorted(self.orders.items()))))

    @property
    def edge_names(self) -> list[str]:
        return list(self.edges)

    def order_at(self, v: str) -> tuple[HalfEdge, ...]:
        return self.orders.get(v, ())

    def vertex_of(self, h: HalfEdge) -> str:
        return self.edges[h[0]][0 if h[1] > 0 else 1]

    def successor(self, h: HalfEdge) -> HalfEdge:
        """Next half-edge counterclockwise at the same vertex."""
        order = self.orders[self.vertex_of(h)]
        return order[(order.index(h) + 1) % len(order)]

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a, b in self.edges.values():
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def renamed(self, vmap: dict[str, str], emap: dict[str, str]) -> RibbonGraph:
        return RibbonGraph(
            tuple(vmap[v] for v in self.vertices),
            {emap[e]: (vmap[a], vmap[b]) for e, (a, b) in self.edges.items()},
            {vmap[v]: tuple((emap[e], s) for e, s in o) for v, o in self.orders.items()},
        )


@dataclass(frozen=True)
class RelativeSubgraph:
    """Distinguished oriented intervals and circles in a ribbon graph.

    Each component is ``(kind, ((edge, sign), ...))`` with ``kind`` either
    ``"interval"`` or ``"circle"``; ``sign = -1`` traverses an edge backwards.
    """

    components: tuple[tuple[str, tuple[tuple[str, int], ...]], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "components",
            tuple((kind, tuple((e, int(s)) for e, s in walk)) for kind, walk in self.components),
        )

    @property
    def edges(self) -> set[str]:
        return {e for _, walk in self.components for e, _ in walk}

    def vertices(self, graph: RibbonGraph) -> set[str]:
        out = set()
        for _, walk in self.components:
            for e, _ in walk:
                out.update(graph.edges[e])
        return out

    def is_empty(self) -> bool:
        return not self.components


@dataclass(frozen=True)
class SurfaceInvariants:
    g: int
    m: int
    chi: int

    def params(self) -> SurfaceParams:
        return SurfaceParams(self.g, self.m)


@dataclass(frozen=True)
class H1Basis:
    """Fundamental cycles of a spanning tree and their intersection matrix."""

    tree: tuple[str, ...]
    cycle_edges: tuple[str, ...]
    cycles: tuple[tuple[tuple[str, int], ...], ...]
    matrix: tuple[tuple[int, ...], ...] = field(repr=False)

    def edge_vector(self, i: int, edges: Sequence[str]) -> list[int]:
        v = dict.fromkeys(edges, 0)
        for e, s in self.cycles[i]:
            v[e] += s
        return [v[e] for e in edges]


# ------------------------------------------------------------------ faces

def trace_faces(graph: RibbonGraph) -> list[list[HalfEdge]]:
    """Boundary cycles of the thickening.

    From a half-edge leaving a vertex, cross the edge to its other end and
    continue with the counterclockwise successor there.
    """
    darts = [h for v in graph.vertices for h in graph.order_at(v)]
    seen: set[HalfEdge] = set()
    faces = []
    for start in darts:
        if start in seen:
            continue
        face = []
        h = start
        while h not in seen:
            seen.add(h)
            face.append(h)
            h = graph.successor((h[0], -h[1]))
        faces.append(face)
    return faces


def surface_invariants(graph: RibbonGraph) -> SurfaceInvariants:
    if not graph.is_connected():
        raise ValueError("surface invariants need a connected graph")
    chi = len(graph.vertices) - len(graph.edges)
    m = len(trace_faces(graph)) if graph.edges else 1
    twice_g = 2 - chi - m
    if twice_g < 0 or twice_g % 2:
        raise ValueError(f"inconsistent face count: chi={chi}, faces={m}")
    return SurfaceInvariants(twice_g // 2, m, chi)


# --------------------------------------------------------------- homology

def _spanning_tree(graph: RibbonGraph) -> list[str]:
    """Breadth-first tree from the first vertex, scanning edges in input order."""
    if not graph.vertices:
        return []
    incident: dict[str, list[str]] = {v: [] for v in graph.vertices}
    for e, (a, b) in graph.edges.items():
        incident[a].append(e)
        if b != a:
            incident[b].append(e)
    root = graph.vertices[0]
    seen = {root}
    tree = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in incident[v]:
            a, b = graph.edges[e]
            w = b if a == v else a
            if w not in seen:
                seen.add(w)
                tree.append(e)
                queue.append(w)
    return tree


def _tree_path(graph: RibbonGraph, tree: Sequence[str], src: str, dst: str) -> list[tuple[str, int]]:
    adj: dict[str, list[tuple[str, str, int]]] = {v: [] for v in graph.vertices}
    for e in tree:
        a, b = graph.edges[e]
        adj[a].append((b, e, 1))
        adj[b].append((a, e, -1))
    prev: dict[str, tuple[str, str, int] | None] = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w, e, s in adj[v]:
            if w not in prev:
                prev[w] = (v, e, s)
                queue.append(w)
    path = []
    v = dst
    while prev[v] is not None:
        u, e, s = prev[v]
        path.append((e, s))
        v = u
    return path[::-1]


def _passages(graph: RibbonGraph, walk: Sequence[tuple[str, int]]):
    """Yield ``(vertex, incoming half-edge, outgoing half-edge)`` along a closed walk."""
    n = len(walk)
    for i in range(n):
        e_in, s_in = walk[i]
        e_out, s_out = walk[(i + 1) % n]
        h_in = (e_in, -s_in)  # arriving end of the traversed edge
        h_out = (e_out, s_out)
        yield graph.vertex_of(h_out), h_in, h_out


def intersection_number(graph: RibbonGraph, c1: Sequence[tuple[str, int]], c2: Sequence[tuple[str, int]]) -> int:
    """Algebraic intersection of two closed walks on the thickened surface.

    The second walk is pushed to the right of every edge it shares with the
    first, so crossings happen only inside vertex disks. Two passages through
    a vertex cross when their endpoints interleave on the vertex circle.
    """

    def lane(v: str, h: HalfEdge, first: bool) -> Fraction:
        idx = graph.order_at(v).index(h)
        # counterclockwise inside the half-edge's arc: an outgoing end shows its
        # right lane first, an incoming end its left lane first
        left_first = h[1] < 0
        on_left = first
        early = on_left == left_first
        return Fraction(idx) + (Fraction(1, 3) if early else Fraction(2, 3))

    total = 0
    by_vertex: dict[str, list] = {}
    for v, hi, ho in _passages(graph, c2):
        by_vertex.setdefault(v, []).append((lane(v, hi, False), lane(v, ho, False)))
    for v, hi, ho in _passages(graph, c1):
        if v not in by_vertex:
            continue
        deg = len(graph.order_at(v))
        p, q = lane(v, hi, True), lane(v, ho, True)
        span = (q - p) % deg

        def inside(r: Fraction) -> bool:
            return 0 < (r - p) % deg < span

        for r, s in by_vertex[v]:
            ri, si = inside(r), inside(s)
            if ri and not si:
                total += 1
            elif si and not ri:
                total -= 1
    return total


def h1_basis(graph: RibbonGraph) -> H1Basis:
    if not graph.is_connected():
        raise ValueError("homology basis needs a connected graph")
    tree = _spanning_tree(graph)
    tset = set(tree)
    cycle_edges = [e for e in graph.edges if e not in tset]
    cycles = []
    for e in cycle_edges:
        a, b = graph.edges[e]
        cycles.append(tuple([(e, 1)] + _tree_path(graph, tree, b, a)))
    n = len(cycles)
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = intersection_number(graph, cycles[i], cycles[j])
            M[i][j], M[j][i] = x, -x
    return H1Basis(tuple(tree), tuple(cycle_edges), tuple(cycles), tuple(tuple(r) for r in M))


# ---------------------------------------------------------- standard model

def standard_model(g: int, m: int = 1) -> tuple[RibbonGraph, RelativeSubgraph]:
    """Two-vertex relative model of a genus ``g`` surface with ``m`` boundary circles.

    ``A`` runs from ``v0`` to ``v1``; the other edges run from ``v1`` back to
    ``v0`` and are named ``a1..ag, b1..bg, c1..c_{m-1}``. Handle edges are
    interleaved in pairs, everything else is nested, so the fundamental
    cycle of each edge closed up by ``A`` represents the matching homology
    generator.
    """
    params = SurfaceParams(g, m)
    names = params.labels
    # counterclockwise at v1: A, then a1 b1 a2 b2 ... c1 ... c_{m-1}
    at_v1 = [f"a{r}" if k == 0 else f"b{r}" for r in range(1, g + 1) for k in (0, 1)]
    at_v1 += [f"c{t}" for t in range(1, m)]
    # counterclockwise at v0: c_{m-1} ... c1, ag bg, ..., a1 b1, then A
    at_v0 = [f"c{t}" for t in range(m - 1, 0, -1)]
    for r in range(g, 0, -1):
        at_v0 += [f"a{r}", f"b{r}"]
    edges = {"A": ("v0", "v1")}
    edges.update({e: ("v1", "v0") for e in names})
    orders = {
        "v0": tuple((e, -1) for e in at_v0) + (("A", 1),),
        "v1": (("A", -1),) + tuple((e, 1) for e in at_v1),
    }
    graph = RibbonGraph(("v0", "v1"), edges, orders)
    return graph, RelativeSubgraph((("interval", (("A", 1),)),))


# ------------------------------------------------------------ relative A

@dataclass(frozen=True)
class RelativeReport:
    valid: bool
    message: str = "ok"
    location: str | None = None


def validate_relative(graph: RibbonGraph, A: RelativeSubgraph | None) -> RelativeReport:
    """Check that ``A`` is a disjoint union of oriented circles and intervals
    compatible with the cyclic orders.

    At a vertex inside a component, the outgoing ``A`` half-edge must come
    immediately before the incoming one counterclockwise, so that the
    remaining half-edges sit between them on one side of ``A``.
    """
    if A is None or A.is_empty():
        return RelativeReport(True)
    used_vertices: set[str] = set()
    used_edges: set[str] = set()
    for ci, (kind, walk) in enumerate(A.components):
        where = f"component {ci + 1}"
        if kind not in ("interval", "circle"):
            return RelativeReport(False, f"unknown component type {kind!r}", where)
        if not walk:
            return RelativeReport(False, "empty component", where)
        verts = []
        for i, (e, s) in enumerate(walk):
            if e not in graph.edges:
                return RelativeReport(False, f"unknown edge {e}", where)
            if e in used_edges:
                return RelativeReport(False, f"edge {e} used twice", where)
            used_edges.add(e)
            a, b = graph.edges[e] if s > 0 else graph.edges[e][::-1]
            if i == 0:
                verts.append(a)
            elif verts[-1] != a:
                return RelativeReport(False, f"edge {e} does not continue the walk at {verts[-1]}", where)
            verts.append(b)
        if kind == "circle":
            if verts[0] != verts[-1]:
                return RelativeReport(False, "circle does not close up", where)
            inner = verts[:-1]
        else:
            inner = verts
        if len(set(inner)) != len(inner):
            return RelativeReport(False, "component is not simple", where)
        if used_vertices & set(inner):
            return RelativeReport(False, "components share a vertex", where)
        used_vertices.update(inner)
        n = len(walk)
        joints = range(n) if kind == "circle" else range(n - 1)
        for i in joints:
            e_in, s_in = walk[i]
            e_out, s_out = walk[(i + 1) % n]
            h_in, h_out = (e_in, -s_in), (e_out, s_out)
            v = graph.vertex_of(h_out)
            if graph.successor(h_out) != h_in:
                return RelativeReport(
                    False,
                    f"at {v} the outgoing {_he_str(h_out)} must directly precede the incoming {_he_str(h_in)}",
                    v,
                )
    return RelativeReport(True)


# ----------------------------------------------------------- subdivision

def subdivide(graph: RibbonGraph, edge: str, A: RelativeSubgraph | None = None):
    """Insert a degree-two vertex in the middle of ``edge``.

    Returns the new graph and, when given, the updated relative subgraph.
    """
    a, b = graph.edges[edge]
    mid = f"{edge}_m"
    e1, e2 = f"{edge}_0", f"{edge}_1"
    while mid in graph.vertices or e1 in graph.edges or e2 in graph.edges:
        mid, e1, e2 = mid + "'", e1 + "'", e2 + "'"
    edges = {}
    for e, ends in graph.edges.items():
        if e == edge:
            edges[e1] = (a, mid)
            edges[e2] = (mid, b)
        else:
            edges[e] = ends

    def swap(h: HalfEdge) -> HalfEdge:
        if h[0] != edge:
            return h
        return (e1, 1) if h[1] > 0 else (e2, -1)

    orders = {v: tuple(swap(h) for h in o) for v, o in graph.orders.items()}
    orders[mid] = ((e1, -1), (e2, 1))
    new = RibbonGraph(graph.vertices + (mid,), edges, orders)
    if A is None:
        return new, None
    comps = []
    for kind, walk in A.components:
        w = []
        for e, s in walk:
            if e == edge:
                w += [(e1, 1), (e2, 1)] if s > 0 else [(e2, -1), (e1, -1)]
            else:
                w.append((e, s))
        comps.append((kind, tuple(w)))
    return new, RelativeSubgraph(tuple(comps))


# ------------------------------------------------------- text interchange

class GraphFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _parse_half_edge(tok: str, line: int) -> HalfEdge:
    if len(tok) < 2 or tok[-1] not in "+-":
        raise GraphFormatError(f"half-edge {tok!r} must end in '+' or '-'", line)
    return (tok[:-1], 1 if tok[-1] == "+" else -1)


def parse_graph_text(text: str) -> tuple[RibbonGraph, RelativeSubgraph | None]:
    """Parse the line based graph format.

    ::

        vertex v0
        edge A v0 v1
        order v0 e1- A+
        relative interval A
    """
    vertices: list[str] = []
    edges: dict[str, tuple[str, str]] = {}
    orders: dict[str, tuple[HalfEdge, ...]] = {}
    comps = []
    edge_line: dict[str, int] = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if not body:
            continue
        kw, args = body[0], body[1:]
        if kw == "vertex":
            if len(args) != 1:
                raise GraphFormatError("expected 'vertex <id>'", no)
            if args[0] in vertices:
                raise GraphFormatError(f"duplicate vertex {args[0]}", no)
            vertices.append(args[0])
        elif kw == "edge":
            if len(args) != 3:
                raise GraphFormatError("expected 'edge <id> <from> <to>'", no)
            e, a, b = args
            if e in edges:
                raise GraphFormatError(f"duplicate edge {e}", no)
            for v in (a, b):
                if v not in vertices:
                    raise GraphFormatError(f"edge {e} uses undeclared vertex {v}", no)
            edges[e] = (a, b)
            edge_line[e] = no
        elif kw == "order":
            if not args:
                raise GraphFormatError("expected 'order <vertex> <half-edges...>'", no)
            v = args[0]
            if v not in vertices:
                raise GraphFormatError(f"order for undeclared vertex {v}", no)
            if v in orders:
                raise GraphFormatError(f"second order for vertex {v}", no)
            hs = tuple(_parse_half_edge(t, no) for t in args[1:])
            for h in hs:
                if h[0] not in edges:
                    raise GraphFormatError(f"half-edge {_he_str(h)} names an undeclared edge", no)
                owner = edges[h[0]][0 if h[1] > 0 else 1]
                if owner != v:
                    raise GraphFormatError(f"half-edge {_he_str(h)} belongs to {owner}, not {v}", no)
            orders[v] = hs
        elif kw == "relative":
            if len(args) < 2:
                raise GraphFormatError("expected 'relative <interval|circle> <edges...>'", no)
            kind = args[0]
            if kind not in ("interval", "circle"):
                raise GraphFormatError(f"unknown component type {kind!r}", no)
            walk = []
            for t in args[1:]:
                s = -1 if t.startswith("-") else 1
                e = t.lstrip("-+")
                if e not in edges:
                    raise GraphFormatError(f"relative component names undeclared edge {e}", no)
                walk.append((e, s))
            comps.append((kind, tuple(walk)))
        else:
            raise GraphFormatError(f"unknown declaration {kw!r}", no)
    if not vertices:
        raise GraphFormatError("no vertices")
    seen: dict[HalfEdge, int] = {}
    for v, hs in orders.items():
        for h in hs:
            if h in seen:
                raise GraphFormatError(f"half-edge {_he_str(h)} listed twice")
            seen[h] = 1
    for e in edges:
        for s in (1, -1):
            if (e, s) not in seen:
                raise GraphFormatError(f"half-edge {_he_str((e, s))} is missing from all cyclic orders", edge_line[e])
    graph = RibbonGraph(tuple(vertices), edges, orders)
    A = RelativeSubgraph(tuple(comps)) if comps else None
    if A is not None:
        rep = validate_relative(graph, A)
        if not rep.valid:
            raise GraphFormatError(f"invalid relative subgraph: {rep.message}")
    return graph, A


def graph_to_text(graph: RibbonGraph, A: RelativeSubgraph | None = None) -> str:
    lines = [f"vertex {v}" for v in graph.vertices]
    lines += [f"edge {e} {a} {b}" for e, (a, b) in graph.edges.items()]
    for v in graph.vertices:
        if graph.order_at(v):
            lines.append(f"order {v} " + " ".join(_he_str(h) for h in graph.order_at(v)))
    if A is not None:
        for kind, walk in A.components:
            lines.append(f"relative {kind} " + " ".join(("" if s > 0 else "-") + e for e, s in walk))
    return "\n".join(lines) + "\n"


def rose(orders: Iterable[str]) -> RibbonGraph:
    """One-vertex graph from a counterclockwise list like ``["e1+", "e2+", "e1-", "e2-"]``."""
    hs = tuple(_parse_half_edge(t, 0) for t in orders)
    edges = {e: ("v", "v") for e, _ in hs}
    return RibbonGraph(("v",), edges, {"v": hs})


def random_ribbon_graph(rng: random.Random, max_edges: int = 6, max_vertices: int = 4) -> RibbonGraph:
    """Connected ribbon graph with random edges and shuffled cyclic orders."""
    nv = rng.randint(1, max_vertices)
    verts = [f"v{i}" for i in range(nv)]
    ne = rng.randint(max(1, nv - 1), max(nv - 1, max_edges))
    edges: dict[str, tuple[str, str]] = {}
    for i in range(1, nv):
        a, b = verts[rng.randrange(i)], verts[i]
        edges[f"e{i}"] = (a, b) if rng.random() < 0.5 else (b, a)
    for i in range(nv, ne + 1):
        edges[f"e{i}"] = (rng.choice(verts), rng.choice(verts))
    orders: dict[str, list[HalfEdge]] = {v: [] for v in verts}
    for e, (a, b) in edges.items():
        orders[a].append((e, 1))
        orders[b].append((e, -1))
    for o in orders.values():
        rng.shuffle(o)
    return RibbonGraph(tuple(verts), edges, {v: tuple(o) for v, o in orders.items() if o})
