"""Borel-Moore cellular chain complex of unordered configurations in a ribbon graph.

A cell fixes which vertices are occupied and how many points sit inside each
edge. Points inside an edge are ordered by the edge's orientation, and a cell
is oriented by the coordinates of all its points, edge by edge in the graph's
edge order. A point leaving its edge through an endpoint gives a face; faces
where that endpoint is occupied, lies in ``A`` (relative case), or where two
points meet, are at infinity and dropped.

With the ``StandardWedge`` oracle on a standard model each boundary entry also
carries a Heisenberg deck element, obtained by evaluating the loop
``tether(E) · (path inside E to F) · tether(F)^-1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .heisenberg_core import BraidLetter, GroupRingElement, HeisenbergElement, SurfaceParams
from .planar import BELOW_A, Jump, Move, PlanarModel, Point, Seg, reverse_path, relabel
from .ribbon_graph import RelativeSubgraph, RibbonGraph, standard_model, surface_invariants

__all__ = [
    "ConfigCell",
    "Face",
    "BMComplex",
    "CoefficientOracle",
    "TrivialOracle",
    "StandardWedgeOracle",
    "TetheredCell",
    "enumerate_cells",
    "cell_faces",
    "build_complex",
    "boundary_matrix",
    "assign_tethers",
    "loop_to_word",
    "deck_coefficient",
]


@dataclass(frozen=True, order=True)
class ConfigCell:
    """Occupied vertices plus the number of points inside each edge."""

    vertices: tuple[str, ...]
    counts: tuple[tuple[str, int], ...]

    @property
    def dim(self) -> int:
        return sum(k for _, k in self.counts)

    @property
    def size(self) -> int:
        return len(self.vertices) + self.dim

    def count(self, edge: str) -> int:
        for e, k in self.counts:
            if e == edge:
                return k
        return 0

    def __str__(self) -> str:
        parts = list(self.vertices)
        for e, k in self.counts:
            parts.append(e if k == 1 else f"C{k}({e})")
        return " x ".join(parts) if parts else "{}"


@dataclass(frozen=True)
class Face:
    """Codimension one face: the extreme point of ``edge`` leaves through ``end``."""

    cell: ConfigCell
    edge: str
    end: str  # "tail" or "head"
    sign: int
    target: ConfigCell


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _allowed(graph: RibbonGraph, A: RelativeSubgraph | None) -> tuple[list[str], list[str]]:
    if A is None or A.is_empty():
        return list(graph.vertices), list(graph.edges)
    av, ae = A.vertices(graph), A.edges
    return [v for v in graph.vertices if v not in av], [e for e in graph.edges if e not in ae]


def enumerate_cells(graph: RibbonGraph, A: RelativeSubgraph | None, n: int) -> dict[int, list[ConfigCell]]:
    """All cells of ``n`` points, graded by dimension.

    When ``A`` is given only vertices and edges outside ``A`` are used.
    """
    if n < 1:
        raise ValueError("need at least one point")
    verts, edges = _allowed(graph, A)
    out: dict[int, list[ConfigCell]] = {}
    for k in range(n + 1):
        cells = []
        for V in itertools.combinations(verts, n - k):
            for comp in _compositions(k, len(edges)):
                counts = tuple((e, c) for e, c in zip(edges, comp) if c)
                cells.append(ConfigCell(V, counts))
        if cells:
            out[k] = cells
    return out


def cell_faces(graph: RibbonGraph, A: RelativeSubgraph | None, cell: ConfigCell) -> list[Face]:
    """Endpoint faces that survive in the Borel-Moore complex, with incidence signs."""
    verts, _ = _allowed(graph, A)
    allowed = set(verts)
    d = cell.dim
    faces = []
    offset = 0
    order = {v: i for i, v in enumerate(graph.vertices)}
    for e, k in cell.counts:
        tail, head = graph.edges[e]
        for end, vertex, p in (("tail", tail, offset), ("head", head, offset + k - 1)):
            if vertex in cell.vertices or vertex not in allowed:
                continue
            V = tuple(sorted(cell.vertices + (vertex,), key=order.__getitem__))
            counts = tuple((f, c - (f == e)) for f, c in cell.counts if c - (f == e))
            # outward normal placed last; the head end points outwards, the tail end inwards
            sign = (-1) ** (d - 1 - p) * (1 if end == "head" else -1)
            faces.append(Face(cell, e, end, sign, ConfigCell(V, counts)))
        offset += k
    return faces


# ------------------------------------------------------------------ oracles

@dataclass(frozen=True)
class TetheredCell:
    cell: ConfigCell
    marked: dict[int, Point] = field(compare=False)
    tether: tuple[Move, ...] = field(compare=False)


class CoefficientOracle:
    name = "abstract"
    params: SurfaceParams | None = None

    def deck(self, face: Face) -> HeisenbergElement | None:
        raise NotImplementedError


class TrivialOracle(CoefficientOracle):
    """Every deck element is the identity; boundary entries are plain integers."""

    name = "trivial"

    def deck(self, face: Face) -> None:
        return None


class StandardWedgeOracle(CoefficientOracle):
    """Heisenberg deck elements for ``standard_model(g, m)`` from its planar drawing.

    Base configuration: ``n`` points on ``A`` close to ``v1``. The tether of a
    cell sends the points, from left to right, to its sites in this order:
    ``v0`` (passing under ``A``), the points staying on ``A``, then the edge
    points edge by edge from the lowest crossing of a vertical line upwards,
    and finally ``v1`` (again under ``A``). Edge points climb vertically onto
    their edge, so no two tether paths meet.
    """

    name = "standard"

    def __init__(self, g: int, m: int, n: int):
        self.params = SurfaceParams(g, m)
        self.n = n
        self.graph, self.A = standard_model(g, m)
        self.model = PlanarModel(self.params, n)
        self._cache: dict[ConfigCell, TetheredCell] = {}

    def check_graph(self, graph: RibbonGraph) -> None:
        if graph != self.graph:
            raise ValueError("the standard wedge oracle only handles its own standard model graph")

    # sites in tether order: ("v0",), ("A",), (edge,), ("v1",)
    def _sites(self, cell: ConfigCell) -> list[str]:
        sites = []
        if "v0" in cell.vertices:
            sites.append("v0")
        sites += ["A"] * cell.count("A")
        for e in self.model.hit_order():
            sites += [e] * cell.count(e)
        if "v1" in cell.vertices:
            sites.append("v1")
        return sites

    def tethered(self, cell: ConfigCell) -> TetheredCell:
        if cell in self._cache:
            return self._cache[cell]
        if cell.size != self.n:
            raise ValueError(f"cell {cell} does not hold {self.n} points")
        base = self.model.base()
        path: list[Move] = []
        marked = dict(base)
        for pid, site in zip(sorted(base), self._sites(cell)):
            x, y0 = base[pid]
            if site == "A":
                continue
            if site in ("v0", "v1"):
                target = self.model.v0 if site == "v0" else self.model.v1
                path += [Seg(pid, (x, BELOW_A)), Seg(pid, (target[0], BELOW_A)), Seg(pid, target)]
                marked[pid] = target
            else:
                P = self.model.hit(site, x)
                path.append(Seg(pid, P))
                marked[pid] = P
        tc = TetheredCell(cell, marked, tuple(path))
        self._cache[cell] = tc
        return tc

    def _occupants(self, positions: dict[int, Point]) -> dict[str, list[int]]:
        """Points on each edge, sorted by position along the edge."""
        out: dict[str, list[tuple]] = {}
        for pid, P in positions.items():
            if P in (self.model.v0, self.model.v1):
                out.setdefault("v0" if P == self.model.v0 else "v1", []).append(((0, 0), pid))
                continue
            for e, line in self.model.edges.items():
                if line.contains(P):
                    out.setdefault(e, []).append((line.locate(P), pid))
                    break
            else:
                raise ValueError(f"point {pid} at {P} is not on the graph")
        return {e: [pid for _, pid in sorted(v)] for e, v in out.items()}

    def face_loop(self, face: Face) -> tuple[list[Move], dict[int, Point]]:
        """Closed path ``tether(E) · inside(E -> F) · tether(F)^-1`` from the base configuration."""
        E = self.tethered(face.cell)
        F = self.tethered(face.target)
        start = self.model.base()
        path = list(E.tether)
        pos = dict(E.marked)
        occ = self._occupants(pos)
        line = self.model.edges[face.edge]
        movers = occ[face.edge]
        pid = movers[0] if face.end == "tail" else movers[-1]
        vertex = line.nodes[0] if face.end == "tail" else line.nodes[-1]
        exit_path = line.along(pid, pos[pid], vertex)
        path += exit_path
        pos[pid] = vertex
        # slide everything inside F to its marked configuration
        here = self._occupants(pos)
        there = self._occupants(F.marked)
        to_f: dict[int, int] = {}
        for site, pids in here.items():
            targets = there.get(site, [])
            if len(targets) != len(pids):
                raise AssertionError(f"face {face.target} does not match the configuration after the exit")
            for a, b in zip(pids, targets):
                to_f[b] = a
            if site in ("v0", "v1"):
                continue
            ln = self.model.edges[site]
            key = lambda P: ln.locate(P)  # noqa: E731
            pairs = [(a, pos[a], F.marked[b]) for a, b in zip(pids, targets)]
            forward = sorted((p for p in pairs if key(p[2]) > key(p[1])), key=lambda p: key(p[1]), reverse=True)
            backward = sorted((p for p in pairs if key(p[2]) < key(p[1])), key=lambda p: key(p[1]))
            for a, P, Q in forward + backward:
                path += ln.along(a, P, Q)
                pos[a] = Q
        path += relabel(reverse_path(F.tether, start), to_f)
        return path, start

    def deck(self, face: Face) -> HeisenbergElement:
        path, start = self.face_loop(face)
        k, x = self.model.tracker(start).run(path).image()
        return HeisenbergElement(k, x, self.params)


# ------------------------------------------------------------------ complex

@dataclass
class BMComplex:
    """Graded cells and boundary matrices; entries are ints or group ring elements."""

    graph: RibbonGraph
    A: RelativeSubgraph | None
    n: int
    oracle: CoefficientOracle
    cells: dict[int, list[ConfigCell]]
    boundaries: dict[int, dict[tuple[int, int], object]]

    @property
    def relative(self) -> bool:
        return self.A is not None and not self.A.is_empty()

    @property
    def params(self) -> SurfaceParams | None:
        return self.oracle.params

    @cached_property
    def index(self) -> dict[ConfigCell, int]:
        out = {}
        for cells in self.cells.values():
            for i, c in enumerate(cells):
                out[c] = i
        return out

    def dims(self) -> list[int]:
        return sorted(self.cells)

    def count(self, k: int) -> int:
        return len(self.cells.get(k, []))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(c) for k, c in self.cells.items())

    def boundary(self, k: int) -> dict[tuple[int, int], object]:
        """Sparse matrix of ``∂_k``: keys ``(row of (k-1)-cell, column of k-cell)``."""
        if k < 0 or k > self.n:
            raise ValueError(f"dimension {k} out of range 0..{self.n}")
        return self.boundaries.get(k, {})

    def dense(self, k: int) -> list[list[object]]:
        rows, cols = self.count(k - 1), self.count(k)
        zero = 0 if self.params is None else GroupRingElement.zero(self.params)
        M = [[zero] * cols for _ in range(rows)]
        for (i, j), v in self.boundary(k).items():
            M[i][j] = v
        return M

    def composite(self, k: int) -> dict[tuple[int, int], object]:
        """Nonzero entries of ``∂_{k-1} ∘ ∂_k``."""
        upper, lower = self.boundary(k), self.boundary(k - 1)
        by_row: dict[int, list[tuple[int, object]]] = {}
        for (i, j), v in lower.items():
            by_row.setdefault(j, []).append((i, v))
        acc: dict[tuple[int, int], object] = {}
        for (f, e), v in upper.items():
            for g, w in by_row.get(f, []):
                acc[(g, e)] = acc.get((g, e), 0) + w * v
        return {key: v for key, v in acc.items() if v != 0}

    def is_chain_complex(self) -> bool:
        return all(not self.composite(k) for k in range(2, self.n + 1))


def build_complex(
    graph: RibbonGraph,
    n: int,
    A: RelativeSubgraph | None = None,
    oracle: CoefficientOracle | None = None,
) -> BMComplex:
    """Assemble the complex; ``A`` selects the relative version."""
    oracle = oracle or TrivialOracle()
    if isinstance(oracle, StandardWedgeOracle):
        oracle.check_graph(graph)
        if oracle.n != n:
            raise ValueError("oracle was set up for a different number of points")
    cells = enumerate_cells(graph, A, n)
    index = {c: i for cs in cells.values() for i, c in enumerate(cs)}
    boundaries: dict[int, dict] = {}
    for k, cs in cells.items():
        if k == 0:
            continue
        M: dict[tuple[int, int], object] = {}
        for j, E in enumerate(cs):
            for face in cell_faces(graph, A, E):
                i = index[face.target]
                h = oracle.deck(face)
                entry = face.sign if h is None else GroupRingElement.monomial(h, face.sign)
                M[(i, j)] = M.get((i, j), 0) + entry
        boundaries[k] = {key: v for key, v in M.items() if v != 0}
    return BMComplex(graph, A, n, oracle, cells, boundaries)


def boundary_matrix(complex_: BMComplex, k: int) -> list[list[object]]:
    return complex_.dense(k)


def assign_tethers(complex_: BMComplex, oracle: CoefficientOracle | None = None) -> list[TetheredCell]:
    """Tethered lift of every cell, in cell order."""
    oracle = oracle or complex_.oracle
    if not isinstance(oracle, StandardWedgeOracle):
        raise ValueError("tethers are only defined for the standard wedge oracle")
    return [oracle.tethered(c) for k in complex_.dims() for c in complex_.cells[k]]


def loop_to_word(path: Sequence[Move], oracle: StandardWedgeOracle, start: dict[int, Point] | None = None) -> list[BraidLetter]:
    """Braid word with the same Heisenberg image as a closed path of points.

    Band passages become loop generators (latest passage first) and the net
    count of horizontal overtakings becomes a power of ``s1``.
    """
    start = oracle.model.base() if start is None else start
    tr = oracle.model.tracker(start).run(path)
    if sorted(tr.pos.values()) != sorted(start.values()):
        raise ValueError("path does not return to the base configuration")
    return tr.word()


def deck_coefficient(face: Face, oracle: CoefficientOracle) -> HeisenbergElement | None:
    return oracle.deck(face)
