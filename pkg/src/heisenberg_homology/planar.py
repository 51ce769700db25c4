"""Planar picture of the standard surface model and a braid evaluator for it.

The surface is drawn as the plane with one band per non-``A`` edge. Edge ``e``
leaves ``v1 = (1, 0)``, climbs to a tab at ``(s_e, 1)-(s_e, 2)``, passes
through its band, reappears at ``(f_e, 2)`` and comes down to ``v0 = (0, 0)``.
``A`` is the segment from ``v0`` to ``v1``.

Paths are sequences of moves of single points: straight segments, or a jump
through a band from one tab tip to the other. A jump is drawn as an arch that
passes above every other point. The evaluator returns the Heisenberg image of
the braid traced out: the central coordinate counts signed overtakings in the
horizontal direction, and each band passage contributes the homology class of
its edge, later passages multiplied on the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .heisenberg_core import BraidLetter, SurfaceParams, _key_mul

Point = tuple[Fraction, Fraction]

ARCH_HEIGHT = Fraction(100)
BELOW_A = Fraction(-1, 10)


def pt(x, y) -> Point:
    """Exact point; floats are read through their shortest decimal form."""
    conv = lambda v: Fraction(str(v)) if isinstance(v, float) else Fraction(v)  # noqa: E731
    return (conv(x), conv(y))


@dataclass(frozen=True)
class Seg:
    pid: int
    dest: Point


@dataclass(frozen=True)
class Jump:
    """Pass through the band of ``edge`` (``sign = -1`` traverses it backwards)."""

    pid: int
    edge: str
    sign: int
    dest: Point


Move = Seg | Jump


def _cross(ax, ay, bx, by):
    return ax * by - ay * bx


class Collision(RuntimeError):
    pass


class BraidTracker:
    """Follow moving points and accumulate the Heisenberg image of their braid."""

    def __init__(self, start: dict[int, Point], params: SurfaceParams, classes: dict[str, tuple[int, ...]]):
        self.pos = dict(start)
        self.params = params
        self.classes = classes
        self.crossings = 0
        self.key = (0, (0,) * params.rank)
        self.jumps: list[tuple[str, int]] = []

    def _slide(self, pid: int, dest: Point) -> None:
        p0 = self.pos[pid]
        if p0[0] != dest[0]:
            lo, hi = (p0[0], pid), (dest[0], pid)
            step = 1 if dest[0] > p0[0] else -1
            for q, f in self.pos.items():
                if q == pid:
                    continue
                c = (f[0], q)
                # ties in x are broken by point id, as if each point were nudged by id * epsilon
                if lo < c < hi or hi < c < lo:
                    t = (f[0] - p0[0]) / (dest[0] - p0[0])
                    y = p0[1] + t * (dest[1] - p0[1])
                    if y == f[1]:
                        raise Collision(f"point {pid} runs into point {q} at {f}")
                    self.crossings -= step * (1 if y > f[1] else -1)
        else:
            for q, f in self.pos.items():
                if q != pid and f[0] == p0[0] and min(p0[1], dest[1]) <= f[1] <= max(p0[1], dest[1]):
                    raise Collision(f"point {pid} runs into point {q} at {f}")
        self.pos[pid] = dest

    def apply(self, move: Move) -> None:
        if isinstance(move, Seg):
            self._slide(move.pid, move.dest)
            return
        p = self.pos[move.pid]
        for q in ((p[0], ARCH_HEIGHT), (move.dest[0], ARCH_HEIGHT), move.dest):
            self._slide(move.pid, q)
        vec = tuple(move.sign * c for c in self.classes[move.edge])
        self.key = _key_mul((0, vec), self.key, self.params.g)
        self.jumps.append((move.edge, move.sign))

    def run(self, moves: Iterable[Move]) -> BraidTracker:
        for mv in moves:
            self.apply(mv)
        return self

    def image(self) -> tuple[int, tuple[int, ...]]:
        return (self.key[0] + self.crossings, self.key[1])

    def word(self) -> list[BraidLetter]:
        """A braid word with the same Heisenberg image, read left to right."""
        out = []
        for edge, sign in reversed(self.jumps):
            out.append(BraidLetter(edge[0], int(edge[1:]), sign))
        k = self.crossings
        out += [BraidLetter("s", 1, 1 if k > 0 else -1)] * abs(k)
        return out


def end_positions(path: Sequence[Move], start: dict[int, Point]) -> dict[int, Point]:
    pos = dict(start)
    for mv in path:
        pos[mv.pid] = mv.dest
    return pos


def reverse_path(path: Sequence[Move], start: dict[int, Point]) -> list[Move]:
    pos = dict(start)
    hist = []
    for mv in path:
        hist.append((mv, pos[mv.pid]))
        pos[mv.pid] = mv.dest
    out: list[Move] = []
    for mv, back in reversed(hist):
        if isinstance(mv, Seg):
            out.append(Seg(mv.pid, back))
        else:
            out.append(Jump(mv.pid, mv.edge, -mv.sign, back))
    return out


def relabel(path: Sequence[Move], mapping: dict[int, int]) -> list[Move]:
    out: list[Move] = []
    for mv in path:
        if isinstance(mv, Seg):
            out.append(Seg(mapping[mv.pid], mv.dest))
        else:
            out.append(Jump(mapping[mv.pid], mv.edge, mv.sign, mv.dest))
    return out


def _seg_intersection(p: Point, q: Point, r: Point, s: Point):
    dx, dy = q[0] - p[0], q[1] - p[1]
    ex, ey = s[0] - r[0], s[1] - r[1]
    den = _cross(dx, dy, ex, ey)
    if den == 0:
        return None
    t = _cross(r[0] - p[0], r[1] - p[1], ex, ey) / den
    u = _cross(r[0] - p[0], r[1] - p[1], dx, dy) / den
    if 0 <= t <= 1 and 0 <= u <= 1:
        if not (0 < t < 1 and 0 < u < 1):
            raise ValueError(f"degenerate intersection of {p}-{q} with {r}-{s}")
        return t, u
    return None


@dataclass(frozen=True)
class Polyline:
    """Open or closed chain of points; ``links[i]`` marks a band jump from node i to i+1."""

    nodes: tuple[Point, ...]
    links: tuple[tuple[str, int] | None, ...]
    closed: bool = False

    def __post_init__(self) -> None:
        expected = len(self.nodes) if self.closed else len(self.nodes) - 1
        if len(self.links) != expected:
            raise ValueError("need one link entry per segment")

    @classmethod
    def make(cls, pts: Sequence, links: Sequence | None = None, closed: bool = False) -> Polyline:
        nodes = tuple(pt(*p) for p in pts)
        n = len(nodes) if closed else len(nodes) - 1
        links = tuple(links) if links is not None else (None,) * n
        return cls(nodes, links, closed)

    def segments(self) -> Iterable[tuple[int, Point, Point]]:
        n = len(self.nodes)
        count = n if self.closed else n - 1
        for i in range(count):
            if self.links[i] is None:
                yield i, self.nodes[i], self.nodes[(i + 1) % n]

    def locate(self, P: Point) -> tuple[int, Fraction]:
        """Segment index and parameter of a point lying on the chain."""
        for i, p, q in self.segments():
            if _cross(q[0] - p[0], q[1] - p[1], P[0] - p[0], P[1] - p[1]) == 0:
                k = 0 if q[0] != p[0] else 1
                t = (P[k] - p[k]) / (q[k] - p[k])
                if 0 <= t <= 1:
                    return (i, t)
        raise ValueError(f"{P} is not on the chain")

    def contains(self, P: Point) -> bool:
        try:
            self.locate(P)
            return True
        except ValueError:
            return False

    def point_at(self, i: int, t) -> Point:
        p, q = self.nodes[i], self.nodes[(i + 1) % len(self.nodes)]
        t = Fraction(t)
        return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))

    def along(self, pid: int, P: Point, Q: Point) -> list[Move]:
        """Moves carrying point ``pid`` from ``P`` to ``Q`` along an open chain."""
        (i, s), (j, t) = self.locate(P), self.locate(Q)
        out: list[Move] = []
        if (i, s) <= (j, t):
            for k in range(i + 1, j + 1):
                lk = self.links[k - 1]
                out.append(Jump(pid, lk[0], lk[1], self.nodes[k]) if lk else Seg(pid, self.nodes[k]))
        else:
            for k in range(i, j, -1):
                lk = self.links[k]
                out.append(Jump(pid, lk[0], -lk[1], self.nodes[k]) if lk else Seg(pid, self.nodes[k]))
        out.append(Seg(pid, Q))
        return out

    def vertical_hits(self, x: Fraction) -> list[Point]:
        """Points of the chain on the vertical line through ``x``, lowest first."""
        hits = []
        for _, p, q in self.segments():
            if p[0] == q[0]:
                continue
            lo, hi = sorted((p[0], q[0]))
            if lo < x < hi:
                t = (x - p[0]) / (q[0] - p[0])
                hits.append((p[1] + t * (q[1] - p[1]), (x, p[1] + t * (q[1] - p[1]))))
        return [h for _, h in sorted(hits)]


def twist_path(path: Sequence[Move], curve: Polyline, start: dict[int, Point]) -> list[Move]:
    """Image of a path under the Dehn twist about a closed chain.

    Each time a moving point crosses the curve it makes one full trip around
    the curve, turning right onto it.
    """
    if not curve.closed:
        raise ValueError("twist curve must be closed")
    nodes, links = curve.nodes, curve.links
    N = len(nodes)
    out: list[Move] = []
    pos = dict(start)
    for mv in path:
        if isinstance(mv, Jump):
            out.append(mv)
            pos[mv.pid] = mv.dest
            continue
        pid, q = mv.pid, mv.dest
        p = pos[pid]
        hits = []
        for k, r, s in curve.segments():
            it = _seg_intersection(p, q, r, s)
            if it:
                hits.append((it[0], k))
        hits.sort()
        for t, k in hits:
            X = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
            out.append(Seg(pid, X))
            r, s = nodes[k], nodes[(k + 1) % N]
            forward = _cross(q[0] - p[0], q[1] - p[1], s[0] - r[0], s[1] - r[1]) < 0
            if forward:
                cur = (k + 1) % N
                out.append(Seg(pid, nodes[cur]))
                for _ in range(N - 1):
                    lk, nxt = links[cur], (cur + 1) % N
                    out.append(Jump(pid, lk[0], lk[1], nodes[nxt]) if lk else Seg(pid, nodes[nxt]))
                    cur = nxt
            else:
                cur = k
                out.append(Seg(pid, nodes[cur]))
                for _ in range(N - 1):
                    prv = (cur - 1) % N
                    lk = links[prv]
                    out.append(Jump(pid, lk[0], -lk[1], nodes[prv]) if lk else Seg(pid, nodes[prv]))
                    cur = prv
            out.append(Seg(pid, X))
        out.append(mv)
        pos[pid] = q
    return out


def path_to_polyline(path: Sequence[Move], start: Point) -> Polyline:
    """Trace of a single point's path as an open chain."""
    nodes, links = [start], []
    for mv in path:
        if isinstance(mv, Seg):
            if mv.dest == nodes[-1]:
                continue
            links.append(None)
        else:
            links.append((mv.edge, mv.sign))
        nodes.append(mv.dest)
    # merge collinear consecutive plain segments
    i = 1
    while i < len(nodes) - 1:
        a, b, c = nodes[i - 1], nodes[i], nodes[i + 1]
        if links[i - 1] is None and links[i] is None and _cross(b[0] - a[0], b[1] - a[1], c[0] - b[0], c[1] - b[1]) == 0 \
                and (b[0] - a[0]) * (c[0] - b[0]) + (b[1] - a[1]) * (c[1] - b[1]) > 0:
            del nodes[i]
            del links[i - 1]
        else:
            i += 1
    return Polyline(tuple(nodes), tuple(links))


class PlanarModel:
    """Planar drawing of ``standard_model(g, m)`` with ``n`` base points on ``A``."""

    def __init__(self, params: SurfaceParams, n: int):
        self.params = params
        self.n = n
        labels = params.labels
        N = len(labels)
        g, m = params.g, params.m
        at_v1 = [f"a{r}" if k == 0 else f"b{r}" for r in range(1, g + 1) for k in (0, 1)]
        at_v1 += [f"c{t}" for t in range(1, m)]
        at_v0 = [f"c{t}" for t in range(m - 1, 0, -1)]
        for r in range(g, 0, -1):
            at_v0 += [f"a{r}", f"b{r}"]
        # tab positions, right to left in the order the edges leave v1 and enter v0
        self.s_x = {e: Fraction(4, 5) - Fraction(2, 5) * i / max(N, 1) for i, e in enumerate(at_v1)}
        self.f_x = {e: Fraction(2, 5) - Fraction(3, 10) * j / max(N, 1) for j, e in enumerate(at_v0)}
        self.v0: Point = (Fraction(0), Fraction(0))
        self.v1: Point = (Fraction(1), Fraction(0))
        self.edges: dict[str, Polyline] = {}
        for e in labels:
            s, f = self.s_x[e], self.f_x[e]
            self.edges[e] = Polyline(
                (self.v1, (s, Fraction(1)), (s, Fraction(2)), (f, Fraction(2)), (f, Fraction(1)), self.v0),
                (None, None, (e, 1), None, None),
            )
        self.edges["A"] = Polyline((self.v0, self.v1), (None,))
        self.classes = {e: params.basis_vector(e) for e in labels}
        right = max(self.s_x.values(), default=Fraction(4, 5))
        self.base_x = [right + (1 - right) * Fraction(2 * i + 1, 2 * n) for i in range(n)]

    def base(self) -> dict[int, Point]:
        return {i + 1: (x, Fraction(0)) for i, x in enumerate(self.base_x)}

    def tracker(self, start: dict[int, Point] | None = None) -> BraidTracker:
        return BraidTracker(self.base() if start is None else start, self.params, self.classes)

    def hit(self, edge: str, x: Fraction) -> Point:
        """Where the vertical line through ``x`` meets the rising part of ``edge``."""
        s = self.s_x[edge]
        return (x, (1 - x) / (1 - s))

    def hit_order(self) -> list[str]:
        """Edges by the height at which a vertical line near ``v1`` meets them."""
        return sorted(self.s_x, key=lambda e: self.s_x[e])
