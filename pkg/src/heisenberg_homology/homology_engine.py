"""Borel–Moore homology of assembled complexes under coefficient specializations.

Homology over the full group ring is out of reach in general, so a complex is
first pushed to numbers: ``TrivialInt`` sends every group element to 1,
``Scalar`` to a rational character with ``u = ±1``, and ``Linearized`` to the
integer block of left translation on ``H ⊕ Z``. Ranks and torsion then come
from exact elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Union

from .config_complex import BMComplex
from .heisenberg_core import GroupRingElement, HeisenbergElement, SurfaceParams, central_exponent, linearized_rep

__all__ = [
    "TrivialInt",
    "Scalar",
    "Linearized",
    "Specialization",
    "parse_specialization",
    "specialize",
    "smith_normal_form",
    "SmithResult",
    "rank_over_q",
    "HomologyReport",
    "bm_homology",
    "concentration_report",
    "predicted_rank",
]


@dataclass(frozen=True)
class TrivialInt:
    """Every group element goes to 1; integer coefficients."""

    name = "trivial"
    field = False

    def dim(self, params: SurfaceParams | None) -> int:
        return 1

    def __str__(self) -> str:
        return "trivial"


@dataclass(frozen=True)
class Scalar:
    """One-dimensional rational character: ``u -> eps`` and generator values."""

    u: int = 1
    values: tuple[tuple[str, Fraction], ...] = ()
    name = "scalar"
    field = True

    def __post_init__(self) -> None:
        if self.u not in (1, -1):
            raise ValueError("a one-dimensional representation needs u^2 = 1, so u must be +1 or -1")
        vals = tuple((lab, Fraction(v)) for lab, v in self.values)
        for lab, v in vals:
            if v == 0:
                raise ValueError(f"value of {lab} must be invertible")
        object.__setattr__(self, "values", vals)

    @classmethod
    def of(cls, u: int = 1, **values) -> Scalar:
        return cls(u, tuple(sorted(values.items())))

    def dim(self, params: SurfaceParams | None) -> int:
        return 1

    def value(self, key: tuple[int, tuple[int, ...]], params: SurfaceParams) -> Fraction:
        k, x = key
        table = dict(self.values)
        unknown = set(table) - set(params.labels)
        if unknown:
            raise ValueError(f"unknown generators {sorted(unknown)}")
        out = Fraction(self.u) ** central_exponent(k, x, params.g)
        for lab, p in zip(params.labels, x):
            if p:
                out *= table.get(lab, Fraction(1)) ** p
        return out

    def __str__(self) -> str:
        body = ",".join([f"u={self.u}"] + [f"{k}={v}" for k, v in self.values])
        return f"scalar:{body}"


@dataclass(frozen=True)
class Linearized:
    """Each group element becomes its ``(rank + 2)``-square translation matrix."""

    params: SurfaceParams | None = None
    name = "linearized"
    field = False

    def dim(self, params: SurfaceParams | None) -> int:
        p = self.params or params
        if p is None:
            raise ValueError("the linearized representation needs surface parameters")
        return p.rank + 2

    def __str__(self) -> str:
        return "linearized"


Specialization = Union[TrivialInt, Scalar, Linearized]


def parse_specialization(text: str) -> Specialization:
    """``trivial``, ``linearized`` or ``scalar:u=-1,a1=2,b1=1/3``."""
    text = text.strip()
    if text == "trivial":
        return TrivialInt()
    if text == "linearized":
        return Linearized()
    if text.startswith("scalar"):
        u, vals = 1, {}
        rest = text[len("scalar"):].lstrip(":")
        for item in filter(None, rest.split(",")):
            if "=" not in item:
                raise ValueError(f"expected name=value, got {item!r}")
            k, v = (s.strip() for s in item.split("=", 1))
            if k == "u":
                u = int(v)
            else:
                vals[k] = Fraction(v)
        return Scalar.of(u, **vals)
    raise ValueError(f"unknown coefficient system {text!r}")


# ------------------------------------------------------------ specialize

def _entry(entry, s: Specialization, params: SurfaceParams | None, d: int):
    """Specialized value of one matrix entry: a number, or a ``d x d`` block."""
    if isinstance(entry, HeisenbergElement):
        entry = GroupRingElement.monomial(entry)
    if isinstance(s, TrivialInt):
        return entry.augmentation() if isinstance(entry, GroupRingElement) else int(entry)
    if isinstance(s, Scalar):
        if not isinstance(entry, GroupRingElement):
            return Fraction(entry)
        return sum((c * s.value(key, entry.params) for key, c in entry.terms.items()), Fraction(0))
    block = [[0] * d for _ in range(d)]
    if not isinstance(entry, GroupRingElement):
        for i in range(d):
            block[i][i] = int(entry)
        return block
    for h, c in entry.items():
        R = linearized_rep(h)
        for i in range(d):
            for j in range(d):
                block[i][j] += c * R[i][j]
    return block


def specialize(cx: BMComplex, s: Specialization) -> dict[int, list[list]]:
    """Numeric boundary matrices ``{k: rows x cols}``, rows indexed by ``(k-1)``-cells."""
    params = cx.params
    if isinstance(s, Linearized) and s.params is not None and params is not None and s.params != params:
        raise ValueError("linearized specialization built for a different surface")
    d = s.dim(params)
    out: dict[int, list[list]] = {}
    zero = Fraction(0) if isinstance(s, Scalar) else 0
    for k in range(1, cx.n + 1):
        rows, cols = cx.count(k - 1) * d, cx.count(k) * d
        M = [[zero] * cols for _ in range(rows)]
        for (i, j), v in cx.boundary(k).items():
            val = _entry(v, s, params, d)
            if d == 1:
                M[i][j] = val
            else:
                for a in range(d):
                    for b in range(d):
                        M[i * d + a][j * d + b] = val[a][b]
        out[k] = M
    return out


# ---------------------------------------------------------- linear algebra

@dataclass(frozen=True)
class SmithResult:
    factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(f for f in self.factors if f > 1)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def _combine(x: dict[int, int], y: dict[int, int], cx: int, cy: int) -> dict[int, int]:
    out = {}
    for j in x.keys() | y.keys():
        v = cx * x.get(j, 0) + cy * y.get(j, 0)
        if v:
            out[j] = v
    return out


def smith_normal_form(M: list[list[int]]) -> SmithResult:
    """Nonzero invariant factors ``d1 | d2 | ...`` of an integer matrix.

    Sparse elimination with unimodular 2x2 row and column steps, so every
    pivot ends up as the gcd of what it absorbed.
    """
    rows = {i: {j: int(v) for j, v in enumerate(r) if v} for i, r in enumerate(M)}
    rows = {i: r for i, r in rows.items() if r}
    diag: list[int] = []
    while rows:
        pi, pj, _ = min(((i, j, v) for i, r in rows.items() for j, v in r.items()), key=lambda t: abs(t[2]))
        while True:
            P = rows.pop(pi)
            # clear column pj with row steps
            for i in [i for i, r in rows.items() if pj in r]:
                a, b = P[pj], rows[i][pj]
                g, s, t = _xgcd(a, b)
                P, R = _combine(P, rows[i], s, t), _combine(rows[i], P, a // g, -(b // g))
                if R:
                    rows[i] = R
                else:
                    del rows[i]
            # clear row pj with column steps; these may refill column pj
            refill = False
            for j in [j for j in P if j != pj]:
                a, b = P[pj], P.get(j, 0)
                if not b:
                    continue
                if b % a == 0:
                    q = b // a
                    for r in rows.values():
                        if pj in r:
                            v = r.get(j, 0) - q * r[pj]
                            if v:
                                r[j] = v
                            else:
                                r.pop(j, None)
                    del P[j]
                    continue
                g, s, t = _xgcd(a, b)
                for r in list(rows.values()) + [P]:
                    x, y = r.get(pj, 0), r.get(j, 0)
                    if not x and not y:
                        continue
                    nx, ny = s * x + t * y, (a // g) * y - (b // g) * x
                    for col, v in ((pj, nx), (j, ny)):
                        if v:
                            r[col] = v
                        else:
                            r.pop(col, None)
                refill = True
            rows = {i: r for i, r in rows.items() if r}
            if not refill or not any(pj in r for r in rows.values()):
                diag.append(abs(P[pj]))
                break
            rows[pi] = P
        # column pj and the pivot row are now clear
    return SmithResult(_normalize(diag))


def _normalize(diag: list[int]) -> tuple[int, ...]:
    d = sorted(diag)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return tuple(sorted(d))


def rank_over_q(M: list[list]) -> int:
    """Rank of a rational matrix by exact Gaussian elimination."""
    rows = [{j: Fraction(v) for j, v in enumerate(r) if v} for r in M]
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        r = rows.pop()
        pj = min(r)
        pv = r[pj]
        rank += 1
        nxt = []
        for s in rows:
            if pj in s:
                f = s[pj] / pv
                for j, v in r.items():
                    nv = s.get(j, 0) - f * v
                    if nv:
                        s[j] = nv
                    else:
                        s.pop(j, None)
            if s:
                nxt.append(s)
        rows = nxt
    return rank


# -------------------------------------------------------------- homology

@dataclass(frozen=True)
class HomologyReport:
    """Per-degree ranks (free rank or dimension) and torsion factors."""

    coefficients: str
    n: int
    chain_ranks: tuple[int, ...]
    ranks: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    over_field: bool
    euler_cells: int = 0
    dim_w: int = 1
    notes: tuple[str, ...] = field(default=())

    def euler(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))

    def consistent(self) -> bool:
        return all(r >= 0 for r in self.ranks) and self.euler() == self.dim_w * self.euler_cells

    def lines(self) -> list[str]:
        out = []
        for k, r in enumerate(self.ranks):
            tors = self.torsion[k]
            t = " torsion " + " ".join(f"Z/{f}" for f in tors) if tors else ""
            out.append(f"H_{k}: rank {r}{t}")
        return out

    def to_dict(self) -> dict:
        return {
            "coefficients": self.coefficients,
            "n": self.n,
            "chain_ranks": list(self.chain_ranks),
            "ranks": list(self.ranks),
            "torsion": [list(t) for t in self.torsion],
            "over_field": self.over_field,
            "euler_characteristic": self.euler(),
        }


def bm_homology(cx: BMComplex, s: Specialization | None = None) -> HomologyReport:
    """Homology of the specialized complex in degrees ``0..n``."""
    s = s or TrivialInt()
    d = s.dim(cx.params)
    mats = specialize(cx, s)
    top = cx.n
    chain = [cx.count(k) * d for k in range(top + 1)]
    rank_d = [0] * (top + 2)
    tors_d: list[tuple[int, ...]] = [()] * (top + 2)
    for k in range(1, top + 1):
        if not chain[k] or not chain[k - 1]:
            continue
        if s.field:
            rank_d[k] = rank_over_q(mats[k])
        else:
            res = smith_normal_form(mats[k])
            rank_d[k], tors_d[k] = res.rank, res.torsion
    ranks = tuple(chain[k] - rank_d[k] - rank_d[k + 1] for k in range(top + 1))
    torsion = tuple(tors_d[k + 1] for k in range(top + 1))
    return HomologyReport(str(s), cx.n, tuple(chain), ranks, torsion, s.field, cx.euler_characteristic(), d)


def predicted_rank(g: int, m: int, n: int) -> int:
    """Free rank of the relative top homology of the standard model."""
    return comb(2 * g + m + n - 2, n)


def concentration_report(cx: BMComplex) -> int:
    """Check that a relative complex has only top-degree cells; return their number."""
    if not cx.relative:
        raise AssertionError("concentration holds for relative complexes only")
    stray = {k: len(c) for k, c in cx.cells.items() if c and k != cx.n}
    if stray:
        raise AssertionError(f"cells outside degree {cx.n}: {stray}")
    return cx.count(cx.n)
