"""Discrete Heisenberg group of a surface, its integral group ring, and the braid map.

Elements are pairs ``(k, x)`` where ``k`` is the central coordinate and ``x`` a
first-homology vector in the ordered basis ``a1..ag, b1..bg, c1..c_{m-1}``.
The product is ``(k, x)(l, y) = (k + l + x.y, x + y)`` with ``a_r.b_r = +1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "SurfaceParams",
    "HeisenbergElement",
    "GroupRingElement",
    "BraidLetter",
    "RelationReport",
    "intersection_form",
    "h_mul",
    "h_inv",
    "gr_add",
    "gr_mul",
    "parse_word",
    "phi_eval",
    "relation_instances",
    "check_relations",
    "linearized_rep",
    "render_monomial",
]


@dataclass(frozen=True)
class SurfaceParams:
    """Genus ``g`` and number of boundary components ``m`` of a surface."""

    g: int
    m: int = 1

    def __post_init__(self) -> None:
        if not (isinstance(self.g, int) and isinstance(self.m, int)):
            raise TypeError("g and m must be integers")
        if self.g < 0 or self.m < 1:
            raise ValueError(f"need g >= 0 and m >= 1, got g={self.g}, m={self.m}")

    @property
    def rank(self) -> int:
        """Rank of the first homology group, ``2g + m - 1``."""
        return 2 * self.g + self.m - 1

    @property
    def labels(self) -> list[str]:
        g, m = self.g, self.m
        return (
            [f"a{r}" for r in range(1, g + 1)]
            + [f"b{r}" for r in range(1, g + 1)]
            + [f"c{t}" for t in range(1, m)]
        )

    def index(self, label: str) -> int:
        """Position of a basis label such as ``"b2"`` in the coordinate vector."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"no generator {label!r} on a surface with g={self.g}, m={self.m}") from None

    def basis_vector(self, label: str, power: int = 1) -> tuple[int, ...]:
        x = [0] * self.rank
        x[self.index(label)] = power
        return tuple(x)

    def form_matrix(self) -> list[list[int]]:
        """Matrix ``J`` of the intersection form in the ordered basis."""
        n, g = self.rank, self.g
        J = [[0] * n for _ in range(n)]
        for r in range(g):
            J[r][g + r] = 1
            J[g + r][r] = -1
        return J


def _form(x: Sequence[int], y: Sequence[int], g: int) -> int:
    s = 0
    for r in range(g):
        s += x[r] * y[g + r] - x[g + r] * y[r]
    return s


def intersection_form(x: Sequence[int], y: Sequence[int], params: SurfaceParams) -> int:
    """Algebraic intersection number ``x.y``; ``a_r.b_r = 1`` and the ``c_t`` pair to zero."""
    if len(x) != params.rank or len(y) != params.rank:
        raise ValueError(f"expected vectors of length {params.rank}, got {len(x)} and {len(y)}")
    return _form(x, y, params.g)


def _key_mul(p: tuple[int, tuple[int, ...]], q: tuple[int, tuple[int, ...]], g: int):
    x, y = p[1], q[1]
    return (p[0] + q[0] + _form(x, y, g), tuple(a + b for a, b in zip(x, y)))


@dataclass(frozen=True)
class HeisenbergElement:
    """A group element ``(k, x)``; immutable and hashable."""

    k: int
    x: tuple[int, ...]
    params: SurfaceParams

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", tuple(int(c) for c in self.x))
        if len(self.x) != self.params.rank:
            raise ValueError(f"homology vector has length {len(self.x)}, expected {self.params.rank}")

    @classmethod
    def identity(cls, params: SurfaceParams) -> HeisenbergElement:
        return cls(0, (0,) * params.rank, params)

    @classmethod
    def central(cls, params: SurfaceParams, k: int = 1) -> HeisenbergElement:
        """The power ``u^k`` of the central generator ``u = (1, 0)``."""
        return cls(k, (0,) * params.rank, params)

    @classmethod
    def generator(cls, params: SurfaceParams, label: str, power: int = 1) -> HeisenbergElement:
        """Lift ``(0, power * label)`` of a homology basis class."""
        return cls(0, params.basis_vector(label, power), params)

    @property
    def key(self) -> tuple[int, tuple[int, ...]]:
        return (self.k, self.x)

    def is_identity(self) -> bool:
        return self.k == 0 and not any(self.x)

    def inverse(self) -> HeisenbergElement:
        return HeisenbergElement(-self.k, tuple(-c for c in self.x), self.params)

    def __mul__(self, other: HeisenbergElement) -> HeisenbergElement:
        if not isinstance(other, HeisenbergElement):
            return NotImplemented
        return h_mul(self, other)

    def __pow__(self, e: int) -> HeisenbergElement:
        # (k, x)^e = (e k, e x) because x.x = 0
        return HeisenbergElement(e * self.k, tuple(e * c for c in self.x), self.params)

    def __str__(self) -> str:
        return render_monomial(self.k, self.x, self.params)

    def pair_str(self) -> str:
        """Pair notation, e.g. ``(2, a1+b1)``."""
        return f"({self.k}, {_vector_str(self.x, self.params)})"


def _check_same(a: HeisenbergElement | GroupRingElement, b: HeisenbergElement | GroupRingElement) -> None:
    if a.params != b.params:
        raise ValueError(f"surface mismatch: {a.params} vs {b.params}")


def h_mul(a: HeisenbergElement, b: HeisenbergElement) -> HeisenbergElement:
    _check_same(a, b)
    k, x = _key_mul(a.key, b.key, a.params.g)
    return HeisenbergElement(k, x, a.params)


def h_inv(a: HeisenbergElement) -> HeisenbergElement:
    return a.inverse()


# ---------------------------------------------------------------- rendering

def _vector_str(x: Sequence[int], params: SurfaceParams) -> str:
    parts = []
    for lab, c in zip(params.labels, x):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(("-" if c < 0 else "+") + mag + lab)
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s[0] == "+" else s


def central_exponent(k: int, x: Sequence[int], g: int) -> int:
    """Exponent ``e`` with ``(k, x) = u^e · a1^p1 · b1^q1 ··· c^...`` (ordered product)."""
    return k - sum(x[r] * x[g + r] for r in range(g))


def render_monomial(k: int, x: Sequence[int], params: SurfaceParams, coeff: int = 1) -> str:
    """Render ``coeff * (k, x)`` in normal form, e.g. ``-u^7·a1^2·b1^-2``.

    The displayed ordered product of factors equals ``(k, x)`` exactly.
    """
    e = central_exponent(k, x, params.g)
    factors = []
    if e:
        factors.append("u" if e == 1 else f"u^{e}")
    for lab, p in zip(params.labels, x):
        if p:
            factors.append(lab if p == 1 else f"{lab}^{p}")
    body = "·".join(factors)
    if not body:
        return str(coeff)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return f"{coeff}·{body}"


_FACTOR = re.compile(r"(u|[abc]\d*)(?:\^\(?(-?\d+)\)?)?")


def _parse_term(text: str, params: SurfaceParams) -> tuple[int, tuple[int, tuple[int, ...]]]:
    t = text.replace("·", "").replace("*", "").replace(" ", "")
    m = re.match(r"(\d*)", t)
    coeff = int(m.group(1)) if m.group(1) else 1
    pos = m.end()
    key = (0, (0,) * params.rank)
    while pos < len(t):
        f = _FACTOR.match(t, pos)
        if not f:
            raise ValueError(f"cannot parse monomial factor at {t[pos:]!r}")
        name, power = f.group(1), int(f.group(2) or 1)
        if name in "abc":
            name += "1"
        if name == "u":
            factor = (power, (0,) * params.rank)
        else:
            factor = (0, params.basis_vector(name, power))
        key = _key_mul(key, factor, params.g)
        pos = f.end()
    return coeff, key


# --------------------------------------------------------------- group ring

class GroupRingElement:
    """Finite integer combination of Heisenberg elements.

    Terms are stored as ``{(k, x): coefficient}`` with zero coefficients
    removed. Instances are treated as immutable.
    """

    __slots__ = ("params", "_terms", "_hash")

    def __init__(self, params: SurfaceParams, terms: Mapping | Iterable = ()):
        self.params = params
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, tuple[int, ...]], int] = {}
        for key, c in items:
            if isinstance(key, HeisenbergElement):
                key = key.key
            k, x = key
            x = tuple(x)
            if len(x) != params.rank:
                raise ValueError(f"homology vector has length {len(x)}, expected {params.rank}")
            acc[(k, x)] = acc.get((k, x), 0) + c
        self._terms = {key: c for key, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, params: SurfaceParams, terms: dict) -> GroupRingElement:
        obj = cls.__new__(cls)
        obj.params = params
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, params: SurfaceParams) -> GroupRingElement:
        return cls._raw(params, {})

    @classmethod
    def one(cls, params: SurfaceParams) -> GroupRingElement:
        return cls._raw(params, {(0, (0,) * params.rank): 1})

    @classmethod
    def monomial(cls, h: HeisenbergElement, coeff: int = 1) -> GroupRingElement:
        return cls(h.params, {h.key: coeff})

    @classmethod
    def parse(cls, text: str, params: SurfaceParams) -> GroupRingElement:
        """Parse a sum such as ``"-u + 1"`` or ``"-u^4·a1·b1^-1 + u^3·a1·b1^-1"``."""
        s = text.replace("−", "-").replace(" ", "")
        if not s:
            raise ValueError("empty group ring expression")
        # split at signs that do not belong to an exponent
        pieces, start = [], 0
        for i in range(1, len(s)):
            if s[i] in "+-" and s[i - 1] not in "^(":
                pieces.append(s[start:i])
                start = i
        pieces.append(s[start:])
        acc: dict = {}
        for piece in pieces:
            sign = -1 if piece.startswith("-") else 1
            piece = piece.lstrip("+-")
            c, key = _parse_term(piece, params)
            acc[key] = acc.get(key, 0) + sign * c
        return cls(params, acc)

    @property
    def terms(self) -> dict[tuple[int, tuple[int, ...]], int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[HeisenbergElement, int]]:
        for (k, x), c in self._terms.items():
            yield HeisenbergElement(k, x, self.params), c

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(0, (0,) * self.params.rank): 1}

    def augmentation(self) -> int:
        """Sum of coefficients, the image under every group element going to 1."""
        return sum(self._terms.values())

    def _coerce(self, other) -> GroupRingElement | None:
        if isinstance(other, GroupRingElement):
            _check_same(self, other)
            return other
        if isinstance(other, HeisenbergElement):
            _check_same(self, other)
            return GroupRingElement.monomial(other)
        if isinstance(other, int):
            return GroupRingElement(self.params, {(0, (0,) * self.params.rank): other})
        return None

    def __add__(self, other) -> GroupRingElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for key, c in o._terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return GroupRingElement._raw(self.params, out)

    __radd__ = __add__

    def __neg__(self) -> GroupRingElement:
        return GroupRingElement._raw(self.params, {key: -c for key, c in self._terms.items()})

    def __sub__(self, other) -> GroupRingElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> GroupRingElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> GroupRingElement:
        if isinstance(other, int):
            if other == 0:
                return GroupRingElement.zero(self.params)
            return GroupRingElement._raw(self.params, {key: c * other for key, c in self._terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        g = self.params.g
        out: dict = {}
        for p, c in self._terms.items():
            for q, d in o._terms.items():
                key = _key_mul(p, q, g)
                out[key] = out.get(key, 0) + c * d
        return GroupRingElement._raw(self.params, {key: c for key, c in out.items() if c})

    def __rmul__(self, other) -> GroupRingElement:
        if isinstance(other, int):
            return self * other
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = GroupRingElement(self.params, {(0, (0,) * self.params.rank): other})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.params == other.params and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.params, frozenset(self._terms.items())))
        return self._hash

    def map_elements(self, f) -> GroupRingElement:
        """Apply a group map ``(k, x) -> (k', x')`` to every term, linearly."""
        out: dict = {}
        for key, c in self._terms.items():
            new = f(key)
            out[new] = out.get(new, 0) + c
        return GroupRingElement._raw(self.params, {key: c for key, c in out.items() if c})

    def sorted_terms(self) -> list[tuple[tuple[int, tuple[int, ...]], int]]:
        g = self.params.g

        def order(item):
            (k, x), _ = item
            e = central_exponent(k, x, g)
            return (tuple(-abs(v) for v in x), x, -e)

        return sorted(self._terms.items(), key=order)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for (k, x), c in self.sorted_terms():
            s = render_monomial(k, x, self.params, c)
            if not out:
                out = s
            elif s.startswith("-"):
                out += " - " + s[1:]
            else:
                out += " + " + s
        return out

    def __repr__(self) -> str:
        return f"GroupRingElement({str(self)!r})"


def gr_add(p: GroupRingElement, q: GroupRingElement) -> GroupRingElement:
    return p + q


def gr_mul(p: GroupRingElement, q: GroupRingElement) -> GroupRingElement:
    return p * q


# --------------------------------------------------------------- braid words

@dataclass(frozen=True)
class BraidLetter:
    """A surface braid generator or its inverse.

    ``kind`` is ``"s"`` for the half twists, ``"a"``, ``"b"``, ``"c"`` for the
    loops of the first strand around the homology generators.
    """

    kind: str
    index: int
    exp: int = 1

    def __post_init__(self) -> None:
        if self.kind not in "sabc" or len(self.kind) != 1:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("generator indices start at 1")
        if self.exp not in (1, -1):
            raise ValueError("exponent must be +1 or -1")

    def inverse(self) -> BraidLetter:
        return BraidLetter(self.kind, self.index, -self.exp)

    def __str__(self) -> str:
        return f"{self.kind}{self.index}" + ("^-1" if self.exp < 0 else "")


_LETTER = re.compile(r"^([sabc])(\d+)(?:\^(-?1))?$")


def parse_word(text: str) -> list[BraidLetter]:
    """Parse a whitespace separated word such as ``"s1 b1^-1 s1 a1"``."""
    word = []
    for tok in text.split():
        m = _LETTER.match(tok)
        if not m:
            raise ValueError(f"bad braid letter {tok!r}")
        word.append(BraidLetter(m.group(1), int(m.group(2)), int(m.group(3) or 1)))
    return word


def inverse_word(word: Sequence[BraidLetter]) -> list[BraidLetter]:
    return [w.inverse() for w in reversed(word)]


def _letter_image(letter: BraidLetter, params: SurfaceParams, n: int | None) -> tuple[int, tuple[int, ...]]:
    if letter.kind == "s":
        if n is not None and letter.index > n - 1:
            raise ValueError(f"s{letter.index} needs at least {letter.index + 1} strands, have {n}")
        return (letter.exp, (0,) * params.rank)
    label = f"{letter.kind}{letter.index}"
    return (0, params.basis_vector(label, letter.exp))


def phi_eval(word: Sequence[BraidLetter] | str, params: SurfaceParams, n: int | None = None) -> HeisenbergElement:
    """Image of a braid word in the Heisenberg group, multiplying letters left to right."""
    if isinstance(word, str):
        word = parse_word(word)
    key = (0, (0,) * params.rank)
    for letter in word:
        key = _key_mul(key, _letter_image(letter, params, n), params.g)
    return HeisenbergElement(key[0], key[1], params)


def _surface_letters(params: SurfaceParams) -> list[BraidLetter]:
    g, m = params.g, params.m
    return (
        [BraidLetter("a", r) for r in range(1, g + 1)]
        + [BraidLetter("b", r) for r in range(1, g + 1)]
        + [BraidLetter("c", t) for t in range(1, m)]
    )


def _commutator(x: list[BraidLetter], y: list[BraidLetter]) -> list[BraidLetter]:
    return x + y + inverse_word(x) + inverse_word(y)


def relation_instances(params: SurfaceParams, n: int) -> dict[str, list[tuple[list[BraidLetter], list[BraidLetter]]]]:
    """All defining relations of the surface braid group as ``(lhs, rhs)`` word pairs."""
    if n < 2:
        raise ValueError("relations need at least two strands")
    s = [None] + [BraidLetter("s", i) for i in range(1, n)]
    s1, s1i = s[1], s[1].inverse()
    zs = _surface_letters(params)
    fam: dict[str, list] = {"BR1": [], "BR2": [], "CR1": [], "CR2": [], "CR3": [], "SCR": []}
    for i in range(1, n):
        for j in range(1, n):
            if abs(i - j) >= 2:
                fam["BR1"].append((_commutator([s[i]], [s[j]]), []))
            elif abs(i - j) == 1:
                fam["BR2"].append(([s[i], s[j], s[i]], [s[j], s[i], s[j]]))
    for z in zs:
        for i in range(2, n):
            fam["CR1"].append((_commutator([z], [s[i]]), []))
        fam["CR2"].append((_commutator([z], [s1, z, s1]), []))
    for z in zs:
        for e in zs:
            if z == e:
                continue
            if {z.kind, e.kind} == {"a", "b"} and z.index == e.index:
                continue
            fam["CR3"].append((_commutator([z], [s1i, e, s1]), []))
    for r in range(1, params.g + 1):
        a, b = BraidLetter("a", r), BraidLetter("b", r)
        fam["SCR"].append(([s1, b, s1, a, s1], [a, s1, b]))
    return fam


@dataclass(frozen=True)
class RelationReport:
    params: SurfaceParams
    n: int
    counts: dict
    failures: dict

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def lines(self) -> list[str]:
        out = []
        for fam, count in self.counts.items():
            status = "PASS" if not self.failures[fam] else f"FAIL ({len(self.failures[fam])})"
            out.append(f"{fam}: {count} instances {status}")
        return out


def check_relations(params: SurfaceParams, n: int) -> RelationReport:
    """Check that every defining relation has equal images on both sides."""
    fams = relation_instances(params, n)
    counts, failures = {}, {}
    for fam, pairs in fams.items():
        counts[fam] = len(pairs)
        failures[fam] = [
            (lhs, rhs) for lhs, rhs in pairs if phi_eval(lhs, params, n) != phi_eval(rhs, params, n)
        ]
    return RelationReport(params, n, counts, failures)


# ------------------------------------------------------ linearized action

def linearized_rep(h: HeisenbergElement) -> list[list[int]]:
    """Matrix of left translation by ``h`` on ``H ⊕ Z`` in coordinates ``(k, x, t)``.

    The column ``(k, x, t)`` goes to ``(k + k0 t + x0.x, x + x0 t, t)``.
    """
    p = h.params
    r = p.rank
    J = p.form_matrix()
    d = r + 2
    M = [[int(i == j) for j in range(d)] for i in range(d)]
    for j in range(r):
        M[0][1 + j] = sum(h.x[i] * J[i][j] for i in range(r))
    M[0][d - 1] = h.k
    for i in range(r):
        M[1 + i][d - 1] = h.x[i]
    return M
