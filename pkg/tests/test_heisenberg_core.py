import random

import pytest
from hypothesis import given, strategies as st

from heisenberg_homology.heisenberg_core import (
    BraidLetter,
    GroupRingElement,
    HeisenbergElement,
    SurfaceParams,
    check_relations,
    gr_mul,
    h_inv,
    h_mul,
    intersection_form,
    linearized_rep,
    parse_word,
    phi_eval,
    relation_instances,
)

from conftest import TORUS, elements, ring_elements


def el(k, x, p=TORUS):
    return HeisenbergElement(k, tuple(x), p)


def test_surface_params_rank_and_labels():
    p = SurfaceParams(2, 3)
    assert p.rank == 6
    assert p.labels == ["a1", "a2", "b1", "b2", "c1", "c2"]
    with pytest.raises(ValueError):
        SurfaceParams(1, 0)
    with pytest.raises(ValueError):
        SurfaceParams(-1, 1)


def test_central_powers_add():
    assert h_mul(el(1, (0, 0)), el(1, (0, 0))) == el(2, (0, 0))


def test_ab_and_ba():
    a, b = el(0, (1, 0)), el(0, (0, 1))
    assert h_mul(a, b) == el(1, (1, 1))
    ba = h_mul(b, a)
    assert ba == el(-1, (1, 1))
    assert str(ba) == "u^-2·a1·b1"


@pytest.mark.parametrize("h, inv", [((0, (0, 0)), (0, (0, 0))), ((2, (1, 0)), (-2, (-1, 0))), ((-1, (1, 1)), (1, (-1, -1)))])
def test_inverse_examples(h, inv):
    assert h_inv(el(*h)) == el(*inv)
    assert h_mul(el(*h), h_inv(el(*h))).is_identity()


def test_intersection_form_conventions():
    p = SurfaceParams(1, 2)
    a, b, c = p.basis_vector("a1"), p.basis_vector("b1"), p.basis_vector("c1")
    assert intersection_form(a, b, p) == 1
    assert intersection_form(b, a, p) == -1
    assert intersection_form(a, a, p) == 0
    assert intersection_form(c, b, p) == 0
    with pytest.raises(ValueError):
        intersection_form((1, 0), (1, 0, 0), p)


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        h_mul(el(0, (1, 0)), HeisenbergElement(0, (1, 0, 0), SurfaceParams(1, 2)))


@pytest.mark.parametrize(
    "k, x, text",
    [
        (2, (2, 0), "u^2·a1^2"),
        (3, (2, -2), "u^7·a1^2·b1^-2"),
        (1, (1, 1), "a1·b1"),
        (2, (1, 1), "u·a1·b1"),
        (0, (0, 0), "1"),
        (1, (0, 0), "u"),
    ],
)
def test_normal_form_rendering(k, x, text):
    assert str(el(k, x)) == text
    assert GroupRingElement.parse(text, TORUS) == GroupRingElement.monomial(el(k, x))


def test_pair_notation():
    assert el(2, (1, 1)).pair_str() == "(2, a1+b1)"


def test_phi_examples():
    assert phi_eval("", TORUS).is_identity()
    assert phi_eval("a1 s1 b1", TORUS, 2) == el(2, (1, 1))
    assert phi_eval("s1 b1 s1 a1 s1", TORUS, 2) == el(2, (1, 1))


def test_phi_rejects_out_of_range():
    with pytest.raises(ValueError):
        phi_eval("s2", TORUS, 2)
    with pytest.raises(ValueError):
        phi_eval("c1", TORUS, 2)


def test_parse_word_round_trip():
    w = parse_word("s1 a1^-1 b1 c2^-1")
    assert [str(l) for l in w] == ["s1", "a1^-1", "b1", "c2^-1"]
    assert w[1] == BraidLetter("a", 1, -1)


def test_relation_examples():
    assert phi_eval("s1 s2 s1", TORUS, 3) == phi_eval("s2 s1 s2", TORUS, 3) == el(3, (0, 0))
    p = SurfaceParams(1, 2)
    assert phi_eval("c1 a1", p, 2) == phi_eval("a1 c1", p, 2)
    assert set(relation_instances(TORUS, 3)) == {"BR1", "BR2", "CR1", "CR2", "CR3", "SCR"}


def test_scr_images():
    inst = relation_instances(TORUS, 2)
    images = {phi_eval(l, TORUS, 2) for l, _ in inst["SCR"]}
    assert el(2, (1, 1)) in images


@pytest.mark.parametrize("g", [0, 1, 2])
@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("n", [2, 3])
def test_check_relations(g, m, n):
    rep = check_relations(SurfaceParams(g, m), n)
    assert rep.ok, rep.lines()


def test_ring_examples():
    a = GroupRingElement.parse("a1", TORUS)
    b = GroupRingElement.parse("b1", TORUS)
    u = GroupRingElement.parse("u", TORUS)
    assert (1 - u) * a == a - u * a
    assert str(gr_mul(a, b)) == "a1·b1"
    assert b * a == GroupRingElement.parse("u^-2", TORUS) * (a * b)
    assert (a - a).is_zero()


def test_parse_sums():
    x = GroupRingElement.parse("-u^4·a1·b1^-1 + u^3·a1·b1^-1", TORUS)
    assert len(x) == 2
    assert x.augmentation() == 0
    assert GroupRingElement.parse(str(x), TORUS) == x


def test_linearized_examples():
    I = [[int(i == j) for j in range(4)] for i in range(4)]
    assert linearized_rep(el(0, (0, 0))) == I
    U = [row[:] for row in I]
    U[0][3] = 1
    assert linearized_rep(el(1, (0, 0))) == U
    a, b = el(0, (1, 0)), el(0, (0, 1))
    assert linearized_rep(a * b) == _mm(linearized_rep(a), linearized_rep(b))
    assert linearized_rep(el(5, (2, -1)))[-1] == [0, 0, 0, 1]


def _mm(X, Y):
    return [[sum(a * b for a, b in zip(r, c)) for c in zip(*Y)] for r in X]


@given(st.data())
def test_associativity(data):
    p = data.draw(st.sampled_from([SurfaceParams(1, 1), SurfaceParams(2, 2), SurfaceParams(0, 3)]))
    a, b, c = (data.draw(elements(p)) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@given(st.data())
def test_centrality_and_commutators(data):
    p = data.draw(st.sampled_from([SurfaceParams(1, 1), SurfaceParams(2, 2)]))
    z = data.draw(elements(p))
    u = HeisenbergElement.central(p)
    assert u * z == z * u
    for i, li in enumerate(p.labels):
        for j, lj in enumerate(p.labels):
            x, y = HeisenbergElement.generator(p, li), HeisenbergElement.generator(p, lj)
            comm = x * y * x.inverse() * y.inverse()
            paired = li[0] == "a" and lj == "b" + li[1:]
            expected = 2 if paired else -2 if (lj[0] == "a" and li == "b" + lj[1:]) else 0
            assert comm == HeisenbergElement.central(p, expected)


@given(st.data())
def test_normal_form_parses_back(data):
    p = data.draw(st.sampled_from([SurfaceParams(1, 1), SurfaceParams(2, 3)]))
    h = data.draw(elements(p))
    assert GroupRingElement.parse(str(h), p) == GroupRingElement.monomial(h)


@given(st.data())
def test_ring_axioms(data):
    p = TORUS
    x, y, z = (data.draw(ring_elements(p)) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z
    assert GroupRingElement.parse(str(x), p) == x


@given(st.data())
def test_phi_invariant_under_relation_insertion(data):
    p = data.draw(st.sampled_from([SurfaceParams(1, 1), SurfaceParams(1, 2), SurfaceParams(2, 1)]))
    n = data.draw(st.integers(2, 3))
    inst = relation_instances(p, n)
    fam = data.draw(st.sampled_from(sorted(k for k, v in inst.items() if v)))
    lhs, rhs = data.draw(st.sampled_from(inst[fam]))
    letters = [l for l in parse_word(" ".join(["s1", "a1", "b1"][: 1 + 2 * min(p.g, 1)]))]
    word = data.draw(st.lists(st.sampled_from(letters + [l.inverse() for l in letters]), max_size=6))
    cut = data.draw(st.integers(0, len(word)))
    relator = lhs + [l.inverse() for l in reversed(rhs)]
    assert phi_eval(word[:cut] + relator + word[cut:], p, n) == phi_eval(word, p, n)


@given(st.data())
def test_phi_is_a_homomorphism(data):
    letters = parse_word("s1 a1 b1 s1^-1 a1^-1 b1^-1")
    v = data.draw(st.lists(st.sampled_from(letters), max_size=6))
    w = data.draw(st.lists(st.sampled_from(letters), max_size=6))
    assert phi_eval(v + w, TORUS, 2) == phi_eval(v, TORUS, 2) * phi_eval(w, TORUS, 2)


def test_linearized_homomorphism_random_pairs():
    rng = random.Random(3)
    for p in (SurfaceParams(1, 1), SurfaceParams(1, 2)):
        for _ in range(100):
            g = HeisenbergElement(rng.randint(-5, 5), tuple(rng.randint(-3, 3) for _ in range(p.rank)), p)
            h = HeisenbergElement(rng.randint(-5, 5), tuple(rng.randint(-3, 3) for _ in range(p.rank)), p)
            assert linearized_rep(g * h) == _mm(linearized_rep(g), linearized_rep(h))
