import random

import pytest
from hypothesis import given, strategies as st

from heisenberg_homology.heisenberg_core import SurfaceParams
from heisenberg_homology.ribbon_graph import (
    GraphFormatError,
    RelativeSubgraph,
    RibbonGraph,
    graph_to_text,
    h1_basis,
    parse_graph_text,
    random_ribbon_graph,
    rose,
    standard_model,
    subdivide,
    surface_invariants,
    trace_faces,
    validate_relative,
)


def test_single_edge_one_face():
    G = RibbonGraph(("v", "w"), {"e": ("v", "w")}, {"v": (("e", 1),), "w": (("e", -1),)})
    assert len(trace_faces(G)) == 1
    assert surface_invariants(G).params() == SurfaceParams(0, 1)


def test_roses():
    inter = rose(["e1+", "e2+", "e1-", "e2-"])
    flat = rose(["e1+", "e1-", "e2+", "e2-"])
    assert len(trace_faces(inter)) == 1
    assert len(trace_faces(flat)) == 3
    inv = surface_invariants(inter)
    assert (inv.g, inv.m, inv.chi) == (1, 1, -1)
    inv = surface_invariants(flat)
    assert (inv.g, inv.m, inv.chi) == (0, 3, -1)
    assert [list(r) for r in h1_basis(inter).matrix] == [[0, 1], [-1, 0]]


def test_tree_has_empty_basis():
    G = RibbonGraph(("a", "b", "c"), {"x": ("a", "b"), "y": ("b", "c")},
                    {"a": (("x", 1),), "b": (("x", -1), ("y", 1)), "c": (("y", -1),)})
    assert h1_basis(G).cycle_edges == ()


def test_disconnected_rejected():
    G = RibbonGraph(("a", "b"), {}, {})
    with pytest.raises(ValueError):
        surface_invariants(G)


def _block_form(g, m):
    r = 2 * g + m - 1
    J = [[0] * r for _ in range(r)]
    for i in range(g):
        J[i][g + i], J[g + i][i] = 1, -1
    return J


@pytest.mark.parametrize("g, m", [(0, 1), (0, 3), (1, 1), (1, 2), (2, 1), (2, 3)])
def test_standard_models(g, m):
    G, A = standard_model(g, m)
    inv = surface_invariants(G)
    assert (inv.g, inv.m) == (g, m)
    assert len(G.edges) == 2 * g + m
    assert G.edges["A"] == ("v0", "v1")
    assert all(G.edges[e] == ("v1", "v0") for e in G.edges if e != "A")
    assert [list(r) for r in h1_basis(G).matrix] == _block_form(g, m)
    assert [list(r) for r in h1_basis(G).matrix] == SurfaceParams(g, m).form_matrix()
    assert validate_relative(G, A).valid


def test_disk_model_has_only_A():
    G, A = standard_model(0, 1)
    assert list(G.edges) == ["A"]


def test_relative_validation_failures():
    G, A = standard_model(1, 1)
    assert validate_relative(G, None).valid
    text = """
    vertex v0
    vertex v1
    vertex m
    edge A0 v0 m
    edge A1 m v1
    edge x m m
    edge a1 v1 v0
    order v0 a1- A0+
    order m A0- x+ A1+ x-
    order v1 A1- a1+
    relative interval A0 A1
    """
    with pytest.raises(GraphFormatError, match="invalid relative"):
        parse_graph_text(text)
    G2 = RibbonGraph(
        ("v0", "v1", "m"),
        {"A0": ("v0", "m"), "A1": ("m", "v1"), "x": ("m", "m"), "a1": ("v1", "v0")},
        {
            "v0": (("a1", -1), ("A0", 1)),
            "m": (("A0", -1), ("x", 1), ("A1", 1), ("x", -1)),
            "v1": (("A1", -1), ("a1", 1)),
        },
    )
    rep = validate_relative(G2, RelativeSubgraph((("interval", (("A0", 1), ("A1", 1))),)))
    assert not rep.valid
    assert rep.location == "m"


def test_subdivision_preserves_invariants_and_relative():
    G, A = standard_model(1, 2)
    H, B = subdivide(G, "A", A)
    assert surface_invariants(H) == surface_invariants(G)
    assert validate_relative(H, B).valid
    H2, _ = subdivide(H, "a1")
    assert surface_invariants(H2) == surface_invariants(G)


def test_text_round_trip():
    G, A = standard_model(2, 2)
    G2, A2 = parse_graph_text(graph_to_text(G, A))
    assert G2 == G and A2 == A


def test_parse_errors():
    with pytest.raises(GraphFormatError, match="no vertices"):
        parse_graph_text("# nothing here\n")
    with pytest.raises(GraphFormatError, match="e1-"):
        parse_graph_text("vertex v\nedge e1 v v\norder v e1+\n")
    with pytest.raises(GraphFormatError) as err:
        parse_graph_text("vertex v\nbogus line\n")
    assert err.value.line == 2


@given(st.integers(0, 10_000))
def test_euler_identity_random(seed):
    G = random_ribbon_graph(random.Random(seed))
    inv = surface_invariants(G)
    assert 2 - 2 * inv.g - inv.m == len(G.vertices) - len(G.edges) == inv.chi
    J = h1_basis(G).matrix
    assert len(J) == len(G.edges) - len(G.vertices) + 1
    assert all(J[i][j] == -J[j][i] for i in range(len(J)) for j in range(len(J)))


@given(st.integers(0, 10_000))
def test_faces_invariant_under_renaming(seed):
    G = random_ribbon_graph(random.Random(seed))
    H = G.renamed({v: "x" + v for v in G.vertices}, {e: "f" + e for e in G.edges})
    assert len(trace_faces(H)) == len(trace_faces(G))


def _rank_mod(J):
    # rank of an antisymmetric integer matrix over Q, enough to compare congruence classes here
    from fractions import Fraction
    M = [[Fraction(v) for v in r] for r in J]
    rank, cols = 0, len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c] / M[rank][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


@given(st.integers(0, 10_000), st.data())
def test_subdivision_preserves_form(seed, data):
    G = random_ribbon_graph(random.Random(seed))
    e = data.draw(st.sampled_from(sorted(G.edges)))
    H, _ = subdivide(G, e)
    assert surface_invariants(H) == surface_invariants(G)
    JG, JH = h1_basis(G).matrix, h1_basis(H).matrix
    assert len(JG) == len(JH)
    if JG:
        assert _rank_mod(JG) == _rank_mod(JH) == 2 * surface_invariants(G).g
