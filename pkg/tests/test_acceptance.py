"""Acceptance gate: one PASS/FAIL line per criterion, with its time budget.

Run directly with ``python tests/test_acceptance.py`` or through pytest.
"""

import random
import time
from math import comb

import pytest

from heisenberg_homology.config_complex import StandardWedgeOracle, build_complex
from heisenberg_homology.heisenberg_core import GroupRingElement, HeisenbergElement, SurfaceParams, check_relations, linearized_rep
from heisenberg_homology.homology_engine import TrivialInt, bm_homology, concentration_report
from heisenberg_homology.mcg_action import aut_from_twist, check_intertwiner, decompose_cycle, twist_matrix, verify_identities
from heisenberg_homology.ribbon_graph import RibbonGraph, random_ribbon_graph, standard_model, subdivide

TORUS = SurfaceParams(1, 1)


def _ring(text):
    return GroupRingElement.parse(text, TORUS)


def _mm(X, Y):
    return [[sum(a * b for a, b in zip(r, c)) for c in zip(*Y)] for r in X]


def crit_rank_formula():
    bad = []
    for g in range(3):
        for m in range(1, 4):
            G, A = standard_model(g, m)
            for n in range(1, 5):
                cx = build_complex(G, n, A)
                try:
                    r = concentration_report(cx)
                except AssertionError as exc:
                    bad.append(f"{g},{m},{n}: {exc}")
                    continue
                if r != comb(2 * g + m + n - 2, n):
                    bad.append(f"{g},{m},{n}: {r}")
    spot = {(1, 1, 2): 3, (0, 2, 2): 1, (2, 1, 3): 20}
    for (g, m, n), want in spot.items():
        G, A = standard_model(g, m)
        if concentration_report(build_complex(G, n, A)) != want:
            bad.append(f"spot {g},{m},{n}")
    return not bad, "; ".join(bad) or "36 triples match"


def crit_twist_matrices():
    Ma = [["1", "1", "-u + 1"], ["0", "u^2 a^2", "0"], ["0", "a", "a"]]
    Mb = [["1", "0", "0"], ["-u^7 a^2 b^-2", "1", "-u^4 a b^-1 + u^3 a b^-1"], ["-u^2 a b^-1", "0", "1"]]
    ok_a = twist_matrix("a") == [[_ring(e) for e in row] for row in Ma]
    ok_b = twist_matrix("b") == [[_ring(e) for e in row] for row in Mb]
    return ok_a and ok_b, f"M_a {'ok' if ok_a else 'differs'}, M_b {'ok' if ok_b else 'differs'}"


def crit_braid_relation():
    c = verify_identities()[0]
    return c.passed, c.name


def crit_boundary_twist():
    checks = verify_identities()[1:]
    return all(c.passed for c in checks), ", ".join(f"{c.name}: {c.passed}" for c in checks)


def crit_phi_relations():
    bad = [
        (g, m, n)
        for g in range(3)
        for m in range(1, 4)
        for n in (2, 3)
        if not check_relations(SurfaceParams(g, m), n).ok
    ]
    return not bad, f"failures {bad}" if bad else "18 surfaces/strand counts"


def crit_d_squared():
    bad = []
    for g, m in ((1, 1), (1, 2)):
        G, _ = standard_model(g, m)
        for n in (2, 3):
            if not build_complex(G, n, None, StandardWedgeOracle(g, m, n)).is_chain_complex():
                bad.append(f"wedge {g},{m},{n}")
    rng = random.Random(2024)
    graphs = [random_ribbon_graph(rng, max_edges=6) for _ in range(8)]
    for i, G in enumerate(graphs):
        for n in (2, 3):
            if not build_complex(G, n).is_chain_complex():
                bad.append(f"random #{i} n={n}")
    return not bad, "; ".join(bad) or "4 wedge complexes, 8 random graphs x n=2,3"


def crit_decomposition():
    w = decompose_cycle("w", ["b A a"])
    v = decompose_cycle("v", ["a", "b A a"])
    ok_w = w == {"w(a1)": _ring("1"), "v(a1,b1)": _ring("a"), "w(b1)": _ring("u^2 a^2")}
    ok_v = v == {"w(a1)": _ring("-u + 1"), "v(a1,b1)": _ring("a"), "w(b1)": _ring("0")}
    return ok_w and ok_v, f"w(bAa) {'ok' if ok_w else w}, v(a,bAa) {'ok' if ok_v else v}"


def crit_subdivision():
    rng = random.Random(77)
    bad, count = [], 6
    for _ in range(count):
        G = random_ribbon_graph(rng, max_edges=5)
        H = G
        for e in list(G.edges):
            H, _ = subdivide(H, e)
        a, b = bm_homology(build_complex(G, 2), TrivialInt()), bm_homology(build_complex(H, 2), TrivialInt())
        if a.ranks != b.ranks:
            bad.append(f"{a.ranks} vs {b.ranks}")
    return not bad, "; ".join(bad) or f"{count} graphs"


def crit_linearized():
    rng = random.Random(31)
    bad = 0
    for p in (SurfaceParams(1, 1), SurfaceParams(1, 2)):
        for _ in range(120):
            g = HeisenbergElement(rng.randint(-6, 6), tuple(rng.randint(-4, 4) for _ in range(p.rank)), p)
            h = HeisenbergElement(rng.randint(-6, 6), tuple(rng.randint(-4, 4) for _ in range(p.rank)), p)
            if linearized_rep(g * h) != _mm(linearized_rep(g), linearized_rep(h)):
                bad += 1
    inter = all(check_intertwiner(aut_from_twist(t)) for t in "ab")
    return bad == 0 and inter, f"homomorphism failures {bad}, intertwiner {'ok' if inter else 'fails'}"


def crit_degenerate():
    segment = RibbonGraph(("v", "w"), {"e": ("v", "w")}, {"v": (("e", 1),), "w": (("e", -1),)})
    rep = bm_homology(build_complex(segment, 2), TrivialInt())
    zero = all(r == 0 for r in rep.ranks) and not any(rep.torsion)
    G, A = standard_model(0, 1)
    disk = build_complex(G, 2, A)
    empty = not any(disk.cells.values())
    return zero and empty, f"closed edge ranks {rep.ranks}, disk cells {sum(map(len, disk.cells.values()))}"


CRITERIA = [
    (1, "relative rank formula C(2g+m+n-2, n)", crit_rank_formula, 10.0),
    (2, "twist matrices M_a, M_b", crit_twist_matrices, None),
    (3, "braid relation with twisting", crit_braid_relation, 1.0),
    (4, "boundary twist commutes", crit_boundary_twist, 5.0),
    (5, "phi respects every relation", crit_phi_relations, 5.0),
    (6, "d^2 = 0 over the group ring", crit_d_squared, 60.0),
    (7, "decomposition calibration", crit_decomposition, None),
    (8, "subdivision invariance", crit_subdivision, 30.0),
    (9, "linearized representation", crit_linearized, None),
    (10, "degenerate cases", crit_degenerate, None),
]


def evaluate(fn, budget):
    t0 = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t0
    in_time = budget is None or dt < budget
    limit = f" < {budget:g}s" if budget else ""
    return ok and in_time, f"{dt:.2f}s{limit}; {detail}"


@pytest.mark.parametrize("num, title, fn, budget", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, budget, capsys):
    passed, info = evaluate(fn, budget)
    with capsys.disabled():
        print(f"\n{'PASS' if passed else 'FAIL'} criterion {num}: {title} ({info})")
    assert passed, info


if __name__ == "__main__":
    results = []
    for num, title, fn, budget in CRITERIA:
        passed, info = evaluate(fn, budget)
        results.append(passed)
        print(f"{'PASS' if passed else 'FAIL'} criterion {num}: {title} ({info})")
    raise SystemExit(0 if all(results) else 1)
