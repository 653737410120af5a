"""Acceptance gate: fifteen independent checks, one test and one printed
pass line per criterion.  Budgted criteria assert their wall-clock limit.

Run `python3 -m pytest tests/test_acceptance.py -v -s` to see the lines.
"""

import itertools
import random
import time
from fractions import Fraction
from math import comb

from positroids.catalan import (
    BinaryTree,
    DyckPath,
    PathPair,
    dyck_step_labels,
    enumerate_dyck_paths,
    enumerate_path_pairs,
    enumerate_path_tuples,
    enumerate_trees,
    macmahon,
    omega_LP,
    omega_PL,
    omega_TL,
    shadow_touch,
    tree_to_graph,
)
from positroids.diagrams import (
    OPlusDiagram,
    apply_move,
    enumerate_diagrams,
    find_move,
    le_normalize,
    omega_LD,
    pipe_dream_permutation,
)
from positroids.experiments import (
    disjointness_experiment,
    m3_counterexample,
    narayana,
)
from positroids.linalg import (
    RationalMatrix,
    kernel_basis,
    make_tp_matrix,
    positroid_membership,
    rref,
    sample_cell,
)
from positroids.permutations import DecoratedPermutation
from positroids.plabic import (
    BLACK,
    WHITE,
    base_bridge,
    bcfw_permutations,
    build_network,
    enumerate_bcfw_graphs,
    graph_from_le,
    k_statistic,
    split,
    trip_permutation,
)
from positroids.signs import (
    Domino,
    alternating_domino_sequence,
    classify_k2,
    dom_coordinates,
    domino_decompose_sum_bound,
    p_domino_basis,
    sign_string,
    standard_basis_k2,
    var,
)

LEAF = BinaryTree()
A5 = DyckPath("+++--++-+--+--+-+-")
ORTHODOX_FULL = {"++++", "----", "++--", "--++"}
DEVIANT_FULL = {"+++-", "---+", "-+++", "+---", "++++", "----"}


def _ok(num: int, message: str) -> None:
    print(f"criterion {num:02d}: PASS - {message}")


def _proportional(u, w) -> bool:
    lead = next((j for j, x in enumerate(w) if x), None)
    if lead is None or u[lead] == 0:
        return False
    ratio = Fraction(u[lead]) / Fraction(w[lead])
    return all(Fraction(a) == ratio * Fraction(b) for a, b in zip(u, w))


def test_criterion_01_counts_m4():
    start = time.perf_counter()
    for n in range(4, 11):
        for k in range(0, n - 3):
            expected = narayana(n - 3, k + 1)
            assert len(enumerate_bcfw_graphs(n, k + 2, 4)) == expected
            assert len(bcfw_permutations(n, k, 4)) == expected
            assert len(list(enumerate_path_pairs(n, k))) == expected
            assert len(enumerate_dyck_paths(n, k)) == expected
            assert len(enumerate_trees(n, k)) == expected
    elapsed = time.perf_counter() - start
    assert elapsed < 60
    _ok(1, f"all five families match the Narayana counts up to n=10 ({elapsed:.1f}s)")


def test_criterion_02_counts_m2():
    for n in range(2, 11):
        for kstat in range(1, n):
            assert len(enumerate_bcfw_graphs(n, kstat, 2)) == comb(n - 2, kstat - 1)
        for k in range(0, n - 1):
            assert len(enumerate_diagrams(n, k, 2)) == comb(n - 2, k)
    _ok(2, "graph and diagram counts are the stated binomials up to n=10")


def test_criterion_03_macmahon():
    start = time.perf_counter()
    for n in range(4, 13):
        for k in range(0, n - 3):
            assert macmahon(k, n - k - 4, 2) == narayana(n - 3, k + 1)
    for a in range(5):
        for b in range(5):
            for c in range(5):
                assert len(list(enumerate_path_tuples(a, b, c))) == macmahon(a, b, c)
    elapsed = time.perf_counter() - start
    assert elapsed < 30
    _ok(3, f"box formula matches Narayana (n<=12) and tuple counts (<=4) ({elapsed:.1f}s)")


def test_criterion_04_worked_fixtures():
    ten = OPlusDiagram.from_rows(4, 10, ["0+0+0", "+++++", "000", "++"])
    assert pipe_dream_permutation(ten) == DecoratedPermutation.parse(
        "1_ 5 4 9 7 6^ 2 10 3 8"
    )

    g = graph_from_le(ten)
    blacks = sum(1 for c in g.colors.values() if c == BLACK)
    assert len(g.edges) == 21 and blacks == 5
    assert k_statistic(g) == 21 - 5 - 12 == 4

    eleven = OPlusDiagram.from_rows(4, 11, ["+00000+", "+00+", "+0+", "++"])
    caterpillar = base_bridge()
    for color in (BLACK, WHITE, WHITE, WHITE, BLACK, WHITE, BLACK, WHITE, BLACK):
        caterpillar = split(caterpillar, caterpillar.n, color)
    pi = trip_permutation(caterpillar)
    assert pi.images == (3, 1, 4, 5, 7, 2, 9, 6, 11, 8, 10)
    assert pi.left_shift(1) == pipe_dream_permutation(eleven)

    chain = OPlusDiagram.from_rows(2, 8, ["+0++0+", "+000+"])
    move = find_move(chain)
    assert move == (1, 1, 2, 3)
    step = apply_move(chain, move)
    assert step.rows == ("00++0+", "+0+0+")
    assert apply_move(step, find_move(step)).rows == ("000+0+", "+0+++")
    assert le_normalize(chain).rows == ("000+0+", "+0+++")

    net = build_network(ten)
    assert net.sources == (2, 3, 6, 8)
    assert net.matrix(net.ones()) == [
        [0, 1, 0, 0, -1, 0, 1, 0, -2, -4],
        [0, 0, 1, 1, 1, 0, -1, 0, 1, 2],
        [0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 1, 1],
    ]

    tree_six = BinaryTree(BinaryTree(LEAF, LEAF), BinaryTree(LEAF, LEAF))
    pair = omega_TL(tree_six)
    assert (pair.wu, pair.wl) == ("HV", "HV")
    tree_nine = BinaryTree(
        BinaryTree(LEAF, LEAF),
        BinaryTree(BinaryTree(BinaryTree(LEAF, LEAF), BinaryTree(LEAF, LEAF)), LEAF),
    )
    pair = omega_TL(tree_nine)
    assert (pair.wu, pair.wl) == ("HVHHV", "HVHVH")

    assert [shadow_touch(A5, x) for x in (0, 1, 5)] == [3, 5, 4]

    _, _, up_i, down_i = dyck_step_labels(A5)
    assert up_i == (1, 2, 4) and down_i == (8, 4, 7)
    _ok(4, "all eight worked fixtures reproduce byte-exactly")


def test_criterion_05_tree_collapse_identity():
    start = time.perf_counter()
    for n in range(4, 10):
        for k in range(0, n - 3):
            for tree in enumerate_trees(n, k):
                lhs = pipe_dream_permutation(omega_LD(omega_TL(tree)))
                rhs = trip_permutation(tree_to_graph(tree)).left_shift(2)
                assert lhs == rhs
    elapsed = time.perf_counter() - start
    assert elapsed < 120
    _ok(5, f"collapse identity holds for every tree up to n=9 ({elapsed:.1f}s)")


def test_criterion_06_dyck_round_trip():
    for n in range(4, 11):
        for k in range(0, n - 3):
            for pair in enumerate_path_pairs(n, k):
                path = omega_LP(pair)
                assert omega_PL(path) == pair
                assert path.k == pair.k  # peak statistic carried over
            for path in enumerate_dyck_paths(n, k):
                assert omega_LP(omega_PL(path)) == path
    _ok(6, "path-pair and peak statistics survive both round trips up to n=10")


def test_criterion_07_membership_sampling():
    start = time.perf_counter()
    checked = 0
    for m, n_lo in ((2, 2), (4, 4)):
        for n in range(n_lo, 8):
            for k in range(0, n - m + 1):
                for ci, diagram in enumerate(enumerate_diagrams(n, k, m)):
                    cell = le_normalize(diagram) if m == 4 else diagram
                    for s in range(100):
                        point = sample_cell(cell, rng=100_003 * ci + 7 * s + n)
                        assert positroid_membership(point.matrix, cell)
                        checked += 1
    _ok(7, f"{checked} sampled points land in their own positroid "
           f"({time.perf_counter() - start:.1f}s)")


def test_criterion_08_variation_bounds():
    rng = random.Random(8)
    checked = 0
    for n, k in ((6, 2), (7, 2), (7, 3), (8, 3), (8, 2)):
        top = OPlusDiagram.from_rows(k, n, ["+" * (n - k)] * k)
        for _ in range(10):
            rows = sample_cell(top, rng=rng.randint(0, 10**6)).matrix.entries
            done = 0
            while done < 20:
                coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(k)]
                if all(c == 0 for c in coeffs):
                    continue
                v = tuple(
                    sum((c * row[j] for c, row in zip(coeffs, rows)), Fraction(0))
                    for j in range(n)
                )
                assert var(v) <= k - 1
                done += 1
                checked += 1
    assert checked == 1000

    z = make_tp_matrix(5, 12)
    basis = kernel_basis(z)
    done = 0
    while done < 1000:
        coeffs = [rng.randint(-9, 9) for _ in range(len(basis))]
        v = tuple(
            sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(12)
        )
        if not any(v):
            continue
        assert var(v) >= 5
        done += 1
    _ok(8, "1000 cell vectors vary <= k-1 and 1000 kernel vectors vary >= 5")


def test_criterion_09_disjointness_m2():
    start = time.perf_counter()
    for n in range(2, 8):
        for k in range(0, n - 1):
            report = disjointness_experiment(n, k, 2, samples=5, seed=0)
            assert report.verdict == "pass", report.witnesses
    elapsed = time.perf_counter() - start
    assert elapsed < 300
    _ok(9, f"one-row images stay pairwise distinct for all ranks up to n=7 ({elapsed:.1f}s)")


def test_criterion_10_disjointness_m4():
    start = time.perf_counter()
    for n in range(5, 9):
        for k in (1, 2):
            if k <= n - 4:
                report = disjointness_experiment(n, k, 4, samples=5, seed=0)
                assert report.verdict == "pass", report.witnesses
    elapsed = time.perf_counter() - start
    assert elapsed < 600
    _ok(10, f"rank 1 and 2 images stay pairwise distinct up to n=8 ({elapsed:.1f}s)")


def test_criterion_11_m3_counterexample():
    report = m3_counterexample(seed=0)
    assert report.verdict == "finding"
    checks = report.witnesses[0]["checks"]
    assert checks == {
        "first_membership": True,
        "second_membership": True,
        "distinct_cells": True,
        "distinct_points": True,
        "difference_in_kernel": True,
        "equal_images": True,
    }
    _ok(11, "two distinct rank-2 cells of the n=12 family share an exact image")


def test_criterion_12_nine_class():
    start = time.perf_counter()
    distributions = {
        6: {9: 1},
        7: {3: 1, 4: 1, 8: 1, 9: 3},
        8: {2: 1, 3: 4, 4: 4, 5: 1, 7: 1, 8: 3, 9: 6},
        9: {1: 1, 2: 4, 3: 10, 4: 10, 5: 4, 6: 1, 7: 4, 8: 6, 9: 10},
    }
    rng = random.Random(12)
    bases_checked = 0
    patterns_checked = 0
    for n in range(6, 10):
        family = enumerate_diagrams(n, 2, 4)
        seen: dict[int, int] = {}
        for ci, diagram in enumerate(family):
            cls = classify_k2(diagram)  # raises unless exactly one template fits
            seen[cls] = seen.get(cls, 0) + 1
            cell = le_normalize(diagram)
            flavor = "orthodox" if cls <= 3 else "deviant"
            classification = None
            for s in range(25):
                point = sample_cell(cell, rng=1_000 * n + 31 * ci + s)
                c = standard_basis_k2(point.matrix, diagram)
                assert c.cell_class == cls and c.flavor == flavor
                i1, i2, i3, i4 = c.indices
                if flavor == "orthodox":
                    assert i1 + 2 <= i2 <= i3 <= i4 - 2
                else:
                    assert i1 < i2 and i2 + 1 < i3 <= i4
                classification = c
                bases_checked += 1
            allowed = ORTHODOX_FULL if flavor == "orthodox" else DEVIANT_FULL
            hits = 0
            while hits < 100:
                a = Fraction(rng.randint(-20, 20))
                b = Fraction(rng.randint(-20, 20))
                if a == 0 or b == 0:
                    continue
                v = tuple(x * a + y * b for x, y in
                          zip(classification.d, classification.e))
                pattern = dom_coordinates(classification, v)
                if "0" in pattern:
                    continue
                assert pattern in allowed
                hits += 1
                patterns_checked += 1
        assert seen == distributions[n]
    _ok(12, f"nine templates partition every rank-2 cell; {bases_checked} bases and "
            f"{patterns_checked} coordinate patterns conform "
            f"({time.perf_counter() - start:.1f}s)")


def test_criterion_13_alternating_oracle():
    rng = random.Random(13)

    def random_instance():
        n = rng.randint(3, 8)
        ds = []
        for _ in range(rng.randint(1, 5)):
            i = rng.randint(1, n)
            a = rng.choice([-2, -1, 1, 2])
            ds.append(Domino(n, i, (a,) if i == n else (a, a * rng.randint(1, 2))))
        total = [Fraction(0)] * n
        for d in ds:
            for j, x in enumerate(d.vector()):
                total[j] += x
        size = rng.randint(0, min(len(ds), n))
        indices = tuple(sorted(rng.sample(range(1, n + 1), size)))
        return ds, tuple(total), indices

    def brute_force(ds, v, indices):
        live = [d for d in ds if d.sign != "0"]
        for perm in itertools.permutations(range(len(live)), len(indices)):
            prev = 0
            for place, t in zip(indices, perm):
                entry = live[t].vector()[place - 1]
                need = (v[place - 1] > 0) - (v[place - 1] < 0)
                s = (entry > 0) - (entry < 0)
                if need == 0 or s != need or (prev and s == prev):
                    break
                prev = s
            else:
                return True
        return False

    for _ in range(1000):
        ds, v, indices = random_instance()
        found = alternating_domino_sequence(ds, v, indices)
        assert (found is not None) == brute_force(ds, v, indices)

    for _ in range(1000):
        n = rng.randint(2, 10)
        ds = []
        for _ in range(rng.randint(1, 6)):
            i = rng.randint(1, n)
            a = rng.choice([-3, -2, -1, 1, 2, 3])
            ds.append(Domino(n, i, (a,) if i == n else (a, a * rng.randint(1, 3))))
        total, bound = domino_decompose_sum_bound(ds)
        assert var(total) <= bound
    _ok(13, "1000 oracle instances match brute force; 1000 sums obey the bound")


def test_criterion_14_p_domino_bases():
    start = time.perf_counter()
    a5_cell = le_normalize(omega_LD(omega_PL(A5)))
    for seed in range(25):
        rows = p_domino_basis(sample_cell(a5_cell, rng=seed).matrix, A5)
        assert rows is not None
        v1, v2, v3 = rows
        assert sign_string(v1) == "++00000++00+" and v1[11] == 1
        alpha, beta = v1[0], v1[1]
        assert sign_string(v2) == "+++++0000000"
        assert v2[0] == alpha and v2[1] > beta
        assert sign_string(v3) == "--0++0++0000"
        assert v3[0] == -alpha and v3[1] == -beta
        eta, theta = v2[3], v2[4]
        iota, kappa = v3[3], v3[4]
        assert eta * kappa > theta * iota

    for n in range(5, 9):
        for idx, path in enumerate(enumerate_dyck_paths(n, 1)):
            point = sample_cell(le_normalize(omega_LD(omega_PL(path))), rng=idx)
            rows = p_domino_basis(point.matrix, path)
            assert rows is not None
            (row,) = rows
            support = [j + 1 for j, x in enumerate(row) if x]
            assert len(support) == 5 and support[-1] == n
            assert support[1] == support[0] + 1 and support[3] == support[2] + 1
            assert row[-1] == 1
            assert _proportional(row, point.matrix.entries[0])

    for n in range(6, 9):
        for idx, path in enumerate(enumerate_dyck_paths(n, 2)):
            diagram = omega_LD(omega_PL(path))
            point = sample_cell(le_normalize(diagram), rng=3 * idx + n)
            rows = p_domino_basis(point.matrix, path)
            assert rows is not None
            c = standard_basis_k2(point.matrix, diagram)
            for got, ref in zip(rows, (c.d, c.e)):
                assert _proportional(got, ref)
                assert (next(x for x in got if x) > 0) == (next(x for x in ref if x) > 0)

    solved = unsolved = 0
    findings = []
    for n in range(7, 10):
        for idx, path in enumerate(enumerate_dyck_paths(n, 3)):
            for s in range(3):
                point = sample_cell(le_normalize(omega_LD(omega_PL(path))),
                                    rng=17 * idx + s)
                rows = p_domino_basis(point.matrix, path)
                if rows is None:
                    unsolved += 1
                    findings.append({"n": n, "path": path.to_json(), "seed": 17 * idx + s})
                else:
                    solved += 1
                    assert len(rref(RationalMatrix(tuple(rows)))[1]) == 3
    # rank-3 solvability is open: failures are recorded, never asserted away
    _ok(14, f"template and proved bases agree; rank-3 sweep: {solved} solved, "
            f"{unsolved} recorded findings ({time.perf_counter() - start:.1f}s)"
            + (f"; witnesses: {findings[:3]}" if findings else ""))


def test_criterion_15_parity_involutions():
    for m in (2, 4):
        for n in range(4, 10):
            for k in range(0, n - m + 1):
                family = bcfw_permutations(n, k, m)
                image = {p.parity_involution(m) for p in family}
                assert image == set(bcfw_permutations(n, n - m - k, m))
                assert len(image) == len(family)
    _ok(15, "both parity involutions are bijections between complementary ranks")
