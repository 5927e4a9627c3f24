import io
import itertools
import re
import pytest

from dlambda.batch import batch_lambdas, gen_indices, lambdas_for
from dlambda.errors import NotGenerating, SinkWriteFailure
from dlambda.genset import generates, genset, validate_symmetric
from dlambda.group import DihedralElement as E, cyclic, dihedral, inverse, mul, parse_element, refl
from dlambda.wordlen import (
    compute_lengths,
    diameter,
    export_cayley,
    lambda1,
    lambda2,
    lambda_report,
    word_value,
)


def naive_lengths(S):
    """Word lengths by enumerating all products of 0, 1, 2, ... letters."""
    G = S.group
    found = {G.identity: 0}
    layer = {G.identity}
    k = 0
    while len(found) < G.order:
        k += 1
        layer = {mul(w, s, G) for w in layer for s in S}
        for g in layer:
            found.setdefault(g, k)
        if k > 2 * G.order:
            raise AssertionError("does not generate")
    return found


def small_generating_sets(n, max_size=3):
    """Every symmetric generating set of D_n with at most ``max_size`` elements."""
    G = dihedral(n)
    elems = [g for g in G.elements() if g != G.identity]
    orbits = sorted({tuple(sorted({g, inverse(g, G)})) for g in elems})
    for r in range(1, max_size + 1):
        for combo in itertools.combinations(orbits, r):
            raw = [x for orb in combo for x in orb]
            if len(raw) > max_size:
                continue
            S = validate_symmetric(n, raw)
            if generates(S):
                yield S


def test_d3_lengths_example():
    T = compute_lengths(genset(3, "f", "r*f"))
    expect = {"1": 0, "f": 1, "r^1*f": 1, "r^1": 2, "r^2": 2, "r^2*f": 3}
    G = dihedral(3)
    assert {k: T.length(parse_element(k, G)) for k in expect} == expect


def test_d5_diameter_example():
    S = genset(5, "f", "r*f")
    T = compute_lengths(S)
    top, where = diameter(T)
    # f r^2 = r^3 f
    assert top == 5 and E(3, True) in where
    assert word_value(S, T.word(E(3, True))) == E(3, True)


def test_geodesic_witnesses_are_deterministic_and_valid():
    S = genset(7, "f", "r*f", "r^3*f")
    T = compute_lengths(S)
    for g in S.group.elements():
        w = T.word(g)
        assert len(w) == T.length(g)
        assert word_value(S, w) == g
    # breadth-first, lowest generator first: r = (r f) f
    assert T.word(E(1)) == (1, 0)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 8, 9])
def test_lengths_match_naive_enumeration(n):
    for S in small_generating_sets(n):
        T = compute_lengths(S)
        assert {S.group.element(i): d for i, d in enumerate(T.lengths)} == naive_lengths(S)


def test_not_generating():
    with pytest.raises(NotGenerating) as info:
        compute_lengths(genset(4, "f", "r^2*f"))
    assert info.value.reachable == 4


@pytest.mark.parametrize(
    "n,gens,l1,l2",
    [
        (7, ["f", "r*f"], 7, 2),
        (6, ["f", "r*f"], 5, 2),
        # all reflections of D_3: every conjugate of a generator is a generator
        (3, ["f", "r*f", "r^2*f"], 1, 2),
        (6, ["f", "r*f", "r^3"], 3, 3),
        (8, ["f", "r", "r^7"], 5, 4),
        (6, ["f", "r", "r^5"], 3, 4),
        (7, ["f", "r*f", "r^3*f"], None, 2),
    ],
)
def test_lambda_examples(n, gens, l1, l2):
    S = genset(n, *gens)
    T = compute_lengths(S)
    v1, (g, s) = lambda1(S, T)
    v2, (h, t, u) = lambda2(S, T)
    G = S.group
    assert T.length(mul(mul(g, s, G), inverse(g, G), G)) == v1
    assert T.length(mul(mul(h, mul(t, u, G), G), inverse(h, G), G)) == v2
    if l1 is not None:
        assert v1 == l1
    assert v2 == l2


def test_lambda_witness_is_first_maximizer():
    S = genset(7, "f", "r*f")
    T = compute_lengths(S)
    _, (g, s) = lambda1(S, T)
    G = S.group
    for h in G.elements():
        for t in S:
            if (G.index(h), S.index(t)) >= (G.index(g), S.index(s)):
                break
            assert T.length(mul(mul(h, t, G), inverse(h, G), G)) < 7


def test_diameter_examples():
    top, where = diameter(compute_lengths(genset(6, "f", "r*f")))
    assert (top, where) == (6, [E(3)])
    assert diameter(compute_lengths(genset(5, "f", "r*f")))[0] == 5
    G = dihedral(3)
    everything = validate_symmetric(3, [g for g in G.elements() if g != G.identity])
    assert diameter(compute_lengths(everything))[0] == 1


@pytest.mark.parametrize("n", range(3, 25))
def test_table_invariants_and_doubling_bound(n):
    G = dihedral(n)
    sets = list(small_generating_sets(n)) if n <= 12 else [
        genset(n, "f", "r*f"), genset(n, "f", "r", f"r^{n - 1}"), genset(n, "f", "r*f", "r^2*f")]
    for S in sets:
        T = compute_lengths(S)
        assert T.lengths[0] == 0 and all(d > 0 for d in T.lengths[1:])
        for g in G.elements():
            assert T.length(g) == T.length(inverse(g, G))
            for s in S:
                assert abs(T.length(mul(g, s, G)) - T.length(g)) <= 1
        rep = lambda_report(S, T)
        assert rep.lambda2 <= 2 * rep.lambda1
        assert 1 <= rep.lambda1 <= rep.diameter and rep.lambda2 <= rep.diameter


@pytest.mark.parametrize("n", range(3, 65))
def test_two_flip_length_multiset(n):
    T = compute_lengths(genset(n, "f", "r*f"))
    expected = [0] + [k for k in range(1, n) for _ in range(2)] + [n]
    assert sorted(T.lengths) == expected


def test_cyclic_group_extreme_case():
    for n in range(3, 25):
        C = cyclic(n)
        S = validate_symmetric(n, [E(1), E(n - 1)], group=C)
        rep = lambda_report(S)
        assert rep.lambda1 == 1 and rep.lambda2 <= 2


@pytest.mark.parametrize("n", range(3, 13))
def test_full_sets_extreme_cases(n):
    G = dihedral(n)
    everything = validate_symmetric(n, [g for g in G.elements() if g != G.identity])
    rep = lambda_report(everything)
    assert (rep.lambda1, rep.lambda2) == (1, 1)
    flips = validate_symmetric(n, [refl(k, G) for k in range(n)])
    rep = lambda_report(flips)
    assert (rep.lambda1, rep.lambda2) == (1, 2)


@pytest.mark.parametrize("n,gens,nodes,edges", [
    (3, ["f", "r*f"], 6, 12), (4, ["f", "r*f"], 8, 16), (5, ["f", "r*f", "r^2*f"], 10, 30)])
def test_export_counts(n, gens, nodes, edges):
    S = genset(n, *gens)
    buf = io.BytesIO()
    export_cayley(S, compute_lengths(S), buf)
    text = buf.getvalue().decode()
    assert len(re.findall(r"^\s*n\d+ \[label", text, re.M)) == nodes
    assert len(re.findall(r"->", text)) == edges
    again = io.BytesIO()
    export_cayley(S, compute_lengths(S), again)
    assert again.getvalue() == buf.getvalue()


def test_export_sink_failure():
    class Broken(io.BytesIO):
        def write(self, data):
            raise OSError("disk full")

    S = genset(3, "f", "r*f")
    with pytest.raises(SinkWriteFailure):
        export_cayley(S, compute_lengths(S), Broken())


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8, 10, 12, 16])
def test_batch_engine_matches_reference(n):
    by_size = {}
    for S in small_generating_sets(n):
        by_size.setdefault(len(S), []).append(S)
    for sets in by_size.values():
        B = lambdas_for(sets)
        assert B.generating.all()
        for row, S in enumerate(sets):
            T = compute_lengths(S)
            assert list(B.lengths[row]) == list(T.lengths)
            assert B.report(row, S) == lambda_report(S, T)


def test_batch_marks_non_generating_rows():
    n = 6
    sets = [genset(n, "f", "r^2*f"), genset(n, "f", "r*f")]
    B = batch_lambdas(dihedral(n), gen_indices(sets))
    assert list(B.generating) == [False, True]
    assert B.lambda1[0] == -1 and B.lambda1[1] == 5
