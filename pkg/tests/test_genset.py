from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, strategies as st

from dlambda.errors import ContainsIdentity, DuplicateElement, NotInverseClosed, ParseError, WrongShape
from dlambda.genset import (
    PresentationClass as PC,
    classify,
    closure_size,
    generates,
    genset,
    pair_generates_by_gcd,
    pair_subgroups,
    parse_genset,
    three_flip_class_by_gcd,
    validate_symmetric,
)
from dlambda.group import DihedralElement as E, dihedral, mul, refl


def subgroup(gens, G):
    """Fixed-point closure with generic multiplication; the test oracle."""
    H = {G.identity}
    while True:
        new = {mul(h, s, G) for h in H for s in gens} | H
        if new == H:
            return H
        H = new


def three_flip_sets(n):
    for c in combinations(range(n), 3):
        yield validate_symmetric(n, [refl(k, dihedral(n)) for k in c])


def test_validate_examples():
    S = genset(6, "f", "r^1*f", "r^3")
    assert S.elements == (E(3), E(0, True), E(1, True))
    with pytest.raises(NotInverseClosed) as info:
        genset(5, "f", "r")
    assert "r^4" in str(info.value)
    with pytest.raises(ContainsIdentity):
        genset(5, "1", "f")
    with pytest.raises(DuplicateElement):
        genset(5, "f", "r^5*f")


def test_genset_text_round_trip():
    S = genset(30, "r^5*f", "f", "r^3*f")
    assert str(S) == "n=30; S={f, r^3*f, r^5*f}"
    assert parse_genset(str(S)) == S
    with pytest.raises(ParseError):
        parse_genset("S={f}")


def test_generates_examples():
    assert not generates(genset(4, "f", "r^2*f"))
    assert generates(genset(30, "f", "r^3*f", "r^5*f"))
    assert generates(genset(5, "f", "r*f"))


def test_pair_generates_by_gcd_examples():
    assert not pair_generates_by_gcd(4, 2)
    assert not pair_generates_by_gcd(30, 2)
    assert pair_generates_by_gcd(7, 3)


@pytest.mark.parametrize("n", [3, 4, 6, 8, 9, 12, 15])
def test_closure_size_matches_oracle(n):
    G = dihedral(n)
    elems = list(G.elements())
    for a, b in combinations(elems, 2):
        assert closure_size([a, b], G) == len(subgroup([a, b], G))


def test_card2_iff_coprime():
    for n in range(3, 65):
        for a in range(1, n):
            cls = classify(genset(n, "f", f"r^{a}*f")).kind
            assert (cls is PC.CARD2) == (gcd(a, n) == 1)


@pytest.mark.parametrize(
    "n,gens,expected",
    [
        (5, ["f", "r*f", "r^2*f"], PC.THREE_INV_A),
        (6, ["f", "r*f", "r^2*f"], PC.THREE_INV_B),
        (6, ["f", "r*f", "r^4*f"], PC.THREE_INV_C),
        (30, ["f", "r^3*f", "r^5*f"], PC.THREE_INV_D),
        (6, ["f", "r*f", "r^3"], PC.TWO_INV_ONE_CENTRAL),
        (6, ["f", "r", "r^5"], PC.ONE_INV_TWO_CYCLIC),
        (7, ["f", "r^3*f"], PC.CARD2),
        (4, ["f", "r^2*f"], PC.NON_GENERATING),
        (6, ["f", "r^2*f", "r^4*f"], PC.NON_GENERATING),
        (6, ["f", "r^2", "r^4"], PC.NON_GENERATING),
        (8, ["f", "r^2*f", "r^4"], PC.NON_GENERATING),
        (6, ["f", "r^2*f", "r^3"], PC.UNCLASSIFIED),
        (6, ["r^3", "r", "r^5"], PC.NON_GENERATING),
        (6, ["r^3*f"], PC.NON_GENERATING),
    ],
)
def test_classify_examples(n, gens, expected):
    assert classify(genset(n, *gens)).kind is expected


def test_classify_pairs_for_worked_examples():
    assert classify(genset(6, "f", "r*f", "r^2*f")).generating_pairs == ((0, 1), (1, 2))
    assert classify(genset(6, "f", "r*f", "r^4*f")).generating_pairs == ((0, 1),)
    c = classify(genset(30, "f", "r^3*f", "r^5*f"))
    assert c.generating_pairs == ()
    assert c.exponents == (3, 5) and c.translation == 0


def test_translation_reported():
    c = classify(genset(7, "r^2*f", "r^3*f", "r^5*f"))
    assert (c.translation, c.exponents) == (2, (1, 3))


def test_pair_subgroup_examples():
    # oracle: brute-force closure of <r^a>, <r^b>, <r^(b-a)> and of H1 u H2
    for n, a, b in [(30, 3, 5), (6, 1, 2), (5, 1, 2)]:
        G = dihedral(n)
        h1 = subgroup([E(a)], G)
        h2 = subgroup([E(b)], G)
        h3 = subgroup([E((b - a) % n)], G)
        h12 = {mul(x, y, G) for x in h1 for y in h2}
        got = pair_subgroups(genset(n, "f", f"r^{a}*f", f"r^{b}*f")).as_tuple()
        assert got == (len(h1), len(h2), len(h3), len(h12))
        assert h3 <= h12
    assert pair_subgroups(genset(30, "f", "r^3*f", "r^5*f")).as_tuple() == (10, 6, 15, 30)
    assert pair_subgroups(genset(6, "f", "r*f", "r^2*f")).as_tuple() == (6, 3, 6, 6)
    assert pair_subgroups(genset(5, "f", "r*f", "r^2*f")).as_tuple() == (5, 5, 5, 5)


def test_pair_subgroups_wrong_shape():
    with pytest.raises(WrongShape):
        pair_subgroups(genset(6, "f", "r*f", "r^3"))


@pytest.mark.parametrize("n", range(3, 41))
def test_subgroup_lemma_and_class_agreement(n):
    for S in three_flip_sets(n):
        c = classify(S)
        assert generates(S) == (c.subgroups.h1h2 == n)
        expected = {3: PC.THREE_INV_A, 2: PC.THREE_INV_B, 1: PC.THREE_INV_C}
        pairs = [p for p in combinations(S.elements, 2) if generates(validate_symmetric(n, p))]
        if not generates(S):
            assert c.kind is PC.NON_GENERATING
        else:
            assert c.kind is expected.get(len(pairs), PC.THREE_INV_D)
        assert len(c.generating_pairs) == len(pairs)


def is_prime_power(n):
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


def test_class_d_needs_two_primes():
    for n in range(3, 65):
        found = any(three_flip_class_by_gcd(n, a, b) is PC.THREE_INV_D
                    for a in range(1, n) for b in range(a + 1, n))
        if is_prime_power(n):
            assert not found, n
    assert three_flip_class_by_gcd(30, 3, 5) is PC.THREE_INV_D


def test_class_d_uses_gcd_with_n():
    # 15 and 35 share 5, which does not divide 42, so the triple still generates
    S = genset(42, "f", "r^15*f", "r^35*f")
    assert generates(S)
    assert classify(S).kind is PC.THREE_INV_D


@given(st.integers(3, 40), st.data())
def test_classification_is_exhaustive_for_small_sets(n, data):
    G = dihedral(n)
    elems = [e for e in G.elements() if e != G.identity]
    s = data.draw(st.sampled_from(elems))
    from dlambda.group import inverse
    raw = {s, inverse(s, G)}
    if len(raw) < 3:
        t = data.draw(st.sampled_from(elems))
        raw |= {t, inverse(t, G)}
    if len(raw) > 3:
        return
    S = validate_symmetric(n, sorted(raw))
    c = classify(S)
    assert (c.kind is not PC.NON_GENERATING) == generates(S)
