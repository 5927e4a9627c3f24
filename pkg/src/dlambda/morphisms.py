"""Relation-preserving maps between generating sets.

A bijection between two generating sets extends to an automorphism of the
ambient group exactly when every relation among the first set still holds
among the images.  Rather than enumerate relators, the extension is built
along the Cayley graph of the source set and checked on every edge.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .batch import group_tables
from .errors import DifferentAmbient, NotGenerating, TransferViolation
from .genset import GenSet, closure_size
from .group import DihedralElement, GroupDescriptor, element_order, format_element, mul, power
from .wordlen import compute_lengths, lambda_report


@dataclass(frozen=True)
class RelationSignature:
    """Relations among a generating set, in a canonical generator order.

    ``orders[i]`` is the order of generator i, ``product_orders[i][j]`` the
    order of ``s_i s_j``.  For three reflections, ``subgroup_pattern[p][q]``
    compares the cyclic subgroups of pairs p and q (pairs in the order
    (0,1), (0,2), (1,2)) as one of ``"="``, ``"<"``, ``">"``, ``"|"``, and
    ``discrete_logs`` holds, for each ordered pair (i, j) that generates, the
    exponent e with ``s_k = (s_j s_i)^e s_i``; -1 where the pair does not
    generate.
    """

    orders: tuple[int, ...]
    product_orders: tuple[tuple[int, ...], ...]
    subgroup_pattern: tuple[tuple[str, ...], ...] = ()
    discrete_logs: tuple[int, ...] = ()
    # generators in the order the fields refer to
    labeling: tuple[DihedralElement, ...] = field(default=(), compare=False)

    def key(self) -> tuple:
        return (self.orders, self.product_orders, self.subgroup_pattern, self.discrete_logs)


_PAIRS = ((0, 1), (0, 2), (1, 2))


def _compare_cyclic(h: int, k: int) -> str:
    # subgroups of a cyclic group are determined by their orders
    if h == k:
        return "="
    if k % h == 0:
        return "<"
    if h % k == 0:
        return ">"
    return "|"


def signature_in_order(gens: Sequence[DihedralElement], S: GenSet) -> RelationSignature:
    """Signature with fields indexed by ``gens`` as listed (no canonical reordering)."""
    G = S.group
    orders = tuple(element_order(s, G) for s in gens)
    products = tuple(tuple(element_order(mul(s, t, G), G) for t in gens) for s in gens)
    pattern: tuple[tuple[str, ...], ...] = ()
    logs: tuple[int, ...] = ()
    if len(gens) == 3 and all(s.flip for s in gens):
        sub = [products[i][j] for i, j in _PAIRS]
        pattern = tuple(tuple(_compare_cyclic(h, k) for k in sub) for h in sub)
        found = []
        for i, j in itertools.permutations(range(3), 2):
            (k,) = set(range(3)) - {i, j}
            found.append(_discrete_log(gens[i], gens[j], gens[k], S))
        logs = tuple(found)
    return RelationSignature(orders, products, pattern, logs, tuple(gens))


def _discrete_log(si: DihedralElement, sj: DihedralElement, sk: DihedralElement, S: GenSet) -> int:
    """Exponent e with ``sk = (sj si)^e si`` when {si, sj} generates, else -1."""
    G = S.group
    rho = mul(sj, si, G)
    if element_order(rho, G) != S.n:
        return -1
    # rho = r^c with c a unit; sk si^-1 = r^d, so e = d / c mod n
    d = mul(sk, si, G).rot_exp
    return d * pow(rho.rot_exp, -1, S.n) % S.n


def relation_signature(S: GenSet) -> RelationSignature:
    """Canonical signature: the least over all relabelings of S."""
    best = None
    for perm in itertools.permutations(S.elements):
        sig = signature_in_order(perm, S)
        if best is None or sig.key() < best.key():
            best = sig
    return best


@dataclass(frozen=True)
class AutomorphismTable:
    source: GenSet
    target: GenSet
    generator_map: tuple[tuple[DihedralElement, DihedralElement], ...]
    # element_map[i] is the image of the element with index i
    element_map: tuple[DihedralElement, ...]

    def image(self, g: DihedralElement) -> DihedralElement:
        return self.element_map[self.source.group.index(g)]

    __call__ = image

    def rows(self) -> Iterator[tuple[DihedralElement, DihedralElement]]:
        G = self.source.group
        return ((g, self.element_map[G.index(g)]) for g in G.elements())

    def is_automorphism(self) -> bool:
        """Exhaustive check: bijective, multiplicative, and extends the generator map."""
        G = self.source.group
        if len(set(self.element_map)) != G.order:
            return False
        if any(self.image(s) != t for s, t in self.generator_map):
            return False
        elems = list(G.elements())
        return all(
            self.image(mul(a, b, G)) == mul(self.image(a), self.image(b), G)
            for a in elems for b in elems
        )

    def generator_text(self) -> str:
        return ", ".join(f"{format_element(s)} -> {format_element(t)}" for s, t in self.generator_map)

    def __str__(self) -> str:
        return "\n".join(f"{format_element(g)}\t{format_element(h)}" for g, h in self.rows())


def extend_map(S1: GenSet, S2: GenSet, images: Sequence[DihedralElement]) -> AutomorphismTable | None:
    """Extend ``S1[i] -> images[i]`` along the Cayley graph of S1.

    Each element's image is the image-word of its breadth-first geodesic;
    every edge g -> g*s is then checked for consistency.  Returns None when
    the map is not well defined or not bijective.
    """
    G = S1.group
    mul_table = _mul_rows(G)
    src = [G.index(s) for s in S1]
    dst = [G.index(t) for t in images]
    image = [-1] * G.order
    image[0] = 0
    queue = [0]
    for g in queue:
        row_g, row_x = mul_table[g], mul_table[image[g]]
        for s, t in zip(src, dst):
            h, y = row_g[s], row_x[t]
            if image[h] < 0:
                image[h] = y
                queue.append(h)
            elif image[h] != y:
                return None
    if len(queue) != G.order:
        raise NotGenerating(S1, len(queue))
    if len(set(image)) != G.order:
        return None
    return AutomorphismTable(S1, S2, tuple(zip(S1, images)), tuple(map(G.element, image)))


@lru_cache(maxsize=32)
def _mul_rows(G: GroupDescriptor) -> list[list[int]]:
    return group_tables(G)[0].tolist()


def _check_ambient(S1: GenSet, S2: GenSet) -> None:
    if S1.group != S2.group or len(S1) != len(S2):
        raise DifferentAmbient(
            f"{S1} and {S2} differ in group or cardinality ({S1.group}/{len(S1)} vs {S2.group}/{len(S2)})"
        )
    for S in (S1, S2):
        reached = closure_size(S)
        if reached != S.group.order:
            raise NotGenerating(S, reached)


def find_relation_preserving_map(S1: GenSet, S2: GenSet, all: bool = False):
    """First generator bijection S1 -> S2 that extends to an automorphism.

    Bijections are tried in lexicographic order of target indices.  Returns
    None when no bijection works; with ``all=True`` returns the list of every
    valid table instead (possibly empty).
    """
    _check_ambient(S1, S2)
    G = S1.group
    src_orders = [element_order(s, G) for s in S1]
    found = []
    for perm in itertools.permutations(range(len(S2))):
        images = [S2[p] for p in perm]
        if any(element_order(t, G) != o for t, o in zip(images, src_orders)):
            continue
        A = extend_map(S1, S2, images)
        if A is None:
            continue
        if not all:
            return A
        found.append(A)
    return found if all else None


@dataclass(frozen=True)
class TransferReport:
    source: GenSet
    target: GenSet
    diameters: tuple[int, int]
    pointwise: bool
    lambda1: tuple[int, int]
    lambda2: tuple[int, int]

    @property
    def lambdas_equal(self) -> bool:
        return self.lambda1[0] == self.lambda1[1] and self.lambda2[0] == self.lambda2[1]

    def __str__(self) -> str:
        return (
            f"diameter {self.diameters[0]} -> {self.diameters[1]}; "
            f"pointwise lengths {'preserved' if self.pointwise else 'NOT preserved'}; "
            f"lambda1 {self.lambda1[0]} -> {self.lambda1[1]}; "
            f"lambda2 {self.lambda2[0]} -> {self.lambda2[1]}"
        )


def check_length_transfer(S1: GenSet, S2: GenSet, A: AutomorphismTable) -> TransferReport:
    """Word lengths under S1 must equal lengths of the images under S2."""
    T1, T2 = compute_lengths(S1), compute_lengths(S2)
    G = S1.group
    for g in G.elements():
        before, after = T1.length(g), T2.length(A.image(g))
        if before != after:
            raise TransferViolation(g, before, after)
    d1, d2 = max(T1.lengths), max(T2.lengths)
    if d1 != d2:
        raise TransferViolation("diameter", d1, d2)
    r1, r2 = lambda_report(S1, T1), lambda_report(S2, T2)
    return TransferReport(S1, S2, (d1, d2), True, (r1.lambda1, r2.lambda1), (r1.lambda2, r2.lambda2))


def discrete_log_exponent(S: GenSet, i: int, j: int) -> int:
    """Exponent expressing the third generator over the ordered pair (i, j), or -1."""
    (k,) = set(range(3)) - {i, j}
    return _discrete_log(S[i], S[j], S[k], S)


def rotation_power(S: GenSet, i: int, j: int, e: int) -> DihedralElement:
    """``(s_j s_i)^e s_i``, the word a discrete-log exponent describes."""
    G = S.group
    return mul(power(mul(S[j], S[i], G), e, G), S[i], G)

