"""Word lengths by breadth-first search of the Cayley graph.

Distances use right multiplication ``g -> g*s``; since S is closed under
inverses this is the usual word metric.  All tables are dense lists indexed by
``GroupDescriptor.index``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import BinaryIO

from .errors import NotGenerating, SinkWriteFailure
from .genset import GenSet
from .group import DihedralElement, conjugate, format_element, mul


@dataclass(frozen=True)
class LengthTable:
    genset: GenSet
    lengths: tuple[int, ...]
    # one geodesic per element, as generator indices
    words: tuple[tuple[int, ...], ...]

    def length(self, g: DihedralElement) -> int:
        return self.lengths[self.genset.group.index(g)]

    __getitem__ = length

    def word(self, g: DihedralElement) -> tuple[int, ...]:
        return self.words[self.genset.group.index(g)]


@dataclass(frozen=True)
class LambdaReport:
    genset: GenSet
    lambda1: int
    lambda2: int
    witness1: tuple[DihedralElement, DihedralElement]
    witness2: tuple[DihedralElement, DihedralElement, DihedralElement]
    diameter: int

    def __str__(self) -> str:
        g, s = self.witness1
        h, t, u = self.witness2
        return (
            f"{self.genset}\n"
            f"lambda1 = {self.lambda1}  (g={g}, s={s})\n"
            f"lambda2 = {self.lambda2}  (g={h}, s={t}, s'={u})\n"
            f"diameter = {self.diameter}"
        )


def compute_lengths(S: GenSet) -> LengthTable:
    G = S.group
    size = G.order
    lengths = [-1] * size
    words: list[tuple[int, ...] | None] = [None] * size
    lengths[0], words[0] = 0, ()
    queue = deque([G.identity])
    while queue:
        g = queue.popleft()
        gi = G.index(g)
        for j, s in enumerate(S):
            h = mul(g, s, G)
            hi = G.index(h)
            if lengths[hi] < 0:
                lengths[hi] = lengths[gi] + 1
                words[hi] = words[gi] + (j,)
                queue.append(h)
    reached = sum(d >= 0 for d in lengths)
    if reached != size:
        raise NotGenerating(S, reached)
    return LengthTable(S, tuple(lengths), tuple(words))


def word_value(S: GenSet, word) -> DihedralElement:
    g = S.group.identity
    for j in word:
        g = mul(g, S[j], S.group)
    return g


def lambda1(S: GenSet, T: LengthTable) -> tuple[int, tuple[DihedralElement, DihedralElement]]:
    """Max of ``l(g s g^-1)``; witness is the first maximizer in (g, s) index order."""
    G = S.group
    best, witness = -1, None
    for g in G.elements():
        for s in S:
            d = T.length(conjugate(g, s, G))
            if d > best:
                best, witness = d, (g, s)
    return best, witness


def lambda2(
    S: GenSet, T: LengthTable
) -> tuple[int, tuple[DihedralElement, DihedralElement, DihedralElement]]:
    """Max of ``l(g s s' g^-1)`` over ordered pairs, ``s == s'`` included."""
    G = S.group
    best, witness = -1, None
    for g in G.elements():
        for s in S:
            for t in S:
                d = T.length(conjugate(g, mul(s, t, G), G))
                if d > best:
                    best, witness = d, (g, s, t)
    return best, witness


def diameter(T: LengthTable) -> tuple[int, list[DihedralElement]]:
    G = T.genset.group
    top = max(T.lengths)
    return top, [G.element(i) for i, d in enumerate(T.lengths) if d == top]


def lambda_report(S: GenSet, T: LengthTable | None = None) -> LambdaReport:
    T = T if T is not None else compute_lengths(S)
    l1, w1 = lambda1(S, T)
    l2, w2 = lambda2(S, T)
    return LambdaReport(S, l1, l2, w1, w2, max(T.lengths))


def export_cayley(S: GenSet, T: LengthTable, sink: BinaryIO) -> None:
    """Write the Cayley graph as a DOT digraph: node per element, edge per (g, s)."""
    G = S.group
    lines = [f'digraph "{S}" {{']
    for g in G.elements():
        i = G.index(g)
        lines.append(f'  n{i} [label="{format_element(g)} ({T.lengths[i]})"];')
    for g in G.elements():
        for j, s in enumerate(S):
            h = mul(g, s, G)
            lines.append(f'  n{G.index(g)} -> n{G.index(h)} [label="{j}"];')
    lines.append("}")
    try:
        sink.write(("\n".join(lines) + "\n").encode("utf-8"))
    except (OSError, ValueError) as exc:
        raise SinkWriteFailure(str(exc)) from exc
