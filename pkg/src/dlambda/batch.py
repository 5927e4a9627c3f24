"""Vectorized word lengths and lambda values for many generating sets at once.

Same quantities as :mod:`dlambda.wordlen`, computed with numpy over a batch of
sets that share one group.  Sweeps over thousands of sets per ``n`` use this
path; the pure-Python engine in ``wordlen`` stays the reference it is tested
against.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .genset import GenSet
from .group import GroupDescriptor
from .wordlen import LambdaReport

CHUNK = 2048


@lru_cache(maxsize=64)
def group_tables(G: GroupDescriptor) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(mul, inv, conj)`` index tables with ``conj[g, x] = g x g^-1``."""
    n, N = G.n, G.order
    idx = np.arange(N)
    k, e = idx % n, idx // n
    ka, ea = k[:, None], e[:, None]
    kb, eb = k[None, :], e[None, :]
    rot = np.where(ea == 1, ka - kb, ka + kb) % n
    table = rot + n * (ea ^ eb)
    inv = np.where(e == 1, idx, (-k) % n)
    # (g x) g^-1
    conj = table[table, inv[:, None]]
    for arr in (table, inv, conj):
        arr.setflags(write=False)
    return table, inv, conj


def gen_indices(sets: Sequence[GenSet]) -> np.ndarray:
    G = sets[0].group
    return np.array([[G.index(s) for s in S] for S in sets], dtype=np.intp)


def batch_lengths(G: GroupDescriptor, gens: np.ndarray) -> np.ndarray:
    """Word-length rows for each generating set (row of element indices); -1 if unreachable."""
    table, _, _ = group_tables(G)
    M, k = gens.shape
    N = G.order
    dist = np.full((M, N), -1, dtype=np.int32)
    dist[:, 0] = 0
    frontier = np.zeros((M, N), dtype=bool)
    frontier[:, 0] = True
    # nbr[m, j, e] = e * s_j; pulling through it is valid because S is symmetric
    offsets = (np.arange(M) * N)[:, None]
    nbr = [table[:, gens[:, j]].T + offsets for j in range(k)]
    unseen = np.ones((M, N), dtype=bool)
    unseen[:, 0] = False
    level = 0
    while True:
        level += 1
        flat = frontier.ravel()
        hit = flat[nbr[0]]
        for idx in nbr[1:]:
            hit |= flat[idx]
        hit &= unseen
        if not hit.any():
            return dist
        dist[hit] = level
        unseen &= ~hit
        frontier = hit


def closure_sizes(sets: Sequence[GenSet]) -> dict[GenSet, int]:
    """Subgroup order generated by each (symmetric) set, via batch search."""
    out: dict[GenSet, int] = {}
    by_shape: dict[tuple, list[GenSet]] = {}
    for S in sets:
        by_shape.setdefault((S.group, len(S)), []).append(S)
    for (G, _), group in by_shape.items():
        gens = gen_indices(group)
        for i in range(0, len(group), CHUNK):
            counts = (batch_lengths(G, gens[i:i + CHUNK]) >= 0).sum(axis=1)
            out.update(zip(group[i:i + CHUNK], map(int, counts)))
    return out


@dataclass
class BatchLambdas:
    group: GroupDescriptor
    gens: np.ndarray
    lengths: np.ndarray
    generating: np.ndarray
    lambda1: np.ndarray
    lambda2: np.ndarray
    # (g, j) and (g, j, j') as element / generator indices
    witness1: np.ndarray
    witness2: np.ndarray
    diameter: np.ndarray

    def take(self, rows) -> "BatchLambdas":
        rows = np.asarray(rows, dtype=np.intp)
        return BatchLambdas(self.group, self.gens[rows], self.lengths[rows], self.generating[rows],
                            self.lambda1[rows], self.lambda2[rows], self.witness1[rows],
                            self.witness2[rows], self.diameter[rows])

    def report(self, row: int, S: GenSet) -> LambdaReport:
        G = self.group
        g, j = self.witness1[row]
        h, t, u = self.witness2[row]
        el = G.element
        return LambdaReport(
            S,
            int(self.lambda1[row]),
            int(self.lambda2[row]),
            (el(int(g)), S[int(j)]),
            (el(int(h)), S[int(t)], S[int(u)]),
            int(self.diameter[row]),
        )


def _lambdas_chunk(G: GroupDescriptor, gens: np.ndarray):
    table, _, conj = group_tables(G)
    M, k = gens.shape
    N = G.order
    dist = batch_lengths(G, gens)
    generating = (dist >= 0).all(axis=1)
    flat = dist.ravel()
    offsets = (np.arange(M) * N)[:, None]

    # conj[:, gens] -> (N, M, k); moved to (M, N, k) so argmax is (g, j)-lexicographic
    c1 = conj[:, gens].transpose(1, 0, 2).reshape(M, N * k)
    v1 = flat[c1 + offsets]
    a1 = v1.argmax(axis=1)
    l1 = v1[np.arange(M), a1]

    prods = table[gens[:, :, None], gens[:, None, :]]  # (M, k, k)
    c2 = conj[:, prods].transpose(1, 0, 2, 3).reshape(M, N * k * k)
    v2 = flat[c2 + offsets]
    a2 = v2.argmax(axis=1)
    l2 = v2[np.arange(M), a2]

    w1 = np.stack([a1 // k, a1 % k], axis=1)
    w2 = np.stack([a2 // (k * k), (a2 // k) % k, a2 % k], axis=1)
    diam = dist.max(axis=1)
    bad = ~generating
    for arr in (l1, l2, diam):
        arr[bad] = -1
    return dist, generating, l1, l2, w1, w2, diam


def batch_lambdas(G: GroupDescriptor, gens: np.ndarray) -> BatchLambdas:
    """Lambda values for every row of ``gens``; rows that do not generate get -1."""
    gens = np.asarray(gens, dtype=np.intp)
    if gens.ndim != 2 or len(gens) == 0:
        raise ValueError("gens must be a nonempty 2-d array of element indices")
    parts = [_lambdas_chunk(G, gens[i:i + CHUNK]) for i in range(0, len(gens), CHUNK)]
    cols = [np.concatenate([p[c] for p in parts]) for c in range(7)]
    return BatchLambdas(G, gens, *cols)


def lambdas_for(sets: Sequence[GenSet]) -> BatchLambdas:
    """Batch lambdas for sets that share a group and a cardinality."""
    return batch_lambdas(sets[0].group, gen_indices(sets))
