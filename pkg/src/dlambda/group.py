"""Exact arithmetic in dihedral groups D_n (and cyclic groups C_n).

An element is stored as ``r^k f^e`` with ``0 <= k < n``.  The ambient ``n``
lives in a :class:`GroupDescriptor` that is passed to every operation, so
elements stay small and map onto a dense index ``k + n*e``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterator, NamedTuple

from .errors import ParseError

DIHEDRAL = "dihedral"
CYCLIC = "cyclic"


class DihedralElement(NamedTuple):
    rot_exp: int
    flip: bool = False

    def __str__(self) -> str:
        return format_element(self)


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in (DIHEDRAL, CYCLIC):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == DIHEDRAL and self.n < 3:
            raise ValueError(f"dihedral groups need n >= 3, got {self.n}")
        if self.kind == CYCLIC and self.n < 1:
            raise ValueError(f"cyclic groups need n >= 1, got {self.n}")

    @property
    def order(self) -> int:
        return 2 * self.n if self.kind == DIHEDRAL else self.n

    @property
    def identity(self) -> DihedralElement:
        return DihedralElement(0, False)

    def index(self, a: DihedralElement) -> int:
        return a.rot_exp + self.n * a.flip

    def element(self, i: int) -> DihedralElement:
        return DihedralElement(i % self.n, i >= self.n)

    def elements(self) -> Iterator[DihedralElement]:
        """All elements in index order: rotations first, then flips."""
        for i in range(self.order):
            yield self.element(i)

    def __str__(self) -> str:
        return f"D_{self.n}" if self.kind == DIHEDRAL else f"C_{self.n}"


def dihedral(n: int) -> GroupDescriptor:
    return GroupDescriptor(DIHEDRAL, n)


def cyclic(n: int) -> GroupDescriptor:
    return GroupDescriptor(CYCLIC, n)


def rot(k: int, G: GroupDescriptor) -> DihedralElement:
    return DihedralElement(k % G.n, False)


def refl(k: int, G: GroupDescriptor) -> DihedralElement:
    """The reflection ``r^k f``."""
    return DihedralElement(k % G.n, True)


def mul(a: DihedralElement, b: DihedralElement, G: GroupDescriptor) -> DihedralElement:
    n = G.n
    if a.flip:
        return DihedralElement((a.rot_exp - b.rot_exp) % n, not b.flip)
    return DihedralElement((a.rot_exp + b.rot_exp) % n, b.flip)


def inverse(a: DihedralElement, G: GroupDescriptor) -> DihedralElement:
    if a.flip:
        return a
    return DihedralElement(-a.rot_exp % G.n, False)


def power(a: DihedralElement, k: int, G: GroupDescriptor) -> DihedralElement:
    if a.flip:
        return a if k % 2 else G.identity
    return DihedralElement(a.rot_exp * k % G.n, False)


def element_order(a: DihedralElement, G: GroupDescriptor) -> int:
    if a.flip:
        return 2
    return G.n // gcd(a.rot_exp, G.n)


def conjugate(g: DihedralElement, s: DihedralElement, G: GroupDescriptor) -> DihedralElement:
    """Return ``g s g^-1``."""
    return mul(mul(g, s, G), inverse(g, G), G)


def in_rotations(a: DihedralElement) -> bool:
    return not a.flip


def sort_key(a: DihedralElement) -> tuple[int, int]:
    return (int(a.flip), a.rot_exp)


# -- text format ------------------------------------------------------------

def format_element(a: DihedralElement) -> str:
    k, e = a
    if not e:
        return "1" if k == 0 else f"r^{k}"
    return "f" if k == 0 else f"r^{k}*f"


_ELEMENT_RE = re.compile(
    r"""^\s*(?:
        (?P<one>1)
      | (?P<r>r(?:\^(?P<k>-?\d+))?)?\s*\*?\s*(?P<f>f)?
    )\s*$""",
    re.VERBOSE,
)


def parse_element(text: str, G: GroupDescriptor) -> DihedralElement:
    """Parse ``1``, ``f``, ``r``, ``r^k``, ``r^k*f`` (also ``rf``, ``r^kf``)."""
    m = _ELEMENT_RE.match(text)
    if m is None or (not m.group("one") and not m.group("r") and not m.group("f")):
        raise ParseError(f"cannot parse group element {text!r}")
    if m.group("one"):
        return G.identity
    k = 0
    if m.group("r"):
        k = int(m.group("k")) if m.group("k") is not None else 1
    flip = m.group("f") is not None
    if flip and G.kind == CYCLIC:
        raise ParseError(f"{text!r} is a reflection, but {G} has none")
    return DihedralElement(k % G.n, flip)
