"""Symmetric generating sets of D_n and their presentation classes.

Every set of cardinality at most three is sorted into one of the families
below.  Generation is decided twice, once by closing the set under
multiplication and once by the gcd criteria on exponents; ``classify``
insists that the two answers agree.
"""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import gcd
from typing import Callable, Iterable, Sequence

from .errors import (
    ClassificationMismatch,
    ContainsIdentity,
    DuplicateElement,
    NotInverseClosed,
    ParseError,
    WrongShape,
)
from .group import (
    DIHEDRAL,
    DihedralElement,
    GroupDescriptor,
    cyclic,
    dihedral,
    element_order,
    format_element,
    inverse,
    mul,
    parse_element,
    sort_key,
)


class PresentationClass(str, enum.Enum):
    CARD2 = "Card2"
    TWO_INV_ONE_CENTRAL = "Card3_TwoInvOneCentral"
    ONE_INV_TWO_CYCLIC = "Card3_OneInvTwoCyclic"
    THREE_INV_A = "Card3_ThreeInv_A"
    THREE_INV_B = "Card3_ThreeInv_B"
    THREE_INV_C = "Card3_ThreeInv_C"
    THREE_INV_D = "Card3_ThreeInv_D"
    # generates D_n but matches none of the families above; only
    # {two flips whose pair does not generate, r^(n/2)} with n = 2 mod 4
    UNCLASSIFIED = "Unclassified"
    NON_GENERATING = "NonGenerating"

    def __str__(self) -> str:
        return self.value

    @property
    def is_three_involution(self) -> bool:
        return self in THREE_INV_CLASSES


THREE_INV_CLASSES = (
    PresentationClass.THREE_INV_A,
    PresentationClass.THREE_INV_B,
    PresentationClass.THREE_INV_C,
    PresentationClass.THREE_INV_D,
)

_BY_PAIR_COUNT = {3: PresentationClass.THREE_INV_A, 2: PresentationClass.THREE_INV_B,
                  1: PresentationClass.THREE_INV_C, 0: PresentationClass.THREE_INV_D}


@dataclass(frozen=True)
class GenSet:
    group: GroupDescriptor
    elements: tuple[DihedralElement, ...]

    @property
    def n(self) -> int:
        return self.group.n

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> DihedralElement:
        return self.elements[i]

    def index(self, s: DihedralElement) -> int:
        return self.elements.index(s)

    def subset(self, indices: Iterable[int]) -> "GenSet":
        return GenSet(self.group, tuple(self.elements[i] for i in indices))

    def elements_text(self) -> str:
        return "{" + ", ".join(format_element(s) for s in self.elements) + "}"

    def __str__(self) -> str:
        prefix = "" if self.group.kind == DIHEDRAL else f"{self.group.kind} "
        return f"{prefix}n={self.n}; S={self.elements_text()}"


def validate_symmetric(
    n: int, raw: Sequence[DihedralElement], group: GroupDescriptor | None = None
) -> GenSet:
    """Check ``1 not in S`` and inverse closure; return the sorted set."""
    G = group if group is not None else dihedral(n)
    if G.n != n:
        raise ValueError(f"group {G} does not match n={n}")
    if not raw:
        raise WrongShape("a generating set must be nonempty")
    elems = [DihedralElement(s.rot_exp % n, bool(s.flip)) for s in raw]
    seen = set()
    for s in elems:
        if s in seen:
            raise DuplicateElement(f"{format_element(s)} appears twice")
        seen.add(s)
    if G.identity in seen:
        raise ContainsIdentity("the identity may not belong to a symmetric generating set")
    for s in elems:
        s_inv = inverse(s, G)
        if s_inv not in seen:
            raise NotInverseClosed(format_element(s), format_element(s_inv))
    return GenSet(G, tuple(sorted(elems, key=sort_key)))


def genset(n: int, *texts: str) -> GenSet:
    """Convenience constructor: ``genset(6, "f", "r^1*f", "r^3")``."""
    G = dihedral(n)
    return validate_symmetric(n, [parse_element(t, G) for t in texts])


_GENSET_RE = re.compile(r"^\s*(cyclic\s+)?n\s*=\s*(\d+)\s*;\s*S\s*=\s*\{(.*)\}\s*$")


def parse_genset(text: str) -> GenSet:
    """Parse ``n=30; S={f, r^3*f, r^5*f}`` (``cyclic n=5; S={r^1, r^4}`` for C_n)."""
    m = _GENSET_RE.match(text)
    if m is None:
        raise ParseError(f"cannot parse generating set {text!r}")
    n = int(m.group(2))
    parts = [p for p in m.group(3).split(",") if p.strip()]
    if m.group(1):
        C = cyclic(n)
        return validate_symmetric(n, [parse_element(p, C) for p in parts], group=C)
    return genset(n, *parts)


# -- generation ---------------------------------------------------------------

def closure_size(S: GenSet | Sequence[DihedralElement], G: GroupDescriptor | None = None) -> int:
    """Order of the subgroup generated by the given elements (breadth-first closure)."""
    if isinstance(S, GenSet):
        G, gens = S.group, S.elements
    else:
        gens = tuple(sorted(S, key=sort_key))
    return _closure_size(G, gens)


# sweeps classify every triple; the three pairs inside each triple repeat
@lru_cache(maxsize=1 << 16)
def _closure_size(G: GroupDescriptor, gens: tuple[DihedralElement, ...]) -> int:
    n = G.n
    # right multiplication on dense indices k + n*e
    steps = [(s.rot_exp, int(s.flip)) for s in gens]
    seen = bytearray(G.order)
    seen[0] = 1
    queue = deque([(0, 0)])
    count = 1
    while queue:
        k, e = queue.popleft()
        for j, eps in steps:
            k2 = (k - j) % n if e else (k + j) % n
            e2 = e ^ eps
            i = k2 + n * e2
            if not seen[i]:
                seen[i] = 1
                count += 1
                queue.append((k2, e2))
    return count


def generates(S: GenSet) -> bool:
    return closure_size(S) == S.group.order


def pair_generates_by_gcd(n: int, a: int) -> bool:
    """Whether ``{f, r^a f}`` generates D_n."""
    if not 0 < a < n:
        raise ValueError(f"need 0 < a < n, got a={a}, n={n}")
    return gcd(a, n) == 1


# -- three-flip data ------------------------------------------------------------

@dataclass(frozen=True)
class SubgroupOrders:
    h1: int
    h2: int
    h3: int
    h1h2: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.h1, self.h2, self.h3, self.h1h2)


def _rotation_subgroup_order(n: int, *exps: int) -> int:
    g = n
    for e in exps:
        g = gcd(g, e % n)
    return n // g


def normalize_three_flips(S: GenSet) -> tuple[int, int, int]:
    """Translate ``{r^c0 f, r^c1 f, r^c2 f}`` to ``{f, r^a f, r^b f}``.

    Returns ``(t, a, b)`` with ``t = c0`` and ``0 < a < b < n``, where the
    ``c_i`` are taken in the stored (sorted) order.
    """
    if len(S) != 3 or not all(s.flip for s in S):
        raise WrongShape(f"{S} is not three reflections")
    c0, c1, c2 = (s.rot_exp for s in S)
    return c0, (c1 - c0) % S.n, (c2 - c0) % S.n


def pair_subgroups(S: GenSet) -> SubgroupOrders:
    """Orders of H1 = <r^a>, H2 = <r^b>, H3 = <r^(b-a)> and of the product H1 H2."""
    n = S.n
    _, a, b = normalize_three_flips(S)
    orders = SubgroupOrders(
        _rotation_subgroup_order(n, a),
        _rotation_subgroup_order(n, b),
        _rotation_subgroup_order(n, b - a),
        _rotation_subgroup_order(n, a, b),
    )
    # subgroups of a cyclic group: containment iff order divides
    if orders.h1h2 % orders.h3:
        raise ClassificationMismatch(f"H3 not inside H1H2 for {S}")
    return orders


def three_flip_class_by_gcd(n: int, a: int, b: int) -> PresentationClass:
    """Class of ``{f, r^a f, r^b f}`` from the exponent conditions alone.

    Class D uses ``gcd(a, b, n) == 1``: some integer representatives of a, b
    mod n are coprime exactly when that holds.
    """
    pairs = sum(gcd(x % n, n) == 1 for x in (a, b, b - a))
    if pairs:
        return _BY_PAIR_COUNT[pairs]
    if gcd(gcd(a, b), n) == 1:
        return PresentationClass.THREE_INV_D
    return PresentationClass.NON_GENERATING


@dataclass(frozen=True)
class Classification:
    genset: GenSet
    kind: PresentationClass
    translation: int | None = None
    exponents: tuple[int, int] | None = None
    subgroups: SubgroupOrders | None = None
    generating_pairs: tuple[tuple[int, int], ...] = field(default=())

    def __str__(self) -> str:
        return str(self.kind)


def _check(by_closure, by_gcd, S: GenSet, what: str):
    if by_closure != by_gcd:
        raise ClassificationMismatch(
            f"{what} for {S}: closure says {by_closure}, gcd says {by_gcd}"
        )


def classify(S: GenSet, closure: Callable[[GenSet], int] | None = None) -> Classification:
    """Sort ``S`` into its presentation family.

    ``closure`` returns the order of the subgroup a set generates; it defaults
    to :func:`closure_size` and exists so batch callers can supply
    precomputed answers.  The gcd criteria are always evaluated independently.
    """
    closure = closure or closure_size
    order = S.group.order

    def spans(T: GenSet) -> bool:
        return closure(T) == order

    def generating_pairs() -> tuple[tuple[int, int], ...]:
        return tuple(p for p in combinations(range(len(S)), 2) if spans(S.subset(p)))

    if S.group.kind != DIHEDRAL:
        raise WrongShape("classification applies to dihedral groups only")
    if len(S) > 3:
        raise WrongShape(f"classification covers |S| <= 3, got {len(S)}")
    n = S.n
    flips = [s for s in S if s.flip]
    rots = [s for s in S if not s.flip]
    whole = spans(S)
    C = PresentationClass

    if len(S) == 1:
        return Classification(S, C.NON_GENERATING)

    if len(S) == 2:
        if len(flips) == 2:
            x, y = flips
            d = (y.rot_exp - x.rot_exp) % n
            by_gcd = element_order(mul(x, y, S.group), S.group) == n
            _check(whole, by_gcd and pair_generates_by_gcd(n, d), S, "pair generation")
            if whole:
                return Classification(S, C.CARD2, generating_pairs=((0, 1),))
        return Classification(S, C.NON_GENERATING)

    if len(flips) == 3:
        t, a, b = normalize_three_flips(S)
        subgroups = pair_subgroups(S)
        pairs = generating_pairs()
        _check(whole, subgroups.h1h2 == n, S, "H1H2 criterion")
        by_closure = _BY_PAIR_COUNT[len(pairs)] if whole else C.NON_GENERATING
        by_gcd = three_flip_class_by_gcd(n, a, b)
        _check(by_closure, by_gcd, S, "three-involution class")
        return Classification(S, by_closure, translation=t, exponents=(a, b),
                              subgroups=subgroups, generating_pairs=pairs)

    if len(flips) == 2:
        # symmetric forces the rotation to be self-inverse: r^(n/2)
        (z,) = rots
        x, y = flips
        d = (y.rot_exp - x.rot_exp) % n
        pair_ok = spans(S.subset(i for i, s in enumerate(S) if s.flip))
        _check(pair_ok, pair_generates_by_gcd(n, d), S, "flip pair generation")
        _check(whole, gcd(gcd(d, z.rot_exp), n) == 1, S, "generation")
        pairs = generating_pairs()
        if pair_ok:
            return Classification(S, C.TWO_INV_ONE_CENTRAL, generating_pairs=pairs)
        if whole:
            return Classification(S, C.UNCLASSIFIED, generating_pairs=pairs)
        return Classification(S, C.NON_GENERATING, generating_pairs=pairs)

    if len(flips) == 1:
        y, z = rots
        by_gcd = element_order(y, S.group) == n
        _check(whole, by_gcd, S, "rotation order")
        if whole:
            return Classification(S, C.ONE_INV_TWO_CYCLIC)
        return Classification(S, C.NON_GENERATING)

    _check(whole, False, S, "rotation-only generation")
    return Classification(S, C.NON_GENERATING)
