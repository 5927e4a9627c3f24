"""Closed-form lambda predictions per presentation family, checked against the oracle.

``predict`` knows the values proved for each family.  ``verify_family`` and the
two conjecture sweeps enumerate concrete generating sets, classify them, run
the batch oracle and compare.  Violations are returned as data; callers
decide what a violation means (a broken theorem vs. a conjecture
counterexample).
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .batch import BatchLambdas, lambdas_for
from .errors import CapExceeded, UnsupportedClass
from .genset import (
    THREE_INV_CLASSES,
    GenSet,
    PresentationClass as PC,
    classify,
    closure_size,
    validate_symmetric,
)
from .group import dihedral, refl, rot
from .wordlen import LambdaReport

DEFAULT_SWEEP_CAP = 512


class Kind(str, enum.Enum):
    EXACT = "exact"
    BOUND = "bound"  # proved upper bound
    CONJECTURE = "conjecture"  # conjectured upper bound

    def __str__(self) -> str:
        return self.value


class Verdict(str, enum.Enum):
    MATCH = "match"
    BOUND_SATISFIED = "bound_satisfied"
    VIOLATION = "VIOLATION"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class PredictedBounds:
    family: PC
    lambda1_kind: Kind
    lambda1_value: int
    lambda2_kind: Kind
    lambda2_value: int
    provenance: str

    def describe(self, which: int) -> str:
        kind, value = ((self.lambda1_kind, self.lambda1_value) if which == 1
                       else (self.lambda2_kind, self.lambda2_value))
        return f"{kind}:{value}"


FAMILIES: dict[str, tuple[PC, ...]] = {
    "card2": (PC.CARD2,),
    "central": (PC.TWO_INV_ONE_CENTRAL,),
    "chiral": (PC.ONE_INV_TWO_CYCLIC,),
    "threeinv": THREE_INV_CLASSES,
}
FAMILIES["all"] = tuple(c for name in ("card2", "central", "chiral", "threeinv")
                        for c in FAMILIES[name])


def lemma_set_kind(S: GenSet) -> str | None:
    """'consecutive' for translates of {f, rf, r^2 f}, 'gap3' for {f, rf, r^3 f}.

    Reflected copies (r -> r^-1 is an automorphism) count too.
    """
    if len(S) != 3 or not all(s.flip for s in S):
        return None
    n = S.n
    exps = [s.rot_exp for s in S]
    shapes = {frozenset((c - t) % n for c in exps) for t in exps}
    shapes |= {frozenset((t - c) % n for c in exps) for t in exps}
    if frozenset({0, 1, 2}) in shapes:
        return "consecutive"
    if n > 3 and frozenset({0, 1, 3}) in shapes:
        return "gap3"
    return None


def predict(cls: PC, n: int, S: GenSet | None = None) -> PredictedBounds:
    half = n // 2
    if cls is PC.CARD2:
        return PredictedBounds(cls, Kind.EXACT, n if n % 2 else n - 1, Kind.EXACT, 2,
                               "two reflections: n (odd) / n-1 (even); lambda2 = 2")
    if cls is PC.TWO_INV_ONE_CENTRAL:
        if n % 2:
            raise UnsupportedClass(f"{cls} needs even n, got {n}")
        if n == 4:
            # small case handled directly rather than by the general count
            return PredictedBounds(cls, Kind.EXACT, 2, Kind.EXACT, 2,
                                   "two reflections + centre, n = 4 checked directly")
        return PredictedBounds(cls, Kind.EXACT, half, Kind.EXACT, half,
                               "two reflections + centre: lambda1 = lambda2 = n/2")
    if cls is PC.ONE_INV_TWO_CYCLIC:
        if n % 4 == 0:
            l1, l2 = half + 1, half
        elif n % 2 == 0:
            l1, l2 = half, half + 1
        else:
            l1, l2 = half + 1, half + 1
        return PredictedBounds(cls, Kind.EXACT, l1, Kind.EXACT, l2,
                               "reflection + rotation pair: piecewise in n mod 4")
    if cls in THREE_INV_CLASSES:
        lemma = lemma_set_kind(S) if S is not None else None
        if lemma is not None:
            return PredictedBounds(cls, Kind.BOUND, half + 1, Kind.EXACT, 2,
                                   f"three reflections ({lemma}): proved bound floor(n/2)+1")
        return PredictedBounds(cls, Kind.CONJECTURE, half + 1, Kind.EXACT, 2,
                               "three reflections: conjectured bound floor(n/2)+1")
    raise UnsupportedClass(f"no prediction for {cls}")


def _side_ok(kind: Kind, predicted: int, observed: int) -> bool:
    return observed == predicted if kind is Kind.EXACT else observed <= predicted


@dataclass(frozen=True)
class VerificationRecord:
    n: int
    genset: GenSet
    family: PC
    predicted: PredictedBounds
    observed: LambdaReport
    verdict: Verdict
    # which checks failed: "lambda1", "lambda2", "doubling" (lambda2 <= 2 lambda1)
    failures: tuple[str, ...] = ()

    @property
    def theorem_violation(self) -> bool:
        """A failure of something proved (exact value, proved bound, lambda2 <= 2 lambda1)."""
        for f in self.failures:
            if f == "lambda1" and self.predicted.lambda1_kind is Kind.CONJECTURE:
                continue
            if f == "lambda2" and self.predicted.lambda2_kind is Kind.CONJECTURE:
                continue
            return True
        return False

    @property
    def conjecture_violation(self) -> bool:
        return bool(self.failures) and not self.theorem_violation


def judge(S: GenSet, family: PC, predicted: PredictedBounds, observed: LambdaReport) -> VerificationRecord:
    failures = []
    if not _side_ok(predicted.lambda1_kind, predicted.lambda1_value, observed.lambda1):
        failures.append("lambda1")
    if not _side_ok(predicted.lambda2_kind, predicted.lambda2_value, observed.lambda2):
        failures.append("lambda2")
    if observed.lambda2 > 2 * observed.lambda1:
        failures.append("doubling")
    if failures:
        verdict = Verdict.VIOLATION
    elif predicted.lambda1_kind is Kind.EXACT and predicted.lambda2_kind is Kind.EXACT:
        verdict = Verdict.MATCH
    else:
        verdict = Verdict.BOUND_SATISFIED
    return VerificationRecord(S.n, S, family, predicted, observed, verdict, tuple(failures))


# -- enumeration ---------------------------------------------------------------

def candidates(family: str, n: int) -> Iterator[GenSet]:
    """Generating-set shapes for a family, before classification.

    Reflection-only shapes contain ``f`` (translation is an automorphism);
    the reflection + rotation-pair shape runs over every reflection.
    """
    G = dihedral(n)
    if family == "all":
        for name in ("card2", "central", "chiral", "threeinv"):
            yield from candidates(name, n)
        return
    if family == "card2":
        for a in range(1, n):
            yield validate_symmetric(n, [refl(0, G), refl(a, G)])
    elif family == "central":
        if n % 2 == 0:
            for a in range(1, n):
                yield validate_symmetric(n, [refl(0, G), refl(a, G), rot(n // 2, G)])
    elif family == "chiral":
        for a in range(n):
            for b in range(1, (n + 1) // 2):
                yield validate_symmetric(n, [refl(a, G), rot(b, G), rot(-b, G)])
    elif family == "threeinv":
        for a in range(1, n):
            for b in range(a + 1, n):
                yield validate_symmetric(n, [refl(0, G), refl(a, G), refl(b, G)])
    else:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")


def analyze_family(family: str, n: int) -> tuple[list[GenSet], list[PC], BatchLambdas | None]:
    """Candidates of one shape, their classes, and one batch oracle pass over them.

    The batch word-length search doubles as the closure search ``classify``
    needs; rows that do not generate carry -1 in the lambda columns.
    """
    sets = list(candidates(family, n))
    if not sets:
        return [], [], None
    by_size: dict[int, list[GenSet]] = {}
    for S in sets:
        by_size.setdefault(len(S), []).append(S)
    if len(by_size) != 1:
        raise ValueError("analyze_family expects one cardinality per family")
    B = lambdas_for(sets)
    reached = (B.lengths >= 0).sum(axis=1)
    sizes = dict(zip(sets, map(int, reached)))

    def closure(T: GenSet) -> int:
        return sizes[T] if T in sizes else closure_size(T)

    kinds = [classify(S, closure).kind for S in sets]
    return sets, kinds, B


def family_members(family: str, n: int) -> list[tuple[GenSet, PC]]:
    """Candidates for ``family`` at this ``n`` that classify into it."""
    if family == "all":
        return [m for name in ("card2", "central", "chiral", "threeinv")
                for m in family_members(name, n)]
    sets, kinds, _ = analyze_family(family, n)
    return [(S, k) for S, k in zip(sets, kinds) if k in FAMILIES[family]]


def verify_n(family: str, n: int) -> list[VerificationRecord]:
    if family == "all":
        return sorted((r for name in ("card2", "central", "chiral", "threeinv")
                       for r in verify_n(name, n)), key=lambda r: _order_key(r.genset))
    sets, kinds, B = analyze_family(family, n)
    wanted = FAMILIES[family]
    records = []
    for row, (S, kind) in enumerate(zip(sets, kinds)):
        if kind in wanted:
            records.append(judge(S, kind, predict(kind, n, S), B.report(row, S)))
    records.sort(key=lambda r: _order_key(r.genset))
    return records


def _order_key(S: GenSet):
    return (S.n, len(S), [(int(s.flip), s.rot_exp) for s in S])


def parallel_map(fn: Callable, items: Sequence, jobs: int | None = None) -> list:
    """Map in worker processes; results come back in input order."""
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _verify_task(args):
    return verify_n(*args)


def verify_family(family: str, n_min: int, n_max: int, jobs: int | None = 1,
                  cap: int = DEFAULT_SWEEP_CAP) -> list[VerificationRecord]:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    _check_range(n_min, n_max, cap)
    chunks = parallel_map(_verify_task, [(family, n) for n in range(n_min, n_max + 1)], jobs)
    return [r for chunk in chunks for r in chunk]


def _check_range(n_min: int, n_max: int, cap: int = DEFAULT_SWEEP_CAP):
    if n_min < 3 or n_min > n_max:
        raise ValueError(f"need 3 <= n_min <= n_max, got [{n_min}, {n_max}]")
    if n_max > cap:
        raise CapExceeded(f"n_max={n_max} is above the sweep cap {cap}")


def summarize(records: Iterable[VerificationRecord], family: str, n_min: int, n_max: int) -> dict:
    records = list(records)
    max_l1: dict[int, int] = {}
    for r in records:
        max_l1[r.n] = max(max_l1.get(r.n, 0), r.observed.lambda1)
    return {
        "n_range": [n_min, n_max],
        "families": [str(c) for c in FAMILIES[family]],
        "checked": len(records),
        "violations": [record_dict(r) for r in records if r.verdict is Verdict.VIOLATION],
        "max_lambda1_by_n": {str(k): v for k, v in sorted(max_l1.items())},
    }


def record_dict(r: VerificationRecord) -> dict:
    g, s = r.observed.witness1
    h, t, u = r.observed.witness2
    return {
        "n": r.n,
        "genset": r.genset.elements_text(),
        "class": str(r.family),
        "lambda1": r.observed.lambda1,
        "lambda2": r.observed.lambda2,
        "diameter": r.observed.diameter,
        "witness1": [str(g), str(s)],
        "witness2": [str(h), str(t), str(u)],
        "predicted_l1": r.predicted.describe(1),
        "predicted_l2": r.predicted.describe(2),
        "verdict": str(r.verdict),
        "failures": list(r.failures),
        "provenance": r.predicted.provenance,
    }


# -- conjecture sweeps -------------------------------------------------------------

@dataclass
class SweepReport:
    conjecture: int
    n_min: int
    n_max: int
    checked: int = 0
    # conjecture 1: max lambda1 per n; conjecture 2: max over sets of
    # (longest reflection) - (longest rotation), which must stay <= 0
    max_by_n: dict[int, int] = field(default_factory=dict)
    bound_by_n: dict[int, int] = field(default_factory=dict)
    counterexamples: list[dict] = field(default_factory=list)

    def merge(self, other: "SweepReport") -> None:
        self.checked += other.checked
        self.max_by_n.update(other.max_by_n)
        self.bound_by_n.update(other.bound_by_n)
        self.counterexamples.extend(other.counterexamples)

    def as_dict(self) -> dict:
        key = "max_lambda1_by_n" if self.conjecture == 1 else "max_flip_excess_by_n"
        return {
            "conjecture": self.conjecture,
            "n_range": [self.n_min, self.n_max],
            "checked": self.checked,
            key: {str(k): v for k, v in sorted(self.max_by_n.items())},
            "counterexamples": self.counterexamples,
        }


def three_flip_members(n: int) -> tuple[list[GenSet], BatchLambdas | None]:
    """Generating sets {f, r^a f, r^b f} with 0 < a < b < n, plus their oracle rows."""
    sets, kinds, B = analyze_family("threeinv", n)
    keep = [i for i, k in enumerate(kinds) if k.is_three_involution]
    if not keep:
        return [], None
    return [sets[i] for i in keep], B.take(keep)


def _sweep1_n(n: int) -> SweepReport:
    rep = SweepReport(1, n, n)
    sets, B = three_flip_members(n)
    bound = n // 2 + 1
    rep.bound_by_n[n] = bound
    if not sets:
        return rep
    rep.checked = len(sets)
    rep.max_by_n[n] = int(B.lambda1.max())
    for row in map(int, (B.lambda1 > bound).nonzero()[0]):
        r = B.report(row, sets[row])
        g, s = r.witness1
        rep.counterexamples.append({
            "n": n, "genset": sets[row].elements_text(), "lambda1": r.lambda1,
            "bound": bound, "witness": {"g": str(g), "s": str(s)},
        })
    return rep


def _sweep2_n(n: int) -> SweepReport:
    rep = SweepReport(2, n, n)
    sets, B = three_flip_members(n)
    if not sets:
        return rep
    rep.checked = len(sets)
    rot_max = B.lengths[:, :n].max(axis=1)
    flips = B.lengths[:, n + 1:]  # r^m f for 0 < m < n
    excess = flips.max(axis=1) - rot_max
    rep.max_by_n[n] = int(excess.max())
    for row in map(int, (excess > 0).nonzero()[0]):
        m = int(flips[row].argmax()) + 1
        rep.counterexamples.append({
            "n": n, "genset": sets[row].elements_text(), "m": m,
            "flip_length": int(flips[row, m - 1]), "max_rotation_length": int(rot_max[row]),
        })
    return rep


def _sweep(conjecture: int, fn, n_max: int, n_min: int, jobs: int | None, cap: int) -> SweepReport:
    _check_range(n_min, n_max, cap)
    total = SweepReport(conjecture, n_min, n_max)
    for part in parallel_map(fn, list(range(n_min, n_max + 1)), jobs):
        total.merge(part)
    return total


def sweep_conjecture1(n_max: int, n_min: int = 3, jobs: int | None = 1,
                      cap: int = DEFAULT_SWEEP_CAP) -> SweepReport:
    """Check lambda1 <= floor(n/2) + 1 for every generating three-reflection set."""
    return _sweep(1, _sweep1_n, n_max, n_min, jobs, cap)


def sweep_conjecture2(n_max: int, n_min: int = 3, jobs: int | None = 1,
                      cap: int = DEFAULT_SWEEP_CAP) -> SweepReport:
    """Check l(r^m f) <= max_k l(r^k) for every generating three-reflection set."""
    return _sweep(2, _sweep2_n, n_max, n_min, jobs, cap)
