"""Difference tallies and the EDF / SEDF / GSEDF / PDS verifiers.

Tallies are dense count vectors indexed by group element.  Every verifier
returns a small verdict object; on failure it carries the first offending
element so callers can report it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import FiniteAbelianGroup


@dataclass(frozen=True)
class SetFamily:
    """Ordered list of pairwise disjoint subsets ``A_1, ..., A_m`` of one group."""

    group: FiniteAbelianGroup
    sets: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        canon = []
        seen: set[int] = set()
        for s in self.sets:
            items = tuple(s)
            members = tuple(sorted({self.group.check(int(x)) for x in items}))
            if len(members) != len(items):
                raise ValueError(f"repeated element in set {items}")
            clash = seen.intersection(members)
            if clash:
                raise ValueError(f"sets are not disjoint: element {min(clash)} repeated")
            seen.update(members)
            canon.append(members)
        if not canon:
            raise ValueError("a family needs at least one set")
        object.__setattr__(self, "sets", tuple(canon))

    @classmethod
    def of(cls, group: FiniteAbelianGroup, sets: Iterable[Iterable[int]]) -> SetFamily:
        return cls(group, tuple(tuple(s) for s in sets))

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)


@dataclass(frozen=True, eq=False)
class DifferenceTally:
    """Multiset of group elements stored as a count per element."""

    group: FiniteAbelianGroup
    counts: np.ndarray

    def __getitem__(self, a: int) -> int:
        return int(self.counts[a])

    def __add__(self, other: DifferenceTally) -> DifferenceTally:
        if other.group != self.group:
            raise ValueError("tallies over different groups")
        return DifferenceTally(self.group, self.counts + other.counts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DifferenceTally):
            return NotImplemented
        return self.group == other.group and bool(np.array_equal(self.counts, other.counts))

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def negated(self) -> DifferenceTally:
        neg = np.asarray(self.group.neg_table)
        out = np.zeros_like(self.counts)
        out[neg] = self.counts
        return DifferenceTally(self.group, out)


@dataclass(frozen=True)
class Failure:
    """First element whose count broke the required pattern."""

    set_index: int | None
    element: int
    count: int
    expected: int

    def describe(self, group: FiniteAbelianGroup) -> str:
        where = "" if self.set_index is None else f" out of set {self.set_index + 1}"
        return (
            f"difference {format_element(group, self.element)} occurs {self.count} times{where}, "
            f"expected {self.expected}"
        )


def format_element(group: FiniteAbelianGroup, a: int) -> str:
    if group.rank == 1:
        return str(a)
    return "(" + ",".join(str(c) for c in group.decode(a)) + ")"


def _as_index_array(group: FiniteAbelianGroup, xs: Iterable[int]) -> np.ndarray:
    arr = np.fromiter((group.check(int(x)) for x in xs), dtype=np.int64)
    return arr


def difference_tally(a: Iterable[int], b: Iterable[int], group: FiniteAbelianGroup) -> DifferenceTally:
    """Tally of ``D(A, B) = {x - y : x in A, y in B}`` for disjoint ``A``, ``B``."""
    aa = _as_index_array(group, a)
    bb = _as_index_array(group, b)
    overlap = np.intersect1d(aa, bb)
    if overlap.size:
        raise ValueError(f"sets overlap at element {int(overlap[0])}")
    if aa.size == 0 or bb.size == 0:
        return DifferenceTally(group, np.zeros(group.order, dtype=np.int64))
    diffs = group.sub_indices(aa[:, None], bb[None, :]).ravel()
    return DifferenceTally(group, np.bincount(diffs, minlength=group.order).astype(np.int64))


def internal_tally(d: Iterable[int], group: FiniteAbelianGroup) -> DifferenceTally:
    """Tally of ``{d1 - d2 : d1, d2 in D, d1 != d2}``."""
    dd = np.unique(_as_index_array(group, d))
    counts = np.zeros(group.order, dtype=np.int64)
    if dd.size:
        diffs = group.sub_indices(dd[:, None], dd[None, :]).ravel()
        counts += np.bincount(diffs, minlength=group.order)
        counts[0] -= dd.size
    return DifferenceTally(group, counts)


def external_tally(fam: SetFamily, i: int) -> DifferenceTally:
    """Sum of ``D(A_i, A_j)`` over all ``j != i``."""
    if not 0 <= i < fam.m:
        raise IndexError(f"set index {i} out of range for a family of {fam.m} sets")
    others = [x for j, s in enumerate(fam.sets) if j != i for x in s]
    return difference_tally(fam.sets[i], others, fam.group)


def _first_deviation(counts: np.ndarray, expected: int, where: np.ndarray) -> int | None:
    bad = where[counts[where] != expected]
    return int(bad[0]) if bad.size else None


def _constant_on_nonzero(tally: DifferenceTally, set_index: int | None) -> tuple[int, Failure | None]:
    """Return ``(value, failure)``: the count at element 1 and the first nonzero element that differs."""
    c = tally.counts
    assert c[0] == 0, "external tallies of disjoint sets never hit the identity"
    expected = int(c[1])
    bad = _first_deviation(c, expected, np.arange(1, tally.group.order))
    if bad is None:
        return expected, None
    return expected, Failure(set_index, bad, int(c[bad]), expected)


@dataclass(frozen=True)
class SedfVerdict:
    is_sedf: bool
    k: int | None
    lam: int | None
    failure: Failure | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.is_sedf


@dataclass(frozen=True)
class EdfVerdict:
    is_edf: bool
    k: int | None
    lam: int | None
    failure: Failure | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.is_edf


@dataclass(frozen=True)
class GsedfVerdict:
    is_gsedf: bool
    lambdas: tuple[int, ...] | None
    failure: Failure | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.is_gsedf


def _require_two(fam: SetFamily) -> None:
    if fam.m < 2:
        raise ValueError(f"need at least 2 sets, got {fam.m}")


def verify_gsedf(fam: SetFamily) -> GsedfVerdict:
    """Each external tally must be some constant ``lambda_i >= 1`` on the nonzero elements."""
    _require_two(fam)
    lambdas = []
    for i in range(fam.m):
        lam, failure = _constant_on_nonzero(external_tally(fam, i), i)
        if failure is not None:
            return GsedfVerdict(False, None, failure, f"set {i + 1}: external tally is not constant")
        if lam < 1:
            return GsedfVerdict(False, None, None, f"set {i + 1}: no external differences")
        lambdas.append(lam)
    return GsedfVerdict(True, tuple(lambdas))


def verify_sedf(fam: SetFamily) -> SedfVerdict:
    _require_two(fam)
    sizes = set(fam.sizes)
    if len(sizes) != 1:
        return SedfVerdict(False, None, None, reason=f"set sizes differ: {fam.sizes}")
    (k,) = sizes
    lam = None
    for i in range(fam.m):
        value, failure = _constant_on_nonzero(external_tally(fam, i), i)
        if failure is None and lam is not None and value != lam:
            failure = Failure(i, 1, value, lam)
        if failure is not None:
            return SedfVerdict(False, k, None, failure, f"set {i + 1}: external tally is not {failure.expected}")
        lam = value
    if not lam:
        return SedfVerdict(False, k, None, reason="no external differences")
    return SedfVerdict(True, k, lam)


def verify_edf(fam: SetFamily) -> EdfVerdict:
    _require_two(fam)
    sizes = set(fam.sizes)
    if len(sizes) != 1:
        return EdfVerdict(False, None, None, reason=f"set sizes differ: {fam.sizes}")
    (k,) = sizes
    total = external_tally(fam, 0)
    for i in range(1, fam.m):
        total = total + external_tally(fam, i)
    lam, failure = _constant_on_nonzero(total, None)
    if failure is not None:
        return EdfVerdict(False, k, None, failure, "pooled external tally is not constant")
    if lam < 1:
        return EdfVerdict(False, k, None, reason="no external differences")
    return EdfVerdict(True, k, lam)


@dataclass(frozen=True, order=True)
class PdsParams:
    v: int
    k: int
    lam: int
    mu: int

    def __post_init__(self) -> None:
        if min(self.v, self.k, self.lam, self.mu) < 0:
            raise ValueError(f"negative PDS parameter in {self}")
        if self.k > self.v - 1:
            raise ValueError(f"PDS size {self.k} exceeds v-1 = {self.v - 1}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.k, self.lam, self.mu)


def paley_params(v: int) -> PdsParams:
    if v % 4 != 1:
        raise ValueError(f"Paley parameters need v = 1 mod 4, got {v}")
    return PdsParams(v, (v - 1) // 2, (v - 5) // 4, (v - 1) // 4)


@dataclass(frozen=True)
class PdsVerdict:
    is_pds: bool
    params: PdsParams | None
    regular: bool
    paley_type: bool
    failure: Failure | None = None

    def __bool__(self) -> bool:
        return self.is_pds


def verify_pds(d: Iterable[int], group: FiniteAbelianGroup) -> PdsVerdict:
    """Check the (v, k, lambda, mu) partial difference set property of ``D``.

    A ``lambda`` (resp. ``mu``) with no element to count on is reported as 0.
    """
    members = frozenset(group.check(int(x)) for x in d)
    v = group.order
    if len(members) > v - 1:
        return PdsVerdict(False, None, False, False)
    tally = internal_tally(members, group).counts
    in_d = np.zeros(v, dtype=bool)
    in_d[list(members)] = True
    in_d_nz = np.flatnonzero(in_d[1:]) + 1
    out_d_nz = np.flatnonzero(~in_d[1:]) + 1
    neg = group.neg_table
    regular = 0 not in members and all(neg[x] in members for x in members)

    lam = int(tally[in_d_nz[0]]) if in_d_nz.size else 0
    mu = int(tally[out_d_nz[0]]) if out_d_nz.size else 0
    for where, expected in ((in_d_nz, lam), (out_d_nz, mu)):
        bad = _first_deviation(tally, expected, where)
        if bad is not None:
            return PdsVerdict(False, None, regular, False, Failure(None, bad, int(tally[bad]), expected))
    params = PdsParams(v, len(members), lam, mu)
    paley = regular and v % 4 == 1 and params == paley_params(v)
    return PdsVerdict(True, params, regular, paley)


def negate_set(group: FiniteAbelianGroup, xs: Sequence[int]) -> frozenset[int]:
    neg = group.neg_table
    return frozenset(neg[x] for x in xs)
