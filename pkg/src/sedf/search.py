"""Exhaustive backtracking search for SEDFs and PDSs over small groups.

The SEDF search decides group elements in increasing index order: each
element joins one of the open sets, opens the next set, or stays unused.
Opening sets in order means set ``j`` always has a smaller minimum than set
``j+1``, which removes the set-permutation symmetry.  All ``m`` external
tallies are maintained incrementally and a branch dies as soon as any entry
exceeds ``lambda``.

Symmetry reduction beyond that is done by orbit canonicity at the leaves:
a family is kept only if it is the lexicographically least image of itself
under the declared maps (translations, negation, unit multipliers).
Automorphisms outside the declared level are not factored out, so results
may contain automorphism-equivalent families.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

from .algebra import FiniteAbelianGroup, abelian_groups_of_order
from .diffcore import SetFamily, verify_pds, verify_sedf

AcceptHook = Callable[[SetFamily, list[list[int]]], None]


class Symmetry(str, Enum):
    NONE = "none"
    TRANSLATION = "translation"
    TRANSLATION_NEGATION = "translation_negation"
    TRANSLATION_NEGATION_UNITS = "translation_negation_units"


@dataclass(frozen=True)
class SearchOptions:
    symmetry: Symmetry = Symmetry.TRANSLATION
    result_limit: int | None = None
    node_budget: int | None = None
    workers: int = 1
    engine: str = "auto"  # "python", "numba" or "auto"

    def __post_init__(self) -> None:
        object.__setattr__(self, "symmetry", Symmetry(self.symmetry))
        if self.result_limit is not None and self.result_limit < 1:
            raise ValueError("result_limit must be positive")
        if self.node_budget is not None and self.node_budget < 1:
            raise ValueError("node_budget must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass
class SearchReport:
    families: list[SetFamily]
    nodes_explored: int
    exhausted: bool
    stopped_by: str | None = None  # "budget" or "limit"

    @property
    def count(self) -> int:
        return len(self.families)


class BudgetExceeded(Exception):
    pass


class LimitReached(Exception):
    pass


def _family_key(sets: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(s)) for s in sets))


def symmetry_maps(group: FiniteAbelianGroup, symmetry: Symmetry, translations: bool = True) -> list[list[int]]:
    """Element permutations ``x -> u*x + t`` generating the declared symmetry level."""
    symmetry = Symmetry(symmetry)
    n = group.order
    if symmetry is Symmetry.NONE:
        return []
    if symmetry is Symmetry.TRANSLATION_NEGATION_UNITS:
        if not group.is_cyclic_spec:
            raise ValueError(f"unit-multiplier reduction is only offered for cyclic groups, not {group.spec}")
        mults = group.units()
    elif symmetry is Symmetry.TRANSLATION_NEGATION:
        mults = sorted({1, n - 1}) if group.is_cyclic_spec else [1, -1]
    else:
        mults = [1]
    scaled = [[group.scale(u, x) for x in range(n)] for u in mults]
    shifts = range(n) if translations else [0]
    maps = []
    for row in scaled:
        for t in shifts:
            maps.append([group.add(y, t) for y in row])
    return maps


def _is_canonical(sets: Sequence[Sequence[int]], maps: list[list[int]]) -> bool:
    key = _family_key(sets)
    for perm in maps:
        if _family_key([[perm[x] for x in s] for s in sets]) < key:
            return False
    return True


def canonical_form(sets: Sequence[Sequence[int]], maps: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    best = _family_key(sets)
    for perm in maps:
        best = min(best, _family_key([[perm[x] for x in s] for s in sets]))
    return best


# -- SEDF search --


class _SedfSearch:
    """Pure-Python engine; the reference the compiled kernel is tested against."""

    def __init__(self, group: FiniteAbelianGroup, m: int, k: int, lam: int, opts: SearchOptions) -> None:
        self.group = group
        self.n = group.order
        self.m, self.k, self.lam = m, k, lam
        self.opts = opts
        self.fix_zero = opts.symmetry is not Symmetry.NONE
        self.sub = group.sub_table()
        self.neg = group.neg_table
        self.tallies = [[0] * self.n for _ in range(m)]
        self.members: list[list[int]] = [[] for _ in range(m)]
        self.placed: list[tuple[int, int]] = []
        self.opened = 0
        self.nodes = 0
        self.on_leaf: Callable[[list[list[int]], list[list[int]]], None] = lambda sets, tallies: None

    def place(self, x: int, j: int) -> bool:
        """Add ``x`` to set ``j``; on overflow the tallies are rolled back and False returned."""
        lam = self.lam
        sx = self.sub[x]
        neg = self.neg
        tallies = self.tallies
        tj = tallies[j]
        done = 0
        ok = True
        for y, i in self.placed:
            done += 1
            if i == j:
                continue
            d = sx[y]
            tj[d] += 1
            ti = tallies[i]
            e = neg[d]
            ti[e] += 1
            if tj[d] > lam or ti[e] > lam:
                ok = False
                break
        if not ok:
            self._unwind(x, j, done)
            return False
        self.placed.append((x, j))
        self.members[j].append(x)
        return True

    def _unwind(self, x: int, j: int, upto: int) -> None:
        sx = self.sub[x]
        tj = self.tallies[j]
        for y, i in self.placed[:upto]:
            if i == j:
                continue
            d = sx[y]
            tj[d] -= 1
            self.tallies[i][self.neg[d]] -= 1

    def choices(self, x: int) -> list[int]:
        """Set indices element ``x`` may join; ``-1`` means unused."""
        out = [j for j in range(self.opened) if len(self.members[j]) < self.k]
        if self.opened < self.m:
            out.append(self.opened)
        need = self.m * self.k - len(self.placed)
        if not (self.fix_zero and x == 0) and self.n - x - 1 >= need:
            out.append(-1)
        return out

    def step(self, x: int, j: int) -> bool:
        if j < 0:
            return True
        if not self.place(x, j):
            return False
        if j == self.opened:
            self.opened += 1
        return True

    def unstep(self, j: int) -> None:
        if j < 0:
            return
        x, _ = self.placed.pop()
        self.members[j].pop()
        self._unwind(x, j, len(self.placed))
        if not self.members[j]:
            self.opened -= 1

    def tick(self) -> None:
        budget = self.opts.node_budget
        if budget is not None and self.nodes >= budget:
            raise BudgetExceeded
        self.nodes += 1

    def dfs(self, x: int) -> None:
        self.tick()
        need = self.m * self.k - len(self.placed)
        if need == 0:
            lam = self.lam
            if all(c == lam for t in self.tallies for c in t[1:]):
                self.on_leaf([list(s) for s in self.members], [list(t) for t in self.tallies])
            return
        if self.n - x < need:
            return
        for j in self.choices(x):
            if self.step(x, j):
                self.dfs(x + 1)
                self.unstep(j)

    def frontier(self, x: int, depth: int, prefix: list[int], out: list[tuple[int, ...]]) -> None:
        """Collect surviving decision prefixes of length ``depth`` (for splitting work)."""
        if x == depth or len(self.placed) == self.m * self.k:
            out.append(tuple(prefix))
            return
        if self.n - x < self.m * self.k - len(self.placed):
            return
        for j in self.choices(x):
            if self.step(x, j):
                prefix.append(j)
                self.frontier(x + 1, depth, prefix, out)
                prefix.pop()
                self.unstep(j)

    def replay(self, prefix: Sequence[int]) -> None:
        for x, j in enumerate(prefix):
            if not self.step(x, j):
                raise AssertionError("replayed prefix must be consistent")


class _Collector:
    """Leaf handling shared by both engines: canonicity, re-verification, limit."""

    def __init__(self, group, k, lam, opts: SearchOptions, accept_hook: AcceptHook | None) -> None:
        self.group, self.k, self.lam = group, k, lam
        self.maps = symmetry_maps(group, opts.symmetry)
        self.limit = opts.result_limit
        self.hook = accept_hook
        self.found: list[SetFamily] = []

    def __call__(self, sets: list[list[int]], tallies: list[list[int]]) -> None:
        if self.maps and not _is_canonical(sets, self.maps):
            return
        fam = SetFamily.of(self.group, sets)
        v = verify_sedf(fam)
        if not (v.is_sedf and v.k == self.k and v.lam == self.lam):
            raise AssertionError(f"search accepted a non-SEDF: {fam.sets}")
        if self.hook is not None:
            self.hook(fam, tallies)
        self.found.append(fam)
        if self.limit is not None and len(self.found) >= self.limit:
            raise LimitReached


def _resolve_engine(engine: str) -> str:
    if engine == "auto":
        try:
            import numba  # noqa: F401
        except ImportError:
            return "python"
        return "numba"
    if engine not in ("python", "numba"):
        raise ValueError(f"unknown engine {engine!r}")
    return engine


def _run_sedf(group, m, k, lam, opts: SearchOptions, prefix=(), accept_hook=None) -> SearchReport:
    collect = _Collector(group, k, lam, opts, accept_hook)
    stopped = None
    if _resolve_engine(opts.engine) == "python":
        s = _SedfSearch(group, m, k, lam, opts)
        s.on_leaf = collect
        s.replay(prefix)
        try:
            s.dfs(len(prefix))
        except BudgetExceeded:
            stopped = "budget"
        except LimitReached:
            stopped = "limit"
        nodes = s.nodes
    else:
        import numpy as np

        from . import _kernel

        sub = np.asarray(group.sub_table(), dtype=np.int64)
        neg = np.asarray(group.neg_table, dtype=np.int64)
        state = _kernel.KernelState(sub, neg, m, k, lam, opts.symmetry is not Symmetry.NONE)
        state.replay(prefix)
        while True:
            code = state.advance(opts.node_budget)
            if code == _kernel.LEAF:
                try:
                    collect(state.members(), state.tally_rows())
                except LimitReached:
                    stopped = "limit"
                    break
            elif code == _kernel.BUDGET:
                stopped = "budget"
                break
            else:
                break
        nodes = state.nodes
    collect.found.sort(key=lambda f: _family_key(f.sets))
    return SearchReport(collect.found, nodes, stopped is None, stopped)


def _sedf_task(args) -> SearchReport:
    group, m, k, lam, opts, prefix = args
    return _run_sedf(group, m, k, lam, opts, prefix)


def search_sedf(
    group: FiniteAbelianGroup,
    m: int,
    k: int,
    lam: int,
    opts: SearchOptions | None = None,
    accept_hook: AcceptHook | None = None,
) -> SearchReport:
    """Find all (n, m, k, lambda)-SEDFs in ``group`` up to the declared symmetry.

    With ``workers > 1`` the first few decisions are enumerated up front and
    the resulting subtrees are searched in separate processes; the node
    budget and result limit then apply per subtree and the merged report is
    trimmed to the limit.  ``accept_hook`` forces in-process search.
    """
    opts = opts or SearchOptions()
    if m < 2 or k < 1 or lam < 1:
        raise ValueError(f"invalid parameters m={m}, k={k}, lambda={lam}")
    if m * k > group.order:
        raise ValueError(f"packing violated: m*k = {m * k} > n = {group.order}")
    symmetry_maps(group, opts.symmetry)  # validates the symmetry level for this group

    if opts.workers == 1 or accept_hook is not None:
        return _run_sedf(group, m, k, lam, opts, (), accept_hook)

    splitter = _SedfSearch(group, m, k, lam, opts)
    prefixes: list[tuple[int, ...]] = []
    for depth in range(1, group.order + 1):
        prefixes.clear()
        splitter.frontier(0, depth, [], prefixes)
        if len(prefixes) >= 4 * opts.workers:
            break
    budget = None if opts.node_budget is None else max(1, opts.node_budget // max(1, len(prefixes)))
    sub_opts = SearchOptions(opts.symmetry, opts.result_limit, budget, 1, opts.engine)
    tasks = [(group, m, k, lam, sub_opts, p) for p in prefixes]
    with ProcessPoolExecutor(max_workers=opts.workers) as pool:
        reports = list(pool.map(_sedf_task, tasks))
    fams = sorted((f for r in reports for f in r.families), key=lambda f: _family_key(f.sets))
    stops = {r.stopped_by for r in reports} - {None}
    stopped = "budget" if "budget" in stops else ("limit" if stops else None)
    if opts.result_limit is not None:
        fams = fams[: opts.result_limit]
    return SearchReport(fams, sum(r.nodes_explored for r in reports), stopped is None, stopped)


# -- PDS search --


class _PdsSearch:
    def __init__(self, group: FiniteAbelianGroup, k: int, lam: int, mu: int, opts: SearchOptions) -> None:
        self.group = group
        self.n = group.order
        self.k, self.lam, self.mu = k, lam, mu
        self.cap = max(lam, mu)
        self.opts = opts
        self.maps = symmetry_maps(group, opts.symmetry, translations=False)
        self.sub = group.sub_table()
        self.tally = [0] * self.n
        self.members: list[int] = []
        self.nodes = 0
        self.found: list[SetFamily] = []

    def add(self, x: int) -> bool:
        sx, t, cap = self.sub[x], self.tally, self.cap
        done = 0
        ok = True
        for y in self.members:
            done += 1
            d, e = sx[y], self.sub[y][x]
            t[d] += 1
            t[e] += 1
            if t[d] > cap or t[e] > cap:
                ok = False
                break
        if not ok:
            self._unwind(x, done)
            return False
        self.members.append(x)
        return True

    def tick(self) -> None:
        budget = self.opts.node_budget
        if budget is not None and self.nodes >= budget:
            raise BudgetExceeded
        self.nodes += 1

    def _unwind(self, x: int, upto: int) -> None:
        sx, t = self.sub[x], self.tally
        for y in self.members[:upto]:
            t[sx[y]] -= 1
            t[self.sub[y][x]] -= 1

    def dfs(self, x: int) -> None:
        self.tick()
        if len(self.members) == self.k:
            self.accept()
            return
        if self.n - x < self.k - len(self.members):
            return
        if self.add(x):
            self.dfs(x + 1)
            self.members.pop()
            self._unwind(x, len(self.members))
        self.dfs(x + 1)

    def accept(self) -> None:
        if self.maps and not _is_canonical([self.members], self.maps):
            return
        v = verify_pds(self.members, self.group)
        if not (v.is_pds and v.params.as_tuple() == (self.n, self.k, self.lam, self.mu)):
            return
        self.found.append(SetFamily.of(self.group, [self.members]))
        limit = self.opts.result_limit
        if limit is not None and len(self.found) >= limit:
            raise LimitReached


def search_pds(
    group: FiniteAbelianGroup, k: int, lam: int, mu: int, opts: SearchOptions | None = None
) -> SearchReport:
    """All k-subsets of the nonzero elements forming a (v, k, lambda, mu) PDS.

    Translations do not preserve "0 not in D", so only the multiplier part of
    the symmetry level is used here.  Each result is a one-set family.
    """
    opts = opts or SearchOptions(symmetry=Symmetry.NONE)
    if not 0 <= k <= group.order - 1:
        raise ValueError(f"PDS size {k} must lie in [0, {group.order - 1}]")
    if lam < 0 or mu < 0:
        raise ValueError("lambda and mu must be non-negative")
    s = _PdsSearch(group, k, lam, mu, opts)
    stopped = None
    try:
        s.dfs(1)
    except BudgetExceeded:
        stopped = "budget"
    except LimitReached:
        stopped = "limit"
    report = SearchReport(s.found, s.nodes, stopped is None, stopped)
    report.families.sort(key=lambda f: f.sets)
    return report


# -- cross-checks --


@dataclass
class CrosscheckReport:
    group: FiniteAbelianGroup
    partitions: int
    sedf_partitions: list[tuple[tuple[int, ...], tuple[int, ...]]]
    counterexamples: list[tuple[tuple[int, ...], bool, bool]] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.counterexamples


def characterization_crosscheck(group: FiniteAbelianGroup) -> CrosscheckReport:
    """Compare "two-set partition of G* is an SEDF" with "first half is a Paley PDS" on every partition.

    Unordered partitions are enumerated once each by keeping element 1 in the first half.
    """
    n = group.order
    if n % 4 != 1:
        raise ValueError(f"group order must be 1 mod 4, got {n}")
    half = (n - 1) // 2
    rest = range(2, n)
    everything = frozenset(range(1, n))
    report = CrosscheckReport(group, 0, [])
    for combo in itertools.combinations(rest, half - 1):
        d1 = (1,) + combo
        d2 = tuple(sorted(everything.difference(d1)))
        report.partitions += 1
        is_sedf = verify_sedf(SetFamily(group, (d1, d2))).is_sedf
        paley = verify_pds(d1, group).paley_type
        if is_sedf:
            report.sedf_partitions.append((d1, d2))
        if is_sedf != paley:
            report.counterexamples.append((d1, is_sedf, paley))
    return report


@dataclass(frozen=True)
class OracleCheck:
    params: object
    group: str
    status: str
    found: int
    exhausted: bool
    consistent: bool
    witness_group: bool = False


@dataclass
class OracleReport:
    checks: list[OracleCheck]

    @property
    def mismatches(self) -> list[OracleCheck]:
        return [c for c in self.checks if not c.consistent]


def oracle_vs_feasibility(
    n_max: int,
    group_shapes: Sequence[FiniteAbelianGroup] | None = None,
    budget: int | None = None,
    params: Sequence | None = None,
) -> OracleReport:
    """Run the exhaustive search on every classified parameter set and compare.

    * infeasible: no group may yield a family;
    * exists: the witness's group (up to isomorphism), when searched to
      exhaustion, must yield one.
    """
    from .feasibility import Status, candidate_params, classify

    todo = list(params) if params is not None else list(candidate_params(n_max))
    checks = []
    for p in todo:
        verdict = classify(p)
        wgroup = verdict.witness.build().group if verdict.witness is not None else None
        if group_shapes is None:
            groups = abelian_groups_of_order(p.n)
        else:
            groups = [g for g in group_shapes if g.order == p.n]
        for g in groups:
            opts = SearchOptions(Symmetry.TRANSLATION, result_limit=1, node_budget=budget)
            rep = search_sedf(g, p.m, p.k, p.lam, opts)
            is_witness = wgroup is not None and g.is_isomorphic(wgroup)
            if verdict.status is Status.INFEASIBLE:
                ok = rep.count == 0
            elif verdict.status is Status.EXISTS and is_witness:
                ok = rep.count > 0 or not rep.exhausted
            else:
                ok = True
            complete = rep.exhausted or rep.count > 0
            checks.append(OracleCheck(p, g.spec, verdict.status.value, rep.count, complete, ok, is_witness))
    return OracleReport(checks)
