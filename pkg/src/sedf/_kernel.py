"""Compiled inner loop of the SEDF search.

The traversal is the same as ``search._SedfSearch.dfs`` but iterative, so it
can stop at every accepted leaf, hand control back to Python, and resume.
All state lives in the arrays of :class:`KernelState`.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# codes returned by advance()
DONE = 0
LEAF = 1
BUDGET = 2

# slots of the scalar state vector
X, OPENED, PLACED, NODES, RESUME = 0, 1, 2, 3, 4


@njit(cache=True)
def _place(x, j, sub, neg, tallies, px, pj, placed, lam):
    for t in range(placed):
        i = pj[t]
        if i == j:
            continue
        d = sub[x, px[t]]
        e = neg[d]
        tallies[j, d] += 1
        tallies[i, e] += 1
        if tallies[j, d] > lam or tallies[i, e] > lam:
            for s in range(t + 1):
                i2 = pj[s]
                if i2 == j:
                    continue
                d2 = sub[x, px[s]]
                tallies[j, d2] -= 1
                tallies[i2, neg[d2]] -= 1
            return False
    return True


@njit(cache=True)
def _unplace(x, j, sub, neg, tallies, px, pj, placed):
    for t in range(placed):
        i = pj[t]
        if i == j:
            continue
        d = sub[x, px[t]]
        tallies[j, d] -= 1
        tallies[i, neg[d]] -= 1


@njit(cache=True)
def advance(sub, neg, n, m, k, lam, fix_zero, floor, budget, st, choice, tallies, sizes, px, pj):
    """Run until the next accepted leaf, exhaustion, or the node budget.

    ``choice[x]`` is the next option to try at depth ``x`` (0..m-1 a set,
    m = unused); ``choice[x] - 1`` is therefore the option currently applied
    at depth ``x`` once the search has descended past it.
    """
    x = st[X]
    opened = st[OPENED]
    placed = st[PLACED]
    nodes = st[NODES]
    total = m * k
    entering = st[RESUME] == 0
    while True:
        if entering:
            if budget >= 0 and nodes >= budget:
                st[X] = x
                st[OPENED] = opened
                st[PLACED] = placed
                st[NODES] = nodes
                st[RESUME] = 2
                return BUDGET
            nodes += 1
            need = total - placed
            if need == 0:
                ok = True
                for i in range(m):
                    for d in range(1, n):
                        if tallies[i, d] != lam:
                            ok = False
                            break
                    if not ok:
                        break
                choice[x] = m + 1  # leaf: nothing to try
                if ok:
                    st[X] = x
                    st[OPENED] = opened
                    st[PLACED] = placed
                    st[NODES] = nodes
                    st[RESUME] = 1
                    return LEAF
            elif n - x < need:
                choice[x] = m + 1
            else:
                choice[x] = 0
        entering = False

        # try the next option at depth x
        advanced = False
        c = choice[x]
        while c <= m:
            if c < m:
                j = c
                if (j < opened and sizes[j] < k) or (j == opened and opened < m):
                    if _place(x, j, sub, neg, tallies, px, pj, placed, lam):
                        px[placed] = x
                        pj[placed] = j
                        placed += 1
                        sizes[j] += 1
                        if j == opened:
                            opened += 1
                        advanced = True
            else:
                if not (fix_zero and x == 0) and n - x - 1 >= total - placed:
                    advanced = True
            c += 1
            if advanced:
                break
        choice[x] = c
        if advanced:
            x += 1
            entering = True
            continue

        # backtrack
        if x == floor:
            st[X] = x
            st[OPENED] = opened
            st[PLACED] = placed
            st[NODES] = nodes
            st[RESUME] = 3
            return DONE
        x -= 1
        last = choice[x] - 1
        if last < m:
            placed -= 1
            _unplace(x, last, sub, neg, tallies, px, pj, placed)
            sizes[last] -= 1
            if sizes[last] == 0:
                opened -= 1


class KernelState:
    """Arrays for one traversal starting at depth ``floor`` from a replayed prefix."""

    def __init__(self, sub: np.ndarray, neg: np.ndarray, m: int, k: int, lam: int, fix_zero: bool) -> None:
        n = sub.shape[0]
        self.sub, self.neg = sub, neg
        self.n, self.m, self.k, self.lam = n, m, k, lam
        self.fix_zero = fix_zero
        self.st = np.zeros(5, dtype=np.int64)
        self.choice = np.zeros(n + 1, dtype=np.int64)
        self.tallies = np.zeros((m, n), dtype=np.int64)
        self.sizes = np.zeros(m, dtype=np.int64)
        self.px = np.zeros(m * k + 1, dtype=np.int64)
        self.pj = np.zeros(m * k + 1, dtype=np.int64)
        self.floor = 0

    def replay(self, prefix) -> None:
        """Apply fixed decisions for depths ``0..len(prefix)-1`` (``-1`` = unused)."""
        opened = placed = 0
        for x, j in enumerate(prefix):
            if j >= 0:
                if not _place(x, j, self.sub, self.neg, self.tallies, self.px, self.pj, placed, self.lam):
                    raise AssertionError("replayed prefix must be consistent")
                self.px[placed] = x
                self.pj[placed] = j
                placed += 1
                self.sizes[j] += 1
                if j == opened:
                    opened += 1
        self.floor = len(prefix)
        self.st[:] = (self.floor, opened, placed, 0, 0)

    def advance(self, budget: int | None) -> int:
        b = -1 if budget is None else budget
        if self.st[4] == 3:
            return DONE
        if self.st[4] == 2:
            raise RuntimeError("budget exhausted; the traversal cannot resume")
        code = advance(
            self.sub, self.neg, self.n, self.m, self.k, self.lam, self.fix_zero, self.floor, b,
            self.st, self.choice, self.tallies, self.sizes, self.px, self.pj,
        )
        return int(code)

    @property
    def nodes(self) -> int:
        return int(self.st[3])

    def members(self) -> list[list[int]]:
        sets: list[list[int]] = [[] for _ in range(self.m)]
        for t in range(int(self.st[2])):
            sets[int(self.pj[t])].append(int(self.px[t]))
        return sets

    def tally_rows(self) -> list[list[int]]:
        return self.tallies.tolist()
