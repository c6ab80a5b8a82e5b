"""Parameter filters for (n, m, k, lambda)-SEDFs and GSEDFs.

Every rule returns an :class:`Outcome`.  NOT_APPLICABLE means the rule's
hypotheses are not met, which is different from a substantive PASS.  All
comparisons are integer cross-multiplications; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .algebra import is_prime, prime_power
from .constructions import ConstructionDescriptor


class Outcome(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not_applicable"

    @classmethod
    def of(cls, ok: bool) -> Outcome:
        return cls.PASS if ok else cls.FAIL


class Status(str, Enum):
    EXISTS = "exists"
    INFEASIBLE = "infeasible"
    OPEN = "open"


@dataclass(frozen=True, order=True)
class SedfParams:
    n: int
    m: int
    k: int
    lam: int

    def __post_init__(self) -> None:
        if self.n < 2 or self.m < 2 or self.k < 1 or self.lam < 1:
            raise ValueError(f"invalid SEDF parameters {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.m, self.k, self.lam)

    def __str__(self) -> str:
        return "({},{},{},{})".format(*self.as_tuple())


@dataclass(frozen=True)
class GsedfParams:
    n: int
    ks: tuple[int, ...]
    lambdas: tuple[int, ...]

    def __post_init__(self) -> None:
        ks = tuple(int(k) for k in self.ks)
        lambdas = tuple(int(x) for x in self.lambdas)
        if len(ks) != len(lambdas) or len(ks) < 2:
            raise ValueError("ks and lambdas must have the same length m >= 2")
        if self.n < 2 or min(ks) < 1 or min(lambdas) < 1:
            raise ValueError("GSEDF parameters must be positive")
        if sum(ks) > self.n:
            raise ValueError(f"set sizes sum to {sum(ks)} > n = {self.n}")
        object.__setattr__(self, "ks", ks)
        object.__setattr__(self, "lambdas", lambdas)

    @property
    def m(self) -> int:
        return len(self.ks)

    @property
    def total_size(self) -> int:
        return sum(self.ks)

    @property
    def total_lambda(self) -> int:
        return sum(self.lambdas)

    @classmethod
    def uniform(cls, n: int, m: int, k: int, lam: int) -> GsedfParams:
        return cls(n, (k,) * m, (lam,) * m)

    def __str__(self) -> str:
        return "({},{};{};{})".format(
            self.n, self.m, ",".join(map(str, self.ks)), ",".join(map(str, self.lambdas))
        )


# -- SEDF rules --


def rule_counting(p: SedfParams) -> Outcome:
    """Double counting: lambda (n-1) = k^2 (m-1)."""
    return Outcome.of(p.lam * (p.n - 1) == p.k * p.k * (p.m - 1))


def rule_packing(p: SedfParams) -> Outcome:
    return Outcome.of(p.k * p.m <= p.n)


def rule_lambda_bound(p: SedfParams) -> Outcome:
    return Outcome.of((p.k == 1 and p.lam == 1) or (p.k > 1 and p.lam < p.k))


def rule_lambda1(p: SedfParams) -> Outcome:
    """For lambda = 1 a PASS is an existence guarantee, a FAIL rules the parameters out."""
    if p.lam != 1:
        return Outcome.NOT_APPLICABLE
    return Outcome.of((p.m == 2 and p.n == p.k * p.k + 1) or (p.k == 1 and p.m == p.n))


def rule_m34(p: SedfParams) -> Outcome:
    if p.k <= 1:
        return Outcome.NOT_APPLICABLE
    return Outcome.of(p.m not in (3, 4))


def rule_prime_order(p: SedfParams) -> Outcome:
    return Outcome.of(not (is_prime(p.n) and p.k > 1 and p.m > 2))


def rule_lambda2(p: SedfParams) -> Outcome:
    """2(k-1)(m-2) <= k(m-1) for lambda = 2, m >= 3, k >= 3."""
    if not (p.lam == 2 and p.m >= 3 and p.k >= 3):
        return Outcome.NOT_APPLICABLE
    return Outcome.of(2 * (p.k - 1) * (p.m - 2) <= p.k * (p.m - 1))


def rule_general_lambda(p: SedfParams) -> Outcome:
    """lambda(k-1)(m-2) <= (lambda-1) k (m-1) for lambda >= 2, m >= 3, k >= lambda+1."""
    lam, m, k = p.lam, p.m, p.k
    if not (lam >= 2 and m >= 3 and k >= lam + 1):
        return Outcome.NOT_APPLICABLE
    return Outcome.of(lam * (k - 1) * (m - 2) <= (lam - 1) * k * (m - 1))


def rule_prime_k(p: SedfParams) -> Outcome:
    if not (p.m == 2 and is_prime(p.k)):
        return Outcome.NOT_APPLICABLE
    return Outcome.of(p.lam == 1)


SEDF_RULES: dict[str, Callable[[SedfParams], Outcome]] = {
    "counting": rule_counting,
    "packing": rule_packing,
    "lambda_bound": rule_lambda_bound,
    "lambda1": rule_lambda1,
    "m34": rule_m34,
    "prime_order": rule_prime_order,
    "lambda2": rule_lambda2,
    "general_lambda": rule_general_lambda,
    "prime_k": rule_prime_k,
}


# -- GSEDF rules --


def _gsedf_applicable(p: GsedfParams, i: int) -> bool:
    k, lam = p.ks[i], p.lambdas[i]
    return k > lam > 1 and 2 * lam <= p.total_lambda


def gsedf_ratios(p: GsedfParams) -> dict[int, Fraction]:
    """Exact left-hand side ``(k_i-1)(L-2l_i) / ((K-k_i)(l_i-1))`` for each applicable ``i``."""
    out = {}
    for i in range(p.m):
        if _gsedf_applicable(p, i):
            k, lam = p.ks[i], p.lambdas[i]
            out[i] = Fraction((k - 1) * (p.total_lambda - 2 * lam), (p.total_size - k) * (lam - 1))
    return out


def rule_gsedf(p: GsedfParams) -> Outcome:
    if p.m < 3:
        return Outcome.NOT_APPLICABLE
    K, L = p.total_size, p.total_lambda
    for i in range(p.m):
        if not _gsedf_applicable(p, i):
            continue
        k, lam = p.ks[i], p.lambdas[i]
        if (k - 1) * (L - 2 * lam) > (K - k) * (lam - 1):
            return Outcome.FAIL
    return Outcome.PASS


def rule_gsedf_counting(p: GsedfParams) -> Outcome:
    """lambda_i (n-1) = k_i (K - k_i) for every i."""
    K = p.total_size
    return Outcome.of(all(lam * (p.n - 1) == k * (K - k) for k, lam in zip(p.ks, p.lambdas)))


GSEDF_RULES: dict[str, Callable[[GsedfParams], Outcome]] = {
    "gsedf_counting": rule_gsedf_counting,
    "gsedf": rule_gsedf,
}


# -- classification --


@dataclass(frozen=True)
class FeasibilityVerdict:
    status: Status
    rules_fired: tuple[str, ...] = ()
    witness: ConstructionDescriptor | None = None
    note: str = ""
    outcomes: dict[str, Outcome] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.status is Status.EXISTS and self.witness is None:
            raise ValueError("an exists verdict needs a witness")
        if self.status is Status.INFEASIBLE and not self.rules_fired:
            raise ValueError("an infeasible verdict needs at least one fired rule")

    def __str__(self) -> str:
        if self.status is Status.EXISTS:
            return f"exists [{self.witness}]"
        if self.status is Status.INFEASIBLE:
            return f"infeasible [{','.join(self.rules_fired)}]"
        return "open" + (f" ({self.note})" if self.note else "")


def sedf_witness(p: SedfParams) -> ConstructionDescriptor | None:
    """A construction in this package realising ``p``, if one is known."""
    n, m, k, lam = p.as_tuple()
    if lam == 1 and m == 2 and n == k * k + 1:
        return ConstructionDescriptor("exponential", (k,))
    if lam == 1 and k == 1 and m == n:
        return ConstructionDescriptor("singleton", (n,))
    if m == 2 and n % 4 == 1 and 2 * k == n - 1 and 4 * lam == n - 1 and prime_power(n):
        return ConstructionDescriptor("cyclotomic_half", (n,))
    return None


def classify(p: SedfParams) -> FeasibilityVerdict:
    outcomes = {rid: rule(p) for rid, rule in SEDF_RULES.items()}
    fired = tuple(rid for rid, o in outcomes.items() if o is Outcome.FAIL)
    witness = sedf_witness(p)
    if fired:
        if witness is not None:
            raise AssertionError(f"{p}: rules {fired} contradict the construction {witness}")
        return FeasibilityVerdict(Status.INFEASIBLE, fired, outcomes=outcomes)
    if witness is not None:
        return FeasibilityVerdict(Status.EXISTS, (), witness, outcomes=outcomes)
    n, m, k, lam = p.as_tuple()
    note = ""
    if m == 2 and 2 * k == n - 1:
        note = "partition type: exists iff G of order n carries a Paley-type PDS"
    elif m == 2 and lam == 2:
        note = "lambda = m = 2 below the partition size is unresolved"
    return FeasibilityVerdict(Status.OPEN, (), None, note, outcomes)


def classify_gsedf(p: GsedfParams) -> FeasibilityVerdict:
    """Uniform vectors are delegated to :func:`classify`; the two known GSEDF shapes are witnessed."""
    if len(set(p.ks)) == 1 and len(set(p.lambdas)) == 1:
        return classify(SedfParams(p.n, p.m, p.ks[0], p.lambdas[0]))
    outcomes = {rid: rule(p) for rid, rule in GSEDF_RULES.items()}
    fired = tuple(rid for rid, o in outcomes.items() if o is Outcome.FAIL)
    if fired:
        return FeasibilityVerdict(Status.INFEASIBLE, fired, outcomes=outcomes)
    if p.m == 2 and sorted(p.ks) == [1, p.n - 1] and p.lambdas == (1, 1):
        return FeasibilityVerdict(Status.EXISTS, (), ConstructionDescriptor("gsedf_two_set", (p.n,)), outcomes=outcomes)
    if p.n == 7 and p.ks == (1, 1, 1, 4) and p.lambdas == (1, 1, 1, 2):
        return FeasibilityVerdict(Status.EXISTS, (), ConstructionDescriptor("gsedf_z7"), outcomes=outcomes)
    return FeasibilityVerdict(Status.OPEN, (), None, "", outcomes)


def candidate_params(n_max: int, n_min: int = 2) -> Iterator[SedfParams]:
    """All parameter sets with ``n <= n_max`` passing the counting and packing rules, lexicographically."""
    for n in range(max(2, n_min), n_max + 1):
        for m in range(2, n + 1):
            for k in range(1, n // m + 1):
                num = k * k * (m - 1)
                if num % (n - 1) == 0:
                    yield SedfParams(n, m, k, num // (n - 1))


def enumerate_feasible(n_max: int) -> list[tuple[SedfParams, FeasibilityVerdict]]:
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    return [(p, classify(p)) for p in candidate_params(n_max)]


def survivor_cases_hold(p: SedfParams) -> bool:
    """The case list every surviving parameter set must satisfy."""
    n, m, k, lam = p.as_tuple()
    return (
        lam == 1
        or m == 2
        or (k == lam + 1 and m <= lam * lam + 1)
        or (k > lam + 1 and m <= (lam - 1) * k + 2)
        or (m >= 5 and 2 <= lam <= m - 2 and k <= (lam - 1) * (m - 1) + 1)
    )


# -- region data --


@dataclass(frozen=True)
class RegionGrid:
    """Violation flags of the lambda inequality on a (k, m) grid; ``rows[m_idx][k_idx]``."""

    lam: int
    ks: tuple[int, ...]
    ms: tuple[int, ...]
    rows: tuple[tuple[bool, ...], ...]

    def violated(self, k: int, m: int) -> bool:
        return self.rows[self.ms.index(m)][self.ks.index(k)]

    def triples(self) -> Iterator[tuple[int, int, bool]]:
        for mi, m in enumerate(self.ms):
            for ki, k in enumerate(self.ks):
                yield k, m, self.rows[mi][ki]

    def to_csv(self) -> str:
        lines = ["k,m,violated"]
        lines += [f"{k},{m},{int(v)}" for k, m, v in self.triples()]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        """Matrix with m decreasing downwards, ``#`` where violated."""
        width = len(str(max(self.ms)))
        lines = [f"lambda={self.lam}  rows: m  cols: k={self.ks[0]}..{self.ks[-1]}"]
        for mi in reversed(range(len(self.ms))):
            cells = "".join("#" if v else "." for v in self.rows[mi])
            lines.append(f"{self.ms[mi]:>{width}} {cells}")
        return "\n".join(lines) + "\n"


def region_violated(lam: int, k: int, m: int) -> bool:
    # any n passes the inequality rules; they only look at (m, k, lambda)
    p = SedfParams(max(2, k * m), m, k, lam)
    rule = rule_lambda2 if lam == 2 else rule_general_lambda
    return rule(p) is Outcome.FAIL


def region_grid(lam: int, m_max: int, k_max: int, m_min: int = 2, k_min: int = 1) -> RegionGrid:
    if lam < 2:
        raise ValueError(f"region data needs lambda >= 2, got {lam}")
    ks = tuple(range(k_min, k_max + 1))
    ms = tuple(range(m_min, m_max + 1))
    rows = tuple(tuple(region_violated(lam, k, m) for k in ks) for m in ms)
    return RegionGrid(lam, ks, ms, rows)


def sweep_table(rows: Sequence[tuple[SedfParams, FeasibilityVerdict]]) -> str:
    lines = [f"{'n':>4} {'m':>4} {'k':>4} {'lambda':>6}  verdict"]
    for p, v in rows:
        lines.append(f"{p.n:>4} {p.m:>4} {p.k:>4} {p.lam:>6}  {v}")
    return "\n".join(lines) + "\n"
