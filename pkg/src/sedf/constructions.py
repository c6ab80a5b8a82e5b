"""Explicit families: the lambda=1 SEDFs, cyclotomic halves, Paley PDSs and the GSEDF examples.

Each builder checks its own output with the matching verifier before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .algebra import FiniteAbelianGroup, build_field, nonsquares, prime_power, squares
from .diffcore import SetFamily, paley_params, verify_gsedf, verify_pds, verify_sedf

Slope = Union[int, None]  # None is the vertical line x = 0

CONSTRUCTION_NAMES = (
    "exponential",
    "singleton",
    "cyclotomic_half",
    "paley_lines",
    "pds_complement",
    "pds_to_sedf",
    "gsedf_two_set",
    "gsedf_z7",
)
ALIASES = {"cyclotomic": "cyclotomic_half", "paley": "paley_lines", "complement": "pds_complement"}
_ARITY = {"gsedf_z7": 0}


@dataclass(frozen=True)
class ConstructionDescriptor:
    name: str
    parameters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        name = ALIASES.get(self.name, self.name)
        if name not in CONSTRUCTION_NAMES:
            raise ValueError(f"unknown construction {self.name!r}")
        params = tuple(int(p) for p in self.parameters)
        arity = _ARITY.get(name, 1)
        if len(params) != arity:
            raise ValueError(f"{name} takes {arity} integer parameter(s), got {len(params)}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "parameters", params)

    def __str__(self) -> str:
        return f"{self.name}({','.join(map(str, self.parameters))})"

    def build(self) -> SetFamily:
        """Build the family; PDS constructions come back as one-set families."""
        p = self.parameters
        if self.name == "exponential":
            return exponential_sedf(*p)
        if self.name == "singleton":
            return singleton_sedf(*p)
        if self.name == "cyclotomic_half":
            return cyclotomic_half_sedf(*p)
        if self.name == "paley_lines":
            g, d = paley_lines_pds(*p)
            return SetFamily.of(g, [d])
        if self.name == "pds_complement":
            g, d = paley_lines_pds(*p)
            return SetFamily.of(g, [pds_complement(d, g)])
        if self.name == "pds_to_sedf":
            g, d = paley_lines_pds(*p)
            return paley_pds_to_sedf(d, g)
        if self.name == "gsedf_two_set":
            return gsedf_two_set(*p)
        return gsedf_z7()


def _check_sedf(fam: SetFamily, n: int, m: int, k: int, lam: int) -> SetFamily:
    v = verify_sedf(fam)
    if not (v.is_sedf and fam.group.order == n and fam.m == m and v.k == k and v.lam == lam):
        raise AssertionError(f"construction failed to verify as ({n},{m},{k},{lam})-SEDF: {v}")
    return fam


def exponential_sedf(k: int) -> SetFamily:
    """``{0..k-1}`` and ``{k, 2k, ..., k^2}`` in Z_{k^2+1}: a (k^2+1, 2, k, 1)-SEDF."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    n = k * k + 1
    g = FiniteAbelianGroup((n,))
    fam = SetFamily.of(g, [range(k), range(k, k * k + 1, k)])
    return _check_sedf(fam, n, 2, k, 1)


def singleton_sedf(n: int) -> SetFamily:
    """All ``n`` singletons of Z_n: an (n, n, 1, 1)-SEDF."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    g = FiniteAbelianGroup((n,))
    return _check_sedf(SetFamily.of(g, [[i] for i in range(n)]), n, n, 1, 1)


def cyclotomic_half_sedf(q: int) -> SetFamily:
    """Squares and nonsquares of GF(q), q = 1 mod 4, in the additive group of GF(q)."""
    if prime_power(q) is None:
        raise ValueError(f"{q} is not a prime power")
    if q % 4 != 1:
        raise ValueError(f"cyclotomic half construction needs q = 1 mod 4, got {q}")
    f = build_field(q)
    fam = SetFamily.of(f.additive_group, [squares(f), nonsquares(f)])
    return _check_sedf(fam, q, 2, (q - 1) // 2, (q - 1) // 4)


def default_slopes(q: int) -> list[Slope]:
    return [None] + list(range((q + 1) // 2 - 1))


def paley_lines_pds(q: int, slopes: Sequence[Slope] | None = None) -> tuple[FiniteAbelianGroup, frozenset[int]]:
    """Union of ``(q+1)/2`` lines through the origin of GF(q)^2, origin removed.

    A slope ``s`` (an additive index of GF(q)) names the line ``{(t, s*t)}``;
    ``None`` names ``{(0, t)}``.  Points ``(x, y)`` are embedded as the
    coordinates of ``x`` followed by those of ``y``.
    """
    pe = prime_power(q)
    if pe is None or q % 2 == 0:
        raise ValueError(f"q must be an odd prime power, got {q}")
    chosen = default_slopes(q) if slopes is None else list(slopes)
    if len(chosen) != (q + 1) // 2:
        raise ValueError(f"need exactly {(q + 1) // 2} slopes, got {len(chosen)}")
    if len(set(chosen)) != len(chosen):
        raise ValueError(f"repeated slope in {chosen}")
    for s in chosen:
        if s is not None and not 0 <= s < q:
            raise ValueError(f"slope {s} is not an element of GF({q})")
    f = build_field(q)
    p, e = pe
    g = FiniteAbelianGroup((p,) * (2 * e))
    points = set()
    for s in chosen:
        for t in range(1, q):
            tt = f.element(t)
            x, y = (f.zero, tt) if s is None else (tt, f.mul(f.element(s), tt))
            points.add(g.encode(x + y))
    d = frozenset(points)
    assert len(d) == (q * q - 1) // 2, "distinct lines meet only at the origin"
    if not verify_pds(d, g).paley_type:
        raise AssertionError(f"line union for q={q} is not a Paley PDS")
    return g, d


def _require_paley(d: frozenset[int], g: FiniteAbelianGroup):
    v = verify_pds(d, g)
    if not v.paley_type:
        raise ValueError("input is not a Paley-type PDS")
    return v


def pds_complement(d: Sequence[int] | frozenset[int], g: FiniteAbelianGroup) -> frozenset[int]:
    """``G* \\ D`` for a Paley PDS ``D``; the result is again Paley with the same parameters."""
    d = frozenset(d)
    before = _require_paley(d, g)
    comp = frozenset(range(1, g.order)) - d
    after = verify_pds(comp, g)
    if not (after.paley_type and after.params == before.params):
        raise AssertionError("complement of a Paley PDS failed to verify")
    return comp


def paley_pds_to_sedf(d: Sequence[int] | frozenset[int], g: FiniteAbelianGroup) -> SetFamily:
    """``{D, G* \\ D}`` for a Paley PDS ``D``: a (v, 2, (v-1)/2, (v-1)/4)-SEDF."""
    d = frozenset(d)
    _require_paley(d, g)
    v = g.order
    fam = SetFamily.of(g, [d, frozenset(range(1, v)) - d])
    pp = paley_params(v)
    return _check_sedf(fam, v, 2, pp.k, (v - 1) // 4)


def gsedf_two_set(n: int) -> SetFamily:
    """``{0}`` and ``{1, ..., n-1}`` in Z_n: an (n, 2; 1, n-1; 1, 1)-GSEDF."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    fam = SetFamily.of(FiniteAbelianGroup((n,)), [[0], range(1, n)])
    if verify_gsedf(fam).lambdas != (1, 1):
        raise AssertionError("two-set GSEDF failed to verify")
    return fam


def gsedf_z7() -> SetFamily:
    fam = SetFamily.of(FiniteAbelianGroup((7,)), [[1], [2], [4], [0, 3, 5, 6]])
    if verify_gsedf(fam).lambdas != (1, 1, 1, 2):
        raise AssertionError("Z7 GSEDF failed to verify")
    return fam


def gsedf_examples(n: int = 4) -> list[SetFamily]:
    return [gsedf_two_set(n), gsedf_z7()]
