"""Finite abelian groups (direct products of cyclic groups) and finite fields.

Group elements are plain ``int`` indices.  A coordinate tuple ``(c_1, ..., c_r)``
for the factors ``(n_1, ..., n_r)`` is encoded in mixed radix with the first
factor most significant, so index order is lexicographic tuple order and
index 0 is the identity.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_GROUP_ORDER = 1 << 20


class ParseError(ValueError):
    """Malformed group, field or family text."""


# -- integer helpers (trial division is exact below the group-order cap) --


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == {n: 1}


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e``, or None if ``q`` is not a prime power."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    ((p, e),) = f.items()
    return p, e


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# -- groups --


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct product Z_{n_1} x ... x Z_{n_r} in the order given.

    No normalization is applied: ``Z6`` and ``Z2xZ3`` are different objects.
    """

    factors: tuple[int, ...]
    order: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        factors = tuple(int(f) for f in self.factors)
        if not factors:
            raise ValueError("a group needs at least one cyclic factor")
        if any(f < 2 for f in factors):
            raise ValueError(f"cyclic factors must be >= 2, got {factors}")
        order = 1
        for f in factors:
            order *= f
        if order > MAX_GROUP_ORDER:
            raise ValueError(f"group order {order} exceeds cap {MAX_GROUP_ORDER}")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "order", order)

    def __str__(self) -> str:
        return self.spec

    def __repr__(self) -> str:
        return f"FiniteAbelianGroup({self.spec})"

    @property
    def spec(self) -> str:
        return "x".join(f"Z{f}" for f in self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def is_cyclic_spec(self) -> bool:
        """True for a single-factor spec ``Zn`` (the only groups where unit multipliers are offered)."""
        return len(self.factors) == 1

    @cached_property
    def strides(self) -> tuple[int, ...]:
        out = []
        s = 1
        for f in reversed(self.factors):
            out.append(s)
            s *= f
        return tuple(reversed(out))

    def check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise IndexError(f"element index {a} out of range for {self.spec}")
        return a

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.factors):
            raise ValueError(f"expected {len(self.factors)} coordinates, got {len(coords)}")
        return sum((c % f) * s for c, f, s in zip(coords, self.factors, self.strides))

    def decode(self, a: int) -> tuple[int, ...]:
        self.check(a)
        return tuple((a // s) % f for f, s in zip(self.factors, self.strides))

    def add(self, a: int, b: int) -> int:
        ca, cb = self.decode(a), self.decode(b)
        return self.encode([x + y for x, y in zip(ca, cb)])

    def negate(self, a: int) -> int:
        return self.encode([-x for x in self.decode(a)])

    def sub(self, a: int, b: int) -> int:
        ca, cb = self.decode(a), self.decode(b)
        return self.encode([x - y for x, y in zip(ca, cb)])

    def scale(self, u: int, a: int) -> int:
        """``u * a`` (repeated addition), for integer ``u``."""
        return self.encode([u * x for x in self.decode(a)])

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> range:
        return range(1, self.order)

    # -- vectorized tables (built lazily; fine for the orders searched here) --

    @cached_property
    def coords(self) -> np.ndarray:
        """``(order, rank)`` array of coordinate tuples."""
        idx = np.arange(self.order, dtype=np.int64)
        st = np.asarray(self.strides, dtype=np.int64)
        fa = np.asarray(self.factors, dtype=np.int64)
        return (idx[:, None] // st[None, :]) % fa[None, :]

    def sub_indices(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Elementwise ``a - b`` on broadcastable index arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        diff = self.coords[a] - self.coords[b]
        diff %= np.asarray(self.factors, dtype=np.int64)
        return diff @ np.asarray(self.strides, dtype=np.int64)

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.sub_indices(np.zeros(self.order, dtype=np.int64), np.arange(self.order)))

    def sub_table(self) -> list[list[int]]:
        """Dense ``table[a][b] = a - b`` as nested lists (for the search inner loop)."""
        a = np.arange(self.order)
        return self.sub_indices(a[:, None], a[None, :]).tolist()

    def units(self) -> list[int]:
        """Multipliers coprime to the exponent; automorphisms ``x -> u*x`` of any product."""
        from math import gcd, lcm

        exponent = 1
        for f in self.factors:
            exponent = lcm(exponent, f)
        return [u for u in range(1, exponent) if gcd(u, exponent) == 1]

    def invariant_factors(self) -> tuple[int, ...]:
        """Isomorphism invariant: invariant factors ``d_1 | d_2 | ...``."""
        by_prime: dict[int, list[int]] = {}
        for f in self.factors:
            for p, e in factorize(f).items():
                by_prime.setdefault(p, []).append(p**e)
        width = max(len(v) for v in by_prime.values())
        cols = [1] * width
        for powers in by_prime.values():
            powers.sort(reverse=True)
            for i, pe in enumerate(powers):
                cols[i] *= pe
        return tuple(sorted(c for c in cols if c > 1))

    def is_isomorphic(self, other: FiniteAbelianGroup) -> bool:
        return self.invariant_factors() == other.invariant_factors()


_GROUP_RE = re.compile(r"^Z(\d+)(?:[xX]Z(\d+))*$")
_FIELD_RE = re.compile(r"^GF\((\d+)\)$", re.IGNORECASE)


def parse_group(spec: str) -> FiniteAbelianGroup:
    """Parse ``Z<int>(xZ<int>)*``, e.g. ``Z5`` or ``Z3xZ3``."""
    text = spec.strip().replace(" ", "")
    if not _GROUP_RE.match(text):
        raise ParseError(f"malformed group spec {spec!r}")
    factors = tuple(int(t) for t in re.findall(r"Z(\d+)", text))
    if any(f < 2 for f in factors):
        raise ParseError(f"cyclic factors must be >= 2 in {spec!r}")
    try:
        return FiniteAbelianGroup(factors)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_field(spec: str) -> FiniteField:
    m = _FIELD_RE.match(spec.strip())
    if not m:
        raise ParseError(f"malformed field spec {spec!r}")
    try:
        return build_field(int(m.group(1)))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def resolve_group(spec: str) -> FiniteAbelianGroup:
    """Accept either a group spec or ``GF(q)``, the latter meaning its additive group."""
    if spec.strip().upper().startswith("GF"):
        return parse_field(spec).additive_group
    return parse_group(spec)


def abelian_groups_of_order(n: int) -> list[FiniteAbelianGroup]:
    """One representative per isomorphism class of abelian groups of order ``n``.

    Representatives are written in invariant-factor form (``Z3xZ3``, ``Z9``,
    ``Z2xZ6``, ...), sorted by factor tuple.
    """

    def partitions(e: int, largest: int | None = None) -> Iterable[tuple[int, ...]]:
        largest = e if largest is None else largest
        if e == 0:
            yield ()
            return
        for first in range(min(e, largest), 0, -1):
            for rest in partitions(e - first, first):
                yield (first,) + rest

    if n < 2:
        return []
    per_prime = [[(p, part) for part in partitions(e)] for p, e in factorize(n).items()]
    groups = []
    for combo in itertools.product(*per_prime):
        width = max(len(part) for _, part in combo)
        cols = [1] * width
        for p, part in combo:
            for i, a in enumerate(part):
                cols[i] *= p**a
        groups.append(FiniteAbelianGroup(tuple(sorted(cols))))
    return sorted(groups, key=lambda g: (len(g.factors), g.factors))


# -- polynomials over Z_p (coefficient lists, low degree first) --


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo monic ``m`` over Z_p."""
    r = _trim([c % p for c in a])
    dm = len(m) - 1
    while len(r) - 1 >= dm and r:
        c = r[-1]
        shift = len(r) - 1 - dm
        for i, mc in enumerate(m):
            r[shift + i] = (r[shift + i] - c * mc) % p
        _trim(r)
    return r


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Brute-force test: no monic factor of degree 1..deg/2 divides ``poly``."""
    e = len(poly) - 1
    if e < 1 or poly[-1] % p != 1:
        raise ValueError("expected a monic polynomial of degree >= 1")
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not poly_mod(poly, list(low) + [1], p):
                return False
    return True


@dataclass(frozen=True)
class FiniteField:
    """GF(p^e) with deterministic modulus and primitive element.

    Field elements are coefficient tuples of length ``e`` (low degree first).
    The additive embedding sends coefficient ``i`` to coordinate ``i`` of
    ``Z_p x ... x Z_p``.
    """

    p: int
    e: int
    modulus: tuple[int, ...]
    primitive: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p**self.e

    def __repr__(self) -> str:
        return f"GF({self.q})"

    @cached_property
    def additive_group(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup((self.p,) * self.e)

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.e

    @property
    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.e - 1)

    def index(self, a: Sequence[int]) -> int:
        return self.additive_group.encode(a)

    def element(self, idx: int) -> tuple[int, ...]:
        return self.additive_group.decode(idx)

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        r = poly_mod(prod, self.modulus, self.p)
        return tuple(r + [0] * (self.e - len(r)))

    def power(self, a: Sequence[int], n: int) -> tuple[int, ...]:
        result, base = self.one, tuple(a)
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def powers_of_primitive(self) -> list[tuple[int, ...]]:
        """``[alpha^0, alpha^1, ..., alpha^(q-2)]``."""
        out = [self.one]
        for _ in range(self.q - 2):
            out.append(self.mul(out[-1], self.primitive))
        return out


def _has_full_order(f: FiniteField, a: tuple[int, ...]) -> bool:
    q = f.q
    if a == f.zero or f.power(a, q - 1) != f.one:
        return False
    return all(f.power(a, (q - 1) // r) != f.one for r in factorize(q - 1))


def build_field(q: int) -> FiniteField:
    """Construct GF(q).

    The modulus is the lexicographically smallest monic irreducible of degree
    ``e`` (coefficients compared low degree first); the primitive element is
    the one with the smallest additive index.
    """
    pe = prime_power(q)
    if pe is None:
        raise ValueError(f"{q} is not a prime power")
    p, e = pe
    modulus = None
    for low in itertools.product(range(p), repeat=e):
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            modulus = cand
            break
    assert modulus is not None, "an irreducible of every degree exists"
    probe = FiniteField(p, e, modulus, (0,) * e)
    for idx in range(1, q):
        a = probe.element(idx)
        if _has_full_order(probe, a):
            return FiniteField(p, e, modulus, a)
    raise AssertionError("GF(q)^* is cyclic, a primitive element must exist")


def squares(f: FiniteField) -> frozenset[int]:
    """Additive indices of the ``(q-1)/2`` nonzero squares (even powers of the primitive element)."""
    if f.p == 2:
        raise ValueError(f"squares are only split off for odd q, got q={f.q}")
    pw = f.powers_of_primitive()
    return frozenset(f.index(pw[i]) for i in range(0, f.q - 1, 2))


def nonsquares(f: FiniteField) -> frozenset[int]:
    if f.p == 2:
        raise ValueError(f"squares are only split off for odd q, got q={f.q}")
    pw = f.powers_of_primitive()
    return frozenset(f.index(pw[i]) for i in range(1, f.q - 1, 2))


def add(g: FiniteAbelianGroup, a: int, b: int) -> int:
    return g.add(g.check(a), g.check(b))


def negate(g: FiniteAbelianGroup, a: int) -> int:
    return g.negate(g.check(a))
