"""Brute-force reference computations, independent of the package internals.

Elements are coordinate tuples and differences are formed coordinate by
coordinate; nothing here touches the package's index encoding or numpy paths.
"""

from collections import Counter
from itertools import combinations, product


def tuple_sub(a, b, factors):
    return tuple((x - y) % f for x, y, f in zip(a, b, factors))


def all_elements(factors):
    return list(product(*(range(f) for f in factors)))


def diff_counter(A, B, factors):
    return Counter(tuple_sub(a, b, factors) for a in A for b in B)


def is_sedf(sets, factors):
    """Return lambda if ``sets`` form an SEDF, else None."""
    zero = tuple(0 for _ in factors)
    nonzero = [e for e in all_elements(factors) if e != zero]
    if len({len(s) for s in sets}) != 1:
        return None
    lam = None
    for i, A in enumerate(sets):
        rest = [x for j, B in enumerate(sets) if j != i for x in B]
        c = diff_counter(A, rest, factors)
        if c[zero]:
            return None
        vals = {c[e] for e in nonzero}
        if len(vals) != 1:
            return None
        (v,) = vals
        if lam is not None and v != lam:
            return None
        lam = v
    return lam or None


def pds_params(D, factors):
    """Return (v, k, lam, mu) if D is a PDS, else None."""
    zero = tuple(0 for _ in factors)
    D = list(D)
    c = Counter(tuple_sub(a, b, factors) for a in D for b in D if a != b)
    elems = all_elements(factors)
    inside = {c[e] for e in elems if e != zero and e in D}
    outside = {c[e] for e in elems if e != zero and e not in D}
    if len(inside) > 1 or len(outside) > 1:
        return None
    lam = inside.pop() if inside else 0
    mu = outside.pop() if outside else 0
    return (len(elems), len(D), lam, mu)


def is_paley(D, factors):
    zero = tuple(0 for _ in factors)
    v = len(all_elements(factors))
    if zero in D or v % 4 != 1:
        return False
    neg = {tuple((-x) % f for x, f in zip(d, factors)) for d in D}
    if neg != set(D):
        return False
    return pds_params(D, factors) == (v, (v - 1) // 2, (v - 5) // 4, (v - 1) // 4)


def mult_order_mod(a, p):
    x, k = a % p, 1
    if x == 0:
        return None
    while x != 1:
        x = x * a % p
        k += 1
    return k


def squares_mod(p):
    return sorted({(x * x) % p for x in range(1, p)})


def brute_sedf_count(factors, m, k, lam):
    """Count SEDFs with 0 in the first set (sets ordered by minimum), by plain enumeration."""
    elems = all_elements(factors)
    found = 0

    def rec(chosen, used):
        nonlocal found
        if len(chosen) == m:
            if is_sedf(chosen, factors) == lam:
                found += 1
            return
        floor = chosen[-1][0] if chosen else None
        for first in elems:
            if first in used or (floor is not None and first <= floor):
                continue
            if not chosen and first != elems[0]:
                continue
            pool = [e for e in elems if e not in used and e > first]
            for rest in combinations(pool, k - 1):
                s = (first,) + rest
                rec(chosen + [s], used | set(s))

    rec([], set())
    return found


def poly_products_monic(p, e):
    """Every reducible monic polynomial of degree e over Z_p, as low-first tuples."""
    def monic(d):
        for low in product(range(p), repeat=d):
            yield list(low) + [1]

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return tuple(out)

    reducible = set()
    for d in range(1, e // 2 + 1):
        for a in monic(d):
            for b in monic(e - d):
                reducible.add(mul(a, b))
    return reducible
