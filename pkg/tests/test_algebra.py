import pytest
from hypothesis import given
from hypothesis import strategies as st

from sedf.algebra import (
    FiniteAbelianGroup,
    ParseError,
    abelian_groups_of_order,
    add,
    build_field,
    negate,
    nonsquares,
    parse_field,
    parse_group,
    prime_power,
    resolve_group,
    squares,
)
from oracles import mult_order_mod, poly_products_monic, squares_mod

PRIME_POWERS_TO_128 = [q for q in range(2, 129) if prime_power(q)]


class TestParseGroup:
    def test_cyclic(self):
        g = parse_group("Z5")
        assert g.factors == (5,) and g.order == 5

    def test_product(self):
        g = parse_group("Z3xZ3")
        assert g.factors == (3, 3) and g.order == 9

    def test_uppercase_x_and_spaces(self):
        assert parse_group(" Z2 X Z4 ").factors == (2, 4)

    @pytest.mark.parametrize("bad", ["Z1", "Z0xZ3", "Z", "3x3", "Z3*Z3", "Z3xx Z3", ""])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_group(bad)

    def test_factor_order_is_kept(self):
        assert parse_group("Z6") != parse_group("Z2xZ3")
        assert parse_group("Z6").is_isomorphic(parse_group("Z2xZ3"))
        assert parse_group("Z2xZ3") != parse_group("Z3xZ2")

    def test_order_cap(self):
        with pytest.raises(ParseError):
            parse_group("Z1024xZ1025")

    def test_field_spec(self):
        assert resolve_group("GF(9)") == parse_group("Z3xZ3")
        assert parse_field("gf(13)").q == 13
        with pytest.raises(ParseError):
            parse_field("GF(6)")


class TestArithmetic:
    def test_cyclic_add(self):
        assert add(parse_group("Z5"), 3, 4) == 2

    def test_product_add(self):
        g = parse_group("Z3xZ3")
        assert g.decode(add(g, g.encode((1, 2)), g.encode((2, 2)))) == (0, 1)

    def test_negate(self):
        g = parse_group("Z3xZ3")
        assert negate(parse_group("Z5"), 2) == 3
        assert g.decode(negate(g, g.encode((1, 0)))) == (2, 0)
        assert negate(g, 0) == 0

    def test_out_of_range(self):
        g = parse_group("Z5")
        with pytest.raises(IndexError):
            add(g, 5, 1)
        with pytest.raises(IndexError):
            negate(g, -1)

    def test_index_order_is_lexicographic(self):
        g = parse_group("Z2xZ3")
        assert [g.decode(i) for i in range(6)] == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]

    def test_vectorized_matches_scalar(self):
        import numpy as np

        g = parse_group("Z4xZ6")
        a = np.arange(g.order)
        table = g.sub_indices(a[:, None], a[None, :])
        assert all(table[x, y] == g.sub(x, y) for x in range(g.order) for y in range(g.order))


groups = st.lists(st.integers(2, 7), min_size=1, max_size=3).map(lambda f: FiniteAbelianGroup(tuple(f)))


@given(groups, st.data())
def test_group_laws(g, data):
    a = data.draw(st.integers(0, g.order - 1))
    b = data.draw(st.integers(0, g.order - 1))
    assert add(g, a, b) == add(g, b, a)
    assert add(g, a, negate(g, a)) == 0
    assert add(g, a, 0) == a
    assert g.encode(g.decode(a)) == a


def test_abelian_groups_of_order():
    assert [g.spec for g in abelian_groups_of_order(9)] == ["Z9", "Z3xZ3"]
    assert [g.spec for g in abelian_groups_of_order(8)] == ["Z8", "Z2xZ4", "Z2xZ2xZ2"]
    assert [g.spec for g in abelian_groups_of_order(10)] == ["Z10"]
    # number of abelian groups of order 72 = p(3) * p(2) = 6
    assert len(abelian_groups_of_order(72)) == 6


class TestFields:
    def test_prime_field_13(self):
        f = build_field(13)
        assert (f.p, f.e, f.modulus) == (13, 1, (0, 1))
        assert f.primitive == (2,)
        # 2 is the smallest element of order 12 mod 13, by direct powering
        assert mult_order_mod(2, 13) == 12

    def test_gf9(self):
        f = build_field(9)
        assert (f.p, f.e) == (3, 2)
        assert f.additive_group == parse_group("Z3xZ3")
        # x^2 + 1 is the first irreducible in low-degree-first lexicographic order
        assert f.modulus == (1, 0, 1)

    @pytest.mark.parametrize("q", [1, 6, 12, 100])
    def test_not_prime_power(self, q):
        with pytest.raises(ValueError):
            build_field(q)

    @pytest.mark.parametrize("q", PRIME_POWERS_TO_128)
    def test_every_prime_power_to_128(self, q):
        f = build_field(q)
        if f.e > 1:
            assert f.modulus not in poly_products_monic(f.p, f.e)
        seen = set()
        x = f.one
        for _ in range(q - 1):
            seen.add(x)
            x = f.mul(x, f.primitive)
        assert x == f.one
        assert len(seen) == q - 1 and f.zero not in seen

    def test_primitive_is_smallest(self):
        for q in (9, 25, 27, 49):
            f = build_field(q)
            idx = f.index(f.primitive)
            for smaller in range(1, idx):
                a = f.element(smaller)
                assert f.power(a, (q - 1)) == f.one
                assert any(f.power(a, d) == f.one for d in range(1, q - 1) if (q - 1) % d == 0)


class TestSquares:
    def test_q5(self):
        assert sorted(squares(build_field(5))) == [1, 4] == squares_mod(5)

    def test_q13(self):
        assert sorted(squares(build_field(13))) == [1, 3, 4, 9, 10, 12] == squares_mod(13)

    def test_q9_closed_under_negation(self):
        f = build_field(9)
        sq = squares(f)
        g = f.additive_group
        assert len(sq) == 4
        assert {negate(g, x) for x in sq} == sq

    def test_even_q_rejected(self):
        with pytest.raises(ValueError):
            squares(build_field(8))

    @pytest.mark.parametrize("q", [q for q in PRIME_POWERS_TO_128 if q % 4 == 1])
    def test_negation_closed_when_q_1_mod_4(self, q):
        f = build_field(q)
        g = f.additive_group
        sq = squares(f)
        assert {negate(g, x) for x in sq} == sq
        assert sq | nonsquares(f) == frozenset(range(1, q))
        assert not sq & nonsquares(f)

    @pytest.mark.parametrize("q", [9, 25, 27, 49, 81, 121, 125])
    def test_squares_by_direct_squaring(self, q):
        f = build_field(q)
        direct = {f.index(f.mul(a, a)) for a in (f.element(i) for i in range(1, q))}
        assert direct == squares(f)
