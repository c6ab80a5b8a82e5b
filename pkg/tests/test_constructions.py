import pytest

from sedf.algebra import parse_group
from sedf.constructions import (
    ConstructionDescriptor,
    cyclotomic_half_sedf,
    default_slopes,
    exponential_sedf,
    gsedf_examples,
    gsedf_two_set,
    paley_lines_pds,
    paley_pds_to_sedf,
    pds_complement,
    singleton_sedf,
)
from sedf.diffcore import verify_gsedf, verify_pds
from oracles import is_paley, is_sedf, squares_mod

Z33 = parse_group("Z3xZ3")


def coords(fam):
    return [[fam.group.decode(x) for x in s] for s in fam.sets]


def enc(g, pts):
    return frozenset(g.encode(p) for p in pts)


class TestExponential:
    def test_k1(self):
        fam = exponential_sedf(1)
        assert fam.group.spec == "Z2" and fam.sets == ((0,), (1,))

    def test_k2(self):
        fam = exponential_sedf(2)
        assert fam.group.spec == "Z5" and fam.sets == ((0, 1), (2, 4))

    def test_k3(self):
        fam = exponential_sedf(3)
        assert fam.group.spec == "Z10" and fam.sets == ((0, 1, 2), (3, 6, 9))

    @pytest.mark.parametrize("k", range(1, 8))
    def test_oracle(self, k):
        assert is_sedf(coords(exponential_sedf(k)), (k * k + 1,)) == 1

    def test_bad(self):
        with pytest.raises(ValueError):
            exponential_sedf(0)


class TestSingleton:
    def test_n2(self):
        assert singleton_sedf(2).sets == ((0,), (1,))

    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_oracle(self, n):
        fam = singleton_sedf(n)
        assert fam.m == n and is_sedf(coords(fam), (n,)) == 1

    def test_bad(self):
        with pytest.raises(ValueError):
            singleton_sedf(1)


class TestCyclotomicHalf:
    def test_q5(self):
        assert cyclotomic_half_sedf(5).sets == ((1, 4), (2, 3))

    def test_q13(self):
        fam = cyclotomic_half_sedf(13)
        assert list(fam.sets[0]) == squares_mod(13)
        assert is_sedf(coords(fam), (13,)) == 3

    def test_q9_in_z3xz3(self):
        fam = cyclotomic_half_sedf(9)
        assert fam.group == Z33
        assert is_sedf(coords(fam), (3, 3)) == 2

    @pytest.mark.parametrize("q", [17, 25, 29])
    def test_negation_closed(self, q):
        fam = cyclotomic_half_sedf(q)
        g = fam.group
        for s in fam.sets:
            assert {g.negate(x) for x in s} == set(s)

    @pytest.mark.parametrize("q", [7, 11, 15, 21, 27])
    def test_rejects(self, q):
        with pytest.raises(ValueError):
            cyclotomic_half_sedf(q)


class TestPaleyLines:
    def test_q3_default_is_d1(self):
        g, d = paley_lines_pds(3)
        assert g == Z33
        assert d == enc(g, [(0, 1), (0, 2), (1, 0), (2, 0)])

    def test_q3_slopes_1_2(self):
        g, d = paley_lines_pds(3, [1, 2])
        assert d == enc(g, [(1, 1), (2, 2), (1, 2), (2, 1)])
        assert is_paley([g.decode(x) for x in d], (3, 3))

    def test_q5_params(self):
        g, d = paley_lines_pds(5)
        assert verify_pds(d, g).params.as_tuple() == (25, 12, 5, 6)
        assert is_paley([g.decode(x) for x in d], g.factors)

    def test_q9_in_rank_four(self):
        g, d = paley_lines_pds(9)
        assert g.factors == (3, 3, 3, 3) and len(d) == 40

    def test_default_slopes(self):
        assert default_slopes(7) == [None, 0, 1, 2]

    @pytest.mark.parametrize("slopes", [[None], [None, 0, 1], [0, 0], [None, 3]])
    def test_bad_slopes(self, slopes):
        with pytest.raises(ValueError):
            paley_lines_pds(3, slopes)

    def test_even_q(self):
        with pytest.raises(ValueError):
            paley_lines_pds(4)


class TestComplement:
    def test_z3xz3_axes_complement(self):
        g, d1 = paley_lines_pds(3)
        assert pds_complement(d1, g) == enc(g, [(1, 1), (1, 2), (2, 1), (2, 2)])

    def test_z13(self):
        g = parse_group("Z13")
        d = frozenset(squares_mod(13))
        comp = pds_complement(d, g)
        assert comp == frozenset(range(1, 13)) - d
        assert verify_pds(comp, g).params.as_tuple() == (13, 6, 2, 3)

    @pytest.mark.parametrize("q", [3, 5, 7])
    def test_involution(self, q):
        g, d = paley_lines_pds(q)
        assert pds_complement(pds_complement(d, g), g) == d

    def test_rejects_non_paley(self):
        with pytest.raises(ValueError):
            pds_complement([1, 2], parse_group("Z5"))


class TestPdsToSedf:
    def test_z3xz3_axes_family(self):
        g, d1 = paley_lines_pds(3)
        fam = paley_pds_to_sedf(d1, g)
        expected = [enc(g, [(0, 1), (0, 2), (1, 0), (2, 0)]), enc(g, [(1, 1), (1, 2), (2, 1), (2, 2)])]
        assert [frozenset(s) for s in fam.sets] == expected

    @pytest.mark.parametrize("p,lam", [(13, 3), (17, 4)])
    def test_residues(self, p, lam):
        fam = paley_pds_to_sedf(squares_mod(p), parse_group(f"Z{p}"))
        assert is_sedf(coords(fam), (p,)) == lam

    def test_rejects(self):
        with pytest.raises(ValueError):
            paley_pds_to_sedf([1, 2, 3], parse_group("Z13"))


class TestGsedf:
    def test_examples(self):
        two, z7 = gsedf_examples()
        assert verify_gsedf(two).lambdas == (1, 1)
        assert verify_gsedf(z7).lambdas == (1, 1, 1, 2)
        assert z7.sets == ((1,), (2,), (4,), (0, 3, 5, 6))

    def test_degenerate(self):
        assert gsedf_two_set(2).sets == ((0,), (1,))


class TestDescriptor:
    def test_aliases_and_str(self):
        d = ConstructionDescriptor("cyclotomic", (9,))
        assert d.name == "cyclotomic_half" and str(d) == "cyclotomic_half(9)"

    def test_build_dispatch(self):
        assert ConstructionDescriptor("exponential", (3,)).build().group.spec == "Z10"
        assert ConstructionDescriptor("paley", (3,)).build().m == 1
        assert ConstructionDescriptor("pds_to_sedf", (3,)).build().m == 2
        assert ConstructionDescriptor("gsedf_z7").build().m == 4

    @pytest.mark.parametrize("name,params", [("nope", (1,)), ("exponential", ()), ("gsedf_z7", (1,))])
    def test_bad(self, name, params):
        with pytest.raises(ValueError):
            ConstructionDescriptor(name, params)
