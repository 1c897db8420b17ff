from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from helpers import random_presentation, random_word, seeded
from novikov_torsion.groups import (CohomologyClass, GroupPresentation, GroupRingExpr, NoFreeQuotient,
                                    NotAKnot, ParseError, Word, abelianization, braid_to_knot_group,
                                    commutator, fox_derivative, fox_jacobian,
                                    fundamental_identity_holds, induced_phi, parse_presentation,
                                    parse_word, presentation_from_json)

X, Y = Word.gen(0), Word.gen(1)
P2 = GroupPresentation(("x", "y"))


def expr(*pairs):
    out = GroupRingExpr()
    for w, c in pairs:
        out.add_term(w, c)
    return out


class TestWords:
    def test_reduction(self):
        assert X * X.inverse() == Word()
        assert (X * Y * Y.inverse() * X).syllables == ((0, 2),)
        assert len(Word([(0, 3), (1, -2)])) == 5

    @given(st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=20))
    def test_reduction_idempotent(self, letters):
        w = Word(letters)
        assert Word(w.letters()) == w
        assert len(w) <= len(letters)
        assert all(a[0] != b[0] for a, b in zip(w.syllables, w.syllables[1:]))

    def test_format_and_parse(self):
        w = parse_word("a^3 B^-2 c A", "abc")
        assert w.syllables == ((0, 3), (1, 2), (2, 1), (0, -1))
        assert parse_word(w.format("abc"), "abc") == w


class TestParsing:
    def test_text(self):
        p = parse_presentation("gens: a b\nrel: abAB")
        assert p.generators == ("a", "b") and len(p.relators) == 1
        q = parse_presentation("gens: a b; rel: abAB, aa")
        assert len(q.relators) == 2

    def test_errors_carry_position(self):
        with pytest.raises(ParseError) as e:
            parse_presentation("gens: a b\nrel: abxAB")
        assert e.value.line == 2 and e.value.col == 8
        with pytest.raises(ParseError):
            parse_presentation("rel: ab")
        with pytest.raises(ParseError):
            parse_presentation("gens: ab")

    def test_json(self):
        p = presentation_from_json({"gens": ["a", "b"], "rels": [[["a", 1], ["b", 1], ["a", -1]], "aB"]})
        assert p.relators[0] == Word([(1, 1)])
        assert presentation_from_json(p.to_json()) == p

    def test_cyclic_reduction(self):
        p = GroupPresentation(("a", "b"), (Word([(0, 1), (1, 1), (0, -1)]),))
        assert p.relators == (Word([(1, 1)]),)
        with pytest.raises(ValueError):
            GroupPresentation(("a",), (Word([(1, 1)]),))


class TestFox:
    def test_generator(self):
        assert fox_derivative(P2, X, 0) == expr((Word(), 1))

    def test_commutator(self):
        r = commutator(X, Y)
        assert fox_derivative(P2, r, 0) == expr((Word(), 1), (X * Y * X.inverse(), -1))
        assert fox_derivative(P2, r, 1) == expr((X, 1), (r, -1))

    def test_power(self):
        p = GroupPresentation(("x",))
        assert fox_derivative(p, X ** 3, 0) == expr((Word(), 1), (X, 1), (X ** 2, 1))
        assert fox_derivative(p, X ** -1, 0) == expr((X.inverse(), -1))

    def test_product_rule(self):
        rng = seeded(3)
        for _ in range(200):
            u, v = random_word(rng, 3, 6), random_word(rng, 3, 6)
            p = GroupPresentation(("a", "b", "c"))
            for j in range(3):
                lhs = fox_derivative(p, u * v, j)
                rhs = fox_derivative(p, u, j) + GroupRingExpr.of(u) * fox_derivative(p, v, j)
                assert lhs == rhs

    def test_fundamental_identity_many_relators(self):
        rng = seeded(11)
        count = 0
        for _ in range(400):
            p = random_presentation(rng, rng.randint(1, 4), rng.randint(2, 5), 12)
            for r in p.relators:
                assert fundamental_identity_holds(p, r)
                count += 1
        for b in ([1, 1, 1], [1, -2, 1, -2], [1, 1, 1, 2, -1, 2], [1, 1, 2, -1, 2, 2, 3, -2, 3]):
            p = braid_to_knot_group(b)
            J = fox_jacobian(p)
            for r, row in zip(p.relators, J):
                assert fundamental_identity_holds(p, r, row)
                count += 1
        assert count >= 1000

    def test_bad_generator(self):
        with pytest.raises(IndexError):
            fox_derivative(P2, X, 5)


class TestBraids:
    @pytest.mark.parametrize("braid", [[1, 1, 1], [1, -2, 1, -2], [1, 2], [1, 1, 1, 2, -1, 2]])
    def test_knot_groups(self, braid):
        p = braid_to_knot_group(braid)
        assert p.deficiency == 1
        assert abelianization(p) == (1, [])
        assert induced_phi(p).values == (1,) * p.ngens

    def test_links_rejected(self):
        with pytest.raises(NotAKnot):
            braid_to_knot_group([1, 1])
        with pytest.raises(ValueError):
            braid_to_knot_group([0])

    def test_random_knot_closures(self):
        rng = seeded(5)
        seen = 0
        while seen < 40:
            k = rng.randint(2, 4)
            b = [rng.choice([1, -1]) * rng.randint(1, k - 1) for _ in range(rng.randint(1, 9))]
            try:
                p = braid_to_knot_group(b, k)
            except NotAKnot:
                continue
            assert abelianization(p) == (1, [])
            seen += 1


class TestCohomology:
    def test_abelianization(self):
        assert abelianization(GroupPresentation(("x",))) == (1, [])
        assert abelianization(parse_presentation("gens: x; rel: xx")) == (0, [2])
        assert abelianization(parse_presentation("gens: x y; rel: x^4, y^6")) == (0, [2, 12])

    def test_induced_phi(self):
        z2 = parse_presentation("gens: x y; rel: xyXY")
        basis = induced_phi(z2)
        assert sorted(b.values for b in basis) == [(0, 1), (1, 0)]
        with pytest.raises(NoFreeQuotient):
            induced_phi(parse_presentation("gens: x; rel: xx"))

    def test_class_checks(self):
        p = parse_presentation("gens: x y; rel: xyXY")
        c = CohomologyClass((2, 4)).check(p)
        assert not c.is_primitive
        prim = c.primitive()
        assert prim.values == (1, 2) and prim.scale == Fraction(1, 2)
        with pytest.raises(ValueError):
            CohomologyClass((1, 1)).check(parse_presentation("gens: x y; rel: xY^2"))
        half = CohomologyClass(("1/2", "3/2")).primitive()
        assert half.values == (1, 3)
