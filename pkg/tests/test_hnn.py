import json
import math

import pytest

from helpers import apply_word, random_transitive_pair, random_word, schreier_generators, seeded
from novikov_torsion.groups import Word, parse_word
from novikov_torsion.hnn import (AscendingStatus, HnnData, NoWitness, NotSurjective,
                                 SubgroupGraph, TruncatedCosetAction, build_truncated_action,
                                 is_ascending_free_base, witness_series)


def load(fixtures_dir, name):
    return HnnData.from_json(json.loads((fixtures_dir / name).read_text()))


def W(text, names=("a", "b")):
    return parse_word(text, names)


class TestFolding:
    def test_rose(self):
        assert SubgroupGraph([W("a"), W("b")], 2).is_rose()
        assert SubgroupGraph([W("ab"), W("b")], 2).is_rose()
        assert not SubgroupGraph([W("a"), W("b^2")], 2).is_rose()

    def test_index(self):
        g = SubgroupGraph([W("a^2"), W("b"), W("aba^-1")], 2)
        assert g.index() == 2
        assert SubgroupGraph([W("a")], 2).index() == math.inf

    def test_order_and_redundancy(self):
        rng = seeded(4)
        for _ in range(25):
            perms = random_transitive_pair(rng, rng.randint(2, 5))
            gens = schreier_generators(perms)
            g1 = SubgroupGraph(gens, 2)
            extra = gens + [gens[0] * gens[-1], gens[-1].inverse()]
            rng.shuffle(extra)
            assert SubgroupGraph(extra, 2) == g1

    def test_membership_matches_action(self):
        rng = seeded(9)
        for _ in range(20):
            perms = random_transitive_pair(rng, rng.randint(2, 6))
            g = SubgroupGraph(schreier_generators(perms), 2)
            assert g.index() == len(perms[0])
            for _ in range(30):
                w = random_word(rng, 2, rng.randint(0, 8))
                assert g.contains(w) == (apply_word(perms, w) == 0)

    @pytest.mark.parametrize("words", [["abA", "b^3", "aab"], ["aba^-1b^-1"], ["a^2", "ab^2"]])
    def test_fold_idempotent(self, words):
        g = SubgroupGraph([W(x) for x in words], 2)
        assert SubgroupGraph(graph_generators(g), 2) == g


def graph_generators(g):
    """Loops at the base point, one per edge outside a spanning tree of the folded graph."""
    tree = {0: Word()}
    order = [0]
    used = set()
    for v in order:
        for gen in range(g.rank):
            for s, table in ((1, g.out), (-1, g.inc)):
                u = table[v].get(gen)
                if u is not None and u not in tree:
                    tree[u] = tree[v] * Word.gen(gen, s)
                    order.append(u)
                    used.add((v, gen, u) if s > 0 else (u, gen, v))
    return [tree[v] * Word.gen(gen) * tree[u].inverse()
            for v, gen, u in g.edges() if (v, gen, u) not in used]


class TestAscending:
    def test_fixtures(self, fixtures_dir):
        assert is_ascending_free_base(load(fixtures_dir, "hnn_ascending.json")) is AscendingStatus.ASCENDING
        assert is_ascending_free_base(load(fixtures_dir, "hnn_index2.json")) is AscendingStatus.NOT_ASCENDING

    def test_unknown_with_relators(self):
        h = HnnData.from_json({"base": {"gens": ["a", "b"], "rels": ["abAB"]},
                               "assoc": ["a", "b"], "images": ["b", "a"]})
        assert is_ascending_free_base(h) is AscendingStatus.UNKNOWN

    def test_presentation(self, fixtures_dir):
        p = load(fixtures_dir, "hnn_index2.json").presentation()
        assert p.generators == ("a", "t")
        assert p.relators[0] == W("taaTA", ("a", "t"))

    def test_validation(self):
        with pytest.raises(ValueError):
            HnnData.from_json({"base": {"gens": ["a"], "rels": []}, "assoc": ["a"], "images": []})


class TestWitness:
    def test_index_two(self, fixtures_dir):
        c = build_truncated_action(load(fixtures_dir, "hnn_index2.json"), 3)
        assert c.X == ["1", "a"] and not c.truncated
        w = witness_series(c)
        assert w and w.check(c)
        assert w.terms[0] == {0: 1, 1: -1}

    def test_ascending_has_no_witness(self, fixtures_dir):
        c = build_truncated_action(load(fixtures_dir, "hnn_ascending.json"))
        assert c.X == ["1"]
        assert witness_series(c) is NoWitness

    def test_infinite_index_truncated(self):
        h = HnnData.from_json({"base": {"gens": ["a", "b"], "rels": []}, "assoc": ["a"], "images": ["b"]})
        c = build_truncated_action(h, 2)
        assert c.truncated
        w = witness_series(c)
        assert w.truncated and w.check(c)

    def test_swap(self):
        c = TruncatedCosetAction(["p", "q"], ["B"], [0, 0], [1, 0], depth=4)
        w = witness_series(c)
        assert [f for f in w.terms] == [{0: 1, 1: -1}, {1: 1, 0: -1}] * 2 + [{0: 1, 1: -1}]
        assert w.check(c)

    def test_not_surjective(self):
        c = TruncatedCosetAction(["p"], ["B", "C"], [0], [0], depth=1)
        with pytest.raises(NotSurjective):
            witness_series(c)

    def test_check_rejects_bad_series(self):
        c = TruncatedCosetAction(["p", "q"], ["B"], [0, 0], [1, 0], depth=1)
        from novikov_torsion.hnn import WitnessSeries
        assert not WitnessSeries([{0: 1}]).check(c)
        assert not WitnessSeries([{}]).check(c)
