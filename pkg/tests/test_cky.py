import math
import random

import pytest

from oracles import enumerate_derivations, random_grammar
from readgauge.cky import Parser, cky_kbest
from readgauge.errors import NoParse
from readgauge.grammar import Rule, make_grammar


def rule(lhs, rhs, prob):
    return Rule(lhs=lhs, rhs=tuple(rhs), prob=prob, log_prob=math.log(prob))


@pytest.fixture
def ab_grammar():
    return make_grammar([
        rule("S", ["A", "A"], 1.0),
        rule("A", ["a"], 0.6),
        rule("A", ["b"], 0.4),
    ])


@pytest.fixture
def catalan_grammar():
    return make_grammar([
        rule("S", ["S", "S"], 0.3),
        rule("S", ["a"], 0.7),
    ])


class TestKbestExamples:
    def test_single_derivation(self, ab_grammar):
        kbest = cky_kbest(ab_grammar, ["a", "b"], 5)
        assert len(kbest.parses) == 1
        assert kbest.parses[0].log_prob == pytest.approx(math.log(0.24), abs=1e-12)
        assert kbest.parses[0].serialize() == "(S (A a) (A b))"

    def test_two_branchings_equal_probability(self, catalan_grammar):
        kbest = cky_kbest(catalan_grammar, ["a", "a", "a"], 10)
        assert len(kbest.parses) == 2
        expected = math.log(0.3**2 * 0.7**3)
        for p in kbest.parses:
            assert p.log_prob == pytest.approx(expected, abs=1e-12)
        serials = [p.serialize() for p in kbest.parses]
        # ties broken by serialized-tree order
        assert serials == sorted(serials)
        assert set(serials) == {
            "(S (S (S a) (S a)) (S a))",
            "(S (S a) (S (S a) (S a)))",
        }

    def test_oov_token_raises(self, ab_grammar):
        with pytest.raises(NoParse) as err:
            cky_kbest(ab_grammar, ["z"], 1)
        assert "z" in str(err.value)

    def test_no_derivation_raises(self, ab_grammar):
        # odd-length sentences can't be derived from S -> A A
        with pytest.raises(NoParse):
            cky_kbest(ab_grammar, ["a"], 1)

    def test_k_truncates(self, catalan_grammar):
        kbest = cky_kbest(catalan_grammar, ["a", "a", "a"], 1)
        assert len(kbest.parses) == 1

    def test_requested_k_recorded(self, catalan_grammar):
        kbest = cky_kbest(catalan_grammar, ["a", "a"], 7)
        assert kbest.requested_k == 7
        assert len(kbest.parses) == 1


class TestInvariants:
    def test_non_increasing_log_probs(self):
        rng = random.Random(11)
        for _ in range(20):
            g = random_grammar(rng)
            parser = Parser(g)
            terms = sorted(g.terminals)
            for _ in range(5):
                n = rng.randint(1, 6)
                toks = [rng.choice(terms) for _ in range(n)]
                try:
                    kbest = parser.kbest(toks, 20)
                except NoParse:
                    continue
                lps = [p.log_prob for p in kbest.parses]
                assert all(a >= b - 1e-12 for a, b in zip(lps, lps[1:]))

    def test_total_mass_at_most_one(self):
        rng = random.Random(23)
        for _ in range(10):
            g = random_grammar(rng)
            parser = Parser(g)
            terms = sorted(g.terminals)
            for _ in range(5):
                n = rng.randint(1, 5)
                toks = [rng.choice(terms) for _ in range(n)]
                try:
                    kbest = parser.kbest(toks, 1000)
                except NoParse:
                    continue
                assert sum(math.exp(p.log_prob) for p in kbest.parses) <= 1 + 1e-9

    def test_matches_enumeration_oracle(self):
        # A smaller version of the acceptance criterion, run on every commit.
        rng = random.Random(5)
        checked = 0
        for _ in range(10):
            g = random_grammar(rng)
            parser = Parser(g)
            terms = sorted(g.terminals)
            for _ in range(8):
                n = rng.randint(1, 6)
                toks = [rng.choice(terms) for _ in range(n)]
                expected = enumerate_derivations(g, toks, cap=1000)
                if not expected:
                    with pytest.raises(NoParse):
                        parser.kbest(toks, 1000)
                    continue
                kbest = parser.kbest(toks, 1000)
                got = [(p.log_prob, p.serialize()) for p in kbest.parses]
                assert len(got) == len(expected)
                for (glp, gser), (elp, eser) in zip(got, expected):
                    assert gser == eser
                    assert glp == pytest.approx(elp, abs=1e-9)
                checked += 1
        assert checked > 10

    def test_parse_trees_yield_tokens(self, catalan_grammar):
        toks = ["a", "a", "a", "a"]
        kbest = cky_kbest(catalan_grammar, toks, 100)

        def leaves(t):
            if isinstance(t, str):
                return [t]
            out = []
            for c in t.children:
                out.extend(leaves(c))
            return out

        for p in kbest.parses:
            assert leaves(p) == toks

    def test_debinarized_output(self):
        # Long RHS round-trips through right-factoring without @ labels.
        g = make_grammar([
            rule("S", ["A", "B", "C"], 1.0),
            rule("A", ["a"], 1.0),
            rule("B", ["b"], 1.0),
            rule("C", ["c"], 1.0),
        ])
        kbest = cky_kbest(g, ["a", "b", "c"], 5)
        assert kbest.parses[0].serialize() == "(S (A a) (B b) (C c))"
        assert kbest.parses[0].log_prob == pytest.approx(0.0)


class TestParserReuse:
    def test_parser_is_reusable_and_deterministic(self, catalan_grammar):
        parser = Parser(catalan_grammar)
        first = [p.serialize() for p in parser.kbest(["a"] * 4, 10).parses]
        second = [p.serialize() for p in parser.kbest(["a"] * 4, 10).parses]
        assert first == second
        assert len(first) == 5  # Catalan(3)
