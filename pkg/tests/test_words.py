"""Word algebra and the presentation DSL."""

from __future__ import annotations

import random

import pytest

from hirsch3.words import (
    ParseError,
    Presentation,
    Word,
    exponent_sum,
    format_presentation,
    format_word,
    free_reduce,
    parse_presentation,
    parse_word,
    substitute,
)


def w(text: str) -> Word:
    return parse_word(text)


class TestReduce:
    def test_cancellation(self):
        assert free_reduce([("a", 1), ("a", -1)]) == Word()
        assert free_reduce([("t", 2), ("a", 0), ("t", -1)]) == Word.gen("t")
        assert free_reduce([("a", 1), ("b", 1), ("b", -1), ("a", 2)]) == Word.gen("a", 3)

    def test_idempotent_and_shrinking(self):
        rng = random.Random(5)
        for _ in range(300):
            pairs = [
                (rng.choice("abc"), rng.randint(-3, 3)) for _ in range(rng.randint(0, 12))
            ]
            once = free_reduce(pairs)
            assert free_reduce(once) == once
            assert once.length() <= sum(abs(e) for _, e in pairs)
            for (g1, _), (g2, _) in zip(once.syllables, once.syllables[1:]):
                assert g1 != g2
            assert all(e != 0 for _, e in once.syllables)


class TestAlgebra:
    def test_group_laws(self):
        rng = random.Random(6)
        for _ in range(200):
            a = Word.of((rng.choice("xyz"), rng.randint(-2, 2)) for _ in range(4))
            b = Word.of((rng.choice("xyz"), rng.randint(-2, 2)) for _ in range(4))
            assert (a * b).inv() == b.inv() * a.inv()
            assert a * a.inv() == Word()
            assert a ** 3 == a * a * a
            assert a ** -2 == a.inv() * a.inv()
            assert a ** 0 == Word()

    def test_exponent_sum(self):
        assert exponent_sum(w("t a t^-1 a^-2"), "t") == 0
        assert exponent_sum(w("[u, t]"), "u") == 0
        assert exponent_sum(w("t^3"), "a") == 0
        assert exponent_sum(w("a^2 t a^-1"), "a") == 1

    def test_exponent_sum_additive(self):
        rng = random.Random(7)
        for _ in range(200):
            a = Word.of((rng.choice("st"), rng.randint(-3, 3)) for _ in range(5))
            b = Word.of((rng.choice("st"), rng.randint(-3, 3)) for _ in range(5))
            for g in "st":
                assert (a * b).exponent_sum(g) == a.exponent_sum(g) + b.exponent_sum(g)

    def test_substitute(self):
        assert substitute(w("a t"), "a", w("b^6")) == w("b^6 t")
        assert substitute(w("a^-1"), "a", w("x y")) == w("y^-1 x^-1")
        assert substitute(w("t"), "a", w("x y")) == w("t")
        assert substitute(w("a^2"), "a", w("a^-1")) == w("a^-2")

    def test_letters(self):
        assert list(w("a^2 t^-1").letters()) == [("a", 1), ("a", 1), ("t", -1)]


class TestParsing:
    def test_basic_presentation(self):
        p = parse_presentation("<a,t | t a^2 t^-1 = a^3>")
        assert p.generators == ("a", "t")
        assert p.relators == (w("t a^2 t^-1 a^-3"),)

    def test_three_relators(self):
        p = parse_presentation(
            "<u,v,y | u y u^-1 = y^-1, v y v^-1 = v^-2 y^-1, v^2 = u^2 y>"
        )
        assert len(p.relators) == 3
        assert p.relators[0] == w("u y u^-1 y")

    def test_sugar(self):
        assert w("[x, y]") == w("x y x^-1 y^-1")
        assert w("(a t)^2") == w("a t a t")
        assert w("(a t)^-1") == w("t^-1 a^-1")
        assert w("[x, y]^2") == w("x y x^-1 y^-1 x y x^-1 y^-1")
        assert w("1") == Word()
        assert w("a 1 b") == w("a b")

    def test_whitespace_insensitive(self):
        assert parse_presentation("<a,t|t a^2t^-1=a^3>") == parse_presentation(
            "  < a , t |  t a^2 t^-1 = a^3 >  "
        )

    def test_unknown_generator(self):
        with pytest.raises(ParseError) as exc:
            parse_presentation("<a | a^2 = b>")
        assert "unknown generator" in str(exc.value)
        assert exc.value.pos == len("<a | a^2 = ")

    def test_malformed_exponent(self):
        for bad in ["<a | a^>", "<a | a^x>", "<a | a^^2>"]:
            with pytest.raises(ParseError) as exc:
                parse_presentation(bad)
            assert "exponent" in str(exc.value)

    def test_unbalanced_delimiters(self):
        for bad in ["<a | (a a>", "<a | [a, a a>", "<a | a", "a | a>"]:
            with pytest.raises(ParseError):
                parse_presentation(bad)

    def test_junk_rejected(self):
        with pytest.raises(ParseError):
            parse_presentation("<a | a @ a>")
        with pytest.raises(ParseError):
            parse_word("a 2 b")
        with pytest.raises(ParseError):
            parse_presentation("<a, a | a>")

    def test_word_generator_restriction(self):
        assert parse_word("a t", ["a", "t"]) == w("a t")
        with pytest.raises(ParseError):
            parse_word("a s", ["a", "t"])


class TestRoundTrip:
    def test_fixed_point(self):
        texts = [
            "<a,t | t a^2 t^-1 = a^3>",
            "<u,v,y | u y u^-1 = y^-1, v y v^-1 = v^-2 y^-1, v^2 = u^2 y>",
            "<a, t, u | [u, t] = a, t a t^-1 = a^2>",
            "< x | >",
        ]
        for text in texts:
            p1 = parse_presentation(text)
            printed = format_presentation(p1)
            p2 = parse_presentation(printed)
            assert p1 == p2
            assert format_presentation(p2) == printed

    def test_word_roundtrip(self):
        rng = random.Random(8)
        for _ in range(200):
            word = Word.of((rng.choice("atu"), rng.randint(-4, 4)) for _ in range(6))
            assert parse_word(format_word(word)) == word


class TestPresentationType:
    def test_validates_relators(self):
        with pytest.raises(ValueError):
            Presentation(("a",), (Word.gen("b"),))
