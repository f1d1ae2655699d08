"""Tests for the presentation simplifier."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hirsch3.families import meta_identity, meta_of_word
from hirsch3.simplify import (
    ConjugateAtom,
    SimplifyError,
    SolvabilityError,
    StandardForm,
    atom_decomposition,
    atom_product_word,
    expand_standard_form,
    exponent_law,
    normalize_basis,
    standard_form_to_descriptor,
    standardize,
)
from hirsch3.words import Presentation, Word, parse_presentation


def comm_ut() -> Word:
    return Word.of((("u", 1), ("t", 1), ("u", -1), ("t", -1)))


def pres_with(m, n, p, q, *rest: Word) -> Presentation:
    rel_t = Word.of((("t", 1), ("a", m), ("t", -1), ("a", -n)))
    rel_u = Word.of((("u", 1), ("a", p), ("u", -1), ("a", -q)))
    return Presentation(("a", "t", "u"), (rel_t, rel_u) + rest)


# --- exponent tables --------------------------------------------------------


def test_exponent_table_small_window():
    N, table = exponent_law(1, 2, 1, 3, 1)
    assert N == 6
    assert table[(1, 0)] == 12
    assert table[(-1, -1)] == 1
    assert table[(0, 0)] == N
    assert len(table) == 9


def test_exponent_table_trivial_window():
    assert exponent_law(1, 2, 1, 3, 0) == (1, {(0, 0): 1})


def test_exponent_table_recurrence():
    m, n, p, q, L = 2, 3, 1, 5, 2
    N, table = exponent_law(m, n, p, q, L)
    assert N == (m * n * p * q) ** L
    assert table[(0, 0)] == N
    for (i, j), e in table.items():
        if (i + 1, j) in table:
            assert Fraction(table[(i + 1, j)], e) == Fraction(n, m)
        if (i, j + 1) in table:
            assert Fraction(table[(i, j + 1)], e) == Fraction(q, p)


def test_exponent_table_rejects_bad_parameters():
    with pytest.raises(SimplifyError):
        exponent_law(2, 4, 1, 3, 1)
    with pytest.raises(SimplifyError):
        exponent_law(0, 1, 1, 3, 1)
    with pytest.raises(SimplifyError):
        exponent_law(1, 2, 1, 3, -1)


# --- atom words -------------------------------------------------------------


def test_atom_scan_inverts_products():
    rng = random.Random(7)
    for _ in range(200):
        atoms = [
            ConjugateAtom(rng.randint(-2, 2), rng.randint(-2, 2), rng.randint(-3, 3))
            for _ in range(rng.randint(0, 5))
        ]
        word = atom_product_word(atoms)
        back = atom_decomposition(word)
        assert back is not None
        totals: dict[tuple[int, int], int] = {}
        for a in atoms:
            totals[(a.i, a.j)] = totals.get((a.i, a.j), 0) + a.exponent
        back_totals: dict[tuple[int, int], int] = {}
        for a in back:
            back_totals[(a.i, a.j)] = back_totals.get((a.i, a.j), 0) + a.exponent
        assert {k: v for k, v in totals.items() if v} == {
            k: v for k, v in back_totals.items() if v
        }


def test_atom_scan_shares_shells():
    word = atom_product_word([ConjugateAtom(1, 0, 2), ConjugateAtom(1, 1, 3)])
    assert word.syllables == (
        ("t", 1),
        ("a", 2),
        ("u", 1),
        ("a", 3),
        ("u", -1),
        ("t", -1),
    )
    assert atom_decomposition(word) == [
        ConjugateAtom(1, 0, 2),
        ConjugateAtom(1, 1, 3),
    ]


def test_atom_scan_rejects_crossed_shells():
    crossed = Word.of((("u", 1), ("t", 1), ("a", 1), ("t", -1), ("u", -1)))
    assert atom_decomposition(crossed) is None
    assert atom_decomposition(Word.of((("t", 1), ("a", 1)))) is None
    assert atom_decomposition(Word.of((("s", 1), ("a", 1), ("s", -1)))) is None


# --- standardize ------------------------------------------------------------


def test_standardize_recovers_plain_form():
    sf = StandardForm(1, 2, 1, 3, 1)
    assert standardize(sf.presentation()) == sf
    assert standardize(parse_presentation(sf.text())) == sf


def test_standard_form_text_is_stable():
    sf = StandardForm(1, 2, 1, 3, 1)
    assert sf.text() == "< a, t, u | t a t^-1 a^-2, u a u^-1 a^-3, u t u^-1 t^-1 a^-1 >"


def test_standardize_weighs_commutator_atoms():
    c_word = atom_product_word([ConjugateAtom(1, 0, 1), ConjugateAtom(0, 0, -2)])
    pres = pres_with(1, 2, 1, 3, comm_ut() * c_word.inv())
    assert standardize(pres) == StandardForm(1, 2, 1, 3, 0)


def test_standardize_drops_zero_weight_relator():
    c_word = atom_product_word([ConjugateAtom(1, 0, 1), ConjugateAtom(0, 0, -2)])
    extra = atom_product_word([ConjugateAtom(1, 1, 1), ConjugateAtom(0, 0, -6)])
    pres = pres_with(1, 2, 1, 3, comm_ut() * c_word.inv(), extra)
    assert standardize(pres) == StandardForm(1, 2, 1, 3, 0)


def test_standardize_rejects_nonzero_extra():
    extra = atom_product_word([ConjugateAtom(1, 0, 1)])
    pres = pres_with(1, 2, 1, 3, comm_ut(), extra)
    with pytest.raises(SimplifyError, match="nonzero total exponent"):
        standardize(pres)


def test_standardize_rejects_weighted_relator():
    pres = pres_with(1, 2, 1, 3, comm_ut(), Word.of((("t", 2), ("a", 1))))
    with pytest.raises(SimplifyError, match="weight"):
        standardize(pres)


def test_standardize_rejects_crossed_shells():
    crossed = Word.of(
        (("u", 1), ("t", 1), ("a", 1), ("t", -1), ("u", -1), ("a", -1))
    )
    pres = pres_with(1, 2, 1, 3, comm_ut(), crossed)
    with pytest.raises(SimplifyError, match="fragment"):
        standardize(pres)


def test_standardize_rejects_fractional_commutator_exponent():
    c_word = atom_product_word([ConjugateAtom(-1, 0, 1)])
    pres = pres_with(1, 2, 1, 3, comm_ut() * c_word.inv())
    with pytest.raises(SimplifyError, match="integer"):
        standardize(pres)


def test_standardize_solvability_post_check():
    pres = pres_with(2, 3, 1, 5, comm_ut())
    with pytest.raises(SolvabilityError):
        standardize(pres)


def test_standardize_requires_single_commutator():
    with pytest.raises(SimplifyError, match="missing commutator"):
        standardize(pres_with(1, 2, 1, 3))
    two = pres_with(
        1, 2, 1, 3, comm_ut() * Word.gen("a", -1), comm_ut() * Word.gen("a", -2)
    )
    with pytest.raises(SimplifyError, match="multiple commutator"):
        standardize(two)


def test_standardize_requires_both_conjugation_relators():
    rel_t = Word.of((("t", 1), ("a", 1), ("t", -1), ("a", -2)))
    pres = Presentation(("a", "t", "u"), (rel_t, comm_ut()))
    with pytest.raises(SimplifyError, match="conjugation relator for u"):
        standardize(pres)


def test_standardize_routes_duplicate_conjugation_to_extras():
    dup = Word.of((("t", 1), ("a", 1), ("t", -1), ("a", -2)))
    pres = pres_with(1, 2, 1, 3, comm_ut(), dup)
    assert standardize(pres) == StandardForm(1, 2, 1, 3, 0)


def _random_standard_form(rng: random.Random) -> StandardForm:
    if rng.random() < 0.5:
        m = 1
        n = rng.choice([2, 3, 4, 5, 6]) * rng.choice((-1, 1))
    else:
        m = rng.choice([2, 3, 4, 5])
        n = rng.choice((-1, 1))
    while True:
        p = rng.randint(1, 5)
        q = rng.randint(1, 5) * rng.choice((-1, 1))
        from math import gcd

        if gcd(p, q) == 1:
            break
    return StandardForm(m, n, p, q, rng.randint(-4, 4))


def test_round_trip_with_obfuscation():
    rng = random.Random(20260819)
    for _ in range(100):
        sf = _random_standard_form(rng)
        pres = expand_standard_form(sf, obfuscators=rng.randint(0, 3), rng=rng)
        assert standardize(pres) == sf


def test_descriptor_feed_kills_input_relators():
    rng = random.Random(11)
    for _ in range(25):
        sf = _random_standard_form(rng)
        desc = standard_form_to_descriptor(sf)
        pres = expand_standard_form(sf, obfuscators=rng.randint(0, 3), rng=rng)
        for rel in pres.relators:
            assert meta_of_word(desc, rel) == meta_identity()


# --- basis normalization ----------------------------------------------------


def test_normalize_basis_shear_example():
    assert normalize_basis(2, 3, 4, 5) == (8, 15, 4, 5, ((1, 1), (0, 1)))


def test_normalize_basis_small_ratios():
    assert normalize_basis(1, 2, 1, 3) == (1, 6, 1, 3, ((1, 1), (0, 1)))


def test_normalize_basis_identity_when_normalized():
    assert normalize_basis(1, 6, 1, 3) == (1, 6, 1, 3, ((1, 0), (0, 1)))


def _check_normalized_output(m, n, p, q, result):
    m2, n2, p2, q2, change = result
    (A, B), (C, D) = change
    assert A * D - B * C in (1, -1)
    r1 = Fraction(n, m)
    r2 = Fraction(q, p)
    assert Fraction(n2, m2) == r1**A * r2**B
    assert Fraction(q2, p2) == r1**C * r2**D
    assert m2 % p2 == 0
    assert n2 % q2 == 0
    from hirsch3.rationals import prime_factors

    assert set(prime_factors(m2 * n2)) - set(prime_factors(p2 * q2))


def test_normalize_basis_needs_general_change():
    result = normalize_basis(1, 6, 3, 2)
    _check_normalized_output(1, 6, 3, 2, result)
    assert result[4] != ((1, 0), (0, 1))


def test_normalize_basis_rank_error():
    with pytest.raises(SimplifyError, match="dependent"):
        normalize_basis(1, 2, 1, 2)


def test_normalize_basis_random_postconditions():
    rng = random.Random(3)
    from math import gcd

    tried = 0
    while tried < 50:
        m, p = rng.randint(1, 6), rng.randint(1, 6)
        n = rng.randint(1, 9) * rng.choice((-1, 1))
        q = rng.randint(1, 9) * rng.choice((-1, 1))
        if gcd(m, n) != 1 or gcd(p, q) != 1:
            continue
        try:
            result = normalize_basis(m, n, p, q)
        except SimplifyError:
            from hirsch3.rationals import mult_rank

            rank, _ = mult_rank([Fraction(n, m), Fraction(q, p)])
            assert rank < 2
            tried += 1
            continue
        _check_normalized_output(m, n, p, q, result)
        tried += 1
