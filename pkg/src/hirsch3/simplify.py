"""Reduction of three-generator presentations to a commutator standard form.

The presentations handled here have generators a, t, u, two conjugation
relators t a^m t^-1 a^-n and u a^p u^-1 a^-q, one relator equating the
commutator [u, t] with a product of conjugates of a, and optionally some
redundant relators that are themselves products of conjugates of a.
`standardize` collapses such a presentation to the five integers
(m, n, p, q, c), where c is the exponent with [u, t] = a^c.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .families import MetabelianH31
from .rationals import mult_rank, prime_factors
from .words import Presentation, Word, format_presentation


class SimplifyError(ValueError):
    """Input presentation falls outside the accepted fragment."""


class SolvabilityError(SimplifyError):
    """Recovered Baumslag-Solitar parameters admit a nonsolvable subgroup."""


GENS = ("a", "t", "u")

_COMMUTATOR_UT = Word.of((("u", 1), ("t", 1), ("u", -1), ("t", -1)))


def exponent_law(m: int, n: int, p: int, q: int, L: int):
    """Exponent table for conjugates of a within the window [-L, L]^2.

    Returns (N, table) where N = (mnpq)^L and table maps (i, j) to the
    integer e(i, j) = N * (n/m)^i * (q/p)^j.
    """
    _check_pair(m, n)
    _check_pair(p, q)
    if L < 0:
        raise SimplifyError("window size must be nonnegative")
    N = (m * n * p * q) ** L
    r1 = Fraction(n, m)
    r2 = Fraction(q, p)
    table: dict[tuple[int, int], int] = {}
    for i in range(-L, L + 1):
        for j in range(-L, L + 1):
            e = N * r1**i * r2**j
            if e.denominator != 1:
                raise SimplifyError(f"exponent e({i},{j}) is not an integer")
            table[(i, j)] = int(e)
    return N, table


def _check_pair(x: int, y: int) -> None:
    if x == 0 or y == 0:
        raise SimplifyError("conjugation exponents must be nonzero")
    if gcd(x, y) != 1:
        raise SimplifyError(f"conjugation exponents {x}, {y} are not coprime")


@dataclass(frozen=True)
class ConjugateAtom:
    """The element b_{i,j}^k where b_{i,j} = t^i u^j a u^-j t^-i."""

    i: int
    j: int
    exponent: int

    def word(self) -> Word:
        return Word.of(
            (
                ("t", self.i),
                ("u", self.j),
                ("a", self.exponent),
                ("u", -self.j),
                ("t", -self.i),
            )
        )


def atom_product_word(atoms: list[ConjugateAtom]) -> Word:
    w = Word.identity()
    for atom in atoms:
        w = w * atom.word()
    return w


def atom_decomposition(w: Word) -> list[ConjugateAtom] | None:
    """Parse a reduced word as a product of conjugate atoms.

    Shells open with t letters, then u letters; nuclei are a-syllables.
    Adjacent atoms may share shell letters after free reduction, so the
    scan tracks the open t and u counts instead of matching brackets.
    Returns None when the word lies outside the fragment.
    """
    ts = 0
    us = 0
    atoms: list[ConjugateAtom] = []
    for sym, exp in w.syllables:
        if sym == "a":
            atoms.append(ConjugateAtom(ts, us, exp))
        elif sym == "u":
            us += exp
        elif sym == "t":
            if us != 0:
                return None
            ts += exp
        else:
            return None
    if ts != 0 or us != 0:
        return None
    return atoms


def _ratio_weight(atoms: list[ConjugateAtom], r1: Fraction, r2: Fraction) -> Fraction:
    total = Fraction(0)
    for atom in atoms:
        total += atom.exponent * r1**atom.i * r2**atom.j
    return total


@dataclass(frozen=True)
class StandardForm:
    """Presentation data < a, t, u | t a^m t^-1 = a^n, u a^p u^-1 = a^q, [u,t] = a^c >."""

    m: int
    n: int
    p: int
    q: int
    c: int

    def __post_init__(self) -> None:
        _check_pair(self.m, self.n)
        _check_pair(self.p, self.q)
        if self.m < 0 or self.p < 0:
            raise SimplifyError("left conjugation exponents are normalized positive")

    def presentation(self) -> Presentation:
        rel_t = Word.of((("t", 1), ("a", self.m), ("t", -1), ("a", -self.n)))
        rel_u = Word.of((("u", 1), ("a", self.p), ("u", -1), ("a", -self.q)))
        rel_c = _COMMUTATOR_UT * Word.gen("a", -self.c)
        return Presentation(GENS, (rel_t, rel_u, rel_c))

    def text(self) -> str:
        return format_presentation(self.presentation())


def _conjugation_data(r: Word) -> tuple[str, int, int] | None:
    """Match s a^mu s^-1 a^nu (s one of t, u), up to rotation and direction.

    Returns (s, m, n) for the relation s a^m s^-1 = a^n with m > 0, or None.
    """
    syl = list(r.syllables)
    if len(syl) != 4:
        return None
    if syl[0][0] == "a":
        syl = syl[1:] + syl[:1]
    (s1, e1), (a1, mu), (s2, e2), (a2, nu) = syl
    if a1 != "a" or a2 != "a" or s1 != s2 or s1 not in ("t", "u"):
        return None
    if e1 + e2 != 0 or abs(e1) != 1:
        return None
    if e1 == -1:
        mu, nu = -nu, -mu
    m, n = mu, -nu
    if m < 0:
        m, n = -m, -n
    if gcd(m, n) != 1:
        return None
    return s1, m, n


def standardize(pres: Presentation) -> StandardForm:
    """Collapse an accepted presentation to its StandardForm.

    The commutator relator [u,t] C^-1 contributes, for each atom b_{i,j}^k
    of C, the term k * e(i,j); the total divided by N = (mnpq)^L is the
    commutator exponent c and must be an integer.  Redundant relators must
    be atom products of total exponent zero and are dropped.
    """
    if set(pres.generators) != set(GENS):
        raise SimplifyError("expected exactly the generators a, t, u")

    conj: dict[str, tuple[int, int]] = {}
    rest: list[Word] = []
    for r in pres.relators:
        data = _conjugation_data(r)
        if data is not None and data[0] not in conj:
            conj[data[0]] = (data[1], data[2])
        else:
            rest.append(r)
    if "t" not in conj:
        raise SimplifyError("missing conjugation relator for t")
    if "u" not in conj:
        raise SimplifyError("missing conjugation relator for u")
    m, n = conj["t"]
    p, q = conj["u"]
    r1 = Fraction(n, m)
    r2 = Fraction(q, p)

    commutator_atoms: list[ConjugateAtom] | None = None
    all_atoms: list[ConjugateAtom] = []
    for r in rest:
        if r.exponent_sum("t") != 0 or r.exponent_sum("u") != 0:
            raise SimplifyError("relator has nonzero weight in t or u")
        direct = atom_decomposition(r)
        if direct is not None:
            if _ratio_weight(direct, r1, r2) != 0:
                raise SimplifyError(
                    "redundant relator has nonzero total exponent"
                )
            all_atoms.extend(direct)
            continue
        as_comm = atom_decomposition(r.inv() * _COMMUTATOR_UT)
        if as_comm is None:
            raise SimplifyError(
                "relator is not a product of conjugate atoms (out of fragment)"
            )
        if commutator_atoms is not None:
            raise SimplifyError("multiple commutator relators")
        commutator_atoms = as_comm
        all_atoms.extend(as_comm)
    if commutator_atoms is None:
        raise SimplifyError("missing commutator relator")

    L = max((max(abs(a.i), abs(a.j)) for a in all_atoms), default=0)
    N, table = exponent_law(m, n, p, q, L)
    total = sum(a.exponent * table[(a.i, a.j)] for a in commutator_atoms)
    c = Fraction(total, N)
    if c.denominator != 1:
        raise SimplifyError("commutator exponent is not an integer")

    if m != 1 and abs(n) != 1:
        raise SolvabilityError(
            f"parameters ({m},{n}) present a nonsolvable Baumslag-Solitar subgroup"
        )
    return StandardForm(m, n, p, q, int(c))


def expand_standard_form(
    sf: StandardForm,
    obfuscators: int = 0,
    rng: random.Random | None = None,
    window: int = 2,
) -> Presentation:
    """Regenerate an a,t,u-presentation from a StandardForm.

    With obfuscators > 0, appends that many redundant relators, each a
    two-atom product of total exponent zero, and may thicken the
    commutator's right-hand side by a zero-weight atom pair.
    """
    r1 = Fraction(sf.n, sf.m)
    r2 = Fraction(sf.q, sf.p)
    c_atoms = [ConjugateAtom(0, 0, sf.c)]
    extras: list[Word] = []
    if obfuscators:
        if rng is None:
            rng = random.Random(0)
        if rng.random() < 0.5:
            c_atoms.extend(_zero_pair(rng, r1, r2, window))
        for _ in range(obfuscators):
            extras.append(atom_product_word(_zero_pair(rng, r1, r2, window)))

    rel_t = Word.of((("t", 1), ("a", sf.m), ("t", -1), ("a", -sf.n)))
    rel_u = Word.of((("u", 1), ("a", sf.p), ("u", -1), ("a", -sf.q)))
    rel_c = _COMMUTATOR_UT * atom_product_word(c_atoms).inv()
    return Presentation(GENS, (rel_t, rel_u, rel_c) + tuple(extras))


def _zero_pair(
    rng: random.Random, r1: Fraction, r2: Fraction, window: int
) -> list[ConjugateAtom]:
    """Two atoms whose ratio-weighted exponents cancel exactly."""
    while True:
        i1, j1, i2, j2 = (rng.randint(-window, window) for _ in range(4))
        if (i1, j1) != (i2, j2):
            break
    ratio = (r1**i2 * r2**j2) / (r1**i1 * r2**j1)
    w = rng.randint(1, 2) * rng.choice((-1, 1))
    return [
        ConjugateAtom(i1, j1, w * ratio.numerator),
        ConjugateAtom(i2, j2, -w * ratio.denominator),
    ]


# --- change of basis for the acting Z^2 ------------------------------------


def _pair_of_ratio(r: Fraction) -> tuple[int, int]:
    return r.denominator, r.numerator


def _normalized(r1: Fraction, r2: Fraction) -> bool:
    m, n = _pair_of_ratio(r1)
    p, q = _pair_of_ratio(r2)
    if m % p != 0 or n % q != 0:
        return False
    fresh = set(prime_factors(m * n)) - set(prime_factors(p * q))
    return bool(fresh)


def _rank_two(r1: Fraction, r2: Fraction) -> bool:
    # Multiplicative independence: no nonzero (x, y) with r1^x r2^y = 1.
    rank, _ = mult_rank([r1, r2])
    return rank == 2


def normalize_basis(m: int, n: int, p: int, q: int):
    """Change basis of the acting Z^2 so p' | m', q' | n' with a fresh prime.

    Returns (m', n', p', q', change) where change rows express the new
    basis in the old one: t' = t^A u^B, u' = t^C u^D with AD - BC = +-1.
    Tries the identity, then shears t -> t u^s, then small general basis
    changes each followed by a shear scan.
    """
    _check_pair(m, n)
    _check_pair(p, q)
    r1 = Fraction(n, m)
    r2 = Fraction(q, p)
    if not _rank_two(r1, r2):
        raise SimplifyError("conjugation ratios are multiplicatively dependent")

    for base in _basis_candidates():
        (A, B), (C, D) = base
        s1 = r1**A * r2**B
        s2 = r1**C * r2**D
        shear = _shear_scan(s1, s2)
        if shear is None:
            continue
        s, t1 = shear
        change = ((A + s * C, B + s * D), (C, D))
        mp, np_ = _pair_of_ratio(t1)
        pp, qp = _pair_of_ratio(s2)
        return mp, np_, pp, qp, change
    raise SimplifyError("no small basis change normalizes these ratios")


def _shear_scan(r1: Fraction, r2: Fraction, bound: int = 64):
    """Smallest s (by |s|, positive first) with t -> t u^s normalized."""
    for s in _signed_range(bound):
        t1 = r1 * r2**s
        if _normalized(t1, r2):
            return s, t1
    return None


def _signed_range(bound: int):
    yield 0
    for k in range(1, bound + 1):
        yield k
        yield -k


def _basis_candidates(limit: int = 3):
    yield ((1, 0), (0, 1))
    seen = {((1, 0), (0, 1))}
    for size in range(1, limit + 1):
        span = range(-size, size + 1)
        for A in span:
            for B in span:
                for C in span:
                    for D in span:
                        if A * D - B * C not in (1, -1):
                            continue
                        key = ((A, B), (C, D))
                        if key in seen or max(abs(A), abs(B), abs(C), abs(D)) != size:
                            continue
                        seen.add(key)
                        yield key


def standard_form_to_descriptor(sf: StandardForm) -> MetabelianH31:
    """Descriptor of the same group: the twist e satisfies [u,t] = a^{e n/m}."""
    return MetabelianH31(sf.m, sf.n, sf.p, sf.q, Fraction(sf.c * sf.m, sf.n))
