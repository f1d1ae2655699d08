"""Group descriptors, normal forms, and word evaluation for the supported
families of torsion-free solvable groups.

Families and their generator names:

  RankOneQ        g1, g2, ...   subgroup of (Q, +) given by rational generators
  BSbar           a, t          Z[1/mn] rtimes Z, t a t^-1 = a^(n/m)
  MetabelianH31   a, t, u       <a,t,u | t a^m t^-1 = a^n, u a^p u^-1 = a^q,
                                          u t u^-1 = t a^e>, abelianized fiber
  LatticeByZ      a, b, t       L rtimes_M Z; a, b are the standard basis of
                                Z^2 inside L, t acts by M
  AscHNNKb        x, y, s       ascending HNN extension of the Klein bottle
                                group <x,y | x y x^-1 = y^-1> along
                                phi(x) = x^e y^f, phi(y) = y^d; s g s^-1 = phi(g)
  AffineQ2        as declared   exact affine maps of Q^2

Normal-form conventions: left action t a t^-1 = a^(n/m); MetabelianH31
normal form a^x t^i u^j with t before u; HNN normal form s^-i g s^j with
g not in im(phi) whenever i, j > 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Union

from .rationals import (
    Mat2Q,
    in_localized,
    is_unit_localized,
    prime_factors,
    padic_valuation,
    radical_of,
)
from .words import Word

F = Fraction


# --- affine maps of Q^2 -----------------------------------------------------


@dataclass(frozen=True)
class AffineMap2:
    """v |-> linear v + translation, with invertible linear part."""

    linear: Mat2Q
    translation: tuple[Fraction, Fraction]

    def __post_init__(self) -> None:
        if self.linear.det() == 0:
            raise ValueError("affine map must have invertible linear part")

    @classmethod
    def identity(cls) -> "AffineMap2":
        return cls(Mat2Q.identity(), (F(0), F(0)))

    def apply(self, v: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
        w = self.linear.apply(v)
        return (w[0] + self.translation[0], w[1] + self.translation[1])


def affine_compose(f: AffineMap2, g: AffineMap2) -> AffineMap2:
    """(f o g): apply g first."""
    b = f.linear.apply(g.translation)
    return AffineMap2(
        f.linear * g.linear,
        (b[0] + f.translation[0], b[1] + f.translation[1]),
    )


def affine_inverse(f: AffineMap2) -> AffineMap2:
    inv = f.linear.inverse()
    b = inv.apply(f.translation)
    return AffineMap2(inv, (-b[0], -b[1]))


def affine_pow(f: AffineMap2, k: int) -> AffineMap2:
    base = f if k >= 0 else affine_inverse(f)
    out = AffineMap2.identity()
    for _ in range(abs(k)):
        out = affine_compose(out, base)
    return out


# --- descriptors ------------------------------------------------------------


@dataclass(frozen=True)
class RankOneQ:
    generators: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "generators", tuple(F(x) for x in self.generators))


@dataclass(frozen=True)
class BSbar:
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        if self.n == 0:
            raise ValueError("n must be nonzero")
        if gcd(self.m, self.n) != 1:
            raise ValueError("m and n must be coprime")

    @property
    def ratio(self) -> Fraction:
        return F(self.n, self.m)

    @property
    def locus(self) -> int:
        return radical_of(self.m * self.n)


@dataclass(frozen=True)
class MetabelianH31:
    m: int
    n: int
    p: int
    q: int
    e: Fraction

    def __post_init__(self) -> None:
        if self.m < 1 or self.p < 1:
            raise ValueError("m and p must be positive integers")
        if self.n == 0 or self.q == 0:
            raise ValueError("n and q must be nonzero")
        if gcd(self.m, self.n) != 1 or gcd(self.p, self.q) != 1:
            raise ValueError("(m,n) and (p,q) must be coprime pairs")
        object.__setattr__(self, "e", F(self.e))
        if not in_localized(self.e, self.locus):
            raise ValueError(f"e must lie in Z[1/{self.locus}]")

    @property
    def locus(self) -> int:
        return radical_of(abs(self.m * self.n * self.p * self.q))

    @property
    def t_ratio(self) -> Fraction:
        return F(self.n, self.m)

    @property
    def u_ratio(self) -> Fraction:
        return F(self.q, self.p)


@dataclass(frozen=True)
class LatticeByZ:
    matrix: Mat2Q

    def __post_init__(self) -> None:
        if self.matrix.det() == 0:
            raise ValueError("acting matrix must be invertible")


@dataclass(frozen=True)
class KbEndo:
    """phi(x) = x^e y^f, phi(y) = y^d on <x,y | x y x^-1 = y^-1>.

    e must be odd: x^e y^f must invert y under conjugation, and it flips the
    sign by (-1)^e.  Nonzero e and d make phi injective.
    """

    e: int
    f: int
    d: int

    def __post_init__(self) -> None:
        if self.e % 2 == 0:
            raise ValueError("e must be odd")
        if self.d == 0:
            raise ValueError("d must be nonzero")


@dataclass(frozen=True)
class AscHNNKb:
    e: int
    f: int
    d: int

    def __post_init__(self) -> None:
        KbEndo(self.e, self.f, self.d)  # validates

    @property
    def endo(self) -> KbEndo:
        return KbEndo(self.e, self.f, self.d)


@dataclass(frozen=True)
class AffineQ2:
    generators: tuple[tuple[str, AffineMap2], ...]

    def __post_init__(self) -> None:
        names = [name for name, _ in self.generators]
        if not names:
            raise ValueError("at least one generator required")
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.generators)

    def map_of(self, name: str) -> AffineMap2:
        for gen_name, gen_map in self.generators:
            if gen_name == name:
                return gen_map
        raise KeyError(name)


GroupDescriptor = Union[RankOneQ, BSbar, MetabelianH31, LatticeByZ, AscHNNKb, AffineQ2]


def family_tag(desc: GroupDescriptor) -> str:
    return type(desc).__name__


# --- BSbar ------------------------------------------------------------------


@dataclass(frozen=True)
class BSbarElem:
    u: Fraction
    k: int


def bsbar_make(desc: BSbar, u: Fraction, k: int) -> BSbarElem:
    u = F(u)
    if not in_localized(u, desc.locus):
        raise ValueError(f"coordinate {u} is not in Z[1/{desc.locus}]")
    return BSbarElem(u, k)


def bsbar_identity() -> BSbarElem:
    return BSbarElem(F(0), 0)


def bsbar_mul(desc: BSbar, g1: BSbarElem, g2: BSbarElem) -> BSbarElem:
    return BSbarElem(g1.u + desc.ratio ** g1.k * g2.u, g1.k + g2.k)


def bsbar_inv(desc: BSbar, g: BSbarElem) -> BSbarElem:
    return BSbarElem(-(desc.ratio ** -g.k) * g.u, -g.k)


def bsbar_of_word(desc: BSbar, w: Word) -> BSbarElem:
    # right-to-left prepending keeps every step O(1) exact ops
    u, k = F(0), 0
    r = desc.ratio
    for g, e in reversed(w.syllables):
        if g == "a":
            u, k = u + e, k
        elif g == "t":
            u, k = r ** e * u, k + e
        else:
            raise ValueError(f"unknown generator {g!r} (expected a, t)")
    return BSbarElem(u, k)


# --- MetabelianH31 ----------------------------------------------------------


@dataclass(frozen=True)
class MetaH31Elem:
    """Normal form a^x t^i u^j."""

    x: Fraction
    i: int
    j: int


def meta_make(desc: MetabelianH31, x: Fraction, i: int, j: int) -> MetaH31Elem:
    x = F(x)
    if not in_localized(x, desc.locus):
        raise ValueError(f"coordinate {x} is not in Z[1/{desc.locus}]")
    return MetaH31Elem(x, i, j)


def meta_identity() -> MetaH31Elem:
    return MetaH31Elem(F(0), 0, 0)


def _geom(r: Fraction, k: int) -> Fraction:
    """1 + r + ... + r^(k-1), exactly; k >= 0."""
    if r == 1:
        return F(k)
    return (r ** k - 1) / (r - 1)


def _meta_cross_const(desc: MetabelianH31, eps: int, delta: int) -> Fraction:
    # u^eps t^delta = t^delta a^c u^eps, solved from u t u^-1 = t a^e
    r1, r2, e = desc.t_ratio, desc.u_ratio, desc.e
    if eps == 1 and delta == 1:
        return e
    if eps == 1 and delta == -1:
        return -e * r1
    if eps == -1 and delta == 1:
        return -e / r2
    return e * r1 / r2


def _meta_prepend_u(desc: MetabelianH31, s: int, g: MetaH31Elem) -> MetaH31Elem:
    """u^s * g in normal form."""
    if s == 0:
        return g
    r1, r2 = desc.t_ratio, desc.u_ratio
    eps = 1 if s > 0 else -1
    x = g.x * r2 ** s
    if g.i != 0 and desc.e != 0:
        delta = 1 if g.i > 0 else -1
        c0 = _meta_cross_const(desc, eps, delta)
        # u^eps t^i = t^i a^(c0 * geom(r1^-delta, |i|)) u^eps; stacking |s|
        # u-letters multiplies by geom(r2^eps, |s|)
        crossing = c0 * _geom(r1 ** -delta, abs(g.i)) * _geom(r2 ** eps, abs(s))
        x += crossing * r1 ** g.i
    return MetaH31Elem(x, g.i, g.j + s)


def _meta_prepend_t(desc: MetabelianH31, k: int, g: MetaH31Elem) -> MetaH31Elem:
    if k == 0:
        return g
    return MetaH31Elem(g.x * desc.t_ratio ** k, g.i + k, g.j)


def _meta_prepend_a(s: Fraction, g: MetaH31Elem) -> MetaH31Elem:
    return MetaH31Elem(g.x + s, g.i, g.j)


def meta_mul(desc: MetabelianH31, g1: MetaH31Elem, g2: MetaH31Elem) -> MetaH31Elem:
    out = _meta_prepend_u(desc, g1.j, g2)
    out = _meta_prepend_t(desc, g1.i, out)
    return _meta_prepend_a(g1.x, out)


def meta_inv(desc: MetabelianH31, g: MetaH31Elem) -> MetaH31Elem:
    out = _meta_prepend_a(-g.x, meta_identity())
    out = _meta_prepend_t(desc, -g.i, out)
    return _meta_prepend_u(desc, -g.j, out)


def meta_of_word(desc: MetabelianH31, w: Word) -> MetaH31Elem:
    out = meta_identity()
    for g, e in reversed(w.syllables):
        if g == "a":
            out = _meta_prepend_a(F(e), out)
        elif g == "t":
            out = _meta_prepend_t(desc, e, out)
        elif g == "u":
            out = _meta_prepend_u(desc, e, out)
        else:
            raise ValueError(f"unknown generator {g!r} (expected a, t, u)")
    return out


# --- lattice-by-Z -----------------------------------------------------------


@dataclass(frozen=True)
class _Lattice2:
    """Full-rank sublattice of Q^2: integer rows (a, b), (0, c) over den.

    Canonical: a, c > 0, 0 <= b < c, gcd(den, a, b, c) = 1; equality of
    values is then equality of lattices.
    """

    den: int
    a: int
    b: int
    c: int

    @classmethod
    def standard(cls) -> "_Lattice2":
        return cls(1, 1, 0, 1)

    @classmethod
    def from_rows(cls, den: int, rows: Iterable[tuple[int, int]]) -> "_Lattice2":
        rows = [list(r) for r in rows if r != (0, 0)]
        # clear the first column down to one row by Euclid
        while True:
            live = [r for r in rows if r[0] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda r: abs(r[0]))
            small, big = live[0], live[1]
            qu = big[0] // small[0]
            big[0] -= qu * small[0]
            big[1] -= qu * small[1]
            rows = [r for r in rows if r != [0, 0]]
        first = next((r for r in rows if r[0] != 0), None)
        if first is None:
            raise ValueError("lattice is not full rank")
        a, b = (first[0], first[1]) if first[0] > 0 else (-first[0], -first[1])
        c = 0
        for r in rows:
            if r[0] == 0:
                c = gcd(c, abs(r[1]))
        if c == 0:
            raise ValueError("lattice is not full rank")
        b %= c
        g = gcd(gcd(den, a), gcd(b, c))
        return cls(den // g, a // g, b // g, c // g)

    def vectors(self) -> list[tuple[Fraction, Fraction]]:
        return [(F(self.a, self.den), F(self.b, self.den)), (F(0), F(self.c, self.den))]

    def solve(self, v: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
        """Coefficients (alpha, beta) with v = alpha r1 + beta r2."""
        alpha = v[0] * self.den / self.a
        beta = (v[1] * self.den - alpha * self.b) / self.c
        return alpha, beta

    def contains(self, v: tuple[Fraction, Fraction]) -> bool:
        alpha, beta = self.solve(v)
        return alpha.denominator == 1 and beta.denominator == 1

    def covolume(self) -> Fraction:
        return F(self.a * self.c, self.den * self.den)


def _lattice_sum(den: int, lats: list[list[tuple[Fraction, Fraction]]]) -> _Lattice2:
    rows = []
    for vecs in lats:
        for v in vecs:
            rows.append((int(v[0] * den), int(v[1] * den)))
    return _Lattice2.from_rows(den, rows)


def _lattice_grow(mat: Mat2Q, lat: _Lattice2) -> _Lattice2:
    """lat + M lat + M^-1 lat, canonicalized."""
    inv = mat.inverse()
    vecs = lat.vectors()
    images = [v for v in vecs]
    images += [mat.apply(v) for v in vecs]
    images += [inv.apply(v) for v in vecs]
    den = 1
    for v in images:
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
    return _lattice_sum(den, [images])


def lattice_span(mat: Mat2Q, cutoff: int) -> _Lattice2:
    """Subgroup generated by {M^k e_i : |k| <= cutoff}, exactly."""
    lat = _Lattice2.standard()
    for _ in range(cutoff):
        lat = _lattice_grow(mat, lat)
    return lat


def lattice_membership_at(mat: Mat2Q, v: tuple[Fraction, Fraction], cutoff: int) -> bool:
    """Membership in the cutoff-truncated subgroup; monotone in cutoff."""
    return lattice_span(mat, cutoff).contains(v)


def _valuation_spread(mat: Mat2Q, primes: list[int]) -> int:
    out = 1
    for p in primes:
        for m in (mat, mat.inverse()):
            for x in m.entries():
                if x != 0:
                    out = max(out, abs(padic_valuation(x.numerator, p)
                                       - padic_valuation(x.denominator, p)))
    return out


def lattice_membership(mat: Mat2Q, v: tuple[Fraction, Fraction]) -> bool:
    """Is v in the smallest M- and M^-1-invariant subgroup of Q^2 over Z^2?

    The truncations L_K ascend to L and each growth step is a function of the
    current lattice alone, so a prime whose localization stalls for one step
    is stalled forever.  We therefore iterate, answering true as soon as v
    enters, and false as soon as every prime blocking v's coefficients has
    stalled (exact).  A generous cap bounds the loop; members arrive well
    before it since denominators deepen by at least one valuation step per
    round in any still-growing direction.
    """
    det = mat.det()
    if det == 0:
        raise ValueError("acting matrix must be invertible")
    v = (F(v[0]), F(v[1]))
    bad = set(prime_factors(det.numerator)) | set(prime_factors(det.denominator))
    bad |= set(prime_factors(mat.trace().denominator))
    for x in mat.entries():
        bad |= set(prime_factors(x.denominator))
    depth = 0
    for p in bad:
        for x in v:
            depth = max(depth, padic_valuation(x.denominator, p))
    cap = 2 * depth + 2 * _valuation_spread(mat, sorted(bad)) + 8
    lat = _Lattice2.standard()
    for _ in range(cap):
        alpha, beta = lat.solve(v)
        blocked = alpha.denominator * beta.denominator
        if blocked == 1:
            return True
        nxt = _lattice_grow(mat, lat)
        index = lat.covolume() / nxt.covolume()
        if gcd(blocked, index.numerator) == 1:
            # every blocking prime has stalled, so its localization is final
            return False
        lat = nxt
    return lat.contains(v)


@dataclass(frozen=True)
class LatticeElem:
    v: tuple[Fraction, Fraction]
    k: int


def lattice_make(mat: Mat2Q, v: tuple[Fraction, Fraction], k: int) -> LatticeElem:
    v = (F(v[0]), F(v[1]))
    if not lattice_membership(mat, v):
        raise ValueError(f"({v[0]}, {v[1]}) is outside the acted-on subgroup")
    return LatticeElem(v, k)


def lattice_identity() -> LatticeElem:
    return LatticeElem((F(0), F(0)), 0)


def lattice_mul(mat: Mat2Q, g1: LatticeElem, g2: LatticeElem) -> LatticeElem:
    w = mat.pow(g1.k).apply(g2.v)
    return LatticeElem((g1.v[0] + w[0], g1.v[1] + w[1]), g1.k + g2.k)


def lattice_inv(mat: Mat2Q, g: LatticeElem) -> LatticeElem:
    w = mat.pow(-g.k).apply(g.v)
    return LatticeElem((-w[0], -w[1]), -g.k)


def lattice_of_word(mat: Mat2Q, w: Word) -> LatticeElem:
    x, y, k = F(0), F(0), 0
    powers: dict[int, Mat2Q] = {}
    for g, e in reversed(w.syllables):
        if g == "t":
            if e not in powers:
                powers[e] = mat.pow(e)
            x, y = powers[e].apply((x, y))
            k += e
        elif g == "a":
            x += e
        elif g == "b":
            y += e
        else:
            raise ValueError(f"unknown generator {g!r} (expected a, b, t)")
    return LatticeElem((x, y), k)


# --- Klein bottle group and its ascending HNN extensions --------------------


@dataclass(frozen=True)
class KbElem:
    """x^a y^b in <x, y | x y x^-1 = y^-1>."""

    a: int
    b: int


def kb_identity() -> KbElem:
    return KbElem(0, 0)


def kb_mul(g1: KbElem, g2: KbElem) -> KbElem:
    sign = -1 if g2.a % 2 else 1
    return KbElem(g1.a + g2.a, sign * g1.b + g2.b)


def kb_inv(g: KbElem) -> KbElem:
    sign = -1 if g.a % 2 else 1
    return KbElem(-g.a, -sign * g.b)


def kb_pow(g: KbElem, k: int) -> KbElem:
    base = g if k >= 0 else kb_inv(g)
    out = kb_identity()
    acc = base
    k = abs(k)
    while k:
        if k & 1:
            out = kb_mul(out, acc)
        acc = kb_mul(acc, acc)
        k >>= 1
    return out


def kb_of_word(w: Word) -> KbElem:
    out = kb_identity()
    for g, e in w.syllables:
        if g == "x":
            out = kb_mul(out, kb_pow(KbElem(1, 0), e))
        elif g == "y":
            out = kb_mul(out, KbElem(0, e))
        else:
            raise ValueError(f"unknown generator {g!r} (expected x, y)")
    return out


def kb_endo_apply(phi: KbEndo, g: KbElem) -> KbElem:
    return kb_mul(kb_pow(KbElem(phi.e, phi.f), g.a), kb_pow(KbElem(0, phi.d), g.b))


def image_membership(phi: KbEndo, g: KbElem) -> bool:
    if g.a % phi.e != 0:
        return False
    alpha = g.a // phi.e
    return (g.b - phi.f * (alpha & 1)) % phi.d == 0


def _endo_preimage(phi: KbEndo, g: KbElem) -> KbElem:
    alpha = g.a // phi.e
    return KbElem(alpha, (g.b - phi.f * (alpha & 1)) // phi.d)


@dataclass(frozen=True)
class BrittonElem:
    """s^-i g s^j, reduced: i, j > 0 only when g is outside im(phi)."""

    i: int
    g: KbElem
    j: int


def hnnkb_reduce(desc: AscHNNKb, i: int, g: KbElem, j: int) -> BrittonElem:
    phi = desc.endo
    while i > 0 and j > 0 and image_membership(phi, g):
        g = _endo_preimage(phi, g)
        i -= 1
        j -= 1
    return BrittonElem(i, g, j)


def hnnkb_identity() -> BrittonElem:
    return BrittonElem(0, kb_identity(), 0)


def _endo_iterate(phi: KbEndo, g: KbElem, k: int) -> KbElem:
    for _ in range(k):
        g = kb_endo_apply(phi, g)
    return g


def hnnkb_mul(desc: AscHNNKb, g1: BrittonElem, g2: BrittonElem) -> BrittonElem:
    phi = desc.endo
    if g1.j >= g2.i:
        shift = g1.j - g2.i
        base = kb_mul(g1.g, _endo_iterate(phi, g2.g, shift))
        return hnnkb_reduce(desc, g1.i, base, shift + g2.j)
    shift = g2.i - g1.j
    base = kb_mul(_endo_iterate(phi, g1.g, shift), g2.g)
    return hnnkb_reduce(desc, g1.i + shift, base, g2.j)


def hnnkb_inv(desc: AscHNNKb, g: BrittonElem) -> BrittonElem:
    return hnnkb_reduce(desc, g.j, kb_inv(g.g), g.i)


def hnnkb_of_word(desc: AscHNNKb, w: Word) -> BrittonElem:
    out = hnnkb_identity()
    for g, e in w.syllables:
        if g == "x":
            step = BrittonElem(0, kb_pow(KbElem(1, 0), e), 0)
        elif g == "y":
            step = BrittonElem(0, KbElem(0, e), 0)
        elif g == "s":
            step = BrittonElem(-e, kb_identity(), 0) if e < 0 else BrittonElem(0, kb_identity(), e)
        else:
            raise ValueError(f"unknown generator {g!r} (expected x, y, s)")
        out = hnnkb_mul(desc, out, step)
    return out


# --- rank-one subgroups of Q ------------------------------------------------


def rankone_of_word(desc: RankOneQ, w: Word) -> Fraction:
    out = F(0)
    for g, e in w.syllables:
        if not (g.startswith("g") and g[1:].isdigit()):
            raise ValueError(f"unknown generator {g!r} (expected g1..g{len(desc.generators)})")
        idx = int(g[1:]) - 1
        if not 0 <= idx < len(desc.generators):
            raise ValueError(f"unknown generator {g!r} (expected g1..g{len(desc.generators)})")
        out += e * desc.generators[idx]
    return out


# --- affine word evaluation -------------------------------------------------


def affine_of_word(desc: AffineQ2, w: Word) -> AffineMap2:
    out = AffineMap2.identity()
    maps = dict(desc.generators)
    for g, e in w.syllables:
        if g not in maps:
            raise ValueError(f"unknown generator {g!r}")
        out = affine_compose(out, affine_pow(maps[g], e))
    return out


# --- extension embedding ----------------------------------------------------


@dataclass(frozen=True)
class BS1nAut:
    """Automorphism of BSbar(1,n): a |-> a^c (c a unit of Z[1/n]), t |-> t a^b."""

    c: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", F(self.c))
        object.__setattr__(self, "b", F(self.b))


def bs1n_ext_to_meta(n: int, theta: BS1nAut) -> MetabelianH31:
    """Realize BSbar(1,n) rtimes_theta Z inside the three-generator family.

    The new stable letter u acts on the fiber by multiplication by c and
    twists t by a^b, which is exactly the (m=1, n, p, q, e) presentation with
    q/p = c and e = b.
    """
    if abs(n) < 2:
        raise ValueError("|n| must be at least 2")
    locus = radical_of(n)
    if theta.c == 0 or not is_unit_localized(theta.c, locus):
        raise ValueError(f"{theta.c} is not a unit of Z[1/{locus}]")
    if not in_localized(theta.b, locus):
        raise ValueError(f"{theta.b} is not in Z[1/{locus}]")
    q, p = theta.c.numerator, theta.c.denominator
    return MetabelianH31(m=1, n=n, p=p, q=q, e=theta.b)


# --- uniform interface ------------------------------------------------------


class GroupOps:
    """Uniform element algebra for one descriptor.

    Elements are the family's immutable normal forms; `of_word` evaluates a
    free word on the family's named generators.
    """

    def __init__(self, desc: GroupDescriptor) -> None:
        self.desc = desc

    @property
    def generator_names(self) -> tuple[str, ...]:
        d = self.desc
        if isinstance(d, RankOneQ):
            return tuple(f"g{i + 1}" for i in range(len(d.generators)))
        if isinstance(d, BSbar):
            return ("a", "t")
        if isinstance(d, MetabelianH31):
            return ("a", "t", "u")
        if isinstance(d, LatticeByZ):
            return ("a", "b", "t")
        if isinstance(d, AscHNNKb):
            return ("x", "y", "s")
        return d.names

    def identity(self):
        d = self.desc
        if isinstance(d, RankOneQ):
            return F(0)
        if isinstance(d, BSbar):
            return bsbar_identity()
        if isinstance(d, MetabelianH31):
            return meta_identity()
        if isinstance(d, LatticeByZ):
            return lattice_identity()
        if isinstance(d, AscHNNKb):
            return hnnkb_identity()
        return AffineMap2.identity()

    def mul(self, g1, g2):
        d = self.desc
        if isinstance(d, RankOneQ):
            return g1 + g2
        if isinstance(d, BSbar):
            return bsbar_mul(d, g1, g2)
        if isinstance(d, MetabelianH31):
            return meta_mul(d, g1, g2)
        if isinstance(d, LatticeByZ):
            return lattice_mul(d.matrix, g1, g2)
        if isinstance(d, AscHNNKb):
            return hnnkb_mul(d, g1, g2)
        return affine_compose(g1, g2)

    def inv(self, g):
        d = self.desc
        if isinstance(d, RankOneQ):
            return -g
        if isinstance(d, BSbar):
            return bsbar_inv(d, g)
        if isinstance(d, MetabelianH31):
            return meta_inv(d, g)
        if isinstance(d, LatticeByZ):
            return lattice_inv(d.matrix, g)
        if isinstance(d, AscHNNKb):
            return hnnkb_inv(d, g)
        return affine_inverse(g)

    def of_word(self, w: Word):
        d = self.desc
        if isinstance(d, RankOneQ):
            return rankone_of_word(d, w)
        if isinstance(d, BSbar):
            return bsbar_of_word(d, w)
        if isinstance(d, MetabelianH31):
            return meta_of_word(d, w)
        if isinstance(d, LatticeByZ):
            return lattice_of_word(d.matrix, w)
        if isinstance(d, AscHNNKb):
            return hnnkb_of_word(d, w)
        return affine_of_word(d, w)

    def is_identity(self, g) -> bool:
        return g == self.identity()

    def word_eq(self, w1: Word, w2: Word) -> bool:
        return self.of_word(w1) == self.of_word(w2)


def ops_for(desc: GroupDescriptor) -> GroupOps:
    return GroupOps(desc)
