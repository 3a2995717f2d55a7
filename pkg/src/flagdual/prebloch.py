"""Formal sums over C minus {0,1}, the Bloch-Wigner dilogarithm, and the
exact wedge-square test for Bloch-group membership.

A FormalSum is an integer combination of generators in C\\{0,1}.  The two
rewriting relations [1/z] = -[z] and [1-z] = -[z] generate a six-element
orbit on generators; canonicalize_six rewrites a sum onto one chosen
representative per orbit, which kills every instance of those relations.
The five-term relation itself is not rewritten (deciding equality modulo
it is out of scope); it is available as a generator of test sums, and the
dilogarithm and the delta map both annihilate it, which is how sums are
compared in practice.

delta computes z wedge (1-z) in the wedge square of Q(i)* modulo torsion:
units are discarded and only Gaussian-prime exponent vectors are kept.
Its vanishing is a necessary condition for a class to lie in the Bloch
group (never claimed sufficient here).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BackendMismatch, OutOfDomain, Unsupported
from .gaussian import _gi_norm, exponent_vector
from .scalars import (GaussRational, exactify, is_exact, nearly_equal,
                      to_complex)

MERGE_TOL = 1e-12  # relative distance below which float generators merge


def _check_generator(g):
    if is_exact(g):
        g = exactify(g)
        if g == 0 or g == 1:
            raise OutOfDomain(f"formal-sum generator {g} lies in {{0,1}}")
        return g
    z = complex(g)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise OutOfDomain("formal-sum generator is not finite")
    if z == 0 or z == 1:
        raise OutOfDomain(f"formal-sum generator {z} lies in {{0,1}}")
    return z


def _sort_key(g):
    if isinstance(g, GaussRational):
        return (g.re.numerator, g.re.denominator,
                g.im.numerator, g.im.denominator)
    return (g.real, g.imag)


class FormalSum:
    """Integer linear combination of generators in C\\{0,1}.

    Generators are deduplicated on construction: exactly in the exact
    backend, by relative distance MERGE_TOL in float (independently
    computed coordinates produce near-duplicate generators).
    """

    __slots__ = ("terms",)

    def __init__(self, pairs=()):
        cleaned = []
        backend = None
        for g, n in pairs:
            if not isinstance(n, int):
                raise TypeError(f"coefficient {n!r} is not an integer")
            if n == 0:
                continue
            g = _check_generator(g)
            kind = isinstance(g, GaussRational)
            if backend is None:
                backend = kind
            elif backend != kind:
                raise BackendMismatch("mixed exact/float formal sum")
            cleaned.append((g, n))
        cleaned.sort(key=lambda t: _sort_key(t[0]))
        merged = []
        for g, n in cleaned:
            if merged and self._same_gen(merged[-1][0], g):
                merged[-1][1] += n
            else:
                merged.append([g, n])
        self.terms = tuple((g, n) for g, n in merged if n != 0)

    @staticmethod
    def _same_gen(a, b):
        if isinstance(a, GaussRational):
            return a == b
        return nearly_equal(a, b, MERGE_TOL)

    @classmethod
    def single(cls, g, n=1):
        return cls([(g, n)])

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __add__(self, other):
        return FormalSum(list(self.terms) + list(other.terms))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FormalSum([(g, -n) for g, n in self.terms])

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return FormalSum([(g, n * k) for g, n in self.terms])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return (self - other).is_zero()

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for g, n in self.terms:
            gs = str(g) if isinstance(g, GaussRational) else repr(g)
            coeff = "" if n == 1 else ("-" if n == -1 else f"{n}*")
            bits.append(f"{coeff}[{gs}]")
        return " + ".join(bits).replace("+ -", "- ")

    __repr__ = __str__

    def to_json(self):
        from .scalars import scalar_to_json
        return [{"coeff": n, "gen": scalar_to_json(g)} for g, n in self.terms]

    @classmethod
    def from_json(cls, data, backend="auto"):
        from .scalars import scalar_from_json
        return cls([(scalar_from_json(t["gen"], backend), int(t["coeff"]))
                    for t in data])


# -- Bloch-Wigner dilogarithm -------------------------------------------------

_PI2_6 = math.pi ** 2 / 6

# B_{2k} / (2k+1)!  for the Debye-series evaluation of Li_2
_BERNOULLI_EVEN = [
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6),
    Fraction(-3617, 510), Fraction(43867, 798), Fraction(-174611, 330),
    Fraction(854513, 138), Fraction(-236364091, 2730), Fraction(8553103, 6),
    Fraction(-23749461029, 870), Fraction(8615841276005, 14322),
]
_LI2_COEFFS = [float(b / math.factorial(2 * k + 1))
               for k, b in enumerate(_BERNOULLI_EVEN, start=1)]


def _li2_series(z: complex) -> complex:
    """Li_2 on |z| <= 1, Re z <= 1/2, via the series in u = -log(1-z)."""
    u = -cmath.log(1 - z)
    u2 = u * u
    total = u - u2 / 4
    p = u
    for c in _LI2_COEFFS:
        p *= u2
        term = c * p
        total += term
        if abs(term) < 1e-18 * (1 + abs(total)):
            break
    return total


def li2(z: complex) -> complex:
    """Dilogarithm, principal branch, reduced into the series domain."""
    z = complex(z)
    if z == 0:
        return 0j
    if z == 1:
        return complex(_PI2_6)
    pref = 0j
    sign = 1
    if abs(z) > 1:
        lz = cmath.log(-z)
        pref = -_PI2_6 - 0.5 * lz * lz
        z = 1 / z
        sign = -1
    if z.real > 0.5:
        pref += sign * (_PI2_6 - cmath.log(z) * cmath.log(1 - z))
        z = 1 - z
        sign = -sign
    return pref + sign * _li2_series(z)


def dilog_D(z) -> float:
    """Bloch-Wigner dilogarithm D, continuous on CP^1, zero on R u {inf}.

    D(z) = Im(Li_2(z)) + arg(1-z) log|z|.
    """
    z = to_complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        return 0.0
    if z.imag == 0.0 or z == 0 or z == 1:
        return 0.0
    return (li2(z).imag
            + cmath.phase(1 - z) * math.log(abs(z)))


def eval_D(s: FormalSum) -> float:
    """Linear extension of D to formal sums (canonical summation order)."""
    return math.fsum(n * dilog_D(g) for g, n in s.terms)


# -- relations ----------------------------------------------------------------

def five_term(x, y) -> FormalSum:
    """The 5-term sum [x] - [y] + [y/x] - [(1-1/x)/(1-1/y)] + [(1-x)/(1-y)].

    Every evaluation of D on it vanishes; delta kills it exactly.
    """
    for v in (x, y):
        g = exactify(v) if is_exact(v) else complex(v)
        if g == 0 or g == 1:
            raise OutOfDomain(f"five_term argument {v!r} lies in {{0,1}}")
    try:
        return FormalSum([
            (x, 1),
            (y, -1),
            (y / x, 1),
            ((1 - 1 / x) / (1 - 1 / y), -1),
            ((1 - x) / (1 - y), 1),
        ])
    except OutOfDomain as exc:
        raise OutOfDomain(f"five_term({x!r}, {y!r}) degenerates: {exc}") from exc


_ORBIT_SIGNS = (1, -1, -1, 1, 1, -1)


def six_orbit(g):
    """The orbit {z, 1/z, 1-z, 1/(1-z), 1-1/z, z/(z-1)} with signs.

    Signs track the parity of [g] relative to [z] under the relations
    [1/z] = -[z] and [1-z] = -[z].
    """
    vals = (g, 1 / g, 1 - g, 1 / (1 - g), 1 - 1 / g, g / (g - 1))
    return tuple(zip(vals, _ORBIT_SIGNS))


def _orbit_rep(orbit):
    """Deterministic representative: minimal value in a fixed total order."""
    if isinstance(orbit[0][0], GaussRational):
        key = _sort_key
    else:
        def key(v):
            return (abs(v), cmath.phase(v), v.real)
    best = min(orbit, key=lambda t: key(t[0]))
    return best


def canonicalize_six(s: FormalSum) -> FormalSum:
    """Rewrite each generator to its six-orbit representative.

    Sums equal modulo the relations [1/z] = -[z], [1-z] = -[z]
    canonicalize identically.  On the exceptional orbit {-1, 2, 1/2},
    where the two relations force 2[x] = 0, coefficients reduce mod 2.
    """
    classes = []  # [rep, coeff, is_special]

    def locate(rep, exact):
        for c in classes:
            if exact and c[0] == rep:
                return c
            if not exact and nearly_equal(c[0], rep, MERGE_TOL):
                return c
        c = [rep, 0, False]
        classes.append(c)
        return c

    for g, n in s.terms:
        exact = isinstance(g, GaussRational)
        orbit = six_orbit(g)
        rep, rep_sign = _orbit_rep(orbit)
        # a value recurring with both signs marks the exceptional orbit
        special = False
        for i in range(6):
            for j in range(i + 1, 6):
                same = (orbit[i][0] == orbit[j][0]) if exact else \
                    nearly_equal(orbit[i][0], orbit[j][0], MERGE_TOL)
                if same and orbit[i][1] != orbit[j][1]:
                    special = True
        cls = locate(rep, exact)
        # [g] occupies the +1 slot of its own orbit, so [g] = rep_sign [rep];
        # in the exceptional orbit the sign is immaterial modulo 2
        cls[1] += n if special else n * rep_sign
        cls[2] = cls[2] or special

    out = []
    for rep, coeff, special in classes:
        if special:
            coeff %= 2
        if coeff:
            out.append((rep, coeff))
    return FormalSum(out)


# -- exact delta --------------------------------------------------------------

@dataclass(frozen=True)
class WedgeElement:
    """Antisymmetric integer matrix over a basis of Gaussian primes.

    Represents an element of the wedge square of Q(i)* tensor Q with unit
    torsion discarded; the (i, j) entry is the coefficient of the wedge of
    basis primes i and j.
    """

    basis: tuple  # normalized Gaussian primes (a, b), canonically sorted
    matrix: tuple  # rows of ints, antisymmetric

    def is_zero(self) -> bool:
        return all(all(e == 0 for e in row) for row in self.matrix)

    def entries(self):
        """Nonzero upper-triangle entries as (prime, prime, coefficient)."""
        out = []
        for i, row in enumerate(self.matrix):
            for j in range(i + 1, len(row)):
                if row[j]:
                    out.append((self.basis[i], self.basis[j], row[j]))
        return out

    def __str__(self):
        ent = self.entries()
        if not ent:
            return "0"

        def pstr(p):
            return f"({p[0]}{'+' if p[1] >= 0 else '-'}{abs(p[1])}i)"

        return " + ".join(f"{c}*{pstr(p)}^{pstr(q)}" for p, q, c in ent)


def delta_exact(s: FormalSum) -> WedgeElement:
    """delta(sum n [z]) = sum n (z wedge (1-z)), computed mod torsion.

    Exact generators only.  Vanishing is necessary for the class to lie
    in the Bloch group up to torsion; it is not sufficient.
    """
    vecs = []
    for g, n in s.terms:
        if not isinstance(g, GaussRational):
            raise Unsupported("delta_exact requires exact generators")
        vecs.append((n, exponent_vector(g), exponent_vector(1 - g)))
    primes = sorted({p for _, v, u in vecs for p in (*v, *u)},
                    key=lambda p: (_gi_norm(p), p[0], p[1]))
    index = {p: i for i, p in enumerate(primes)}
    b = len(primes)
    m = [[0] * b for _ in range(b)]
    for n, v, u in vecs:
        for p, e in v.items():
            for q, f in u.items():
                i, j = index[p], index[q]
                m[i][j] += n * e * f
                m[j][i] -= n * e * f
    return WedgeElement(tuple(primes), tuple(tuple(r) for r in m))
