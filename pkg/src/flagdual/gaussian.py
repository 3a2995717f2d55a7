"""Exact factorization of Gaussian rationals over Z[i].

Every nonzero Gaussian integer factors uniquely (up to units 1, i, -1, -i)
into Gaussian primes.  We normalize each prime within its associate class
to the representative in the closed first quadrant, a > 0, b >= 0, which
exists and is unique (the four associates have arguments differing by
pi/2).  The unit shed by the normalization accumulates into a power of i.

Rational primes split in Z[i] the usual way: 2 ramifies as -i (1+i)^2,
p = 1 mod 4 splits into a conjugate pair, p = 3 mod 4 stays inert.  The
integer factorizations of the norms are delegated to sympy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from sympy import factorint
from sympy.ntheory.residue_ntheory import sqrt_mod

from .errors import Unsupported
from .scalars import exactify, is_exact

# Gaussian integers are bare (a, b) int pairs throughout this module.


def _gi_mul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gi_norm(x):
    return x[0] * x[0] + x[1] * x[1]


def _gi_divmod(x, y):
    """Rounded division making Z[i] a Euclidean domain."""
    n = _gi_norm(y)
    cr = x[0] * y[0] + x[1] * y[1]
    ci = x[1] * y[0] - x[0] * y[1]
    qr = (2 * cr + n) // (2 * n)
    qi = (2 * ci + n) // (2 * n)
    q = (qr, qi)
    return q, (x[0] - (q[0] * y[0] - q[1] * y[1]),
               x[1] - (q[0] * y[1] + q[1] * y[0]))


def _gi_divexact(x, y):
    q, r = _gi_divmod(x, y)
    if r != (0, 0):
        return None
    return q


def _gi_gcd(x, y):
    while y != (0, 0):
        _, r = _gi_divmod(x, y)
        x, y = y, r
    return x


_UNITS = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}


def normalize_prime(p):
    """Return (first-quadrant associate, k) with p = i^k * associate."""
    for k in range(4):
        if p[0] > 0 and p[1] >= 0:
            return p, k % 4
        p = (p[1], -p[0])  # multiply by -i
    raise ValueError("zero is not normalizable")


@dataclass(frozen=True)
class GaussianFactorization:
    """unit i^unit_pow times the product of primes**exponents."""

    unit_pow: int
    factors: tuple  # ((a, b), exponent) pairs, primes normalized & sorted

    def recompose(self):
        z = (1, 0)
        for p, e in self.factors:
            for _ in range(e):
                z = _gi_mul(z, p)
        for _ in range(self.unit_pow % 4):
            z = _gi_mul(z, (0, 1))
        return z

    def exponent_map(self):
        return dict(self.factors)

    def __str__(self):
        parts = [f"i^{self.unit_pow % 4}"] if self.unit_pow % 4 else []
        for (a, b), e in self.factors:
            s = f"({a}{'+' if b >= 0 else '-'}{abs(b)}i)"
            parts.append(s if e == 1 else f"{s}^{e}")
        return " * ".join(parts) if parts else "1"


def _prime_key(p):
    return (_gi_norm(p), p[0], p[1])


def factor_gauss_int(z) -> GaussianFactorization:
    """Factor a nonzero Gaussian integer (a, b) over Z[i]."""
    if z == (0, 0):
        raise ZeroDivisionError("cannot factor zero")
    unit = 0
    found = {}
    n = _gi_norm(z)
    for p, e in factorint(n).items():
        if p == 2:
            pi = (1, 1)
            k = e  # v_(1+i)(z) equals the exponent of 2 in the norm
            for _ in range(k):
                z = _gi_divexact(z, pi)
            if k:
                found[pi] = found.get(pi, 0) + k
        elif p % 4 == 3:
            k = e // 2  # inert: norm exponent is twice the Z[i] exponent
            for _ in range(k):
                z = _gi_divexact(z, (p, 0))
            if k:
                found[(p, 0)] = found.get((p, 0), 0) + k
        else:
            s = int(sqrt_mod(-1, p))
            pi = _gi_gcd((p, 0), (s, 1))
            for cand in (pi, (pi[0], -pi[1])):
                k = 0
                q = _gi_divexact(z, cand)
                while q is not None:
                    z, k = q, k + 1
                    q = _gi_divexact(z, cand)
                if k:
                    norm_p, u = normalize_prime(cand)
                    unit = (unit + u * k) % 4
                    found[norm_p] = found.get(norm_p, 0) + k
    if z not in _UNITS:
        raise ArithmeticError(f"factorization left non-unit remainder {z}")
    unit = (unit + _UNITS[z]) % 4
    # shed units from normalizing 1+i and inert primes (already normalized)
    factors = tuple(sorted(found.items(), key=lambda kv: _prime_key(kv[0])))
    return GaussianFactorization(unit, factors)


def factor_gaussian(q):
    """Split an exact scalar into numerator/denominator factorizations.

    Returns (GaussianFactorization of the Gaussian-integer numerator,
    GaussianFactorization of the positive rational-integer denominator);
    their quotient recomposes to the input.
    """
    if not is_exact(q):
        raise Unsupported("factor_gaussian requires the exact backend")
    q = exactify(q)
    if q.is_zero():
        raise ZeroDivisionError("cannot factor zero")
    den = q.re.denominator * q.im.denominator // math.gcd(
        q.re.denominator, q.im.denominator)
    num = (int(q.re * den), int(q.im * den))
    return factor_gauss_int(num), factor_gauss_int((den, 0))


def exponent_vector(q) -> dict:
    """Merged prime -> exponent map of an exact scalar (units dropped)."""
    fnum, fden = factor_gaussian(q)
    vec = dict(fnum.factors)
    for p, e in fden.factors:
        vec[p] = vec.get(p, 0) - e
        if vec[p] == 0:
            del vec[p]
    return vec
