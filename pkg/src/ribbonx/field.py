"""Exact scalars in the cyclotomic field Q(zeta_N).

Scalars are :class:`CycloScalar` values from the selected kernel backend.
The default level is 8, which contains i = z^2 and sqrt(2) = z + z^7.
"""

import re
from fractions import Fraction

from ._backend import core

CycloScalar = core.CycloScalar
DivisionByZero = core.DivisionByZero
LevelMismatch = core.LevelMismatch
format_scalar = core.format_scalar
level_table = core.level_table

DEFAULT_LEVEL = 8


class NotRepresentable(ValueError):
    """The requested square root does not lie in the field."""


class NonDivisorLevel(ValueError):
    """Embedding between levels that do not divide each other."""


class ScalarParseError(ValueError):
    """Malformed scalar text."""


def phi(level):
    """Degree of Q(zeta_level) over Q."""
    return level_table(level)[0]


def zero(level=DEFAULT_LEVEL):
    return CycloScalar.from_parts(level, (), 1)


def one(level=DEFAULT_LEVEL):
    return CycloScalar.from_parts(level, (1,), 1)


def zeta(level=DEFAULT_LEVEL, k=1):
    """The root of unity zeta_level^k."""
    k %= level
    return CycloScalar(level, [0] * k + [1])


def scalar(value, level=DEFAULT_LEVEL):
    """Coerce an int, Fraction, scalar text or CycloScalar to a scalar of the level."""
    if isinstance(value, CycloScalar):
        if value.level != level:
            raise LevelMismatch(f"levels {level} and {value.level} differ")
        return value
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, int):
        return CycloScalar.from_parts(level, (value,), 1)
    if isinstance(value, Fraction):
        return CycloScalar.from_parts(level, (value.numerator,), value.denominator)
    if isinstance(value, str):
        return parse_scalar(value, level)
    raise TypeError(f"cannot convert {type(value).__name__} to a scalar")


def imag_unit(level=DEFAULT_LEVEL):
    """i = zeta^(level/4); needs 4 | level."""
    if level % 4:
        raise NotRepresentable(f"i is not in Q(zeta_{level})")
    return zeta(level, level // 4)


def sqrt2(level=DEFAULT_LEVEL):
    """sqrt(2) = zeta_8 + zeta_8^7 embedded at the level; needs 8 | level."""
    if level % 8:
        raise NotRepresentable(f"sqrt(2) is not handled at level {level}")
    step = level // 8
    return zeta(level, step) + zeta(level, 7 * step)


SQRT2 = sqrt2(8)
I = imag_unit(8)

_TERM = re.compile(
    r"^(?:(?P<coef>\d+(?:/\d+)?)(?:\*(?P<z1>z(?:\^(?P<e1>\d+))?))?|(?P<z2>z(?:\^(?P<e2>\d+))?))$"
)


def parse_scalar(text, level=DEFAULT_LEVEL):
    """Parse ``a/b`` or ``c0 + c1*z + c2*z^2 ...`` into a scalar of the level."""
    s = str(text).replace(" ", "")
    if not s:
        raise ScalarParseError("empty scalar text")
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"[+-][^+-]+", s)
    if "".join(pieces) != s:
        raise ScalarParseError(f"malformed scalar {text!r}")
    coeffs = {}
    for piece in pieces:
        sign = -1 if piece[0] == "-" else 1
        m = _TERM.match(piece[1:])
        if not m:
            raise ScalarParseError(f"malformed term {piece!r} in {text!r}")
        if m.group("coef") is not None:
            c = Fraction(m.group("coef"))
            if m.group("z1"):
                e = int(m.group("e1") or 1)
            else:
                e = 0
        else:
            c = Fraction(1)
            e = int(m.group("e2") or 1)
        if c.denominator == 0:
            raise ScalarParseError(f"zero denominator in {text!r}")
        coeffs[e] = coeffs.get(e, 0) + sign * c
    top = max(coeffs)
    dense = [coeffs.get(e, 0) for e in range(top + 1)]
    # z^level == 1, so fold exponents before reducing modulo the cyclotomic polynomial
    folded = [Fraction(0)] * level
    for e, c in enumerate(dense):
        folded[e % level] += c
    return CycloScalar(level, folded)


def galois(s, k):
    """Apply the field automorphism z -> z^k (k coprime to the level)."""
    level = s.level
    out = [Fraction(0)] * level
    for e, c in enumerate(s.coeffs):
        if c:
            out[(e * k) % level] += c
    return CycloScalar(level, out)


def conjugate(s):
    """Complex conjugate, z -> z^-1."""
    return galois(s, -1)


def embed(s, target):
    """Map s from Q(zeta_N) into Q(zeta_M) for N | M via zeta_N -> zeta_M^(M/N)."""
    n = s.level
    if target % n:
        raise NonDivisorLevel(f"level {n} does not divide {target}")
    step = target // n
    out = [Fraction(0)] * target
    for e, c in enumerate(s.coeffs):
        if c:
            out[e * step] += c
    return CycloScalar(target, out)


def project(s, target):
    """Inverse of :func:`embed` on its image; raises NotRepresentable off the image."""
    m = s.level
    if m % target:
        raise NonDivisorLevel(f"level {target} does not divide {m}")
    d = phi(target)
    # columns are embeddings of the power basis of the smaller field
    cols = [embed(zeta(target, k), m).coeffs for k in range(d)]
    rows = [[cols[k][r] for k in range(d)] + [s.coeffs[r]] for r in range(phi(m))]
    sol = _rational_solve(rows, d)
    if sol is None:
        raise NotRepresentable(f"{s} does not lie in Q(zeta_{target})")
    return CycloScalar(target, sol)


def _rational_solve(rows, n):
    """Solve an augmented rational system exactly; None when inconsistent."""
    rows = [list(r) for r in rows]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / Fraction(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][n]:
            return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][n]
    return sol


def _rational_sqrt(q):
    """Exact square root of a non-negative Fraction, or None."""
    if q < 0:
        return None
    a, b = q.numerator, q.denominator
    ra, rb = _isqrt_exact(a), _isqrt_exact(b)
    if ra is None or rb is None:
        return None
    return Fraction(ra, rb)


def _isqrt_exact(n):
    from math import isqrt
    r = isqrt(n)
    return r if r * r == n else None


def monomial_form(s):
    """Return (q, k) with s = q * zeta^k, q > 0 rational, or None."""
    level = s.level
    if not s:
        return None
    for k in range(level):
        t = s * zeta(level, -k)
        if t.is_rational():
            q = t.rational()
            if q > 0:
                return q, k
    return None


def sqrt_in_field(s, allow_level_doubling=False, known_roots=None):
    """Exact square root of a monomial scalar q * zeta^k.

    Succeeds when sqrt(q) is rational and the exponent can be halved at the
    current level.  With ``allow_level_doubling`` an odd exponent is halved in
    Q(zeta_2N) and the result lives at level 2N.  ``known_roots`` maps
    rationals to chosen square roots (for example ``{2: SQRT2}``) and is only
    consulted when given.  Anything else raises NotRepresentable.
    """
    level = s.level
    if not s:
        return zero(level)
    if known_roots and s.is_rational() and s.rational() in known_roots:
        r = scalar(known_roots[s.rational()], level)
        if r * r != s:
            raise ValueError("whitelisted root does not square to its key")
        return r
    mono = monomial_form(s)
    if mono is None:
        raise NotRepresentable(f"{s} is not of the form q*zeta^k with q > 0")
    q, k = mono
    root = _rational_sqrt(q)
    if root is None:
        raise NotRepresentable(f"sqrt({q}) is irrational")
    # zeta^k = zeta^(k + level); either representative may have an even exponent
    for e in (k, k + level):
        if e % 2 == 0:
            return scalar(root, level) * zeta(level, e // 2)
    if allow_level_doubling:
        return scalar(root, 2 * level) * zeta(2 * level, k)
    raise NotRepresentable(f"zeta_{level}^{k} has no square root at level {level}")
