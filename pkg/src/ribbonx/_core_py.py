"""Exact kernels in plain Python.

This module is the fallback twin of ``_core.pyx``: same classes, same
function signatures, same results.  It holds the cyclotomic scalar type,
the sparse structure-constant contractions used by the axiom sweeps and
an incremental sparse row-reduction engine.
"""

from fractions import Fraction
from math import gcd

BACKEND = "python"

_TABLES = {}


class LevelMismatch(ValueError):
    """Two scalars of different cyclotomic levels were combined."""


class DivisionByZero(ZeroDivisionError):
    """Inversion of the zero scalar."""


def cyclotomic_coeffs(n):
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("level must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_div(poly, cyclotomic_coeffs(d))
    return poly


def _exact_div(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1] // lead
        out[i] = q
        if q:
            for j, c in enumerate(den):
                num[i + j] -= q * c
    return out


def level_table(level):
    """Return ``(phi, cyclo, red)`` for the level.

    ``red[m - phi]`` is the coefficient tuple of ``z^m mod Phi_level`` for
    ``phi <= m <= 2*phi - 2``.
    """
    tab = _TABLES.get(level)
    if tab is not None:
        return tab
    cyclo = cyclotomic_coeffs(level)
    phi = len(cyclo) - 1
    red = []
    cur = [-c for c in cyclo[:phi]]  # z^phi
    for m in range(phi, 2 * phi - 1):
        red.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(phi):
                cur[i] -= top * cyclo[i]
    tab = (phi, tuple(cyclo), tuple(red))
    _TABLES[level] = tab
    return tab


def _make(level, num, den):
    """Normalise a raw numerator list and denominator into a scalar."""
    while num and num[-1] == 0:
        num.pop()
    s = CycloScalar.__new__(CycloScalar)
    s.level = level
    if not num:
        s.num = ()
        s.den = 1
        return s
    g = gcd(den, *num)
    if den < 0:
        g = -g
    if g != 1:
        num = [x // g for x in num]
        den //= g
    s.num = tuple(num)
    s.den = den
    return s


def _poly_reduce(level, conv):
    phi, _, red = level_table(level)
    if len(conv) <= phi:
        return list(conv)
    low = list(conv[:phi])
    for m in range(phi, len(conv)):
        c = conv[m]
        if c:
            r = red[m - phi]
            for i in range(phi):
                if r[i]:
                    low[i] += c * r[i]
    return low


def _coerce(level, x):
    if isinstance(x, CycloScalar):
        if x.level != level:
            raise LevelMismatch(f"levels {level} and {x.level} differ")
        return x
    if isinstance(x, int):
        return _make(level, [x], 1)
    if isinstance(x, Fraction):
        return _make(level, [x.numerator], x.denominator)
    return NotImplemented


class CycloScalar:
    """Element of Q(zeta_level) stored as an integer polynomial over a denominator.

    ``num`` holds the integer coefficients of 1, z, z^2, ... with trailing
    zeros removed; ``den`` is positive and coprime to the numerator content.
    """

    __slots__ = ("level", "num", "den")

    def __init__(self, level, coeffs=()):
        level = int(level)
        phi, _, _ = level_table(level)
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        num = [c.numerator * (den // c.denominator) for c in fr]
        if len(num) > phi:
            num = _poly_reduce_any(level, num)
        s = _make(level, num, den)
        self.level = level
        self.num = s.num
        self.den = s.den

    @classmethod
    def from_parts(cls, level, num, den=1):
        """Build from an integer coefficient sequence (length <= phi) and denominator."""
        if den == 0:
            raise DivisionByZero("zero denominator")
        return _make(level, list(num), den)

    # -- queries ---------------------------------------------------------
    def is_zero(self):
        return not self.num

    def is_rational(self):
        return len(self.num) <= 1

    def is_one(self):
        return self.num == (1,) and self.den == 1

    def rational(self):
        """The value as a Fraction; raises ValueError when irrational."""
        if len(self.num) > 1:
            raise ValueError("scalar is not rational")
        return Fraction(self.num[0] if self.num else 0, self.den)

    @property
    def coeffs(self):
        phi = level_table(self.level)[0]
        out = [Fraction(c, self.den) for c in self.num]
        return tuple(out + [Fraction(0)] * (phi - len(out)))

    def __bool__(self):
        return bool(self.num)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _add(self, _neg(other))

    def __rsub__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _add(other, _neg(self))

    def __neg__(self):
        return _neg(self)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _mul(self, _inv(other))

    def __rtruediv__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _mul(other, _inv(self))

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base = _inv(self)
            e = -e
        result = _make(self.level, [1], 1)
        while e:
            if e & 1:
                result = _mul(result, base)
            e >>= 1
            if e:
                base = _mul(base, base)
        return result

    def inverse(self):
        return _inv(self)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycloScalar):
            return (self.level == other.level and self.num == other.num
                    and self.den == other.den)
        if isinstance(other, (int, Fraction)):
            if len(self.num) > 1:
                return False
            return Fraction(self.num[0] if self.num else 0, self.den) == other
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        if r is NotImplemented:
            return r
        return not r

    def __hash__(self):
        if len(self.num) <= 1:
            return hash(Fraction(self.num[0] if self.num else 0, self.den))
        return hash((self.level, self.num, self.den))

    def __repr__(self):
        return f"CycloScalar({self.level}, {format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)

    def __reduce__(self):
        return (CycloScalar.from_parts, (self.level, self.num, self.den))


def _poly_reduce_any(level, num):
    phi, cyclo, _ = level_table(level)
    num = list(num)
    for m in range(len(num) - 1, phi - 1, -1):
        c = num[m]
        if c:
            num[m] = 0
            for i in range(phi):
                num[m - phi + i] -= c * cyclo[i]
    return num[:phi]


def _add(a, b):
    an, bn = a.num, b.num
    if not an:
        return b
    if not bn:
        return a
    if a.den == b.den:
        if len(an) < len(bn):
            an, bn = bn, an
        out = list(an)
        for i, x in enumerate(bn):
            out[i] += x
        return _make(a.level, out, a.den)
    da, db = a.den, b.den
    n = max(len(an), len(bn))
    out = [0] * n
    for i, x in enumerate(an):
        out[i] = x * db
    for i, x in enumerate(bn):
        out[i] += x * da
    return _make(a.level, out, da * db)


def _neg(a):
    s = CycloScalar.__new__(CycloScalar)
    s.level = a.level
    s.num = tuple(-x for x in a.num)
    s.den = a.den
    return s


def _mul(a, b):
    an, bn = a.num, b.num
    if not an or not bn:
        return _make(a.level, [], 1)
    if len(an) == 1:
        c = an[0]
        return _make(a.level, [c * x for x in bn], a.den * b.den)
    if len(bn) == 1:
        c = bn[0]
        return _make(a.level, [c * x for x in an], a.den * b.den)
    conv = [0] * (len(an) + len(bn) - 1)
    for i, x in enumerate(an):
        if x:
            for j, y in enumerate(bn):
                conv[i + j] += x * y
    return _make(a.level, _poly_reduce(a.level, conv), a.den * b.den)


def _inv(a):
    if not a.num:
        raise DivisionByZero("inverse of zero scalar")
    if len(a.num) == 1:
        return _make(a.level, [a.den], a.num[0])
    phi, cyclo, _ = level_table(a.level)
    # extended Euclid over Q on (Phi, a)
    r0 = [Fraction(c) for c in cyclo]
    r1 = [Fraction(c) for c in a.num]
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while len(r1) > 1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
    c = r1[0]
    inv = [x / c * a.den for x in s1]
    d = 1
    for x in inv:
        d = d * x.denominator // gcd(d, x.denominator)
    return _make(a.level, _poly_reduce_any(a.level, [int(x * d) for x in inv]), d)


def _ptrim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _pdivmod(a, b):
    a = list(a)
    out = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        q = a[i + len(b) - 1] / lead
        out[i] = q
        if q:
            for j, c in enumerate(b):
                a[i + j] -= q * c
    rem = _ptrim(a[:len(b) - 1] or [Fraction(0)])
    return _ptrim(out), rem


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _ptrim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _ptrim(out)


def format_scalar(s):
    """Canonical text form: ``a/b`` for rationals, ``c0 + c1*z + c2*z^2`` otherwise."""
    if not s.num:
        return "0"
    parts = []
    for k, c in enumerate(s.num):
        if not c:
            continue
        q = Fraction(c, s.den)
        mag = abs(q)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = "z" if k == 1 else f"z^{k}"
        else:
            body = f"{mag}*z" if k == 1 else f"{mag}*z^{k}"
        if not parts:
            parts.append(("-" if q < 0 else "") + body)
        else:
            parts.append((" - " if q < 0 else " + ") + body)
    return "".join(parts)


# -- sparse structure-constant kernels --------------------------------------
#
# A multiplication table is a list of rows; ``mult[i][j]`` is a tuple of
# ``(k, c)`` pairs giving b_i b_j = sum c b_k.  Comultiplication entries are
# tuples of ``(j, k, c)`` triples.  Sparse vectors are dicts index -> scalar.

def _acc(out, k, v):
    t = out.get(k)
    out[k] = v if t is None else t + v


def _clean(d):
    return {k: v for k, v in d.items() if v}


def sparse_mul(mult, x, y):
    """Product of two sparse vectors under the table."""
    out = {}
    for i, a in x.items():
        row = mult[i]
        for j, b in y.items():
            ab = a * b
            for k, c in row[j]:
                _acc(out, k, ab * c)
    return _clean(out)


def sparse_tensor_mul(mult, x, y):
    """Product in the tensor square; keys are index pairs."""
    out = {}
    for (i, j), a in x.items():
        ri, rj = mult[i], mult[j]
        for (p, q), b in y.items():
            ab = a * b
            left, right = ri[p], rj[q]
            for k, c in left:
                abc = ab * c
                for l, d in right:
                    _acc(out, (k, l), abc * d)
    return _clean(out)


def sparse_combine(rows, x):
    """Linear combination sum x[i] * rows[i] of sparse vectors."""
    out = {}
    for i, a in x.items():
        for k, c in rows[i].items():
            _acc(out, k, a * c)
    return _clean(out)


def _table_vec(entries, scale, out):
    for k, c in entries:
        _acc(out, k, scale * c)


def associativity_witness(mult, left, dim):
    """First triple (i, j, k) with i in ``left`` where (b_i b_j) b_k != b_i (b_j b_k)."""
    for i in left:
        ri = mult[i]
        for j in range(dim):
            rij = ri[j]
            rj = mult[j]
            for k in range(dim):
                lhs = {}
                for m, c in rij:
                    _table_vec(mult[m][k], c, lhs)
                rhs = {}
                for m, c in rj[k]:
                    _table_vec(ri[m], c, rhs)
                if _clean(lhs) != _clean(rhs):
                    return (i, j, k)
    return None


def comult_mult_witness(mult, comult, left, dim):
    """First pair (i, j) with i in ``left`` where Delta(b_i b_j) != Delta(b_i) Delta(b_j)."""
    for i in left:
        di = comult[i]
        for j in range(dim):
            lhs = {}
            for k, c in mult[i][j]:
                for p, q, d in comult[k]:
                    _acc(lhs, (p, q), c * d)
            rhs = {}
            dj = comult[j]
            for a, b, c1 in di:
                ra, rb = mult[a], mult[b]
                for p, q, c2 in dj:
                    c12 = c1 * c2
                    right = rb[q]
                    for k, e in ra[p]:
                        ce = c12 * e
                        for l, f in right:
                            _acc(rhs, (k, l), ce * f)
            if _clean(lhs) != _clean(rhs):
                return (i, j)
    return None


def mat_mul(a, b, zero):
    """Dense product of list-of-rows matrices."""
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [zero] * n
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                for j in range(n):
                    y = brow[j]
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


class Echelon:
    """Incremental sparse reduced row echelon form.

    Rows are dicts column -> scalar.  Columns ``>= limit`` are tag columns:
    they are carried through elimination but never chosen as pivots, which
    lets callers track the combination that produced a reduced row.
    """

    def __init__(self, limit=None):
        self.limit = limit
        self.rows = {}

    @property
    def rank(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, row):
        row = dict(row)
        rows = self.rows
        for c in [c for c in row if c in rows]:
            coef = row.get(c)
            if not coef:
                continue
            for k, v in rows[c].items():
                t = row.get(k)
                nv = -(coef * v) if t is None else t - coef * v
                if nv:
                    row[k] = nv
                else:
                    del row[k]
        return row

    def _pivot_of(self, row):
        limit = self.limit
        best = None
        for c in row:
            if limit is not None and c >= limit:
                continue
            if best is None or c < best:
                best = c
        return best

    def add(self, row):
        """Insert a row; returns the reduced residue (empty-pivot residue if dependent)."""
        row = self.reduce(row)
        p = self._pivot_of(row)
        if p is None:
            return row, False
        inv = row[p].inverse()
        if not inv.is_one():
            row = {k: v * inv for k, v in row.items()}
        for q, other in self.rows.items():
            coef = other.get(p)
            if coef:
                for k, v in row.items():
                    t = other.get(k)
                    nv = -(coef * v) if t is None else t - coef * v
                    if nv:
                        other[k] = nv
                    else:
                        del other[k]
        self.rows[p] = row
        return row, True

    def nullspace(self, ncols, one):
        """Basis of the right kernel, one sparse vector per free column."""
        free_of = {}
        for p, row in self.rows.items():
            for k, v in row.items():
                if k != p and k < ncols:
                    free_of.setdefault(k, []).append((p, v))
        basis = []
        for f in range(ncols):
            if f in self.rows:
                continue
            vec = {f: one}
            for p, v in free_of.get(f, ()):
                vec[p] = -v
            basis.append(vec)
        return basis
