# cython: language_level=3
"""Compiled exact kernels.

Function-for-function twin of ``_core_py``: the cyclotomic scalar type,
sparse structure-constant contractions and sparse row reduction.
"""

from fractions import Fraction
from math import gcd

BACKEND = "compiled"

cdef dict _TABLES = {}


class LevelMismatch(ValueError):
    """Two scalars of different cyclotomic levels were combined."""


class DivisionByZero(ZeroDivisionError):
    """Inversion of the zero scalar."""


def cyclotomic_coeffs(n):
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    if n < 1:
        raise ValueError("level must be positive")
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
    """Return ``(phi, cyclo, red)`` for the level."""
    tab = _TABLES.get(level)
    if tab is not None:
        return tab
    cyclo = cyclotomic_coeffs(level)
    phi = len(cyclo) - 1
    red = []
    cur = [-c for c in cyclo[:phi]]
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


cdef CycloScalar _make(int level, list num, object den):
    cdef CycloScalar s = CycloScalar.__new__(CycloScalar)
    cdef Py_ssize_t n = len(num)
    cdef Py_ssize_t i
    while n and num[n - 1] == 0:
        n -= 1
    s.level = level
    if n == 0:
        s.num = ()
        s.den = 1
        return s
    if n != len(num):
        del num[n:]
    g = gcd(den, *num)
    if den < 0:
        g = -g
    if g != 1:
        num = [x // g for x in num]
        den = den // g
    s.num = tuple(num)
    s.den = den
    return s


cdef list _poly_reduce(int level, list conv):
    cdef tuple tab = level_table(level)
    cdef int phi = tab[0]
    cdef tuple red = tab[2]
    cdef Py_ssize_t m, i, n = len(conv)
    cdef tuple r
    if n <= phi:
        return conv
    cdef list low = conv[:phi]
    for m in range(phi, n):
        c = conv[m]
        if c:
            r = <tuple>red[m - phi]
            for i in range(phi):
                ri = r[i]
                if ri:
                    low[i] = low[i] + c * ri
    return low


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


cdef object _coerce(int level, object x):
    if isinstance(x, CycloScalar):
        if (<CycloScalar>x).level != level:
            raise LevelMismatch(f"levels {level} and {(<CycloScalar>x).level} differ")
        return x
    if isinstance(x, int):
        return _make(level, [x], 1)
    if isinstance(x, Fraction):
        return _make(level, [x.numerator], x.denominator)
    return NotImplemented


cdef class CycloScalar:
    """Element of Q(zeta_level) stored as an integer polynomial over a denominator."""

    cdef readonly int level
    cdef readonly tuple num
    cdef readonly object den

    def __init__(self, level, coeffs=()):
        level = int(level)
        phi = level_table(level)[0]
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // gcd(den, c.denominator)
        num = [c.numerator * (den // c.denominator) for c in fr]
        if len(num) > phi:
            num = _poly_reduce_any(level, num)
        cdef CycloScalar s = _make(level, num, den)
        self.level = level
        self.num = s.num
        self.den = s.den

    @classmethod
    def from_parts(cls, level, num, den=1):
        """Build from an integer coefficient sequence (length <= phi) and denominator."""
        if den == 0:
            raise DivisionByZero("zero denominator")
        return _make(level, list(num), den)

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
        return len(self.num) != 0

    def __add__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _add(self, <CycloScalar>other)

    def __radd__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _add(self, <CycloScalar>other)

    def __sub__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _add(self, _neg(<CycloScalar>other))

    def __rsub__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _add(<CycloScalar>other, _neg(self))

    def __neg__(self):
        return _neg(self)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _mul(self, <CycloScalar>other)

    def __rmul__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _mul(self, <CycloScalar>other)

    def __truediv__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _mul(self, _inv(<CycloScalar>other))

    def __rtruediv__(self, other):
        other = _coerce(self.level, other)
        if other is NotImplemented:
            return other
        return _mul(<CycloScalar>other, _inv(self))

    def __pow__(self, e, mod):
        if not isinstance(e, int):
            return NotImplemented
        cdef CycloScalar base = self
        if e < 0:
            base = _inv(self)
            e = -e
        cdef CycloScalar result = _make(self.level, [1], 1)
        while e:
            if e & 1:
                result = _mul(result, base)
            e >>= 1
            if e:
                base = _mul(base, base)
        return result

    def inverse(self):
        return _inv(self)

    def __eq__(self, other):
        cdef CycloScalar o
        if isinstance(other, CycloScalar):
            o = <CycloScalar>other
            return self.level == o.level and self.num == o.num and self.den == o.den
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
        return (_rebuild, (self.level, self.num, self.den))


def _rebuild(level, num, den):
    return _make(level, list(num), den)


cdef CycloScalar _add(CycloScalar a, CycloScalar b):
    cdef tuple an = a.num, bn = b.num
    cdef Py_ssize_t i
    cdef list out
    if not an:
        return b
    if not bn:
        return a
    if a.den == b.den:
        if len(an) < len(bn):
            an, bn = bn, an
        out = list(an)
        for i in range(len(bn)):
            out[i] = out[i] + bn[i]
        return _make(a.level, out, a.den)
    da = a.den
    db = b.den
    cdef Py_ssize_t n = max(len(an), len(bn))
    out = [0] * n
    for i in range(len(an)):
        out[i] = an[i] * db
    for i in range(len(bn)):
        out[i] = out[i] + bn[i] * da
    return _make(a.level, out, da * db)


cdef CycloScalar _neg(CycloScalar a):
    cdef CycloScalar s = CycloScalar.__new__(CycloScalar)
    s.level = a.level
    s.num = tuple([-x for x in a.num])
    s.den = a.den
    return s


cdef CycloScalar _mul(CycloScalar a, CycloScalar b):
    cdef tuple an = a.num, bn = b.num
    cdef Py_ssize_t i, j, la = len(an), lb = len(bn)
    if la == 0 or lb == 0:
        return _make(a.level, [], 1)
    if la == 1:
        c = an[0]
        return _make(a.level, [c * x for x in bn], a.den * b.den)
    if lb == 1:
        c = bn[0]
        return _make(a.level, [c * x for x in an], a.den * b.den)
    cdef list conv = [0] * (la + lb - 1)
    for i in range(la):
        x = an[i]
        if x:
            for j in range(lb):
                conv[i + j] = conv[i + j] + x * bn[j]
    return _make(a.level, _poly_reduce(a.level, conv), a.den * b.den)


cdef CycloScalar _inv(CycloScalar a):
    if not a.num:
        raise DivisionByZero("inverse of zero scalar")
    if len(a.num) == 1:
        return _make(a.level, [a.den], a.num[0])
    phi, cyclo, _ = level_table(a.level)
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

cdef inline void _acc(dict out, object k, CycloScalar v):
    t = out.get(k)
    if t is None:
        out[k] = v
    else:
        out[k] = _add(<CycloScalar>t, v)


cdef dict _clean(dict d):
    return {k: v for k, v in d.items() if (<CycloScalar>v).num}


def sparse_mul(list mult, dict x, dict y):
    """Product of two sparse vectors under the table."""
    cdef dict out = {}
    cdef list row
    cdef CycloScalar a, b, ab
    for i, a in x.items():
        row = <list>mult[i]
        for j, b in y.items():
            ab = _mul(a, b)
            for k, c in <tuple>row[j]:
                _acc(out, k, _mul(ab, <CycloScalar>c))
    return _clean(out)


def sparse_tensor_mul(list mult, dict x, dict y):
    """Product in the tensor square; keys are index pairs."""
    cdef dict out = {}
    cdef list ri, rj
    cdef tuple left, right
    cdef CycloScalar a, b, ab, abc
    for key, a in x.items():
        i, j = key
        ri = <list>mult[i]
        rj = <list>mult[j]
        for key2, b in y.items():
            p, q = key2
            ab = _mul(a, b)
            left = <tuple>ri[p]
            right = <tuple>rj[q]
            for k, c in left:
                abc = _mul(ab, <CycloScalar>c)
                for l, d in right:
                    _acc(out, (k, l), _mul(abc, <CycloScalar>d))
    return _clean(out)


def sparse_combine(rows, dict x):
    """Linear combination sum x[i] * rows[i] of sparse vectors."""
    cdef dict out = {}
    cdef CycloScalar a
    for i, a in x.items():
        for k, c in (<dict>rows[i]).items():
            _acc(out, k, _mul(a, <CycloScalar>c))
    return _clean(out)


cdef inline void _table_vec(tuple entries, CycloScalar scale, dict out):
    for k, c in entries:
        _acc(out, k, _mul(scale, <CycloScalar>c))


def associativity_witness(list mult, left, int dim):
    """First triple (i, j, k) with i in ``left`` where (b_i b_j) b_k != b_i (b_j b_k)."""
    cdef int j, k
    cdef list ri, rj
    cdef tuple rij
    cdef dict lhs, rhs
    for i in left:
        ri = <list>mult[i]
        for j in range(dim):
            rij = <tuple>ri[j]
            rj = <list>mult[j]
            for k in range(dim):
                lhs = {}
                for m, c in rij:
                    _table_vec(<tuple>(<list>mult[m])[k], <CycloScalar>c, lhs)
                rhs = {}
                for m, c in <tuple>rj[k]:
                    _table_vec(<tuple>ri[m], <CycloScalar>c, rhs)
                if _clean(lhs) != _clean(rhs):
                    return (i, j, k)
    return None


def comult_mult_witness(list mult, list comult, left, int dim):
    """First pair (i, j) with i in ``left`` where Delta(b_i b_j) != Delta(b_i) Delta(b_j)."""
    cdef int j
    cdef dict lhs, rhs
    cdef tuple di, dj, right
    cdef list ra, rb
    cdef CycloScalar c12, ce
    for i in left:
        di = <tuple>comult[i]
        for j in range(dim):
            lhs = {}
            for k, c in <tuple>(<list>mult[i])[j]:
                for p, q, d in <tuple>comult[k]:
                    _acc(lhs, (p, q), _mul(<CycloScalar>c, <CycloScalar>d))
            rhs = {}
            dj = <tuple>comult[j]
            for a, b, c1 in di:
                ra = <list>mult[a]
                rb = <list>mult[b]
                for p, q, c2 in dj:
                    c12 = _mul(<CycloScalar>c1, <CycloScalar>c2)
                    right = <tuple>rb[q]
                    for k, e in <tuple>ra[p]:
                        ce = _mul(c12, <CycloScalar>e)
                        for l, f in right:
                            _acc(rhs, (k, l), _mul(ce, <CycloScalar>f))
            if _clean(lhs) != _clean(rhs):
                return (i, j)
    return None


def mat_mul(list a, list b, zero):
    """Dense product of list-of-rows matrices."""
    cdef Py_ssize_t n = len(b[0]) if b else 0
    cdef Py_ssize_t j, k
    cdef list out = [], acc, brow, row
    for row in a:
        acc = [zero] * n
        for k in range(len(row)):
            x = row[k]
            if (<CycloScalar>x).num:
                brow = <list>b[k]
                for j in range(n):
                    y = brow[j]
                    if (<CycloScalar>y).num:
                        acc[j] = _add(<CycloScalar>acc[j], _mul(<CycloScalar>x, <CycloScalar>y))
        out.append(acc)
    return out


cdef void _axpy_into(dict row, CycloScalar coef, dict src):
    cdef CycloScalar nv
    for k, v in src.items():
        t = row.get(k)
        if t is None:
            nv = _neg(_mul(coef, <CycloScalar>v))
        else:
            nv = _add(<CycloScalar>t, _neg(_mul(coef, <CycloScalar>v)))
        if nv.num:
            row[k] = nv
        else:
            del row[k]


cdef class Echelon:
    """Incremental sparse reduced row echelon form (see ``_core_py.Echelon``)."""

    cdef public object limit
    cdef public dict rows

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
        cdef dict r = dict(row)
        cdef dict rows = self.rows
        for c in [c for c in r if c in rows]:
            coef = r.get(c)
            if coef is None or not (<CycloScalar>coef).num:
                continue
            _axpy_into(r, <CycloScalar>coef, <dict>rows[c])
        return r

    def _pivot_of(self, dict row):
        limit = self.limit
        best = None
        for c in row:
            if limit is not None and c >= limit:
                continue
            if best is None or c < best:
                best = c
        return best

    def add(self, row):
        """Insert a row; returns the reduced residue and whether the rank grew."""
        cdef dict r = self.reduce(row)
        cdef dict other
        p = self._pivot_of(r)
        if p is None:
            return r, False
        cdef CycloScalar inv = _inv(<CycloScalar>r[p])
        if not (inv.num == (1,) and inv.den == 1):
            r = {k: _mul(<CycloScalar>v, inv) for k, v in r.items()}
        for q, other in self.rows.items():
            coef = other.get(p)
            if coef is not None and (<CycloScalar>coef).num:
                _axpy_into(other, <CycloScalar>coef, r)
        self.rows[p] = r
        return r, True

    def nullspace(self, ncols, one):
        """Basis of the right kernel, one sparse vector per free column."""
        free_of = {}
        for p, row in self.rows.items():
            for k, v in (<dict>row).items():
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
