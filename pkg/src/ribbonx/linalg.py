"""Exact dense and sparse linear algebra over Q(zeta_N).

Dense matrices are lists of rows of CycloScalar.  Sparse vectors are dicts
index -> scalar.  Row reduction goes through the kernel ``Echelon`` engine.
Polynomials are coefficient lists, lowest degree first.
"""

from fractions import Fraction
from functools import lru_cache

from ._backend import core
from .field import CycloScalar, one, zero

Echelon = core.Echelon


class NotInvertible(ArithmeticError):
    """A matrix or algebra element has no inverse."""


# -- dense matrices -----------------------------------------------------------

def zeros(rows, cols, level):
    z = zero(level)
    return [[z] * cols for _ in range(rows)]


def identity(n, level):
    m = zeros(n, n, level)
    o = one(level)
    for i in range(n):
        m[i][i] = o
    return m


def mat_mul(a, b, level):
    if not a:
        return []
    return core.mat_mul(a, b, zero(level))


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_is_zero(a):
    return all(not x for row in a for x in row)


def kron(a, b, level):
    """Kronecker product with row index i*rows(b) + k."""
    z = zero(level)
    rb, cb = len(b), len(b[0]) if b else 0
    out = [[z] * (len(a[0]) * cb) for _ in range(len(a) * rb)] if a else []
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if not x:
                continue
            for k in range(rb):
                brow = b[k]
                orow = out[i * rb + k]
                base = j * cb
                for l in range(cb):
                    y = brow[l]
                    if y:
                        orow[base + l] = x * y
    return out


def mat_vec(a, v, level):
    z = zero(level)
    out = []
    for row in a:
        acc = z
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def row_dict(row):
    return {j: x for j, x in enumerate(row) if x}


def rank(a):
    ech = Echelon()
    for row in a:
        ech.add(row_dict(row))
    return ech.rank


def nullspace(a, ncols, level):
    """Right kernel of a (rows given densely) as a list of dense vectors."""
    ech = Echelon()
    for row in a:
        ech.add(row_dict(row))
    z = zero(level)
    out = []
    for vec in ech.nullspace(ncols, one(level)):
        dense = [z] * ncols
        for k, v in vec.items():
            dense[k] = v
        out.append(dense)
    return out


def inverse(a, level):
    """Exact inverse; raises NotInvertible when singular."""
    n = len(a)
    ech = Echelon(limit=n)
    o = one(level)
    for i, row in enumerate(a):
        r = row_dict(row)
        r[n + i] = o
        ech.add(r)
    if ech.rank != n:
        raise NotInvertible("matrix is singular")
    out = zeros(n, n, level)
    for p, row in ech.rows.items():
        for k, v in row.items():
            if k >= n:
                out[p][k - n] = v
    return out


def is_invertible(a):
    return len(a) == (len(a[0]) if a else 0) and rank(a) == len(a)


def trace(a, level):
    acc = zero(level)
    for i, row in enumerate(a):
        acc = acc + row[i]
    return acc


def span_basis(vectors):
    """Echelon basis (sparse rows) of the span of sparse vectors."""
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech


# -- polynomials --------------------------------------------------------------

def poly_trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def poly_mul(a, b, level):
    if not a or not b:
        return []
    z = zero(level)
    out = [z] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return poly_trim(out)


def poly_pow(a, e, level):
    out = [one(level)]
    for _ in range(e):
        out = poly_mul(out, a, level)
    return out


def poly_divmod(a, b, level):
    a = poly_trim(a)
    b = poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    z = zero(level)
    q = [z] * (len(a) - len(b) + 1)
    inv = b[-1].inverse()
    a = list(a)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] = a[i + j] - c * y
    return poly_trim(q), poly_trim(a[:len(b) - 1])


def poly_monic(a):
    a = poly_trim(a)
    inv = a[-1].inverse()
    return [x * inv for x in a]


def poly_gcd(a, b, level):
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b, level)[1]
    return poly_monic(a) if a else []


def poly_eval_matrix(p, m, level):
    """p(M) by Horner's rule."""
    n = len(m)
    out = zeros(n, n, level)
    for c in reversed(poly_trim(p)):
        out = mat_mul(out, m, level)
        if c:
            for i in range(n):
                out[i][i] = out[i][i] + c
    return out


def minimal_polynomial(m, level):
    """Monic minimal polynomial of a square matrix (Krylov on its powers)."""
    n = len(m)
    ech = Echelon(limit=n * n)
    power = identity(n, level)
    o = one(level)
    for d in range(n * n + 1):
        row = {}
        for i, r in enumerate(power):
            for j, x in enumerate(r):
                if x:
                    row[i * n + j] = x
        row[n * n + d] = o
        residue, grew = ech.add(row)
        if not grew:
            # residue holds only tag columns: sum_k c_k M^k = 0
            coeffs = [zero(level)] * (d + 1)
            for k, v in residue.items():
                coeffs[k - n * n] = v
            return poly_monic(coeffs)
        power = mat_mul(power, m, level)
    raise AssertionError("Cayley-Hamilton bound exceeded")


def minimal_polynomial_of_vectors(apply, dim, start, level):
    """Monic minimal polynomial of a linear map restricted to the cyclic span of ``start``.

    ``apply`` maps a sparse vector to a sparse vector.
    """
    ech = Echelon(limit=dim)
    o = one(level)
    vec = dict(start)
    for d in range(dim + 1):
        row = dict(vec)
        row[dim + d] = o
        residue, grew = ech.add(row)
        if not grew:
            coeffs = [zero(level)] * (d + 1)
            for k, v in residue.items():
                coeffs[k - dim] = v
            return poly_monic(coeffs)
        vec = apply(vec)
    raise AssertionError("dimension bound exceeded")


# -- factorisation over Q(zeta_N) ---------------------------------------------

@lru_cache(maxsize=None)
def _sympy_field(level):
    import sympy as sp
    return sp.QQ.algebraic_field(sp.exp(2 * sp.pi * sp.I / level))


def _to_anp(s, dom):
    return dom([dom.dom.convert(Fraction(c, s.den)) for c in reversed(s.num)] or [dom.dom.zero])


def _from_anp(a, level):
    rep = a.to_list() if hasattr(a, "to_list") else a.rep
    coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(rep)]
    return CycloScalar(level, coeffs)


@lru_cache(maxsize=4096)
def _factor_cached(key, level):
    import sympy as sp
    dom = _sympy_field(level)
    coeffs = [CycloScalar.from_parts(level, num, den) for num, den in key]
    x = sp.Symbol("x")
    if all(c.is_rational() for c in coeffs):
        qpoly = sp.Poly([c.rational() for c in reversed(coeffs)], x, domain=sp.QQ)
        pieces = []
        for f, e in qpoly.factor_list()[1]:
            if f.degree() == 1:
                pieces.append((f, e))
            else:
                sub = sp.Poly(f.as_expr(), x, domain=dom).factor_list()[1]
                pieces.extend((g, e * m) for g, m in sub)
    else:
        poly = sp.Poly([_to_anp(c, dom) for c in reversed(coeffs)], x, domain=dom)
        pieces = poly.factor_list()[1]
    out = []
    for f, e in pieces:
        fk = sp.Poly(f.as_expr(), x, domain=dom) if f.domain != dom else f
        rep = [_from_anp(c, level) for c in reversed(fk.rep.to_list())]
        out.append((tuple(poly_monic(rep)), e))
    out.sort(key=lambda t: (len(t[0]), [str(c) for c in t[0]]))
    return tuple(out)


def factor_poly(p, level):
    """Irreducible factorisation over Q(zeta_level): list of (monic factor, multiplicity)."""
    p = poly_monic(p)
    if len(p) <= 1:
        return []
    key = tuple((c.num, c.den) for c in p)
    return [(list(f), e) for f, e in _factor_cached(key, level)]


def roots(p, level):
    """Roots in the field with multiplicity, plus the leftover non-linear factors."""
    found, rest = [], []
    for f, e in factor_poly(p, level):
        if len(f) == 2:
            found.append((-f[0], e))
        else:
            rest.append((f, e))
    return found, rest
