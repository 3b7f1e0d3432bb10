"""Finite-dimensional Hopf algebras given by structure constants.

A :class:`HopfData` stores its structure maps sparsely on a fixed basis
b_0..b_{d-1}:

* ``mult_table[i][j]``: tuple of ``(k, c)`` with b_i b_j = sum c b_k
* ``comult_table[i]``: tuple of ``(j, k, c)`` with Delta(b_i) = sum c b_j (x) b_k
* ``unit_vec``: sparse coefficients of 1
* ``counit_vec``: dense list of epsilon(b_i)
* ``antipode_cols[i]``: sparse coefficients of S(b_i)

Elements of H and H (x) H are sparse dicts wrapped in :class:`Element` and
:class:`TensorElement`.  Verifiers return :class:`~ribbonx.report.Report`.
"""

import os

from ._backend import core
from .errors import (DimensionMismatch, FieldTooSmall, InvalidSpec, MissingRMatrix,
                     NonInvertibleAntipode, NotInvertible, ParentMismatch, SizeLimitExceeded)
from .field import DEFAULT_LEVEL, CycloScalar, format_scalar, one, scalar, zero
from .linalg import Echelon, factor_poly, inverse as mat_inverse
from .report import Report

EXHAUSTIVE_LIMIT = 64
DEFAULT_MAX_DIM = 512


def max_dim():
    """Dimension cap from RIBBONX_MAX_DIM (default 512)."""
    raw = os.environ.get("RIBBONX_MAX_DIM")
    if not raw:
        return DEFAULT_MAX_DIM
    try:
        return int(raw)
    except ValueError:
        raise InvalidSpec(f"RIBBONX_MAX_DIM must be an integer, got {raw!r}") from None


def check_size(dim, what="algebra"):
    cap = max_dim()
    if dim > cap:
        raise SizeLimitExceeded(f"{what} of dimension {dim} exceeds RIBBONX_MAX_DIM={cap}")


# -- sparse helpers ----------------------------------------------------------

def _acc(out, k, v):
    t = out.get(k)
    out[k] = v if t is None else t + v


def _clean(d):
    return {k: v for k, v in d.items() if v}


def _vadd(x, y, sign=1):
    out = dict(x)
    for k, v in y.items():
        _acc(out, k, v if sign > 0 else -v)
    return _clean(out)


def _vscale(c, x):
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


def _fmt_vec(H, vec, pair=False):
    if not vec:
        return "0"
    parts = []
    for key in sorted(vec):
        c = format_scalar(vec[key])
        if pair:
            lab = "(x)".join(H.labels[i] for i in key)
        else:
            lab = H.labels[key]
        parts.append(f"({c})*{lab}")
    return " + ".join(parts)


# -- algebra container ------------------------------------------------------

class HopfData:
    """Structure constants of a finite-dimensional Hopf algebra over Q(zeta_level)."""

    def __init__(self, dim, labels, mult_table, unit_vec, comult_table, counit_vec,
                 antipode_cols, level=DEFAULT_LEVEL, r_matrix=None, ribbon=None,
                 name=None, generators=None, catalog=False):
        if len(labels) != dim:
            raise DimensionMismatch("label count differs from dimension")
        check_size(dim, name or "algebra")
        self.dim = dim
        self.labels = list(labels)
        self.level = level
        self.mult_table = list(mult_table)
        self.unit_vec = _clean(unit_vec)
        self.comult_table = list(comult_table)
        self.counit_vec = list(counit_vec)
        self.antipode_cols = [_clean(c) for c in antipode_cols]
        self._r = None if r_matrix is None else _clean(r_matrix)
        self._ribbon = None if ribbon is None else _clean(ribbon)
        self.name = name or f"H{dim}"
        self.generators = list(generators) if generators is not None else None
        self.catalog = catalog
        self._cache = {}

    # constructors ------------------------------------------------------
    @classmethod
    def from_sparse(cls, dim, labels, mult, unit, comult, counit, antipode,
                    level=DEFAULT_LEVEL, **kw):
        """Build from sparse maps.

        ``mult`` maps (i, j) to a list of (k, c); ``comult`` maps i to a list of
        (j, k, c); ``antipode`` is either a dense matrix whose column i is S(b_i)
        or a list of sparse dicts.  Scalars may be ints, Fractions or text.
        """
        z = [[()] * dim for _ in range(dim)]
        for (i, j), entries in mult.items():
            z[i][j] = tuple(_merge_pairs(entries, level))
        cm = [()] * dim
        for i, entries in comult.items():
            acc = {}
            for j, k, c in entries:
                _acc(acc, (j, k), scalar(c, level))
            cm[i] = tuple((j, k, c) for (j, k), c in sorted(_clean(acc).items()))
        unit_vec = {i: scalar(c, level) for i, c in _dense_or_sparse(unit, dim)}
        counit_vec = [zero(level)] * dim
        for i, c in _dense_or_sparse(counit, dim):
            counit_vec[i] = scalar(c, level)
        if antipode and isinstance(antipode[0], dict):
            cols = [{k: scalar(v, level) for k, v in col.items()} for col in antipode]
        else:
            cols = [{} for _ in range(dim)]
            for r, row in enumerate(antipode):
                for c, x in enumerate(row):
                    x = scalar(x, level)
                    if x:
                        cols[c][r] = x
        rm = kw.pop("r_matrix", None)
        if rm is not None and not isinstance(rm, dict):
            rm = {(i, j): scalar(c, level) for i, j, c in rm}
        elif rm is not None:
            rm = {k: scalar(v, level) for k, v in rm.items()}
        rb = kw.pop("ribbon", None)
        if rb is not None:
            rb = {i: scalar(c, level) for i, c in _dense_or_sparse(rb, dim)}
        return cls(dim, labels, z, unit_vec, cm, counit_vec, cols, level=level,
                   r_matrix=rm, ribbon=rb, **kw)

    def with_structure(self, r_matrix=None, ribbon=None, name=None, keep_ribbon=False,
                       catalog=None):
        """Copy sharing the structure constants with a new R-matrix and/or ribbon element."""
        if isinstance(r_matrix, TensorElement):
            r_matrix = r_matrix.terms
        if isinstance(ribbon, Element):
            ribbon = ribbon.vec
        if ribbon is None and keep_ribbon:
            ribbon = self._ribbon
        out = HopfData(self.dim, self.labels, self.mult_table, self.unit_vec,
                       self.comult_table, self.counit_vec, self.antipode_cols,
                       level=self.level, r_matrix=r_matrix, ribbon=ribbon,
                       name=name or self.name, generators=self.generators,
                       catalog=self.catalog if catalog is None else catalog)
        return out

    # accessors ----------------------------------------------------------
    @property
    def basis_labels(self):
        return self.labels

    @property
    def mult(self):
        return {(i, j): list(e) for i, row in enumerate(self.mult_table)
                for j, e in enumerate(row) if e}

    @property
    def comult(self):
        return {i: list(e) for i, e in enumerate(self.comult_table) if e}

    @property
    def unit(self):
        return Element(self, self.unit_vec)

    @property
    def counit(self):
        return list(self.counit_vec)

    @property
    def antipode(self):
        """Dense matrix whose column i is S(b_i)."""
        z = zero(self.level)
        m = [[z] * self.dim for _ in range(self.dim)]
        for i, col in enumerate(self.antipode_cols):
            for k, v in col.items():
                m[k][i] = v
        return m

    @property
    def r_matrix(self):
        return None if self._r is None else TensorElement(self, self._r)

    @property
    def ribbon(self):
        return None if self._ribbon is None else Element(self, self._ribbon)

    def has_r(self):
        return self._r is not None

    def require_r(self):
        if self._r is None:
            raise MissingRMatrix(f"{self.name} has no R-matrix")
        return self._r

    def basis(self, i):
        return Element(self, {i: one(self.level)})

    def element(self, vec):
        if isinstance(vec, dict):
            return Element(self, {k: scalar(v, self.level) for k, v in vec.items()})
        return Element(self, {i: scalar(v, self.level) for i, v in enumerate(vec)})

    def tensor(self, terms):
        return TensorElement(self, {k: scalar(v, self.level) for k, v in terms.items()})

    def one(self):
        return Element(self, self.unit_vec)

    def zero(self):
        return Element(self, {})

    def index(self, label):
        return self.labels.index(label)

    def __repr__(self):
        return f"<HopfData {self.name} dim={self.dim} level={self.level}>"

    # raw sparse operations on dicts -------------------------------------
    def _m(self, x, y):
        return core.sparse_mul(self.mult_table, x, y)

    def _tm(self, x, y):
        return core.sparse_tensor_mul(self.mult_table, x, y)

    def _delta(self, x):
        out = {}
        for i, c in x.items():
            for j, k, d in self.comult_table[i]:
                _acc(out, (j, k), c * d)
        return _clean(out)

    def _s(self, x):
        return core.sparse_combine(self.antipode_cols, x)

    def _eps(self, x):
        acc = zero(self.level)
        for i, c in x.items():
            e = self.counit_vec[i]
            if e:
                acc = acc + c * e
        return acc

    def _one(self):
        return dict(self.unit_vec)

    def _one2(self):
        return _clean({(i, j): a * b for i, a in self.unit_vec.items()
                       for j, b in self.unit_vec.items()})


def _merge_pairs(entries, level):
    acc = {}
    for k, c in entries:
        _acc(acc, k, scalar(c, level))
    return sorted(_clean(acc).items())


def _dense_or_sparse(v, dim):
    if isinstance(v, dict):
        return list(v.items())
    return [(i, c) for i, c in enumerate(v)]


# -- element wrappers --------------------------------------------------------

def _check_parent(a, b):
    if a.parent is not b.parent:
        raise ParentMismatch(f"{a.parent.name} vs {b.parent.name}")


class Element:
    """Element of a Hopf algebra as a sparse coefficient dict."""

    __slots__ = ("parent", "vec")

    def __init__(self, parent, vec=None):
        self.parent = parent
        self.vec = _clean(vec or {})

    @property
    def coeffs(self):
        z = zero(self.parent.level)
        out = [z] * self.parent.dim
        for k, v in self.vec.items():
            out[k] = v
        return out

    def _coerce_scalar(self, c):
        return scalar(c, self.parent.level)

    def __add__(self, other):
        if not isinstance(other, Element):
            other = Element(self.parent, _vscale(self._coerce_scalar(other), self.parent.unit_vec))
        _check_parent(self, other)
        return Element(self.parent, _vadd(self.vec, other.vec))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Element):
            other = Element(self.parent, _vscale(self._coerce_scalar(other), self.parent.unit_vec))
        _check_parent(self, other)
        return Element(self.parent, _vadd(self.vec, other.vec, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Element(self.parent, {k: -v for k, v in self.vec.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, TensorElement):
            return NotImplemented
        return Element(self.parent, _vscale(self._coerce_scalar(other), self.vec))

    def __rmul__(self, other):
        return Element(self.parent, _vscale(self._coerce_scalar(other), self.vec))

    def __pow__(self, e):
        if e < 0:
            return invert_element(self) ** (-e)
        out = self.parent.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.parent is other.parent and self.vec == other.vec
        if isinstance(other, (int, CycloScalar)) or hasattr(other, "denominator"):
            return self.vec == _vscale(self._coerce_scalar(other), self.parent.unit_vec)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted((k, hash(v)) for k, v in self.vec.items())))

    def is_zero(self):
        return not self.vec

    def __repr__(self):
        return f"Element[{self.parent.name}]({_fmt_vec(self.parent, self.vec)})"

    def to_strings(self):
        return {self.parent.labels[k]: format_scalar(v) for k, v in sorted(self.vec.items())}


class TensorElement:
    """Element of H (x) H as a sparse dict (i, j) -> scalar."""

    __slots__ = ("parent", "terms")

    def __init__(self, parent, terms=None):
        self.parent = parent
        self.terms = _clean(terms or {})

    @property
    def coeffs(self):
        return dict(self.terms)

    def __add__(self, other):
        _check_parent(self, other)
        return TensorElement(self.parent, _vadd(self.terms, other.terms))

    def __sub__(self, other):
        _check_parent(self, other)
        return TensorElement(self.parent, _vadd(self.terms, other.terms, -1))

    def __neg__(self):
        return TensorElement(self.parent, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return tensor_multiply(self, other)
        return TensorElement(self.parent, _vscale(scalar(other, self.parent.level), self.terms))

    def __rmul__(self, other):
        return TensorElement(self.parent, _vscale(scalar(other, self.parent.level), self.terms))

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return self.parent is other.parent and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted((k, hash(v)) for k, v in self.terms.items())))

    def flip(self):
        """The 21 version: swap tensor legs."""
        return TensorElement(self.parent, {(j, i): v for (i, j), v in self.terms.items()})

    def __repr__(self):
        return f"TensorElement[{self.parent.name}]({_fmt_vec(self.parent, self.terms, True)})"


def tensor_of(x, y):
    """x (x) y as a TensorElement."""
    _check_parent(x, y)
    return TensorElement(x.parent, {(i, j): a * b for i, a in x.vec.items() for j, b in y.vec.items()})


# -- elementwise operations --------------------------------------------------

def multiply(x, y):
    _check_parent(x, y)
    return Element(x.parent, x.parent._m(x.vec, y.vec))


def comultiply(x):
    return TensorElement(x.parent, x.parent._delta(x.vec))


def apply_antipode(x, power=1):
    H = x.parent
    vec = x.vec
    if power >= 0:
        for _ in range(power):
            vec = H._s(vec)
    else:
        inv = antipode_inverse_cols(H)
        for _ in range(-power):
            vec = core.sparse_combine(inv, vec)
    return Element(H, vec)


def counit_of(x):
    return x.parent._eps(x.vec)


def tensor_multiply(X, Y):
    _check_parent(X, Y)
    return TensorElement(X.parent, X.parent._tm(X.terms, Y.terms))


def _krylov_inverse(mul, one_vec, x, limit, level, key=lambda k: k, unkey=lambda k: k):
    """Inverse of x in an algebra from the minimal polynomial of left multiplication."""
    ech = Echelon(limit=limit)
    powers = [one_vec]
    o = one(level)
    cur = one_vec
    for d in range(limit + 1):
        row = {key(k): v for k, v in cur.items()}
        row[limit + d] = o
        residue, grew = ech.add(row)
        if not grew:
            coeffs = [zero(level)] * (d + 1)
            for k, v in residue.items():
                coeffs[k - limit] = v
            c0 = coeffs[0]
            if not c0:
                raise NotInvertible("element is a zero divisor")
            # x^{-1} = -(1/c0) sum_{k>=1} c_k x^{k-1}
            out = {}
            f = -(c0.inverse())
            for k in range(1, d + 1):
                if coeffs[k]:
                    for idx, v in powers[k - 1].items():
                        _acc(out, idx, f * coeffs[k] * v)
            return _clean(out)
        cur = mul(x, cur)
        powers.append(cur)
    raise NotInvertible("minimal polynomial search exceeded dimension")


def invert_element(x):
    """Two-sided inverse in H; raises NotInvertible."""
    H = x.parent
    inv = _krylov_inverse(H._m, H._one(), x.vec, H.dim, H.level)
    return Element(H, inv)


def tensor_invert(X):
    """Inverse in H (x) H via the minimal polynomial of X; raises NotInvertible."""
    H = X.parent
    d = H.dim
    inv = _krylov_inverse(H._tm, H._one2(), X.terms, d * d, H.level,
                          key=lambda k: k[0] * d + k[1])
    Y = TensorElement(H, inv)
    if tensor_multiply(Y, X).terms != H._one2():
        raise NotInvertible("tensor inverse check failed")
    return Y


def antipode_inverse_cols(H):
    cols = H._cache.get("S_inv")
    if cols is None:
        try:
            m = mat_inverse(H.antipode, H.level)
        except NotInvertible:
            raise NonInvertibleAntipode(f"antipode of {H.name} is singular") from None
        cols = [{} for _ in range(H.dim)]
        for r, row in enumerate(m):
            for c, x in enumerate(row):
                if x:
                    cols[c][r] = x
        H._cache["S_inv"] = cols
    return cols


# -- generating sets ---------------------------------------------------------

def span_closure(H, gens, start=None):
    """Echelon basis of the span of left-nested words g1(g2(...(g_m * start))) in ``gens``."""
    ech = Echelon()
    start = H._one() if start is None else start
    queue = []
    row, grew = ech.add(start)
    if grew:
        queue.append(dict(start))
    gvecs = [{g: one(H.level)} if isinstance(g, int) else g for g in gens]
    while queue:
        v = queue.pop()
        for g in gvecs:
            w = H._m(g, v)
            if w:
                _, grew = ech.add(w)
                if grew:
                    queue.append(w)
    return ech


def certified_generators(H):
    """A generating set of basis indices, certified by left-spinning the unit."""
    cached = H._cache.get("generators")
    if cached is not None:
        return cached
    if H.generators is not None:
        ech = span_closure(H, H.generators)
        if ech.rank == H.dim:
            H._cache["generators"] = list(H.generators)
            return H._cache["generators"]
    gens = []
    ech = span_closure(H, gens)
    for i in range(H.dim):
        if ech.rank == H.dim:
            break
        if ech.reduce({i: one(H.level)}):
            gens.append(i)
            ech = span_closure(H, gens)
    H._cache["generators"] = gens
    return gens


# -- axiom verification ------------------------------------------------------

def _triple_delta_left(H, x2):
    """(Delta (x) id) applied to a tensor."""
    out = {}
    for (i, j), c in x2.items():
        for a, b, d in H.comult_table[i]:
            _acc(out, (a, b, j), c * d)
    return _clean(out)


def _triple_delta_right(H, x2):
    out = {}
    for (i, j), c in x2.items():
        for a, b, d in H.comult_table[j]:
            _acc(out, (i, a, b), c * d)
    return _clean(out)


def _use_exhaustive(H, mode):
    if mode == "exhaustive":
        return True
    if mode == "generators":
        return False
    return H.dim <= EXHAUSTIVE_LIMIT


def verify_hopf_axioms(H, mode="auto"):
    """Check every Hopf algebra axiom exactly on basis elements.

    In "exhaustive" mode (the default up to dimension 64) every identity is
    checked on all basis pairs and triples.  In "generators" mode the
    leftmost factor of associativity and of the multiplicativity of Delta and
    eps ranges over a generating set certified by spinning the unit.  This is
    equivalent: the set of left factors satisfying such an identity for all
    right factors is closed under products.  Once Delta and eps are known to
    be algebra maps, coassociativity and the counit law compare two algebra
    maps, so they too are checked on the generators.  The antipode law is
    always checked on the full basis.
    """
    rep = Report(f"hopf axioms: {H.name}")
    d = H.dim
    o = H._one()
    if _use_exhaustive(H, mode):
        left = list(range(d))
        rep.data["sweep"] = "all basis elements"
    else:
        left = certified_generators(H)
        rep.data["sweep"] = f"generators {[H.labels[i] for i in left]}"
    ob = one(H.level)

    wit = None
    for i in range(d):
        b = {i: ob}
        if H._m(o, b) != b or H._m(b, o) != b:
            wit = H.labels[i]
            break
    rep.add("unit", wit is None, wit)

    w = core.associativity_witness(H.mult_table, left, d)
    rep.add("associativity", w is None,
            None if w is None else [H.labels[t] for t in w])

    unit_ok = H._delta(o) == H._one2()
    w = core.comult_mult_witness(H.mult_table, H.comult_table, left, d) if unit_ok else None
    delta_ok = unit_ok and w is None
    rep.add("comult_multiplicative", delta_ok,
            "Delta(1)" if not unit_ok else (None if w is None else [H.labels[t] for t in w]))

    wit = None if H._eps(o) == 1 else "eps(1)"
    if wit is None:
        for i in left:
            ei = H.counit_vec[i]
            for j in range(d):
                lhs = H._eps(dict(H.mult_table[i][j]))
                if lhs != ei * H.counit_vec[j]:
                    wit = [H.labels[i], H.labels[j]]
                    break
            if wit:
                break
    eps_ok = wit is None
    rep.add("counit_multiplicative", eps_ok, wit)

    # coassociativity and counit law: on generators only when both maps are algebra maps
    coalg = left if (delta_ok and eps_ok) else range(d)
    wit = None
    for i in coalg:
        dl = H._delta({i: ob})
        if _triple_delta_left(H, dl) != _triple_delta_right(H, dl):
            wit = H.labels[i]
            break
    rep.add("coassociativity", wit is None, wit)

    wit = None
    for i in coalg:
        left_eps, right_eps = {}, {}
        for j, k, c in H.comult_table[i]:
            ej, ek = H.counit_vec[j], H.counit_vec[k]
            if ej:
                _acc(left_eps, k, c * ej)
            if ek:
                _acc(right_eps, j, c * ek)
        target = {i: ob}
        if _clean(left_eps) != target or _clean(right_eps) != target:
            wit = H.labels[i]
            break
    rep.add("counit", wit is None, wit)

    wit = None
    for i in range(d):
        lhs, rhs = {}, {}
        for j, k, c in H.comult_table[i]:
            for idx, v in H._m(H.antipode_cols[j], {k: c}).items():
                _acc(lhs, idx, v)
            for idx, v in H._m({j: c}, H.antipode_cols[k]).items():
                _acc(rhs, idx, v)
        target = _vscale(H.counit_vec[i], o)
        if _clean(lhs) != target or _clean(rhs) != target:
            wit = H.labels[i]
            break
    rep.add("antipode", wit is None, wit)
    return rep


def _r_inverse(H):
    """R^{-1}; tries (S (x) id)(R) first and falls back to a generic inverse."""
    cached = H._cache.get("R_inv")
    if cached is not None:
        return cached
    R = H.require_r()
    cand = {}
    for (i, j), c in R.items():
        for k, v in H.antipode_cols[i].items():
            _acc(cand, (k, j), c * v)
    cand = _clean(cand)
    one2 = H._one2()
    if H._tm(cand, R) == one2 and H._tm(R, cand) == one2:
        inv = cand
    else:
        inv = tensor_invert(TensorElement(H, R)).terms
    H._cache["R_inv"] = inv
    return inv


def monodromy(H):
    """R21 R as a sparse tensor."""
    cached = H._cache.get("Q")
    if cached is None:
        R = H.require_r()
        R21 = {(j, i): c for (i, j), c in R.items()}
        cached = H._tm(R21, R)
        H._cache["Q"] = cached
    return cached


def monodromy_inverse(H):
    """(R21 R)^{-1} = R^{-1} (R21)^{-1}, checked by multiplication."""
    cached = H._cache.get("Q_inv")
    if cached is None:
        Ri = _r_inverse(H)
        Ri21 = {(j, i): c for (i, j), c in Ri.items()}
        cached = H._tm(Ri, Ri21)
        if H._tm(cached, monodromy(H)) != H._one2():
            cached = tensor_invert(TensorElement(H, monodromy(H))).terms
        H._cache["Q_inv"] = cached
    return cached


def verify_rmatrix(H):
    """Invertibility, R Delta(x) = Delta^op(x) R on every basis x, and both hexagon identities."""
    R = H.require_r()
    rep = Report(f"R-matrix: {H.name}")
    try:
        Ri = _r_inverse(H)
        inv_ok = H._tm(Ri, R) == H._one2() and H._tm(R, Ri) == H._one2()
    except NotInvertible:
        inv_ok = False
    rep.add("invertible", inv_ok)

    wit = None
    for i in range(H.dim):
        dl = H._delta({i: one(H.level)})
        dop = {(k, j): c for (j, k), c in dl.items()}
        if H._tm(R, dl) != H._tm(dop, R):
            wit = H.labels[i]
            break
    rep.add("quasi_cocommutative", wit is None, wit)

    # (Delta (x) id)(R) = R13 R23 and (id (x) Delta)(R) = R13 R12
    lhs1 = _triple_delta_left(H, R)
    lhs2 = _triple_delta_right(H, R)
    r13r23, r13r12 = {}, {}
    for (a, b), c in R.items():
        for (p, q), e in R.items():
            ce = c * e
            for k, f in H.mult_table[b][q]:
                _acc(r13r23, (a, p, k), ce * f)
            for k, f in H.mult_table[a][p]:
                _acc(r13r12, (k, q, b), ce * f)
    rep.add("delta_left", lhs1 == _clean(r13r23), _first_diff(H, lhs1, _clean(r13r23)))
    rep.add("delta_right", lhs2 == _clean(r13r12), _first_diff(H, lhs2, _clean(r13r12)))

    e1, e2 = {}, {}
    for (i, j), c in R.items():
        if H.counit_vec[i]:
            _acc(e1, j, c * H.counit_vec[i])
        if H.counit_vec[j]:
            _acc(e2, i, c * H.counit_vec[j])
    rep.add("counit_normalized", _clean(e1) == H._one() and _clean(e2) == H._one())
    return rep


def _first_diff(H, a, b):
    for k in sorted(set(a) | set(b)):
        if a.get(k) != b.get(k):
            return "(x)".join(H.labels[i] for i in k)
    return None


# -- Drinfeld element --------------------------------------------------------

def drinfeld_element(H):
    """u = S(R2) R1."""
    if "u" not in H._cache:
        R = H.require_r()
        out = {}
        for (i, j), c in R.items():
            for k, v in H._m(H.antipode_cols[j], {i: c}).items():
                _acc(out, k, v)
        H._cache["u"] = _clean(out)
    return Element(H, H._cache["u"])


def drinfeld_inverse(H):
    """u^{-1} by the closed formula R2 S^2(R1)."""
    if "u_inv" not in H._cache:
        R = H.require_r()
        out = {}
        for (i, j), c in R.items():
            s2 = H._s(H.antipode_cols[i])
            for k, v in H._m({j: c}, s2).items():
                _acc(out, k, v)
        H._cache["u_inv"] = _clean(out)
    return Element(H, H._cache["u_inv"])


def casimir_like(H):
    """uS(u), the central element whose square root a ribbon element is."""
    u = drinfeld_element(H)
    return u * apply_antipode(u)


def pivot_grouplike(H):
    """u S(u)^{-1}, a grouplike whose conjugation action is S^4."""
    u = drinfeld_element(H)
    return u * invert_element(apply_antipode(u))


def is_central(x):
    H = x.parent
    for i in range(H.dim):
        b = {i: one(H.level)}
        if H._m(x.vec, b) != H._m(b, x.vec):
            return False, H.labels[i]
    return True, None


def is_grouplike(x):
    H = x.parent
    d = H._delta(x.vec)
    target = _clean({(i, j): a * b for i, a in x.vec.items() for j, b in x.vec.items()})
    return d == target and H._eps(x.vec) == 1


def verify_drinfeld_properties(H):
    rep = Report(f"Drinfeld element: {H.name}")
    u = drinfeld_element(H)
    uinv_formula = drinfeld_inverse(H)
    Su = apply_antipode(u)
    z = u * Su
    ok, wit = is_central(z)
    rep.add("uSu_central", ok, wit)

    Y = monodromy_inverse(H)
    zz = _clean({(i, j): a * b for i, a in z.vec.items() for j, b in z.vec.items()})
    rhs = H._tm(Y, H._tm(Y, zz))
    lhs = H._delta(z.vec)
    rep.add("delta_uSu", lhs == rhs, _first_diff(H, lhs, rhs))

    try:
        g = u * invert_element(Su)
        rep.add("uSu_inv_grouplike", is_grouplike(g))
        rep.data["uSu_inv"] = g.to_strings()
    except NotInvertible:
        rep.add("uSu_inv_grouplike", False, "S(u) not invertible")

    wit = None
    for i in range(H.dim):
        b = {i: one(H.level)}
        s2 = H._s(H.antipode_cols[i])
        if H._m(u.vec, b) != H._m(s2, u.vec):
            wit = H.labels[i]
            break
    rep.add("S2_conjugation", wit is None, wit)

    o = H._one()
    rep.add("u_inverse_formula",
            H._m(u.vec, uinv_formula.vec) == o and H._m(uinv_formula.vec, u.vec) == o)
    return rep


def verify_ribbon(H, v=None):
    """Centrality, v^2 = uS(u), Delta(v) = (R21 R)^{-1}(v (x) v), S(v) = v, eps(v) = 1."""
    if v is None:
        v = H.ribbon
        if v is None:
            raise ValueError(f"{H.name} carries no ribbon element")
    H.require_r()
    rep = Report(f"ribbon element: {H.name}")
    ok, wit = is_central(v)
    rep.add("central", ok, wit)
    rep.add("square_is_uSu", v * v == casimir_like(H))
    Y = monodromy_inverse(H)
    vv = _clean({(i, j): a * b for i, a in v.vec.items() for j, b in v.vec.items()})
    lhs = H._delta(v.vec)
    rhs = H._tm(Y, vv)
    rep.add("comultiplication", lhs == rhs, _first_diff(H, lhs, rhs))
    rep.add("antipode_fixed", apply_antipode(v) == v)
    rep.add("counit_one", counit_of(v) == 1)
    return rep


# -- integrals ---------------------------------------------------------------

def _integral_space(H, side):
    o = one(H.level)
    ech = Echelon()
    d = H.dim

    def rows_for(i):
        eps = H.counit_vec[i]
        rows = {}
        for k in range(d):
            prod = H.mult_table[i][k] if side == "left" else H.mult_table[k][i]
            for m, c in prod:
                _acc(rows.setdefault(m, {}), k, c)
            if eps:
                _acc(rows.setdefault(k, {}), k, -eps)
        return [r for r in (_clean(r) for r in rows.values()) if r]

    def satisfies(vec):
        for i in range(d):
            b = {i: o}
            prod = H._m(b, vec) if side == "left" else H._m(vec, b)
            if prod != _vscale(H.counit_vec[i], vec):
                return False
        return True

    basis = None
    for i in range(d):
        for r in rows_for(i):
            ech.add(r)
        if ech.rank >= d - 1:
            ns = ech.nullspace(d, o)
            if len(ns) == 1 and satisfies(ns[0]):
                basis = ns
                break
    if basis is None:
        basis = ech.nullspace(d, o)
    return [Element(H, v) for v in basis]


def left_integrals(H):
    if "int_L" not in H._cache:
        H._cache["int_L"] = _integral_space(H, "left")
    return H._cache["int_L"]


def right_integrals(H):
    if "int_R" not in H._cache:
        H._cache["int_R"] = _integral_space(H, "right")
    return H._cache["int_R"]


def same_span(xs, ys):
    """True when two lists of elements span the same subspace."""
    a, b = Echelon(), Echelon()
    for x in xs:
        a.add(x.vec)
    for y in ys:
        b.add(y.vec)
    if a.rank != b.rank:
        return False
    for y in ys:
        if a.reduce(y.vec):
            return False
    return True


def is_unimodular(H):
    return same_span(left_integrals(H), right_integrals(H))


def is_factorizable(H):
    """(rank == dim, rank) for the Drinfeld map beta -> (beta (x) id)(R21 R)."""
    Q = monodromy(H)
    rows = {}
    for (i, j), c in Q.items():
        rows.setdefault(i, {})[j] = c
    ech = Echelon()
    for i in sorted(rows):
        ech.add(rows[i])
    r = ech.rank
    return r == H.dim, r


# -- grouplikes --------------------------------------------------------------

def _dual_mult_table(H):
    """Multiplication of the dual basis: e^a e^b = sum_s [Delta(b_s)]_{a,b} e^s."""
    d = H.dim
    table = [[{} for _ in range(d)] for _ in range(d)]
    for s, entries in enumerate(H.comult_table):
        for a, b, c in entries:
            _acc(table[a][b], s, c)
    return [[tuple(sorted(_clean(e).items())) for e in row] for row in table]


def enumerate_grouplikes(H):
    """All grouplikes, as characters of the abelianised dual algebra."""
    cached = H._cache.get("grouplikes")
    if cached is not None:
        return list(cached)
    d = H.dim
    level = H.level
    o = one(level)
    dual = _dual_mult_table(H)
    ideal = Echelon()
    queue = []
    for a in range(d):
        for b in range(a + 1, d):
            if dual[a][b] or dual[b][a]:
                comm = {}
                for s, c in dual[a][b]:
                    _acc(comm, s, c)
                for s, c in dual[b][a]:
                    _acc(comm, s, -c)
                comm = _clean(comm)
                if comm:
                    _, grew = ideal.add(comm)
                    if grew:
                        queue.append(comm)
    while queue:
        v = queue.pop()
        for a in range(d):
            ea = {a: o}
            for w in (core.sparse_mul(dual, ea, v), core.sparse_mul(dual, v, ea)):
                if w:
                    _, grew = ideal.add(w)
                    if grew:
                        queue.append(w)
    free = [s for s in range(d) if s not in ideal.rows]
    pos = {s: n for n, s in enumerate(free)}
    na = len(free)

    def proj(vec):
        red = ideal.reduce(vec)
        return {pos[s]: c for s, c in red.items()}

    # left multiplication operators of the quotient, one per free basis vector
    ops = []
    for s in free:
        cols = []
        for t in free:
            cols.append(proj(core.sparse_mul(dual, {s: o}, {t: o})))
        ops.append(cols)
    eps_dual = proj(dict(H.unit_vec))  # unit of H* is epsilon = sum_s (1_H)_s ... see below
    # characters chi: chi(L_f x) = chi(f) chi(x); as covectors they are common
    # eigenvectors of the transposed operators
    spaces = [(list(range(na)), None)]
    candidates = [_identity_basis(na, level)]
    for f_idx in range(na):
        M = ops[f_idx]
        # transposed matrix acting on covectors: (M^T chi)_t = sum_r M[t][r] chi_r
        mt = [[M[t].get(r, zero(level)) for r in range(na)] for t in range(na)]
        new = []
        minpoly = _minpoly_dense(mt, level)
        lin = []
        for fac, _ in factor_poly(minpoly, level):
            if len(fac) != 2:
                raise FieldTooSmall(f"a character of the dual of {H.name} needs a larger field")
            lin.append(-fac[0])
        for basis in candidates:
            for mu in lin:
                sub = _intersect_eigen(basis, mt, mu, level)
                if sub:
                    new.append(sub)
        candidates = new
    del spaces
    out = []
    for basis in candidates:
        if len(basis) != 1:
            raise FieldTooSmall("character space did not split to lines")
        chi = basis[0]
        # normalise chi(1_{H*}) = 1, where 1_{H*} = epsilon
        unit_dual = proj({s: H.counit_vec[s] for s in range(d) if H.counit_vec[s]})
        val = zero(level)
        for r, c in unit_dual.items():
            val = val + c * chi[r]
        if not val:
            continue
        chi = [x * val.inverse() for x in chi]
        g = {}
        for s in range(d):
            ps = proj({s: o})
            acc = zero(level)
            for r, c in ps.items():
                acc = acc + c * chi[r]
            if acc:
                g[s] = acc
        out.append(Element(H, g))
    del eps_dual
    out = [g for g in out if is_grouplike(g)]
    out.sort(key=lambda g: sorted(g.vec))
    H._cache["grouplikes"] = out
    return list(out)


def _identity_basis(n, level):
    z, o = zero(level), one(level)
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def _minpoly_dense(m, level):
    from .linalg import minimal_polynomial
    return minimal_polynomial(m, level)


def _intersect_eigen(basis, mt, mu, level):
    """Basis of span(basis) intersected with ker(mt - mu)."""
    n = len(mt)
    # x = sum_a lam_a basis[a]; require (mt - mu) x = 0
    images = []
    for vec in basis:
        img = []
        for t in range(n):
            acc = zero(level)
            row = mt[t]
            for r in range(n):
                if row[r] and vec[r]:
                    acc = acc + row[r] * vec[r]
            img.append(acc - mu * vec[t])
        images.append(img)
    k = len(basis)
    rows = [[images[a][t] for a in range(k)] for t in range(n)]
    from .linalg import nullspace
    ns = nullspace(rows, k, level)
    out = []
    for lam in ns:
        out.append([sum((lam[a] * basis[a][t] for a in range(k)), zero(level)) for t in range(n)])
    return out


def find_ribbon_elements(H):
    """Ribbon elements among the candidates u*g, g grouplike."""
    u = drinfeld_element(H)
    found = []
    for g in enumerate_grouplikes(H):
        cand = u * g
        if verify_ribbon(H, cand).passed:
            found.append(cand)
    return found


def ribbon_search_report(H):
    rep = Report(f"ribbon search: {H.name}")
    gs = enumerate_grouplikes(H)
    found = find_ribbon_elements(H)
    rep.data["grouplikes"] = [g.to_strings() for g in gs]
    rep.data["ribbon_elements"] = [v.to_strings() for v in found]
    rep.add("search_completed", True)
    if not H.catalog:
        rep.note("candidates restricted to u*g with g grouplike; completeness of this family "
                 "is only established for the built-in catalog")
    return rep


# -- Drinfeld double ---------------------------------------------------------

def drinfeld_double(H, name=None):
    """D(H) on the basis e^p (x) b_i (index p*dim + i) with R = sum (eps (x) b_i) (x) (e^i (x) 1).

    The dual factor carries the opposite coproduct; the cross relation is
    b . f = f(S^{-1}(b_(3)) ? b_(1)) b_(2).
    """
    d = H.dim
    check_size(d * d, name or f"D({H.name})")
    level = H.level
    Sinv = antipode_inverse_cols(H)
    o = one(level)

    def idx(p, i):
        return p * d + i

    # b_x b_y coefficient lookup for the dual coproduct: which (x, y) hit p
    hits = [[] for _ in range(d)]
    for x in range(d):
        for y in range(d):
            for p, c in H.mult_table[x][y]:
                hits[p].append((x, y, c))
    dual = _dual_mult_table(H)

    # cross[i][q]: b_i . e^q = sum c e^r (x) b_beta, keyed (r, beta)
    delta2 = []
    for i in range(d):
        terms = {}
        for x, g, c1 in H.comult_table[i]:
            for a, b, c2 in H.comult_table[x]:
                _acc(terms, (a, b, g), c1 * c2)
        delta2.append(_clean(terms))
    sandwich = {}

    def sand(g, a):
        key = (g, a)
        if key not in sandwich:
            rows = []
            left = Sinv[g]
            for r in range(d):
                rows.append(H._m(H._m(left, {r: o}), {a: o}))
            sandwich[key] = rows
        return sandwich[key]

    cross = [[{} for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for (a, b, g), c in delta2[i].items():
            rows = sand(g, a)
            for r in range(d):
                for q, v in rows[r].items():
                    _acc(cross[i][q], (r, b), c * v)
    cross = [[_clean(e) for e in row] for row in cross]

    D = d * d
    mult = [[() for _ in range(D)] for _ in range(D)]
    for p in range(d):
        for i in range(d):
            row = mult[idx(p, i)]
            for q in range(d):
                cr = cross[i][q]
                for j in range(d):
                    acc = {}
                    for (r, beta), c in cr.items():
                        left = dual[p][r]
                        if not left:
                            continue
                        right = H.mult_table[beta][j]
                        for s, c2 in left:
                            cc = c * c2
                            for t, c3 in right:
                                _acc(acc, idx(s, t), cc * c3)
                    row[idx(q, j)] = tuple(sorted(_clean(acc).items()))

    comult = []
    for p in range(d):
        for i in range(d):
            acc = {}
            for x, y, c in hits[p]:
                for a, b, c2 in H.comult_table[i]:
                    _acc(acc, (idx(y, a), idx(x, b)), c * c2)
            comult.append(tuple((j, k, c) for (j, k), c in sorted(_clean(acc).items())))

    counit = [zero(level)] * D
    unit_vec = {}
    for p in range(d):
        ep = H.counit_vec[p]
        for i in range(d):
            up = H.unit_vec.get(p)
            if up and H.counit_vec[i]:
                counit[idx(p, i)] = up * H.counit_vec[i]
            ui = H.unit_vec.get(i)
            if ep and ui:
                unit_vec[idx(p, i)] = ep * ui

    labels = [f"{H.labels[p]}^*.{H.labels[i]}" for p in range(d) for i in range(d)]
    out = HopfData(D, labels, mult, unit_vec, comult, counit, [{}] * D, level=level,
                   name=name or f"D({H.name})")

    # antipode: S(e^p (x) b_i) = (eps (x) S(b_i)) (e^p o S^{-1} (x) 1)
    eps_dual = {p: H.counit_vec[p] for p in range(d) if H.counit_vec[p]}
    one_h = H.unit_vec
    cols = []
    for p in range(d):
        f = {}
        for q in range(d):
            v = Sinv[q].get(p)
            if v:
                f[q] = v
        right = {idx(q, j): a * b for q, a in f.items() for j, b in one_h.items()}
        for i in range(d):
            left = {idx(q, k): a * b for q, a in eps_dual.items()
                    for k, b in H.antipode_cols[i].items()}
            cols.append(out._m(left, right))
    out.antipode_cols = [_clean(c) for c in cols]

    R = {}
    for i in range(d):
        for q, a in eps_dual.items():
            for j, b in one_h.items():
                _acc(R, (idx(q, i), idx(i, j)), a * b)
    out._r = _clean(R)
    return out


# -- cocycled crossed products ------------------------------------------------

class CrossedProductSpec:
    """Weak action K (x) H -> H and cocycle K (x) K -> H as sparse bilinear tables.

    ``weak_action[a][i]`` is the sparse vector k_a . h_i in H and
    ``cocycle[a][b]`` is sigma(k_a (x) k_b) in H.
    """

    def __init__(self, base, acting, weak_action, cocycle, name=None):
        self.base = base
        self.acting = acting
        self.weak_action = weak_action
        self.cocycle = cocycle
        self.name = name or f"{base.name}#{acting.name}"

    def act(self, kvec, hvec):
        out = {}
        for a, c in kvec.items():
            for i, e in hvec.items():
                for k, v in self.weak_action[a][i].items():
                    _acc(out, k, c * e * v)
        return _clean(out)

    def sigma(self, k1, k2):
        out = {}
        for a, c in k1.items():
            for b, e in k2.items():
                for k, v in self.cocycle[a][b].items():
                    _acc(out, k, c * e * v)
        return _clean(out)


def _basis_vec(level, i):
    return {i: one(level)}


def verify_crossed_spec(spec):
    H, K = spec.base, spec.acting
    lv = H.level
    rep = Report(f"crossed product data: {spec.name}")
    dh, dk = H.dim, K.dim
    b = lambda i: _basis_vec(lv, i)

    def first(cond):
        for w in cond:
            if w is not None:
                return w
        return None

    # weak action (1): k.(h1 h2) = (k1.h1)(k2.h2)
    def w1():
        for a in range(dk):
            dka = K._delta(b(a))
            for i in range(dh):
                for j in range(dh):
                    lhs = spec.act(b(a), H._m(b(i), b(j)))
                    rhs = {}
                    for (x, y), c in dka.items():
                        for k, v in H._m(spec.act(b(x), b(i)), spec.act(b(y), b(j))).items():
                            _acc(rhs, k, c * v)
                    if lhs != _clean(rhs):
                        yield [K.labels[a], H.labels[i], H.labels[j]]
        yield None
    rep.add("weak_action_multiplicative", (w := first(w1())) is None, w)

    wit = None
    for a in range(dk):
        if spec.act(b(a), H._one()) != _vscale(K.counit_vec[a], H._one()):
            wit = K.labels[a]
            break
    rep.add("weak_action_unit", wit is None, wit)
    wit = None
    for i in range(dh):
        if spec.act(K._one(), b(i)) != b(i):
            wit = H.labels[i]
            break
    rep.add("weak_action_identity", wit is None, wit)

    wit = None
    for a in range(dk):
        target = _vscale(K.counit_vec[a], H._one())
        if spec.sigma(b(a), K._one()) != target or spec.sigma(K._one(), b(a)) != target:
            wit = K.labels[a]
            break
    rep.add("cocycle_normal", wit is None, wit)

    def cocycle_cond():
        for a in range(dk):
            da = K._delta(b(a))
            for c2 in range(dk):
                dc2 = K._delta(b(c2))
                for c3 in range(dk):
                    dc3 = K._delta(b(c3))
                    lhs, rhs = {}, {}
                    for (x1, x2), s1 in da.items():
                        for (y1, y2), s2 in dc2.items():
                            for (z1, z2), s3 in dc3.items():
                                t = spec.act(b(x1), spec.sigma(b(y1), b(z1)))
                                u = spec.sigma(b(x2), K._m(b(y2), b(z2)))
                                for k, v in H._m(t, u).items():
                                    _acc(lhs, k, s1 * s2 * s3 * v)
                    for (x1, x2), s1 in da.items():
                        for (y1, y2), s2 in dc2.items():
                            t = spec.sigma(b(x1), b(y1))
                            u = spec.sigma(K._m(b(x2), b(y2)), b(c3))
                            for k, v in H._m(t, u).items():
                                _acc(rhs, k, s1 * s2 * v)
                    if _clean(lhs) != _clean(rhs):
                        yield [K.labels[a], K.labels[c2], K.labels[c3]]
        yield None
    rep.add("cocycle_condition", (w := first(cocycle_cond())) is None, w)

    def twisted():
        for a in range(dk):
            da = K._delta(b(a))
            for c2 in range(dk):
                dc2 = K._delta(b(c2))
                for i in range(dh):
                    lhs, rhs = {}, {}
                    for (x1, x2), s1 in da.items():
                        for (y1, y2), s2 in dc2.items():
                            t = spec.act(b(x1), spec.act(b(y1), b(i)))
                            for k, v in H._m(t, spec.sigma(b(x2), b(y2))).items():
                                _acc(lhs, k, s1 * s2 * v)
                            t2 = spec.sigma(b(x1), b(y1))
                            u2 = spec.act(K._m(b(x2), b(y2)), b(i))
                            for k, v in H._m(t2, u2).items():
                                _acc(rhs, k, s1 * s2 * v)
                    if _clean(lhs) != _clean(rhs):
                        yield [K.labels[a], K.labels[c2], H.labels[i]]
        yield None
    rep.add("twisted_module", (w := first(twisted())) is None, w)

    def sym_action():
        for a in range(dk):
            da = K._delta(b(a))
            for i in range(dh):
                lhs, rhs = {}, {}
                for (x1, x2), s in da.items():
                    for k, v in spec.act(b(x2), b(i)).items():
                        _acc(lhs, (x1, k), s * v)
                    for k, v in spec.act(b(x1), b(i)).items():
                        _acc(rhs, (x2, k), s * v)
                if _clean(lhs) != _clean(rhs):
                    yield [K.labels[a], H.labels[i]]
        yield None
    rep.add("action_symmetric", (w := first(sym_action())) is None, w)

    def sym_cocycle():
        for a in range(dk):
            da = K._delta(b(a))
            for c2 in range(dk):
                dc2 = K._delta(b(c2))
                lhs, rhs = {}, {}
                for (x1, x2), s1 in da.items():
                    for (y1, y2), s2 in dc2.items():
                        for m, e in K._m(b(x1), b(y1)).items():
                            for k, v in spec.sigma(b(x2), b(y2)).items():
                                _acc(lhs, (m, k), s1 * s2 * e * v)
                        for m, e in K._m(b(x2), b(y2)).items():
                            for k, v in spec.sigma(b(x1), b(y1)).items():
                                _acc(rhs, (m, k), s1 * s2 * e * v)
                if _clean(lhs) != _clean(rhs):
                    yield [K.labels[a], K.labels[c2]]
        yield None
    rep.add("cocycle_symmetric", (w := first(sym_cocycle())) is None, w)

    def coalg_action():
        for a in range(dk):
            da = K._delta(b(a))
            for i in range(dh):
                di = H._delta(b(i))
                lhs = H._delta(spec.act(b(a), b(i)))
                rhs = {}
                for (x1, x2), s1 in da.items():
                    for (h1, h2), s2 in di.items():
                        t = spec.act(b(x1), b(h1))
                        u = spec.act(b(x2), b(h2))
                        for k, v in t.items():
                            for l, w_ in u.items():
                                _acc(rhs, (k, l), s1 * s2 * v * w_)
                eps_ok = H._eps(spec.act(b(a), b(i))) == K.counit_vec[a] * H.counit_vec[i]
                if lhs != _clean(rhs) or not eps_ok:
                    yield [K.labels[a], H.labels[i]]
        yield None
    rep.add("action_coalgebra_map", (w := first(coalg_action())) is None, w)

    def coalg_cocycle():
        for a in range(dk):
            da = K._delta(b(a))
            for c2 in range(dk):
                dc2 = K._delta(b(c2))
                lhs = H._delta(spec.sigma(b(a), b(c2)))
                rhs = {}
                for (x1, x2), s1 in da.items():
                    for (y1, y2), s2 in dc2.items():
                        t = spec.sigma(b(x1), b(y1))
                        u = spec.sigma(b(x2), b(y2))
                        for k, v in t.items():
                            for l, w_ in u.items():
                                _acc(rhs, (k, l), s1 * s2 * v * w_)
                eps_ok = H._eps(spec.sigma(b(a), b(c2))) == K.counit_vec[a] * K.counit_vec[c2]
                if lhs != _clean(rhs) or not eps_ok:
                    yield [K.labels[a], K.labels[c2]]
        yield None
    rep.add("cocycle_coalgebra_map", (w := first(coalg_cocycle())) is None, w)
    return rep


def crossed_product(spec, validate=True):
    """H #_sigma K on basis h_i # k_a (index i*dim K + a)."""
    if validate:
        rep = verify_crossed_spec(spec)
        if not rep.passed:
            raise InvalidSpec("; ".join(c.name for c in rep.failures()))
    H, K = spec.base, spec.acting
    lv = H.level
    dh, dk = H.dim, K.dim
    b = lambda i: _basis_vec(lv, i)
    idx = lambda i, a: i * dk + a
    D = dh * dk

    delta2 = []
    for a in range(dk):
        terms = {}
        for x, z3, c1 in K.comult_table[a]:
            for x1, x2, c2 in K.comult_table[x]:
                _acc(terms, (x1, x2, z3), c1 * c2)
        delta2.append(_clean(terms))

    mult = [[() for _ in range(D)] for _ in range(D)]
    for a in range(dk):
        for bb in range(dk):
            # sum over k_a^(1),(2),(3) and k_b^(1),(2)
            pieces = []
            for (x1, x2, x3), c1 in delta2[a].items():
                for y1, y2, c2 in K.comult_table[bb]:
                    kprod = K._m(b(x3), b(y2))
                    if not kprod:
                        continue
                    sig = spec.sigma(b(x2), b(y1))
                    if not sig:
                        continue
                    pieces.append((x1, sig, kprod, c1 * c2))
            for i in range(dh):
                for j in range(dh):
                    acc = {}
                    for x1, sig, kprod, c in pieces:
                        hpart = H._m(H._m(b(i), spec.act(b(x1), b(j))), sig)
                        for hk, hv in hpart.items():
                            for kk, kv in kprod.items():
                                _acc(acc, idx(hk, kk), c * hv * kv)
                    mult[idx(i, a)][idx(j, bb)] = tuple(sorted(_clean(acc).items()))

    comult = []
    for i in range(dh):
        for a in range(dk):
            acc = {}
            for h1, h2, c in H.comult_table[i]:
                for k1, k2, e in K.comult_table[a]:
                    _acc(acc, (idx(h1, k1), idx(h2, k2)), c * e)
            comult.append(tuple((j, k, c) for (j, k), c in sorted(_clean(acc).items())))
    counit = [H.counit_vec[i] * K.counit_vec[a] for i in range(dh) for a in range(dk)]
    unit_vec = {idx(i, a): c * e for i, c in H.unit_vec.items() for a, e in K.unit_vec.items()}
    labels = [f"{H.labels[i]}#{K.labels[a]}" for i in range(dh) for a in range(dk)]
    out = HopfData(D, labels, mult, unit_vec, comult, counit, [{}] * D, level=lv,
                   name=spec.name)

    # S(h # k) = [S_H(sigma(S_K(k2) (x) k3)) # S_K(k1)] [S_H(h) # 1]
    cols = []
    one_k = K.unit_vec
    for i in range(dh):
        right = {idx(hk, a): hv * kv for hk, hv in H.antipode_cols[i].items()
                 for a, kv in one_k.items()}
        for a in range(dk):
            left = {}
            for (x1, x2, x3), c in delta2[a].items():
                sig = spec.sigma(K.antipode_cols[x2], b(x3))
                shs = H._s(sig)
                for hk, hv in shs.items():
                    for kk, kv in K.antipode_cols[x1].items():
                        _acc(left, idx(hk, kk), c * hv * kv)
            cols.append(out._m(_clean(left), right))
    out.antipode_cols = [_clean(c) for c in cols]
    return out


# -- morphisms ---------------------------------------------------------------

def _as_columns(phi, A, B):
    if isinstance(phi, (list, tuple)) and phi and isinstance(phi[0], dict):
        if len(phi) != A.dim:
            raise DimensionMismatch(f"map has {len(phi)} columns, source dim {A.dim}")
        return [_clean(c) for c in phi]
    if len(phi) != B.dim or any(len(r) != A.dim for r in phi):
        raise DimensionMismatch(f"map must be {B.dim}x{A.dim}")
    cols = [{} for _ in range(A.dim)]
    for r, row in enumerate(phi):
        for c, x in enumerate(row):
            if x:
                cols[c][r] = x
    return cols


def check_hopf_morphism(phi, A, B, check_r=False, check_ribbon=False):
    """Check phi: A -> B on all structure maps; ``phi`` is a list of image
    vectors (one sparse dict per basis element of A) or a dense dim(B) x dim(A) matrix."""
    cols = _as_columns(phi, A, B)
    rep = Report(f"Hopf morphism {A.name} -> {B.name}")

    def img(vec):
        return core.sparse_combine(cols, vec)

    wit = None
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = img(dict(A.mult_table[i][j]))
            rhs = B._m(cols[i], cols[j])
            if lhs != rhs:
                wit = [A.labels[i], A.labels[j]]
                break
        if wit:
            break
    rep.add("multiplicative", wit is None, wit)
    rep.add("unit", img(A.unit_vec) == B._one())

    def img2(t):
        out = {}
        for (i, j), c in t.items():
            for k, v in cols[i].items():
                for l, w in cols[j].items():
                    _acc(out, (k, l), c * v * w)
        return _clean(out)

    wit = None
    for i in range(A.dim):
        if img2(A._delta({i: one(A.level)})) != B._delta(cols[i]):
            wit = A.labels[i]
            break
    rep.add("comultiplicative", wit is None, wit)
    wit = None
    for i in range(A.dim):
        if B._eps(cols[i]) != A.counit_vec[i]:
            wit = A.labels[i]
            break
    rep.add("counit", wit is None, wit)
    wit = None
    for i in range(A.dim):
        if img(A.antipode_cols[i]) != B._s(cols[i]):
            wit = A.labels[i]
            break
    rep.add("antipode", wit is None, wit)

    ech = Echelon()
    for c in cols:
        ech.add(c)
    rep.data["rank"] = ech.rank
    rep.data["bijective"] = ech.rank == A.dim == B.dim
    if check_r:
        rep.add("r_matrix", img2(A.require_r()) == B.require_r())
    if check_ribbon:
        rep.add("ribbon", img(A.ribbon.vec) == B.ribbon.vec)
    return rep
