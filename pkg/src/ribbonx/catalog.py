"""Named algebras: Nichols Hopf algebras K_n, their doubles, H4, F[Z2] and friends.

Basis words of the doubled algebra are K^k Kbar^l xi^a xibar^b with a, b
bitmasks (bit i-1 stands for the letter with index i), ordered by
(k, l, a, b).  Products are normal-ordered by a memoised rewriting of the
letter sequence: equal neighbours vanish, same-kind letters anticommute and

    xibar_j xi_i = -xi_i xibar_j + delta_ij (1 - K Kbar).

K and Kbar anticommute with every letter, so K Kbar commutes with all of
them and can be collected at the front.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb

from .field import DEFAULT_LEVEL, one, scalar, zero
from .hopf import Element, HopfData, _acc, _clean, check_size
from .report import Report

XI, XIBAR = 0, 1


@lru_cache(maxsize=None)
def _normal(letters):
    """Normal form of a product of letters as {(kk, xmask, ymask): int}."""
    for p in range(len(letters) - 1):
        a, b = letters[p], letters[p + 1]
        if a < b:
            continue
        if a == b:
            return {}
        head, tail = letters[:p], letters[p + 2:]
        out = {}
        for key, c in _normal(head + (b, a) + tail).items():
            out[key] = out.get(key, 0) - c
        if a[0] == XIBAR and b[0] == XI and a[1] == b[1]:
            # (1 - K Kbar) with K Kbar pulled to the front
            for key, c in _normal(head + tail).items():
                out[key] = out.get(key, 0) + c
                flipped = (key[0] ^ 1,) + key[1:]
                out[flipped] = out.get(flipped, 0) - c
        return {k: v for k, v in out.items() if v}
    xm = ym = 0
    for kind, i in letters:
        if kind == XI:
            xm |= 1 << (i - 1)
        else:
            ym |= 1 << (i - 1)
    return {(0, xm, ym): 1}


def _letters(mask, kind, n):
    return tuple((kind, i + 1) for i in range(n) if mask >> i & 1)


def popcount(mask):
    return bin(mask).count("1")


class _WordBasis:
    """Index bookkeeping for K^k Kbar^l xi^a xibar^b."""

    def __init__(self, n, doubled):
        self.n = n
        self.doubled = doubled
        self.N = 1 << n
        self.words = []
        ls = (0, 1) if doubled else (0,)
        bs = range(self.N) if doubled else (0,)
        for k in (0, 1):
            for l in ls:
                for a in range(self.N):
                    for b in bs:
                        self.words.append((k, l, a, b))
        self.pos = {w: i for i, w in enumerate(self.words)}

    def label(self, w):
        k, l, a, b = w
        parts = []
        if k:
            parts.append("K")
        if l:
            parts.append("Kbar")
        parts += [f"xi{i + 1}" for i in range(self.n) if a >> i & 1]
        parts += [f"xibar{i + 1}" for i in range(self.n) if b >> i & 1]
        return "*".join(parts) or "1"

    def product(self, w1, w2):
        k1, l1, a1, b1 = w1
        k2, l2, a2, b2 = w2
        sign = -1 if ((k2 + l2) * (popcount(a1) + popcount(b1))) % 2 else 1
        seq = (_letters(a1, XI, self.n) + _letters(b1, XIBAR, self.n)
               + _letters(a2, XI, self.n) + _letters(b2, XIBAR, self.n))
        out = {}
        for (kk, a, b), c in _normal(seq).items():
            key = self.pos[((k1 + k2 + kk) % 2, (l1 + l2 + kk) % 2, a, b)]
            out[key] = out.get(key, 0) + sign * c
        return {k: v for k, v in out.items() if v}


def _build(n, doubled, level, name):
    check_size(2 ** (2 * n + 2 if doubled else n + 1), name)
    wb = _WordBasis(n, doubled)
    d = len(wb.words)
    o = one(level)
    sc = {1: o, -1: -o}
    mult = [[() for _ in range(d)] for _ in range(d)]
    for i, w1 in enumerate(wb.words):
        row = mult[i]
        for j, w2 in enumerate(wb.words):
            row[j] = tuple(sorted((k, sc[c] if c in sc else scalar(c, level))
                                  for k, c in wb.product(w1, w2).items()))
    unit = {wb.pos[(0, 0, 0, 0)]: o}
    counit = [o if (a, b) == (0, 0) else zero(level) for _, _, a, b in wb.words]
    H = HopfData(d, [wb.label(w) for w in wb.words], mult, unit, [()] * d, counit,
                 [{}] * d, level=level, name=name, catalog=True)

    K = wb.pos[(1, 0, 0, 0)]
    gens = {"K": K}
    delta = {K: {(K, K): o}}
    anti = {K: {K: o}}
    one_idx = unit and next(iter(unit))
    if doubled:
        Kb = wb.pos[(0, 1, 0, 0)]
        gens["Kbar"] = Kb
        delta[Kb] = {(Kb, Kb): o}
        anti[Kb] = {Kb: o}
    for i in range(n):
        x = wb.pos[(0, 0, 1 << i, 0)]
        gens[f"xi{i + 1}"] = x
        delta[x] = {(K, x): o, (x, one_idx): o}
        anti[x] = {k: -v for k, v in H._m({K: o}, {x: o}).items()}
        if doubled:
            y = wb.pos[(0, 0, 0, 1 << i)]
            gens[f"xibar{i + 1}"] = y
            delta[y] = {(Kb, y): o, (y, one_idx): o}
            anti[y] = {k: -v for k, v in H._m({Kb: o}, {y: o}).items()}

    comult, cols = [], []
    for k, l, a, b in wb.words:
        factors = [K] * k + ([gens["Kbar"]] if l else [])
        factors += [gens[f"xi{i + 1}"] for i in range(n) if a >> i & 1]
        factors += [gens[f"xibar{i + 1}"] for i in range(n) if b >> i & 1]
        t = H._one2()
        s = H._one()
        for f in factors:
            t = H._tm(t, delta[f])
            s = H._m(anti[f], s)
        comult.append(tuple((j, kk, c) for (j, kk), c in sorted(t.items())))
        cols.append(s)
    H.comult_table = comult
    H.antipode_cols = cols
    H.generators = list(gens.values())
    H.word_basis = wb
    H.named = gens
    return H


def nichols(n, level=DEFAULT_LEVEL):
    """The Nichols Hopf algebra K_n of dimension 2^(n+1)."""
    if not 1 <= n <= 4:
        raise ValueError("n must lie in 1..4")
    return _build(n, False, level, f"K{n}")


def _coeff_w(w_len):
    return Fraction((-1) ** (w_len // 2), 2)


def doubled_nichols(n, level=DEFAULT_LEVEL, with_r=True):
    """D(K_n) by explicit relations, with its canonical R-matrix and, for even n, ribbon v_0."""
    if not 1 <= n <= 3:
        raise ValueError("n must lie in 1..3")
    H = _build(n, True, level, f"DK{n}")
    if with_r:
        wb = H.word_basis
        o = one(level)
        Kb = H.named["Kbar"]
        one_idx = next(iter(H.unit_vec))
        R = {}
        for a in range(wb.N):
            c = scalar(_coeff_w(popcount(a)), level)
            w = wb.pos[(0, 0, a, 0)]
            Kw = wb.pos[(1, 0, a, 0)]
            wbar = {wb.pos[(0, 0, 0, a)]: o}
            plus = H._m(wbar, {one_idx: o, Kb: o})
            minus = H._m(wbar, {one_idx: o, Kb: -o})
            for j, v in plus.items():
                _acc(R, (w, j), c * v)
            for j, v in minus.items():
                _acc(R, (Kw, j), c * v)
        H._r = _clean(R)
        if n % 2 == 0:
            H._ribbon = dkn_ribbon(H, 0).vec
    return H


def _group_combo(H, a, b, c1=0, cK=0, cKb=0, cKKb=0):
    """(c1 + cK K + cKb Kbar + cKKb K Kbar) xi^a xibar^b as a sparse dict."""
    wb = H.word_basis
    out = {}
    for (k, l), c in (((0, 0), c1), ((1, 0), cK), ((0, 1), cKb), ((1, 1), cKKb)):
        if c:
            out[wb.pos[(k, l, a, b)]] = scalar(c, H.level)
    return out


def dkn_ribbon(H, i):
    """v_i = sum_w c_w ((-1)^(|w|+i)(K - Kbar) + 1 + K Kbar) w wbar."""
    vec = {}
    for a in range(H.word_basis.N):
        c = _coeff_w(popcount(a))
        s = (-1) ** (popcount(a) + i)
        vec.update(_group_combo(H, a, a, c1=c, cK=s * c, cKb=-s * c, cKKb=c))
    return Element(H, vec)


def drinfeld_closed_forms(n, H=None):
    """Closed forms of u, u^-1, S(u), uS(u), uS(u)^-1 in D(K_n) built from their summation formulas."""
    if H is None:
        H = doubled_nichols(n)
    N = H.word_basis.N
    sgn_n = (-1) ** n
    u, uinv, su, usu = {}, {}, {}, {}
    for a in range(N):
        m = popcount(a)
        c = _coeff_w(m)
        e = sgn_n * (-1) ** m
        u.update(_group_combo(H, a, a, c1=c * e, cK=c, cKb=c, cKKb=-c * e))
        ci = Fraction((-1) ** ((m + 1) // 2), 2)
        uinv.update(_group_combo(H, a, a, c1=ci * sgn_n, cK=ci, cKb=ci, cKKb=-ci * sgn_n))
        es = (-1) ** m
        su.update(_group_combo(H, a, a, c1=c * es, cK=c, cKb=c, cKKb=-c * es))
        t = Fraction((-1) ** (m // 2)) * Fraction(2) ** (m - 1)
        part = _group_combo(H, a, a, c1=t, cKKb=t)
        if a == 0:
            half = Fraction(sgn_n, 2)
            part = _clean({k: v for k, v in _vadd_dict(part, _group_combo(H, 0, 0, c1=half, cKKb=-half)).items()})
        usu.update(part)
    kk = _group_combo(H, 0, 0, cKKb=1) if n % 2 else _group_combo(H, 0, 0, c1=1)
    return {"u": Element(H, u), "u_inv": Element(H, uinv), "S_u": Element(H, su),
            "uS_u": Element(H, usu), "uSu_inv": Element(H, kk)}


def _vadd_dict(x, y):
    out = dict(x)
    for k, v in y.items():
        _acc(out, k, v)
    return out


# -- sum-by-length identity ------------------------------------------------

def _word(H, a, bar_first):
    wb = H.word_basis
    o = one(H.level)
    w = {wb.pos[(0, 0, a, 0)]: o}
    wbar = {wb.pos[(0, 0, 0, a)]: o}
    return H._m(wbar, w) if bar_first else H._m(w, wbar)


def _swap_letters(H, vec):
    """The algebra automorphism exchanging K <-> Kbar and xi_i <-> xibar_i."""
    wb = H.word_basis
    out = {}
    o = one(H.level)
    for idx, c in vec.items():
        k, l, a, b = wb.words[idx]
        # xibar^a xi^b after the swap, then normal-ordered
        img = H._m(H._m({wb.pos[(l, k, 0, 0)]: o}, {wb.pos[(0, 0, 0, a)]: o}),
                   {wb.pos[(0, 0, b, 0)]: o})
        for j, v in img.items():
            _acc(out, j, c * v)
    return _clean(out)


def _sum_by_length_sides(H, f, n, bar_first_left=True):
    """Both sides of the general conversion identity for a length-indexed family f."""
    lhs, rhs = {}, {}
    N = H.word_basis.N
    one_minus = _group_combo(H, 0, 0, c1=1, cKKb=-1)
    for a in range(N):
        m = popcount(a)
        for k, v in H._m(f[m], _word(H, a, bar_first_left)).items():
            _acc(lhs, k, v)
        coef = _vscale_dict((-1) ** m, f[m])
        for l in range(1, n - m + 1):
            c = Fraction((-1) ** ((m + 1) // 2) * comb(n - m, l) * (-1) ** ((l + m) // 2) * 2 ** (l - 1))
            coef = _vadd_dict(coef, _vscale_dict(c, H._m(f[l + m], one_minus)))
        for k, v in H._m(coef, _word(H, a, not bar_first_left)).items():
            _acc(rhs, k, v)
    return _clean(lhs), _clean(rhs)


def _vscale_dict(c, x):
    return {k: v * c for k, v in x.items() if v}


def sum_by_length_check(n, f, H=None):
    """Check the conversion between sum_w f(|w|) wbar w and sums over w wbar.

    ``f`` maps each length 0..n to an Element (or sparse dict) of D(K_n).
    Checks the general identity, both special cases and the bar-swapped form.
    """
    if H is None:
        H = doubled_nichols(n, with_r=False)
    f = {m: (f[m].vec if isinstance(f[m], Element) else f[m]) for m in range(n + 1)}
    rep = Report(f"sum by length n={n}")
    lhs, rhs = _sum_by_length_sides(H, f, n)
    rep.add("general", lhs == rhs)

    N = H.word_basis.N
    plus = _group_combo(H, 0, 0, c1=1, cKKb=1)
    minus = _group_combo(H, 0, 0, c1=1, cKKb=-1)
    l1, r1 = {}, {}
    for a in range(N):
        m = popcount(a)
        fp = H._m(f[m], plus)
        for k, v in H._m(fp, _word(H, a, True)).items():
            _acc(l1, k, v)
        for k, v in H._m(_vscale_dict((-1) ** m, fp), _word(H, a, False)).items():
            _acc(r1, k, v)
    rep.add("special_plus", _clean(l1) == _clean(r1))

    l2, r2 = {}, {}
    for a in range(N):
        m = popcount(a)
        for k, v in H._m(H._m(f[m], minus), _word(H, a, True)).items():
            _acc(l2, k, v)
        coef = {}
        for l in range(0, n - m + 1):
            c = Fraction((-1) ** ((m + 1) // 2) * comb(n - m, l) * (-1) ** ((l + m) // 2) * 2 ** l)
            coef = _vadd_dict(coef, _vscale_dict(c, H._m(f[l + m], minus)))
        for k, v in H._m(coef, _word(H, a, False)).items():
            _acc(r2, k, v)
    rep.add("special_minus", _clean(l2) == _clean(r2))

    fs = {m: _swap_letters(H, f[m]) for m in f}
    lhs_s, rhs_s = _sum_by_length_sides(H, fs, n, bar_first_left=False)
    rep.add("bar_swapped", lhs_s == rhs_s)
    return rep


# -- small algebras --------------------------------------------------------

def sweedler_h4(level=DEFAULT_LEVEL):
    """H4 = K_1 with R = (1(x)1 + xi(x)K xi) 1/2 (1(x)1 + K(x)1 + 1(x)K - K(x)K) and ribbon 1.

    With the coproduct Delta(xi) = K(x)xi + xi(x)1 the nilpotent factor has to
    stand on the left; the opposite order fails both coproduct identities.
    """
    H = nichols(1, level)
    o = one(level)
    K, x = H.named["K"], H.named["xi1"]
    e = next(iter(H.unit_vec))
    half = scalar(Fraction(1, 2), level)
    A = {(e, e): half, (K, e): half, (e, K): half, (K, K): -half}
    B = {(e, e): o}
    for j, v in H._m({K: o}, {x: o}).items():
        B[(x, j)] = v
    H._r = H._tm(B, A)
    H._ribbon = dict(H.unit_vec)
    H.name = "H4"
    return H


def z2(level=DEFAULT_LEVEL):
    """F[Z2] with R = 1(x)1 and ribbon element g."""
    o = one(level)
    mult = [[((0, o),), ((1, o),)], [((1, o),), ((0, o),)]]
    comult = (((0, 0, o),), ((1, 1, o),))
    return HopfData(2, ["1", "g"], mult, {0: o}, comult, [o, o], [{0: o}, {1: o}],
                    level=level, r_matrix={(0, 0): o}, ribbon={1: o}, name="Z2",
                    generators=[1], catalog=True)


def trivial(level=DEFAULT_LEVEL):
    o = one(level)
    return HopfData(1, ["1"], [[((0, o),)]], {0: o}, (((0, 0, o),),), [o], [{0: o}],
                    level=level, r_matrix={(0, 0): o}, ribbon={0: o}, name="F",
                    generators=[], catalog=True)


# -- identification with the generic double ---------------------------------

def double_identification(n, D=None, DK=None):
    """Images of the basis of doubled_nichols(n) inside drinfeld_double(nichols(n)).

    On generators: K -> eps (x) K, xi_i -> eps (x) xi_i, Kbar -> (1* - K*) (x) 1
    and xibar_i -> (xi_i* + (K xi_i)*) (x) 1.  Returns a list of sparse columns.
    """
    from .hopf import drinfeld_double
    if D is None:
        D = drinfeld_double(nichols(n))
    if DK is None:
        DK = doubled_nichols(n, with_r=False)
    Kn = nichols(n)
    d = Kn.dim
    o = one(D.level)
    e1, eK = Kn.index("1"), Kn.index("K")
    eps = {p: o for p in (e1, eK)}

    def left(p_vec, i):
        return {p * d + i: c for p, c in p_vec.items()}

    img = {"K": left(eps, eK), "Kbar": {e1 * d + e1: o, eK * d + e1: -o}}
    for i in range(1, n + 1):
        x = Kn.index(f"xi{i}")
        kx = Kn.index(f"K*xi{i}")
        img[f"xi{i}"] = left(eps, x)
        img[f"xibar{i}"] = {x * d + e1: o, kx * d + e1: o}
    wb = DK.word_basis
    cols = []
    for k, l, a, b in wb.words:
        v = dict(D.unit_vec)
        names = (["K"] if k else []) + (["Kbar"] if l else [])
        names += [f"xi{i + 1}" for i in range(n) if a >> i & 1]
        names += [f"xibar{i + 1}" for i in range(n) if b >> i & 1]
        for nm in names:
            v = D._m(v, img[nm])
        cols.append(v)
    return cols


# -- lookup by short name ----------------------------------------------------

def by_name(name, level=DEFAULT_LEVEL):
    """Resolve ``k{n}``, ``dk{n}``, ``h4``, ``z2``, ``trivial`` and ``tilde:<name>``."""
    key = name.strip().lower()
    if key.startswith("tilde:"):
        from .ribbon_ext import ribbon_extension
        return ribbon_extension(by_name(key[6:], level))
    if key == "h4":
        return sweedler_h4(level)
    if key == "z2":
        return z2(level)
    if key in ("trivial", "f"):
        return trivial(level)
    if key.startswith("dk") and key[2:].isdigit():
        return doubled_nichols(int(key[2:]), level)
    if key.startswith("k") and key[1:].isdigit():
        return nichols(int(key[1:]), level)
    raise KeyError(f"unknown algebra {name!r}")


def dkn_module_catalog(n=1, ext=None):
    """The twelve named modules of the ribbon extension of D(K_n), n odd."""
    from .reps import dkn_modules
    return dkn_modules(n, ext)
