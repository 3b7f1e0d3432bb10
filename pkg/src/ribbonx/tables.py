"""Reproduction tables: computed values side by side with expected ones.

Each builder returns a :class:`TableResult` whose report has one check per
compared cell, plus a markdown rendering that mirrors the published layout.
"""

from .catalog import doubled_nichols, drinfeld_closed_forms
from .hopf import (apply_antipode, casimir_like, drinfeld_element, drinfeld_inverse,
                   pivot_grouplike)
from .report import Report
from . import reps as R

SIMPLES = ["V1+", "V1-", "VKKbar+", "VKKbar-", "VK+", "VK-", "VKbar+", "VKbar-"]
COVERS = ["P1+", "P1-", "PKKbar+", "PKKbar-", "VK+", "VK-", "VKbar+", "VKbar-"]


class TableResult:
    def __init__(self, report, markdown, extra=None):
        self.report = report
        self.markdown_body = markdown
        self.extra = extra or {}

    @property
    def passed(self):
        return self.report.passed

    def to_dict(self):
        out = self.report.to_dict()
        out.update(self.extra)
        return out

    def markdown(self):
        verdict = "all checks pass" if self.passed else "MISMATCH"
        return f"## {self.report.title}\n\n{self.markdown_body}\nverdict: {verdict}\n"


def _grid(header, rows):
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


_cache = {}


def _modules(n=1):
    if ("mods", n) not in _cache:
        _cache[("mods", n)] = R.dkn_modules(n)
    return _cache[("mods", n)]


def _fusion(seed):
    key = ("fusion", seed)
    if key not in _cache:
        _cache[key] = R.fusion_table(_modules(1), seed)
    return _cache[key]


# -- Cartan matrix ---------------------------------------------------------------

def expected_cartan(n=1):
    c = 2 ** (2 * n - 1)
    top = [[c, 0, 0, c], [0, c, c, 0], [0, c, c, 0], [c, 0, 0, c]]
    out = [row + [0] * 4 for row in top]
    for i in range(4):
        out.append([0] * 4 + [1 if j == i else 0 for j in range(4)])
    return out


def cartan_n1(seed=R.DEFAULT_SEED):
    mods = _modules(1)
    Ht = mods["V1+"].parent
    res = R.cartan_matrix(Ht, seed, mods)
    rep = Report("Cartan matrix of the extension of D(K_1)")
    names, tops = res["pim_names"], res["top_names"]
    rep.add("pims_named", all(names) and sorted(names) == sorted(COVERS))
    rep.add("tops_named", all(tops) and sorted(tops) == sorted(SIMPLES))
    cover_of = dict(zip(tops, names))
    rep.add("cover_labels_consistent",
            all(cover_of.get(s) == p for s, p in zip(SIMPLES, COVERS)))
    pos_p = {nm: k for k, nm in enumerate(names)}
    pos_s = {nm: k for k, nm in enumerate(tops)}
    want = expected_cartan(1)
    rows = []
    for i, p in enumerate(COVERS):
        row = [p]
        for j, s in enumerate(SIMPLES):
            got = None
            if p in pos_p and s in pos_s:
                # column j is indexed by the cover of simple s
                got = res["matrix"][pos_p[p]][pos_s[s]]
            ok = got == want[i][j]
            rep.add(f"cell[{p},{s}]", ok, None if ok else f"{got} != {want[i][j]}")
            row.append(f"{got}" if ok else f"**{got}** (want {want[i][j]})")
        rows.append(row)
    rep.data["regular_multiplicities"] = dict(zip(names, res["multiplicities"]))
    rep.data["seed"] = seed
    md = _grid(["P \\ V"] + SIMPLES, rows)
    return TableResult(rep, md, {"matrix": [[r[k] for k in range(1, 9)] for r in rows]})


# -- fusion rules ----------------------------------------------------------------

def _st(s, t):
    return "+" if s == t else "-"


def _neg(s):
    return "-" if s == "+" else "+"


def fusion_rules(n=1):
    """(family, printed form, lhs pair, expected multiset) for every sign choice."""
    c = 2 ** (2 * n - 1)
    out = []
    for s in "+-":
        for t in "+-":
            st = _st(s, t)
            nst = _neg(st)
            nt = _neg(t)
            one_ = lambda name: ((name, 1),)
            out += [
                ("SS", "V1^s V1^t = V1^st", (f"V1{s}", f"V1{t}"), one_(f"V1{st}")),
                ("SS", "VKK^s VKK^t = V1^st", (f"VKKbar{s}", f"VKKbar{t}"), one_(f"V1{st}")),
                ("SS", "VKK^s V1^t = VKK^st", (f"VKKbar{s}", f"V1{t}"), one_(f"VKKbar{st}")),
                ("SMa", "VK^s V1^t = VK^st", (f"VK{s}", f"V1{t}"), one_(f"VK{st}")),
                ("SMa", "VKbar^s V1^t = VKbar^st", (f"VKbar{s}", f"V1{t}"), one_(f"VKbar{st}")),
                ("SMb", "VK^s VKK^t = VKbar^st (first copy)", (f"VK{s}", f"VKKbar{t}"),
                 one_(f"VKbar{st}")),
                ("SMb", "VK^s VKK^t = VKbar^st (second copy, printed identically)",
                 (f"VK{s}", f"VKKbar{t}"), one_(f"VKbar{st}")),
                ("SB", "V1^s P1^t = P1^st", (f"V1{s}", f"P1{t}"), one_(f"P1{st}")),
                ("SB", "VKK^s PKK^t = P1^st", (f"VKKbar{s}", f"PKKbar{t}"), one_(f"P1{st}")),
                ("SB", "VKK^s P1^t = PKK^st", (f"VKKbar{s}", f"P1{t}"), one_(f"PKKbar{st}")),
                ("SB", "V1^s PKK^t = PKK^st", (f"V1{s}", f"PKKbar{t}"), one_(f"PKKbar{st}")),
                ("MM", "VK^s VK^t = PKK^st", (f"VK{s}", f"VK{t}"), one_(f"PKKbar{st}")),
                ("MM", "VKbar^s VKbar^t = PKK^st", (f"VKbar{s}", f"VKbar{t}"), one_(f"PKKbar{st}")),
                ("MM", "VK^s VKbar^t = P1^st", (f"VK{s}", f"VKbar{t}"), one_(f"P1{st}")),
            ]
            mb = tuple(sorted([(f"VK{st}", c), (f"VKbar{nst}", c)]))
            out += [
                ("MB", "VK^s P1^t", (f"VK{s}", f"P1{t}"), mb),
                ("MB", "VK^s PKK^-t", (f"VK{s}", f"PKKbar{nt}"), mb),
                ("MB", "VKbar^s P1^-t", (f"VKbar{s}", f"P1{nt}"), mb),
                ("MB", "VKbar^s PKK^t", (f"VKbar{s}", f"PKKbar{t}"), mb),
            ]
            bb = tuple(sorted([(f"P1{st}", c), (f"PKKbar{nst}", c)]))
            out += [
                ("BB", "P1^s P1^t", (f"P1{s}", f"P1{t}"), bb),
                ("BB", "PKK^s PKK^t", (f"PKKbar{s}", f"PKKbar{t}"), bb),
                ("BB", "P1^s PKK^-t", (f"P1{s}", f"PKKbar{nt}"), bb),
            ]
    return out


def _fmt_ms(ms):
    return " + ".join(f"{m}{lab}" if m > 1 else lab for lab, m in ms) or "0"


def fusion_n1(seed=R.DEFAULT_SEED):
    table = _fusion(seed)
    ms = R.fusion_multisets(table)
    rep = Report("fusion rules of the extension of D(K_1)")
    rows = []
    for fam, text, (a, b), want in fusion_rules(1):
        got = ms[(a, b)]
        ok = got == want
        rep.add(f"{fam}: {a} {b}", ok, None if ok else f"{_fmt_ms(got)} != {_fmt_ms(want)}")
        rows.append([fam, text, f"{a} x {b}", _fmt_ms(want), _fmt_ms(got), "match" if ok else "MISMATCH"])
    # the duplicated SMb line: record what the unprinted pairing actually gives
    unprinted = {f"VKbar{s} x VKKbar{t}": _fmt_ms(ms[(f"VKbar{s}", f"VKKbar{t}")])
                 for s in "+-" for t in "+-"}
    rep.data["smb_duplicate_line"] = True
    rep.data["computed_VKbar_times_VKKbar"] = unprinted
    rep.note("SMb is printed twice with identical content; both copies are checked as printed "
             "and the VKbar x VKKbar products are listed as computed data only")
    rep.data["seed"] = seed
    md = _grid(["family", "rule", "product", "expected", "computed", "verdict"], rows)
    md += "\nComputed VKbar^s x VKKbar^t (no printed rule):\n\n"
    md += _grid(["product", "computed"], sorted(unprinted.items()))
    full = [[a] + [_fmt_ms(ms[(a, b)]) for b in R.DKN_NAMES] for a in R.DKN_NAMES]
    md += "\nFull table:\n\n" + _grid(["x"] + R.DKN_NAMES, full)
    return TableResult(rep, md, {"table": {f"{a} x {b}": _fmt_ms(v) for (a, b), v in sorted(ms.items())}})


# -- Drinfeld closed forms ----------------------------------------------------------

def drinfeld_forms(n):
    H = doubled_nichols(n)
    forms = drinfeld_closed_forms(n, H)
    u = drinfeld_element(H)
    machine = {
        "u": u,
        "u_inv": drinfeld_inverse(H),
        "S_u": apply_antipode(u),
        "uS_u": casimir_like(H),
        "uSu_inv": pivot_grouplike(H),
    }
    rep = Report(f"Drinfeld closed forms in D(K_{n})")
    rows = []
    for key in ("u", "u_inv", "S_u", "uS_u", "uSu_inv"):
        ok = forms[key] == machine[key]
        rep.add(key, ok)
        rows.append([key, _fmt_el(forms[key]), _fmt_el(machine[key]), "match" if ok else "MISMATCH"])
    rep.add("u_times_u_inv", u * machine["u_inv"] == H.one())
    rep.data["S_u_equals_u"] = forms["S_u"] == forms["u"]
    md = _grid(["element", "closed form", "computed", "verdict"], rows)
    return TableResult(rep, md)


def _fmt_el(x):
    terms = x.to_strings()
    parts = [f"({c})*{lab}" if lab != "1" else f"({c})" for lab, c in sorted(terms.items())]
    return " + ".join(parts) or "0"


# -- Muger centre ----------------------------------------------------------------

def muger_n1():
    mods = _modules(1)
    reg = R.regular_module(mods["V1+"].parent)
    rep = Report("Muger-central catalog modules of the extension of D(K_1)")
    rows = []
    for name in R.DKN_NAMES:
        got = R.muger_central(mods[name], reg)
        want = name in ("V1+", "V1-")
        ok = got == want
        rep.add(name, ok)
        rows.append([name, want, got, "match" if ok else "MISMATCH"])
    rep.data["twist_V1-"] = [[str(x) for x in row] for row in R.twist(mods["V1-"])]
    md = _grid(["module", "expected central", "computed central", "verdict"], rows)
    return TableResult(rep, md)


# -- non-Deligne -----------------------------------------------------------------

def deligne_n1(seed=R.DEFAULT_SEED):
    mods = _modules(1)
    rep, _, _ = R.deligne_distinguisher(1, seed, mods)
    sanity = R.deligne_sanity_even(seed)
    rep.extend(sanity, "n2_simples.")
    rep.data["n2_simples_search_space"] = sanity.data["search_space"]
    rep.data["n2_simples_matches"] = sanity.data["matches"]
    rows = [["n=1, 2-dim simples and covers", rep.data["search_space"], rep.data["matches"], 0],
            ["n=2, 1-dim simples", sanity.data["search_space"], sanity.data["matches"], ">= 1"]]
    md = _grid(["search", "bijections tried", "fusion-preserving", "expected"], rows)
    return TableResult(rep, md)


# -- presentation ----------------------------------------------------------------

def presentation_n1():
    from .ribbon_ext import presentation_crosscheck_dkn
    rep, _ = presentation_crosscheck_dkn(1)
    rows = [[c.name, "pass" if c.passed else "FAIL"] for c in rep.checks]
    md = _grid(["relation", "result"], rows)
    return TableResult(rep, md)


# -- pipeline demo ---------------------------------------------------------------

def pipeline_demo():
    """H4 through the whole chain: axioms, extension, both decompositions, modules."""
    from .catalog import sweedler_h4
    from .ribbon_ext import (check_integrals_transfer, double_of_extension_demo,
                             extension_report, ribbon_extension, ribbon_tensor_decomposition,
                             sommerhauser_decomposition)
    H = sweedler_h4()
    ext = ribbon_extension(H)
    rep = Report("pipeline demo")
    rep.extend(extension_report(ext), "extension.")
    rep.extend(check_integrals_transfer(ext), "integrals.")
    _, _, som = sommerhauser_decomposition(H)
    rep.extend(som, "sommerhauser.")
    rep.extend(ribbon_tensor_decomposition(H), "tensor.")
    rep.extend(double_of_extension_demo(), "double_of_extension.")
    triv = R.ModuleData(H, 1, [[[c]] for c in H.counit_vec], name="V1")
    plus, minus = R.lift_module(triv, ext)
    rep.add("trivial_lifts_distinct", not R.hom_space(plus, minus))
    rows = [[c.name, "pass" if c.passed else "FAIL"] for c in rep.checks]
    return TableResult(rep, _grid(["step", "result"], rows))


TABLES = {
    "cartan-n1": lambda seed: cartan_n1(seed),
    "fusion-n1": lambda seed: fusion_n1(seed),
    "drinfeld-forms-n1": lambda seed: drinfeld_forms(1),
    "drinfeld-forms-n2": lambda seed: drinfeld_forms(2),
    "muger-n1": lambda seed: muger_n1(),
    "deligne-n1": lambda seed: deligne_n1(seed),
    "presentation-n1": lambda seed: presentation_n1(),
    "pipeline-demo": lambda seed: pipeline_demo(),
}
