"""JSON documents for algebras and modules.

Algebra documents hold sparse structure constants with scalars in canonical
string form; entries are sorted so equal algebras serialize byte-identically.
"""

import json

from .errors import InvalidSpec
from .field import format_scalar, parse_scalar
from .hopf import HopfData

FORMAT_VERSION = 1


def _dense(vec, dim):
    return [format_scalar(vec[i]) if vec.get(i) else "0" for i in range(dim)]


def algebra_to_dict(H, sidecar=None):
    mult = sorted([i, j, k, format_scalar(c)]
                  for i in range(H.dim) for j in range(H.dim) for k, c in H.mult_table[i][j])
    comult = sorted([i, j, k, format_scalar(c)]
                    for i in range(H.dim) for j, k, c in H.comult_table[i])
    anti = sorted([i, k, format_scalar(c)]
                  for i, col in enumerate(H.antipode_cols) for k, c in col.items())
    doc = {
        "format": FORMAT_VERSION,
        "name": H.name,
        "level": H.level,
        "dim": H.dim,
        "labels": list(H.labels),
        "mult": mult,
        "unit": _dense(H.unit_vec, H.dim),
        "comult": comult,
        "counit": [format_scalar(c) if c else "0" for c in H.counit_vec],
        "antipode": anti,
    }
    if H.has_r():
        doc["r_matrix"] = sorted([i, j, format_scalar(c)] for (i, j), c in H.r_matrix.coeffs.items())
    if H.ribbon is not None:
        doc["ribbon"] = _dense(H.ribbon.vec, H.dim)
    if sidecar is not None:
        doc["sidecar"] = sidecar
    return doc


def dumps(doc):
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def algebra_from_dict(doc):
    """Inverse of :func:`algebra_to_dict`; also accepts a CLI output wrapping one under ``algebra``."""
    if isinstance(doc, dict) and "mult" not in doc and isinstance(doc.get("algebra"), dict):
        doc = doc["algebra"]
    try:
        lv = int(doc["level"])
        dim = int(doc["dim"])
        labels = list(doc.get("labels") or [f"b{i}" for i in range(dim)])
        p = lambda t: parse_scalar(t, lv)
        mult = {}
        for i, j, k, c in doc["mult"]:
            mult.setdefault((i, j), []).append((k, p(c)))
        comult = {}
        for i, j, k, c in doc["comult"]:
            comult.setdefault(i, []).append((j, k, p(c)))
        unit = {i: p(c) for i, c in enumerate(doc["unit"]) if c != "0"}
        counit = [p(c) for c in doc["counit"]]
        anti = [{} for _ in range(dim)]
        for i, k, c in doc["antipode"]:
            anti[i][k] = p(c)
        r = None
        if doc.get("r_matrix") is not None:
            r = {(i, j): p(c) for i, j, c in doc["r_matrix"]}
        ribbon = None
        if doc.get("ribbon") is not None:
            ribbon = {i: p(c) for i, c in enumerate(doc["ribbon"]) if c != "0"}
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSpec(f"malformed algebra document: {exc}") from None
    if len(labels) != dim or len(counit) != dim:
        raise InvalidSpec("label or counit length does not match dim")
    return HopfData.from_sparse(dim, labels, mult, unit, comult, counit, anti, level=lv,
                                r_matrix=r, ribbon=ribbon, name=doc.get("name") or "json")


def load_algebra(path):
    with open(path) as fh:
        return algebra_from_dict(json.load(fh))
