import json
import os
import subprocess
import sys

import pytest

from ribbonx import BACKEND
from ribbonx.field import format_scalar

PROBE = r"""
import json
from ribbonx import BACKEND, reps as R
from ribbonx.catalog import doubled_nichols
from ribbonx.documents import algebra_to_dict, dumps
from ribbonx.field import format_scalar, parse_scalar
from ribbonx.hopf import drinfeld_element
from ribbonx.ribbon_ext import ribbon_extension

H = doubled_nichols(1)
ext = ribbon_extension(H)
mods = R.dkn_modules(1, ext)
x = parse_scalar("1/3 - 2/5*z + z^3")
out = {
    "backend": BACKEND,
    "field": [format_scalar(x * x), format_scalar(x.inverse()), format_scalar(x ** 5)],
    "u": drinfeld_element(H).to_strings(),
    "ext": dumps(algebra_to_dict(ext.extended)),
    "fusion": sorted([list(k), list(v)] for k, v in
                     R.fusion_multisets(R.fusion_table(mods, pairs=[("P1+", "VK-"), ("VK+", "VKbar-")])).items()),
}
print(json.dumps(out, sort_keys=True))
"""


def probe(pure):
    env = dict(os.environ)
    env.pop("RIBBONX_PURE_PYTHON", None)
    if pure:
        env["RIBBONX_PURE_PYTHON"] = "1"
    res = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True,
                         text=True, check=True)
    return json.loads(res.stdout)


def test_pure_python_selected_by_env():
    assert probe(True)["backend"] == "python"


@pytest.mark.skipif(BACKEND != "compiled", reason="compiled kernel not built")
def test_backends_agree():
    a, b = probe(False), probe(True)
    assert a.pop("backend") == "compiled" and b.pop("backend") == "python"
    assert a == b


def test_both_kernels_importable():
    from ribbonx import _core_py
    x = _core_py.CycloScalar(8, [1, 2])
    assert format_scalar(x) == _core_py.format_scalar(x) == "1 + 2*z"
