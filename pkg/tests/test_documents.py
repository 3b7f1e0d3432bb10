import json

import pytest

from ribbonx.catalog import by_name
from ribbonx.documents import algebra_from_dict, algebra_to_dict, dumps, load_algebra
from ribbonx.errors import InvalidSpec
from ribbonx.hopf import verify_hopf_axioms
from ribbonx.ribbon_ext import ribbon_extension


@pytest.mark.parametrize("name", ["h4", "dk1", "z2", "trivial", "k2"])
def test_roundtrip_byte_identical(name):
    H = by_name(name)
    text = dumps(algebra_to_dict(H))
    back = algebra_from_dict(json.loads(text))
    assert dumps(algebra_to_dict(back)) == text
    assert verify_hopf_axioms(back).passed


def test_extension_document(ext1, tmp_path):
    doc = algebra_to_dict(ext1.extended, ext1.sidecar())
    assert doc["dim"] == 32 and "ribbon" in doc and "r_matrix" in doc
    p = tmp_path / "ext.json"
    p.write_text(dumps({"algebra": doc}))
    back = load_algebra(str(p))
    assert back.dim == 32 and back.ribbon is not None


def test_no_r_matrix_for_plain_nichols():
    doc = algebra_to_dict(by_name("k1"))
    assert "r_matrix" not in doc and "ribbon" not in doc


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("mult"),
    lambda d: d.update(level="x"),
    lambda d: d.update(counit=d["counit"][:-1]),
    lambda d: d["mult"].append([0, 0, 0, "z^^"]),
])
def test_malformed_documents(mutate):
    doc = algebra_to_dict(by_name("z2"))
    mutate(doc)
    with pytest.raises(InvalidSpec):
        algebra_from_dict(doc)


def test_level_carried():
    H = by_name("h4", level=16)
    back = algebra_from_dict(algebra_to_dict(H))
    assert back.level == 16


def test_sidecar_projection_parses(ext1):
    side = ext1.sidecar()
    assert side["embedding"][:2] == [[0, 0], [1, 1]]
    assert all(k in (0, 1) for _, k, _ in side["projection"])


def test_extension_of_loaded_algebra():
    H = algebra_from_dict(algebra_to_dict(by_name("h4")))
    assert ribbon_extension(H).extended.dim == 8
