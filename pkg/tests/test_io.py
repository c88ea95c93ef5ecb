import json

import pytest

from gph.errors import InputError
from gph.io import (algebra_from_json, algebra_to_json, dump_json, load_algebra, load_json, load_module,
                    module_from_json, module_to_json)
from gph.rep import is_isomorphic, regular
from gph.sampling import random_module
from conftest import DATA


def test_dump_is_deterministic_and_compact():
    data = {"b": [1, 2], "m": [["1", "0"], ["0", "1"]], "nested": {"x": [{"y": 1}]}}
    text = dump_json(data)
    assert text == dump_json(data)
    assert '"m": [["1", "0"], ["0", "1"]]' in text
    assert json.loads(text) == data


def test_algebra_roundtrip(square, lam_d4):
    for a in (square, lam_d4):
        back = algebra_from_json(json.loads(dump_json(algebra_to_json(a))))
        assert back == a and back.dim == a.dim


def test_module_roundtrip(lam_d4):
    import random
    rng = random.Random(0)
    for _ in range(5):
        m = random_module(lam_d4, rng, 8)
        back = module_from_json(json.loads(dump_json(module_to_json(m))))
        assert back.key() == m.key()


def test_b_over_a_files_load(lam_d4):
    x = load_module(DATA / "modules" / "d4_square" / "X06.json")
    assert x.algebra == lam_d4
    x.check()


def test_malformed_json_reports_line_and_column(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "kind": "algebra",\n  "vertices": [1, 2\n}\n')
    with pytest.raises(InputError, match=r"line 4 column 1"):
        load_json(p)


def test_missing_file(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        load_algebra(tmp_path / "nope.json")


@pytest.mark.parametrize("patch,needle", [
    ({"vertices": []}, "vertices"),
    ({"arrows": [{"name": "a", "source": "1"}]}, "arrows[0]"),
    ({"relations": [[{"path": ["zz", "zz"]}]]}, "relations[0][0].path"),
    ({"relations": [[{"path": ["alpha", "gamma"], "coef": "1/0"}]]}, "coef"),
    ({"field": {"kind": "Fp", "p": 4}}, "field"),
])
def test_algebra_field_diagnostics(patch, needle):
    d = json.loads((DATA / "algebras" / "square.json").read_text())
    d.update(patch)
    with pytest.raises(InputError) as err:
        algebra_from_json(d, where="square.json")
    assert needle in str(err.value)


@pytest.mark.parametrize("patch,needle", [
    ({"dims": {"o": -1}}, "dims['o']"),
    ({"dims": {"o": 2, "z": 1}}, "unknown vertices"),
    ({"matrices": {"x": [["0"]]}}, "expected shape"),
    ({"matrices": {"x": [["0", "0"], ["1", "0"]], "y": [["1"]]}}, "unknown arrows"),
    ({"matrices": {"x": [["1", "0"], ["0", "1"]]}}, "violates a relation"),
])
def test_module_field_diagnostics(kx, patch, needle):
    d = module_to_json(regular(kx))
    d.update(patch)
    with pytest.raises(InputError) as err:
        module_from_json(d)
    assert needle in str(err.value)


def test_module_with_external_algebra(kx, tmp_path):
    m = regular(kx)
    d = module_to_json(m, inline_algebra=False)
    d["algebra"] = str(DATA / "algebras" / "k_x2.json")
    p = tmp_path / "m.json"
    p.write_text(dump_json(d))
    assert is_isomorphic(load_module(p), m)
    with pytest.raises(InputError):
        module_from_json(module_to_json(m, inline_algebra=False))
