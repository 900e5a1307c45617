import json
from importlib import resources

import pytest

from expdistort.catalog import builders
from expdistort.exceptions import JacobiViolation, ParseError
from expdistort.io import fixture_names, load_model, model_from_dict


def test_fixtures_match_builders():
    assert sorted(builders()) == fixture_names()
    for name, build in builders().items():
        text = (resources.files("expdistort") / "fixtures" / f"{name}.json").read_text()
        assert json.loads(text) == build()


@pytest.mark.parametrize("name", fixture_names())
def test_fixture_validates(models, name):
    assert models(name).validate(require_rep=True)


def test_parse_error_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n "dim": 2,\n "brackets": {,}\n}\n')
    with pytest.raises(ParseError) as exc:
        load_model(p)
    assert exc.value.line == 3


def test_digest_is_stable():
    assert load_model("heisenberg3").digest == load_model("heisenberg3").digest
    assert load_model("heisenberg3").digest != load_model("affine2").digest


def test_jacobi_failure_in_model():
    data = {"dim": 3, "brackets": {"0,1": {"2": 1}, "1,2": {"0": 1}, "0,2": {"0": 1}}}
    with pytest.raises(JacobiViolation):
        model_from_dict(data).validate()


def test_bad_vector_length():
    data = {"dim": 2, "brackets": {}, "subgroups": {"N": [[1, 0, 0]]}}
    with pytest.raises(ParseError):
        model_from_dict(data)
