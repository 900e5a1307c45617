"""Loading Lie group models from JSON (files or bundled fixtures)."""

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .decomposition import SemidirectData
from .exceptions import ParseError, ValidationError
from .lie import LieAlgebra
from .linalg import Subspace, exact_matrix
from .matrix_group import MatrixRep, validate_rep
from .radicals import validate_intermediate, validate_levi
from .scalars import parse_scalar


@dataclass
class LieGroupModel:
    """A parsed input: algebra, optional representation and named subgroups."""

    name: str
    algebra: LieAlgebra
    rep: object = None
    levi: Subspace = None
    subgroups: dict = field(default_factory=dict)
    semidirect: SemidirectData = None
    digest: str = ""

    def subgroup(self, name):
        try:
            return self.subgroups[name]
        except KeyError:
            raise ValidationError(f"unknown subgroup {name!r}; have {sorted(self.subgroups)}") from None

    def basis_index(self, name):
        try:
            return self.algebra.names.index(name)
        except ValueError:
            raise ValidationError(f"unknown basis element {name!r}") from None

    def validate(self, require_rep=False):
        self.algebra.validate()
        validate_levi(self.algebra, self.levi)
        if self.rep is not None:
            validate_rep(self.rep)
        elif require_rep:
            raise ValidationError("model has no representation")
        for sub in self.subgroups.values():
            self.algebra.require_ideal(sub)
        if self.semidirect is not None:
            self.semidirect.validate(self.algebra)
        return True

    def check_intermediate(self, name):
        validate_intermediate(self.algebra, self.subgroup(name), self.levi)
        return True


def fixture_names():
    files = resources.files("expdistort") / "fixtures"
    return sorted(p.name[:-5] for p in files.iterdir() if p.name.endswith(".json"))


def _read_source(source):
    p = Path(source)
    if p.exists():
        return p.read_text(), p.stem
    if source in fixture_names():
        text = (resources.files("expdistort") / "fixtures" / f"{source}.json").read_text()
        return text, source
    raise FileNotFoundError(f"no file or bundled fixture named {source!r}")


def load_model(source):
    """Load a model from a path or a bundled fixture name."""
    text, stem = _read_source(source)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    model = model_from_dict(data, default_name=stem)
    model.digest = hashlib.sha256(text.encode()).hexdigest()
    return model


def _vectors(rows, dim, what):
    out = []
    for r in rows:
        if len(r) != dim:
            raise ParseError(f"{what}: vector of length {len(r)} in dimension {dim}")
        out.append(tuple(parse_scalar(v) for v in r))
    return out


def model_from_dict(data, default_name="model"):
    try:
        dim = int(data["dim"])
    except (KeyError, TypeError, ValueError):
        raise ParseError("missing or invalid 'dim'") from None
    brackets = {}
    for key, row in (data.get("brackets") or {}).items():
        try:
            i, j = (int(s) for s in key.split(","))
        except ValueError:
            raise ParseError(f"bad bracket key {key!r}") from None
        brackets[(i, j)] = {int(k): parse_scalar(c) for k, c in row.items()}
    alg = LieAlgebra(dim, brackets, names=data.get("basis"))
    levi = Subspace(dim, _vectors(data.get("levi") or [], dim, "levi"))
    subgroups = {name: Subspace(dim, _vectors(rows, dim, f"subgroup {name}"))
                 for name, rows in (data.get("subgroups") or {}).items()}
    rep = None
    if data.get("rep") is not None:
        rd = data["rep"]
        mats = [exact_matrix([[parse_scalar(v) for v in row] for row in m]) for m in rd["matrices"]]
        rep = MatrixRep(alg, mats, faithful=rd.get("faithful"))
    semidirect = None
    if data.get("semidirect") is not None:
        sd = data["semidirect"]
        semidirect = SemidirectData(Subspace(dim, _vectors(sd["b"], dim, "semidirect b")),
                                    Subspace(dim, _vectors(sd["l"], dim, "semidirect l")))
    return LieGroupModel(data.get("name", default_name), alg, rep, levi, subgroups, semidirect)
