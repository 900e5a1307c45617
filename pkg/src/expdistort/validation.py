"""Input checks shared by the estimators and the CLI."""

from .exceptions import DimensionMismatch, ValidationError
from .io import LieGroupModel, load_model
from .linalg import Subspace
from .matrix_group import GroupElement


def check_model(model, require_rep=False):
    """Accept a :class:`LieGroupModel`, a fixture name or a path."""
    if isinstance(model, (str, bytes)) or hasattr(model, "__fspath__"):
        model = load_model(model)
    if not isinstance(model, LieGroupModel):
        raise ValidationError(f"expected a LieGroupModel, got {type(model).__name__}")
    if require_rep and model.rep is None:
        raise ValidationError("model has no representation")
    return model


def check_subspace(model, sub):
    """A named subgroup or an explicit :class:`Subspace` of the model's algebra."""
    if isinstance(sub, str):
        return model.subgroup(sub)
    if isinstance(sub, Subspace):
        if sub.n != model.algebra.dim:
            raise DimensionMismatch(f"subspace of C^{sub.n} for a {model.algebra.dim}-dim algebra")
        return sub
    return Subspace(model.algebra.dim, sub)


def check_elements(elements, rep):
    elements = list(elements)
    for g in elements:
        if not isinstance(g, GroupElement):
            raise ValidationError(f"expected GroupElement, got {type(g).__name__}")
        if g.degree != rep.degree:
            raise DimensionMismatch(f"element of degree {g.degree} for a degree-{rep.degree} rep")
    return elements


def check_is_fitted(est, attr):
    if not hasattr(est, attr):
        raise ValidationError(f"{type(est).__name__} is not fitted; call fit first")
