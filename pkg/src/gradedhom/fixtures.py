"""Named algebras used by the acceptance pipeline and the invariant suite."""

from __future__ import annotations

from .algebra import (GradedAlgebra, QuiverPresentation, build_algebra, exterior_presentation,
                      path_algebra, polynomial_presentation, preprojective_presentation, tensor_algebra,
                      trivial_extension_presentation)
from .exact_linalg import Field

DMAX, HMAX, KMAX, SEED = 8, 6, 6, 0
KRONECKER = [("a", 0, 1), ("b", 0, 1)]
A2 = [("a", 0, 1)]


def prime_field() -> Field:
    return Field.prime(101)


def presentations(field: Field) -> dict[str, QuiverPresentation]:
    """Presentations of the corpus members that are not tensor products."""
    return {
        "polynomial1": polynomial_presentation(1, field),
        "polynomial2": polynomial_presentation(2, field),
        "exterior1": exterior_presentation(1, field),
        "exterior2": exterior_presentation(2, field),
        "preprojective_A2": preprojective_presentation(2, A2, field),
        "trivext_A2": trivial_extension_presentation(2, A2, field),
        "trivext_kronecker": trivial_extension_presentation(2, KRONECKER, field),
        "preprojective_kronecker": preprojective_presentation(2, KRONECKER, field),
        "path_A2": QuiverPresentation(2, list(A2), [], field, "path_A2"),
    }


def build(name: str, field: Field, dmax: int = DMAX) -> GradedAlgebra:
    """One corpus algebra by name; tensor products are ``left(x)right``."""
    if "(x)" in name:
        left, right = name.split("(x)")
        alg = tensor_algebra(build(left, field, dmax), build(right, field, dmax))
        alg.name = name
        return alg
    if name == "path_A2":
        return path_algebra(2, A2, field, dmax, name)
    alg = build_algebra(presentations(field)[name], dmax)
    alg.name = name
    return alg


CORPUS = (
    "polynomial1", "polynomial2", "exterior1", "exterior2", "preprojective_A2", "trivext_A2",
    "trivext_kronecker", "path_A2",
    "exterior1(x)polynomial1", "exterior2(x)polynomial2", "trivext_kronecker(x)preprojective_kronecker",
    "trivext_A2(x)polynomial1",
)

EXAMPLE_ONE = {1: "exterior1(x)polynomial1", 2: "exterior2(x)polynomial2"}
EXAMPLE_TWO = "trivext_kronecker(x)preprojective_kronecker"


def corpus(field: Field, dmax: int = DMAX) -> dict[str, GradedAlgebra]:
    return {name: build(name, field, dmax) for name in CORPUS}


__all__ = ["DMAX", "HMAX", "KMAX", "SEED", "CORPUS", "EXAMPLE_ONE", "EXAMPLE_TWO", "build", "corpus",
           "presentations", "prime_field"]
