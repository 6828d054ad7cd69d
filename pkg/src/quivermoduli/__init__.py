"""Exact-arithmetic toolkit for modules over finite-dimensional path algebras."""

__version__ = "0.1.0"

from .errors import (
    BadRelation,
    DimensionMismatch,
    DocumentError,
    DomainError,
    EquationsViolated,
    FieldNotFinite,
    IdealNotGraded,
    NotAdmissible,
    NotInvertible,
    NotNilpotentDirection,
    NotOnChart,
    NotSubmodule,
    NotSumOfLocals,
    SearchTooLarge,
    ShapeMismatch,
    SingularBlock,
    TopMismatch,
    TypeMismatch,
    Unknown,
    UnknownLabel,
    UnsupportedAlgebra,
)
from .fields import QQ, Field, parse_field_name
from .quiver import Arrow, Element, PathWord, Quiver, idempotent, make_quiver, path_from_labels
from .algebra import Algebra, build_algebra

__all__ = [
    "Algebra",
    "Arrow",
    "BadRelation",
    "DimensionMismatch",
    "DocumentError",
    "DomainError",
    "Element",
    "EquationsViolated",
    "Field",
    "FieldNotFinite",
    "IdealNotGraded",
    "NotAdmissible",
    "NotInvertible",
    "NotNilpotentDirection",
    "NotOnChart",
    "NotSubmodule",
    "NotSumOfLocals",
    "PathWord",
    "QQ",
    "Quiver",
    "SearchTooLarge",
    "ShapeMismatch",
    "SingularBlock",
    "TopMismatch",
    "TypeMismatch",
    "Unknown",
    "UnknownLabel",
    "UnsupportedAlgebra",
    "build_algebra",
    "idempotent",
    "make_quiver",
    "parse_field_name",
    "path_from_labels",
]
