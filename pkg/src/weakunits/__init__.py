"""Weak units in finite strict semi-monoidal 2-categories."""

from .kernel import (
    Equation,
    TwoCategoryModel,
    check_equation,
    eval1,
    eval2,
    validate_model,
)

__version__ = "0.1.0"
