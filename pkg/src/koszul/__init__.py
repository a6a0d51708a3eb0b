"""Quadratic algebras over bound quivers, their duals, graded resolutions and
machine checks of Koszul duality at the level of Hom dimensions."""

from .algebra import Elem, GradedAlgebra
from .corpus import CORPUS, load
from .dsl import DSLError, format_presentation, parse_homogeneous, parse_presentation
from .linalg import Field, Matrix, Subspace
from .quiver import QuadraticPresentation, Quiver, quadratic_dual

__all__ = ["CORPUS", "DSLError", "Elem", "Field", "GradedAlgebra", "Matrix", "QuadraticPresentation", "Quiver",
           "Subspace", "format_presentation", "load", "parse_homogeneous", "parse_presentation", "quadratic_dual"]
__version__ = "0.1.0"
