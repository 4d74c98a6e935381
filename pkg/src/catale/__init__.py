"""Finite categories, partial semigroups and catales, and finite locales."""
from ._report import Report, SearchBoundError, StructureError, Verdict
from .fincat import FinCategory, Functor, Splitting
from .psemi import PartialSemigroup, PsgHom
from .locales import FinSpace, MeetSemilattice
from .smallgen import fixture

__all__ = [
    "FinCategory", "Functor", "Splitting", "PartialSemigroup", "PsgHom",
    "FinSpace", "MeetSemilattice", "Report", "Verdict", "StructureError",
    "SearchBoundError", "fixture",
]
