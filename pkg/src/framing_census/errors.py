"""Exception hierarchy shared by the library and the command-line front end."""

from __future__ import annotations


class FramingCensusError(Exception):
    """Base class for all errors raised by this package."""


class IllDefinedHomomorphism(FramingCensusError, ValueError):
    """An integer matrix does not descend to a homomorphism of the given groups."""


class ActionError(FramingCensusError, ValueError):
    """An action matrix does not preserve the relation lattice of a presentation."""


class NotAnIsometry(FramingCensusError, ValueError):
    """A matrix fails to preserve the bilinear form it was paired with."""


class UnsupportedCase(FramingCensusError):
    """The requested (n, g) combination is outside what the classification covers.

    ``citation`` names where the case is treated instead.
    """

    def __init__(self, message: str, citation: str = ""):
        super().__init__(message)
        self.citation = citation


class InputFormatError(FramingCensusError, ValueError):
    """A JSON document or command-line value could not be parsed."""
