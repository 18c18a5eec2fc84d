# Copyright Contributors to the khoveq project.
# SPDX-License-Identifier: MIT

from typing import Optional


class KhovEqException(Exception):
    """Base class for all library exceptions."""


class DiagramParseException(KhovEqException):
    """Malformed diagram or tangle description."""

    def __init__(self, message: str, lineno: Optional[int] = None) -> None:
        super().__init__(message)
        self.message = message
        self.lineno = lineno

    def __str__(self) -> str:
        if self.lineno is None:
            return self.message
        return f"line {self.lineno}: {self.message}"


class GraphParseException(DiagramParseException):
    """Malformed graph description."""


class ResourceCapException(KhovEqException):
    """Input exceeds the configured size bound."""


class OrientationException(KhovEqException):
    """Diagram admits no consistent orientation."""


class ActionException(KhovEqException):
    """Permutation data does not define an automorphism of the required order."""


class EvenOrderException(ActionException):
    """Group of even order used without override."""


class EquivarianceException(KhovEqException):
    """Action does not commute with the differential."""


class SubspaceException(KhovEqException):
    """Subspace is not contained in the expected superspace."""


class FiltrationException(KhovEqException):
    """Linear map does not preserve cycles or boundaries."""


class ChainMapException(KhovEqException):
    """Complexes are incompatible with the requested chain map."""
