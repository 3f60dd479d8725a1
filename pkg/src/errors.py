# src/errors.py
from __future__ import annotations

from typing import Optional, Sequence


class Z2LabError(RuntimeError):
    pass


class DimensionMismatch(Z2LabError, ValueError):
    pass


class AmbiguousKernel(Z2LabError):
    def __init__(self, msg: str, singular_values: Optional[Sequence[float]] = None, step: Optional[int] = None):
        super().__init__(msg if step is None else f"{msg} (step {step})")
        self.singular_values = list(singular_values) if singular_values is not None else []
        self.step = step


class Unstable(Z2LabError):
    def __init__(self, msg: str, parities: Optional[Sequence[int]] = None):
        super().__init__(msg)
        self.parities = list(parities) if parities is not None else []


class SymmetryViolation(Z2LabError):
    def __init__(self, msg: str, residual: Optional[float] = None):
        super().__init__(msg)
        self.residual = residual


class FluxMismatch(Z2LabError):
    pass


class CliffordViolation(Z2LabError):
    pass


class NotAdmissible(Z2LabError):
    def __init__(self, msg: str, node: Optional[int] = None, margin: Optional[float] = None):
        super().__init__(msg)
        self.node = node
        self.margin = margin


class SingularPotential(Z2LabError):
    def __init__(self, msg: str, node: Optional[int] = None):
        super().__init__(msg)
        self.node = node


class MismatchAtCut(Z2LabError):
    def __init__(self, msg: str, node: Optional[int] = None):
        super().__init__(msg)
        self.node = node


class NoGap(Z2LabError):
    pass


class NotInvertibleAtInfinity(Z2LabError):
    def __init__(self, msg: str, node: Optional[int] = None):
        super().__init__(msg)
        self.node = node


class UnknownExperiment(Z2LabError):
    pass


class InvalidParams(Z2LabError):
    pass
