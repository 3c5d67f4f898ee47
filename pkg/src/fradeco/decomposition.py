"""Frame decompositions ``T = sum_j lambda_j v_j^{(x)d}`` and their verification."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ShapeMismatch
from .funtf import Frame, format_frame, parse_frame_lines
from .tensor import SymTensor, synthesize


@dataclass(frozen=True)
class Decomposition:
    frame: Frame
    weights: np.ndarray = field(repr=False)
    fit_residual: float = 0.0
    complex_roots: bool = False
    condition: float | None = None

    def __post_init__(self):
        w = np.array(self.weights)
        if w.dtype != complex:
            w = w.astype(float)
        if w.shape != (self.frame.r,):
            raise ShapeMismatch(f"need {self.frame.r} weights, got shape {w.shape}")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def r(self) -> int:
        return self.frame.r

    def tensor(self, d: int) -> SymTensor:
        return synthesize(self.frame.V, self.weights, d)


@dataclass(frozen=True)
class VerificationReport:
    coord_residual: float
    frame_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.coord_residual <= self.tol and self.frame_residual <= self.tol


def verify_decomposition(T: SymTensor, dec: Decomposition, tol: float = 1e-8) -> VerificationReport:
    """Max-norm coordinate residual of the decomposition against T, plus the frame residual."""
    if dec.frame.n != T.n:
        raise ShapeMismatch(f"frame lives in R^{dec.frame.n}, tensor in R^{T.n}")
    S = dec.tensor(T.d)
    diff = np.asarray(S.coords, dtype=complex if dec.complex_roots else float) - np.asarray(
        T.coords, dtype=float
    )
    res = float(np.max(np.abs(diff))) if diff.size else 0.0
    return VerificationReport(res, float(dec.frame.residual), tol)


def format_decomposition(dec: Decomposition) -> str:
    w = " ".join(repr(float(x)) for x in np.real(dec.weights))
    return format_frame(dec.frame) + f"weights: {w}\nresidual: {dec.fit_residual!r}\n"


def parse_decomposition(text: str) -> Decomposition:
    frame, rest = parse_frame_lines(text.splitlines())
    weights = None
    residual = 0.0
    for ln in rest:
        key, _, val = ln.partition(":")
        key = key.strip()
        if key == "weights":
            weights = np.array([float(x) for x in val.split()])
        elif key == "residual":
            residual = float(val)
    if weights is None:
        raise ValueError("decomposition file lacks a 'weights:' line")
    return Decomposition(frame, weights, residual)


def write_decomposition(path, dec: Decomposition) -> None:
    Path(path).write_text(format_decomposition(dec))


def read_decomposition(path) -> Decomposition:
    return parse_decomposition(Path(path).read_text())
