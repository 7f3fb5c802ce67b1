"""Projective measurement on a single particle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .state_model import ParticleError, ProjectorError, PureState

PROJECTOR_TOL = 1e-9
ZERO_PROBABILITY = 1e-12


@dataclass(frozen=True, eq=False)
class Projector:
    particle: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ProjectorError(f"projector must be square, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > PROJECTOR_TOL:
            raise ProjectorError("projector is not Hermitian")
        if np.max(np.abs(m @ m - m)) > PROJECTOR_TOL:
            raise ProjectorError("projector is not idempotent")
        if abs(np.trace(m).real) < 0.5:
            raise ProjectorError("projector has rank 0")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def rank(self) -> int:
        return int(round(np.trace(self.matrix).real))


def basis_projector(particle: int, dim: int, levels: Sequence[int]) -> Projector:
    """Projector onto the span of the given basis levels of one particle."""
    m = np.zeros((dim, dim), dtype=np.complex128)
    for level in levels:
        if not 0 <= level < dim:
            raise ProjectorError(f"basis level {level} out of range for dimension {dim}")
        m[level, level] = 1.0
    return Projector(particle, m)


def vector_projector(particle: int, vector) -> Projector:
    """Rank-one projector onto the normalized ``vector``."""
    v = np.asarray(vector, dtype=np.complex128)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ProjectorError("cannot project onto the zero vector")
    v = v / norm
    return Projector(particle, np.outer(v, v.conj()))


def complete_basis_measurement(particle: int, dim: int) -> list[Projector]:
    return [basis_projector(particle, dim, [level]) for level in range(dim)]


def project(state: PureState, p: Projector) -> tuple[float, PureState | None]:
    """Apply ``p`` to its particle; returns (probability, renormalized post-state or None)."""
    if p.particle not in state.particles:
        raise ParticleError(f"particle {p.particle} not in {state.particles.indices}")
    axis = state.particles.position(p.particle)
    d = state.dims[axis]
    if p.matrix.shape != (d, d):
        raise ProjectorError(
            f"projector is {p.matrix.shape[0]}-dimensional, particle {p.particle} has dim {d}"
        )
    out = np.tensordot(p.matrix, state.amplitudes, axes=([1], [axis]))
    out = np.moveaxis(out, 0, axis)
    prob = float(np.vdot(out, out).real)
    if prob <= ZERO_PROBABILITY:
        return prob, None
    return prob, PureState(state.particles, out / np.sqrt(prob))
