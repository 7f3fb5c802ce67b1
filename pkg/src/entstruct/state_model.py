"""Pure states, density operators and particle index sets.

Particle labels are 1-based everywhere in the public API.  A state's
amplitude tensor has one axis per particle, in ascending label order, so
the lowest label is the slowest-varying index when the tensor is flattened.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

INPUT_NORM_TOL = 1e-6
NORM_TOL = 1e-9
DENSITY_TOL = 1e-9


class EntanglementError(ValueError):
    """Base class for every validation error raised by this package."""


class DimensionError(EntanglementError):
    pass


class NormalizationError(EntanglementError):
    pass


class DuplicateIndexError(EntanglementError):
    pass


class ShapeError(EntanglementError):
    pass


class HermiticityError(EntanglementError):
    pass


class TraceError(EntanglementError):
    pass


class PositivityError(EntanglementError):
    pass


class SubsetError(EntanglementError):
    pass


class OverlapError(EntanglementError):
    pass


class PartitionError(EntanglementError):
    pass


class ParticleError(EntanglementError):
    pass


class ProjectorError(EntanglementError):
    pass


@dataclass(frozen=True)
class ParticleSet:
    """Ordered set of particle labels together with their local dimensions."""

    indices: tuple[int, ...]
    dims: tuple[int, ...]

    def __post_init__(self):
        indices = tuple(int(i) for i in self.indices)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "dims", dims)
        if not indices:
            raise SubsetError("particle set must be nonempty")
        if len(indices) != len(dims):
            raise DimensionError(
                f"{len(indices)} labels but {len(dims)} dimensions given"
            )
        if any(i < 1 for i in indices):
            raise SubsetError(f"particle labels are 1-based, got {indices}")
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise SubsetError(f"labels must be strictly increasing, got {indices}")
        for label, d in zip(indices, dims):
            if d < 2:
                raise DimensionError(f"particle {label} has dimension {d}; need >= 2")

    @classmethod
    def range(cls, dims: Sequence[int]) -> "ParticleSet":
        return cls(tuple(range(1, len(dims) + 1)), tuple(dims))

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, label) -> bool:
        return label in self.indices

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64))

    def dim_of(self, label: int) -> int:
        return self.dims[self.position(label)]

    def position(self, label: int) -> int:
        """Axis of ``label`` within this set."""
        try:
            return self.indices.index(label)
        except ValueError:
            raise SubsetError(f"particle {label} not in {self.indices}") from None

    def subset(self, labels: Iterable[int]) -> "ParticleSet":
        """Return the subset named by ``labels`` (sorted, dims carried over)."""
        labels = sorted(set(int(i) for i in labels))
        if not labels:
            raise SubsetError("subset must be nonempty")
        missing = [i for i in labels if i not in self.indices]
        if missing:
            raise SubsetError(f"particles {missing} not in {self.indices}")
        return ParticleSet(tuple(labels), tuple(self.dim_of(i) for i in labels))

    def complement(self, other: "ParticleSet | Iterable[int]") -> "ParticleSet | None":
        drop = set(other)
        rest = [i for i in self.indices if i not in drop]
        return self.subset(rest) if rest else None

    def union(self, other: "ParticleSet") -> "ParticleSet":
        if set(self.indices) & set(other.indices):
            raise OverlapError(f"{self.indices} and {other.indices} overlap")
        pairs = sorted(zip(self.indices + other.indices, self.dims + other.dims))
        return ParticleSet(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.indices) + "}"


@dataclass(frozen=True)
class Bipartition:
    """Two disjoint nonempty particle sets.

    The set holding the smallest label is always stored as ``left``;
    arguments given the other way round are swapped on construction.
    """

    left: ParticleSet
    right: ParticleSet

    def __post_init__(self):
        if set(self.left.indices) & set(self.right.indices):
            raise PartitionError(
                f"cut sides overlap: {self.left.indices} | {self.right.indices}"
            )
        if self.right.indices[0] < self.left.indices[0]:
            left, right = self.right, self.left
            object.__setattr__(self, "left", left)
            object.__setattr__(self, "right", right)

    @property
    def whole(self) -> ParticleSet:
        return self.left.union(self.right)

    def __str__(self) -> str:
        return f"{self.left}|{self.right}"


def make_cut(particles: ParticleSet, left: Iterable[int],
             right: Iterable[int] | None = None) -> Bipartition:
    """Build a cut of ``particles``; ``right`` defaults to the complement of ``left``."""
    try:
        left_set = particles.subset(left)
        right_set = particles.complement(left_set) if right is None else particles.subset(right)
    except SubsetError as exc:
        raise PartitionError(f"invalid cut of {particles.indices}: {exc}") from None
    if right_set is None:
        raise PartitionError(f"{left_set} leaves nothing on the other side")
    cut = Bipartition(left_set, right_set)
    check_cut(cut, particles)
    return cut


def check_cut(cut: Bipartition, particles: ParticleSet) -> None:
    covered = sorted(cut.left.indices + cut.right.indices)
    if tuple(covered) != particles.indices:
        raise PartitionError(
            f"cut {cut} does not partition particles {particles.indices}"
        )
    for side in (cut.left, cut.right):
        for label, d in zip(side.indices, side.dims):
            if particles.dim_of(label) != d:
                raise DimensionError(
                    f"particle {label}: cut says dim {d}, system says {particles.dim_of(label)}"
                )


class PureState:
    """Normalized amplitude tensor over a labelled set of particles.

    Instances are immutable: the amplitude array is copied and marked
    read-only.
    """

    __slots__ = ("particles", "amplitudes")

    def __init__(self, particles: ParticleSet, amplitudes):
        amps = np.array(amplitudes, dtype=np.complex128)
        if amps.shape != particles.dims:
            if amps.size != particles.total_dim:
                raise ShapeError(
                    f"amplitudes of shape {amps.shape} do not match dims {particles.dims}"
                )
            amps = amps.reshape(particles.dims)
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise NormalizationError(f"squared norm is {norm_sq!r}, expected 1")
        amps.flags.writeable = False
        object.__setattr__(self, "particles", particles)
        object.__setattr__(self, "amplitudes", amps)

    def __setattr__(self, name, value):
        raise AttributeError("PureState is immutable")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.particles.dims

    @property
    def n_particles(self) -> int:
        return len(self.particles)

    @property
    def vector(self) -> np.ndarray:
        return self.amplitudes.reshape(-1)

    def entries(self, tol: float = 0.0) -> list[tuple[tuple[int, ...], complex]]:
        """Nonzero amplitudes as ``(multi_index, amplitude)`` in row-major order."""
        out = []
        for idx in zip(*np.nonzero(np.abs(self.amplitudes) > tol)):
            idx = tuple(int(i) for i in idx)
            out.append((idx, complex(self.amplitudes[idx])))
        return out

    def subset(self, labels: Iterable[int]) -> ParticleSet:
        return self.particles.subset(labels)

    def cut(self, left: Iterable[int], right: Iterable[int] | None = None) -> Bipartition:
        return make_cut(self.particles, left, right)

    def __repr__(self) -> str:
        return f"PureState(particles={self.particles.indices}, dims={self.dims})"


class DensityOperator:
    """Validated density matrix over an ordered particle set (immutable)."""

    __slots__ = ("particles", "matrix")

    def __init__(self, particles: ParticleSet, matrix: np.ndarray):
        m = np.array(matrix, dtype=np.complex128)
        m.flags.writeable = False
        object.__setattr__(self, "particles", particles)
        object.__setattr__(self, "matrix", m)

    def __setattr__(self, name, value):
        raise AttributeError("DensityOperator is immutable")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.particles.dims

    @property
    def tensor(self) -> np.ndarray:
        """Matrix reshaped to ``dims + dims`` (row axes first)."""
        return self.matrix.reshape(self.dims + self.dims)

    def __repr__(self) -> str:
        return f"DensityOperator(particles={self.particles.indices}, dims={self.dims})"


def build_pure_state(dims: Sequence[int],
                     entries: Iterable[tuple[Sequence[int], complex]],
                     normalize: bool = False) -> PureState:
    """Assemble a pure state from sparse ``(multi_index, amplitude)`` entries.

    Without ``normalize`` the input norm must already be 1 to within 1e-6;
    inputs inside that window but off by more than 1e-9 are rescaled.
    """
    particles = ParticleSet.range(dims)
    amps = np.zeros(particles.dims, dtype=np.complex128)
    seen = set()
    for n, (idx, value) in enumerate(entries):
        idx = tuple(int(i) for i in idx)
        if len(idx) != len(particles.dims):
            raise DimensionError(
                f"entry {n}: index {idx} has {len(idx)} components, expected {len(particles.dims)}"
            )
        for axis, (i, d) in enumerate(zip(idx, particles.dims)):
            if not 0 <= i < d:
                raise DimensionError(
                    f"entry {n}: index {idx} out of bounds on particle {axis + 1} (dim {d})"
                )
        if idx in seen:
            raise DuplicateIndexError(f"entry {n}: index {idx} given twice")
        seen.add(idx)
        amps[idx] = complex(value)

    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise NormalizationError("state has no nonzero amplitude")
    if normalize:
        amps /= norm
    elif abs(norm - 1.0) > INPUT_NORM_TOL:
        raise NormalizationError(f"norm is {norm!r}; pass normalize=True to rescale")
    elif abs(norm * norm - 1.0) > NORM_TOL:
        amps /= norm
    return PureState(particles, amps)


def state_from_vector(dims: Sequence[int], vector, labels: Sequence[int] | None = None,
                      normalize: bool = False) -> PureState:
    """Dense counterpart of :func:`build_pure_state`."""
    if labels is None:
        particles = ParticleSet.range(dims)
    else:
        particles = ParticleSet(tuple(labels), tuple(dims))
    amps = np.array(vector, dtype=np.complex128).reshape(particles.dims)
    if normalize:
        norm = np.linalg.norm(amps)
        if norm == 0.0:
            raise NormalizationError("state has no nonzero amplitude")
        amps = amps / norm
    return PureState(particles, amps)


def density_diagnostics(matrix: np.ndarray, tol: float = DENSITY_TOL) -> list[str]:
    """Names and details of every density-operator invariant ``matrix`` breaks."""
    problems = []
    herm_dev = float(np.max(np.abs(matrix - matrix.conj().T))) if matrix.size else 0.0
    if herm_dev > tol:
        problems.append(f"hermiticity: max |M - M^H| = {herm_dev:.3g}")
    trace = complex(np.trace(matrix))
    if abs(trace - 1.0) > tol:
        problems.append(f"trace: tr M = {trace:.12g}")
    if herm_dev <= tol:
        lowest = float(np.linalg.eigvalsh((matrix + matrix.conj().T) / 2)[0])
        if lowest < -tol:
            problems.append(f"positivity: smallest eigenvalue {lowest:.3g}")
    return problems


def validate_density(matrix, particles: ParticleSet,
                     tol: float = DENSITY_TOL) -> DensityOperator:
    m = np.asarray(matrix, dtype=np.complex128)
    side = particles.total_dim
    if m.shape != (side, side):
        raise ShapeError(f"matrix shape {m.shape} does not match dims {particles.dims}")
    problems = density_diagnostics(m, tol)
    if problems:
        kind = problems[0].split(":", 1)[0]
        err = {"hermiticity": HermiticityError, "trace": TraceError,
               "positivity": PositivityError}[kind]
        raise err("invalid density operator: " + "; ".join(problems))
    return DensityOperator(particles, m)


def projector_of(state: PureState) -> DensityOperator:
    v = state.vector
    return validate_density(np.outer(v, v.conj()), state.particles)
