"""Dense kernels: partial trace, tensor products, Schmidt spectra, purity, entropy."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .state_model import (
    Bipartition,
    DensityOperator,
    OverlapError,
    ParticleSet,
    PureState,
    SubsetError,
    check_cut,
    validate_density,
)

SPECTRAL_TOL = 1e-9


@dataclass(frozen=True)
class SchmidtSpectrum:
    coefficients: tuple[float, ...]
    bipartition: Bipartition

    @property
    def rank(self) -> int:
        return len(self.coefficients)


def _resolve(particles: ParticleSet, keep) -> ParticleSet:
    if isinstance(keep, ParticleSet):
        sub = particles.subset(keep.indices)
        if sub.dims != keep.dims:
            raise SubsetError(f"dims {keep.dims} disagree with system dims {sub.dims}")
        return sub
    return particles.subset(keep)


def _split_axes(particles: ParticleSet, keep: ParticleSet) -> tuple[list[int], list[int]]:
    kept = [particles.position(i) for i in keep.indices]
    traced = [a for a in range(len(particles)) if a not in kept]
    return kept, traced


def _as_matrix(state: PureState, rows: ParticleSet) -> np.ndarray:
    """Amplitudes as a (dim rows) x (dim rest) matrix."""
    kept, traced = _split_axes(state.particles, rows)
    t = np.transpose(state.amplitudes, kept + traced)
    return t.reshape(rows.total_dim, -1)


def reduce(state: PureState, keep: ParticleSet | Iterable[int]) -> DensityOperator:
    """Reduced density operator of ``state`` on the particles in ``keep``."""
    keep = _resolve(state.particles, keep)
    m = _as_matrix(state, keep)
    rho = m @ m.conj().T
    return validate_density(rho, keep)


def reduce_density(rho: DensityOperator, keep: ParticleSet | Iterable[int]) -> DensityOperator:
    keep = _resolve(rho.particles, keep)
    kept, traced = _split_axes(rho.particles, keep)
    n = len(rho.particles)
    dk = keep.total_dim
    dt = rho.particles.total_dim // dk
    t = np.transpose(rho.tensor, kept + traced + [n + a for a in kept + traced])
    t = t.reshape(dk, dt, dk, dt)
    return validate_density(np.trace(t, axis1=1, axis2=3), keep)


def _merge_axes(a_particles: ParticleSet, b_particles: ParticleSet):
    if set(a_particles.indices) & set(b_particles.indices):
        raise OverlapError(
            f"particle sets {a_particles.indices} and {b_particles.indices} overlap"
        )
    union = a_particles.union(b_particles)
    order = a_particles.indices + b_particles.indices
    perm = [order.index(i) for i in union.indices]
    return union, perm


def tensor_product(a: DensityOperator, b: DensityOperator) -> DensityOperator:
    """``a ⊗ b`` with axes re-sorted by ascending particle label."""
    union, perm = _merge_axes(a.particles, b.particles)
    n = len(perm)
    dims = a.dims + b.dims
    t = np.kron(a.matrix, b.matrix).reshape(dims + dims)
    t = np.transpose(t, perm + [n + p for p in perm])
    d = union.total_dim
    return validate_density(t.reshape(d, d), union)


def tensor_pure(*states: PureState) -> PureState:
    """Tensor product of pure states on disjoint particle sets."""
    out = states[0]
    for other in states[1:]:
        union, perm = _merge_axes(out.particles, other.particles)
        t = np.multiply.outer(out.amplitudes, other.amplitudes)
        out = PureState(union, np.transpose(t, perm))
    return out


def schmidt(state: PureState, cut: Bipartition, tol: float = SPECTRAL_TOL) -> SchmidtSpectrum:
    """Schmidt coefficients across ``cut``, descending, dropping those below ``tol`` x max."""
    check_cut(cut, state.particles)
    s = np.linalg.svd(_as_matrix(state, cut.left), compute_uv=False)
    s = s[s > tol * s[0]]
    return SchmidtSpectrum(tuple(float(x) for x in s), cut)


def eigenvalues(rho: DensityOperator) -> np.ndarray:
    """Ascending eigenvalues of the (Hermitian) matrix."""
    return np.linalg.eigvalsh(rho.matrix)


def purity(rho: DensityOperator) -> float:
    return float(np.vdot(rho.matrix, rho.matrix).real)


def von_neumann_entropy(rho: DensityOperator, tol: float = SPECTRAL_TOL) -> float:
    """Entropy in bits. Eigenvalues are clamped to [0, 1]; those below ``tol`` x max are dropped."""
    lam = np.clip(eigenvalues(rho), 0.0, 1.0)
    lam = lam[lam > tol * lam.max()]
    lam = lam / lam.sum()
    return max(0.0, float(-np.sum(lam * np.log2(lam))))


def numerical_rank(rho: DensityOperator, tol: float = SPECTRAL_TOL) -> int:
    if tol <= 0:
        raise ValueError("tol must be positive")
    lam = eigenvalues(rho)
    return int(np.count_nonzero(lam > tol * lam.max()))
