"""Entanglement structure of a pure N-particle state.

The finest decomposition into mutually non-entangled blocks is found by
repeatedly splitting off factors across any cut with Schmidt number one.
Inside a completely entangled system, pockets of non-entanglement are
detected on reduced (generally mixed) states by comparing each reduced
operator against the product of its own marginals.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import linalg
from .state_model import (
    Bipartition,
    DensityOperator,
    EntanglementError,
    ParticleSet,
    PureState,
    SubsetError,
    check_cut,
    make_cut,
)

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class AnalysisTolerances:
    """Thresholds for Schmidt number, numerical rank and product-form tests."""

    schmidt_tol: float = DEFAULT_TOL
    rank_tol: float = DEFAULT_TOL
    product_tol: float = DEFAULT_TOL

    @classmethod
    def uniform(cls, tol: float) -> "AnalysisTolerances":
        return cls(tol, tol, tol)


def _tols(tol) -> AnalysisTolerances:
    if tol is None:
        return AnalysisTolerances()
    if isinstance(tol, AnalysisTolerances):
        return tol
    return AnalysisTolerances.uniform(float(tol))


class Category(enum.Enum):
    COMPLETELY_UNENTANGLED = "CompletelyUnentangled"
    INCOMPLETELY_ENTANGLED = "IncompletelyEntangled"
    COMPLETELY_ENTANGLED = "CompletelyEntangled"


@dataclass(frozen=True)
class ClassLabel:
    category: Category
    k: int

    def __str__(self) -> str:
        if self.category is Category.INCOMPLETELY_ENTANGLED:
            return f"{self.category.value}(k={self.k})"
        return self.category.value


class Partiality(enum.Enum):
    NON_ENTANGLED = "NonEntangled"
    PARTIAL = "Partial"
    TOTAL = "Total"


@dataclass(frozen=True)
class PartialityFlag:
    kind: Partiality
    rank: int
    full_dim: int


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks covering the system, each sorted, ordered by smallest label."""

    blocks: tuple[ParticleSet, ...]

    def __post_init__(self):
        blocks = tuple(sorted(self.blocks, key=lambda b: b.indices[0]))
        object.__setattr__(self, "blocks", blocks)
        labels = [i for b in blocks for i in b.indices]
        if len(labels) != len(set(labels)):
            raise EntanglementError(f"partition blocks overlap: {self.labels()}")

    @property
    def k(self) -> int:
        return len(self.blocks)

    def labels(self) -> tuple[tuple[int, ...], ...]:
        return tuple(b.indices for b in self.blocks)

    def __str__(self) -> str:
        return "{" + ", ".join(str(b) for b in self.blocks) + "}"


@dataclass(frozen=True)
class PairwiseGraph:
    """Undirected graph on particle labels; an edge means the pair's reduced state does not factorize."""

    labels: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def adjacency(self) -> np.ndarray:
        pos = {label: n for n, label in enumerate(self.labels)}
        adj = np.zeros((len(self.labels),) * 2, dtype=bool)
        for i, j in self.edges:
            adj[pos[i], pos[j]] = adj[pos[j], pos[i]] = True
        return adj

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def is_complete(self) -> bool:
        n = len(self.labels)
        return len(self.edges) == n * (n - 1) // 2

    def missing_edges(self) -> list[tuple[int, int]]:
        return [p for p in itertools.combinations(self.labels, 2) if p not in self.edges]


@dataclass(frozen=True)
class UtterWitness:
    """A subsystem whose reduced state factorizes across ``cut``.

    ``reason`` is ``"factorizing_subsystem"`` for a proper subsystem, or
    ``"not_completely_entangled"`` when the whole system already splits
    (then ``subsystem`` is the full particle set).
    """

    reason: str
    subsystem: tuple[int, ...]
    cut: tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class EntanglementReport:
    label: ClassLabel
    finest: Partition
    pairwise: PairwiseGraph
    partiality: dict[tuple[int, ...], PartialityFlag]
    utter: bool
    witness: UtterWitness | None
    tolerances: AnalysisTolerances
    diagnostics: dict[str, dict[tuple[int, ...], float]] = field(default_factory=dict)


def _as_cut(particles: ParticleSet, cut) -> Bipartition:
    if isinstance(cut, Bipartition):
        check_cut(cut, particles)
        return cut
    left, right = cut
    return make_cut(particles, left, right)


def iter_cuts(particles: ParticleSet) -> Iterator[Bipartition]:
    """All 2^(m-1) - 1 unordered cuts, left side holding the smallest label, lexicographic."""
    first, rest = particles.indices[0], particles.indices[1:]
    lefts = []
    for r in range(len(rest)):
        for combo in itertools.combinations(rest, r):
            lefts.append((first,) + combo)
    for left in sorted(lefts):
        yield make_cut(particles, left)


def is_product_bipartition(state: PureState, cut, tol=None) -> bool:
    t = _tols(tol)
    cut = _as_cut(state.particles, cut)
    return linalg.schmidt(state, cut, t.schmidt_tol).rank == 1


def factor_pure(state: PureState, cut, tol=None) -> tuple[PureState, PureState] | None:
    """Factors ``(left, right)`` with ``left ⊗ right == state`` up to phase, or None."""
    t = _tols(tol)
    cut = _as_cut(state.particles, cut)
    m = linalg._as_matrix(state, cut.left)
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    if np.count_nonzero(s > t.schmidt_tol * s[0]) != 1:
        return None
    # m == s[0] * outer(u[:, 0], vh[0]) and s[0] == 1 for a normalized product state
    left = u[:, 0] / np.linalg.norm(u[:, 0])
    right = vh[0, :] / np.linalg.norm(vh[0, :])
    return (PureState(cut.left, left.reshape(cut.left.dims)),
            PureState(cut.right, right.reshape(cut.right.dims)))


def _proper_subset(state: PureState, subset) -> ParticleSet:
    sub = linalg._resolve(state.particles, subset)
    if len(sub) == len(state.particles):
        raise SubsetError(f"{sub} is not a proper subset of {state.particles}")
    return sub


def is_rank_one_reduced(state: PureState, subset, tol=None) -> bool:
    t = _tols(tol)
    sub = _proper_subset(state, subset)
    return linalg.numerical_rank(linalg.reduce(state, sub), t.rank_tol) == 1


def finest_partition(state: PureState, tol=None,
                     rng: np.random.Generator | None = None) -> Partition:
    """Split ``state`` into blocks that cannot be factorized further.

    With ``rng`` the candidate cuts (and the order in which pending blocks
    are processed) are shuffled; the outcome does not depend on it.
    """
    t = _tols(tol)
    pending = [state]
    done = []
    while pending:
        if rng is not None and len(pending) > 1:
            pending.insert(0, pending.pop(int(rng.integers(len(pending)))))
        block = pending.pop(0)
        if len(block.particles) == 1:
            done.append(block.particles)
            continue
        cuts = list(iter_cuts(block.particles))
        if rng is not None:
            cuts = [cuts[i] for i in rng.permutation(len(cuts))]
        for cut in cuts:
            factors = factor_pure(block, cut, t)
            if factors is not None:
                pending.extend(factors)
                break
        else:
            done.append(block.particles)
    return Partition(tuple(done))


def label_for(k: int, n: int) -> ClassLabel:
    if k == n:
        return ClassLabel(Category.COMPLETELY_UNENTANGLED, k)
    if k == 1:
        return ClassLabel(Category.COMPLETELY_ENTANGLED, k)
    return ClassLabel(Category.INCOMPLETELY_ENTANGLED, k)


def classify(state: PureState, tol=None) -> ClassLabel:
    return label_for(finest_partition(state, tol).k, state.n_particles)


def is_product_density(rho: DensityOperator, cut, tol=None) -> bool:
    """True iff ``rho`` equals the tensor product of its two marginals across ``cut``."""
    t = _tols(tol)
    cut = _as_cut(rho.particles, cut)
    prod = linalg.tensor_product(linalg.reduce_density(rho, cut.left),
                                 linalg.reduce_density(rho, cut.right))
    return float(np.max(np.abs(rho.matrix - prod.matrix))) <= t.product_tol


def pairwise_graph(state: PureState, tol=None) -> PairwiseGraph:
    t = _tols(tol)
    labels = state.particles.indices
    if len(labels) < 2:
        raise EntanglementError("pairwise graph needs at least two particles")
    edges = []
    for i, j in itertools.combinations(labels, 2):
        rho = linalg.reduce(state, (i, j))
        if not is_product_density(rho, ((i,), (j,)), t):
            edges.append((i, j))
    return PairwiseGraph(labels, tuple(edges))


def _utter_candidates(labels: tuple[int, ...]) -> list[tuple[int, ...]]:
    n = len(labels)
    subs = [c for r in range(2, n) for c in itertools.combinations(labels, r)]
    return sorted(subs)


def is_utterly_entangled(state: PureState, tol=None,
                         finest: Partition | None = None) -> tuple[bool, UtterWitness | None]:
    """Complete entanglement with no factorizing reduced state on any proper subsystem.

    Subsystems are all label subsets of size 2..N-1, tried in lexicographic
    order together with their cuts, so the witness returned is the smallest
    factorizing (subsystem, cut) pair.
    """
    t = _tols(tol)
    labels = state.particles.indices
    if len(labels) < 2:
        raise EntanglementError("utter entanglement is undefined for fewer than two particles")
    if finest is None:
        finest = finest_partition(state, t)
    if finest.k > 1:
        first = finest.blocks[0]
        rest = state.particles.complement(first)
        return False, UtterWitness("not_completely_entangled", labels,
                                   (first.indices, rest.indices))
    for sub in _utter_candidates(labels):
        rho = linalg.reduce(state, sub)
        for cut in iter_cuts(rho.particles):
            if is_product_density(rho, cut, t):
                return False, UtterWitness("factorizing_subsystem", sub,
                                           (cut.left.indices, cut.right.indices))
    return True, None


def partiality(state: PureState, subset, tol=None) -> PartialityFlag:
    t = _tols(tol)
    sub = _proper_subset(state, subset)
    r = linalg.numerical_rank(linalg.reduce(state, sub), t.rank_tol)
    d = sub.total_dim
    if r == 1:
        kind = Partiality.NON_ENTANGLED
    elif r < d:
        kind = Partiality.PARTIAL
    else:
        kind = Partiality.TOTAL
    return PartialityFlag(kind, r, d)


def full_report(state: PureState, tol=None) -> EntanglementReport:
    t = _tols(tol)
    labels = state.particles.indices
    n = len(labels)
    finest = finest_partition(state, t)
    label = label_for(finest.k, n)
    flags = {}
    purities = {}
    entropies = {}
    if n >= 2:
        graph = pairwise_graph(state, t)
        utter, witness = is_utterly_entangled(state, t, finest=finest)
        for i in labels:
            flags[(i,)] = partiality(state, (i,), t)
            rho = linalg.reduce(state, (i,))
            purities[(i,)] = linalg.purity(rho)
            entropies[(i,)] = linalg.von_neumann_entropy(rho, t.rank_tol)
    else:
        graph = PairwiseGraph(labels, ())
        utter, witness = False, None
    return EntanglementReport(
        label=label,
        finest=finest,
        pairwise=graph,
        partiality=flags,
        utter=utter,
        witness=witness,
        tolerances=t,
        diagnostics={"purity": purities, "entropy": entropies},
    )
