"""Reference states for three-particle entanglement structure.

``state_star`` is a three-particle state on four-level particles that is
completely entangled although particles 1 and 3 are not entangled with
each other.  ``state_double_star`` is the same state written with a
position (R/L) and a spin (up/down) degree of freedom per particle.
``state_ghz_positions`` attaches a definite location to each particle of
a spin GHZ state.
"""

from __future__ import annotations

import numpy as np

from .state_model import ParticleSet, PureState, build_pure_state

R, L = 0, 1
UP, DOWN = 0, 1
A, B, C = 0, 1, 2


class SpinPositionEncoding:
    """Bijection between levels 0..3 and (position, spin): 0=R↑, 1=R↓, 2=L↑, 3=L↓."""

    pairs = {0: (R, UP), 1: (R, DOWN), 2: (L, UP), 3: (L, DOWN)}
    labels = {v: k for k, v in pairs.items()}

    @classmethod
    def level(cls, position: int, spin: int) -> int:
        return cls.labels[(position, spin)]

    @classmethod
    def pair(cls, level: int) -> tuple[int, int]:
        return cls.pairs[level]

    @classmethod
    def encode(cls, split: np.ndarray) -> np.ndarray:
        """(pos1, spin1, ..., posN, spinN) tensor -> one 4-level axis per particle."""
        n = split.ndim // 2
        out = np.zeros((4,) * n, dtype=np.complex128)
        for levels in np.ndindex(*out.shape):
            idx = tuple(x for lv in levels for x in cls.pairs[lv])
            out[levels] = split[idx]
        return out

    @classmethod
    def decode(cls, state: PureState) -> np.ndarray:
        n = state.n_particles
        out = np.zeros((2,) * (2 * n), dtype=np.complex128)
        for levels in np.ndindex(*state.dims):
            idx = tuple(x for lv in levels for x in cls.pairs[lv])
            out[idx] = state.amplitudes[levels]
        return out

    @classmethod
    def spin_levels(cls, spin: int) -> list[int]:
        return [lv for lv, (_, s) in cls.pairs.items() if s == spin]

    @classmethod
    def position_levels(cls, position: int) -> list[int]:
        return [lv for lv, (p, _) in cls.pairs.items() if p == position]


def state_star() -> PureState:
    half = 0.5
    return build_pure_state(
        [4, 4, 4],
        [((0, 1, 2), half), ((0, 3, 0), half), ((1, 0, 2), half), ((1, 2, 0), half)],
    )


def _ket(dim: int, level: int) -> np.ndarray:
    v = np.zeros(dim)
    v[level] = 1.0
    return v


def state_double_star() -> PureState:
    """|R>_1 (|↑>_1|↓>_2 + |↓>_1|↑>_2)(|R>_2|L>_3 + |L>_2|R>_3)|↑>_3, normalized."""
    spins12 = (np.multiply.outer(_ket(2, UP), _ket(2, DOWN))
               + np.multiply.outer(_ket(2, DOWN), _ket(2, UP)))
    pos23 = (np.multiply.outer(_ket(2, R), _ket(2, L))
             + np.multiply.outer(_ket(2, L), _ket(2, R)))
    # output axes: pos1, spin1, pos2, spin2, pos3, spin3
    t = np.einsum("a,bc,de,f->abdcef", _ket(2, R), spins12, pos23, _ket(2, UP))
    t = t / 2.0
    return PureState(ParticleSet.range([4, 4, 4]), SpinPositionEncoding.encode(t))


def state_ghz_positions() -> PureState:
    """(|↑↑↑> + |↓↓↓>)|A>_1|B>_2|C>_3 with each particle spin(2) ⊗ position(3)."""
    amp = 1 / np.sqrt(2)

    def lv(spin, pos):
        return 3 * spin + pos

    return build_pure_state(
        [6, 6, 6],
        [((lv(UP, A), lv(UP, B), lv(UP, C)), amp),
         ((lv(DOWN, A), lv(DOWN, B), lv(DOWN, C)), amp)],
    )


FIXTURES = {
    "star": state_star,
    "double-star": state_double_star,
    "ghz-positions": state_ghz_positions,
}


def fixture(name: str) -> PureState:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None
