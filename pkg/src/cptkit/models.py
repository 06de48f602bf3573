"""Built-in parametric Hamiltonian families with closed-form spectral oracles.

The basic cell is the 2x2 family

    H(r, s, theta) = [[r e^{i theta}, s], [s, r e^{-i theta}]]

with nonzero real parameters, PT-symmetric under the swap parity and
non-Hermitian for nonzero theta.  Its symmetry is unbroken exactly when the
breaking parameter |r/s * sin(theta)| is at most 1, with eigenvalues

    E_pm = r cos(theta) +- s cos(phi),   sin(phi) = r/s * sin(theta),

and broken otherwise with the conjugate pair

    E_pm = r cos(theta) +- i sqrt(r^2 sin^2(theta) - s^2).

phi is always taken on the principal arcsin branch, so cos(phi) >= 0 and the
closed-form normalization 1/sqrt(2 cos phi) stays real.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .composition import BlockSpec, direct_sum, tensor_pt_frames
from .errors import InvalidModel, SelfOrthogonal
from .frames import PTFrame, frame_from_involution, pair_swap_frame
from .linops import DEFAULT_TOL

TWO_BY_TWO = "2x2"
THREE_BY_THREE = "3x3"
FOUR_BY_FOUR = "4x4"
CHAIN = "chain"
TENSOR = "tensor"

FAMILIES = (TWO_BY_TWO, THREE_BY_THREE, FOUR_BY_FOUR, CHAIN, TENSOR)

_BLOCK_COUNT = {TWO_BY_TWO: 1, THREE_BY_THREE: 1, FOUR_BY_FOUR: 2, TENSOR: 2}


@dataclass(frozen=True)
class ModelSpec:
    """Parameters of a built-in family.

    ``blocks`` holds one (r, s, theta) triple per 2x2 cell; the 3x3 family
    additionally takes the decoupled level ``a``.  All parameters must be
    nonzero.
    """

    family: str
    blocks: tuple[tuple[float, float, float], ...]
    a: float | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "blocks", tuple(tuple(float(x) for x in b) for b in self.blocks)
        )
        if self.family not in FAMILIES:
            raise InvalidModel(f"unknown model family {self.family!r}; choose from {FAMILIES}")
        expected = _BLOCK_COUNT.get(self.family)
        if expected is not None and len(self.blocks) != expected:
            raise InvalidModel(
                f"family {self.family} takes {expected} (r, s, theta) block(s), got {len(self.blocks)}"
            )
        if self.family == CHAIN and not self.blocks:
            raise InvalidModel("chain needs at least one (r, s, theta) block")
        for i, (r, s, theta) in enumerate(self.blocks):
            if r == 0.0 or s == 0.0 or theta == 0.0:
                raise InvalidModel(f"block {i}: r, s, theta must all be nonzero")
        if self.family == THREE_BY_THREE:
            if self.a is None or self.a == 0.0:
                raise InvalidModel("the 3x3 family needs a nonzero decoupled level a")
        elif self.a is not None:
            raise InvalidModel(f"family {self.family} does not take an a parameter")


@dataclass(frozen=True)
class ClosedFormSpectrum:
    """Closed-form regime and eigenvalues of one 2x2 cell.

    ``phi`` is the principal-branch angle of the unbroken regime (None when
    broken).  ``degenerate`` flags the critical boundary where the two
    eigenvalues coincide and the eigenvectors coalesce.
    """

    regime: str
    phi: float | None
    eigenvalues: tuple[complex, complex]
    degenerate: bool = False


def _cell(r: float, s: float, theta: float) -> np.ndarray:
    return np.array(
        [[r * np.exp(1j * theta), s], [s, r * np.exp(-1j * theta)]], dtype=complex
    )


def build_model(spec: ModelSpec) -> tuple[np.ndarray, PTFrame]:
    """Materialize a model and its bundled PT-frame.

    Every output is PT-symmetric by construction and non-Hermitian for
    nonzero theta.
    """
    if spec.family == TWO_BY_TWO:
        return _cell(*spec.blocks[0]), pair_swap_frame(2)
    if spec.family == THREE_BY_THREE:
        r, s, theta = spec.blocks[0]
        h = np.zeros((3, 3), dtype=complex)
        h[:2, :2] = _cell(r, s, theta)
        h[2, 2] = spec.a
        p = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
        return h, frame_from_involution(p)
    if spec.family == FOUR_BY_FOUR:
        h = np.zeros((4, 4), dtype=complex)
        h[:2, :2] = _cell(*spec.blocks[0])
        h[2:, 2:] = _cell(*spec.blocks[1])
        return h, pair_swap_frame(4)
    if spec.family == CHAIN:
        blocks = [(_cell(*b), pair_swap_frame(2)) for b in spec.blocks]
        return direct_sum(BlockSpec(tuple(blocks)))
    # tensor
    frame = tensor_pt_frames(pair_swap_frame(2), pair_swap_frame(2))
    return np.kron(_cell(*spec.blocks[0]), _cell(*spec.blocks[1])), frame


def closed_form_spectrum(r: float, s: float, theta: float) -> ClosedFormSpectrum:
    """Closed-form eigenvalues of one 2x2 cell, used as the independent
    oracle against the numerical eigensolver.

    The critical boundary |r/s sin(theta)| = 1 is classified unbroken with
    the ``degenerate`` warning flag set; there E_+ = E_-.
    """
    if r == 0.0 or s == 0.0 or theta == 0.0:
        raise InvalidModel("r, s, theta must all be nonzero")
    x = (r / s) * np.sin(theta)
    base = r * np.cos(theta)
    if abs(x) <= 1.0:
        phi = float(np.arcsin(x))
        gap = s * np.cos(phi)
        return ClosedFormSpectrum(
            "unbroken",
            phi,
            (complex(base + gap), complex(base - gap)),
            degenerate=abs(abs(x) - 1.0) <= 1e-12,
        )
    imag = np.sqrt(r * r * np.sin(theta) ** 2 - s * s)
    return ClosedFormSpectrum(
        "broken", None, (complex(base, imag), complex(base, -imag))
    )


def closed_form_c(phi: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Closed-form C operator of the 2x2 family at angle phi:
    [[i tan(phi), sec(phi)], [sec(phi), -i tan(phi)]].

    Traceless, determinant -1, squares to the identity.  Fails at the
    exceptional point where cos(phi) vanishes.
    """
    phi = float(phi)
    if not abs(phi) < np.pi / 2:
        raise ValueError(f"phi must lie in (-pi/2, pi/2), got {phi}")
    c = np.cos(phi)
    if c <= tol:
        raise SelfOrthogonal(f"cos(phi) = {c:.3e} is below tolerance (exceptional point)")
    t = np.tan(phi)
    return np.array([[1j * t, 1.0 / c], [1.0 / c, -1j * t]], dtype=complex)
