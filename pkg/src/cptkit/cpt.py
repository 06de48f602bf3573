"""Indefinite PT inner product, C-operator synthesis, CPT inner product and
adjoint, and Hermitization by similarity.

The synthesis takes an unbroken eigensystem, aligns and sign-normalizes its
eigenstates under the indefinite form (u, v) = <P u, v>, and materializes C
as the bilinear outer-product sum of the normalized states.  The sign of each
state is intrinsic, sign((phi, phi)); states are never reordered to force an
alternating pattern, and the resulting C is invariant under that labelling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CommutatorViolation,
    DimensionMismatch,
    GramDefect,
    KindMismatch,
    NotPTEigenstate,
    NotUnbroken,
    SelfOrthogonal,
)
from .frames import CPTFrame, PTFrame, checked_cpt_frame
from .linops import DEFAULT_TOL, Operator, as_matrix, as_vector, fnorm, hermitian_power
from .symmetry import DEGENERACY_FACTOR, UNBROKEN, _cluster, classify_symmetry

#: Self-orthogonality guard for C synthesis: a state whose normalized
#: indefinite self-product |(v, v)| / |v|^2 falls below this threshold is
#: treated as an exceptional point.  The value sqrt(2e-8) makes the 2x2 model
#: family fail exactly when its breaking parameter is within 1e-8 of 1.
EP_GUARD_TOL = float(np.sqrt(2e-8))


@dataclass(frozen=True)
class SignedState:
    """An aligned eigenstate scaled so that its indefinite self-product is
    exactly its sign, +1 or -1."""

    energy: float
    state: np.ndarray
    sign: int

    def __post_init__(self):
        self.state.setflags(write=False)


@dataclass(frozen=True)
class CPTResult:
    """Synthesized CPT-frame with its generating states.

    The states satisfy C phi_n = sign_n phi_n, and their Gram matrix under
    the CPT inner product deviates from the identity by ``gram_residual``.
    """

    cpt: CPTFrame
    aligned_states: tuple[SignedState, ...]
    gram_residual: float


def pt_inner(u, v, frame: PTFrame) -> complex:
    """Indefinite inner product (u, v) = <P u, v>, with <x, y> = sum conj(x) y.

    For PT-aligned u this equals the conjugation-free bilinear form
    sum_i u_i v_i.
    """
    uu = as_vector(u)
    vv = as_vector(v)
    if uu.shape[0] != frame.dim or vv.shape[0] != frame.dim:
        raise DimensionMismatch(
            f"vectors of lengths {uu.shape[0]}, {vv.shape[0]} do not match frame dimension {frame.dim}"
        )
    return complex(np.vdot(frame.p.matrix @ uu, vv))


def normalize_indefinite(v, frame: PTFrame, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, int]:
    """Scale a PT-aligned vector to unit indefinite norm.

    Returns ``(v / sqrt(|(v, v)|), sign((v, v)))`` so that the output has
    indefinite self-product exactly +1 or -1.

    Raises
    ------
    NotPTEigenstate
        If PT v deviates from v by more than ``tol |v|``.
    SelfOrthogonal
        If ``|(v, v)| <= tol |v|^2``: the construction fails at an
        exceptional point, where the indefinite norm vanishes.
    """
    vec = as_vector(v)
    norm_sq = float(np.vdot(vec, vec).real)
    if norm_sq == 0.0:
        raise SelfOrthogonal("cannot normalize the zero vector")
    residual = float(np.linalg.norm(frame.apply_pt(vec) - vec))
    if residual > tol * np.sqrt(norm_sq):
        raise NotPTEigenstate(f"vector is not PT-fixed (residual {residual:.3e}); align it first")
    q = pt_inner(vec, vec, frame).real
    if abs(q) <= tol * norm_sq:
        raise SelfOrthogonal(
            f"indefinite self-product {q:.3e} vanishes at tolerance {tol:.1e} * |v|^2; "
            "the state is self-orthogonal (exceptional point)"
        )
    sign = 1 if q > 0 else -1
    return vec / np.sqrt(abs(q)), sign


def _indefinite_gram_schmidt(
    states: list[np.ndarray], frame: PTFrame, ep_tol: float
) -> list[tuple[np.ndarray, int]]:
    # Orthogonalize within a degenerate eigenspace against the indefinite
    # form.  Coefficients are real for PT-fixed vectors, so PT-fixedness is
    # preserved.  A self-orthogonal direction aborts the construction.
    done: list[tuple[np.ndarray, int]] = []
    for v in states:
        w = np.array(v)
        for unit, sign in done:
            # B(unit, w) is real for PT-fixed vectors; drop rounding noise so
            # the combination stays PT-fixed exactly
            w = w - sign * pt_inner(unit, w, frame).real * unit
        try:
            done.append(normalize_indefinite(w, frame, ep_tol))
        except SelfOrthogonal as exc:
            raise GramDefect(
                "degenerate eigenspace contains a self-orthogonal direction; the "
                "indefinite orthonormality hypothesis cannot be met"
            ) from exc
    return done


def build_c(
    h,
    frame: PTFrame,
    tol: float = DEFAULT_TOL,
    ep_tol: float = EP_GUARD_TOL,
) -> CPTResult:
    """Synthesize the C operator of a CPT-frame for an unbroken Hamiltonian.

    Pipeline: classify the symmetry phase (must be unbroken); sign-normalize
    every aligned eigenstate under the indefinite form, running indefinite
    Gram-Schmidt inside degenerate eigenspaces; verify pairwise indefinite
    orthogonality (automatic across distinct eigenvalues of a symmetric
    Hamiltonian); set C to the bilinear outer-product sum of the normalized
    states, which satisfies C phi_k = sign_k phi_k; validate the resulting
    frame and the commutator [C, H].

    Parameters
    ----------
    ep_tol : float
        Self-orthogonality guard passed to the normalization step.  The
        default refuses states closer to an exceptional point than the 2x2
        model family at breaking parameter 1 - 1e-8.

    Raises
    ------
    NotUnbroken, SelfOrthogonal, GramDefect, FrameInvalid, CommutatorViolation
    """
    a = as_matrix(h)
    report = classify_symmetry(a, frame, tol)
    if report.classification != UNBROKEN:
        raise NotUnbroken(
            f"C synthesis requires unbroken symmetry, got {report.classification} "
            f"(PT residual {report.pt_residual:.3e})"
        )

    scale = max(1.0, fnorm(a))
    energies = np.array([state.energy for state in report.aligned_states])
    normalized: list[SignedState] = []
    for lo, hi in _cluster(energies, DEGENERACY_FACTOR * scale):
        members = report.aligned_states[lo:hi]
        if len(members) == 1:
            unit, sign = normalize_indefinite(members[0].state, frame, ep_tol)
            normalized.append(SignedState(members[0].energy, unit, sign))
        else:
            pairs = _indefinite_gram_schmidt([m.state for m in members], frame, ep_tol)
            normalized.extend(
                SignedState(m.energy, unit, sign) for m, (unit, sign) in zip(members, pairs)
            )

    phi = np.column_stack([state.state for state in normalized])
    signs = np.array([state.sign for state in normalized], dtype=float)
    gram = (frame.p.matrix @ phi).conj().T @ phi
    gram_error = fnorm(gram - np.diag(signs))
    # rounding in the Gram entries is amplified by the Euclidean size of the
    # indefinitely-normalized states, which grows near an exceptional point
    gram_tol = tol * max(1.0, float(np.linalg.norm(phi, 2)) ** 2)
    if gram_error > gram_tol:
        raise GramDefect(
            f"indefinite Gram matrix deviates from diag(signs) by {gram_error:.3e}; "
            "the orthonormality hypothesis cannot be met for this eigensystem"
        )

    c_matrix = phi @ phi.T
    # equation-residual tolerance scales with |C|^2 (the axiom residuals of
    # an exact frame grow with the squared magnitude of C near an exceptional
    # point); the positive-definiteness margin stays relative to |PC|
    structural_tol = tol * max(1.0, fnorm(c_matrix)) ** 2
    cpt = checked_cpt_frame(Operator.linear(c_matrix), frame, structural_tol, pd_tol=tol)

    commutator = fnorm(c_matrix @ a - a @ c_matrix)
    if commutator > tol * max(1.0, fnorm(a)) * max(1.0, fnorm(c_matrix)):
        raise CommutatorViolation(
            f"[C, H] residual {commutator:.3e} exceeds tolerance; C is not a frame for H"
        )

    pc = cpt.pc_matrix
    gram_cpt = (pc @ phi).conj().T @ phi
    gram_residual = fnorm(gram_cpt - np.eye(len(signs)))
    return CPTResult(cpt, tuple(normalized), gram_residual)


def cpt_inner(u, v, cpt: CPTFrame) -> complex:
    """CPT inner product <u, v>_CPT = <PC u, v>: sesquilinear (conjugate
    linear in the first slot) and positive definite for a valid frame."""
    uu = as_vector(u)
    vv = as_vector(v)
    if uu.shape[0] != cpt.dim or vv.shape[0] != cpt.dim:
        raise DimensionMismatch(
            f"vectors of lengths {uu.shape[0]}, {vv.shape[0]} do not match frame dimension {cpt.dim}"
        )
    return complex(np.vdot(cpt.pc_matrix @ uu, vv))


def cpt_adjoint(a: Operator, cpt: CPTFrame, tol: float = DEFAULT_TOL) -> Operator:
    """Adjoint with respect to the CPT inner product: (PC)^-1 A+ (PC).

    The inverse metric is taken spectrally so positive-definiteness failures
    surface early.  Satisfies <adj(A) u, v>_CPT = <u, A v>_CPT.
    """
    if not a.is_linear:
        raise KindMismatch("the CPT adjoint is defined for linear operators")
    if a.dim != cpt.dim:
        raise DimensionMismatch(f"operator dimension {a.dim} does not match frame dimension {cpt.dim}")
    pc = cpt.pc_matrix
    pc_inv = hermitian_power(pc, -1.0, tol)
    return Operator.linear(pc_inv @ a.matrix.conj().T @ pc)


def hermitize(h, cpt: CPTFrame, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Similarity transform h = (PC)^(1/2) H (PC)^(-1/2).

    The output is genuinely Hermitian exactly when H is symmetric, and the
    similarity preserves the spectrum.  Requires [C, H] = 0 at tolerance (the
    frame must be a frame *for* H) and PC positive definite.

    Raises NotPositiveDefinite, NotHermitian or CommutatorViolation.
    """
    a = as_matrix(h)
    if a.shape[0] != cpt.dim:
        raise DimensionMismatch(f"matrix dimension {a.shape[0]} does not match frame dimension {cpt.dim}")
    c = cpt.c.matrix
    commutator = fnorm(c @ a - a @ c)
    if commutator > tol * max(1.0, fnorm(a)) * max(1.0, fnorm(c)):
        raise CommutatorViolation(
            f"[C, H] residual {commutator:.3e} exceeds tolerance; the frame is not a frame for H"
        )
    pc = cpt.pc_matrix
    root = hermitian_power(pc, 0.5, tol)
    inv_root = hermitian_power(pc, -0.5, tol)
    return root @ a @ inv_root
