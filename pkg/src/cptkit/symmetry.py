"""PT-symmetry testing and broken/unbroken classification of eigensystems.

A Hamiltonian is PT-symmetric when (PT) H (PT) = H.  Its symmetry is
unbroken when every eigenstate is also an eigenstate of PT, which forces a
real spectrum; otherwise non-real eigenvalues come in conjugate pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotPTEigenstate
from .frames import PTFrame, pair_swap_frame
from .linops import DEFAULT_TOL, Operator, as_matrix, as_vector, compose, eigendecompose, fnorm

UNBROKEN = "unbroken"
BROKEN = "broken"
NOT_APPLICABLE = "not_applicable"

#: |Im(eigenvalue)| <= REALITY_FACTOR * max(1, |H|) counts as real; chosen an
#: order above the spectral residual tolerance to separate unbroken spectra
#: from conjugate pairs near exceptional points.
REALITY_FACTOR = 1e-9

#: Width, relative to max(1, |H|), for clustering real eigenvalues into
#: degenerate groups.
DEGENERACY_FACTOR = 1e-8

#: A 2x2 model matrix [[z, s], [s, conj(z)]] whose breaking parameter
#: |Im z / s| lies within this distance of 1 gets an exceptional-point
#: proximity warning.
EP_WARNING_BAND = 1e-6


@dataclass(frozen=True)
class PTSymmetryCheck:
    """Boolean verdict plus the measured residual |(PT) H (PT) - H|."""

    symmetric: bool
    residual: float

    def __bool__(self) -> bool:
        return self.symmetric


@dataclass(frozen=True)
class AlignedState:
    """A real eigenvalue with a PT-fixed eigenvector and the phase theta of
    the original PT eigenvalue (PT psi = exp(i theta) psi)."""

    energy: float
    state: np.ndarray
    theta: float

    def __post_init__(self):
        self.state.setflags(write=False)


@dataclass(frozen=True)
class ConjugatePair:
    """A non-real eigenvalue matched with its complex conjugate partner."""

    value: complex
    partner: complex
    state: np.ndarray
    partner_state: np.ndarray


@dataclass(frozen=True)
class SymmetryReport:
    pt_symmetric: bool
    classification: str
    eigenvalues: np.ndarray
    aligned_states: tuple[AlignedState, ...]
    broken_pairs: tuple[ConjugatePair, ...]
    warnings: tuple[str, ...]
    pt_residual: float


@dataclass(frozen=True)
class TwoByTwoClass:
    """Structural taxonomy of a 2x2 matrix under the swap-parity frame.

    ``cpt_candidate_forms`` holds the satisfied structural forms, numbered 3
    (Hermitian), 4 (symmetric), 5 (PT-symmetric), 6 (PT-symmetric and
    Hermitian) and 7 (all of the above, forcing real entries a, b with
    H = [[a, b], [b, a]]).
    """

    hermitian: bool
    symmetric: bool
    pt_symmetric: bool
    cpt_candidate_forms: frozenset[int]


def is_pt_symmetric(h, frame: PTFrame, tol: float = DEFAULT_TOL) -> PTSymmetryCheck:
    """Test (PT) H (PT) = H via the antilinear composition rules.

    For entrywise-conjugation T this reduces to |H P - P conj(H)| = 0.  The
    residual is compared against ``tol * |H|``.
    """
    a = as_matrix(h)
    if a.shape[0] != frame.dim:
        raise DimensionMismatch(f"matrix dimension {a.shape[0]} does not match frame dimension {frame.dim}")
    pt = frame.pt
    h_pt = compose(compose(pt, Operator.linear(a)), pt).matrix
    residual = fnorm(h_pt - a)
    return PTSymmetryCheck(residual <= tol * fnorm(a), residual)


def phase_align(v, frame: PTFrame, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, float]:
    """Rotate a PT eigenstate onto the PT-fixed ray.

    If PT v = c v with |c| = 1, returns ``(exp(i theta / 2) v, theta)`` with
    theta = arg(c) in [0, 2*pi); the output phi satisfies PT phi = phi and
    keeps the Euclidean norm of v.  The best scalar is estimated as
    c = <v, PT v> / <v, v>.

    Raises NotPTEigenstate when |PT v - c v| > tol |v|.
    """
    vec = as_vector(v)
    norm = float(np.linalg.norm(vec))
    if norm == 0.0:
        raise NotPTEigenstate("cannot align the zero vector")
    w = frame.apply_pt(vec)
    c = complex(np.vdot(vec, w) / np.vdot(vec, vec))
    residual = float(np.linalg.norm(w - c * vec))
    if abs(abs(c) - 1.0) > tol or residual > tol * norm:
        raise NotPTEigenstate(
            f"PT v deviates from the ray through v by {residual:.3e} (best |c| = {abs(c):.6f})"
        )
    theta = float(np.angle(c)) % (2.0 * np.pi)
    if 2.0 * np.pi - theta <= 1e-8:  # rounding noise just below a full turn is phase zero
        theta = 0.0
    phi = np.exp(0.5j * theta) * vec
    return phi, theta


def _cluster(values: np.ndarray, width: float) -> list[tuple[int, int]]:
    """Split sorted values into runs of near-equal neighbours."""
    groups = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or abs(values[i] - values[i - 1]) > width:
            groups.append((start, i))
            start = i
    return groups


def _pt_fixed_basis(columns: np.ndarray, frame: PTFrame, dim: int) -> list[np.ndarray]:
    """Build a PT-fixed basis of the space spanned by ``columns``.

    Each candidate v yields the PT-fixed vectors v + PT v and i (v - PT v);
    these are orthonormalized over the reals (real coefficients keep
    PT-fixedness exact) and `dim` independent ones are kept.
    """
    candidates = []
    for j in range(columns.shape[1]):
        v = columns[:, j]
        w = frame.apply_pt(v)
        candidates.append(v + w)
        candidates.append(1j * (v - w))
    candidates.sort(key=lambda u: -float(np.linalg.norm(u)))
    basis: list[np.ndarray] = []
    for u in candidates:
        vec = np.array(u)
        for b in basis:
            vec -= float(np.real(np.vdot(b, vec))) * b
        norm = float(np.linalg.norm(vec))
        if norm > 1e-8:
            basis.append(vec / norm)
        if len(basis) == dim:
            return basis
    raise NotPTEigenstate(
        f"could only extract {len(basis)} PT-fixed directions from a {dim}-dimensional eigenspace"
    )


def _ep_proximity_warnings(a: np.ndarray) -> tuple[str, ...]:
    # Detects the 2x2 family [[z, s], [s, conj(z)]] with real s and warns when
    # the breaking parameter |Im z| / |s| sits within EP_WARNING_BAND of 1.
    if a.shape != (2, 2):
        return ()
    scale = max(1.0, fnorm(a))
    s = a[0, 1]
    if (
        abs(a[1, 0] - s) > 1e-12 * scale
        or abs(s.imag) > 1e-12 * scale
        or abs(a[1, 1] - np.conj(a[0, 0])) > 1e-12 * scale
        or abs(s.real) < 1e-12 * scale
    ):
        return ()
    x = abs(a[0, 0].imag) / abs(s.real)
    if abs(x - 1.0) <= EP_WARNING_BAND:
        return (
            f"exceptional-point proximity: breaking parameter {x:.9f} is within "
            f"{EP_WARNING_BAND:.0e} of 1; eigenvectors nearly coalesce and results are ill-conditioned",
        )
    return ()


def classify_symmetry(h, frame: PTFrame, tol: float = DEFAULT_TOL) -> SymmetryReport:
    """Classify the symmetry phase of a Hamiltonian over a PT-frame.

    Pipeline: decide PT-symmetry (otherwise the classification is
    not-applicable), eigendecompose, then try to align every real-eigenvalue
    eigenstate onto the PT-fixed ray.  Degenerate real eigenspaces are
    re-based with the v + PT v construction, which is exact by antilinear
    involution algebra.  The result is unbroken exactly when all eigenvalues
    are real and every eigenstate aligns; otherwise it is broken and the
    non-real eigenvalues are matched into conjugate pairs.

    DefectiveSpectrum from the eigensolver propagates.
    """
    a = as_matrix(h)
    check = is_pt_symmetric(a, frame, tol)
    warnings = list(_ep_proximity_warnings(a))
    eigen = eigendecompose(a, tol)

    if not check.symmetric:
        return SymmetryReport(
            False, NOT_APPLICABLE, eigen.values, (), (), tuple(warnings), check.residual
        )

    scale = max(1.0, fnorm(a))
    reality_tol = REALITY_FACTOR * scale
    group_width = DEGENERACY_FACTOR * scale

    real_idx = [i for i in range(len(eigen.values)) if abs(eigen.values[i].imag) <= reality_tol]
    complex_idx = [i for i in range(len(eigen.values)) if i not in real_idx]

    aligned: list[AlignedState] = []
    align_failed = False
    for lo, hi in _cluster(eigen.values[real_idx].real, group_width) if real_idx else []:
        members = real_idx[lo:hi]
        energy = float(np.mean(eigen.values[members].real))
        if len(members) == 1:
            vec = eigen.vectors[:, members[0]]
            try:
                phi, theta = phase_align(vec, frame, tol)
            except NotPTEigenstate:
                # numerically sour simple eigenvector; the v + PT v rebase
                # still lands on the PT-fixed ray
                try:
                    (phi,) = _pt_fixed_basis(vec.reshape(-1, 1), frame, 1)
                    theta = 0.0
                    warnings.append(
                        f"eigenvector for E = {energy:.6g} aligned via rebasing, not by phase"
                    )
                except NotPTEigenstate:
                    align_failed = True
                    continue
            aligned.append(AlignedState(energy, phi, theta))
        else:
            try:
                basis = _pt_fixed_basis(eigen.vectors[:, members], frame, len(members))
            except NotPTEigenstate:
                align_failed = True
                continue
            aligned.extend(AlignedState(energy, b, 0.0) for b in basis)

    pairs: list[ConjugatePair] = []
    if complex_idx:
        upper = [i for i in complex_idx if eigen.values[i].imag > 0]
        lower = [i for i in complex_idx if eigen.values[i].imag < 0]
        unmatched = set(lower)
        for i in upper:
            target = np.conj(eigen.values[i])
            best = min(unmatched, key=lambda j: abs(eigen.values[j] - target), default=None)
            if best is not None and abs(eigen.values[best] - target) <= group_width:
                unmatched.discard(best)
                pairs.append(
                    ConjugatePair(
                        complex(eigen.values[i]),
                        complex(eigen.values[best]),
                        eigen.vectors[:, i],
                        eigen.vectors[:, best],
                    )
                )
            else:
                warnings.append(f"non-real eigenvalue {eigen.values[i]:.6g} has no conjugate partner")
        for j in unmatched:
            warnings.append(f"non-real eigenvalue {eigen.values[j]:.6g} has no conjugate partner")

    if complex_idx or align_failed:
        classification = BROKEN
    else:
        classification = UNBROKEN
    return SymmetryReport(
        True, classification, eigen.values, tuple(aligned), tuple(pairs), tuple(warnings), check.residual
    )


def classify_2x2(h, tol: float = DEFAULT_TOL) -> TwoByTwoClass:
    """Evaluate the structural predicates of a 2x2 matrix (swap frame implied):
    Hermitian, symmetric, PT-symmetric, and their conjunctions."""
    a = as_matrix(h)
    if a.shape != (2, 2):
        raise DimensionMismatch(f"expected a 2x2 matrix, got {a.shape}")
    frame = pair_swap_frame(2)
    hermitian = fnorm(a - a.conj().T) <= tol
    symmetric = fnorm(a - a.T) <= tol
    pt_symmetric = bool(is_pt_symmetric(a, frame, tol))
    forms = set()
    if hermitian:
        forms.add(3)
    if symmetric:
        forms.add(4)
    if pt_symmetric:
        forms.add(5)
    if pt_symmetric and hermitian:
        forms.add(6)
    if pt_symmetric and hermitian and symmetric:
        forms.add(7)
    return TwoByTwoClass(hermitian, symmetric, pt_symmetric, frozenset(forms))
