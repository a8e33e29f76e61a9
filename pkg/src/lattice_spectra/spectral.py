"""Symmetric eigendecomposition, counting functionals and the width theorem.

Counting is strict-inequality counting with an explicit tie band: finite
arithmetic cannot distinguish an eigenvalue sitting exactly at a reference
level from one a rounding error away.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .errors import NonSymmetricError
from .operators import GridOperator

MatrixLike = Union[GridOperator, np.ndarray]


def _as_matrix(op: MatrixLike) -> np.ndarray:
    return op.matrix if isinstance(op, GridOperator) else np.asarray(op, dtype=float)


def _check_symmetric(a: np.ndarray, rel_tol: float = 1e-10) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSymmetricError(f"expected a square matrix, got shape {a.shape}")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if float(np.abs(a - a.T).max(initial=0.0)) > rel_tol * scale:
        raise NonSymmetricError("matrix is not symmetric within tolerance")


def eig_sym(op: MatrixLike, vectors: bool = False):
    """Ascending eigenvalues of a symmetric matrix, optionally with vectors.

    Backed by LAPACK (numpy.linalg.eigh); cached eigenvalues on a
    GridOperator are reused when vectors are not requested.
    """
    if isinstance(op, GridOperator) and op.eigenvalues is not None and not vectors:
        return op.eigenvalues.copy()
    a = _as_matrix(op)
    _check_symmetric(a)
    if vectors:
        return np.linalg.eigh(a)
    return np.linalg.eigvalsh(a)


def default_tie_tol(eigenvalues: Sequence[float]) -> float:
    """Tie band 1e-9 * max(1, spectral scale)."""
    arr = np.asarray(eigenvalues, dtype=float)
    scale = float(np.abs(arr).max(initial=0.0)) if arr.size else 0.0
    return 1e-9 * max(1.0, scale)


def count_below(mu: float, eigenvalues: Sequence[float], tie_tol: float = 0.0) -> int:
    """Number of eigenvalues strictly below mu - tie_tol."""
    arr = np.asarray(eigenvalues, dtype=float)
    return int(np.count_nonzero(arr < mu - tie_tol))


def count_above(mu: float, eigenvalues: Sequence[float], tie_tol: float = 0.0) -> int:
    """Number of eigenvalues strictly above mu + tie_tol."""
    arr = np.asarray(eigenvalues, dtype=float)
    return int(np.count_nonzero(arr > mu + tie_tol))


def spectral_width(eigenvalues: Sequence[float]) -> float:
    """Diameter of the spectrum: largest minus smallest eigenvalue."""
    arr = np.asarray(eigenvalues, dtype=float)
    if arr.size == 0:
        raise ValueError("spectral_width of an empty spectrum")
    return float(arr.max() - arr.min())


@dataclass(frozen=True)
class LevelCount:
    label: str
    level: float
    n_below: int
    n_above: int


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: np.ndarray
    counts: tuple[LevelCount, ...]
    width: float
    tie_tol: float


def spectral_report(
    op: MatrixLike,
    reference_levels: Sequence[tuple[str, float]],
    tie_tol: Optional[float] = None,
) -> SpectralReport:
    eigs = np.sort(eig_sym(op))
    tol = default_tie_tol(eigs) if tie_tol is None else tie_tol
    counts = tuple(
        LevelCount(label, mu, count_below(mu, eigs, tol), count_above(mu, eigs, tol))
        for label, mu in reference_levels
    )
    return SpectralReport(eigs, counts, spectral_width(eigs), tol)


@dataclass(frozen=True)
class CountingCheck:
    """Width-theorem check n_-(m(A), A-V) >= n_+(w_s(A), V) and companions."""

    m_a: float
    big_m_a: float
    width: float
    lhs: int
    rhs: int
    holds: bool
    mirrored_lhs: int
    mirrored_rhs: int
    mirrored_holds: bool
    corollary_lhs: int
    corollary_rhs: int
    corollary_holds: bool

    @property
    def all_hold(self) -> bool:
        return self.holds and self.mirrored_holds and self.corollary_holds


def verify_counting_theorem(
    a: MatrixLike, v: MatrixLike, tie_tol: Optional[float] = None
) -> CountingCheck:
    """Check the eigenvalue-counting inequality for a perturbed pair (A, A - V).

    Also checks the mirrored form at M(A) and the corollary with |V|,
    where |V| is the operator absolute value (eigenvalue signs flipped in
    V's own eigenbasis), never the entrywise one.
    """
    amat = _as_matrix(a)
    vmat = _as_matrix(v)
    if amat.shape != vmat.shape:
        raise ValueError(f"dimension mismatch: {amat.shape} vs {vmat.shape}")
    eigs_a = eig_sym(amat)
    eigs_v = eig_sym(vmat)
    eigs_av = eig_sym(amat - vmat)
    m_a = float(eigs_a[0])
    big_m_a = float(eigs_a[-1])
    width = big_m_a - m_a
    tol = (
        default_tie_tol(np.concatenate([eigs_a, eigs_v, eigs_av]))
        if tie_tol is None
        else tie_tol
    )
    lhs = count_below(m_a, eigs_av, tol)
    rhs = count_above(width, eigs_v, tol)
    mirrored_lhs = count_above(big_m_a, eigs_av, tol)
    mirrored_rhs = count_below(-width, eigs_v, tol)
    corollary_rhs = count_above(width, np.abs(eigs_v), tol)
    return CountingCheck(
        m_a=m_a,
        big_m_a=big_m_a,
        width=width,
        lhs=lhs,
        rhs=rhs,
        holds=lhs >= rhs,
        mirrored_lhs=mirrored_lhs,
        mirrored_rhs=mirrored_rhs,
        mirrored_holds=mirrored_lhs >= mirrored_rhs,
        corollary_lhs=lhs + mirrored_lhs,
        corollary_rhs=corollary_rhs,
        corollary_holds=lhs + mirrored_lhs >= corollary_rhs,
    )
