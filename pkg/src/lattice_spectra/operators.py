"""Exact finite-torus representatives of H0(k), V, H(k), V^{1/2} and G(k, z).

For a finitely supported potential with support radius R and a grid with
N >= 2R + 1 the construction is exact on the discrete torus Z_N^3: the
convolution operator is unitarily equivalent to multiplication by v-hat
on the position box, so the only approximation anywhere is finite volume.
All matrices are real symmetric and dense (desk scale, N <= 14).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dispersion import dispersion_on_grid
from .errors import (
    GridTooSmallError,
    NegativePotentialError,
    NumericalFailure,
    ZNotBelowBandError,
)
from .model import MassPair, MomentumGrid, Potential, Quasimomentum


@dataclass(frozen=True)
class GridOperator:
    """Dense real symmetric matrix on the momentum grid, tagged by kind."""

    matrix: np.ndarray
    grid: MomentumGrid
    kind: str  # one of: H0, V, H, Vhalf, BS
    eigenvalues: Optional[np.ndarray] = None  # cached, ascending, if known

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _require_grid_fits(pot: Potential, grid: MomentumGrid) -> None:
    if grid.n_per_dim < 2 * pot.support_radius + 1:
        raise GridTooSmallError(
            f"grid N={grid.n_per_dim} < 2R+1={2 * pot.support_radius + 1}; "
            "aliasing would corrupt the spectrum"
        )


def _convolution_matrix(values: dict, grid: MomentumGrid) -> np.ndarray:
    """Momentum-side matrix of the position multiplication operator.

    Entry (m, n) = (1/N^3) sum_x f(x) cos((q_m - q_n, x)).  Depends only on
    the node index difference mod N per axis (circulant structure); the
    grid offset cancels in q_m - q_n.
    """
    n = grid.n_per_dim
    d = np.arange(n)
    table = np.zeros((n, n, n))
    for (s1, s2, s3), v in values.items():
        ang = (2.0 * math.pi / n) * (
            d[:, None, None] * s1 + d[None, :, None] * s2 + d[None, None, :] * s3
        )
        table += v * np.cos(ang)
    table /= n**3
    idx = np.arange(n**3)
    i1, i2, i3 = idx // (n * n), (idx // n) % n, idx % n
    mat = table[
        (i1[:, None] - i1[None, :]) % n,
        (i2[:, None] - i2[None, :]) % n,
        (i3[:, None] - i3[None, :]) % n,
    ]
    return 0.5 * (mat + mat.T)


def build_h0(m: MassPair, k: Quasimomentum, grid: MomentumGrid) -> GridOperator:
    """Diagonal matrix of dispersion samples over the grid nodes."""
    diag = dispersion_on_grid(m, k, grid)
    return GridOperator(np.diag(diag), grid, "H0", eigenvalues=np.sort(diag))


def build_v(pot: Potential, grid: MomentumGrid) -> GridOperator:
    """Momentum representation of the convolution potential (exact)."""
    _require_grid_fits(pot, grid)
    return GridOperator(_convolution_matrix(dict(pot.entries), grid), grid, "V")


def build_vhalf(pot: Potential, grid: MomentumGrid) -> GridOperator:
    """Positive square root V^{1/2}, built from sqrt(v-hat); needs v-hat >= 0."""
    if not pot.is_nonnegative():
        raise NegativePotentialError("V^{1/2} requires a nonnegative potential")
    _require_grid_fits(pot, grid)
    roots = {s: math.sqrt(v) for s, v in pot.entries.items()}
    return GridOperator(_convolution_matrix(roots, grid), grid, "Vhalf")


def potential_spectrum(pot: Potential, grid: MomentumGrid) -> np.ndarray:
    """Exact eigenvalue multiset of build_v: v-hat over the centered position box."""
    _require_grid_fits(pot, grid)
    n = grid.n_per_dim
    lo = -((n - 1) // 2)
    box = range(lo, lo + n)
    vals = [
        pot.value((x1, x2, x3)) for x1 in box for x2 in box for x3 in box
    ]
    return np.sort(np.array(vals))


def build_h(
    m: MassPair, k: Quasimomentum, pot: Potential, grid: MomentumGrid
) -> GridOperator:
    """Full fiber Hamiltonian H(k) = H0(k) - V on the grid."""
    h0 = build_h0(m, k, grid)
    v = build_v(pot, grid)
    return GridOperator(h0.matrix - v.matrix, grid, "H")


def build_bs(
    m: MassPair,
    k: Quasimomentum,
    pot: Potential,
    z: float,
    grid: MomentumGrid,
    psd_tol: float = 1e-10,
) -> GridOperator:
    """Birman-Schwinger operator G(k, z) = V^{1/2} (H0(k) - z)^{-1} V^{1/2}.

    Positive semidefiniteness is a theorem and is enforced at build time;
    eigenvalues are computed for the check and cached on the result.
    """
    w = build_vhalf(pot, grid).matrix
    diag = dispersion_on_grid(m, k, grid)
    if z >= diag.min():
        raise ZNotBelowBandError(
            f"z={z} is not below the grid-sampled dispersion minimum {diag.min()}"
        )
    g = (w / (diag - z)[None, :]) @ w
    g = 0.5 * (g + g.T)
    eigs = np.linalg.eigvalsh(g)
    floor = -psd_tol * max(1.0, float(np.abs(eigs).max(initial=0.0)))
    if eigs[0] < floor:
        raise NumericalFailure(
            f"Birman-Schwinger matrix not PSD: min eigenvalue {eigs[0]}"
        )
    return GridOperator(g, grid, "BS", eigenvalues=eigs)


def bs_support_eigenvalues(
    m: MassPair,
    k: Quasimomentum,
    pot: Potential,
    z: float,
    grid: MomentumGrid,
) -> np.ndarray:
    """Nonzero spectrum of G(k, z) via the support-sized Gram matrix.

    G has rank at most the number of supported sites; its nonzero
    eigenvalues equal those of the r x r matrix
    sqrt(v(x) v(y)) * (1/N^3) sum_n exp(i q_n (x - y)) / (E(q_n) - z).
    Cheap even for grids far too large to materialize densely.
    """
    if not pot.is_nonnegative():
        raise NegativePotentialError("Birman-Schwinger requires v-hat >= 0")
    _require_grid_fits(pot, grid)
    diag = dispersion_on_grid(m, k, grid)
    if z >= diag.min():
        raise ZNotBelowBandError(
            f"z={z} is not below the grid-sampled dispersion minimum {diag.min()}"
        )
    sites = pot.sorted_sites()
    if not sites:
        return np.zeros(0)
    q = grid.nodes()
    s = np.array(sites, dtype=float)  # (r, 3)
    phases = np.exp(1j * (q @ s.T))  # (N^3, r)
    weighted = phases / (diag - z)[:, None]
    # Hermitian with a genuinely complex part unless the dispersion is even
    # in q (equal masses or k = 0); eigvalsh handles the complex case
    gram = (phases.conj().T @ weighted) / grid.dim
    root = np.sqrt([pot.entries[t] for t in sites])
    gram = root[:, None] * gram * root[None, :]
    return np.linalg.eigvalsh(0.5 * (gram + gram.conj().T))
