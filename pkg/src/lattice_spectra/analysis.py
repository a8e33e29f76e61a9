"""Theorem-level verifications: Birman-Schwinger counting, threshold
classification, critical coupling, positivity transfer, emergence and the
degenerate-direction lower bound.

Every function here is a pure job over immutable inputs and returns a
small report dataclass; nothing asserts, callers decide what a failure
means (the CLI turns report flags into exit codes).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .dispersion import band_geometry, degenerate_directions, dispersion_on_grid
from .errors import PreconditionError, ZeroPotentialError
from .model import MassPair, MomentumGrid, Potential, Quasimomentum
from .operators import (
    build_bs,
    build_h,
    build_h0,
    build_vhalf,
    bs_support_eigenvalues,
    potential_spectrum,
)
from .spectral import (
    count_above,
    count_below,
    default_tie_tol,
    eig_sym,
)

ZERO_K = Quasimomentum(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class ZSchedule:
    """Geometric approach z_i = e_min - delta0 * ratio^i from below."""

    delta0: float = 1.0
    ratio: float = 0.1
    steps: int = 7

    def __post_init__(self) -> None:
        if self.delta0 <= 0.0:
            raise ValueError("delta0 must be > 0")
        if not (0.0 < self.ratio < 1.0):
            raise ValueError("ratio must be in (0, 1)")
        if self.steps < 2:
            raise ValueError("need at least 2 steps")

    def points(self, e_min: float) -> list[float]:
        return [e_min - self.delta0 * self.ratio**i for i in range(self.steps)]

    def deltas(self) -> list[float]:
        return [self.delta0 * self.ratio**i for i in range(self.steps)]


# ---------------------------------------------------------------------------
# Birman-Schwinger counting


@dataclass(frozen=True)
class BSCheck:
    z: float
    n_minus: int
    n_plus: int

    @property
    def equal(self) -> bool:
        return self.n_minus == self.n_plus


def bs_check(
    m: MassPair,
    k: Quasimomentum,
    pot: Potential,
    z: float,
    grid: MomentumGrid,
    tie_tol: Optional[float] = None,
) -> BSCheck:
    """Compare n_-(z, H(k)) against n_+(1, G(k, z)) by full diagonalization."""
    eigs_h = eig_sym(build_h(m, k, pot, grid))
    tol = default_tie_tol(eigs_h) if tie_tol is None else tie_tol
    n_minus = count_below(z, eigs_h, tol)
    if pot.is_empty():
        return BSCheck(z, n_minus, 0)
    eigs_g = eig_sym(build_bs(m, k, pot, z, grid))
    n_plus = count_above(1.0, eigs_g, default_tie_tol(eigs_g) if tie_tol is None else tie_tol)
    return BSCheck(z, n_minus, n_plus)


@dataclass(frozen=True)
class ThresholdCount:
    zs: tuple[float, ...]
    counts: tuple[int, ...]
    stabilized: Optional[int]  # None means divergent

    @property
    def divergent(self) -> bool:
        return self.stabilized is None


def threshold_count(
    m: MassPair,
    k: Quasimomentum,
    pot: Potential,
    grid: MomentumGrid,
    schedule: ZSchedule = ZSchedule(),
    tie_tol: Optional[float] = None,
) -> ThresholdCount:
    """Track n_+(1, G(k, z_i)) along a z-schedule approaching the band bottom.

    The counts stabilize when the threshold operator is regular; in the
    degenerate-direction regime they keep growing (divergence is reported,
    not decided).
    """
    e_min = band_geometry(m, k).e_min
    zs = schedule.points(e_min)
    counts = []
    for z in zs:
        if pot.is_empty():
            counts.append(0)
            continue
        eigs = bs_support_eigenvalues(m, k, pot, z, grid)
        tol = default_tie_tol(eigs) if tie_tol is None else tie_tol
        counts.append(count_above(1.0, eigs, tol))
    stabilized = counts[-1] if len(set(counts[-3:])) == 1 else None
    return ThresholdCount(tuple(zs), tuple(counts), stabilized)


# ---------------------------------------------------------------------------
# Threshold classification at k = 0, z = 0


@dataclass(frozen=True)
class UnitEigenvalue:
    value: float
    overlap: float  # |(v^{1/2}, psi)| / (|v^{1/2}| |psi|)


@dataclass(frozen=True)
class ThresholdReport:
    lambda_max: float
    unit_eigenvalues: tuple[UnitEigenvalue, ...]
    classification: str  # none | resonance | zero_eigenvalue | resonance_plus_zero_eigenvalue
    multiplicity: int  # number of unit eigenvectors orthogonal to the kernel vector
    ambiguous: bool

    @property
    def has_resonance(self) -> bool:
        return self.classification in ("resonance", "resonance_plus_zero_eigenvalue")


def resonance_analysis(
    m: MassPair,
    pot: Potential,
    grid: MomentumGrid,
    unit_tol: float = 1e-6,
    overlap_tol: float = 1e-6,
) -> ThresholdReport:
    """Classify the zero-energy threshold of H(0).

    Diagonalizes G(0, 0) (well defined on an offset grid, where every
    dispersion sample is strictly positive), collects eigenvalues within
    unit_tol of 1 and sorts them into resonance (eigenvector overlapping
    the half-potential kernel vector) versus genuine zero eigenvectors.
    """
    if not pot.is_nonnegative():
        raise PreconditionError("threshold classification requires v-hat >= 0")
    if pot.is_empty():
        return ThresholdReport(0.0, (), "none", 0, False)
    diag0 = dispersion_on_grid(m, ZERO_K, grid)
    if diag0.min() <= 0.0:
        raise PreconditionError(
            "grid offset must keep the dispersion minimum off the grid "
            f"(min sample {diag0.min()}); use offset 0.5"
        )
    g = build_bs(m, ZERO_K, pot, 0.0, grid)
    eigs, vecs = eig_sym(g, vectors=True)
    # grid vector of the half-potential kernel function (normalization
    # constants cancel in the overlap ratio)
    q = grid.nodes()
    u = np.zeros(grid.dim)
    for s, v in pot.entries.items():
        u += math.sqrt(v) * np.cos(q @ np.array(s, dtype=float))
    u_norm = float(np.linalg.norm(u))
    units = []
    ambiguous = False
    n_zero = 0
    n_res = 0
    for i in range(len(eigs)):
        if abs(eigs[i] - 1.0) > unit_tol:
            continue
        psi = vecs[:, i]
        overlap = (
            abs(float(u @ psi)) / (u_norm * float(np.linalg.norm(psi)))
            if u_norm > 0.0
            else 0.0
        )
        units.append(UnitEigenvalue(float(eigs[i]), overlap))
        if overlap > overlap_tol:
            n_res += 1
        else:
            n_zero += 1
        if 0.1 * overlap_tol < overlap <= 10.0 * overlap_tol:
            ambiguous = True
    if n_res and n_zero:
        classification = "resonance_plus_zero_eigenvalue"
    elif n_res:
        classification = "resonance"
    elif n_zero:
        classification = "zero_eigenvalue"
    else:
        classification = "none"
    return ThresholdReport(
        float(eigs[-1]), tuple(units), classification, n_zero, ambiguous
    )


# ---------------------------------------------------------------------------
# Critical coupling


@dataclass(frozen=True)
class CriticalCoupling:
    lambda_star: float
    richardson: Optional[float]
    grid_sizes: tuple[int, ...]


def critical_coupling(
    m: MassPair,
    base_pot: Potential,
    grid: MomentumGrid,
    refine: bool = False,
) -> CriticalCoupling:
    """Coupling scale at which G(0, 0) for lambda * v-hat first reaches 1.

    G scales linearly in the coupling, so lambda_star is the reciprocal of
    the largest Birman-Schwinger eigenvalue of the base potential; one
    diagonalization of the support-sized Gram matrix suffices.  With
    refine, the eigenvalue is recomputed at grid sizes N and 2N and
    Richardson-extrapolated assuming O(1/N) finite-volume error (the
    eigenvalue, not its reciprocal, carries the clean 1/N law).
    """
    if base_pot.is_empty():
        raise ZeroPotentialError("critical coupling of the zero potential")
    if not base_pot.is_nonnegative():
        raise PreconditionError("critical coupling requires v-hat >= 0")

    def top(n: int) -> float:
        g = MomentumGrid(n, grid.offset)
        return float(bs_support_eigenvalues(m, ZERO_K, base_pot, 0.0, g)[-1])

    n1 = grid.n_per_dim
    x1 = top(n1)
    if x1 <= 0.0:
        raise ZeroPotentialError("base potential has no positive part")
    if not refine:
        return CriticalCoupling(1.0 / x1, None, (n1,))
    n2 = 2 * n1
    x2 = top(n2)
    x_inf = (n2 * x2 - n1 * x1) / (n2 - n1)
    return CriticalCoupling(1.0 / x1, 1.0 / x_inf, (n1, n2))


# ---------------------------------------------------------------------------
# Positivity transfer


@dataclass(frozen=True)
class PositivityAtK:
    k: tuple[float, float, float]
    min_eigenvalue: float
    ok: bool


@dataclass(frozen=True)
class PositivityReport:
    pos_tol: float
    min_eig_h0: float
    per_k: tuple[PositivityAtK, ...]

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.per_k)


def positivity_check(
    m: MassPair,
    pot: Potential,
    k_list: Sequence[Quasimomentum],
    grid: MomentumGrid,
    pos_tol: Optional[float] = None,
) -> PositivityReport:
    """Check that positivity of H(0) transfers to H(k) for each listed k."""
    if not m.equal_masses():
        raise PreconditionError("positivity transfer requires equal masses")
    eigs0 = eig_sym(build_h(m, ZERO_K, pot, grid))
    tol = 1e-8 * max(1.0, float(np.abs(eigs0).max())) if pos_tol is None else pos_tol
    if eigs0[0] < -tol:
        raise PreconditionError(
            f"H(0) is not positive within tolerance (min eigenvalue {eigs0[0]})"
        )
    per_k = []
    for k in k_list:
        lo = float(eig_sym(build_h(m, k, pot, grid))[0])
        per_k.append(PositivityAtK(k.components, lo, lo >= -tol))
    return PositivityReport(tol, float(eigs0[0]), tuple(per_k))


# ---------------------------------------------------------------------------
# Eigenvalue emergence below the band


@dataclass(frozen=True)
class EmergenceAtK:
    k: tuple[float, float, float]
    e_min: float
    count: int
    below_band: tuple[float, ...]
    count_ok: bool
    nonneg_ok: bool


@dataclass(frozen=True)
class ExistenceReport:
    threshold: ThresholdReport
    required: int
    per_k: tuple[EmergenceAtK, ...]

    @property
    def all_ok(self) -> bool:
        return all(r.count_ok and r.nonneg_ok for r in self.per_k)


def verify_existence(
    m: MassPair,
    pot: Potential,
    k_list: Sequence[Quasimomentum],
    grid: MomentumGrid,
    unit_tol: float = 1e-6,
    overlap_tol: float = 1e-6,
    edge_margin: float = 0.0,
    pos_tol: Optional[float] = None,
    tie_tol: Optional[float] = None,
) -> ExistenceReport:
    """Count nonnegative below-band eigenvalues of H(k) given a threshold state.

    With a resonance and an n-fold zero eigenvalue at k = 0, each nonzero
    interior k must carry at least n + 1 below-band eigenvalues (n without
    the resonance), all nonnegative.
    """
    threshold = resonance_analysis(m, pot, grid, unit_tol, overlap_tol)
    if threshold.classification == "none":
        raise PreconditionError(
            "no threshold state at k = 0; emergence has no lower bound to verify"
        )
    required = threshold.multiplicity + (1 if threshold.has_resonance else 0)
    per_k = []
    for k in k_list:
        geo = band_geometry(m, k)
        eigs = eig_sym(build_h(m, k, pot, grid))
        tol = default_tie_tol(eigs) if tie_tol is None else tie_tol
        ptol = 1e-8 * max(1.0, float(np.abs(eigs).max())) if pos_tol is None else pos_tol
        level = geo.e_min - edge_margin
        below = tuple(float(x) for x in eigs[eigs < level - tol])
        per_k.append(
            EmergenceAtK(
                k=k.components,
                e_min=geo.e_min,
                count=len(below),
                below_band=below,
                count_ok=len(below) >= required,
                nonneg_ok=all(x >= -ptol for x in below),
            )
        )
    return ExistenceReport(threshold, required, tuple(per_k))


# ---------------------------------------------------------------------------
# Band-width estimate


@dataclass(frozen=True)
class ScalarCaseCheck:
    level: float
    n_below_h: int
    n_above_v_zero: int
    n_above_h: int
    n_below_v_zero: int
    equalities_hold: bool


@dataclass(frozen=True)
class NeravenReport:
    w_b: float
    lhs: int
    rhs: int
    holds: bool
    corollary_lhs: int
    corollary_rhs: int
    corollary_holds: bool
    scalar_case: Optional[ScalarCaseCheck]

    @property
    def all_ok(self) -> bool:
        ok = self.holds and self.corollary_holds
        if self.scalar_case is not None:
            ok = ok and self.scalar_case.equalities_hold
        return ok


def verify_neraven(
    m: MassPair,
    k: Quasimomentum,
    pot: Potential,
    grid: MomentumGrid,
    edge_margin: float = 0.0,
    tie_tol: Optional[float] = None,
) -> NeravenReport:
    """Band-width counting estimate plus its scalar-case exact equalities.

    Checks n_-(e_min, H) >= n_+(w_b, V) against the exact potential
    spectrum, the two-sided corollary with |V|, and, for equal masses at
    k = (pi, pi, pi), the exact integer equalities against the 6/m level.
    """
    geo = band_geometry(m, k)
    eigs_h = eig_sym(build_h(m, k, pot, grid))
    vspec = potential_spectrum(pot, grid)
    tol = default_tie_tol(eigs_h) if tie_tol is None else tie_tol
    lhs = count_below(geo.e_min - edge_margin, eigs_h, tol)
    rhs = count_above(geo.w_b, vspec, tol)
    cor_lhs = lhs + count_above(geo.e_max + edge_margin, eigs_h, tol)
    cor_rhs = count_above(geo.w_b, np.abs(vspec), tol)
    scalar_case = None
    if m.equal_masses() and all(abs(kj - math.pi) <= 1e-12 for kj in k.components):
        level = 6.0 / m.m1
        nb_h = count_below(level, eigs_h, tol)
        na_v = count_above(0.0, vspec, tol)
        na_h = count_above(level, eigs_h, tol)
        nb_v = count_below(0.0, vspec, tol)
        scalar_case = ScalarCaseCheck(
            level, nb_h, na_v, na_h, nb_v, nb_h == na_v and na_h == nb_v
        )
    return NeravenReport(
        geo.w_b, lhs, rhs, lhs >= rhs, cor_lhs, cor_rhs, cor_lhs >= cor_rhs, scalar_case
    )


# ---------------------------------------------------------------------------
# Degenerate-direction lower bound


@dataclass(frozen=True)
class CheksizReport:
    axis: int  # 0-based degenerate direction used
    target: int
    zs: tuple[float, ...]
    counts: tuple[int, ...]
    final_count: int
    monotone: bool
    w_jb_axis: float
    h0_constant_along_axis: bool

    @property
    def holds(self) -> bool:
        return (
            self.final_count >= self.target
            and self.monotone
            and self.h0_constant_along_axis
        )


def verify_cheksiz(
    m: MassPair,
    k: Quasimomentum,
    pot: Potential,
    grid: MomentumGrid,
    schedule: ZSchedule = ZSchedule(),
    direction_tol: float = 1e-12,
) -> CheksizReport:
    """Lower bound on below-band eigenvalues from a collapsed band direction.

    When a directional band width vanishes, the number of eigenvalues below
    the band is at least the number of positive potential sites on that
    axis; the Birman-Schwinger counts along the z-schedule must reach the
    target and be non-decreasing.
    """
    degen = degenerate_directions(m, k, direction_tol)
    if not degen:
        raise PreconditionError("no degenerate direction at this (m, k)")
    j = min(degen)
    half = (grid.n_per_dim - 1) // 2
    target = sum(
        1
        for s in pot.axis_sites(j)
        if abs(s) <= half and pot.value(tuple(s if i == j else 0 for i in range(3))) > 0
    )
    if not pot.is_nonnegative():
        raise PreconditionError("degenerate-direction count requires v-hat >= 0")
    tc = threshold_count(m, k, pot, grid, schedule)
    geo = band_geometry(m, k)
    n = grid.n_per_dim
    diag = dispersion_on_grid(m, k, grid).reshape(n, n, n)
    const_along = float(np.ptp(diag, axis=j).max()) <= 1e-12 * max(1.0, float(diag.max()))
    monotone = all(a <= b for a, b in zip(tc.counts, tc.counts[1:]))
    return CheksizReport(
        axis=j,
        target=target,
        zs=tc.zs,
        counts=tc.counts,
        final_count=tc.counts[-1],
        monotone=monotone,
        w_jb_axis=geo.w_jb[j],
        h0_constant_along_axis=const_along,
    )


# ---------------------------------------------------------------------------
# Threshold-operator continuity


@dataclass(frozen=True)
class ContinuityReport:
    deltas: tuple[float, ...]
    norms: tuple[float, ...]
    exponent: float


def continuity_exponent(
    m: MassPair,
    k: Quasimomentum,
    pot: Potential,
    grid: MomentumGrid,
    schedule: ZSchedule = ZSchedule(),
) -> ContinuityReport:
    """Fit ||G(k, e_min) - G(k, z)|| ~ (e_min - z)^alpha along a z-schedule.

    The continuum bound is square-root Hoelder; on a finite grid the decay
    steepens towards linear once e_min - z drops below the grid gap, so the
    fitted exponent is reported rather than a constant.
    """
    geo = band_geometry(m, k)
    diag = dispersion_on_grid(m, k, grid)
    if diag.min() <= geo.e_min:
        raise PreconditionError(
            "grid samples must sit strictly above the analytic band bottom"
        )
    g_thr = build_bs(m, k, pot, geo.e_min, grid).matrix
    deltas = schedule.deltas()
    norms = []
    for z in schedule.points(geo.e_min):
        g_z = build_bs(m, k, pot, z, grid).matrix
        norms.append(float(np.linalg.norm(g_thr - g_z, 2)))
    slope = float(np.polyfit(np.log(deltas), np.log(norms), 1)[0])
    return ContinuityReport(tuple(deltas), tuple(norms), slope)
