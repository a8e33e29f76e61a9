"""Domain types: masses, torus momenta, finitely supported potentials, grids.

All types are immutable after construction and safe to share between
threads.  Momentum components live on the torus (-pi, pi]; grid nodes live
in [-pi, pi) with an optional sub-step offset.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping, Union

import numpy as np

from .errors import EvennessError, PotentialFormatError

Site = tuple[int, int, int]

TWO_PI = 2.0 * math.pi


def _wrap(x: float) -> float:
    """Reduce a real number modulo 2*pi into (-pi, pi]."""
    w = math.pi - (math.pi - x) % TWO_PI
    # guard against -pi leaking through floating point cancellation
    return w if w > -math.pi else math.pi


@dataclass(frozen=True)
class MassPair:
    """Masses of the two particles; both strictly positive."""

    m1: float
    m2: float

    def __post_init__(self) -> None:
        if not (self.m1 > 0.0 and self.m2 > 0.0):
            raise ValueError(f"masses must be positive, got {self.m1}, {self.m2}")

    def equal_masses(self, rel_tol: float = 1e-12) -> bool:
        return abs(self.m1 - self.m2) <= rel_tol * max(self.m1, self.m2)

    @property
    def inv_sum(self) -> float:
        return 1.0 / self.m1 + 1.0 / self.m2

    @property
    def inv_diff(self) -> float:
        return 1.0 / self.m1 - 1.0 / self.m2


@dataclass(frozen=True)
class TorusVector:
    """A point of the three-torus; components normalized into (-pi, pi]."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self) -> None:
        for name in ("c1", "c2", "c3"):
            object.__setattr__(self, name, _wrap(float(getattr(self, name))))

    @property
    def components(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)

    def as_array(self) -> np.ndarray:
        return np.array(self.components)

    def is_interior(self) -> bool:
        """True iff every component lies in the open cube (-pi, pi)^3."""
        return all(-math.pi < c < math.pi for c in self.components)

    def __neg__(self) -> "TorusVector":
        return type(self)(-self.c1, -self.c2, -self.c3)


class Quasimomentum(TorusVector):
    """Total quasi-momentum k of the two-particle fiber Hamiltonian."""


class RelativeMomentum(TorusVector):
    """Relative momentum q (evaluation/integration variable)."""


def _canonical_entries(entries: Mapping[Site, float]) -> dict[Site, float]:
    """Drop exact zeros, validate finiteness and evenness, fill missing pairs."""
    out: dict[Site, float] = {}
    for s, v in entries.items():
        s = (int(s[0]), int(s[1]), int(s[2]))
        v = float(v)
        if not math.isfinite(v):
            raise PotentialFormatError(f"non-finite value {v!r} at site {s}")
        if v == 0.0:
            continue
        neg = (-s[0], -s[1], -s[2])
        if s in out and out[s] != v:
            raise EvennessError(f"conflicting values at site {s}: {out[s]} vs {v}")
        if neg in out and out[neg] != v:
            raise EvennessError(
                f"evenness violated: v({neg})={out[neg]} but v({s})={v}"
            )
        out[s] = v
        out[neg] = v
    return out


@dataclass(frozen=True)
class Potential:
    """Finitely supported even real function v-hat on the lattice Z^3."""

    entries: Mapping[Site, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", _canonical_entries(self.entries))

    @property
    def support_radius(self) -> int:
        """Max sup-norm over supported sites (0 for the empty potential)."""
        if not self.entries:
            return 0
        return max(max(abs(c) for c in s) for s in self.entries)

    def is_nonnegative(self) -> bool:
        return all(v >= 0.0 for v in self.entries.values())

    def is_empty(self) -> bool:
        return not self.entries

    def value(self, s: Site) -> float:
        return self.entries.get((int(s[0]), int(s[1]), int(s[2])), 0.0)

    def scaled(self, c: float) -> "Potential":
        return Potential({s: c * v for s, v in self.entries.items()})

    def sorted_sites(self) -> list[Site]:
        return sorted(self.entries)

    def axis_sites(self, j: int) -> list[int]:
        """Integers s with v(s * e_j) != 0, for axis j in {0, 1, 2}."""
        out = []
        for site, _ in self.entries.items():
            if all(site[i] == 0 for i in range(3) if i != j):
                out.append(site[j])
        return sorted(out)


def load_potential(source: Union[str, bytes, IO]) -> Potential:
    """Parse the JSON potential format and return the symmetrized Potential.

    Format: ``{"sites": [{"s": [i, j, k], "v": number}, ...]}``.  A site's
    negative pair is auto-filled when absent; conflicting pairs and
    duplicate sites are rejected.
    """
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise PotentialFormatError(f"not valid UTF-8: {exc}") from exc
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise PotentialFormatError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict) or "sites" not in doc or not isinstance(doc["sites"], list):
        raise PotentialFormatError('expected an object with a "sites" list')
    raw: dict[Site, float] = {}
    for item in doc["sites"]:
        try:
            s = item["s"]
            v = item["v"]
        except (TypeError, KeyError) as exc:
            raise PotentialFormatError(f"bad site record {item!r}") from exc
        if (
            not isinstance(s, list)
            or len(s) != 3
            or not all(isinstance(c, int) for c in s)
        ):
            raise PotentialFormatError(f"site must be a triple of integers, got {s!r}")
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise PotentialFormatError(f"value must be a number, got {v!r}")
        site: Site = (s[0], s[1], s[2])
        if site in raw:
            raise PotentialFormatError(f"duplicate site {site}")
        raw[site] = float(v)
    # detect explicit pair conflicts before zero-dropping canonicalization
    for site, v in raw.items():
        neg = (-site[0], -site[1], -site[2])
        if neg in raw and raw[neg] != v:
            raise EvennessError(
                f"evenness violated: v({site})={v} but v({neg})={raw[neg]}"
            )
    return Potential(raw)


def save_potential(pot: Potential) -> str:
    """Serialize to the canonical (sorted, fully symmetrized) JSON form."""
    sites = [{"s": list(s), "v": pot.entries[s]} for s in pot.sorted_sites()]
    return json.dumps({"sites": sites}, indent=2) + "\n"


def momentum_kernel(pot: Potential, q: TorusVector) -> float:
    """Fourier series of v-hat at q; real because the potential is even."""
    qa = q.as_array()
    total = 0.0
    for s, v in pot.entries.items():
        total += v * math.cos(float(qa @ np.array(s)))
    return (TWO_PI) ** -1.5 * total


@dataclass(frozen=True)
class MomentumGrid:
    """Uniform N^3 grid on the torus with a fractional sub-step offset.

    Node components are -pi + (n + offset) * (2*pi/N), n = 0..N-1.  The
    default offset 0.5 keeps every component away from 0 and pi, so the
    dispersion minimum never coincides with a node.
    """

    n_per_dim: int
    offset: float = 0.5

    def __post_init__(self) -> None:
        if self.n_per_dim < 2:
            raise ValueError(f"need N >= 2, got {self.n_per_dim}")
        if not (0.0 <= self.offset < 1.0):
            raise ValueError(f"offset must be in [0, 1), got {self.offset}")

    @property
    def dim(self) -> int:
        return self.n_per_dim**3

    def axis_nodes(self) -> np.ndarray:
        n = self.n_per_dim
        return -math.pi + (np.arange(n) + self.offset) * (TWO_PI / n)

    def nodes(self) -> np.ndarray:
        """All N^3 nodes as an (N^3, 3) array in C (row-major) index order."""
        a = self.axis_nodes()
        g = np.stack(np.meshgrid(a, a, a, indexing="ij"), axis=-1)
        return g.reshape(-1, 3)
