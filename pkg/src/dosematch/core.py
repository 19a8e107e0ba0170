"""Domain model for paired observational data with continuous treatments.

Units carry a dose, an outcome, and covariates; a matched-pair set pairs
units without replacement such that every pair has two strictly different
doses.  All types are immutable after construction and all operations are
pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np


class DataError(ValueError):
    """Raised when input data violates a structural requirement."""


@dataclass(frozen=True)
class Unit:
    """One study unit: identifier, treatment dose, outcome, covariates."""

    id: str
    dose: float
    outcome: float
    covariates: tuple[float, ...]

    def __post_init__(self):
        if not np.isfinite(self.dose):
            raise DataError(f"unit {self.id!r}: dose is not finite")
        if not np.isfinite(self.outcome):
            raise DataError(f"unit {self.id!r}: outcome is not finite")
        object.__setattr__(self, "covariates", tuple(float(c) for c in self.covariates))


@dataclass(frozen=True)
class Cohort:
    """Ordered pre-matching sample of N units with named covariates."""

    units: tuple[Unit, ...]
    covariate_names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "units", tuple(self.units))
        object.__setattr__(self, "covariate_names", tuple(self.covariate_names))
        if len(self.units) < 2:
            raise DataError("cohort needs at least 2 units")
        k = len(self.covariate_names)
        ids = set()
        for u in self.units:
            if len(u.covariates) != k:
                raise DataError(
                    f"unit {u.id!r} has {len(u.covariates)} covariates, expected {k}")
            if u.id in ids:
                raise DataError(f"duplicate unit id {u.id!r}")
            ids.add(u.id)

    @property
    def n_units(self) -> int:
        return len(self.units)

    @property
    def n_covariates(self) -> int:
        return len(self.covariate_names)

    def covariate_matrix(self) -> np.ndarray:
        """N x K array of covariates in unit order."""
        return np.array([u.covariates for u in self.units], dtype=float)

    def doses(self) -> np.ndarray:
        return np.array([u.dose for u in self.units], dtype=float)

    def outcomes(self) -> np.ndarray:
        return np.array([u.outcome for u in self.units], dtype=float)

    def index_by_id(self) -> dict[str, int]:
        return {u.id: i for i, u in enumerate(self.units)}


@dataclass(frozen=True)
class MatchedPair:
    """Two paired units; the lower/higher dose are derived, never stored raw.

    Pairs with equal doses are rejected: a zero dose gap identifies nothing
    and leaves the high-dose indicator undefined.
    """

    unit_low: Unit
    unit_high: Unit
    z_star: float = field(init=False)
    z_dblstar: float = field(init=False)

    def __post_init__(self):
        if self.unit_low.dose == self.unit_high.dose:
            raise DataError(
                f"pair ({self.unit_low.id!r}, {self.unit_high.id!r}): equal doses")
        if self.unit_low.dose > self.unit_high.dose:
            lo, hi = self.unit_high, self.unit_low
            object.__setattr__(self, "unit_low", lo)
            object.__setattr__(self, "unit_high", hi)
        object.__setattr__(self, "z_star", self.unit_low.dose)
        object.__setattr__(self, "z_dblstar", self.unit_high.dose)

    @classmethod
    def from_units(cls, a: Unit, b: Unit) -> "MatchedPair":
        return cls(unit_low=a, unit_high=b)

    @property
    def gap(self) -> float:
        return self.z_dblstar - self.z_star


@dataclass(frozen=True)
class MatchedPairSet:
    """I matched pairs drawn without replacement from a source cohort."""

    pairs: tuple[MatchedPair, ...]
    source_cohort: Cohort

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        if len(self.pairs) < 1:
            raise DataError("matched pair set needs at least 1 pair")
        violations = validate_pair_set(self)
        if violations:
            raise DataError("invalid pair set: " + "; ".join(map(str, violations)))

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class DuplicateUnit:
    unit_id: str

    def __str__(self):
        return f"unit {self.unit_id!r} appears in more than one pair"


@dataclass(frozen=True)
class NonStrictDoseOrder:
    pair_index: int

    def __str__(self):
        return f"pair {self.pair_index} has equal doses"


@dataclass(frozen=True)
class DanglingUnitRef:
    unit_id: str
    pair_index: int

    def __str__(self):
        return f"pair {self.pair_index} references unknown unit {self.unit_id!r}"


def validate_pair_set(pairs) -> list:
    """Collect invariant violations of a pair set (empty list means valid).

    Accepts either a MatchedPairSet or a (pairs, cohort) pair of raw
    sequences so that invalid candidates can be checked before
    construction.
    """
    if isinstance(pairs, MatchedPairSet):
        pair_seq: Sequence[MatchedPair] = pairs.pairs
        cohort = pairs.source_cohort
    else:
        pair_seq, cohort = pairs
    known = {u.id for u in cohort.units}
    violations: list = []
    seen: set[str] = set()
    flagged: set[str] = set()
    for idx, p in enumerate(pair_seq):
        if p.z_star >= p.z_dblstar:
            violations.append(NonStrictDoseOrder(idx))
        for u in (p.unit_low, p.unit_high):
            if u.id not in known:
                violations.append(DanglingUnitRef(u.id, idx))
            if u.id in seen and u.id not in flagged:
                violations.append(DuplicateUnit(u.id))
                flagged.add(u.id)
            seen.add(u.id)
    return violations


def dose_gap_total(pairs: MatchedPairSet) -> float:
    """Sum of within-pair dose gaps, the shared estimator denominator."""
    seq = pairs.pairs
    if len(seq) == 0:
        raise DataError("no pairs")
    return float(sum(p.gap for p in seq))
