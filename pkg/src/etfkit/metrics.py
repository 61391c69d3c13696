"""Certification and analysis: coherence, Welch bound, tightness, ETF
certificates, Gram comparison, spark, and brute-force restricted-isometry
constants.

Subset searches are exhaustive by design; the constructions in this package
are desk-scale and exactness is the point.  Frames carrying an exact integer
form get rational arithmetic (Fraction results); everything else is certified
in floating point against the stated tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, isqrt

import numpy as np

from .errors import (
    BadDimensions,
    EnumerationBudgetExceeded,
    NotUnitNorm,
    SearchBudgetExceeded,
    ShapeMismatch,
    TooFewColumns,
)
from .frames import Frame

DEFAULT_TOL = 1e-9
SPARK_COLUMN_GUARD = 64
RIP_SUBSET_GUARD = 10 ** 7
_EIG_CHUNK = 65536


def _require_unit_norm(frame: Frame, tol: float) -> None:
    norms = np.linalg.norm(frame.entries, axis=0)
    worst = float(np.abs(norms - 1.0).max())
    if worst > tol:
        raise NotUnitNorm(f"column norms deviate from 1 by {worst:.3e}")


def coherence(frame: Frame, tol: float = DEFAULT_TOL):
    """Largest inner-product modulus over distinct columns.

    Returns a Fraction (exact) for frames with an integer form, a float
    otherwise.
    """
    if frame.n < 2:
        raise TooFewColumns("coherence needs at least two columns")
    _require_unit_norm(frame, tol)
    if frame.exact_ints is not None:
        g, d = frame.gram_exact()
        off = np.abs(g[~np.eye(frame.n, dtype=bool)])
        return Fraction(int(off.max()), d)
    g = frame.gram()
    off = np.abs(g[~np.eye(frame.n, dtype=bool)])
    return float(off.max())


def welch_bound(m: int, n: int) -> float:
    """sqrt((n - m) / (m (n - 1))): the coherence floor for n unit vectors in
    dimension m."""
    if not (1 <= m <= n and n >= 2):
        raise BadDimensions(f"need 1 <= m <= n and n >= 2, got m={m}, n={n}")
    return ((n - m) / (m * (n - 1))) ** 0.5


def welch_bound_exact(m: int, n: int) -> str | None:
    """Exact 'a/b' form of the Welch bound when it is rational, else None."""
    if not (1 <= m <= n and n >= 2):
        raise BadDimensions(f"need 1 <= m <= n and n >= 2, got m={m}, n={n}")
    sq = Fraction(n - m, m * (n - 1))
    if sq == 0:
        return "0"
    p, q = sq.numerator, sq.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return f"{rp}/{rq}" if rq > 1 else str(rp)
    return None


@dataclass(frozen=True)
class EtfCertificate:
    """Welch-bound equality, tightness, and equiangularity in one verdict.

    passed needs coherence within tol of the Welch bound, frame operator
    within tol of (N/M) I, a flat off-diagonal Gram profile, and genuine
    overcompleteness (n > m): an orthonormal basis is a frame, not an ETF.
    """

    m: int
    n: int
    coherence: float
    coherence_exact: str | None
    welch: float
    tightness_residual: float
    offdiag_max: float
    offdiag_min: float
    potential_residual: float
    exact: bool
    tol: float

    @property
    def welch_gap(self) -> float:
        return self.coherence - self.welch

    @property
    def overcomplete(self) -> bool:
        return self.n > self.m

    @property
    def welch_equality(self) -> bool:
        return self.welch_gap <= self.tol

    @property
    def tight(self) -> bool:
        return self.tightness_residual <= self.tol

    @property
    def equiangular(self) -> bool:
        return (self.offdiag_max - self.offdiag_min) <= self.tol

    @property
    def passed(self) -> bool:
        return self.overcomplete and self.welch_equality and self.tight and self.equiangular

    def as_dict(self) -> dict:
        return {
            "report": "etf-certificate",
            "passed": self.passed,
            "m": self.m, "n": self.n,
            "coherence": self.coherence,
            "coherence_exact": self.coherence_exact,
            "welch_bound": self.welch,
            "welch_gap": self.welch_gap,
            "tightness_residual": self.tightness_residual,
            "offdiag_max": self.offdiag_max,
            "offdiag_min": self.offdiag_min,
            "potential_residual": self.potential_residual,
            "criteria": {
                "welch_equality": self.welch_equality,
                "tightness": self.tight,
                "equiangularity": self.equiangular,
                "overcomplete": self.overcomplete,
            },
            "overcomplete": self.overcomplete,
            "exact_arithmetic": self.exact,
            "tol": self.tol,
        }


def certify_etf(frame: Frame, tol: float = DEFAULT_TOL) -> EtfCertificate:
    """Full certificate; exact rational arithmetic when the frame carries an
    integer form, floating point otherwise."""
    m, n = frame.m, frame.n
    welch = welch_bound(m, n)
    if frame.exact_ints is not None:
        g_int, d = frame.gram_exact()
        mask = ~np.eye(n, dtype=bool)
        off = np.abs(g_int[mask])
        mu = Fraction(int(off.max()), d)
        mu_min = Fraction(int(off.min()), d)
        op = frame.exact_ints @ frame.exact_ints.T
        op_off = int(np.abs(op[~np.eye(m, dtype=bool)]).max()) if m > 1 else 0
        diag_dev = max(abs(Fraction(int(x), d) - Fraction(n, m)) for x in np.diag(op))
        tight_res = max(Fraction(op_off, d), diag_dev)
        pot = Fraction(int(np.sum(g_int.astype(object) ** 2)), d * d)
        pot_res = abs(pot - Fraction(n * n, m))
        return EtfCertificate(
            m=m, n=n, coherence=float(mu), coherence_exact=str(mu),
            welch=welch, tightness_residual=float(tight_res),
            offdiag_max=float(mu), offdiag_min=float(mu_min),
            potential_residual=float(pot_res), exact=True, tol=tol,
        )
    g = frame.gram()
    mask = ~np.eye(n, dtype=bool)
    off = np.abs(g[mask])
    op = frame.entries @ frame.entries.conj().T
    tight_res = float(np.abs(op - (n / m) * np.eye(m)).max())
    pot = float(np.sum(np.abs(g) ** 2))
    return EtfCertificate(
        m=m, n=n, coherence=float(off.max()), coherence_exact=None,
        welch=welch, tightness_residual=tight_res,
        offdiag_max=float(off.max()), offdiag_min=float(off.min()),
        potential_residual=abs(pot - n * n / m), exact=False, tol=tol,
    )


@dataclass(frozen=True)
class MatchReport:
    """Entrywise Gram comparison of two frames over the same column count."""

    n: int
    max_dev: float
    witness: tuple[int, int] | None
    exact: bool
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_dev <= self.tol

    def as_dict(self) -> dict:
        return {
            "report": "gram-comparison",
            "passed": self.passed,
            "n": self.n,
            "max_dev": self.max_dev,
            "witness": list(self.witness) if self.witness else None,
            "exact_arithmetic": self.exact,
            "tol": self.tol,
        }


def gram_equal(a: Frame, b: Frame, tol: float = DEFAULT_TOL) -> MatchReport:
    """Compare the two N x N Gram matrices entrywise; exact when both frames
    carry integer forms (cross-multiplied integer comparison, no tolerance)."""
    if a.n != b.n:
        raise ShapeMismatch(f"column counts differ: {a.n} != {b.n}")
    if a.exact_ints is not None and b.exact_ints is not None:
        ga, da = a.gram_exact()
        gb, db = b.gram_exact()
        diff = np.abs(ga.astype(object) * db - gb.astype(object) * da)
        max_int = diff.max()
        if max_int == 0:
            return MatchReport(n=a.n, max_dev=0.0, witness=None, exact=True, tol=tol)
        i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
        return MatchReport(n=a.n, max_dev=float(Fraction(int(max_int), da * db)),
                           witness=(int(i), int(j)), exact=True, tol=tol)
    diff = np.abs(a.gram() - b.gram())
    i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
    max_dev = float(diff[i, j])
    return MatchReport(n=a.n, max_dev=max_dev,
                       witness=(int(i), int(j)) if max_dev > tol else None,
                       exact=False, tol=tol)


def _rank_threshold(n: int) -> float:
    return 1e-8 * np.sqrt(n)


def _min_eigs(gram: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    """Smallest eigenvalue of each subset's Gram submatrix (batched)."""
    sub = gram[subsets[:, :, None], subsets[:, None, :]]
    return np.linalg.eigvalsh(sub)[:, 0]


def _subset_batches(n: int, size: int):
    batch = []
    for c in combinations(range(n), size):
        batch.append(c)
        if len(batch) == _EIG_CHUNK:
            yield np.array(batch, dtype=np.intp)
            batch = []
    if batch:
        yield np.array(batch, dtype=np.intp)


@dataclass(frozen=True)
class SparkReport:
    """Smallest dependent column-subset size, or a lower bound when capped."""

    n: int
    spark: int | None
    lower_bound: int
    witness: tuple[int, ...] | None
    structural_witness: tuple[int, ...] | None
    structural_rank: int | None
    exact: bool

    def as_dict(self) -> dict:
        return {
            "report": "spark",
            "passed": self.spark is not None,
            "n": self.n,
            "spark": self.spark,
            "lower_bound": self.lower_bound,
            "witness": list(self.witness) if self.witness else None,
            "structural_witness": list(self.structural_witness) if self.structural_witness else None,
            "structural_rank": self.structural_rank,
            "exact": self.exact,
        }


def spark(frame: Frame, max_subset: int | None = None, allow_large: bool = False) -> SparkReport:
    """Exact spark by increasing-size subset search.

    A subset is dependent when the smallest singular value of its column
    submatrix falls below 1e-8 sqrt(N) (equivalently its Gram's smallest
    eigenvalue below the square).  Frames from resolvable constructions also
    get the structural witness: the R+1 columns sharing one design point are
    supported on only R rows.
    """
    n = frame.n
    if n > SPARK_COLUMN_GUARD and not allow_large:
        raise SearchBudgetExceeded(
            f"{n} columns exceeds the guard ({SPARK_COLUMN_GUARD}); pass allow_large to override")
    limit = n if max_subset is None else min(max_subset, n)
    if n > frame.m:
        limit = min(limit, frame.m + 1)  # m+1 columns in m dimensions always depend

    structural = None
    structural_rank = None
    big_r = frame.provenance.get("r")
    if frame.provenance.get("construction") in ("steiner", "kirkman", "mcfarland-kirkman") and big_r:
        structural = tuple(range(big_r + 1))
        sub = frame.entries[:, list(structural)]
        svals = np.linalg.svd(sub, compute_uv=False)
        structural_rank = int(np.sum(svals > _rank_threshold(n)))
        limit = min(limit, big_r + 1)

    gram = frame.gram()
    thr_sq = _rank_threshold(n) ** 2
    for size in range(1, limit + 1):
        for subsets in _subset_batches(n, size):
            eigs = _min_eigs(gram, subsets)
            hits = np.nonzero(eigs < thr_sq)[0]
            if hits.size:
                witness = tuple(int(x) for x in subsets[hits[0]])
                return SparkReport(n=n, spark=size, lower_bound=size, witness=witness,
                                   structural_witness=structural,
                                   structural_rank=structural_rank, exact=True)
    return SparkReport(n=n, spark=None, lower_bound=limit + 1, witness=None,
                       structural_witness=structural, structural_rank=structural_rank,
                       exact=False)


@dataclass(frozen=True)
class RipReport:
    """Exact restricted-isometry constant for one subset size."""

    n: int
    size: int
    delta: float
    min_eig: float
    max_eig: float
    gershgorin: float
    subsets: int

    @property
    def satisfied(self) -> bool:
        return self.delta < 1.0

    def as_dict(self) -> dict:
        return {
            "report": "rip",
            "passed": self.satisfied,
            "n": self.n,
            "l": self.size,
            "delta": self.delta,
            "min_eig": self.min_eig,
            "max_eig": self.max_eig,
            "gershgorin_bound": self.gershgorin,
            "subsets": self.subsets,
        }


def rip_delta(frame: Frame, size: int) -> RipReport:
    """delta_L = max over L-subsets of the spectral deviation of the subset
    Gram from the identity, by exhaustive enumeration."""
    n = frame.n
    if not 1 <= size <= n:
        raise BadDimensions(f"need 1 <= L <= {n}, got {size}")
    total = comb(n, size)
    if total > RIP_SUBSET_GUARD:
        raise EnumerationBudgetExceeded(f"C({n},{size}) = {total} exceeds the guard {RIP_SUBSET_GUARD}")
    gram = frame.gram()
    lo, hi = np.inf, -np.inf
    for subsets in _subset_batches(n, size):
        sub = gram[subsets[:, :, None], subsets[:, None, :]]
        eigs = np.linalg.eigvalsh(sub)
        lo = min(lo, float(eigs[:, 0].min()))
        hi = max(hi, float(eigs[:, -1].max()))
    delta = max(abs(1.0 - lo), abs(hi - 1.0))
    mu = coherence(frame)
    return RipReport(n=n, size=size, delta=float(delta), min_eig=lo, max_eig=hi,
                     gershgorin=float((size - 1) * mu), subsets=total)


@dataclass(frozen=True)
class SteinerRipReport:
    """Per-L RIP constants for a frame with a design provenance, against the
    structural cutoff L <= R."""

    applicable: bool
    big_r: int | None
    cutoff_formula: float | None
    per_l: tuple[tuple[int, float], ...]

    @property
    def consistent(self) -> bool:
        if not self.applicable:
            return False
        return all((delta < 1.0) == (size <= self.big_r) for size, delta in self.per_l)

    def as_dict(self) -> dict:
        return {
            "report": "steiner-rip",
            "passed": self.consistent if self.applicable else None,
            "applicable": self.applicable,
            "r": self.big_r,
            "cutoff_formula": self.cutoff_formula,
            "deltas": [{"l": s, "delta": d} for s, d in self.per_l],
        }


def steiner_rip_verdict(frame: Frame, max_size: int | None = None) -> SteinerRipReport:
    """Check that delta_L < 1 exactly when L <= R, for every L up to R+1 that
    fits the enumeration budget; R comes from the frame's provenance and the
    cutoff formula sqrt((rho M - 1)/(rho - 1)) from its dimensions."""
    big_r = frame.provenance.get("r")
    if frame.provenance.get("construction") not in ("steiner", "kirkman", "mcfarland-kirkman") or not big_r:
        return SteinerRipReport(applicable=False, big_r=None, cutoff_formula=None, per_l=())
    rho = frame.n / frame.m
    cutoff = ((rho * frame.m - 1) / (rho - 1)) ** 0.5
    top = min(big_r + 1, max_size if max_size is not None else big_r + 1)
    per_l = []
    for size in range(2, top + 1):
        if comb(frame.n, size) > RIP_SUBSET_GUARD:
            break
        per_l.append((size, rip_delta(frame, size).delta))
    return SteinerRipReport(applicable=True, big_r=big_r, cutoff_formula=cutoff,
                            per_l=tuple(per_l))
