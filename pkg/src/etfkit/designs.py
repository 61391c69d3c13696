"""(2,K,V)-Steiner systems: construction, validation, resolutions, serialization.

A SteinerSystem is stored in canonical form: each block is a sorted tuple of
0-based point indices, blocks within a parallel class are sorted, and classes
are sorted by their smallest block.  Canonical form is what makes the golden
fixtures byte-stable; all constructors here emit it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from . import gf
from .errors import DesignFormatError, FieldConstructionError, NotResolvableParameters, OddPointCount


@dataclass(frozen=True)
class SteinerSystem:
    """V points, B blocks of size K, every point pair in exactly one block.

    resolution, when present, lists R parallel classes, each a list of block
    indices whose blocks partition the point set.
    """

    v: int
    k: int
    blocks: tuple[tuple[int, ...], ...]
    resolution: tuple[tuple[int, ...], ...] | None = None

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def r(self) -> int:
        return (self.v - 1) // (self.k - 1)

    @property
    def s(self) -> int:
        return self.v // self.k

    def classes(self) -> list[list[tuple[int, ...]]]:
        if self.resolution is None:
            raise NotResolvableParameters("design carries no resolution")
        return [[self.blocks[i] for i in cls] for cls in self.resolution]

    def to_json(self) -> str:
        doc = {
            "v": self.v,
            "k": self.k,
            "blocks": [list(b) for b in self.blocks],
            "resolution": None if self.resolution is None else [list(c) for c in self.resolution],
        }
        return json.dumps(doc, sort_keys=True)


@dataclass(frozen=True)
class DesignParams:
    """Arithmetic consequences of (K, V) plus feasibility flags."""

    v: int
    k: int
    r: int | None
    b: int | None
    s: int | None
    w: int | None
    flags: dict = field(default_factory=dict)


def parse_design(text: str) -> SteinerSystem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DesignFormatError(f"invalid JSON: {e}") from e
    try:
        v, k = int(doc["v"]), int(doc["k"])
        blocks = tuple(tuple(int(p) for p in blk) for blk in doc["blocks"])
        res = doc.get("resolution")
        resolution = None if res is None else tuple(tuple(int(i) for i in cls) for cls in res)
    except (KeyError, TypeError, ValueError) as e:
        raise DesignFormatError(f"malformed design document: {e}") from e
    if any(not 0 <= p < v for blk in blocks for p in blk):
        raise DesignFormatError("block contains a point index out of range")
    if resolution is not None and any(not 0 <= i < len(blocks) for cls in resolution for i in cls):
        raise DesignFormatError("resolution references a block index out of range")
    return SteinerSystem(v=v, k=k, blocks=blocks, resolution=resolution)


def _canonicalize(classes: list[list[tuple[int, ...]]]) -> tuple[tuple, tuple]:
    """Sort blocks within classes, classes by smallest block; flatten class-major."""
    classes = [sorted(tuple(sorted(b)) for b in cls) for cls in classes]
    classes.sort(key=lambda cls: cls[0])
    blocks = []
    resolution = []
    for cls in classes:
        idx = []
        for blk in cls:
            idx.append(len(blocks))
            blocks.append(blk)
        resolution.append(tuple(idx))
    return tuple(blocks), tuple(resolution)


def steiner_params(k: int, v: int) -> DesignParams:
    """Parameter arithmetic for a putative (2,k,v)-Steiner system.

    Infeasibility is reported in flags rather than raised: r and b integrality,
    Fisher's count bound, and the resolvability congruence v = k mod k(k-1)
    (equivalently integral w with v = w*k*(k-1) + k).
    """
    if not (v > k >= 2):
        raise ValueError(f"need v > k >= 2, got k={k}, v={v}")
    r_num, r_den = v - 1, k - 1
    b_num, b_den = v * (v - 1), k * (k - 1)
    r = r_num // r_den if r_num % r_den == 0 else None
    b = b_num // b_den if b_num % b_den == 0 else None
    s = v // k if v % k == 0 else None
    w = (v - k) // (k * (k - 1)) if (v - k) % (k * (k - 1)) == 0 else None
    flags = {
        "r_integral": r is not None,
        "b_integral": b is not None,
        "fisher": b is not None and b >= v,
        "k_divides_v": s is not None,
        "resolvable_congruence": v % (k * (k - 1)) == k % (k * (k - 1)),
        "bose": b is not None and r is not None and b >= v + r - 1,
    }
    return DesignParams(v=v, k=k, r=r, b=b, s=s, w=w, flags=flags)


def affine_design(q: int, j: int) -> SteinerSystem:
    """Resolvable (2, q, q^(j+1)) system whose blocks are the affine lines of
    a (j+1)-dimensional space over GF(q).

    Points are field elements of GF(q^(j+1)) in canonical index order.  The
    line with direction exponent r and hyperplane offset s is
    { s*g^-r*d^-1 + t*g^-r : t in GF(q) } for the canonical primitive element
    g and trace-one element d; class r collects the lines of direction g^-r.
    Output is re-sorted into canonical form like every other constructor.
    """
    _, design = affine_structure(q, j)
    blocks, resolution = _canonicalize(design.classes())
    return SteinerSystem(v=design.v, k=design.k, blocks=blocks, resolution=resolution)


@dataclass(frozen=True)
class AffineStructure:
    """The field data behind an affine design, kept in (r, s) order.

    hyperplane lists the trace-zero elements in canonical order; class r of
    the design has its blocks indexed by hyperplane position, which is the
    alignment the harmonic/flat-frame comparison needs.
    """

    q: int
    j: int
    field: gf.FiniteField
    hyperplane: tuple
    gamma: gf.FieldElement
    delta: gf.FieldElement


def affine_structure(q: int, j: int) -> tuple[AffineStructure, SteinerSystem]:
    """Affine design in natural (r, s) block order plus its field data."""
    pp = gf.prime_power(q)
    if pp is None:
        raise FieldConstructionError(f"q = {q} is not a prime power")
    p, d = pp
    if j < 1:
        raise ValueError(f"need j >= 1, got {j}")
    fld = gf.make_field(p, d * (j + 1))
    hyper = gf.hyperplane_kernel(fld, q)
    gamma = fld.primitive
    delta = gf.trace_one_element(fld, q)
    subfield = fld.subfield_elements(d)
    big_r = (q ** (j + 1) - 1) // (q - 1)

    gamma_inv = gamma.inverse()
    delta_inv = delta.inverse()
    blocks = []
    resolution = []
    g_pow = fld.one  # gamma^-r, advanced per class
    for _ in range(big_r):
        cls = []
        base = g_pow * delta_inv
        for s_elt in hyper:
            start = s_elt * base
            blk = tuple(sorted((start + t * g_pow).index for t in subfield))
            cls.append(len(blocks))
            blocks.append(blk)
        resolution.append(tuple(cls))
        g_pow = g_pow * gamma_inv

    design = SteinerSystem(v=fld.order, k=q, blocks=tuple(blocks), resolution=tuple(resolution))
    structure = AffineStructure(q=q, j=j, field=fld, hyperplane=tuple(hyper), gamma=gamma, delta=delta)
    return structure, design


def round_robin_design(v: int) -> SteinerSystem:
    """The complete (2,2,v) design resolved by the circle-method schedule.

    Round r pairs {v-1, r} and {(r+i) mod (v-1), (r-i) mod (v-1)} for
    i = 1 .. v/2 - 1, then the rounds are put in canonical form.
    """
    if v < 4 or v % 2:
        raise OddPointCount(f"round-robin resolution needs an even v >= 4, got {v}")
    n = v - 1
    classes = []
    for r in range(n):
        cls = [(v - 1, r)]
        for i in range(1, v // 2):
            cls.append(((r + i) % n, (r - i) % n))
        classes.append([tuple(sorted(pair)) for pair in cls])
    blocks, resolution = _canonicalize(classes)
    return SteinerSystem(v=v, k=2, blocks=blocks, resolution=resolution)


# A classical resolvable (2,3,15) triple system (schoolgirl schedule), frozen
# in canonical form: 7 days of 5 disjoint triples covering each pair once.
_KIRKMAN15_CLASSES = (
    ((0, 1, 2), (3, 7, 11), (4, 9, 14), (5, 10, 12), (6, 8, 13)),
    ((0, 3, 4), (1, 7, 9), (2, 12, 13), (5, 8, 14), (6, 10, 11)),
    ((0, 5, 6), (1, 8, 10), (2, 11, 14), (3, 9, 13), (4, 7, 12)),
    ((0, 7, 8), (1, 11, 13), (2, 4, 5), (3, 10, 14), (6, 9, 12)),
    ((0, 9, 10), (1, 12, 14), (2, 3, 6), (4, 8, 11), (5, 7, 13)),
    ((0, 11, 12), (1, 3, 5), (2, 8, 9), (4, 10, 13), (6, 7, 14)),
    ((0, 13, 14), (1, 4, 6), (2, 7, 10), (3, 8, 12), (5, 9, 11)),
)


def kirkman15() -> SteinerSystem:
    """The embedded resolvable (2,3,15) system: 35 triples in 7 parallel classes."""
    blocks, resolution = _canonicalize([list(cls) for cls in _KIRKMAN15_CLASSES])
    return SteinerSystem(v=15, k=3, blocks=blocks, resolution=resolution)


@dataclass(frozen=True)
class ValidationReport:
    """Per-invariant pass/fail, with the first counterexample on failure."""

    checks: tuple[tuple[str, bool, str], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def failures(self) -> list[str]:
        return [name for name, passed, _ in self.checks if not passed]

    def as_dict(self) -> dict:
        return {
            "report": "design-validation",
            "passed": self.ok,
            "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in self.checks],
        }


def validate(design: SteinerSystem) -> ValidationReport:
    """Check every Steiner/resolution invariant, reporting each separately."""
    checks = []
    v, k, blocks = design.v, design.k, design.blocks

    bad = next((b for b in blocks if len(set(b)) != k), None)
    checks.append(("block_sizes", bad is None, "" if bad is None else f"block {bad} does not have {k} distinct points"))

    counts = [0] * v
    for blk in blocks:
        for p in blk:
            counts[p] += 1
    r_expected = (v - 1) / (k - 1)
    bad_pt = next((p for p in range(v) if counts[p] != r_expected), None)
    checks.append(("replication", bad_pt is None,
                   "" if bad_pt is None else f"point {bad_pt} lies in {counts[bad_pt]} blocks, expected {r_expected:g}"))

    pair_counts = {}
    for blk in blocks:
        for pr in combinations(sorted(set(blk)), 2):
            pair_counts[pr] = pair_counts.get(pr, 0) + 1
    bad_pair = next((pr for pr, c in pair_counts.items() if c != 1), None)
    if bad_pair is None:
        missing = next((pr for pr in combinations(range(v), 2) if pr not in pair_counts), None)
        checks.append(("pair_coverage", missing is None, "" if missing is None else f"pair {missing} is uncovered"))
    else:
        checks.append(("pair_coverage", False, f"pair {bad_pair} is covered {pair_counts[bad_pair]} times"))

    b = len(blocks)
    r = design.r if (v - 1) % (k - 1) == 0 else None
    ident = r is not None and b * k == v * r and r * (k - 1) == v - 1
    checks.append(("parameter_identities", ident, "" if ident else f"BK = {b * k}, VR undefined or mismatched"))
    checks.append(("fisher", b >= v, "" if b >= v else f"B = {b} < V = {v}"))
    checks.append(("k_divides_v", v % k == 0,
                   "" if v % k == 0 else f"{k} does not divide {v}: no block subset can partition the points"))

    if design.resolution is not None:
        res = design.resolution
        flat = sorted(i for cls in res for i in cls)
        part = flat == list(range(b))
        checks.append(("resolution_partitions_blocks", part,
                       "" if part else "classes do not partition the block list"))
        bad_cls = None
        for ci, cls in enumerate(res):
            cover = sorted(p for i in cls for p in blocks[i])
            if cover != list(range(v)):
                bad_cls = ci
                break
        checks.append(("classes_partition_points", bad_cls is None,
                       "" if bad_cls is None else f"class {bad_cls} does not partition the point set"))
        bose = r is not None and b >= v + r - 1
        checks.append(("bose", bose, "" if bose else f"B = {b} < V + R - 1"))

    return ValidationReport(checks=tuple(checks))


@dataclass(frozen=True)
class FeasibilityReport:
    """Difference-set arithmetic for resolvable parameters (informational)."""

    v: int
    k: int
    w: int
    m: int
    n: int
    lam: int
    degree: int
    lam_integral: bool
    degree_square: bool

    def as_dict(self) -> dict:
        return {
            "report": "harmonic-feasibility",
            "passed": self.lam_integral and self.degree_square,
            "v": self.v, "k": self.k, "w": self.w, "m": self.m, "n": self.n,
            "lambda": self.lam, "degree": self.degree,
            "lambda_integral": self.lam_integral, "degree_square": self.degree_square,
        }


def harmonic_feasibility(k: int, v: int) -> FeasibilityReport:
    """Replication count and degree a difference set with these frame
    dimensions would need: Lambda = M(M-1)/(N-1) = W[W(K-1)+1], degree
    M - Lambda = [W(K-1)+1]^2.  Informational only; says nothing about
    whether such a set exists.
    """
    params = steiner_params(k, v)
    if params.w is None or params.r is None or params.b is None:
        raise NotResolvableParameters(f"(k={k}, v={v}) fails the resolvability congruence")
    w, r, b = params.w, params.r, params.b
    m = b
    n = v * (r + 1)
    lam_times = m * (m - 1)
    lam_integral = lam_times % (n - 1) == 0
    lam = lam_times // (n - 1)
    degree = m - lam
    root = w * (k - 1) + 1
    assert lam == w * root, "closed form disagrees with the quotient"
    return FeasibilityReport(
        v=v, k=k, w=w, m=m, n=n, lam=lam, degree=degree,
        lam_integral=lam_integral, degree_square=degree == root * root,
    )
