"""Frame synthesis: sparse ETFs from resolvable Steiner systems, their
constant-amplitude counterparts, difference-set (harmonic) ETFs, Naimark
complements, and the parameter calculator for real constant-amplitude builds.

Frames whose entries are integer multiples of a common 1/sqrt(d) carry that
integer matrix alongside the complex one, so Gram computations downstream can
be exact; the +-1/sqrt(M) case is what the binary-code bridge consumes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from . import gf
from .designs import AffineStructure, SteinerSystem, affine_structure
from .errors import (
    BasisShapeMismatch,
    FrameFormatError,
    GroupMismatch,
    GroupOrderMismatch,
    NotResolvable,
    NotTight,
    SimplexShapeMismatch,
)
from .flatmat import AbelianGroup, UnimodularMatrix, character_table, hadamard_order_reachable, simplex_from_characters

UNIT_NORM_TOL = 1e-9


@dataclass(eq=False)
class Frame:
    """M x N synthesis matrix; columns are the frame vectors.

    exact_ints/scale_sq, when set, satisfy entries == exact_ints / sqrt(scale_sq)
    exactly.  col_labels and row_labels record the construction indexing
    ((u, v) pairs and (r, s) pairs respectively) when one exists.
    """

    entries: np.ndarray
    exact_ints: np.ndarray | None = None
    scale_sq: int | None = None
    col_labels: tuple | None = None
    row_labels: tuple | None = None
    provenance: dict = dataclass_field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.entries.imag == 0))

    @property
    def is_sign_matrix(self) -> bool:
        """True when entries are exactly +-1/sqrt(M): the code-bridge form."""
        return (
            self.exact_ints is not None
            and self.scale_sq == self.m
            and bool(np.all(np.abs(self.exact_ints) == 1))
        )

    def gram(self) -> np.ndarray:
        return self.entries.conj().T @ self.entries

    def gram_exact(self) -> tuple[np.ndarray, int]:
        """Integer Gram matrix G with true Gram = G / scale_sq (real exact frames)."""
        if self.exact_ints is None:
            raise ValueError("frame carries no exact integer form")
        g = self.exact_ints.T @ self.exact_ints
        return g, self.scale_sq

    def check_unit_norm(self, tol: float = UNIT_NORM_TOL) -> None:
        if self.m == 0 or self.n == 0:
            return
        norms = np.linalg.norm(self.entries, axis=0)
        worst = np.abs(norms - 1.0).max()
        if worst > tol:
            raise AssertionError(f"column norms deviate from 1 by {worst:.3e}")


def _numeric(ints: np.ndarray, scale_sq: int) -> np.ndarray:
    return ints.astype(np.complex128) / np.sqrt(scale_sq)


# -- serialization ------------------------------------------------------------

def frame_to_json(frame: Frame) -> str:
    """Sign form for exact +-1/sqrt(M) frames, literal complex entries otherwise."""
    if frame.is_sign_matrix:
        doc = {
            "m": frame.m,
            "n": frame.n,
            "signs": frame.exact_ints.tolist(),
            "scale_sq_inv": frame.scale_sq,
            "provenance": frame.provenance,
        }
    else:
        doc = {
            "m": frame.m,
            "n": frame.n,
            "scale": None,
            "entries": [[[z.real, z.imag] for z in row] for row in frame.entries],
            "provenance": frame.provenance,
        }
    return json.dumps(doc, sort_keys=True)


def parse_frame(text: str) -> Frame:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FrameFormatError(f"invalid JSON: {e}") from e
    try:
        m, n = int(doc["m"]), int(doc["n"])
        provenance = doc.get("provenance") or {}
        if "signs" in doc:
            ints = np.array(doc["signs"], dtype=np.int64)
            scale_sq = int(doc["scale_sq_inv"])
            if ints.shape != (m, n) or not np.all(np.abs(ints) == 1):
                raise FrameFormatError("sign form must be an m x n matrix of +-1")
            frame = Frame(entries=_numeric(ints, scale_sq), exact_ints=ints,
                          scale_sq=scale_sq, provenance=provenance)
        else:
            raw = doc["entries"]
            arr = np.array([[complex(re, im) for re, im in row] for row in raw], dtype=np.complex128)
            if arr.shape != (m, n):
                raise FrameFormatError(f"entries shape {arr.shape} does not match ({m}, {n})")
            scale = doc.get("scale")
            if scale is not None:
                arr = arr * float(scale)
            frame = Frame(entries=arr, provenance=provenance)
    except FrameFormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise FrameFormatError(f"malformed frame document: {e}") from e
    frame.check_unit_norm()
    return frame


# -- Steiner and flat (Kirkman-transformed) ETFs ------------------------------

def _resolution_lookup(design: SteinerSystem):
    """pos[r][v] = (index of the class-r block containing v, its block id)."""
    if design.resolution is None:
        raise NotResolvable("design carries no resolution")
    lookup = []
    for cls in design.resolution:
        row = [None] * design.v
        for s_pos, block_id in enumerate(cls):
            for v in design.blocks[block_id]:
                row[v] = (s_pos, block_id)
        if any(x is None for x in row):
            raise NotResolvable("a parallel class fails to cover every point")
        lookup.append(row)
    return lookup


def _check_simplex(simplex: UnimodularMatrix, big_r: int) -> None:
    if simplex.entries.shape != (big_r, big_r + 1):
        raise SimplexShapeMismatch(
            f"simplex is {simplex.entries.shape}, need ({big_r}, {big_r + 1})")
    try:
        UnimodularMatrix(entries=simplex.entries, kind="simplex", signs=simplex.signs).check()
    except AssertionError as e:
        raise SimplexShapeMismatch(f"simplex invariants fail: {e}") from e


def steiner_etf(design: SteinerSystem, simplex: UnimodularMatrix) -> Frame:
    """Sparse ETF from a resolvable design: column (u, v) places simplex value
    f_u(r), scaled by 1/sqrt(R), in the row of the class-r block containing v.

    Columns are ordered v-major (all u for v=0, then v=1, ...); rows are block
    indices.  M = B, N = V(R+1); every column has exactly R nonzero entries.
    """
    lookup = _resolution_lookup(design)
    big_r = len(lookup)
    _check_simplex(simplex, big_r)
    big_b, v_count = design.b, design.v
    n = v_count * (big_r + 1)

    exact = simplex.signs is not None
    ints = np.zeros((big_b, n), dtype=np.int64) if exact else None
    entries = np.zeros((big_b, n), dtype=np.complex128)
    scale = big_r ** -0.5
    col_labels = []
    for v in range(v_count):
        for u in range(big_r + 1):
            col = v * (big_r + 1) + u
            col_labels.append((u, v))
            for r in range(big_r):
                _, block_id = lookup[r][v]
                entries[block_id, col] = scale * simplex.entries[r, u]
                if exact:
                    ints[block_id, col] = simplex.signs[r, u]
    row_labels = [None] * big_b
    for r, cls in enumerate(design.resolution):
        for s_pos, block_id in enumerate(cls):
            row_labels[block_id] = (r, s_pos)

    frame = Frame(
        entries=_numeric(ints, big_r) if exact else entries,
        exact_ints=ints,
        scale_sq=big_r if exact else None,
        col_labels=tuple(col_labels),
        row_labels=tuple(row_labels),
        provenance={"construction": "steiner", "v": v_count, "k": design.k,
                    "b": big_b, "r": big_r, "simplex": simplex.kind},
    )
    frame.check_unit_norm()
    return frame


def kirkman_etf(design: SteinerSystem, simplex: UnimodularMatrix,
                basis: UnimodularMatrix) -> Frame:
    """Constant-amplitude ETF: entry at row (r, s), column (u, v) is
    f_u(r) * h_{s(r,v)}(s) / sqrt(B), where s(r,v) indexes the class-r block
    containing v and h-columns come from a unimodular orthogonal basis.

    Rows are (r, s) pairs, r-major; its Gram equals the Steiner ETF's.
    """
    lookup = _resolution_lookup(design)
    big_r = len(lookup)
    _check_simplex(simplex, big_r)
    s_count = design.s
    if basis.entries.shape != (s_count, s_count):
        raise BasisShapeMismatch(f"basis is {basis.entries.shape}, need ({s_count}, {s_count})")
    try:
        basis.check()
    except AssertionError as e:
        raise BasisShapeMismatch(f"basis invariants fail: {e}") from e

    big_b, v_count = design.b, design.v
    n = v_count * (big_r + 1)
    exact = simplex.signs is not None and basis.signs is not None
    ints = np.zeros((big_b, n), dtype=np.int64) if exact else None
    entries = np.zeros((big_b, n), dtype=np.complex128)
    scale = big_b ** -0.5
    col_labels = []
    for v in range(v_count):
        for u in range(big_r + 1):
            col = v * (big_r + 1) + u
            col_labels.append((u, v))
            for r in range(big_r):
                s_of_v, _ = lookup[r][v]
                for s in range(s_count):
                    row = r * s_count + s
                    entries[row, col] = scale * simplex.entries[r, u] * basis.entries[s, s_of_v]
                    if exact:
                        ints[row, col] = simplex.signs[r, u] * basis.signs[s, s_of_v]
    row_labels = tuple((r, s) for r in range(big_r) for s in range(s_count))

    frame = Frame(
        entries=_numeric(ints, big_b) if exact else entries,
        exact_ints=ints,
        scale_sq=big_b if exact else None,
        col_labels=tuple(col_labels),
        row_labels=row_labels,
        provenance={"construction": "kirkman", "v": v_count, "k": design.k,
                    "b": big_b, "r": big_r, "simplex": simplex.kind, "basis": basis.kind},
    )
    frame.check_unit_norm()
    return frame


# -- difference sets and harmonic ETFs ----------------------------------------

@dataclass(frozen=True)
class DifferenceSet:
    """Subset D of an abelian group hitting every nonzero element as a
    difference exactly lam times; verified exhaustively at construction."""

    group: AbelianGroup
    elements: tuple[int, ...]
    lam: int

    @staticmethod
    def verified(group: AbelianGroup, elements) -> "DifferenceSet":
        elements = tuple(sorted(set(int(e) for e in elements)))
        order = group.order
        counts = [0] * order
        for d1 in elements:
            for d2 in elements:
                counts[group.sub(d1, d2)] += 1
        nonzero = counts[1:]
        if not nonzero or min(nonzero) != max(nonzero):
            raise ValueError("not a difference set: difference counts are not constant")
        return DifferenceSet(group=group, elements=elements, lam=nonzero[0])

    def complement(self) -> "DifferenceSet":
        rest = [i for i in range(self.group.order) if i not in set(self.elements)]
        return DifferenceSet.verified(self.group, rest)


def mcfarland_set(q: int, j: int, group_g: AbelianGroup) -> DifferenceSet:
    """Hyperplane-translate difference set in G x V, where V is the additive
    group of GF(q^(j+1)): D = {(g_r, v) : v in g^r * S, r = 0..R-1} for the
    canonical primitive element g and trace-zero hyperplane S.

    G may be any abelian group of order R + 1 = (q^(j+1)-1)/(q-1) + 1.
    """
    structure, _ = affine_structure(q, j)
    fld = structure.field
    big_r = (q ** (j + 1) - 1) // (q - 1)
    if group_g.order != big_r + 1:
        raise GroupOrderMismatch(f"group order {group_g.order} != R+1 = {big_r + 1}")
    product = AbelianGroup(tuple(group_g.factors) + (fld.p,) * fld.k)
    elements = []
    g_pow = fld.one
    for r in range(big_r):
        for s_elt in structure.hyperplane:
            v = g_pow * s_elt
            digits = tuple(group_g.digits(r)) + _field_group_digits(v)
            elements.append(product.index(digits))
        g_pow = g_pow * structure.gamma
    return DifferenceSet.verified(product, elements)


def _field_group_digits(x: gf.FieldElement) -> tuple[int, ...]:
    """Digit vector of a field element inside the Z_p^k product factor; chosen
    so the product-group index restricted to V equals the canonical field index."""
    return tuple(reversed(x.coeffs))


def harmonic_etf(group: AbelianGroup, dset: DifferenceSet) -> Frame:
    """Characters of the group restricted to the difference set, normalized:
    entry (d, n) = chi_n(d) / sqrt(|D|).  M = |D|, N = |group|."""
    if dset.group != group:
        raise GroupMismatch("difference set lives in a different group")
    table = character_table(group)
    rows = list(dset.elements)
    m, n = len(rows), group.order
    exact = table.signs is not None
    if exact:
        ints = table.signs[:, rows].T.copy()
        entries = _numeric(ints, m)
    else:
        ints = None
        entries = table.entries[:, rows].T.copy() / np.sqrt(m)
    prov = {"construction": "harmonic", "group": list(group.factors),
            "d": m, "lambda": dset.lam}
    frame = Frame(entries=entries, exact_ints=ints, scale_sq=m if exact else None,
                  provenance=prov)
    frame.check_unit_norm()
    return frame


# -- the harmonic / flat-frame identification ---------------------------------

def trace_character_basis(structure: AffineStructure) -> UnimodularMatrix:
    """Unimodular orthogonal basis over the hyperplane S:
    h_{s'}(s) = exp(2*pi*i/p * tr(s' * s / delta)), traces taken down to the
    prime field."""
    fld = structure.field
    p = fld.p
    hyper = structure.hyperplane
    dinv = structure.delta.inverse()
    size = len(hyper)
    tr_vals = np.empty((size, size), dtype=np.int64)
    for a, s_row in enumerate(hyper):
        for b, s_col in enumerate(hyper):
            tr_vals[a, b] = gf.trace(s_col * s_row * dinv, 1).coeffs[0]
    if p == 2:
        signs = np.where(tr_vals % 2 == 0, 1, -1).astype(np.int64)
        m = UnimodularMatrix(entries=signs.astype(np.complex128), kind="character-table", signs=signs)
    else:
        m = UnimodularMatrix(entries=np.exp(2j * np.pi * tr_vals / p), kind="character-table")
    m.check()
    return m


@dataclass(frozen=True)
class McFarlandMatchReport:
    """Entrywise and Gram agreement between the two constructions."""

    q: int
    j: int
    group: tuple[int, ...]
    max_entry_dev: float
    max_gram_dev: float
    tol: float

    @property
    def entrywise_match(self) -> bool:
        return self.max_entry_dev <= self.tol

    @property
    def gram_match(self) -> bool:
        return self.max_gram_dev <= self.tol

    def as_dict(self) -> dict:
        return {
            "report": "mcfarland-vs-kirkman",
            "passed": self.entrywise_match and self.gram_match,
            "q": self.q, "j": self.j, "group": list(self.group),
            "max_entry_dev": self.max_entry_dev, "max_gram_dev": self.max_gram_dev,
            "tol": self.tol,
        }


def mcfarland_as_kirkman(q: int, j: int, group_g: AbelianGroup,
                         tol: float = 1e-9) -> tuple[Frame, Frame, McFarlandMatchReport]:
    """Build the same ETF twice: as restricted characters over the
    hyperplane-translate difference set, and as the flat transform of the
    affine design with f_u(r) = chi_u(g_r) and the trace-character basis.

    Returns (harmonic frame, design-based frame, match report); the report
    compares entries under the canonical identification of row (r, s) with
    group element (g_r, g^r s) and of column (u, v) with the character pair.
    """
    structure, design = affine_structure(q, j)
    fld = structure.field
    big_r = (q ** (j + 1) - 1) // (q - 1)
    dset = mcfarland_set(q, j, group_g)
    harm = harmonic_etf(dset.group, dset)

    simplex = simplex_from_characters(group_g, group_g.order - 1)
    basis = trace_character_basis(structure)
    kirk = kirkman_etf(design, simplex, basis)
    kirk.provenance["construction"] = "mcfarland-kirkman"

    product = dset.group
    s_count = len(structure.hyperplane)
    row_pos = {e: i for i, e in enumerate(dset.elements)}

    # row (r, s) of the design-based frame <-> difference-set element (g_r, g^r s)
    row_perm = np.empty(kirk.m, dtype=np.int64)
    g_pow = fld.one
    for r in range(big_r):
        for s_pos, s_elt in enumerate(structure.hyperplane):
            digits = tuple(group_g.digits(r)) + _field_group_digits(g_pow * s_elt)
            row_perm[r * s_count + s_pos] = row_pos[product.index(digits)]
        g_pow = g_pow * structure.gamma

    # column (u, v) <-> character (u, w) with w(l) = tr(v * b_l) over the
    # digit-basis elements b_l of V
    k = fld.k
    basis_elts = [fld.element(fld.p ** (k - 1 - l)) for l in range(k)]
    col_perm = np.empty(kirk.n, dtype=np.int64)
    for v_idx in range(fld.order):
        v = fld.element(v_idx)
        w_digits = tuple(gf.trace(v * b, 1).coeffs[0] for b in basis_elts)
        for u in range(big_r + 1):
            digits = tuple(group_g.digits(u)) + w_digits
            col_perm[v_idx * (big_r + 1) + u] = product.index(digits)

    aligned = harm.entries[np.ix_(row_perm, col_perm)]
    max_entry_dev = float(np.abs(aligned - kirk.entries).max())
    g_h = harm.gram()[np.ix_(col_perm, col_perm)]
    max_gram_dev = float(np.abs(g_h - kirk.gram()).max())
    report = McFarlandMatchReport(q=q, j=j, group=tuple(group_g.factors),
                                  max_entry_dev=max_entry_dev,
                                  max_gram_dev=max_gram_dev, tol=tol)
    return harm, kirk, report


# -- Naimark complement --------------------------------------------------------

def naimark_complement(frame: Frame, require_tight: bool = True,
                       tol: float = 1e-9) -> Frame:
    """The (N-M) x N unit-norm tight frame whose rows complete the scaled
    rows of a tight frame to an orthogonal N x N system."""
    m, n = frame.m, frame.n
    if require_tight:
        op = frame.entries @ frame.entries.conj().T
        dev = np.abs(op - (n / m) * np.eye(m)).max()
        if dev > tol:
            raise NotTight(f"frame operator deviates from (N/M) I by {dev:.3e}")
    if n == m:
        return Frame(entries=np.zeros((0, n), dtype=np.complex128),
                     provenance={"construction": "naimark", "parent_m": m, "parent_n": n})
    _, _, vh = np.linalg.svd(frame.entries, full_matrices=True)
    comp = vh[m:, :] * np.sqrt(n / (n - m))
    out = Frame(entries=comp.astype(np.complex128),
                provenance={"construction": "naimark", "parent_m": m, "parent_n": n})
    out.check_unit_norm()
    return out


# -- real constant-amplitude parameter calculator ------------------------------

@dataclass(frozen=True)
class RealKirkmanReport:
    """Dimensions and Hadamard requirements for a real flat ETF with block
    size k and v = k[w(k-1)+1]."""

    k: int
    w: int
    v: int
    m: int
    n: int
    hadamard_order_simplex: int
    hadamard_order_basis: int
    k_congruent: bool
    w_congruent: bool
    simplex_constructible: bool
    basis_constructible: bool
    design_available: bool

    @property
    def constructible(self) -> bool:
        return self.simplex_constructible and self.basis_constructible and self.design_available

    def as_dict(self) -> dict:
        return {
            "report": "real-kirkman-params",
            "passed": self.constructible,
            "k": self.k, "w": self.w, "v": self.v, "m": self.m, "n": self.n,
            "hadamard_order_simplex": self.hadamard_order_simplex,
            "hadamard_order_basis": self.hadamard_order_basis,
            "k_congruent_2_mod_4": self.k_congruent,
            "w_congruent_3_mod_4": self.w_congruent,
            "simplex_constructible": self.simplex_constructible,
            "basis_constructible": self.basis_constructible,
            "design_available": self.design_available,
        }


def real_kirkman_params(k: int, w: int) -> RealKirkmanReport:
    """Report V, M, N and the two Hadamard orders (R+1 = WK+2 and V/K) a real
    constant-amplitude build needs; congruence violations are reported, not
    raised."""
    if k < 2 or w < 1:
        raise ValueError("need k >= 2 and w >= 1")
    v = k * (w * (k - 1) + 1)
    m = (w * k + 1) * (w * (k - 1) + 1)
    n = k * (w * k + 2) * (w * (k - 1) + 1)
    order_simplex = w * k + 2          # R + 1
    order_basis = w * (k - 1) + 1      # V / K
    return RealKirkmanReport(
        k=k, w=w, v=v, m=m, n=n,
        hadamard_order_simplex=order_simplex,
        hadamard_order_basis=order_basis,
        k_congruent=k % 4 == 2,
        w_congruent=w % 4 == 3,
        simplex_constructible=hadamard_order_reachable(order_simplex),
        basis_constructible=hadamard_order_reachable(order_basis),
        design_available=k == 2,  # round-robin; other block sizes have no generator here
    )
