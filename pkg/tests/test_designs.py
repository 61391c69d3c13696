import numpy as np
import pytest

from conftest import FIG1_GRID
from etfkit.designs import (
    SteinerSystem,
    affine_design,
    harmonic_feasibility,
    kirkman15,
    parse_design,
    round_robin_design,
    steiner_params,
    validate,
)
from etfkit.errors import NotResolvableParameters, OddPointCount


def incidence(design: SteinerSystem) -> np.ndarray:
    mat = np.zeros((design.b, design.v), dtype=np.int64)
    for i, blk in enumerate(design.blocks):
        mat[i, list(blk)] = 1
    return mat


def test_params_2_4():
    p = steiner_params(2, 4)
    assert p.b == 6 and p.r == 3
    assert all(p.flags.values())


def test_params_3_7_not_resolvable():
    p = steiner_params(3, 7)
    assert p.b == 7 and p.r == 3
    assert not p.flags["k_divides_v"]
    assert not p.flags["resolvable_congruence"]


def test_params_3_9():
    p = steiner_params(3, 9)
    assert (p.b, p.r, p.s, p.w) == (12, 4, 3, 1)
    assert all(p.flags.values())
    # cross-check against the constructed affine design
    d = affine_design(3, 1)
    assert d.b == p.b and d.r == p.r


def test_round_robin_4_matches_reference_incidence():
    d = round_robin_design(4)
    rows = ["".join("1" if c != "0" else "0" for c in line[:4])
            for line in FIG1_GRID.splitlines()]
    # support pattern of the reference grid's first four columns is the
    # incidence matrix itself
    expected = np.array([[int(line[v * 4] != "0") for v in range(4)]
                         for line in FIG1_GRID.splitlines()])
    assert np.array_equal(incidence(d), expected)
    del rows


def test_round_robin_6_pairs_once():
    d = round_robin_design(6)
    assert d.b == 15 and len(d.resolution) == 5
    assert validate(d).ok


def test_round_robin_10_block_count():
    d = round_robin_design(10)
    assert d.b == 45
    assert validate(d).ok


def test_round_robin_odd_rejected():
    with pytest.raises(OddPointCount):
        round_robin_design(7)


@pytest.mark.parametrize("v", [4, 6, 8, 10, 12])
def test_round_robin_round_structure(v):
    d = round_robin_design(v)
    seen = set()
    for cls in d.resolution:
        cover = sorted(p for i in cls for p in d.blocks[i])
        assert cover == list(range(v))
        blocks = frozenset(cls)
        assert not (blocks & seen)
        seen |= blocks


def test_affine_2_1_isomorphic_to_reference():
    # canonical form makes the q=2, j=1 affine design literally equal the
    # complete pair design on four points
    assert affine_design(2, 1) == round_robin_design(4)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_affine_line_counts(q):
    d = affine_design(q, 1)
    assert d.b == q * (q + 1)
    assert all(len(blk) == q for blk in d.blocks)
    assert validate(d).ok


def test_affine_3_1_valid():
    d = affine_design(3, 1)
    assert d.b == 12 and len(d.resolution) == 4
    assert validate(d).ok


def test_affine_2_2_valid():
    d = affine_design(2, 2)
    assert d.b == 28 and len(d.resolution) == 7
    assert validate(d).ok


def test_kirkman15_shape():
    d = kirkman15()
    assert d.b == 35
    assert d.r == 7 and d.s == 5
    assert len(d.resolution) == 7
    assert all(len(cls) == 5 for cls in d.resolution)


def test_kirkman15_pairs_once():
    d = kirkman15()
    rep = validate(d)
    assert rep.ok, rep.failures()


@pytest.mark.parametrize("maker", [lambda: affine_design(2, 1), lambda: affine_design(3, 1),
                                   lambda: round_robin_design(6), kirkman15])
def test_incidence_row_column_sums(maker):
    d = maker()
    mat = incidence(d)
    assert set(mat.sum(axis=1)) == {d.k}
    assert set(mat.sum(axis=0)) == {d.r}
    gram = mat.T @ mat
    off = gram[~np.eye(d.v, dtype=bool)]
    assert set(off.tolist()) == {1}


def test_validate_bose_equality_for_affine_2_1():
    d = affine_design(2, 1)
    rep = validate(d)
    assert rep.ok
    assert d.b == d.v + d.r - 1  # 6 = 4 + 3 - 1


FANO = SteinerSystem(
    v=7, k=3,
    blocks=((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)),
)


def test_validate_fano():
    rep = validate(FANO)
    by_name = {name: (passed, detail) for name, passed, detail in rep.checks}
    assert by_name["pair_coverage"][0]
    assert not by_name["k_divides_v"][0]  # structurally impossible to resolve


def test_validate_duplicate_block_fails_pair_coverage():
    d = SteinerSystem(v=4, k=2, blocks=((0, 1), (0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)))
    rep = validate(d)
    by_name = {name: (passed, detail) for name, passed, detail in rep.checks}
    assert not by_name["pair_coverage"][0]
    assert "(0, 1)" in by_name["pair_coverage"][1]


def test_serialization_round_trip():
    for d in (round_robin_design(6), affine_design(3, 1), kirkman15(), FANO):
        assert parse_design(d.to_json()) == d


def test_feasibility_2_4():
    f = harmonic_feasibility(2, 4)
    assert f.lam == 2 and f.degree == 4
    assert f.lam_integral and f.degree_square
    # cross-check: M(M-1)/(N-1) with M=6, N=16
    assert 6 * 5 // 15 == f.lam


def test_feasibility_2_20():
    f = harmonic_feasibility(2, 20)
    assert (f.w, f.lam, f.degree, f.m, f.n) == (9, 90, 100, 190, 400)


def test_feasibility_rejects_non_resolvable():
    with pytest.raises(NotResolvableParameters):
        harmonic_feasibility(3, 7)


def test_feasibility_degree_always_square():
    from math import isqrt
    for k in range(2, 7):
        for w in range(1, 21):
            v = w * k * (k - 1) + k
            f = harmonic_feasibility(k, v)
            assert f.lam_integral
            assert f.lam == w * (w * (k - 1) + 1)
            assert isqrt(f.degree) ** 2 == f.degree
