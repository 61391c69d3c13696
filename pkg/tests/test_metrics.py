from fractions import Fraction

import numpy as np
import pytest

from etfkit.designs import affine_design, round_robin_design
from etfkit.errors import (
    BadDimensions,
    EnumerationBudgetExceeded,
    NotUnitNorm,
    SearchBudgetExceeded,
    ShapeMismatch,
    TooFewColumns,
)
from etfkit.flatmat import AbelianGroup, dft, drop_row_simplex, hadamard
from etfkit.frames import Frame, harmonic_etf, kirkman_etf, mcfarland_set, steiner_etf
from etfkit.metrics import (
    certify_etf,
    coherence,
    gram_equal,
    rip_delta,
    spark,
    steiner_rip_verdict,
    welch_bound,
    welch_bound_exact,
)


@pytest.fixture(scope="module")
def fig1():
    return steiner_etf(round_robin_design(4), drop_row_simplex(hadamard(4), 0))


@pytest.fixture(scope="module")
def fig2():
    return kirkman_etf(round_robin_design(4), drop_row_simplex(hadamard(4), 0), hadamard(2))


def orthonormal(n: int) -> Frame:
    return Frame(entries=np.eye(n, dtype=np.complex128))


def test_coherence_fig1_exact(fig1):
    assert coherence(fig1) == Fraction(1, 3)


def test_coherence_fig2_exact(fig2):
    assert coherence(fig2) == Fraction(1, 3)


def test_coherence_orthonormal():
    assert coherence(orthonormal(4)) == 0


def test_coherence_rejects_single_column():
    with pytest.raises(TooFewColumns):
        coherence(Frame(entries=np.ones((3, 1)) / np.sqrt(3)))


def test_coherence_requires_unit_norm():
    with pytest.raises(NotUnitNorm):
        coherence(Frame(entries=2 * np.eye(3, dtype=np.complex128)))


def test_welch_values():
    assert welch_bound(6, 16) == pytest.approx(1 / 3)
    assert welch_bound(5, 5) == 0
    assert welch_bound(12, 45) == pytest.approx(0.25)


def test_welch_exact_forms():
    assert welch_bound_exact(6, 16) == "1/3"
    assert welch_bound_exact(12, 45) == "1/4"
    assert welch_bound_exact(5, 5) == "0"
    assert welch_bound_exact(3, 7) is None  # sqrt(4/18) is irrational


def test_welch_bad_dimensions():
    with pytest.raises(BadDimensions):
        welch_bound(6, 5)
    with pytest.raises(BadDimensions):
        welch_bound(1, 1)


def test_certify_fig2(fig2):
    cert = certify_etf(fig2)
    assert cert.passed
    assert cert.exact
    assert cert.tightness_residual <= 1e-9
    assert cert.coherence_exact == "1/3"
    assert cert.potential_residual <= 1e-6 * 16 ** 2 / 6


def test_certify_detects_broken_equiangularity(fig1):
    entries = fig1.entries.copy()
    entries[0, 0] = 0.0
    cert = certify_etf(Frame(entries=entries), tol=1e-9)
    assert not cert.passed


def test_certify_harmonic_z5():
    ds = mcfarland_set(3, 1, AbelianGroup((5,)))
    cert = certify_etf(harmonic_etf(ds.group, ds))
    assert cert.passed
    assert cert.coherence == pytest.approx(0.25)


def test_certify_rejects_orthonormal_basis():
    cert = certify_etf(orthonormal(4))
    assert not cert.passed
    assert not cert.overcomplete


def test_welch_is_lower_bound_on_corpus(fig1, fig2):
    frames = [fig1, fig2,
              steiner_etf(affine_design(3, 1), drop_row_simplex(dft(5), 0)),
              orthonormal(6)]
    for f in frames:
        mu = float(coherence(f)) if f.n >= 2 else 0.0
        assert welch_bound(f.m, f.n) <= mu + 1e-9


def test_gram_equal_fig_pair(fig1, fig2):
    report = gram_equal(fig1, fig2)
    assert report.passed
    assert report.exact
    assert report.max_dev == 0.0


def test_gram_equal_symmetric_reflexive(fig1, fig2):
    assert gram_equal(fig1, fig1).passed
    a = gram_equal(fig1, fig2)
    b = gram_equal(fig2, fig1)
    assert a.max_dev == b.max_dev


def test_gram_equal_detects_column_swap(fig1):
    entries = fig1.entries.copy()
    entries[:, [0, 4]] = entries[:, [4, 0]]
    report = gram_equal(fig1, Frame(entries=entries))
    assert not report.passed
    assert report.witness is not None


def test_gram_equal_shape_mismatch(fig1):
    with pytest.raises(ShapeMismatch):
        gram_equal(fig1, orthonormal(4))


def test_spark_fig1(fig1):
    report = spark(fig1)
    assert report.spark == 4
    assert report.witness == (0, 1, 2, 3)
    assert report.structural_witness == (0, 1, 2, 3)
    assert report.structural_rank == 3


def test_spark_fig2_matches(fig2):
    assert spark(fig2).spark == 4


def test_spark_invariant_under_column_permutation(fig1):
    rng = np.random.default_rng(7)
    perm = rng.permutation(fig1.n)
    shuffled = Frame(entries=fig1.entries[:, perm])
    assert spark(shuffled).spark == 4


def test_spark_of_simplex_frame():
    s = drop_row_simplex(dft(3), 0)
    f = Frame(entries=s.entries / np.sqrt(2))
    report = spark(f)
    assert report.spark == 3  # every pair independent, all three dependent


def test_spark_respects_column_guard():
    f = Frame(entries=np.eye(65, dtype=np.complex128))
    with pytest.raises(SearchBudgetExceeded):
        spark(f)
    report = spark(f, max_subset=2, allow_large=True)
    assert report.spark is None and report.lower_bound == 3


def test_rip_fig1_l2_equals_coherence(fig1):
    report = rip_delta(fig1, 2)
    assert report.delta == pytest.approx(1 / 3, abs=1e-12)
    assert report.gershgorin == pytest.approx(1 / 3)


def test_rip_fig1_l3(fig1):
    report = rip_delta(fig1, 3)
    assert report.delta < 1
    assert report.delta <= 2 / 3 + 1e-9
    assert report.subsets == 560


def test_rip_fig1_l4_breaks(fig1):
    report = rip_delta(fig1, 4)
    assert report.delta >= 1  # the dependent four-column subset has a zero eigenvalue
    assert not report.satisfied


def test_rip_gershgorin_dominates(fig1, fig2):
    for f in (fig1, fig2):
        mu = float(coherence(f))
        for size in (2, 3):
            assert rip_delta(f, size).delta <= (size - 1) * mu + 1e-9


def test_rip_budget_guard():
    f = Frame(entries=np.eye(50, dtype=np.complex128))
    with pytest.raises(EnumerationBudgetExceeded):
        rip_delta(f, 25)


def test_steiner_rip_verdict_fig1(fig1):
    report = steiner_rip_verdict(fig1)
    assert report.applicable
    assert report.big_r == 3
    assert report.cutoff_formula == pytest.approx(3.0)
    deltas = dict(report.per_l)
    assert deltas[2] < 1 and deltas[3] < 1 and deltas[4] >= 1
    assert report.consistent


def test_steiner_rip_not_applicable_for_plain_frames():
    report = steiner_rip_verdict(orthonormal(4))
    assert not report.applicable
