import math

import numpy as np
import pytest

import qcss
from qcss import correlation, diffsets, z4
from qcss.correlation import (
    PhaseSequence,
    build_qcss,
    classify_tightness,
    correlation_tensor,
    matrix_correlation,
    per_shift_maxima,
    periodic_correlation,
    phase_transform,
    roots_table,
    tightness,
    tolerances,
    welch_lower_bound,
)

WELCH_32_13_31 = 15.476521067056753  # sqrt(169 * 961 * (19/13) / 991)


@pytest.fixture(scope="module")
def qcss5(family5):
    return build_qcss(qcss.subset_l(family5), diffsets.lift_ads_to_z4f(diffsets.singer_ds(3)))


@pytest.fixture(scope="module")
def report5(qcss5):
    return tolerances(qcss5)


def random_phase_sequence(rng, root_order, length):
    return PhaseSequence(
        root_order=root_order, phases=rng.integers(0, root_order, size=length)
    )


# ------------------------------------------------------- primitives


def test_roots_table_quadrants_exact():
    table = roots_table(28)
    assert table[0] == 1 and table[7] == 1j and table[14] == -1 and table[21] == -1j


def test_phase_transform_zero_ramp_embeds_symbols():
    symbols = (0, 1, 2, 3, 2)
    seq = phase_transform(symbols, 0, 28)
    assert seq.root_order == 28
    values = seq.complex_values()
    assert np.array_equal(values, np.array([1, 1j, -1, -1j, -1]))


def test_phase_transform_ramp_phases():
    # L = lcm(4, 6) = 12; phases[t] = 3 a_t + 2 t d
    seq = phase_transform((1, 0, 2), d=2, q=6)
    assert seq.root_order == 12
    assert seq.phases.tolist() == [3, 4, (3 * 2 + 4 * 2) % 12]


def test_periodic_correlation_in_phase_energy():
    rng = np.random.default_rng(11)
    a = random_phase_sequence(rng, 12, 17)
    assert periodic_correlation(a, a, 0) == pytest.approx(17, abs=1e-9)


def test_periodic_correlation_embedded_binary_member(family4):
    seq = phase_transform(family4.l0, 0, 1)
    for tau in range(1, family4.period):
        assert periodic_correlation(seq, seq, tau) == pytest.approx(-1 + 0j, abs=1e-9)


def test_periodic_correlation_family_maximum(family4):
    # the transform with zero ramp reproduces the raw family correlations
    seqs = [phase_transform(m, 0, 1) for m in family4.members]
    best = 0.0
    for i, a in enumerate(seqs):
        for j in range(i, len(seqs)):
            for tau in range(family4.period):
                if i == j and tau == 0:
                    continue
                best = max(best, abs(periodic_correlation(a, seqs[j], tau)))
    assert best == pytest.approx(5.0, abs=1e-6)


def test_periodic_correlation_guards():
    a = PhaseSequence(root_order=12, phases=[0, 1, 2])
    with pytest.raises(ValueError):
        periodic_correlation(a, PhaseSequence(root_order=8, phases=[0, 1, 2]), 0)
    with pytest.raises(ValueError):
        periodic_correlation(a, PhaseSequence(root_order=12, phases=[0, 1]), 0)
    with pytest.raises(ValueError):
        periodic_correlation(a, a, 3)


def test_conjugate_symmetry_random_sequences():
    rng = np.random.default_rng(23)
    for _ in range(20):
        n = int(rng.integers(2, 12))
        L = int(rng.integers(2, 30)) * 2
        a = random_phase_sequence(rng, L, n)
        b = random_phase_sequence(rng, L, n)
        for tau in range(n):
            lhs = periodic_correlation(a, b, tau)
            rhs = periodic_correlation(b, a, (n - tau) % n)
            assert lhs == pytest.approx(rhs.conjugate(), abs=1e-9)


# ------------------------------------------------------- exactness regime


def test_phase_factor_identity_when_q_divides_period_ramp(family4):
    # q = N = 15 makes the ramp commute with wrapping for every d
    a, b = family4.members[1], family4.members[2]
    for d in (0, 1, 3, 7):
        ta, tb = phase_transform(a, d, 15), phase_transform(b, d, 15)
        ra, rb = phase_transform(a, 0, 15), phase_transform(b, 0, 15)
        for tau in range(15):
            lhs = periodic_correlation(ta, tb, tau)
            rhs = np.exp(-2j * np.pi * tau * d / 15) * periodic_correlation(ra, rb, tau)
            assert lhs == pytest.approx(rhs, abs=1e-9)


def test_magnitude_equality_sample_case(family4):
    a, b = family4.members[1], family4.members[2]
    lhs = abs(periodic_correlation(phase_transform(a, 3, 15), phase_transform(b, 3, 15), 5))
    rhs = abs(periodic_correlation(phase_transform(a, 0, 15), phase_transform(b, 0, 15), 5))
    assert lhs == pytest.approx(rhs, abs=1e-9)


def test_synthetic_factorization_gap_is_zero(family4):
    # base period equals the shift modulus, so the separable form is exact
    base = qcss.subset_l(family4)
    shifts = diffsets.singer_ds(4)  # subset of Z_15, q = N = 15
    qset = build_qcss(base, shifts)
    report = tolerances(qset)
    assert report.factorization_gap_max <= 1e-9
    assert report.r2_observed == 0.0  # no nontrivial multiple of q below N


# ------------------------------------------------------- assembled sets


def test_build_shapes_n5(qcss5):
    assert (qcss5.num_sets, qcss5.num_rows, qcss5.period) == (32, 13, 31)
    assert qcss5.q == 28 and qcss5.root_order == 28
    entries = roots_table(qcss5.root_order)[qcss5.phases]
    assert np.allclose(np.abs(entries), 1.0, atol=1e-12)


def test_build_guards(family4):
    with pytest.raises(ValueError):
        build_qcss([], diffsets.singer_ds(3))
    with pytest.raises(ValueError):
        build_qcss([(0, 1), (0, 1, 2)], diffsets.singer_ds(3))


def test_matrix_correlation_in_phase(qcss5):
    c0 = qcss5.matrix(0)
    assert matrix_correlation(c0, c0, 0) == pytest.approx(13 * 31, abs=1e-9)


def test_matrix_correlation_cross_at_zero_shift(qcss5):
    # each row pair contributes exactly -1, so the sum has magnitude M
    value = matrix_correlation(qcss5.matrix(0), qcss5.matrix(1), 0)
    assert abs(value) == pytest.approx(13.0, abs=1e-9)


def test_tensor_matches_scalar_path(qcss5):
    tensor = correlation_tensor(qcss5, method="direct")
    rng = np.random.default_rng(5)
    for _ in range(12):
        k1, k2 = rng.integers(0, 32, size=2)
        tau = int(rng.integers(0, 31))
        scalar = matrix_correlation(qcss5.matrix(int(k1)), qcss5.matrix(int(k2)), tau)
        assert tensor[tau, k1, k2] == pytest.approx(scalar, abs=1e-9)


def test_fft_path_agrees_with_direct(qcss5):
    direct = correlation_tensor(qcss5, method="direct")
    fft = correlation_tensor(qcss5, method="fft")
    assert np.abs(direct - fft).max() <= 1e-9
    assert np.abs(per_shift_maxima(direct) - per_shift_maxima(fft)).max() <= 1e-9


def test_tensor_conjugate_symmetry(qcss5):
    tensor = correlation_tensor(qcss5)
    n = qcss5.period
    for tau in (1, 5, 28):
        assert np.allclose(tensor[tau], np.conj(tensor[(n - tau) % n]).T, atol=1e-9)


def test_per_shift_maxima_excludes_inphase_energy(qcss5):
    tensor = correlation_tensor(qcss5)
    per_shift = per_shift_maxima(tensor)
    assert per_shift[0] == pytest.approx(13.0, abs=1e-9)  # cross only at tau = 0
    assert per_shift[0] < 13 * 31


# ------------------------------------------------------- tolerance report


def test_report_values_n5(report5):
    assert report5.delta_max == pytest.approx(49.128734, abs=1e-6)
    assert report5.delta_max == max(report5.delta_a, report5.delta_c)
    assert report5.lower_bound == pytest.approx(WELCH_32_13_31, abs=1e-9)
    assert report5.rho == pytest.approx(report5.delta_max / WELCH_32_13_31, abs=1e-9)
    assert report5.factorization_gap_max == pytest.approx(76.469953, abs=1e-6)


def test_report_shift_class_partition(report5):
    n, q = report5.period, report5.q
    r1 = [tau for tau in range(1, n) if report5.shift_class(tau) == "R1"]
    r2 = [tau for tau in range(1, n) if report5.shift_class(tau) == "R2"]
    assert sorted(r1 + r2) == list(range(1, n))
    assert r2 == [q]
    assert report5.delta_max == pytest.approx(
        max(report5.r1_observed, report5.r2_observed, float(report5.per_shift_max[0])),
        abs=1e-9,
    )


def test_report_bound_validity(report5):
    assert report5.delta_max >= report5.lower_bound - 1e-6


def test_report_recomputed_maxima_scalar_loop(qcss5, report5):
    # exact-phase integrity: the reported maximum is reproduced by the
    # definitional scalar sum at its argmax location
    tensor = correlation_tensor(qcss5)
    mags = np.abs(tensor)
    for tau in range(qcss5.period):
        if tau == 0:
            m = mags[0].copy()
            np.fill_diagonal(m, 0.0)
        else:
            m = mags[tau]
        k1, k2 = np.unravel_index(np.argmax(m), m.shape)
        if m[k1, k2] == pytest.approx(report5.delta_max, abs=1e-9):
            scalar = matrix_correlation(qcss5.matrix(int(k1)), qcss5.matrix(int(k2)), tau)
            assert abs(scalar) == pytest.approx(report5.delta_max, abs=1e-9)
            return
    pytest.fail("argmax of the sweep never matched the reported maximum")


def test_tolerances_needs_two_matrices(family4):
    base = [family4.members[1]]
    qset = build_qcss(base, diffsets.singer_ds(4))
    with pytest.raises(ValueError):
        tolerances(qset)


def test_single_row_toy_excludes_inphase_autocorrelation(family4):
    # M = 1 toy: delta_a ranges over nonzero shifts only
    base = [family4.members[1], family4.members[2]]
    qset = build_qcss(base, diffsets.CyclicSubset(15, (0,)))
    report = tolerances(qset)
    expected_auto = max(
        abs(z4.z4_correlation(base[0], base[0], tau)) for tau in range(1, 15)
    )
    expected_auto = max(
        expected_auto,
        max(abs(z4.z4_correlation(base[1], base[1], tau)) for tau in range(1, 15)),
    )
    assert report.delta_a == pytest.approx(expected_auto, abs=1e-9)
    assert report.delta_a < 15


# ------------------------------------------------------- bound and tightness


def test_welch_bound_frozen_value():
    assert welch_lower_bound(32, 13, 31) == pytest.approx(WELCH_32_13_31, abs=1e-9)
    # independent arithmetic route
    assert welch_lower_bound(32, 13, 31) == pytest.approx(
        math.sqrt(169 * 961 * 19 / 13 / 991), abs=1e-9
    )


def test_welch_bound_single_row_reduction():
    K, N = 17, 15
    assert welch_lower_bound(K, 1, N) == pytest.approx(
        N * math.sqrt((K - 1) / (K * N - 1)), abs=1e-12
    )


def test_welch_bound_vacuous_and_guards():
    assert welch_lower_bound(13, 13, 31) == 0.0
    assert welch_lower_bound(4, 13, 31) == 0.0
    with pytest.raises(ValueError):
        welch_lower_bound(13, 0, 31)
    with pytest.raises(ValueError):
        welch_lower_bound(13, 1, 1)


def test_tightness_values():
    bound = welch_lower_bound(32, 13, 31)
    assert tightness(bound, 32, 13, 31) == pytest.approx(1.0, abs=1e-12)
    assert classify_tightness(tightness(bound, 32, 13, 31)) == "optimal"
    assert classify_tightness(1.5) == "near-optimal"
    assert classify_tightness(2.316) == "loose"
    with pytest.raises(ValueError):
        tightness(10.0, 13, 13, 31)


# ------------------------------------------------------- export forms


def test_report_json_field_names(report5):
    doc = correlation.report_to_json(report5)
    assert set(doc) == {
        "deltaA",
        "deltaC",
        "deltaMax",
        "lowerBound",
        "rho",
        "perShiftMax",
        "r1Observed",
        "r2Observed",
        "factorizationGapMax",
        "provenance",
    }
    assert len(doc["perShiftMax"]) == 31
    assert doc["provenance"]["K"] == 32


def test_report_csv_layout(report5):
    text = correlation.report_per_shift_csv(report5)
    lines = text.strip().split("\n")
    assert lines[0] == "tau,class,maxMagnitude"
    assert len(lines) == 32
    assert lines[1].startswith("0,zero,")
    assert lines[2].startswith("1,R1,")
    assert lines[29].startswith("28,R2,")
