"""Exact-phase correlation engine: linear phase transforms, set assembly
from a base sequence family and a shift set, and the full periodic tolerance
report.

Entries of every sequence here are roots of unity stored as integer phases
modulo a common root order L, so building blocks stay exact; complex values
only appear when a correlation sum is evaluated.  The per-shift sweep has a
direct summation path (the reference) and an FFT path that must agree with
it to 1e-9 on every reported maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .diffsets import CyclicSubset, exp_sum_profile

MAGNITUDE_TOL = 1e-6  # distinct algebraic magnitudes at desk scale differ by far more
EXACT_TOL = 1e-9


@lru_cache(maxsize=64)
def roots_table(root_order: int) -> np.ndarray:
    """All root_order-th roots of unity; quadrant values are patched to be
    exact so embedded Z4 symbols stay Gaussian integers."""
    table = np.exp(2j * np.pi * np.arange(root_order) / root_order)
    if root_order % 4 == 0:
        table[0] = 1
        table[root_order // 4] = 1j
        table[root_order // 2] = -1
        table[3 * root_order // 4] = -1j
    table.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class PhaseSequence:
    """A unimodular sequence: entry t is the root_order-th root of unity with
    integer phase phases[t]."""

    root_order: int
    phases: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.phases, dtype=np.int64) % self.root_order
        p.setflags(write=False)
        object.__setattr__(self, "phases", p)

    def __len__(self) -> int:
        return len(self.phases)

    def complex_values(self) -> np.ndarray:
        return roots_table(self.root_order)[self.phases]


def phase_transform(symbols, d: int, q: int) -> PhaseSequence:
    """Multiply a Z4 sequence entrywise by the phase ramp exp(2 pi i t d / q).

    The common root order is lcm(4, q), so both the quaternary symbols and
    the ramp embed with integer phases; d = 0 reproduces the sequence itself.
    """
    if q < 1:
        raise ValueError("ramp modulus must be positive")
    a = np.asarray(symbols, dtype=np.int64) % 4
    L = 4 * q // math.gcd(4, q)
    t = np.arange(len(a), dtype=np.int64)
    return PhaseSequence(root_order=L, phases=(a * (L // 4) + t * d * (L // q)) % L)


def periodic_correlation(a: PhaseSequence, b: PhaseSequence, tau: int) -> complex:
    """R(a, b; tau) = sum_t a_t * conj(b_(t+tau)), index wrapped mod N.

    Deliberately a scalar loop over the definition; the sweep paths are
    checked against this.
    """
    if a.root_order != b.root_order:
        raise ValueError("root orders differ")
    n = len(a)
    if n != len(b):
        raise ValueError("lengths differ")
    if not 0 <= tau < n:
        raise ValueError("shift out of range")
    table = roots_table(a.root_order)
    L = a.root_order
    acc = 0j
    for t in range(n):
        acc += table[(int(a.phases[t]) - int(b.phases[(t + tau) % n])) % L]
    return acc


@dataclass(frozen=True, eq=False)
class QcssMatrix:
    """One element of the set: M rows of common length and root order."""

    root_order: int
    phases: np.ndarray  # shape (M, N)
    user_index: int = 0

    def __post_init__(self):
        p = np.asarray(self.phases, dtype=np.int64) % self.root_order
        if p.ndim != 2:
            raise ValueError("matrix phases must be 2-D")
        p.setflags(write=False)
        object.__setattr__(self, "phases", p)

    def row(self, m: int) -> PhaseSequence:
        return PhaseSequence(root_order=self.root_order, phases=self.phases[m])


def matrix_correlation(c1: QcssMatrix, c2: QcssMatrix, tau: int) -> complex:
    """Sum of row correlations at one shift (scalar reference path)."""
    if c1.root_order != c2.root_order or c1.phases.shape != c2.phases.shape:
        raise ValueError("matrices must share shape and root order")
    return sum(
        periodic_correlation(c1.row(m), c2.row(m), tau) for m in range(c1.phases.shape[0])
    )


@dataclass(frozen=True, eq=False)
class QcssSet:
    """K matrices assembled from base sequences v_k and a shift set D: matrix
    k has rows phase_transform(v_k, d, q) for d in D, sorted."""

    root_order: int
    phases: np.ndarray  # shape (K, M, N)
    q: int
    shifts: tuple[int, ...]
    base: tuple[tuple[int, ...], ...]
    provenance: dict = field(default_factory=dict)

    @property
    def num_sets(self) -> int:
        return self.phases.shape[0]

    @property
    def num_rows(self) -> int:
        return self.phases.shape[1]

    @property
    def period(self) -> int:
        return self.phases.shape[2]

    def matrix(self, k: int) -> QcssMatrix:
        return QcssMatrix(root_order=self.root_order, phases=self.phases[k], user_index=k)


def build_qcss(base_sequences, shift_set: CyclicSubset, provenance: dict | None = None) -> QcssSet:
    """Assemble the K = len(base_sequences) matrices over the shift set."""
    base = tuple(tuple(int(v) % 4 for v in s) for s in base_sequences)
    if not base or shift_set.size == 0:
        raise ValueError("need at least one base sequence and a nonempty shift set")
    n_len = len(base[0])
    if any(len(s) != n_len for s in base):
        raise ValueError("base sequences must share one length")
    q = shift_set.modulus
    L = 4 * q // math.gcd(4, q)
    rows = []
    for v in base:
        rows.append(np.stack([phase_transform(v, d, q).phases for d in shift_set.elements]))
    return QcssSet(
        root_order=L,
        phases=np.stack(rows),
        q=q,
        shifts=shift_set.elements,
        base=base,
        provenance=dict(provenance or {}),
    )


def correlation_tensor(qcss: QcssSet, method: str = "direct") -> np.ndarray:
    """All matrix correlations: tensor G[tau, k1, k2] = R(C_k1, C_k2; tau).

    "direct" evaluates the defining sum (vectorized over entries); "fft"
    computes row cross-correlations spectrally.  Both return the identical
    tensor up to roundoff.
    """
    Z = roots_table(qcss.root_order)[qcss.phases]
    K, M, N = Z.shape
    if method == "direct":
        flat = Z.reshape(K, M * N)
        out = np.empty((N, K, K), dtype=complex)
        for tau in range(N):
            shifted = np.roll(Z, -tau, axis=2).reshape(K, M * N)
            out[tau] = flat @ np.conj(shifted).T
        return out
    if method == "fft":
        X = np.fft.fft(Z, axis=2)
        spec = np.einsum("kmj,lmj->klj", X, np.conj(X))
        c = np.fft.ifft(spec, axis=2)
        # c[k, l, s] = sum_t a_t conj(b_(t-s)); relabel s -> -tau mod N
        idx = (-np.arange(N)) % N
        return np.transpose(c[:, :, idx], (2, 0, 1))
    raise ValueError(f"unknown method {method!r}")


def per_shift_maxima(tensor: np.ndarray) -> np.ndarray:
    """Max correlation magnitude at each shift; the in-phase autocorrelation
    (trivially M*N) is excluded at tau = 0."""
    n_shifts, K, _ = tensor.shape
    out = np.empty(n_shifts)
    for tau in range(n_shifts):
        mag = np.abs(tensor[tau])
        if tau == 0:
            mag = mag.copy()
            np.fill_diagonal(mag, 0.0)
        out[tau] = mag.max()
    return out


def welch_lower_bound(K: int, M: int, N: int) -> float:
    """Correlation floor M*N*sqrt((K/M - 1)/(K*N - 1)) for K matrices of M
    rows and period N; 0.0 when K <= M (vacuous, flagged by callers)."""
    if M < 1 or N < 2 or K < 1:
        raise ValueError("need K >= 1, M >= 1, N >= 2")
    if K <= M:
        return 0.0
    ratio = Fraction(K - M, M * (K * N - 1))
    return M * N * math.sqrt(ratio)


def tightness(delta_max: float, K: int, M: int, N: int) -> float:
    """Ratio of an achieved tolerance to the correlation floor."""
    bound = welch_lower_bound(K, M, N)
    if bound <= 0.0:
        raise ValueError("tightness undefined: lower bound is vacuous for K <= M")
    return delta_max / bound


def classify_tightness(rho: float) -> str:
    if abs(rho - 1.0) <= EXACT_TOL:
        return "optimal"
    if 1.0 < rho <= 2.0:
        return "near-optimal"
    return "loose"


@dataclass(frozen=True, eq=False)
class CorrelationReport:
    """Periodic tolerance census of one assembled set.

    delta_a ranges over autocorrelations at nonzero shifts, delta_c over
    cross-correlations at all shifts; r1/r2 split the nonzero shifts by
    tau mod q (r2 collects the nontrivial multiples of q, which the zero-shift
    cross value need not match).  factorization_gap_max measures how far the
    exact magnitudes sit from |R(v, v'; tau)| * Delta(tau), the separable form
    that would hold if the phase ramp commuted with cyclic wrapping.
    """

    delta_a: float
    delta_c: float
    delta_max: float
    lower_bound: float
    rho: float | None
    per_shift_max: np.ndarray
    r1_observed: float
    r2_observed: float
    factorization_gap_max: float
    q: int
    num_sets: int
    num_rows: int
    period: int
    provenance: dict = field(default_factory=dict)

    def shift_class(self, tau: int) -> str:
        if tau == 0:
            return "zero"
        return "R2" if tau % self.q == 0 else "R1"


def _base_correlation_magnitudes(base: np.ndarray, tau: int) -> np.ndarray:
    """|R(v_k1, v_k2; tau)| for all pairs of raw Z4 base sequences, by exact
    residue counting."""
    d = (base[:, None, :] - np.roll(base, -tau, axis=1)[None, :, :]) % 4
    re = (np.count_nonzero(d == 0, axis=2) - np.count_nonzero(d == 2, axis=2)).astype(np.int64)
    im = (np.count_nonzero(d == 1, axis=2) - np.count_nonzero(d == 3, axis=2)).astype(np.int64)
    return np.sqrt((re * re + im * im).astype(float))


def tolerances(qcss: QcssSet, method: str = "direct") -> CorrelationReport:
    """Full sweep over sets and shifts producing the tolerance report."""
    K, M, N = qcss.phases.shape
    if K < 2:
        raise ValueError("tolerance census needs at least two matrices")
    tensor = correlation_tensor(qcss, method=method)
    per_shift = per_shift_maxima(tensor)

    mags = np.abs(tensor)
    diag = mags[:, np.arange(K), np.arange(K)]
    delta_a = float(diag[1:].max())
    off = ~np.eye(K, dtype=bool)
    delta_c = float(max(mags[tau][off].max() for tau in range(N)))
    delta_max = max(delta_a, delta_c)

    r1_shifts = [tau for tau in range(1, N) if tau % qcss.q != 0]
    r2_shifts = [tau for tau in range(1, N) if tau % qcss.q == 0]
    r1 = float(per_shift[r1_shifts].max()) if r1_shifts else 0.0
    r2 = float(per_shift[r2_shifts].max()) if r2_shifts else 0.0

    profile = exp_sum_profile(CyclicSubset(modulus=qcss.q, elements=qcss.shifts))
    base = np.array(qcss.base, dtype=np.int64)
    gap = 0.0
    for tau in range(N):
        separable = _base_correlation_magnitudes(base, tau) * profile.values[tau % qcss.q]
        gap = max(gap, float(np.abs(mags[tau] - separable).max()))

    bound = welch_lower_bound(K, M, N)
    rho = delta_max / bound if bound > 0 else None
    return CorrelationReport(
        delta_a=delta_a,
        delta_c=delta_c,
        delta_max=delta_max,
        lower_bound=bound,
        rho=rho,
        per_shift_max=per_shift,
        r1_observed=r1,
        r2_observed=r2,
        factorization_gap_max=gap,
        q=qcss.q,
        num_sets=K,
        num_rows=M,
        period=N,
        provenance=dict(qcss.provenance),
    )


def report_to_json(report: CorrelationReport) -> dict:
    """Export form; field names are part of the file contract."""
    provenance = dict(report.provenance)
    provenance.update(
        {"K": report.num_sets, "M": report.num_rows, "N": report.period, "q": report.q}
    )
    return {
        "deltaA": report.delta_a,
        "deltaC": report.delta_c,
        "deltaMax": report.delta_max,
        "lowerBound": report.lower_bound,
        "rho": report.rho,
        "perShiftMax": [float(v) for v in report.per_shift_max],
        "r1Observed": report.r1_observed,
        "r2Observed": report.r2_observed,
        "factorizationGapMax": report.factorization_gap_max,
        "provenance": provenance,
    }


def report_per_shift_csv(report: CorrelationReport) -> str:
    """Per-shift profile: tau, shift class (zero / R1 / R2), max magnitude."""
    lines = ["tau,class,maxMagnitude"]
    for tau, value in enumerate(report.per_shift_max):
        lines.append(f"{tau},{report.shift_class(tau)},{float(value)!r}")
    return "\n".join(lines) + "\n"
