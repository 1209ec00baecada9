"""Secret-key-rate analysis for N-segment repeater chains.

Link/timing model, waiting-time and dephasing statistics, QBERs, the BB84
secret key fraction, and the encoded pipeline that folds logical channels
into effective depolarization and dephasing parameters.

Conventions: entanglement is distributed in parallel in all segments; a
station swaps the instant both adjacent links exist.  Dephasing is counted
in qubit-steps Q: every stored qubit of an established link accrues one unit
per time step between its link's creation and its consumption (swap or
end-node measurement), which doubles the per-link rate, so all expectation
factors are E[e^(-alpha*Q)] with the single-qubit alpha.
"""
from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from math import comb, exp, expm1, inf, log, log1p, log2, sqrt
from typing import NamedTuple, Optional

import mpmath
import numpy as np

from .channels import (
    LogicalChannel1Q,
    LogicalChannel2Q,
    NoiseKind,
    effective_channel_1q,
    effective_channel_2q,
    logical_alpha,
    worst_case_mu,
)
from .codes import StabilizerCode, get_code
from .decoder import Strategy, build_table

SPEED_OF_LIGHT_KM_S = 3.0e5
REFRACTIVE_INDEX = 1.44
FIBER_SPEED_KM_S = SPEED_OF_LIGHT_KM_S / REFRACTIVE_INDEX
ATTENUATION_KM = 22.0

_MC_CHUNKS = 64


def link_success_prob(l0_km: float, p0: float) -> float:
    """Success probability of one distribution attempt over a segment."""
    if l0_km < 0:
        raise ValueError("segment length must be nonnegative")
    if not 0 < p0 <= 1:
        raise ValueError("p0 must be in (0, 1]")
    return p0 * exp(-l0_km / ATTENUATION_KM)


def time_unit(l0_km: float, tau_clock: float = 1e-6) -> float:
    """Duration of one distribution attempt: clock period plus signal travel."""
    if l0_km < 0 or tau_clock < 0:
        raise ValueError("need nonnegative length and clock period")
    return tau_clock + l0_km / FIBER_SPEED_KM_S


def alpha_per_step(l0_km: float, t_c: float, tau_clock: float = 1e-6) -> float:
    """Per-qubit dephasing exponent accrued in one time step."""
    if t_c <= 0:
        raise ValueError("coherence time must be positive")
    return time_unit(l0_km, tau_clock) / t_c


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"entropy argument {x} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * log2(x) - (1.0 - x) * log2(1.0 - x)


def secret_key_fraction(e_x: float, e_z: float) -> float:
    """Asymptotic one-way BB84 yield, clamped at zero."""
    return max(0.0, 1.0 - binary_entropy(e_x) - binary_entropy(e_z))


def qbers(n_segments, mu, mu0, f0, dephasing_factor):
    """Z- and X-basis error rates of the final pair."""
    m = mu ** (n_segments - 1) * mu0**n_segments
    e_z = 0.5 * (1.0 - m)
    e_x = 0.5 * (1.0 - m * (2.0 * f0 - 1.0) ** n_segments * dephasing_factor)
    return e_z, e_x


# ---------------------------------------------------------------------------
# waiting time

_SURVIVAL_TERM_CAP = 500_000


def avg_waiting_parallel(n_segments: int, p: float) -> float:
    """Expected steps until all segments have succeeded (max of geometrics).

    The alternating binomial sum loses all precision in doubles for large
    segment counts, so the equivalent survival series is used whenever it
    converges within a bounded number of terms, with an arbitrary-precision
    alternating sum as fallback.
    """
    if n_segments < 1:
        raise ValueError("need at least one segment")
    if not 0.0 < p <= 1.0:
        raise ValueError("success probability must be in (0, 1]")
    if p == 1.0:
        return 1.0
    q = 1.0 - p
    # terms needed for q^k < 1e-19 / n
    kmax = log(1e-19 / n_segments) / log(q)
    if kmax <= _SURVIVAL_TERM_CAP:
        total = 1.0  # k = 0 term
        qk = q
        while qk > 0.0:
            term = -expm1(n_segments * log1p(-qk))
            total += term
            if term < 1e-17 * total:
                break
            qk *= q
        return total
    digits = 25 + int(0.302 * n_segments)
    with mpmath.workdps(digits):
        qm = mpmath.mpf(q)
        acc = mpmath.mpf(0)
        for i in range(1, n_segments + 1):
            acc += (-1) ** (i + 1) * mpmath.binomial(n_segments, i) / (1 - qm**i)
        return float(acc)


def _diff_prob(p: float, d: int) -> float:
    """P(|N1 - N2| = d) for iid geometric attempt counts."""
    q = 1.0 - p
    if d == 0:
        return p / (1.0 + q)
    return 2.0 * p * q**d / (1.0 + q)


def avg_waiting_cutoff2(p: float, m: int) -> float:
    """Expected steps for two segments under an m-step memory cutoff.

    A round where the second link stays absent for m steps after the first
    succeeded is abandoned (min+m steps spent) and both segments restart.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError("success probability must be in (0, 1]")
    if m < 1:
        raise ValueError("cutoff must be a positive integer")
    q = 1.0 - p
    e_min = 1.0 / (1.0 - q * q)
    p_le = _diff_prob(p, 0) + sum(_diff_prob(p, d) for d in range(1, m + 1))
    e_diff_succ = sum(d * _diff_prob(p, d) for d in range(1, m + 1)) / p_le
    failed_rounds = (1.0 - p_le) / p_le
    return failed_rounds * (e_min + m) + e_min + e_diff_succ


# ---------------------------------------------------------------------------
# dephasing expectations

class Scheme(enum.Enum):
    EXACT2 = "exact2"
    SEQUENTIAL = "sequential"
    SWAP_ASAP_MC = "mc"

    @classmethod
    def from_name(cls, name: str) -> "Scheme":
        for s in cls:
            if name in (s.value, s.name, s.name.lower()):
                return s
        raise ValueError(f"unknown scheme {name!r}; use exact2, sequential or mc")


class DephasingEstimate(NamedTuple):
    value: float
    stderr: Optional[float]


def exact2_dephasing(p: float, alpha: float, cutoff: Optional[int] = None,
                     rel_tol: float = 1e-12) -> float:
    """E[e^(-2*alpha*|N1-N2|)] for a two-segment chain, by series summation.

    With a cutoff the expectation is over the final, successful round only
    (discarded rounds never reach the end nodes), i.e. conditioned on
    |N1 - N2| <= m.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError("success probability must be in (0, 1]")
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    q = 1.0 - p
    t = exp(-2.0 * alpha)
    if cutoff is not None:
        if cutoff < 1:
            raise ValueError("cutoff must be a positive integer")
        num = _diff_prob(p, 0)
        den = _diff_prob(p, 0)
        for d in range(1, cutoff + 1):
            pd = _diff_prob(p, d)
            num += pd * t**d
            den += pd
        return num / den
    total = _diff_prob(p, 0)
    d = 0
    qt = q * t
    while True:
        d += 1
        term = _diff_prob(p, d) * t**d
        total += term
        if qt <= 0.0:
            break
        tail = 2.0 * p / (1.0 + q) * (qt ** (d + 1)) / (1.0 - qt)
        if tail < rel_tol * total:
            break
    return total


def sequential_dephasing(n_segments: int, p: float, alpha: float) -> float:
    """E[e^(-2*alpha*(N2+...+NN))]: generating function of a sum of N-1
    geometrics evaluated at e^(-2*alpha)."""
    if n_segments < 1:
        raise ValueError("need at least one segment")
    if not 0.0 < p <= 1.0:
        raise ValueError("success probability must be in (0, 1]")
    q = 1.0 - p
    t = exp(-2.0 * alpha)
    return (p * t / (1.0 - q * t)) ** (n_segments - 1)


def _mc_threads() -> int:
    raw = os.environ.get("LOGICAL_NOISE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def swap_asap_mc(
    n_segments: int,
    p: float,
    alpha: float,
    samples: int = 10**6,
    seed: int = 0,
) -> DephasingEstimate:
    """Monte Carlo E[e^(-alpha*Q)] under the qubit-step accounting.

    All segments attempt in parallel; a station swaps the moment both of its
    links exist, so Q is a deterministic function of the segment completion
    times.  Sampling is split into a fixed number of chunks with derived
    seeds; the merged estimate does not depend on the worker count.
    """
    if n_segments < 2:
        raise ValueError("need at least two segments")
    if not 0.0 < p <= 1.0:
        raise ValueError("success probability must be in (0, 1]")
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    if samples < _MC_CHUNKS:
        raise ValueError(f"need at least {_MC_CHUNKS} samples")
    base = samples // _MC_CHUNKS
    sizes = [base + (1 if i < samples % _MC_CHUNKS else 0) for i in range(_MC_CHUNKS)]

    def run(chunk: int) -> tuple[float, float, int]:
        rng = np.random.Generator(
            np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(chunk,)))
        )
        t = rng.geometric(p, size=(sizes[chunk], n_segments)).astype(np.int64)
        mx = t.max(axis=1)
        q_steps = 2 * mx - t[:, 0] - t[:, -1]
        if n_segments > 1:
            q_steps = q_steps + np.abs(np.diff(t, axis=1)).sum(axis=1)
        vals = np.exp(-alpha * q_steps)
        return float(vals.sum()), float((vals * vals).sum()), len(vals)

    workers = min(_mc_threads(), _MC_CHUNKS)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, range(_MC_CHUNKS)))
    else:
        parts = [run(i) for i in range(_MC_CHUNKS)]
    s1 = sum(part[0] for part in parts)
    s2 = sum(part[1] for part in parts)
    count = sum(part[2] for part in parts)
    mean = s1 / count
    var = max(0.0, s2 / count - mean * mean)
    return DephasingEstimate(mean, sqrt(var / count))


def dephasing_expectation(
    scheme: Scheme,
    n_segments: int,
    p: float,
    alpha: float,
    cutoff: Optional[int] = None,
    samples: int = 10**6,
    seed: int = 0,
) -> DephasingEstimate:
    """Mean dephasing factor E[e^(-alpha*Q)] for the chosen scheme."""
    if scheme is Scheme.EXACT2:
        if n_segments != 2:
            raise ValueError("the exact series applies to two segments only")
        return DephasingEstimate(exact2_dephasing(p, alpha, cutoff), None)
    if cutoff is not None:
        raise ValueError("memory cutoff is implemented for two segments (exact2)")
    if scheme is Scheme.SEQUENTIAL:
        return DephasingEstimate(sequential_dephasing(n_segments, p, alpha), None)
    if scheme is Scheme.SWAP_ASAP_MC:
        return swap_asap_mc(n_segments, p, alpha, samples=samples, seed=seed)
    raise ValueError(f"unsupported scheme {scheme}")


# ---------------------------------------------------------------------------
# encoded pipeline

@dataclass(frozen=True)
class Encoding:
    """Precomputed logical-channel data for one memory encoding."""

    code: StabilizerCode
    dephasing: LogicalChannel1Q
    two_qubit: LogicalChannel2Q

    @classmethod
    def for_code(cls, code: StabilizerCode) -> "Encoding":
        deph = effective_channel_1q(
            code, build_table(code, Strategy.PHASE_FLIP_FIRST), NoiseKind.DEPHASING_1Q
        )
        two = effective_channel_2q(code, build_table(code, Strategy.MIN_WEIGHT_PAULI))
        return cls(code, deph, two)


_ENCODING_CACHE: dict[str, Encoding] = {}


def catalog_encoding(name: str) -> Encoding:
    if name not in _ENCODING_CACHE:
        _ENCODING_CACHE[name] = Encoding.for_code(get_code(name))
    return _ENCODING_CACHE[name]


@dataclass(frozen=True)
class RepeaterParams:
    n_segments: int
    length_km: float
    p0: float = 1.0
    t_c: float = 1.0
    mu: float = 1.0
    mu0: Optional[float] = None
    f0: float = 1.0
    tau_clock: float = 1e-6
    cutoff: Optional[int] = None
    encoding: Optional[Encoding] = None
    scheme: Scheme = Scheme.SEQUENTIAL
    mc_samples: int = 10**6
    mc_seed: int = 0

    @property
    def mu0_value(self) -> float:
        return self.mu if self.mu0 is None else self.mu0

    @property
    def l0_km(self) -> float:
        return self.length_km / self.n_segments

    def validate(self) -> None:
        if self.n_segments < 1:
            raise ValueError("need at least one segment")
        if self.length_km <= 0:
            raise ValueError("total length must be positive")
        if not 0 < self.p0 <= 1:
            raise ValueError("p0 must be in (0, 1]")
        if self.t_c <= 0:
            raise ValueError("coherence time must be positive")
        for label, v in (("mu", self.mu), ("mu0", self.mu0_value)):
            if not 0 < v <= 1:
                raise ValueError(f"{label} must be in (0, 1]")
        if not 0.5 < self.f0 <= 1:
            raise ValueError("f0 must be in (1/2, 1]")
        if self.tau_clock < 0:
            raise ValueError("clock period must be nonnegative")
        if self.cutoff is not None:
            if self.n_segments != 2 or self.scheme is not Scheme.EXACT2:
                raise ValueError("memory cutoff requires two segments and exact2")
            if self.cutoff < 1:
                raise ValueError("cutoff must be a positive integer")
        if self.scheme is Scheme.EXACT2 and self.n_segments != 2:
            raise ValueError("exact2 requires exactly two segments")
        if self.scheme is Scheme.SWAP_ASAP_MC and self.n_segments < 2:
            raise ValueError("the Monte Carlo scheme needs at least two segments")


@dataclass(frozen=True)
class RateResult:
    p_link: float
    tau_seconds: float
    alpha: float
    mu_eff: float
    mu0_eff: float
    avg_wait_steps: float
    dephasing_factor: float
    e_z_bar: float
    e_x_bar: float
    skf: float
    raw_rate_hz: float
    skr_hz: float
    mc_standard_error: Optional[float] = None


def secret_key_rate(params: RepeaterParams) -> RateResult:
    """Full pipeline from hardware parameters to the secret key rate."""
    params.validate()
    n = params.n_segments
    l0 = params.l0_km
    p = link_success_prob(l0, params.p0)
    tau = time_unit(l0, params.tau_clock)
    alpha = alpha_per_step(l0, params.t_c, params.tau_clock)

    if params.encoding is not None:
        enc = params.encoding
        # stepwise correction: each attempt's physical phase flip is mapped
        # through the encoded dephasing channel before it can accumulate
        alpha_eff = logical_alpha(enc.dephasing, alpha)
        mu_eff = worst_case_mu(enc.two_qubit, 1.0 - params.mu)
        mu0_eff = worst_case_mu(enc.two_qubit, 1.0 - params.mu0_value)
    else:
        alpha_eff = alpha
        mu_eff = params.mu
        mu0_eff = params.mu0_value

    factor = dephasing_expectation(
        params.scheme,
        n,
        p,
        alpha_eff,
        cutoff=params.cutoff,
        samples=params.mc_samples,
        seed=params.mc_seed,
    )

    if params.cutoff is not None:
        wait = avg_waiting_cutoff2(p, params.cutoff)
    else:
        wait = avg_waiting_parallel(n, p)

    e_z, e_x = qbers(n, mu_eff, mu0_eff, params.f0, factor.value)
    skf = secret_key_fraction(e_x, e_z)
    raw = 1.0 / (wait * tau)
    return RateResult(
        p_link=p,
        tau_seconds=tau,
        alpha=alpha_eff,
        mu_eff=mu_eff,
        mu0_eff=mu0_eff,
        avg_wait_steps=wait,
        dephasing_factor=factor.value,
        e_z_bar=e_z,
        e_x_bar=e_x,
        skf=skf,
        raw_rate_hz=raw,
        skr_hz=skf * raw,
        mc_standard_error=factor.stderr,
    )


def threshold_mu(
    n_segments: int, encoding: Optional[Encoding] = None, tol: float = 1e-5
) -> float:
    """Minimal depolarization parameter (mu0 = mu) giving a nonzero key
    fraction in the zero-dephasing best case."""
    if n_segments < 1:
        raise ValueError("need at least one segment")

    def margin(mu: float) -> float:
        mu_eff = worst_case_mu(encoding.two_qubit, 1.0 - mu) if encoding else mu
        e = 0.5 * (1.0 - mu_eff ** (2 * n_segments - 1))
        e = min(max(e, 0.0), 1.0)
        return 1.0 - 2.0 * binary_entropy(e)

    lo, hi = 0.5, 1.0
    if margin(lo) > 0:
        return lo
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if margin(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# large-chain grid (parallel raw rate, sequential dephasing lower bound)

@dataclass(frozen=True)
class LargeChainCell:
    n_segments: int
    encoding_name: str
    mu: float
    t_c: float
    raw_rate_hz: float
    skf: float
    skr_hz: float


def large_chain_rate(
    n_segments: int,
    t_c: float,
    mu: float,
    encoding: Optional[Encoding],
    length_km: float = 800.0,
) -> LargeChainCell:
    """One cell of the many-segment comparison grid.

    Analytic lower-bound path: parallel-distribution raw rate combined with
    the fully sequential dephasing statistics, p0 = 1, and the attempt time
    taken as the signal travel time alone.
    """
    l0 = length_km / n_segments
    p = link_success_prob(l0, 1.0)
    tau = l0 / FIBER_SPEED_KM_S
    alpha = tau / t_c
    if encoding is not None:
        alpha_eff = logical_alpha(encoding.dephasing, alpha)
        mu_eff = worst_case_mu(encoding.two_qubit, 1.0 - mu)
    else:
        alpha_eff = alpha
        mu_eff = mu
    factor = sequential_dephasing(n_segments, p, alpha_eff)
    e_z, e_x = qbers(n_segments, mu_eff, mu_eff, 1.0, factor)
    skf = secret_key_fraction(e_x, e_z)
    raw = 1.0 / (avg_waiting_parallel(n_segments, p) * tau)
    return LargeChainCell(
        n_segments=n_segments,
        encoding_name=encoding.code.name if encoding else "none",
        mu=mu,
        t_c=t_c,
        raw_rate_hz=raw,
        skf=skf,
        skr_hz=skf * raw,
    )


def large_chain_grid(length_km: float = 800.0) -> list[LargeChainCell]:
    """The full 3x(4x4) grid: N in {80, 800, 8000}, unencoded/five/steane,
    mu in {0.99, 0.999}, t_c in {1 ms, 0.1 s}."""
    cells = []
    encodings = [None, catalog_encoding("five"), catalog_encoding("steane")]
    for enc in encodings:
        for mu in (0.99, 0.999):
            for t_c in (0.001, 0.1):
                for n in (80, 800, 8000):
                    cells.append(large_chain_rate(n, t_c, mu, enc, length_km))
    return cells
