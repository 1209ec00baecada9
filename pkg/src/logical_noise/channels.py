"""Exact effective logical Pauli channels by exhaustive error enumeration.

Every physical Pauli error pattern is classified through the syndrome table
and weighted by its occurrence probability, giving channel coefficients that
are exact polynomials in the physical error probability p.  Enumeration is
vectorized over chunks of the 4^n error index range; the integer tallies are
merged by addition, so the result is independent of the chunking.
"""
from __future__ import annotations

import csv
import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import expm1, log1p
from typing import TextIO

import numpy as np

from .codes import StabilizerCode
from .decoder import SyndromeTable
from .pauli import PauliOp, support_mask, weight
from .poly import Poly, paper_term

_CHUNK = 1 << 20

PAULI_LETTERS = "IXYZ"


class ChannelTypeError(ValueError):
    """The logical channel is not of the type an operation requires."""


class NoiseKind(enum.Enum):
    DEPHASING_1Q = "dephasing"
    DEPOLARIZING_1Q = "depol1q"
    DEPOLARIZING_2Q = "depol2q"

    @classmethod
    def from_name(cls, name: str) -> "NoiseKind":
        for k in cls:
            if name in (k.value, k.name, k.name.lower()):
                return k
        raise ValueError(
            f"unknown noise kind {name!r}; use dephasing, depol1q or depol2q"
        )


def _threads() -> int:
    raw = os.environ.get("LOGICAL_NOISE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def prob_1q(e: PauliOp, kind: NoiseKind, n: int) -> Poly:
    """Occurrence probability of a single-block error pattern, exact in p."""
    if e.n != n:
        raise ValueError(f"size mismatch: {e.n} vs {n} qubits")
    if kind is NoiseKind.DEPOLARIZING_1Q:
        return _depol1q_term(n, weight(e))
    if kind is NoiseKind.DEPHASING_1Q:
        if not e.is_z_only():
            raise ValueError(
                "dephasing assigns zero probability to X/Y components; "
                f"got {e}"
            )
        return _dephasing_term(n, e.z_bits.bit_count())
    raise ValueError(f"prob_1q does not apply to {kind}")


def prob_2q(e1: PauliOp, e2: PauliOp, n: int) -> Poly:
    """Occurrence probability of a transversal two-block error pattern.

    The exponent counts qubit pairs carrying at least one non-identity
    component, so overlapping supports count once.
    """
    if e1.n != n or e2.n != n:
        raise ValueError("size mismatch")
    i2 = (support_mask(e1) | support_mask(e2)).bit_count()
    return _depol2q_term(n, i2)


@lru_cache(maxsize=None)
def _depol1q_term(n: int, w: int) -> Poly:
    return paper_term(Fraction(1, 4**w), w, Fraction(3, 4), n - w)


@lru_cache(maxsize=None)
def _dephasing_term(n: int, i: int) -> Poly:
    return paper_term(1, i, 1, n - i)


@lru_cache(maxsize=None)
def _depol2q_term(n: int, i2: int) -> Poly:
    return paper_term(Fraction(1, 16**i2), i2, Fraction(15, 16), n - i2)


@dataclass(frozen=True)
class LogicalChannel1Q:
    lambda_i: Poly
    lambda_x: Poly
    lambda_y: Poly
    lambda_z: Poly

    def as_dict(self) -> dict[str, Poly]:
        return {
            "I": self.lambda_i,
            "X": self.lambda_x,
            "Y": self.lambda_y,
            "Z": self.lambda_z,
        }

    def evaluate(self, p: float) -> dict[str, float]:
        return {k: v(p) for k, v in self.as_dict().items()}

    def is_pure_dephasing(self) -> bool:
        return not self.lambda_x and not self.lambda_y


@dataclass(frozen=True)
class LogicalChannel2Q:
    lambdas: dict[tuple[str, str], Poly]

    def __getitem__(self, key: tuple[str, str]) -> Poly:
        return self.lambdas[key]

    def error_entries(self):
        """The fifteen non-(I,I) entries."""
        return {k: v for k, v in self.lambdas.items() if k != ("I", "I")}

    def evaluate(self, p: float) -> dict[tuple[str, str], float]:
        return {k: v(p) for k, v in self.lambdas.items()}


# ---------------------------------------------------------------------------
# vectorized classification

_POPCOUNT = np.bitwise_count


def _table_arrays(table: SyndromeTable):
    cx = np.array([op.x_bits for op in table.entries], dtype=np.uint64)
    cz = np.array([op.z_bits for op in table.entries], dtype=np.uint64)
    return cx, cz


def _classify_chunk(code: StabilizerCode, cx, cz, group_keys, sigma_keys, ex, ez):
    """Logical class (0..3) of each error (ex, ez) after table correction."""
    n = code.n
    s = np.zeros(ex.shape, dtype=np.int64)
    for i, g in enumerate(code.generators):
        gx = np.uint64(g.x_bits)
        gz = np.uint64(g.z_bits)
        anti = _POPCOUNT((ex & gz) ^ (ez & gx)).astype(np.int64) & 1
        s |= anti << i
    rx = ex ^ cx[s]
    rz = ez ^ cz[s]
    key = (rx << np.uint64(n)) | rz
    cls = np.full(ex.shape, -1, dtype=np.int8)
    hits = np.zeros(ex.shape, dtype=np.int8)
    for idx, skey in enumerate(sigma_keys):
        kk = key ^ skey
        pos = np.searchsorted(group_keys, kk)
        pos[pos == len(group_keys)] = 0
        found = group_keys[pos] == kk
        cls[found] = idx
        hits += found
    if not (hits == 1).all():
        raise AssertionError("residual classification is not unique")
    return cls


def _sigma_keys(code: StabilizerCode) -> np.ndarray:
    n = code.n
    ops = (
        PauliOp.identity(n),
        code.logical_x,
        code.logical_y,
        code.logical_z,
    )
    # XOR of the residual key with a logical key gives the coset-shifted key.
    return np.array([(op.x_bits << n) | op.z_bits for op in ops], dtype=np.uint64)


def _group_keys(code: StabilizerCode) -> np.ndarray:
    n = code.n
    keys = np.fromiter(
        ((e.x_bits << n) | e.z_bits for e in code.group),
        dtype=np.uint64,
        count=len(code.group),
    )
    keys.sort()
    return keys


def _accumulate(code, table, make_chunk, total, tally_shape, tally_of_chunk):
    """Map chunks of the error index range to tallies and sum them."""
    cx, cz = _table_arrays(table)
    gk = _group_keys(code)
    sk = _sigma_keys(code)

    def run(start: int, stop: int):
        ex, ez = make_chunk(start, stop)
        cls = _classify_chunk(code, cx, cz, gk, sk, ex, ez)
        return tally_of_chunk(cls, ex, ez)

    spans = [(s, min(s + _CHUNK, total)) for s in range(0, total, _CHUNK)]
    tally = np.zeros(tally_shape, dtype=np.int64)
    workers = min(_threads(), len(spans))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(lambda span: run(*span), spans):
                tally += part
    else:
        for span in spans:
            tally += run(*span)
    return tally


def class_weight_counts(
    code: StabilizerCode, table: SyndromeTable, z_only: bool
) -> np.ndarray:
    """Integer tally[class, weight] over all 4^n (or Z-only 2^n) errors."""
    n = code.n

    if z_only:
        def make_chunk(start, stop):
            ez = np.arange(start, stop, dtype=np.uint64)
            return np.zeros_like(ez), ez

        total = 1 << n
    else:
        def make_chunk(start, stop):
            idx = np.arange(start, stop, dtype=np.uint64)
            return idx >> np.uint64(n), idx & np.uint64((1 << n) - 1)

        total = 1 << (2 * n)

    def tally_of_chunk(cls, ex, ez):
        w = _POPCOUNT(ex | ez).astype(np.int64)
        flat = np.bincount(
            cls.astype(np.int64) * (n + 1) + w, minlength=4 * (n + 1)
        )
        return flat.reshape(4, n + 1)

    return _accumulate(code, table, make_chunk, total, (4, n + 1), tally_of_chunk)


def class_support_counts(code: StabilizerCode, table: SyndromeTable) -> np.ndarray:
    """Integer tally[class, support_mask] over all 4^n errors of one block."""
    n = code.n
    nmask = np.uint64((1 << n) - 1)

    def make_chunk(start, stop):
        idx = np.arange(start, stop, dtype=np.uint64)
        return idx >> np.uint64(n), idx & nmask

    def tally_of_chunk(cls, ex, ez):
        m = (ex | ez).astype(np.int64)
        flat = np.bincount(cls.astype(np.int64) * (1 << n) + m, minlength=4 << n)
        return flat.reshape(4, 1 << n)

    return _accumulate(
        code, table, make_chunk, 1 << (2 * n), (4, 1 << n), tally_of_chunk
    )


def effective_channel_1q(
    code: StabilizerCode, table: SyndromeTable, kind: NoiseKind
) -> LogicalChannel1Q:
    """Mean logical channel for one encoded block under single-qubit noise."""
    n = code.n
    if kind is NoiseKind.DEPHASING_1Q:
        counts = class_weight_counts(code, table, z_only=True)
        term = _dephasing_term
    elif kind is NoiseKind.DEPOLARIZING_1Q:
        counts = class_weight_counts(code, table, z_only=False)
        term = _depol1q_term
    else:
        raise ValueError(f"effective_channel_1q does not apply to {kind}")
    lams = []
    for c in range(4):
        lam = Poly.zero()
        for w in range(n + 1):
            if counts[c, w]:
                lam = lam + int(counts[c, w]) * term(n, w)
        lams.append(lam)
    return LogicalChannel1Q(*lams)


def effective_channel_2q(
    code: StabilizerCode, table: SyndromeTable
) -> LogicalChannel2Q:
    """Mean logical two-qubit channel under transversal two-qubit depolarization.

    Both blocks are corrected independently with the same table; the joint
    probability couples them only through the union of their supports, so the
    4^n x 4^n pair sum collapses to a sum over support-mask pairs.
    """
    n = code.n
    counts = class_support_counts(code, table)
    masks = np.arange(1 << n, dtype=np.int64)
    bins = np.zeros((4, 4, n + 1), dtype=np.int64)
    for c1 in range(4):
        v1 = counts[c1]
        nz = np.nonzero(v1)[0]
        for c2 in range(4):
            v2 = counts[c2]
            acc = bins[c1, c2]
            for m1 in nz:
                i2 = _POPCOUNT((m1 | masks).astype(np.uint64)).astype(np.int64)
                np.add.at(acc, i2, v1[m1] * v2)
    lambdas = {}
    for c1, a in enumerate(PAULI_LETTERS):
        for c2, b in enumerate(PAULI_LETTERS):
            lam = Poly.zero()
            for i2 in range(n + 1):
                if bins[c1, c2, i2]:
                    lam = lam + int(bins[c1, c2, i2]) * _depol2q_term(n, i2)
            lambdas[(a, b)] = lam
    return LogicalChannel2Q(lambdas)


def effective_channel_2q_naive(
    code: StabilizerCode, table: SyndromeTable
) -> LogicalChannel2Q:
    """Direct 4^n x 4^n double sum; reference for the aggregated version."""
    from .decoder import correct_and_classify

    n = code.n
    errors = []
    for idx in range(1 << (2 * n)):
        op = PauliOp(n, idx >> n, idx & ((1 << n) - 1))
        errors.append((op, correct_and_classify(code, table, op)))
    lambdas = {
        (a, b): Poly.zero() for a in PAULI_LETTERS for b in PAULI_LETTERS
    }
    for e1, c1 in errors:
        for e2, c2 in errors:
            key = (PAULI_LETTERS[c1], PAULI_LETTERS[c2])
            lambdas[key] = lambdas[key] + prob_2q(e1, e2, n)
    return LogicalChannel2Q(lambdas)


def worst_case_mu(ch: LogicalChannel2Q, p_phys: float) -> float:
    """Effective depolarization parameter from the worst error entry."""
    if not 0.0 <= p_phys <= 1.0:
        raise ValueError("p_phys must be in [0, 1]")
    lam_max = max(lam(p_phys) for lam in ch.error_entries().values())
    return 1.0 - 16.0 * lam_max


def logical_alpha(ch: LogicalChannel1Q, alpha_phys: float) -> float:
    """Map a per-step dephasing rate through the encoded channel.

    Requires a pure dephasing channel (identically zero X and Y weights);
    the logical phase flip probability must stay below 1/2.
    """
    if alpha_phys < 0:
        raise ValueError("alpha must be nonnegative")
    if not ch.is_pure_dephasing():
        raise ChannelTypeError(
            "channel type incompatible: logical channel is not pure dephasing"
        )
    p = -expm1(-alpha_phys) / 2.0
    p_log = ch.lambda_z(p)
    if p_log >= 0.5:
        raise ValueError(f"logical phase flip probability {p_log} is not below 1/2")
    return -log1p(-2.0 * p_log)


def _fmt_fraction(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def dump_channel_csv(
    channel, stream: TextIO, eval_p: float | None = None
) -> None:
    """Write channel coefficients as exact rationals, one row per class."""
    if isinstance(channel, LogicalChannel1Q):
        rows = [(name, poly) for name, poly in channel.as_dict().items()]
    else:
        rows = [(a + b, poly) for (a, b), poly in channel.lambdas.items()]
    degree = max(poly.degree for _, poly in rows)
    header = ["class"] + [f"p{k}" for k in range(degree + 1)]
    if eval_p is not None:
        header.append(f"value_at_{eval_p:g}")
    writer = csv.writer(stream)
    writer.writerow(header)
    for name, poly in rows:
        coeffs = list(poly.coeffs) + [Fraction(0)] * (degree + 1 - len(poly.coeffs))
        row = [name] + [_fmt_fraction(c) for c in coeffs]
        if eval_p is not None:
            row.append(format(poly(eval_p), ".12g"))
        writer.writerow(row)


def sweep_channel_csv(channel, stream: TextIO, grid) -> None:
    """Evaluate channel weights on a p grid; one row per p, one column per class."""
    if isinstance(channel, LogicalChannel1Q):
        items = list(channel.as_dict().items())
        names = ["lambda_" + name for name, _ in items]
    else:
        items = [(a + b, poly) for (a, b), poly in channel.lambdas.items()]
        names = ["lambda_" + name for name, _ in items]
    writer = csv.writer(stream)
    writer.writerow(["p"] + names)
    for p in grid:
        writer.writerow(
            [format(p, ".12g")] + [format(poly(p), ".12g") for _, poly in items]
        )
