"""Syndrome lookup tables and logical classification of corrected errors.

Two table-building strategies:

* MIN_WEIGHT_PAULI -- sweep all Pauli errors by increasing weight and record
  the first error seen for each new syndrome.
* PHASE_FLIP_FIRST -- run the same sweep restricted to Z-only errors first
  (all weights), then fill whatever syndromes remain with a min-weight Pauli
  sweep.  This tailors the syndrome interpretation to a dephasing channel.

The equal-weight enumeration order is fixed for reproducibility: qubit-index
subsets in lexicographic order, and within a subset the non-identity letters
in the order X < Y < Z per qubit (leftmost qubit slowest).
"""
from __future__ import annotations

import csv
import enum
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, TextIO

from .codes import StabilizerCode
from .pauli import PauliOp, mul, support_mask, syndrome, weight


class Strategy(enum.Enum):
    MIN_WEIGHT_PAULI = "standard"
    PHASE_FLIP_FIRST = "adaptive"

    @classmethod
    def from_name(cls, name: str) -> "Strategy":
        for s in cls:
            if name in (s.value, s.name, s.name.lower()):
                return s
        raise ValueError(f"unknown strategy {name!r}; use 'standard' or 'adaptive'")


class LogicalClass(enum.IntEnum):
    I = 0
    X = 1
    Y = 2
    Z = 3


def _pauli_errors_of_weight(n: int, w: int) -> Iterator[PauliOp]:
    for qubits in combinations(range(n), w):
        for letters in product("XYZ", repeat=w):
            x = z = 0
            for k, ch in zip(qubits, letters):
                if ch != "Z":
                    x |= 1 << k
                if ch != "X":
                    z |= 1 << k
            yield PauliOp(n, x, z)


def _z_errors_of_weight(n: int, w: int) -> Iterator[PauliOp]:
    for qubits in combinations(range(n), w):
        z = 0
        for k in qubits:
            z |= 1 << k
        yield PauliOp(n, 0, z)


@dataclass(frozen=True)
class SyndromeStats:
    """How many new syndromes each sweep phase discovered, per error weight."""

    z_only_by_weight: dict[int, int]
    pauli_by_weight: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.z_only_by_weight.values()) + sum(self.pauli_by_weight.values())


@dataclass(frozen=True)
class SyndromeTable:
    code: StabilizerCode
    strategy: Strategy
    entries: tuple[PauliOp, ...]
    stats: SyndromeStats

    def __post_init__(self):
        assert self.entries[0].is_identity()

    def __len__(self) -> int:
        return len(self.entries)


def build_table(code: StabilizerCode, strategy: Strategy) -> SyndromeTable:
    """Fill all 2^(n-1) syndromes with correction representatives."""
    n = code.n
    check = code.check
    total = 1 << len(code.generators)
    entries: list[PauliOp | None] = [None] * total
    entries[0] = PauliOp.identity(n)
    remaining = total - 1
    z_only_by_weight: dict[int, int] = {}
    pauli_by_weight: dict[int, int] = {}

    if strategy is Strategy.PHASE_FLIP_FIRST:
        for w in range(1, n + 1):
            found = 0
            for e in _z_errors_of_weight(n, w):
                s = syndrome(check, e)
                if entries[s] is None:
                    entries[s] = e
                    found += 1
                    remaining -= 1
            if found:
                z_only_by_weight[w] = found
            if not remaining:
                break

    w = 0
    while remaining:
        w += 1
        assert w <= n, "every syndrome is realizable by some Pauli error"
        found = 0
        for e in _pauli_errors_of_weight(n, w):
            s = syndrome(check, e)
            if entries[s] is None:
                entries[s] = e
                found += 1
                remaining -= 1
        if found:
            pauli_by_weight[w] = found

    return SyndromeTable(
        code=code,
        strategy=strategy,
        entries=tuple(entries),  # type: ignore[arg-type]
        stats=SyndromeStats(z_only_by_weight, pauli_by_weight),
    )


def error_space_count(code: StabilizerCode, strategy: Strategy) -> SyndromeStats:
    """Per-weight counts of newly discovered syndromes for the given sweep."""
    return build_table(code, strategy).stats


_SIGMA_ATTRS = (
    (LogicalClass.I, None),
    (LogicalClass.X, "logical_x"),
    (LogicalClass.Y, "logical_y"),
    (LogicalClass.Z, "logical_z"),
)


def correct_and_classify(
    code: StabilizerCode, table: SyndromeTable, e: PauliOp
) -> LogicalClass:
    """Residual logical action of e after table-based correction."""
    if e.n != code.n:
        raise ValueError(f"size mismatch: {e.n} vs {code.n} qubits")
    residual = mul(e, table.entries[syndrome(code.check, e)])
    group = code.group
    for cls, attr in _SIGMA_ATTRS:
        op = residual if attr is None else mul(residual, getattr(code, attr))
        if op in group:
            return cls
    raise AssertionError(
        "residual is outside the centralizer; table or code is corrupt"
    )


def dump_table_csv(table: SyndromeTable, stream: TextIO) -> None:
    """Debug dump: syndrome_int, representative_pauli_string, weight, z_only_flag."""
    writer = csv.writer(stream)
    writer.writerow(["syndrome_int", "representative_pauli_string", "weight", "z_only_flag"])
    for s, rep in enumerate(table.entries):
        writer.writerow([s, rep.to_string(), weight(rep), int(rep.is_z_only())])
