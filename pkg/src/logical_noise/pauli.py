"""Phaseless n-qubit Pauli algebra in the binary symplectic picture.

An operator is a pair of bit masks (x_bits, z_bits): bit k set in x_bits means
an X component on qubit k+1, bit k in z_bits a Z component, both set a Y.
Qubit 1 of the usual string notation ("XZZXI", leftmost character) maps to
bit 0.  Global phases are dropped everywhere, so multiplication is a plain
XOR of masks and every operator is its own inverse.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_QUBITS = 32

_LETTER_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_LETTER = {v: k for k, v in _LETTER_TO_BITS.items()}


@dataclass(frozen=True)
class PauliOp:
    """A phaseless Pauli operator on ``n`` qubits, 1 <= n <= 32."""

    n: int
    x_bits: int
    z_bits: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {self.n}")
        mask = (1 << self.n) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise ValueError("mask uses bits beyond the qubit count")

    @classmethod
    def identity(cls, n: int) -> "PauliOp":
        return cls(n, 0, 0)

    @classmethod
    def from_string(cls, s: str) -> "PauliOp":
        """Parse e.g. "XZZXI" (leftmost letter = qubit 1)."""
        if not s:
            raise ValueError("empty Pauli string")
        x = z = 0
        for k, ch in enumerate(s.upper()):
            try:
                xb, zb = _LETTER_TO_BITS[ch]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {ch!r} in {s!r}") from None
            x |= xb << k
            z |= zb << k
        return cls(len(s), x, z)

    def to_string(self) -> str:
        return "".join(
            _BITS_TO_LETTER[(self.x_bits >> k) & 1, (self.z_bits >> k) & 1]
            for k in range(self.n)
        )

    def letter(self, qubit: int) -> str:
        """Pauli letter on 1-based ``qubit``."""
        k = qubit - 1
        return _BITS_TO_LETTER[(self.x_bits >> k) & 1, (self.z_bits >> k) & 1]

    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    def is_z_only(self) -> bool:
        return self.x_bits == 0

    def __str__(self) -> str:
        return self.to_string()


def _check_same_size(a: PauliOp, b: PauliOp):
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n} qubits")


def commutes(a: PauliOp, b: PauliOp) -> int:
    """0 if a and b commute, 1 if they anticommute (the symplectic product)."""
    _check_same_size(a, b)
    return ((a.x_bits & b.z_bits).bit_count() + (a.z_bits & b.x_bits).bit_count()) & 1


def mul(a: PauliOp, b: PauliOp) -> PauliOp:
    """Product up to global phase: componentwise XOR of masks."""
    _check_same_size(a, b)
    return PauliOp(a.n, a.x_bits ^ b.x_bits, a.z_bits ^ b.z_bits)


def support_mask(a: PauliOp) -> int:
    return a.x_bits | a.z_bits


def weight(a: PauliOp) -> int:
    """Number of non-identity tensor factors."""
    return support_mask(a).bit_count()


@dataclass(frozen=True)
class CheckMatrix:
    """Rows are the symplectic vectors of a set of stabilizer generators.

    Construction fails unless the rows pairwise commute and are independent
    over GF(2).
    """

    n: int
    rows: tuple[PauliOp, ...]

    def __post_init__(self):
        for r in self.rows:
            if r.n != self.n:
                raise ValueError("generator size does not match qubit count")
        for i, a in enumerate(self.rows):
            for b in self.rows[i + 1:]:
                if commutes(a, b):
                    raise ValueError(
                        f"generators {a} and {b} anticommute"
                    )
        if rank_gf2(self.rows, self.n) != len(self.rows):
            raise ValueError("generators are dependent over GF(2)")

    def __len__(self) -> int:
        return len(self.rows)


def rank_gf2(ops: Iterable[PauliOp], n: int) -> int:
    """Rank over GF(2) of the (x|z) row vectors, by Gaussian elimination."""
    rows = [(op.x_bits << n) | op.z_bits for op in ops]
    rank = 0
    for col in reversed(range(2 * n)):
        pivot = next((i for i in range(rank, len(rows)) if rows[i] >> col & 1), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i] >> col & 1:
                rows[i] ^= rows[rank]
        rank += 1
    return rank


def syndrome(check: CheckMatrix, e: PauliOp) -> int:
    """Syndrome packed as an integer; generator i contributes bit i."""
    if e.n != check.n:
        raise ValueError(f"size mismatch: {e.n} vs {check.n} qubits")
    s = 0
    for i, g in enumerate(check.rows):
        s |= commutes(g, e) << i
    return s


def syndrome_bits(check: CheckMatrix, e: PauliOp) -> tuple[int, ...]:
    """Same as :func:`syndrome` but as one bit per generator, in row order."""
    s = syndrome(check, e)
    return tuple((s >> i) & 1 for i in range(len(check.rows)))


class GroupSet:
    """The full group generated by commuting independent Paulis, with O(1) lookup."""

    def __init__(self, generators: Iterable[PauliOp]):
        gens = tuple(generators)
        if not gens:
            raise ValueError("need at least one generator")
        n = gens[0].n
        # CheckMatrix construction performs the commutation/independence checks.
        CheckMatrix(n, gens)
        self.n = n
        self.generators = gens
        elems = [PauliOp.identity(n)]
        for g in gens:
            elems += [mul(e, g) for e in elems]
        self._keys = frozenset((e.x_bits << n) | e.z_bits for e in elems)
        self._elements = tuple(elems)

    def __contains__(self, op: PauliOp) -> bool:
        if op.n != self.n:
            return False
        return ((op.x_bits << self.n) | op.z_bits) in self._keys

    def __len__(self) -> int:
        return len(self._keys)

    def __iter__(self) -> Iterator[PauliOp]:
        return iter(self._elements)


def enumerate_group(generators: Iterable[PauliOp]) -> GroupSet:
    """All products of the generators; errors out on dependent or
    anticommuting input."""
    return GroupSet(generators)
