"""Independent numeric validation backends for the channel engine.

Everything here works in the state picture with dense density matrices, so
it shares no code path with the bitmask enumeration engine: code projectors
are built from the generators, noise is applied qubit by qubit, error spaces
are projected with the syndrome table's representatives, and the channel
weights are read off a corrected maximally entangled state.  Numeric only;
intended for cross-checks at sampled p, not for production channel output.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import comb

import numpy as np

from .channels import NoiseKind
from .codes import StabilizerCode
from .decoder import SyndromeTable
from .pauli import PauliOp

_1Q_LIMIT = 7
_2Q_LIMIT = 5

_I2 = np.eye(2, dtype=complex)
_SIGMA = {
    "I": _I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix(op: PauliOp) -> np.ndarray:
    """Dense matrix of a Pauli operator; qubit 1 is the leftmost factor."""
    return reduce(np.kron, (_SIGMA[op.letter(q)] for q in range(1, op.n + 1)))


def _single_qubit_ops(n: int, k: int, extra_dims: int) -> dict[str, np.ndarray]:
    """sigma on qubit k (0-based) of an n-qubit register, identity elsewhere."""
    left = np.eye(1 << k, dtype=complex)
    right = np.eye((1 << (n - k - 1)) * extra_dims, dtype=complex)
    return {
        name: np.kron(np.kron(left, sig), right) for name, sig in _SIGMA.items()
    }


def _apply_pauli_channel(rho, ops, weights):
    out = weights[0] * rho if weights[0] else np.zeros_like(rho)
    for w, op in zip(weights[1:], ops):
        if w:
            out += w * (op @ rho @ op)
    return out


def _noise_weights(kind: NoiseKind, p: float) -> tuple[float, float, float, float]:
    if kind is NoiseKind.DEPHASING_1Q:
        return (1.0 - p, 0.0, 0.0, p)
    if kind is NoiseKind.DEPOLARIZING_1Q:
        return (1.0 - 0.75 * p, p / 4.0, p / 4.0, p / 4.0)
    raise ValueError(f"single-qubit oracle does not apply to {kind}")


def _logical_vectors(code: StabilizerCode):
    """(|0_L>, |1_L>, P0) from the generator and logical-Z projectors."""
    n = code.n
    dim = 1 << n
    proj = (np.eye(dim, dtype=complex) + pauli_matrix(code.logical_z)) / 2.0
    for g in code.generators:
        proj = proj @ ((np.eye(dim, dtype=complex) + pauli_matrix(g)) / 2.0)
    col = int(np.argmax(np.abs(np.diag(proj))))
    v0 = proj[:, col]
    v0 = v0 / np.linalg.norm(v0)
    v1 = pauli_matrix(code.logical_x) @ v0
    p0 = np.outer(v0, v0.conj())
    return v0, v1, p0


def check_projector_algebra(code: StabilizerCode, table: SyndromeTable) -> float:
    """Max deviation from P_i P_j = 0 (i != j) and sum_i P_i = identity."""
    if code.n > _1Q_LIMIT:
        raise ValueError(f"projector check supports n <= {_1Q_LIMIT}")
    _, v1, p0 = _logical_vectors(code)
    p1 = np.outer(v1, v1.conj())
    projectors = []
    for rep in table.entries:
        e = pauli_matrix(rep)
        projectors.append(e @ (p0 + p1) @ e)
    worst = float(np.max(np.abs(sum(projectors) - np.eye(1 << code.n))))
    for i, pi in enumerate(projectors):
        for pj in projectors[:i]:
            worst = max(worst, float(np.max(np.abs(pi @ pj))))
    return worst


def oracle_channel_numeric(
    code: StabilizerCode, table: SyndromeTable, kind: NoiseKind, p: float
):
    """State-picture channel weights at a numeric p.

    Single-qubit kinds return (lambda_I, lambda_X, lambda_Y, lambda_Z);
    two-qubit depolarization returns a dict over the sixteen class pairs.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be in [0, 1]")
    if kind is NoiseKind.DEPOLARIZING_2Q:
        return _oracle_2q(code, table, p)
    if code.n > _1Q_LIMIT:
        raise ValueError(f"single-qubit oracle supports n <= {_1Q_LIMIT}")
    n = code.n
    v0, v1, p0 = _logical_vectors(code)
    p1 = np.outer(v1, v1.conj())

    e0 = np.array([1.0, 0.0], dtype=complex)
    e1 = np.array([0.0, 1.0], dtype=complex)
    phi = (np.kron(v0, e0) + np.kron(v1, e1)) / np.sqrt(2.0)
    rho = np.outer(phi, phi.conj())

    weights = _noise_weights(kind, p)
    for k in range(n):
        ops = _single_qubit_ops(n, k, extra_dims=2)
        rho = _apply_pauli_channel(rho, (ops["X"], ops["Y"], ops["Z"]), weights)

    basis = {
        "00": np.kron(v0, e0),
        "10": np.kron(v1, e0),
        "01": np.kron(v0, e1),
        "11": np.kron(v1, e1),
    }
    lam = np.zeros(4)
    for rep in table.entries:
        e = pauli_matrix(rep)
        # E P_s = E E (P0+P1) E = (P0+P1) E: project onto the space, then correct
        m = np.kron((p0 + p1) @ e, _I2)
        rho_s = m @ rho @ m.conj().T
        a = 2.0 * np.real(basis["00"].conj() @ rho_s @ basis["00"])
        b = 2.0 * np.real(basis["10"].conj() @ rho_s @ basis["10"])
        c = 2.0 * np.real(basis["00"].conj() @ rho_s @ basis["11"])
        d = 2.0 * np.real(basis["01"].conj() @ rho_s @ basis["10"])
        lam += 0.5 * np.array([a + c, b + d, b - d, a - c])
    return tuple(lam)


def _oracle_2q(code: StabilizerCode, table: SyndromeTable, p: float):
    if code.n > _2Q_LIMIT:
        raise ValueError(f"two-qubit oracle supports n <= {_2Q_LIMIT}")
    n = code.n
    v0, v1, p0 = _logical_vectors(code)
    p1 = np.outer(v1, v1.conj())

    e0 = np.array([1.0, 0.0], dtype=complex)
    e1 = np.array([0.0, 1.0], dtype=complex)
    phi = (np.kron(v0, e0) + np.kron(v1, e1)) / np.sqrt(2.0)
    rho = np.outer(np.kron(phi, phi), np.kron(phi, phi).conj())

    # Transversal pairs: qubit k of block one with qubit k of block two.
    block = 1 << (n + 1)
    lam0 = 1.0 - 15.0 * p / 16.0
    lam = p / 16.0
    for k in range(n):
        ops1 = _single_qubit_ops(n, k, extra_dims=2 * block)
        ops2 = {
            name: np.kron(np.eye(block, dtype=complex), op)
            for name, op in _single_qubit_ops(n, k, extra_dims=2).items()
        }
        out = lam0 * rho
        for a in "IXYZ":
            for b in "IXYZ":
                if a == b == "I":
                    continue
                op = ops1[a] @ ops2[b]
                out += lam * (op @ rho @ op.conj().T)
        rho = out

    bell = {}
    for name in "IXYZ":
        sig = {
            "I": PauliOp.identity(n),
            "X": code.logical_x,
            "Y": code.logical_y,
            "Z": code.logical_z,
        }[name]
        bell[name] = np.kron(pauli_matrix(sig), _I2) @ phi

    out = {}
    corrections = [np.kron((p0 + p1) @ pauli_matrix(r), _I2)
                   for r in table.entries]
    for a in "IXYZ":
        for b in "IXYZ":
            out[(a, b)] = 0.0
    for m1 in corrections:
        for m2 in corrections:
            m = np.kron(m1, m2)
            rho_c = m @ rho @ m.conj().T
            for a in "IXYZ":
                for b in "IXYZ":
                    vec = np.kron(bell[a], bell[b])
                    out[(a, b)] += float(np.real(vec.conj() @ rho_c @ vec))
    return out


@dataclass(frozen=True)
class RepetitionParams:
    """Weights of a single-qubit Pauli channel applied to an n-fold repetition."""

    n: int
    lambda0: float
    lambda1: float
    lambda2: float
    lambda3: float

    def __post_init__(self):
        if self.n % 2 == 0:
            raise ValueError("majority vote needs odd n")
        ws = (self.lambda0, self.lambda1, self.lambda2, self.lambda3)
        if any(w < -1e-12 or w > 1 + 1e-12 for w in ws):
            raise ValueError("channel weights must lie in [0, 1]")
        if abs(sum(ws) - 1.0) > 1e-9:
            raise ValueError("channel weights must sum to 1")


def repetition_closed_form(params: RepetitionParams):
    """Closed-form logical weights of a bit-flip repetition code under
    majority-vote correction of up to floor(n/2) flips."""
    n = params.n
    l0, l1, l2, l3 = params.lambda0, params.lambda1, params.lambda2, params.lambda3
    lam = np.zeros(4)
    for i in range(n // 2 + 1):
        a = (l0 + l3) ** (n - i) * (l1 + l2) ** i
        b = (l0 + l3) ** i * (l1 + l2) ** (n - i)
        c = (l0 - l3) ** (n - i) * (l1 - l2) ** i
        d = (l0 - l3) ** i * (l1 - l2) ** (n - i)
        lam += 0.5 * comb(n, i) * np.array([a + c, b + d, b - d, a - c])
    return tuple(lam)
