"""State-picture oracle vs the enumeration engine, plus closed forms."""
import numpy as np
import pytest

from logical_noise.channels import NoiseKind
from logical_noise.codes import get_code
from logical_noise.decoder import Strategy
from logical_noise.oracle import (
    RepetitionParams,
    check_projector_algebra,
    oracle_channel_numeric,
    pauli_matrix,
    repetition_closed_form,
)
from logical_noise.pauli import PauliOp

SMALL_CODES = ["bit3", "phase3", "five", "steane"]
KINDS = [NoiseKind.DEPHASING_1Q, NoiseKind.DEPOLARIZING_1Q]
PS = [0.01, 0.05, 0.1]


class TestPauliMatrix:
    def test_single_qubit(self):
        assert np.allclose(pauli_matrix(PauliOp.from_string("Y")),
                           [[0, -1j], [1j, 0]])

    def test_qubit_one_is_leftmost_factor(self):
        m = pauli_matrix(PauliOp.from_string("XI"))
        assert np.allclose(m, np.kron([[0, 1], [1, 0]], np.eye(2)))


class TestProjectorAlgebra:
    @pytest.mark.parametrize("name", SMALL_CODES)
    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_orthogonal_resolution_of_identity(self, name, strategy, channels):
        table_for, _, _ = channels
        dev = check_projector_algebra(get_code(name), table_for(name, strategy))
        assert dev <= 1e-10


class TestOracleEquivalence:
    @pytest.mark.parametrize("name", SMALL_CODES)
    @pytest.mark.parametrize("strategy", list(Strategy))
    @pytest.mark.parametrize("kind", KINDS)
    def test_matches_engine(self, name, strategy, kind, channels):
        table_for, channel_1q, _ = channels
        code = get_code(name)
        table = table_for(name, strategy)
        ch = channel_1q(name, strategy, kind)
        for p in PS:
            ora = oracle_channel_numeric(code, table, kind, p)
            eng = (ch.lambda_i(p), ch.lambda_x(p), ch.lambda_y(p), ch.lambda_z(p))
            assert max(abs(a - b) for a, b in zip(ora, eng)) <= 1e-10

    def test_noiseless_is_identity_channel(self, channels):
        table_for, _, _ = channels
        code = get_code("five")
        out = oracle_channel_numeric(
            code, table_for("five", Strategy.MIN_WEIGHT_PAULI),
            NoiseKind.DEPOLARIZING_1Q, 0.0,
        )
        assert out[0] == pytest.approx(1.0, abs=1e-12)
        assert max(out[1:]) <= 1e-12

    def test_rejects_large_code(self, channels):
        table_for, _, _ = channels
        with pytest.raises(ValueError, match="n <= 7"):
            oracle_channel_numeric(
                get_code("shor9"),
                table_for("shor9", Strategy.MIN_WEIGHT_PAULI),
                NoiseKind.DEPHASING_1Q, 0.05,
            )

    def test_rejects_unphysical_p(self, channels):
        table_for, _, _ = channels
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            oracle_channel_numeric(
                get_code("bit3"),
                table_for("bit3", Strategy.MIN_WEIGHT_PAULI),
                NoiseKind.DEPHASING_1Q, 1.5,
            )

    def test_two_qubit_oracle_bit3(self, channels):
        table_for, _, channel_2q = channels
        code = get_code("bit3")
        table = table_for("bit3", Strategy.MIN_WEIGHT_PAULI)
        ch2 = channel_2q("bit3")
        for p in (0.05, 0.1):
            ora = oracle_channel_numeric(code, table, NoiseKind.DEPOLARIZING_2Q, p)
            for key, val in ora.items():
                assert val == pytest.approx(ch2[key](p), abs=1e-10)


class TestRepetitionClosedForm:
    def test_noiseless(self):
        lam = repetition_closed_form(RepetitionParams(3, 1.0, 0.0, 0.0, 0.0))
        assert lam == pytest.approx((1.0, 0.0, 0.0, 0.0))

    def test_even_n_rejected(self):
        with pytest.raises(ValueError, match="odd"):
            RepetitionParams(4, 1.0, 0.0, 0.0, 0.0)

    def test_bad_weights_rejected(self):
        with pytest.raises(ValueError, match="sum to 1"):
            RepetitionParams(3, 0.9, 0.3, 0.0, 0.0)

    def test_matches_bit3_engine_depolarizing(self, channels):
        _, channel_1q, _ = channels
        ch = channel_1q("bit3", Strategy.MIN_WEIGHT_PAULI, NoiseKind.DEPOLARIZING_1Q)
        for p in PS:
            lam = repetition_closed_form(
                RepetitionParams(3, 1 - 0.75 * p, p / 4, p / 4, p / 4)
            )
            eng = (ch.lambda_i(p), ch.lambda_x(p), ch.lambda_y(p), ch.lambda_z(p))
            assert max(abs(a - b) for a, b in zip(lam, eng)) <= 1e-12

    def test_matches_bit3_engine_dephasing(self, channels):
        _, channel_1q, _ = channels
        ch = channel_1q("bit3", Strategy.MIN_WEIGHT_PAULI, NoiseKind.DEPHASING_1Q)
        for p in PS:
            lam = repetition_closed_form(RepetitionParams(3, 1 - p, 0.0, 0.0, p))
            eng = (ch.lambda_i(p), ch.lambda_x(p), ch.lambda_y(p), ch.lambda_z(p))
            assert max(abs(a - b) for a, b in zip(lam, eng)) <= 1e-12

    def test_bit_flip_only_majority_vote_tail(self):
        from math import comb

        p = 0.2
        lam = repetition_closed_form(RepetitionParams(5, 1 - p, p, 0.0, 0.0))
        tail = sum(comb(5, i) * p**i * (1 - p) ** (5 - i) for i in range(3, 6))
        assert lam[1] == pytest.approx(tail, abs=1e-14)
        assert lam[2] == pytest.approx(0.0, abs=1e-14)
        assert lam[3] == pytest.approx(0.0, abs=1e-14)
