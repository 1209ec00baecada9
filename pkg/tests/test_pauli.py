import pytest
from hypothesis import given
from hypothesis import strategies as st

from logical_noise.pauli import (
    CheckMatrix,
    GroupSet,
    PauliOp,
    commutes,
    enumerate_group,
    mul,
    rank_gf2,
    support_mask,
    syndrome,
    syndrome_bits,
    weight,
)


def op(s):
    return PauliOp.from_string(s)


def pauli_ops(n=5):
    masks = st.integers(min_value=0, max_value=(1 << n) - 1)
    return st.builds(lambda x, z: PauliOp(n, x, z), masks, masks)


class TestBasics:
    def test_string_round_trip(self):
        for s in ("XZZXI", "IIIII", "YYYYY", "IXYZI"):
            assert op(s).to_string() == s

    def test_leftmost_letter_is_qubit_one(self):
        a = op("XII")
        assert a.x_bits == 1 and a.z_bits == 0

    def test_rejects_bad_letter(self):
        with pytest.raises(ValueError, match="invalid Pauli letter"):
            op("XQZ")

    def test_rejects_bad_sizes(self):
        with pytest.raises(ValueError):
            PauliOp(0, 0, 0)
        with pytest.raises(ValueError):
            PauliOp(33, 0, 0)
        with pytest.raises(ValueError):
            PauliOp(2, 0b100, 0)

    def test_size_mismatch_errors(self):
        with pytest.raises(ValueError, match="size mismatch"):
            commutes(op("XI"), op("XII"))
        with pytest.raises(ValueError, match="size mismatch"):
            mul(op("XI"), op("XII"))


class TestCommutes:
    def test_x_anticommutes_z(self):
        assert commutes(op("X"), op("Z")) == 1

    def test_five_qubit_generators_commute(self):
        assert commutes(op("XZZXI"), op("IXZZX")) == 0

    @given(pauli_ops())
    def test_self_commutes(self, a):
        assert commutes(a, a) == 0

    @given(pauli_ops(), pauli_ops())
    def test_symmetric(self, a, b):
        assert commutes(a, b) == commutes(b, a)


class TestMul:
    def test_self_inverse(self):
        assert mul(op("X"), op("X")).is_identity()

    def test_x_times_z_is_y(self):
        assert mul(op("X"), op("Z")) == op("Y")

    def test_bit_flip_stabilizer_product(self):
        assert mul(op("ZZI"), op("IZZ")) == op("ZIZ")

    @given(pauli_ops(), pauli_ops(), pauli_ops())
    def test_associative(self, a, b, c):
        assert mul(mul(a, b), c) == mul(a, mul(b, c))

    @given(pauli_ops(), pauli_ops())
    def test_commutative_at_mask_level(self, a, b):
        assert mul(a, b) == mul(b, a)

    @given(pauli_ops())
    def test_identity_neutral(self, a):
        e = PauliOp.identity(a.n)
        assert mul(a, e) == a
        assert mul(a, a) == e


class TestWeight:
    def test_examples(self):
        assert weight(op("YIXZ")) == 3
        assert weight(op("IIII")) == 0
        assert weight(op("ZZZZZ")) == 5
        assert support_mask(op("ZZZZZ")) == 0b11111

    def test_support_is_union(self):
        assert support_mask(op("XYZI")) == 0b0111


class TestSyndrome:
    def make_bitflip_check(self):
        return CheckMatrix(3, (op("ZZI"), op("IZZ")))

    def test_z_error_invisible_to_z_stabilizers(self):
        assert syndrome_bits(self.make_bitflip_check(), op("ZII")) == (0, 0)

    def test_x1_on_bitflip_code(self):
        assert syndrome_bits(self.make_bitflip_check(), op("XII")) == (1, 0)

    def test_x1_on_five_qubit_code(self):
        rows = tuple(op(s) for s in ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"))
        check = CheckMatrix(5, rows)
        assert syndrome_bits(check, op("XIIII")) == (0, 0, 0, 1)

    def test_packing_matches_bits(self):
        check = self.make_bitflip_check()
        assert syndrome(check, op("XII")) == 0b01

    @given(pauli_ops())
    def test_stabilizer_products_are_invisible(self, e):
        rows = tuple(op(s) for s in ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"))
        check = CheckMatrix(5, rows)
        group = GroupSet(rows)
        base = syndrome(check, e)
        for s in group:
            assert syndrome(check, mul(e, s)) == base


class TestCheckMatrix:
    def test_rejects_anticommuting_rows(self):
        with pytest.raises(ValueError, match="anticommute"):
            CheckMatrix(1, (op("X"), op("Z")))

    def test_rejects_dependent_rows(self):
        with pytest.raises(ValueError, match="dependent"):
            CheckMatrix(3, (op("ZZI"), op("IZZ"), op("ZIZ")))

    def test_rank(self):
        assert rank_gf2([op("ZZI"), op("IZZ"), op("ZIZ")], 3) == 2


class TestGroupSet:
    def test_bitflip_group(self):
        g = enumerate_group([op("ZZI"), op("IZZ")])
        assert len(g) == 4
        assert set(e.to_string() for e in g) == {"III", "ZZI", "IZZ", "ZIZ"}

    def test_sizes(self):
        five = [op(s) for s in ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")]
        assert len(enumerate_group(five)) == 16

    def test_rejects_bad_generators(self):
        with pytest.raises(ValueError):
            enumerate_group([op("X"), op("Z")])
        with pytest.raises(ValueError):
            enumerate_group([op("ZZI"), op("IZZ"), op("ZIZ")])

    @given(st.integers(0, 15), st.integers(0, 15))
    def test_closure(self, i, j):
        gens = [op(s) for s in ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")]
        elems = list(enumerate_group(gens))
        assert mul(elems[i], elems[j]) in enumerate_group(gens)
