"""
Tests for signed Pauli operators in symplectic form.
"""
import numpy as np
import pytest

from dense_oracle import pauli_matrix
from pauli_algebra import (
    PHASES,
    PauliString,
    SignedPauli,
    eta,
    format_pauli,
    parse_pauli,
    pauli_mul,
    paulis_of_weight,
    product_exponent,
    signed_product,
    weights,
)
from qec_errors import DimensionError, PauliParseError


def P(text):
    return parse_pauli(text)


def random_pauli(rng, n):
    return SignedPauli(int(rng.integers(2)), PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n))))


class TestPauliString:

    def test_letters_and_masks(self):
        p = PauliString.from_letters("XZYI")
        assert p.x_mask == 0b0101
        assert p.z_mask == 0b0110
        assert p.letters() == "XZYI"
        assert p.weight == 3
        assert p.y_count == 1

    def test_masks_must_fit(self):
        with pytest.raises(ValueError):
            PauliString(2, 0b100, 0)

    def test_letter_indices(self):
        assert PauliString.from_letters("IXYZ").letter_indices() == (0, 1, 2, 3)

    def test_single(self):
        assert PauliString.single(3, 1, "Y").letters() == "IYI"


class TestProduct:

    def test_x_times_z(self):
        phase, body = pauli_mul(P("X"), P("Z"))
        assert phase == -1j
        assert body.letters() == "Y"

    def test_zzi_times_xxx(self):
        phase, body = pauli_mul(P("ZZI"), P("XXX"))
        assert phase == -1
        assert body.letters() == "YYX"

    def test_identity_times_signed(self):
        phase, body = pauli_mul(P("III"), P("-YYY"))
        assert phase == -1
        assert body.letters() == "YYY"

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            pauli_mul(P("XX"), P("XXX"))

    def test_signed_product_rejects_imaginary_phase(self):
        with pytest.raises(ValueError):
            signed_product(P("X"), P("Z"))

    def test_signed_product_with_extra_i(self):
        # i * XXX * ZZZ is the bitflip logical Y
        assert signed_product(P("XXX"), P("ZZZ"), extra_i_power=1) == P("-YYY")

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_dense_product(self, rng, n):
        for _ in range(50):
            a, b = random_pauli(rng, n), random_pauli(rng, n)
            phase, body = pauli_mul(a, b)
            np.testing.assert_allclose(pauli_matrix(a) @ pauli_matrix(b), phase * pauli_matrix(body), atol=1e-12)

    def test_associative(self, rng):
        for _ in range(200):
            a, b, c = (random_pauli(rng, 3) for _ in range(3))
            k_ab, ab = product_exponent(a, b)
            k_left, left = product_exponent(ab, c)
            k_bc, bc = product_exponent(b, c)
            k_right, right = product_exponent(a, bc)
            assert left == right
            assert (k_ab + k_left) % 4 == (k_bc + k_right) % 4

    def test_commuting_hermitian_product_is_real(self, rng):
        for _ in range(200):
            a, b = random_pauli(rng, 4), random_pauli(rng, 4)
            phase, _ = pauli_mul(a, b)
            if eta(a, b) == 1:
                assert phase in (1, -1)
            else:
                assert phase in (1j, -1j)

    def test_weight_subadditive(self, rng):
        for _ in range(200):
            a, b = random_pauli(rng, 5), random_pauli(rng, 5)
            _, body = pauli_mul(a, b)
            assert sum(weights(body)) <= a.body.weight + b.body.weight

    def test_phase_table(self):
        assert PHASES == (1, 1j, -1, -1j)


class TestEta:

    @pytest.mark.parametrize("a,b,expected", [
        ("X", "Z", -1),
        ("XXX", "ZZI", 1),
        ("XYZ", "III", 1),
        ("Y", "Y", 1),
        ("XZ", "ZI", -1),
    ])
    def test_examples(self, a, b, expected):
        assert eta(P(a), P(b)) == expected

    def test_symmetric_and_multiplicative(self, rng):
        for _ in range(200):
            a, b, c = (random_pauli(rng, 4) for _ in range(3))
            assert eta(a, b) == eta(b, a)
            _, bc = pauli_mul(b, c)
            assert eta(a, bc) == eta(a, b) * eta(a, c)

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            eta(P("X"), P("XX"))


class TestWeights:

    @pytest.mark.parametrize("text,expected", [
        ("XYX", (2, 1, 0)),
        ("III", (0, 0, 0)),
        ("ZIZ", (0, 0, 2)),
        ("-YZX", (1, 1, 1)),
    ])
    def test_examples(self, text, expected):
        assert weights(P(text)) == expected

    def test_enumeration_counts(self):
        assert len(list(paulis_of_weight(5, 0))) == 1
        assert len(list(paulis_of_weight(5, 1))) == 15
        assert len(list(paulis_of_weight(5, 2))) == 90
        assert all(p.weight == 2 for p in paulis_of_weight(4, 2))


class TestParse:

    def test_signed(self):
        p = P("-YYY")
        assert p.sign_bit == 1
        assert p.body.letters() == "YYY"

    def test_unsigned_means_plus(self):
        p = P("ZZI")
        assert p.sign_bit == 0
        assert p.body.letters() == "ZZI"

    def test_error_position(self):
        with pytest.raises(PauliParseError) as err:
            P("XZQ")
        assert err.value.position == 2

    def test_error_position_after_sign(self):
        with pytest.raises(PauliParseError) as err:
            P("-XQ")
        assert err.value.position == 2

    @pytest.mark.parametrize("text", ["", "+", "-"])
    def test_empty_body(self, text):
        with pytest.raises(PauliParseError):
            P(text)

    def test_formatter_inverts_parser(self, rng):
        for _ in range(50):
            p = random_pauli(rng, 4)
            assert parse_pauli(format_pauli(p)) == p
        assert format_pauli(P("ZZI")) == "+ZZI"
