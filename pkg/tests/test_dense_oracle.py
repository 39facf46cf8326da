"""
Tests for the dense reference implementation and its agreement with the fast paths.
"""
import numpy as np
import pytest

from code_catalog import catalog_code
from coding_maps import effective_channel_general
from dense_oracle import (
    KrausSet,
    amplitude_damping_kraus,
    codespace_projector,
    codewords,
    decoder_completeness,
    dense_decoding_operators,
    dense_effective_channel,
    dense_encoding_operators,
    encoder,
    expansion_matrix,
    kraus_from_diagonal,
    kraus_from_transfer_matrix,
    kraus_to_transfer_matrix,
    max_deviation,
    syndrome_projectors,
)
from qec_errors import CPViolationError, DomainError, OracleSizeError
from qubit_channels import DiagonalChannel, amplitude_damping, symmetric_pauli
from stabilizer_codes import decoding_expansion, encoding_expansion

SMALL_CODES = ["bitflip", "phaseflip", "phaseflip_prime", "five_bit"]
AGREEMENT = 1e-10
ORACLE_TRIALS = 25


class TestKraus:

    def test_noiseless(self):
        k = kraus_from_diagonal(DiagonalChannel(1.0, 1.0, 1.0))
        assert len(k) == 1
        np.testing.assert_allclose(k.operators[0], np.eye(2))

    def test_symmetric_pauli(self):
        k = kraus_from_diagonal(symmetric_pauli(0.3))
        assert len(k) == 4
        np.testing.assert_allclose(kraus_to_transfer_matrix(k).m, np.diag([1, 0.6, 0.6, 0.6]), atol=1e-12)

    def test_unphysical_diagonal(self):
        with pytest.raises(CPViolationError):
            kraus_from_diagonal(DiagonalChannel(1.0, 1.0, -1.0))

    def test_non_finite_diagonal(self):
        with pytest.raises(DomainError):
            kraus_from_diagonal(DiagonalChannel(float("nan"), 1.0, 1.0))

    def test_amplitude_damping(self):
        np.testing.assert_allclose(
            kraus_to_transfer_matrix(amplitude_damping_kraus(0.3)).m, amplitude_damping(0.3).m, atol=1e-12
        )
        with pytest.raises(DomainError):
            amplitude_damping_kraus(-0.1)

    @pytest.mark.parametrize("channel", [
        amplitude_damping(0.3),
        amplitude_damping(1.0),
        DiagonalChannel(0.5, 0.2, -0.1),
        DiagonalChannel(1.0, -1.0, -1.0),
    ])
    def test_from_transfer_matrix(self, channel):
        m = channel.to_transfer_matrix().m if isinstance(channel, DiagonalChannel) else channel.m
        k = kraus_from_transfer_matrix(channel)
        np.testing.assert_allclose(kraus_to_transfer_matrix(k).m, m, atol=1e-10)

    def test_not_completely_positive(self):
        with pytest.raises(CPViolationError):
            kraus_from_transfer_matrix(DiagonalChannel(1.0, 1.0, -1.0))

    def test_incomplete_set(self):
        with pytest.raises(DomainError):
            KrausSet((0.5 * np.eye(2),))


class TestCodewords:

    def test_bitflip(self, bitflip):
        ket0, ket1 = codewords(bitflip)
        assert ket0[0] == pytest.approx(1.0)
        assert ket1[7] == pytest.approx(1.0)
        assert np.linalg.norm(ket0) == pytest.approx(1.0)

    @pytest.mark.parametrize("name", SMALL_CODES)
    def test_encoder_is_isometry_onto_codespace(self, name):
        code = catalog_code(name)
        b = encoder(code)
        np.testing.assert_allclose(b.conj().T @ b, np.eye(2), atol=1e-12)
        np.testing.assert_allclose(b @ b.conj().T, codespace_projector(code), atol=1e-12)

    @pytest.mark.parametrize("name", SMALL_CODES)
    def test_syndrome_projectors_resolve_identity(self, name):
        code = catalog_code(name)
        total = sum(syndrome_projectors(code))
        np.testing.assert_allclose(total, np.eye(1 << code.n), atol=1e-12)

    @pytest.mark.parametrize("name", SMALL_CODES)
    def test_decoder_is_complete(self, name):
        code = catalog_code(name)
        np.testing.assert_allclose(decoder_completeness(code), np.eye(1 << code.n), atol=1e-12)


class TestExpansionsMatchDenseOperators:

    @pytest.mark.parametrize("name", SMALL_CODES)
    def test_encoding(self, name):
        code = catalog_code(name)
        dense = dense_encoding_operators(code)
        for axis, exp in encoding_expansion(code).items():
            np.testing.assert_allclose(expansion_matrix(exp), dense[axis], atol=1e-12)

    @pytest.mark.parametrize("name", SMALL_CODES)
    def test_decoding(self, name):
        code = catalog_code(name)
        dense = dense_decoding_operators(code)
        for axis, exp in decoding_expansion(code).items():
            np.testing.assert_allclose(expansion_matrix(exp), dense[axis], atol=1e-12)


class TestOracleAgreement:

    @pytest.mark.parametrize("name", SMALL_CODES)
    def test_random_diagonal_channels(self, name, random_channel):
        code = catalog_code(name)
        for _ in range(ORACLE_TRIALS):
            c = random_channel()
            dense = dense_effective_channel(code, kraus_from_diagonal(c))
            fast = effective_channel_general(code, c).channel
            assert max_deviation(dense, fast) < AGREEMENT

    @pytest.mark.parametrize("name", SMALL_CODES)
    def test_amplitude_damping(self, name):
        code = catalog_code(name)
        dense = dense_effective_channel(code, amplitude_damping_kraus(0.2))
        fast = effective_channel_general(code, amplitude_damping(0.2)).channel
        assert max_deviation(dense, fast) < AGREEMENT

    def test_per_site_channels(self, bitflip, random_channel):
        channels = [random_channel() for _ in range(3)]
        dense = dense_effective_channel(bitflip, [kraus_from_diagonal(c) for c in channels])
        fast = effective_channel_general(bitflip, channels).channel
        assert max_deviation(dense, fast) < AGREEMENT

    def test_effective_channel_is_completely_positive(self, five_bit):
        g = effective_channel_general(five_bit, amplitude_damping(0.35)).channel
        k = kraus_from_transfer_matrix(g)
        np.testing.assert_allclose(kraus_to_transfer_matrix(k).m, g.m, atol=1e-10)

    def test_size_limit(self, steane):
        with pytest.raises(OracleSizeError):
            dense_effective_channel(steane, kraus_from_diagonal(symmetric_pauli(0.1)))


class TestSmallExamples:

    def test_kraus_for_pure_bit_flip_mix(self):
        k = kraus_from_diagonal(DiagonalChannel(1.0, 0.0, 0.0))
        assert len(k) == 2
        np.testing.assert_allclose(k.operators[0], np.sqrt(0.5) * np.eye(2), atol=1e-12)
        np.testing.assert_allclose(k.operators[1], np.sqrt(0.5) * np.array([[0, 1], [1, 0]]), atol=1e-12)

    def test_bitflip_oracle_value(self, bitflip):
        g = dense_effective_channel(bitflip, kraus_from_diagonal(DiagonalChannel(0.9, 0.9, 0.9)))
        np.testing.assert_allclose(np.diag(g.m), [1.0, 0.729, 0.729, 0.9855], atol=1e-12)

    def test_noiseless_kraus(self, bitflip):
        g = dense_effective_channel(bitflip, KrausSet((np.eye(2),)))
        np.testing.assert_allclose(g.m, np.eye(4), atol=1e-12)

    def test_five_bit_depolarizing(self, five_bit):
        g = dense_effective_channel(five_bit, kraus_from_diagonal(symmetric_pauli(0.1)))
        assert g.m[1, 1] == pytest.approx(g.m[2, 2], abs=1e-12)
        assert g.m[2, 2] == pytest.approx(g.m[3, 3], abs=1e-12)

    @pytest.mark.parametrize("name", SMALL_CODES)
    def test_identity_encoding_is_half_projector(self, name):
        code = catalog_code(name)
        np.testing.assert_allclose(dense_encoding_operators(code)["I"], codespace_projector(code) / 2, atol=1e-12)
