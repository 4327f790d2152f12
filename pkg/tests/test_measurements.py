import numpy as np
import pytest

from qmur.errors import DimensionError, FileFormatError, UnsupportedScaleError
from qmur.measurements import (
    MeasurementBasis,
    MeasurementChannel,
    apply,
    basis_from_dict,
    basis_to_dict,
    computational_basis,
    fourier_basis,
    generalized_pauli,
    load_basis,
    overlap_c,
    random_basis,
    save_basis,
    tensor_power_basis,
    twirl,
)
from qmur.states import max_entangled, random_state


def rng_for(trial):
    return np.random.Generator(np.random.Philox(key=2000 + trial))


def test_basis_rejects_non_orthonormal():
    with pytest.raises(DimensionError):
        MeasurementBasis(np.array([[1.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(DimensionError):
        MeasurementBasis(np.ones((2, 3)))


def test_fourier_is_mutually_unbiased_with_computational():
    for d in (2, 3, 5):
        ov = overlap_c(computational_basis(d), fourier_basis(d))
        assert np.isclose(ov.c, 1.0 / d, atol=1e-12)
        assert np.isclose(ov.log2_inv_c, np.log2(d), atol=1e-12)


def test_overlap_same_basis_is_one():
    b = random_basis(3, rng_for(0))
    ov = overlap_c(b, b)
    assert ov.c == 1.0
    assert ov.log2_inv_c == 0.0


def test_overlap_dimension_mismatch():
    with pytest.raises(DimensionError):
        overlap_c(computational_basis(2), computational_basis(3))


def test_random_basis_orthonormality():
    for trial in range(25):
        b = random_basis(4, rng_for(trial))
        gram = b.vectors.conj().T @ b.vectors
        assert np.max(np.abs(gram - np.eye(4))) < 1e-10


def test_projectors_resolve_identity():
    b = random_basis(3, rng_for(1))
    total = sum(b.projector(j) for j in range(3))
    assert np.allclose(total, np.eye(3), atol=1e-12)


def test_pinching_is_trace_preserving_and_idempotent():
    rho = random_state((2, 3), 3, 0)
    ch = MeasurementChannel(random_basis(2, rng_for(2)), 0)
    once = apply(ch, rho)
    assert np.isclose(once.trace(), 1.0)
    twice = apply(ch, once)
    assert np.allclose(twice.matrix, once.matrix, atol=1e-12)


def test_pinched_state_is_block_diagonal():
    rho = random_state((2, 2), 4, 1)
    basis = random_basis(2, rng_for(3))
    out = apply(MeasurementChannel(basis, 0), rho)
    # off-diagonal blocks in basis (x) identity vanish
    w = np.kron(basis.vectors, np.eye(2))
    rot = w.conj().T @ out.matrix @ w
    assert np.max(np.abs(rot[:2, 2:])) < 1e-12
    assert np.max(np.abs(rot[2:, :2])) < 1e-12


def test_generalized_pauli_unitary_and_cyclic():
    for d in (2, 3, 4):
        b = random_basis(d, rng_for(10 + d))
        dd = generalized_pauli(b)
        assert np.allclose(dd @ dd.conj().T, np.eye(d), atol=1e-10)
        power = np.eye(d, dtype=complex)
        for _ in range(d):
            power = power @ dd
        assert np.allclose(power, np.eye(d), atol=1e-9)


def test_twirl_realizes_the_pinching():
    for trial in range(10):
        rho = random_state((3, 2), 6, trial)
        basis = random_basis(3, rng_for(20 + trial))
        direct = apply(MeasurementChannel(basis, 0), rho)
        averaged = twirl(basis, rho, 0)
        assert np.max(np.abs(direct.matrix - averaged.matrix)) < 1e-10


def test_pinching_on_second_subsystem():
    rho = random_state((2, 3), 8, 0)
    basis = random_basis(3, rng_for(30))
    out = apply(MeasurementChannel(basis, 1), rho)
    assert np.isclose(out.trace(), 1.0)
    # the untouched marginal is unchanged
    assert np.allclose(out.reduce([0]).matrix, rho.reduce([0]).matrix, atol=1e-12)


def test_mes_pinched_outcomes_are_uniform_and_correlated():
    mes = max_entangled(2)
    out = apply(MeasurementChannel(computational_basis(2), 0), mes)
    diag = np.real(np.diag(out.matrix))
    assert np.allclose(diag, [0.5, 0, 0, 0.5], atol=1e-12)


def test_tensor_power_basis():
    b = fourier_basis(2)
    b2 = tensor_power_basis(b, 2)
    assert b2.dim == 4
    assert np.allclose(b2.vectors, np.kron(b.vectors, b.vectors))
    with pytest.raises(UnsupportedScaleError):
        tensor_power_basis(computational_basis(5), 3)


def test_basis_file_roundtrip(tmp_path):
    b = random_basis(3, rng_for(40), label="probe")
    path = tmp_path / "basis.json"
    save_basis(str(path), b)
    back = load_basis(str(path))
    assert back.label == "probe"
    assert back.vectors.tobytes() == b.vectors.tobytes()


def test_basis_file_rejects_malformed():
    with pytest.raises(FileFormatError):
        basis_from_dict({"dimension": 2, "vectors": []})
    obj = basis_to_dict(computational_basis(2))
    obj["vectors"][0][0] = ["0.5", "0.0"]  # breaks orthonormality
    with pytest.raises(FileFormatError):
        basis_from_dict(obj)
