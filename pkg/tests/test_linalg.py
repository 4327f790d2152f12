import numpy as np
import pytest

from qmur import linalg
from qmur.errors import DimensionError, PositivityError, ShapeError


def rng_for(trial):
    return np.random.Generator(np.random.Philox(key=1000 + trial))


def random_hermitian(d, rng):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (g + g.conj().T) / 2


def test_eig_hermitian_descending_and_reconstructs():
    for trial in range(20):
        rng = rng_for(trial)
        m = random_hermitian(5, rng)
        w, v = linalg.eig_hermitian(m)
        assert np.all(np.diff(w) <= 1e-12)
        assert np.allclose((v * w) @ v.conj().T, m, atol=1e-10)
        assert np.allclose(v.conj().T @ v, np.eye(5), atol=1e-10)


def test_eig_hermitian_rejects_bad_inputs():
    with pytest.raises(DimensionError):
        linalg.eig_hermitian(np.ones((2, 3)))
    with pytest.raises(ShapeError):
        linalg.eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ShapeError):
        linalg.eig_hermitian(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_psd_eigenvalues_clamps_roundoff_only():
    w, _ = linalg.psd_eigenvalues(np.diag([1.0, -5e-11]))
    assert w[1] == 0.0
    with pytest.raises(PositivityError):
        linalg.psd_eigenvalues(np.diag([1.0, -1e-6]))


def test_sqrtm_and_pseudo_inverse():
    m = np.diag([4.0, 1.0, 0.0])
    assert np.allclose(linalg.sqrtm_psd(m), np.diag([2.0, 1.0, 0.0]))
    # inverse square root uses the pseudo-inverse on the kernel
    assert np.allclose(linalg.inv_sqrtm_psd(m), np.diag([0.5, 1.0, 0.0]))


def test_partial_trace_product_state():
    rng = rng_for(0)
    a = random_hermitian(2, rng)
    b = random_hermitian(3, rng)
    ab = linalg.tensor(a, b)
    assert np.allclose(
        linalg.partial_trace(ab, (2, 3), keep=[0]), a * np.trace(b)
    )
    assert np.allclose(
        linalg.partial_trace(ab, (2, 3), keep=[1]), b * np.trace(a)
    )
    # tracing everything leaves the scalar trace
    full = linalg.partial_trace(ab, (2, 3), keep=[])
    assert np.allclose(full, np.trace(a) * np.trace(b))


def test_partial_trace_preserves_trace():
    rng = rng_for(1)
    m = random_hermitian(12, rng)
    for keep in ([0], [1], [2], [0, 2], [1, 2]):
        sub = linalg.partial_trace(m, (2, 3, 2), keep=keep)
        assert np.isclose(np.trace(sub), np.trace(m))


def test_permute_subsystems_roundtrip():
    rng = rng_for(2)
    m = random_hermitian(12, rng)
    dims = (2, 3, 2)
    perm = [2, 0, 1]
    out = linalg.permute_subsystems(m, dims, perm)
    inverse = [perm.index(j) for j in range(3)]
    back = linalg.permute_subsystems(out, tuple(dims[p] for p in perm), inverse)
    assert np.allclose(back, m)


def test_permute_matches_kron_swap():
    rng = rng_for(3)
    a = random_hermitian(2, rng)
    b = random_hermitian(3, rng)
    swapped = linalg.permute_subsystems(np.kron(a, b), (2, 3), [1, 0])
    assert np.allclose(swapped, np.kron(b, a))


def test_embed_operator_middle_factor():
    rng = rng_for(4)
    op = random_hermitian(3, rng)
    emb = linalg.embed_operator(op, (2, 3, 2), acting=[1])
    expect = np.kron(np.kron(np.eye(2), op), np.eye(2))
    assert np.allclose(emb, expect)


def test_embed_operator_two_factors():
    rng = rng_for(5)
    op = random_hermitian(4, rng)  # acts on subsystems 0 and 2 jointly
    emb = linalg.embed_operator(op, (2, 3, 2), acting=[0, 2])
    # contract with a product state and compare against manual reordering
    vecs = [rng.standard_normal(d) + 1j * rng.standard_normal(d) for d in (2, 3, 2)]
    full = np.kron(np.kron(vecs[0], vecs[1]), vecs[2])
    reordered = np.kron(np.kron(vecs[0], vecs[2]), vecs[1])
    lhs = full.conj() @ emb @ full
    rhs = reordered.conj() @ np.kron(op, np.eye(3)) @ reordered
    assert np.isclose(lhs, rhs)


def test_embed_rejects_bad_subsystems():
    with pytest.raises(DimensionError):
        linalg.embed_operator(np.eye(2), (2, 2), acting=[3])


def test_trace_norm():
    assert np.isclose(linalg.trace_norm(np.diag([1.0, -1.0])), 2.0)
    rng = rng_for(6)
    m = random_hermitian(4, rng)
    assert np.isclose(linalg.trace_norm(m), np.abs(np.linalg.eigvalsh(m)).sum())
