"""Shared builders for seqspec tests."""

import numpy as np
import pytest


def random_unitary(rng: np.random.Generator, size: int) -> np.ndarray:
    """Haar-like unitary from the QR factorization of a complex Gaussian matrix."""
    z = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_hermitian(rng: np.random.Generator, size: int) -> np.ndarray:
    z = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    return 0.5 * (z + z.conj().T)


def random_low_rank(rng: np.random.Generator, size: int, rank: int) -> np.ndarray:
    """size x size block of exact rank ``rank`` with singular values in [0.5, 1.5]."""
    u = random_unitary(rng, size)[:, :rank]
    v = random_unitary(rng, size)[:, :rank]
    sigma = rng.uniform(0.5, 1.5, rank)
    return (u * sigma) @ v.conj().T


def decay_sequence(factor: float = 1.0, power: float = 1.0):
    """(factor / n^power) I_n, a zero sequence."""
    from src.sequences import DimensionFunction, MatrixSequence

    return MatrixSequence(
        dims=DimensionFunction.linear(),
        generator=lambda n: (factor / n**power) * np.eye(n, dtype=np.complex128),
        selfadjoint_hint=True,
        label="decay",
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def tridiagonal():
    """Finite sections of T(t + 1/t): eigenvalues 2cos(k pi / (n + 1))."""
    from src.toeplitz import Symbol, section_sequence

    return section_sequence(Symbol.from_coeffs({-1: 1.0, 1: 1.0}))


@pytest.fixture
def alternating():
    """I_n at odd n, 0_n at even n."""
    from src.sequences import alternate, identity_sequence, zero_sequence

    return alternate(identity_sequence(), zero_sequence())


@pytest.fixture(autouse=True)
def fresh_caches():
    """Settings and evaluation caches never leak between tests."""
    from src.config import get_settings
    from src.config.loader import get_config
    from src.sequences import clear_cache

    yield
    get_settings.cache_clear()
    get_config.cache_clear()
    clear_cache()


@pytest.fixture
def write_config(tmp_path):
    """Write a YAML configuration into tmp_path and return its path."""
    import yaml

    def write(data: dict, name: str = "config.yaml"):
        path = tmp_path / name
        path.write_text(yaml.safe_dump(data), encoding="utf-8")
        return path

    return write
