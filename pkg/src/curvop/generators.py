"""Example curvature tensors.

Random tensors are drawn from numpy's PCG64 bit generator seeded through
SeedSequence, so a seed (an int or a tuple of ints) fixes the tensor.
"""
from __future__ import annotations

import numpy as np

from .curvature import CurvatureTensor
from .errors import InputError

HERMITIAN = "hermitian"
GRAM_PSD = "gram_psd"
MODES = (HERMITIAN, GRAM_PSD)


def rng_for(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def fubini_study_tensor(n: int) -> CurvatureTensor:
    """Tangent bundle of P^n with the Fubini-Study metric at the center of normal coordinates.

    c_{jk lam mu} = delta_jk delta_lam,mu + delta_j,mu delta_k,lam  (r = n).
    """
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    I = np.eye(n)
    c = np.einsum("jk,lm->jklm", I, I) + np.einsum("jm,kl->jklm", I, I)
    return CurvatureTensor(n, n, c.astype(complex))


def random_tensor(n: int, r: int, seed, mode: str = HERMITIAN) -> CurvatureTensor:
    if n < 1 or r < 1:
        raise InputError(f"need n >= 1 and r >= 1, got n={n}, r={r}")
    rng = rng_for(seed)
    if mode == HERMITIAN:
        shape = (n, n, r, r)
        g = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        return CurvatureTensor(n, r, 0.5 * (g + np.conj(g.transpose(1, 0, 3, 2))))
    if mode == GRAM_PSD:
        nr = n * r
        V = rng.standard_normal((nr, nr)) + 1j * rng.standard_normal((nr, nr))
        G = V @ V.conj().T
        G = 0.5 * (G + G.conj().T)
        # G indexed [(j, lam), (k, mu)] -> c[j, k, lam, mu]
        return CurvatureTensor(n, r, G.reshape(n, r, n, r).transpose(0, 2, 1, 3).copy())
    raise InputError(f"unknown mode {mode!r}; expected one of {MODES}")


def random_form_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
