"""Seeded random test matrices.

All generators take an explicit ``numpy.random.Generator``; nothing here
touches global random state.
"""
import numpy as np

from .core import random_unitary
from .errors import NoSeparatingCircle
from .solvers import auto_contour, pencil_separation, spectral_separation

__all__ = [
    "complex_gaussian",
    "random_unitary",
    "random_normal",
    "with_spectrum",
    "random_contraction",
    "disc_points",
    "separated_sylvester",
    "separated_pencil",
    "halfplane_sylvester",
    "annulus_sylvester",
]


def complex_gaussian(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def disc_points(rng, k, center=0.0, radius=1.0):
    """``k`` points uniform in a disc."""
    r = radius * np.sqrt(rng.uniform(size=k))
    return center + r * np.exp(2j * np.pi * rng.uniform(size=k))


def random_normal(rng, n, eigenvalues=None):
    """``U diag(eigenvalues) U*`` with Haar-like ``U``; Gaussian eigenvalues by default."""
    lam = complex_gaussian(rng, n) if eigenvalues is None else np.asarray(eigenvalues, complex)
    U = random_unitary(len(lam), rng)
    return (U * lam) @ U.conj().T


def with_spectrum(rng, eigenvalues, skew=0.3):
    """Non-normal matrix ``V diag(eigenvalues) V^-1`` with ``V = I + skew * G``.

    ``skew`` controls departure from normality; ``V`` is redrawn until its
    condition number is below 50.
    """
    lam = np.asarray(eigenvalues, dtype=complex)
    n = lam.size
    while True:
        V = np.eye(n) + skew * complex_gaussian(rng, (n, n))
        if np.linalg.cond(V) < 50:
            return (V * lam) @ np.linalg.inv(V)


def random_contraction(rng, n, radius):
    """Gaussian matrix rescaled to spectral radius ``radius``."""
    G = complex_gaussian(rng, (n, n))
    rho = np.abs(np.linalg.eigvals(G)).max()
    return G * (radius / rho)


def _annulus_points(rng, k, r_min, r_max):
    r = np.sqrt(rng.uniform(r_min**2, r_max**2, size=k))
    return r * np.exp(2j * np.pi * rng.uniform(size=k))


def separated_sylvester(rng, n, m, min_gap=0.5, skew=0.3):
    """``(A, B, C)`` where a circle encloses ``sigma(A)`` and excludes ``sigma(B)``.

    ``sigma(A)`` lies in the unit disc, ``sigma(B)`` in a unit disc whose
    center is 2.5 to 4.5 away; draws are rejected until the eigenvalue gap
    is at least ``min_gap`` and the automatic contour exists.
    """
    while True:
        a = disc_points(rng, n)
        offset = rng.uniform(2.5, 4.5) * np.exp(2j * np.pi * rng.uniform())
        b = disc_points(rng, m, center=offset)
        A, B = with_spectrum(rng, a, skew), with_spectrum(rng, b, skew)
        sep = spectral_separation(A, B)
        if sep.min_gap < min_gap:
            continue
        try:
            auto_contour(sep)
        except NoSeparatingCircle:
            continue
        return A, B, complex_gaussian(rng, (n, m))


def separated_pencil(rng, n, m, min_gap=0.5, skew=0.3):
    """``(A, B, C, D, E)`` for ``A X B - C X D = E`` with circle-separated pencil spectra.

    ``A = C A0`` and ``D = B D0``, so ``sigma(C, A) = sigma(A0)`` (unit disc)
    and ``sigma(B, D) = sigma(D0)`` (annulus 2.5 <= |z| <= 4).
    """
    while True:
        C = np.eye(n) + skew * complex_gaussian(rng, (n, n))
        B = np.eye(m) + skew * complex_gaussian(rng, (m, m))
        if np.linalg.cond(C) > 50 or np.linalg.cond(B) > 50:
            continue
        A = C @ with_spectrum(rng, disc_points(rng, n), skew)
        D = B @ with_spectrum(rng, _annulus_points(rng, m, 2.5, 4.0), skew)
        sep = pencil_separation(A, B, C, D)
        if sep.min_gap < min_gap:
            continue
        try:
            auto_contour(sep)
        except NoSeparatingCircle:
            continue
        return A, B, C, D, complex_gaussian(rng, (n, m))


def halfplane_sylvester(rng, n, m, margin=1.0, skew=0.3):
    """``sigma(A)`` in ``Re z >= margin / 2``, ``sigma(B)`` in ``Re z <= -margin / 2``."""
    a = rng.uniform(margin / 2, margin / 2 + 2, n) + 1j * rng.uniform(-2, 2, n)
    b = -rng.uniform(margin / 2, margin / 2 + 2, m) + 1j * rng.uniform(-2, 2, m)
    return with_spectrum(rng, a, skew), with_spectrum(rng, b, skew), complex_gaussian(rng, (n, m))


def annulus_sylvester(rng, n, m, inner=3.0, outer=1.0, skew=0.3):
    """``|sigma(A)| >= inner`` and ``|sigma(B)| <= outer``."""
    a = _annulus_points(rng, n, inner, inner + 1.0)
    b = disc_points(rng, m, radius=outer)
    return with_spectrum(rng, a, skew), with_spectrum(rng, b, skew), complex_gaussian(rng, (n, m))
