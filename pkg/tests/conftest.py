import numpy as np
import pytest
from scipy.linalg import eigh_tridiagonal

from horizonspec import SmarrShape


def fd_spectrum(k: int, shape: SmarrShape, cells: int = 2000, count: int = 5) -> np.ndarray:
    """Second-order finite-volume discretization of L_k / eta^2 on (-1, 1).

    Cell-centered unknowns; the flux coefficient f vanishes on the two
    boundary faces, which imposes the regularity condition at the poles.
    For k = 0 the zero mode is dropped.
    """
    h = 2.0 / cells
    faces = np.linspace(-1.0, 1.0, cells + 1)
    centers = 0.5 * (faces[1:] + faces[:-1])

    def f(x):
        s = 1.0 - x * x
        return s / (1.0 - shape.beta2 * s)

    ff = f(faces)
    diag = (ff[:-1] + ff[1:]) / h**2 + k * k / f(centers)
    off = -ff[1:-1] / h**2
    skip = 1 if k == 0 else 0
    w = eigh_tridiagonal(diag, off, select="i", select_range=(0, count + skip - 1), eigvals_only=True)
    return w[skip:] / shape.eta2


@pytest.fixture
def sphere():
    return SmarrShape(1.0, 0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
