"""Shared numerical kernels: discrete Fourier transforms, dense symmetric
linear solves and robust scale statistics.

Spectra are plain complex ``numpy`` arrays in the standard DFT layout
(bin ``k`` holds ``sum_t x[t] * exp(-2j*pi*k*t/N)``), so for real input the
array is conjugate-symmetric: ``bin[k] == conj(bin[N-k mod N])``.

All functions are pure and hold no shared state; they are safe to call
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvalidInputError, NumericalFailureError

__all__ = [
    "SymmetricSystem",
    "fft_forward",
    "fft_inverse",
    "solve_symmetric",
    "interquartile_range",
]

#: Largest acceptable condition estimate for a symmetric solve.
CONDITION_LIMIT = 1e14

#: Relative residual bound guaranteed by solve_symmetric.
RESIDUAL_LIMIT = 1e-8


@dataclass(frozen=True)
class SymmetricSystem:
    """Dense symmetric linear system ``matrix @ x == rhs``."""

    matrix: np.ndarray
    rhs: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.matrix, dtype=float)
        b = np.asarray(self.rhs, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidInputError(f"matrix must be square, got shape {a.shape}")
        if b.ndim != 1 or b.shape[0] != a.shape[0]:
            raise InvalidInputError(
                f"rhs length {b.shape} does not match matrix order {a.shape[0]}"
            )
        scale = max(1.0, float(np.max(np.abs(a))) if a.size else 1.0)
        if a.size and float(np.max(np.abs(a - a.T))) > 1e-12 * scale:
            raise InvalidInputError("matrix is not symmetric within 1e-12")
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "rhs", b)


def fft_forward(signal: np.ndarray) -> np.ndarray:
    """Forward DFT of a real signal of arbitrary length.

    Arbitrary (including prime) lengths are supported; the backing transform
    uses mixed-radix/Bluestein factorizations, not just powers of two.

    Parameters
    ----------
    signal : array_like
        Real sequence, length >= 1.

    Returns
    -------
    numpy.ndarray
        Complex spectrum of the same length.
    """
    x = np.asarray(signal, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise InvalidInputError("signal must be a nonempty 1-D real sequence")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("signal contains non-finite values")
    return np.fft.fft(x)


def fft_inverse(spectrum: np.ndarray) -> np.ndarray:
    """Inverse DFT of a conjugate-symmetric spectrum back to a real signal.

    The spectrum must satisfy ``bin[k] == conj(bin[N-k mod N])`` within
    1e-8 (relative to its largest magnitude); any smaller imaginary residue
    of the inverse transform is discarded.
    """
    s = np.asarray(spectrum, dtype=complex)
    if s.ndim != 1 or s.size == 0:
        raise InvalidInputError("spectrum must be a nonempty 1-D complex sequence")
    n = s.size
    mirrored = np.conj(s[(-np.arange(n)) % n])
    scale = max(1.0, float(np.max(np.abs(s))))
    if float(np.max(np.abs(s - mirrored))) > 1e-8 * scale:
        raise InvalidInputError(
            "spectrum is not conjugate-symmetric; cannot invert to a real signal"
        )
    out = np.fft.ifft(s)
    return np.real(out)


def solve_symmetric(system: SymmetricSystem) -> np.ndarray:
    """Solve a dense symmetric system by Cholesky with an LDL^T fallback.

    Cholesky is attempted first; indefinite (but symmetric) matrices fall
    back to a symmetric-indefinite LDL^T factorization. Raises
    :class:`NumericalFailureError` carrying the condition estimate when the
    matrix is singular or the relative residual bound ``1e-8`` cannot be met.
    """
    a, b = system.matrix, system.rhs
    if a.shape[0] == 0:
        return np.zeros(0)
    cond = float(np.linalg.cond(a))
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise NumericalFailureError(
            f"matrix is singular or near-singular (condition estimate {cond:.3e})",
            condition=cond,
        )
    try:
        factor = scipy.linalg.cho_factor(a, check_finite=False)
        x = scipy.linalg.cho_solve(factor, b, check_finite=False)
    except scipy.linalg.LinAlgError:
        x = scipy.linalg.solve(a, b, assume_a="sym", check_finite=False)
    residual = float(np.max(np.abs(a @ x - b))) / (1.0 + float(np.max(np.abs(b))))
    if residual > RESIDUAL_LIMIT:
        raise NumericalFailureError(
            f"solve residual {residual:.3e} exceeds {RESIDUAL_LIMIT:.0e} "
            f"(condition estimate {cond:.3e})",
            condition=cond,
            residual=residual,
        )
    return x


def interquartile_range(values: np.ndarray) -> float:
    """Q3 - Q1 with linear interpolation between order statistics (type-7).

    Requires at least 4 values so both quartiles are interior.
    """
    x = np.asarray(values, dtype=float)
    if x.ndim != 1 or x.size < 4:
        raise InvalidInputError("interquartile_range needs at least 4 values")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("values contain non-finite entries")
    q1, q3 = np.percentile(x, [25.0, 75.0])
    return float(q3 - q1)
