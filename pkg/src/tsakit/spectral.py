"""Nonparametric and parametric power spectral density estimation.

The DFT runs a radix-2 iterative transform when the padded length is a power of
two and falls back to direct evaluation otherwise. Periodogram ordinates are
|X[k]|^2 / N on the frequency grid k/N, truncated to [0, 0.5]. Smoothing uses a
modified Daniell kernel (half-weight endpoints); successive spans are convolved
into one composite kernel which is applied with reflection at both ends of the
half-spectrum. The parametric estimate evaluates the AR transfer function.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .armodel import ArModel, is_stationary
from .errors import (InsufficientDataError, InvalidArgumentError,
                     NonStationaryModelError)


class EstimatorKind(Enum):
    RAW_PERIODOGRAM = "raw_periodogram"
    DANIELL = "daniell"
    AR_PARAMETRIC = "ar_parametric"


@dataclass(frozen=True)
class DftResult:
    coefficients: np.ndarray
    original_length: int
    padded_length: int


@dataclass(frozen=True)
class SpectrumEstimate:
    frequencies: np.ndarray
    power: np.ndarray
    estimator: EstimatorKind
    parameters: dict = field(default_factory=dict)

    def to_rows(self) -> list[tuple[float, float]]:
        return list(zip(self.frequencies.tolist(), self.power.tolist()))


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def _fft_radix2(x: np.ndarray) -> np.ndarray:
    """Iterative Cooley-Tukey on a power-of-two-length complex array."""
    n = x.size
    levels = n.bit_length() - 1
    # Bit-reversal permutation.
    indices = np.arange(n)
    reversed_indices = np.zeros(n, dtype=int)
    for _ in range(levels):
        reversed_indices = (reversed_indices << 1) | (indices & 1)
        indices >>= 1
    out = x[reversed_indices].astype(complex)
    half = 1
    while half < n:
        twiddle = np.exp(-1j * np.pi * np.arange(half) / half)
        step = half * 2
        blocks = out.reshape(-1, step)
        even = blocks[:, :half].copy()
        odd = blocks[:, half:] * twiddle
        blocks[:, :half] = even + odd
        blocks[:, half:] = even - odd
        half = step
    return out


def _dft_direct(x: np.ndarray) -> np.ndarray:
    n = x.size
    k = np.arange(n)
    basis = np.exp(-2j * np.pi * np.outer(k, k) / n)
    return basis @ x.astype(complex)


def dft(x: Sequence[float], pad_to: Optional[int] = None) -> DftResult:
    """DFT of the zero-padded input: X[k] = sum_t x_t exp(-2 pi i k t / N)."""
    arr = np.asarray(x, dtype=float)
    m = arr.size
    if m < 1:
        raise InvalidArgumentError("dft input must be non-empty")
    n = m if pad_to is None else int(pad_to)
    if n < m:
        raise InvalidArgumentError(
            f"pad_to={n} must be at least the input length M={m}")
    padded = np.zeros(n)
    padded[:m] = arr
    if _is_power_of_two(n):
        coeffs = _fft_radix2(padded.astype(complex))
    else:
        coeffs = _dft_direct(padded)
    return DftResult(coefficients=coeffs, original_length=m, padded_length=n)


def inverse_dft(coefficients: np.ndarray) -> np.ndarray:
    """Inverse transform via the conjugation trick: conj(F(conj(X))) / N."""
    arr = np.asarray(coefficients, dtype=complex)
    n = arr.size
    if _is_power_of_two(n):
        forward = _fft_radix2(np.conj(arr))
    else:
        forward = _dft_direct(np.conj(arr))
    return np.conj(forward) / n


def next_power_of_two(n: int) -> int:
    return 1 if n <= 1 else 2 ** (n - 1).bit_length()


def periodogram(x: Sequence[float], demean: bool = True,
                pad_to: Optional[int] = None) -> SpectrumEstimate:
    """Raw periodogram on the grid f_k = k/N, k = 0..floor(N/2)."""
    arr = np.asarray(x, dtype=float)
    m = arr.size
    if m < 2:
        raise InsufficientDataError(f"periodogram needs at least 2 points, got {m}")
    if demean:
        arr = arr - arr.mean()
    n = next_power_of_two(m) if pad_to is None else int(pad_to)
    transform = dft(arr, pad_to=n)
    half = n // 2
    power = np.abs(transform.coefficients[: half + 1]) ** 2 / n
    freqs = np.arange(half + 1, dtype=float) / n
    return SpectrumEstimate(
        frequencies=freqs,
        power=power,
        estimator=EstimatorKind.RAW_PERIODOGRAM,
        parameters={"original_length": m, "padded_length": n, "demeaned": demean},
    )


def modified_daniell_kernel(span: int) -> np.ndarray:
    """Weights of one modified Daniell pass: flat with half-weight endpoints."""
    if span < 3 or span % 2 == 0:
        raise InvalidArgumentError(f"span must be an odd integer >= 3, got {span}")
    weights = np.ones(span)
    weights[0] = weights[-1] = 0.5
    return weights / weights.sum()


def daniell_smooth(spectrum: SpectrumEstimate,
                   spans: Sequence[int] = (3, 3)) -> SpectrumEstimate:
    """Smooth a raw periodogram with successive modified Daniell kernels.

    The per-span kernels are convolved into one composite kernel; boundary
    ordinates reflect about f = 0 and f = 0.5, which for a real input matches
    circular smoothing of the full-length periodogram.
    """
    if spectrum.estimator is not EstimatorKind.RAW_PERIODOGRAM:
        raise InvalidArgumentError("daniell_smooth expects a raw periodogram")
    spans = [int(s) for s in spans]
    if not spans:
        raise InvalidArgumentError("at least one span is required")
    kernel = np.array([1.0])
    for span in spans:
        kernel = np.convolve(kernel, modified_daniell_kernel(span))
    half_width = (kernel.size - 1) // 2

    power = spectrum.power
    if half_width >= power.size:
        raise InvalidArgumentError(
            f"composite kernel half-width {half_width} is too wide for "
            f"{power.size} spectral ordinates")
    padded = np.concatenate((power[half_width:0:-1], power,
                             power[-2: -half_width - 2: -1]))
    smoothed = np.convolve(padded, kernel, mode="valid")
    return SpectrumEstimate(
        frequencies=spectrum.frequencies.copy(),
        power=np.maximum(smoothed, 0.0),
        estimator=EstimatorKind.DANIELL,
        parameters={**spectrum.parameters, "spans": tuple(spans)},
    )


def ar_psd(model: ArModel, grid_size: int) -> SpectrumEstimate:
    """Parametric PSD sigma2 / |phi(e^{-2 pi i f})|^2 on [0, 0.5]."""
    if grid_size < 2:
        raise InvalidArgumentError(f"grid_size must be >= 2, got {grid_size}")
    if not is_stationary(model):
        raise NonStationaryModelError("ar_psd requires a stationary model")
    freqs = np.linspace(0.0, 0.5, grid_size)
    response = np.ones(grid_size, dtype=complex)
    for j, phi_j in enumerate(model.phi, start=1):
        response -= phi_j * np.exp(-2j * np.pi * freqs * j)
    power = model.sigma2 / np.abs(response) ** 2
    return SpectrumEstimate(
        frequencies=freqs,
        power=power,
        estimator=EstimatorKind.AR_PARAMETRIC,
        parameters={"order": model.order, "grid_size": grid_size},
    )
