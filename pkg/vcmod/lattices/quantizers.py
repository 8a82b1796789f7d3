# Copyright 2025 Roger Cibrian
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Closest-point quantizers.

Fast quantizers cover the scaled cubic lattice, the checkerboard lattice Dn
and the Gosset lattice E8 (as D8 together with its half-integer coset). Any
other lattice goes through SphereDecoder, an exact Schnorr-Euchner
enumeration over an LLL-reduced basis.

Rounding is half toward +inf on every coordinate (floor(y + 1/2)), so
encoder, decoder and test oracles agree on ties.

All quantizers accept a single vector of shape (n,) or a batch (..., n).

Example:
    ```python
    import numpy as np
    from vcmod.lattices.quantizers import quantize_dn, quantize_e8

    quantize_dn(np.array([0.6, 0.6]))      # array([1., 1.])
    quantize_e8(np.full(8, 0.5))            # the glue vector itself
    ```
"""

from __future__ import annotations

import math

import numpy as np

from vcmod.exceptions import LatticeError

LLL_DELTA = 0.99


def _check_finite(y: np.ndarray) -> None:
    if not np.all(np.isfinite(y)):
        raise LatticeError("Quantizer input contains non-finite coordinates")


def round_half_up(y: np.ndarray) -> np.ndarray:
    """Rounds every coordinate to the nearest integer, ties toward +inf."""
    return np.floor(np.asarray(y, dtype=np.float64) + 0.5)


def quantize_cubic(
    y: np.ndarray,
    scale: float = 1.0,
    translate: np.ndarray | float = 0.0,
) -> np.ndarray:
    """Returns the nearest point of scale·Zⁿ + translate.

    Args:
        y: Input of shape (..., n).
        scale: Positive lattice scale.
        translate: Coset shift, broadcast against y.

    Returns:
        Array of the same shape as y.

    Raises:
        LatticeError: If scale is not positive or y is not finite.

    """
    if scale <= 0:
        raise LatticeError(f"Cubic quantizer scale must be positive, got {scale}")
    y = np.asarray(y, dtype=np.float64)
    _check_finite(y)
    t = np.asarray(translate, dtype=np.float64)
    return scale * round_half_up((y - t) / scale) + t


def quantize_dn(y: np.ndarray) -> np.ndarray:
    """Returns the nearest point of Dn = {x in Zⁿ : sum(x) even}.

    Rounds every coordinate; when the coordinate sum comes out odd, the
    coordinate with the largest rounding error is pushed to its other
    neighbour. On equal rounding errors the first such coordinate moves.

    Raises:
        LatticeError: If n < 2 or y is not finite.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.shape[-1] < 2:
        raise LatticeError("Dn quantizer requires n >= 2")
    _check_finite(y)
    f = round_half_up(y)
    odd = np.mod(f.sum(axis=-1), 2) != 0
    if not np.any(odd):
        return f
    delta = y - f
    worst = np.argmax(np.abs(delta), axis=-1)[..., None]
    bump = np.where(np.take_along_axis(delta, worst, axis=-1) >= 0, 1.0, -1.0)
    fixed = f.copy()
    np.put_along_axis(fixed, worst, np.take_along_axis(f, worst, axis=-1) + bump, -1)
    return np.where(odd[..., None], fixed, f)


def quantize_e8(y: np.ndarray) -> np.ndarray:
    """Returns the nearest point of E8 = D8 ∪ (D8 + ½·1).

    Ties between the two cosets go to the D8 candidate.

    Raises:
        LatticeError: If the last axis is not 8 or y is not finite.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.shape[-1] != 8:
        raise LatticeError(f"E8 quantizer expects 8 coordinates, got {y.shape[-1]}")
    even = quantize_dn(y)
    odd = quantize_dn(y - 0.5) + 0.5
    d_even = np.sum((y - even) ** 2, axis=-1, keepdims=True)
    d_odd = np.sum((y - odd) ** 2, axis=-1, keepdims=True)
    return np.where(d_even <= d_odd, even, odd)


def _gram_schmidt(b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = b.shape[0]
    ortho = np.zeros_like(b)
    mu = np.eye(n)
    for i in range(n):
        ortho[i] = b[i]
        for j in range(i):
            mu[i, j] = b[i] @ ortho[j] / (ortho[j] @ ortho[j])
            ortho[i] -= mu[i, j] * ortho[j]
    return ortho, mu


def lll_reduce(basis: np.ndarray, delta: float = LLL_DELTA) -> np.ndarray:
    """LLL-reduces the rows of a basis.

    Only integer row operations are applied, so a basis with dyadic entries
    stays exactly representable.

    Args:
        basis: Nonsingular n x n matrix whose rows span the lattice.
        delta: Lovász parameter in (1/4, 1).

    Returns:
        A reduced basis of the same lattice.

    """
    b = np.array(basis, dtype=np.float64, copy=True)
    n = b.shape[0]
    ortho, mu = _gram_schmidt(b)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = math.floor(mu[k, j] + 0.5)
            if q:
                b[k] -= q * b[j]
                mu[k, :j] -= q * mu[j, :j]
                mu[k, j] -= q
        lhs = ortho[k] @ ortho[k]
        rhs = (delta - mu[k, k - 1] ** 2) * (ortho[k - 1] @ ortho[k - 1])
        if lhs >= rhs:
            k += 1
        else:
            b[[k - 1, k]] = b[[k, k - 1]]
            ortho, mu = _gram_schmidt(b)
            k = max(k - 1, 1)
    return b


def _start(center: float) -> tuple[int, int]:
    u = math.floor(center + 0.5)
    return u, 1 if center >= u else -1


class SphereDecoder:
    """Exact closest-vector search for an arbitrary lattice.

    The basis is LLL-reduced once and factored as B = L·Qᵀ with L lower
    triangular, so the last coordinate of y·Q depends on a single integer
    coefficient. Enumeration is depth first in Schnorr-Euchner order with
    the radius shrinking to the best distance found.

    Attributes:
        basis: Reduced basis, rows spanning the lattice.
    """

    def __init__(self, basis: np.ndarray) -> None:
        reduced = lll_reduce(np.asarray(basis, dtype=np.float64))
        q, r = np.linalg.qr(reduced.T)
        signs = np.where(np.diag(r) < 0, -1.0, 1.0)
        self.basis = reduced
        self._rotation = q * signs
        self._lower = (r * signs[:, None]).T

    def _search(
        self, target: np.ndarray, exclude_zero: bool
    ) -> tuple[list[int], float]:
        lower = self._lower
        n = lower.shape[0]
        diag = [float(v) for v in np.diag(lower)]
        resid = np.zeros((n + 1, n))
        resid[n] = target
        partial = [0.0] * (n + 1)
        u = [0] * n
        step = [0] * n
        best = math.inf
        best_u = [0] * n

        k = n - 1
        u[k], step[k] = _start(float(resid[n, k]) / diag[k])
        while True:
            diff = float(resid[k + 1, k]) - u[k] * diag[k]
            dist = partial[k + 1] + diff * diff
            if dist < best:
                if k > 0:
                    resid[k] = resid[k + 1] - u[k] * lower[k]
                    partial[k] = dist
                    k -= 1
                    u[k], step[k] = _start(float(resid[k + 1, k]) / diag[k])
                    continue
                if not (exclude_zero and not any(u)):
                    best = dist
                    best_u = u.copy()
                    if k == n - 1:
                        break
                    k += 1
            else:
                if k == n - 1:
                    break
                k += 1
            u[k] += step[k]
            step[k] = -step[k] - (1 if step[k] > 0 else -1)
        return best_u, best

    def closest(self, y: np.ndarray) -> np.ndarray:
        """Returns the lattice point nearest to y (shape (..., n))."""
        y = np.asarray(y, dtype=np.float64)
        _check_finite(y)
        flat = y.reshape(-1, y.shape[-1])
        out = np.empty_like(flat)
        for i, row in enumerate(flat):
            coeffs, _ = self._search(row @ self._rotation, exclude_zero=False)
            out[i] = np.asarray(coeffs, dtype=np.float64) @ self.basis
        return out.reshape(y.shape)

    def shortest(self) -> tuple[np.ndarray, float]:
        """Returns a shortest nonzero lattice vector and its squared norm."""
        n = self.basis.shape[0]
        coeffs, _ = self._search(np.zeros(n), exclude_zero=True)
        vector = np.asarray(coeffs, dtype=np.float64) @ self.basis
        return vector, float(vector @ vector)
