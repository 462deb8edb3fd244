"""
Reproducing kernels K_w(z) = Σ γ(n)(w̄z)ⁿ and the weights they induce.

Orthonormal basis convention: e_n = √γ(n) zⁿ. A function Σ a_n zⁿ has coordinates
a_n/√γ(n); K_w has coordinates √γ(n) w̄ⁿ.
"""
import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DomainError, PreconditionError
from .moebius import Automorphism
from .series import TruncatedSeries, binomial_power, compose, evaluate, reciprocal, scale
from .weights import Origin, WeightSequence, classify

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelEstimate:
    """A truncated kernel value; ``tail`` is None when only the truncation is known."""
    value: complex
    tail: float | None

    @property
    def truncation_only(self) -> bool:
        return self.tail is None


@dataclass(frozen=True, eq=False)
class KernelSection:
    ws: WeightSequence
    w: complex
    N: int

    def vector(self) -> np.ndarray:
        return kernel_vector(self.ws, self.w, self.N)

    def __call__(self, z) -> complex:
        return kernel_value(self.ws, self.w, z, self.N).value

    def norm(self) -> float:
        return kernel_norm(self.ws, self.w, self.N)


def _check_disk(value, what: str):
    if np.any(np.abs(value) >= 1):
        raise DomainError(f"{what} must lie in the open unit disk.")


def kernel_value(ws: WeightSequence, w: complex, z: complex, N: int) -> KernelEstimate:
    """Σ_{n<N} γ(n)(w̄z)ⁿ with the tail bound Σ_{n≥N} γ(n)|wz|ⁿ when certifiable."""
    _check_disk(w, "w")
    _check_disk(z, "z")
    t = np.conj(w) * z
    value = complex(P.polyval(t, ws.take(N)))
    return KernelEstimate(value=value, tail=ws.tail_bound(N, abs(t)))


def kernel_values(ws: WeightSequence, w, z, N: int) -> np.ndarray:
    """Vectorized truncated kernel over broadcast arrays w, z (no tail)."""
    return P.polyval(np.conj(w) * z, ws.take(N))


def kernel_vector(ws: WeightSequence, w: complex, N: int) -> np.ndarray:
    """Coordinates √γ(n) w̄ⁿ of K_w in the orthonormal basis."""
    _check_disk(w, "w")
    return np.sqrt(ws.take(N)) * np.conj(w) ** np.arange(N)


def kernel_norm(ws: WeightSequence, w: complex, N: int) -> float:
    """‖K_w‖ at truncation N, i.e. the square root of the truncated K_w(w)."""
    _check_disk(w, "w")
    return math.sqrt(float(P.polyval(abs(w) ** 2, ws.take(N))))


def kernel_derivative_value(ws: WeightSequence, w: complex, z: complex, N: int) -> complex:
    """∂K_w/∂z at z: Σ_{1≤n<N} n γ(n) w̄ⁿ z^(n-1)."""
    _check_disk(w, "w")
    _check_disk(z, "z")
    wbar = np.conj(w)
    n = np.arange(N)
    coeffs = n * ws.take(N) * wbar ** n
    return complex(P.polyval(z, coeffs[1:])) if N > 1 else 0j


def kernel_closed_form(ws: WeightSequence, w: complex, z: complex) -> complex | None:
    """Closed form of the named kernels; None for explicit lists."""
    t = complex(np.conj(w) * z)
    if ws.origin in (Origin.HARDY, Origin.BERGMAN, Origin.HGAMMA):
        return (1.0 - t) ** (-float(ws.values[1]))
    if ws.origin is Origin.DIRICHLET:
        return 1.0 + 0j if t == 0 else -cmath.log(1.0 - t) / t
    if ws.origin is Origin.BOUNDED_LOG:
        return 1.0 + 2.0 * t + (1.0 - t) * cmath.log(1.0 - t)
    return None


def reproducing_check(ws: WeightSequence, f: TruncatedSeries, w: complex, N: int) -> float:
    """
    |⟨f, K_w⟩ − f(w)| for a polynomial f, with ⟨f, g⟩ = Σ a_n conj(b_n)/γ(n).
    """
    if N <= f.degree:
        raise PreconditionError(f"N = {N} must exceed the degree {f.degree} of f.")
    gamma = ws.take(N)
    a = f.resized(N).coeffs
    k_coeffs = gamma * np.conj(w) ** np.arange(N)
    inner = np.sum(a * np.conj(k_coeffs) / gamma)
    return float(abs(inner - evaluate(f, w)))


def canonical_weight(ws: WeightSequence, aut: Automorphism, nu: complex = 1.0, N: int = 256) -> TruncatedSeries:
    """
    F = ν K_a/‖K_a‖ = ν(1−|a|²)^(γ/2) (1−āz)^(−γ) on H_γ, with a = φ⁻¹(0).

    |F(z)| = |φ′(z)|^(γ/2); written through the kernel so no branch of a power is taken.
    """
    space = classify(ws)
    if not space.is_hgamma:
        raise DomainError(
            f"The canonical weight exists only on H_γ spaces; {ws.label} is {space}."
        )
    gamma = space.gamma
    a = aut.a
    factor = nu * (1.0 - abs(a) ** 2) ** (gamma / 2.0)
    return scale(binomial_power(np.conj(a), gamma, N), factor)


def forced_weight(ws: WeightSequence, phi: Automorphism | TruncatedSeries, N: int, nu: complex = 1.0) -> TruncatedSeries:
    """
    The only weight a co-isometric W_{F,φ} can have:
    F(z) = 1/(conj(F(0))·K_{φ(0)}(φ(z))), |F(0)|² = 1/K_{φ(0)}(φ(0)), F(0) = ν|F(0)|.
    """
    phi_series = phi.taylor(N) if isinstance(phi, Automorphism) else phi.resized(N)
    p = complex(phi_series.coeffs[0])
    _check_disk(p, "φ(0)")
    k_pp = kernel_value(ws, p, p, N).value.real
    f0 = nu / math.sqrt(k_pp)
    # K_{φ(0)} as a series in its argument, then composed with φ.
    kernel_series = TruncatedSeries(ws.take(N) * np.conj(p) ** np.arange(N))
    composed = compose(kernel_series, phi_series, N)
    return scale(reciprocal(composed, N), 1.0 / np.conj(f0))
