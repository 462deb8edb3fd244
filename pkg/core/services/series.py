"""
Truncated Taylor series a_0 + a_1 z + ... + a_{N-1} z^{N-1} of functions analytic in the disk.

Results of binary operations keep the shorter truncation of their inputs, so no
high-order coefficient is ever invented. Operations that take an explicit
length (``reciprocal``, ``powers_of``, ``resized``) treat their input as a
polynomial, i.e. missing coefficients are zeros.
"""
import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DomainError, SingularityError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex).ravel()
        if coeffs.size == 0:
            raise DomainError("A truncated series needs at least one coefficient.")
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def constant(cls, c: complex, N: int = 1) -> "TruncatedSeries":
        coeffs = np.zeros(N, dtype=complex)
        coeffs[0] = c
        return cls(coeffs)

    @classmethod
    def identity(cls, N: int = 2) -> "TruncatedSeries":
        """The series of z."""
        coeffs = np.zeros(max(N, 2), dtype=complex)
        coeffs[1] = 1.0
        return cls(coeffs)

    @property
    def N(self) -> int:
        return self.coeffs.size

    @property
    def degree(self) -> int:
        """Index of the last non-zero coefficient (0 for the zero series)."""
        nonzero = np.flatnonzero(self.coeffs)
        return int(nonzero[-1]) if nonzero.size else 0

    def resized(self, N: int) -> "TruncatedSeries":
        if N == self.N:
            return self
        if N < self.N:
            return TruncatedSeries(self.coeffs[:N])
        return TruncatedSeries(np.concatenate((self.coeffs, np.zeros(N - self.N, dtype=complex))))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return add(self, other)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return mul(self, other)

    def __call__(self, z):
        return evaluate(self, z)

    def rotated(self, tau: complex) -> "TruncatedSeries":
        """Coefficients of f(τz): a_n τⁿ."""
        return TruncatedSeries(self.coeffs * tau ** np.arange(self.N))

    def to_json(self) -> dict:
        return {"re": self.coeffs.real.tolist(), "im": self.coeffs.imag.tolist()}


def mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at min(N_f, N_g)."""
    N = min(f.N, g.N)
    return TruncatedSeries(np.convolve(f.coeffs[:N], g.coeffs[:N])[:N])


def add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    N = min(f.N, g.N)
    return TruncatedSeries(f.coeffs[:N] + g.coeffs[:N])


def scale(f: TruncatedSeries, c: complex) -> TruncatedSeries:
    return TruncatedSeries(f.coeffs * c)


def derivative(f: TruncatedSeries) -> TruncatedSeries:
    """Term-wise derivative; the truncation drops to N-1 (a constant keeps one zero)."""
    if f.N == 1:
        return TruncatedSeries(np.zeros(1, dtype=complex))
    return TruncatedSeries(P.polyder(f.coeffs))


def reciprocal(f: TruncatedSeries, N: int) -> TruncatedSeries:
    """
    g with f·g = 1 + O(z^N), by the recursion g_n = -(1/f_0) Σ_{k=1..n} f_k g_{n-k}.
    """
    a = f.resized(N).coeffs
    if a[0] == 0:
        raise SingularityError("The series has a vanishing constant term and no reciprocal at 0.")
    g = np.zeros(N, dtype=complex)
    g[0] = 1.0 / a[0]
    for n in range(1, N):
        g[n] = -np.dot(a[1:n + 1], g[n - 1::-1]) * g[0]
    return TruncatedSeries(g)


def binomial_power(abar: complex, exponent: float, N: int) -> TruncatedSeries:
    """
    Coefficients of (1 - abar·z)^(-exponent): c_0 = 1, c_n = c_{n-1}·abar·(n-1+exponent)/n.
    """
    if abs(abar) >= 1:
        raise DomainError(f"binomial_power needs |abar| < 1, got {abs(abar)!r}.")
    n = np.arange(1, N, dtype=float)
    factors = abar * (n - 1.0 + exponent) / n
    return TruncatedSeries(np.concatenate(([1.0 + 0j], np.cumprod(factors))))


def powers_of(phi: TruncatedSeries, N: int, count: int) -> list[TruncatedSeries]:
    """[φ⁰, φ¹, ..., φ^(count-1)], each truncated at length N."""
    if count < 1:
        raise DomainError(f"count must be at least 1, got {count}.")
    if abs(phi.coeffs[0]) >= 1:
        raise DomainError(f"powers_of needs |φ(0)| < 1, got {abs(phi.coeffs[0])!r}.")
    base = phi.resized(N)
    current = TruncatedSeries.constant(1.0, N)
    powers = [current]
    for _ in range(count - 1):
        current = mul(current, base)
        powers.append(current)
    return powers


def power_matrix(phi: TruncatedSeries, N: int, count: int) -> np.ndarray:
    """N×count array whose column j holds the coefficients of φ^j."""
    return np.column_stack([p.coeffs for p in powers_of(phi, N, count)])


def compose(f: TruncatedSeries, psi: TruncatedSeries, N: int) -> TruncatedSeries:
    """
    f∘ψ realized as Σ_j f_j ψ^j with the powers truncated at N.

    Only meaningful when the terms decay, e.g. ψ an automorphism and f with
    geometrically decaying coefficients.
    """
    weights = f.coeffs
    return TruncatedSeries(power_matrix(psi, N, weights.size) @ weights)


def evaluate(f: TruncatedSeries, z):
    """Horner evaluation of the retained polynomial (no tail correction)."""
    return P.polyval(z, f.coeffs)
