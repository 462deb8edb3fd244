"""
Disk automorphisms in the canonical form φ_{λ,a}(z) = λ(a − z)/(1 − āz), |λ| = 1, |a| < 1.

Sign convention: φ_{λ,0}(z) = −λz, so the rotation R_μ(z) = μz is φ_{−μ,0} and the
identity map is stored as (λ, a) = (−1, 0).

Compositions go through 2×2 linear-fractional matrices; the matrix of φ_{λ,a} is
[[−λ, λa], [−ā, 1]].
"""
import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from core.conf import or_setting
from .errors import DomainError
from .series import TruncatedSeries

logger = logging.getLogger(__name__)

UNIMODULAR_WARN = 1e-9
ZERO_A = 1e-14


def unimodular(value: complex, what: str = "value") -> complex:
    """Renormalize ``value`` onto the unit circle, warning when it was visibly off."""
    value = complex(value)
    modulus = abs(value)
    if modulus == 0 or not math.isfinite(modulus):
        raise DomainError(f"{what} must be a non-zero finite complex number.")
    if abs(modulus - 1.0) > UNIMODULAR_WARN:
        logger.warning("%s = %r has modulus %r; renormalized to the unit circle", what, value, modulus)
    return value / modulus


@dataclass(frozen=True)
class Automorphism:
    lam: complex
    a: complex = 0j

    def __post_init__(self):
        a = complex(self.a)
        if not abs(a) < 1:
            raise DomainError(f"The zero a of an automorphism must satisfy |a| < 1, got |a| = {abs(a)!r}.")
        object.__setattr__(self, "lam", unimodular(self.lam, "lambda"))
        object.__setattr__(self, "a", a)

    @classmethod
    def rotation(cls, mu: complex) -> "Automorphism":
        """R_μ(z) = μz."""
        return cls(lam=-unimodular(mu, "rotation multiplier"), a=0j)

    @classmethod
    def rotation_by(cls, theta: float) -> "Automorphism":
        return cls.rotation(cmath.exp(1j * theta))

    @classmethod
    def identity(cls) -> "Automorphism":
        return cls(lam=-1.0 + 0j, a=0j)

    @property
    def is_rotation(self) -> bool:
        return abs(self.a) <= ZERO_A

    @property
    def label(self) -> str:
        return f"aut:lambda={format_complex(self.lam)},a={format_complex(self.a)}"

    def apply(self, z):
        """λ(a − z)/(1 − āz); vectorized over arrays."""
        denom = 1.0 - np.conj(self.a) * z
        if np.any(np.abs(denom) < 1e-15):
            raise DomainError("z hits the pole 1/ā of the automorphism.")
        return self.lam * (self.a - z) / denom

    def derivative_at(self, z):
        """λ(|a|² − 1)/(1 − āz)²."""
        denom = 1.0 - np.conj(self.a) * z
        if np.any(np.abs(denom) < 1e-15):
            raise DomainError("z hits the pole 1/ā of the automorphism.")
        return self.lam * (abs(self.a) ** 2 - 1.0) / denom ** 2

    def taylor(self, N: int) -> TruncatedSeries:
        """λa + λ(|a|² − 1) Σ_{n≥1} ā^(n−1) zⁿ, truncated at N."""
        if N < 1:
            raise DomainError(f"N must be at least 1, got {N}.")
        coeffs = np.zeros(N, dtype=complex)
        coeffs[0] = self.lam * self.a
        if N > 1:
            coeffs[1:] = self.lam * (abs(self.a) ** 2 - 1.0) * np.conj(self.a) ** np.arange(N - 1)
        return TruncatedSeries(coeffs)

    def matrix(self) -> np.ndarray:
        return np.array([[-self.lam, self.lam * self.a], [-np.conj(self.a), 1.0]], dtype=complex)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "Automorphism":
        """
        Canonical (λ, a) of z ↦ (pz + q)/(rz + s): a = −q/p is the zero of the map,
        λ = −p/s.
        """
        p, q = m[0]
        _, s = m[1]
        if p == 0 or s == 0:
            raise DomainError("The matrix does not describe a disk automorphism.")
        a = -q / p
        if abs(a) <= ZERO_A:
            a = 0j
        return cls(lam=-p / s, a=a)


def format_complex(value: complex) -> str:
    """``<re>+<im>i`` literal, the inverse of the parser used by the command line."""
    value = complex(value)
    sign = "-" if math.copysign(1.0, value.imag) < 0 else "+"
    return f"{value.real!r}{sign}{abs(value.imag)!r}i"


def compose(inner_first: Automorphism, outer: Automorphism) -> Automorphism:
    """Canonical form of outer ∘ inner_first."""
    return Automorphism.from_matrix(outer.matrix() @ inner_first.matrix())


def invert(aut: Automorphism) -> Automorphism:
    (p, q), (r, s) = aut.matrix()
    return Automorphism.from_matrix(np.array([[s, -q], [-r, p]], dtype=complex))


def moved_center(lam: complex, a: complex, tau: complex) -> complex:
    """
    Zero c of φ_{τλ,τ̄a} ∘ φ_{τλ,τ̄a}: c = τ̄a(λτ − 1)/(λτ − |a|²).
    """
    lt = lam * tau
    return np.conj(tau) * a * (lt - 1.0) / (lt - abs(a) ** 2)


def find_tau_for_target_radius(lam: complex, a: complex, b: float, iterations: int | None = None) -> complex:
    """
    Unimodular τ with |moved_center(λ, a, τ)| = b, for 0 ≤ b ≤ |a|.

    |c(e^{it})| − b is −b at τ = λ̄ and 2|a|/(1+|a|²) − b > 0 at τ = −λ̄; bisection on
    t between the two brackets a root (any root will do).
    """
    iterations = or_setting(iterations, "BISECTION_ITERATIONS")
    lam = unimodular(lam, "lambda")
    a = complex(a)
    if a == 0:
        raise DomainError("The point-moving construction needs a != 0.")
    if not 0.0 <= b <= abs(a):
        raise DomainError(f"b must lie in [0, |a|] = [0, {abs(a)!r}], got {b!r}.")
    t_zero = cmath.phase(np.conj(lam))
    if b == 0.0:
        return cmath.exp(1j * t_zero)

    def residual(t: float) -> float:
        return abs(moved_center(lam, a, cmath.exp(1j * t))) - b

    t_far = t_zero + math.pi
    if residual(t_far) == 0.0:
        return cmath.exp(1j * t_far)
    t = optimize.bisect(residual, t_zero, t_far, xtol=1e-15, maxiter=iterations, disp=False)
    tau = cmath.exp(1j * t)
    miss = abs(residual(t))
    if miss > 1e-10:
        logger.warning("bisection left | |c| - b | = %.3e after %d iterations", miss, iterations)
    return tau


def point_moving_square(lam: complex, a: complex, tau: complex) -> Automorphism:
    """φ_{τλ,τ̄a} ∘ φ_{τλ,τ̄a}; its zero is moved_center(λ, a, τ)."""
    tau = unimodular(tau, "tau")
    step = Automorphism(tau * lam, np.conj(tau) * a)
    return compose(step, step)
