"""
Weighted composition operators W_{F,φ} f = F·(f∘φ) as truncated matrices.

In the orthonormal basis e_n = √γ(n) zⁿ,

    A[m][n] = ⟨W e_n, e_m⟩ = [z^m](F·φⁿ) · √(γ(n)/γ(m)),

so column n is the coefficient vector of F·φⁿ, rescaled row by row. Truncated
unitaries are never exactly unitary: defects are read on a leading k×k block
with N ≫ k.
"""
import itertools
import logging
from dataclasses import dataclass, field

import numpy as np

from core.conf import or_setting
from .errors import DomainError, PreconditionError
from .kernel import (
    canonical_weight, forced_weight, kernel_derivative_value, kernel_values,
    kernel_vector,
)
from .moebius import Automorphism, format_complex, point_moving_square, unimodular
from .series import TruncatedSeries, compose as compose_series, evaluate, mul, powers_of
from .weights import WeightSequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CanonicalWeight:
    """F = ν K_a/‖K_a‖, materialized against the space (H_γ only)."""
    nu: complex = 1.0

    @property
    def label(self) -> str:
        return "auto-unitary" if self.nu == 1 else f"auto-unitary:nu={format_complex(self.nu)}"


@dataclass(frozen=True)
class ForcedWeight:
    """F = 1/(conj(F(0)) K_{φ(0)}∘φ), the weight any co-isometric W_{F,φ} must carry."""
    nu: complex = 1.0

    @property
    def label(self) -> str:
        return "forced" if self.nu == 1 else f"forced:nu={format_complex(self.nu)}"


WeightSymbol = TruncatedSeries | CanonicalWeight | ForcedWeight
SelfMap = Automorphism | TruncatedSeries


@dataclass(frozen=True, eq=False)
class WCOSymbols:
    F: WeightSymbol
    phi: SelfMap
    F_label: str | None = None
    phi_label: str | None = None
    _weights: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if isinstance(self.phi, TruncatedSeries) and abs(self.phi.coeffs[0]) >= 1:
            raise DomainError("φ must map the disk into itself: |φ(0)| < 1 is violated.")
        if isinstance(self.F, TruncatedSeries) and not np.any(self.F.coeffs):
            raise DomainError("F must not vanish identically.")

    @property
    def automorphism(self) -> Automorphism | None:
        return self.phi if isinstance(self.phi, Automorphism) else None

    def describe(self) -> dict:
        if self.F_label is not None:
            f_label = self.F_label
        elif isinstance(self.F, TruncatedSeries):
            f_label = "series"
        else:
            f_label = self.F.label
        if self.phi_label is not None:
            phi_label = self.phi_label
        elif isinstance(self.phi, Automorphism):
            phi_label = self.phi.label
        else:
            phi_label = "series"
        return {"F": f_label, "phi": phi_label}

    def phi_series(self, N: int) -> TruncatedSeries:
        if isinstance(self.phi, Automorphism):
            return self.phi.taylor(N)
        return self.phi.resized(N)

    def phi_at(self, z):
        if isinstance(self.phi, Automorphism):
            return self.phi.apply(z)
        return evaluate(self.phi, z)

    def weight_series(self, ws: WeightSequence, N: int) -> TruncatedSeries:
        if isinstance(self.F, TruncatedSeries):
            return self.F.resized(N)
        key = (ws, N)
        if key not in self._weights:
            if isinstance(self.F, CanonicalWeight):
                if self.automorphism is None:
                    raise DomainError("The canonical weight needs φ given as an automorphism.")
                self._weights[key] = canonical_weight(ws, self.automorphism, self.F.nu, N)
            else:
                self._weights[key] = forced_weight(ws, self.phi, N, self.F.nu)
        return self._weights[key]

    def weight_at(self, ws: WeightSequence, z, N: int):
        if isinstance(self.F, TruncatedSeries):
            return evaluate(self.F, z)
        return evaluate(self.weight_series(ws, N), z)


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray
    ws_label: str
    symbols: dict

    @property
    def N(self) -> int:
        return self.entries.shape[0]

    def adjoint(self) -> np.ndarray:
        return self.entries.conj().T


def build_matrix(ws: WeightSequence, symbols: WCOSymbols, N: int, max_n: int | None = None) -> OperatorMatrix:
    """Column n = coefficients of F·φⁿ, scaled by √(γ(n)/γ(m)) in row m."""
    max_n = or_setting(max_n, "MAX_N")
    if N < 1:
        raise DomainError(f"N must be positive, got {N}.")
    if N > max_n:
        raise DomainError(f"N = {N} exceeds the configured maximum {max_n} (WCOLAB_MAX_N).")
    root = np.sqrt(ws.take(N))
    F = symbols.weight_series(ws, N)
    columns = [mul(F, power).coeffs for power in powers_of(symbols.phi_series(N), N, N)]
    # r/r is exactly 1, so diagonal operators keep exact entries.
    scaling = root[np.newaxis, :] / root[:, np.newaxis]
    entries = np.column_stack(columns) * scaling
    logger.debug("built %dx%d matrix for %s on %s", N, N, symbols.describe(), ws.label)
    return OperatorMatrix(entries=entries, ws_label=ws.label, symbols=symbols.describe())


def _check_block(A: OperatorMatrix, k: int):
    if not 1 <= k <= A.N:
        raise PreconditionError(f"Block size k = {k} must lie in [1, N = {A.N}].")
    if 4 * k > A.N:
        logger.debug("block k=%d is inside the truncation shadow of N=%d", k, A.N)


def isometry_defect(A: OperatorMatrix, k: int) -> float:
    """‖[A*A − I]_{k×k}‖_F."""
    _check_block(A, k)
    cols = A.entries[:, :k]
    return float(np.linalg.norm(cols.conj().T @ cols - np.eye(k), "fro"))


def coisometry_defect(A: OperatorMatrix, k: int) -> float:
    """‖[AA* − I]_{k×k}‖_F."""
    _check_block(A, k)
    rows = A.entries[:k, :]
    return float(np.linalg.norm(rows @ rows.conj().T - np.eye(k), "fro"))


def matrix_norm(A: OperatorMatrix) -> float:
    """Spectral norm of the truncated matrix; a diagnostic, not a bound on ‖W‖."""
    return float(np.linalg.norm(A.entries, 2))


def adjoint_kernel_defect(ws: WeightSequence, symbols: WCOSymbols, w: complex, N: int, k: int,
                          matrix: OperatorMatrix | None = None) -> float:
    """‖(A* k_w − conj(F(w)) k_{φ(w)})[:k]‖ / ‖k_w‖, checking W* K_w = conj(F(w)) K_{φ(w)}."""
    A = matrix if matrix is not None else build_matrix(ws, symbols, N)
    _check_block(A, k)
    k_w = kernel_vector(ws, w, A.N)
    lhs = A.adjoint() @ k_w
    rhs = np.conj(symbols.weight_at(ws, w, A.N)) * kernel_vector(ws, symbols.phi_at(w), A.N)
    return float(np.linalg.norm((lhs - rhs)[:k]) / np.linalg.norm(k_w))


def default_grid(radii=None, angles: int | None = None) -> np.ndarray:
    """Points r·e^(2πij/angles) for r in ``radii``."""
    radii = or_setting(radii, "GRID_RADII")
    angles = or_setting(angles, "GRID_ANGLES")
    thetas = 2.0 * np.pi * np.arange(angles) / angles
    return np.array([r * np.exp(1j * t) for r in radii for t in thetas])


def default_pairs(radii=None, angles: int | None = None) -> list[tuple[complex, complex]]:
    grid = default_grid(radii, angles)
    return list(itertools.product(grid, grid))


def functional_identity_defect(ws: WeightSequence, symbols: WCOSymbols, pairs, N: int) -> float:
    """max |F(z) conj(F(w)) K_{φ(w)}(φ(z)) − K_w(z)| / |K_w(z)| over (z, w) pairs."""
    pairs = np.asarray(list(pairs), dtype=complex)
    z, w = pairs[:, 0], pairs[:, 1]
    lhs = (symbols.weight_at(ws, z, N) * np.conj(symbols.weight_at(ws, w, N))
           * kernel_values(ws, symbols.phi_at(w), symbols.phi_at(z), N))
    rhs = kernel_values(ws, w, z, N)
    return float(np.max(np.abs(lhs - rhs) / np.abs(rhs)))


def modulus_identity_defect(ws: WeightSequence, symbols: WCOSymbols, points, N: int) -> float:
    """max | |F(z)|² K_{φ(z)}(φ(z)) − K_z(z) | / K_z(z) over the points."""
    z = np.asarray(list(points), dtype=complex)
    phi_z = symbols.phi_at(z)
    lhs = np.abs(symbols.weight_at(ws, z, N)) ** 2 * kernel_values(ws, phi_z, phi_z, N).real
    rhs = kernel_values(ws, z, z, N).real
    return float(np.max(np.abs(lhs - rhs) / rhs))


def point_identity_defect(ws: WeightSequence, symbols: WCOSymbols, N: int) -> float | None:
    """
    Relative defect of |F(a)|²/(1−|a|²) = λ̄ K′_a(a)/K′_{λa}(0) for φ = φ_{λ,a}, a ≠ 0;
    None when φ is not a non-rotation automorphism.
    """
    aut = symbols.automorphism
    if aut is None or aut.is_rotation:
        return None
    a, lam = aut.a, aut.lam
    lhs = abs(symbols.weight_at(ws, a, N)) ** 2 / (1.0 - abs(a) ** 2)
    rhs = np.conj(lam) * kernel_derivative_value(ws, a, a, N) / kernel_derivative_value(ws, lam * a, 0j, N)
    return float(abs(lhs - rhs) / abs(rhs))


def univalence_defect(symbols: WCOSymbols, radii=None, angles: int | None = None) -> float:
    """min |φ(z₁) − φ(z₂)|/|z₁ − z₂| over distinct grid points; near 0 flags a fold."""
    grid = default_grid(radii, angles)
    images = symbols.phi_at(grid)
    i, j = np.triu_indices(grid.size, k=1)
    return float(np.min(np.abs(images[i] - images[j]) / np.abs(grid[i] - grid[j])))


@dataclass(frozen=True, eq=False)
class LemmaSquare:
    """(G, φ_{μ,c}): the square of W_{F(τ·), φ_{τλ,τ̄a}}."""
    G: TruncatedSeries
    mu: complex
    c: complex
    tau: complex

    @property
    def automorphism(self) -> Automorphism:
        return Automorphism(self.mu, self.c)

    def symbols(self) -> WCOSymbols:
        return WCOSymbols(F=self.G, phi=self.automorphism, F_label="lemma-square")


def lemma_square(ws: WeightSequence, F: WeightSymbol, lam: complex, a: complex, tau: complex,
                 N: int | None = None) -> LemmaSquare:
    """
    G(z) = F(τz)·F(φ_{τ²λ,τ̄a}(z)) and φ_{μ,c} = φ_{τλ,τ̄a} ∘ φ_{τλ,τ̄a}.
    """
    N = or_setting(N, "DEFAULT_N")
    seed = WCOSymbols(F=F, phi=Automorphism(lam, a))
    lam = seed.phi.lam
    tau = unimodular(tau, "tau")
    f_series = seed.weight_series(ws, N)
    inner = Automorphism(tau ** 2 * lam, np.conj(tau) * a)
    G = mul(f_series.rotated(tau), compose_series(f_series, inner.taylor(N), N))
    squared = point_moving_square(lam, a, tau)
    return LemmaSquare(G=G, mu=squared.lam, c=squared.a, tau=tau)


def defects_at(ws: WeightSequence, symbols: WCOSymbols, N: int, k: int | None = None) -> tuple[float, float]:
    """(isometry, co-isometry) block defects at truncation N."""
    k = or_setting(k, "BLOCK_K")
    A = build_matrix(ws, symbols, N)
    return isometry_defect(A, k), coisometry_defect(A, k)

