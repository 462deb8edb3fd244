"""
The co-isometry dichotomy as a decision procedure.

On H_γ a bounded WCO is co-isometric (equivalently unitary) exactly when φ is a
disk automorphism and |F| = |φ′|^(γ/2); on every other space of this kind only
the trivial operators (rotation φ, unimodular constant F) are. The theoretical
prediction is set against block-defect measurements of the truncated matrix.

Boundedness of W_{F,φ} is a hypothesis of the dichotomy and is never verified.
"""
import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from core.conf import or_setting
from .errors import DomainError, LabError, PreconditionError
from .moebius import Automorphism, format_complex
from .operator import (
    OperatorMatrix, WCOSymbols, adjoint_kernel_defect, build_matrix, coisometry_defect, default_grid,
    default_pairs, functional_identity_defect, isometry_defect, matrix_norm,
    modulus_identity_defect, point_identity_defect, univalence_defect,
)
from .series import TruncatedSeries
from .weights import SpaceClass, SpaceKind, WeightSequence, classify, diagonal_sum

logger = logging.getLogger(__name__)

REPORT_VERSION = 1
HYPOTHESIS = "W_{F,phi} is assumed bounded on the space; boundedness is not verified."
CORE_CONSTITUENTS = ("theoretical_verdict", "numerical_verdict", "build_matrix")


class Theoretical(str, enum.Enum):
    """
    A violation of the trivial-only rule outside H_γ is reported as
    NOT_COISOMETRIC_EXPECTED with a ``trivial-only`` reason in the rationale.
    """
    UNITARY_EXPECTED = "UnitaryExpected"
    NOT_COISOMETRIC_EXPECTED = "NotCoisometricExpected"
    INDETERMINATE = "Indeterminate"


class Numerical(str, enum.Enum):
    PASS_UNITARY = "PassUnitary"
    FAIL_COISOMETRY = "FailCoisometry"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class Rationale:
    space_class: str
    phi_shape: str = "unknown"
    F_shape: str = "unknown"
    reasons: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "space_class": self.space_class, "phi_shape": self.phi_shape,
            "F_shape": self.F_shape, "reasons": list(self.reasons),
        }


@dataclass
class TheoryOutcome:
    verdict: Theoretical
    rationale: Rationale


@dataclass
class NumericalOutcome:
    verdict: Numerical
    isometry: float
    coisometry: float
    isometry_doubled: float
    coisometry_doubled: float
    matrix: OperatorMatrix | None = field(default=None, repr=False)


@dataclass
class Verdict:
    theoretical: Theoretical
    numerical: Numerical
    rationale: Rationale

    @property
    def agreement(self) -> bool | None:
        """None when the theory makes no prediction (reported as "n/a")."""
        if self.theoretical is Theoretical.INDETERMINATE:
            return None
        return (
            (self.theoretical is Theoretical.UNITARY_EXPECTED and self.numerical is Numerical.PASS_UNITARY)
            or (self.theoretical is Theoretical.NOT_COISOMETRIC_EXPECTED
                and self.numerical is Numerical.FAIL_COISOMETRY)
        )


def recognize_automorphism(phi: TruncatedSeries, match_tol: float) -> Automorphism | None:
    """
    The automorphism with the same φ(0) and φ′(0) as ``phi``, when its Taylor
    expansion matches ``phi`` to ``match_tol``; None otherwise.
    """
    if phi.N < 2:
        return None
    c0, c1 = complex(phi.coeffs[0]), complex(phi.coeffs[1])
    radius = abs(c0)
    if radius >= 1 or c1 == 0:
        return None
    # φ(0) = λa and φ′(0) = λ(|a|² − 1), so |a| = |φ(0)|.
    lam = -c1 / (1.0 - radius ** 2)
    if abs(abs(lam) - 1.0) > match_tol:
        return None
    try:
        candidate = Automorphism(lam, c0 / lam)
    except DomainError:
        return None
    mismatch = np.max(np.abs(candidate.taylor(phi.N).coeffs - phi.coeffs))
    return candidate if mismatch <= match_tol else None


def _weight_is_unimodular_constant(F: TruncatedSeries, match_tol: float) -> bool:
    tail = np.max(np.abs(F.coeffs[1:])) if F.N > 1 else 0.0
    return tail <= match_tol and abs(abs(F.coeffs[0]) - 1.0) < match_tol


def theoretical_verdict(space_class: SpaceClass, symbols: WCOSymbols, match_tol: float | None = None, *,
                        ws: WeightSequence, N: int | None = None, grid=None) -> TheoryOutcome:
    """What the dichotomy predicts for W_{F,φ} on a space of the given class."""
    match_tol = or_setting(match_tol, "MATCH_TOL")
    N = or_setting(N, "DEFAULT_N")
    rationale = Rationale(space_class=str(space_class))

    if space_class.kind is SpaceKind.UNDETERMINED:
        rationale.reasons.append("space class undetermined: the dichotomy gives no prediction")
        return TheoryOutcome(Theoretical.INDETERMINATE, rationale)

    aut = symbols.automorphism
    if aut is None:
        aut = recognize_automorphism(symbols.phi_series(N), match_tol)
        rationale.phi_shape = "series-automorphism" if aut is not None else "non-automorphic series"
    else:
        rationale.phi_shape = "automorphism"
    if aut is not None and abs(aut.a) <= match_tol:
        rationale.phi_shape = "rotation" if symbols.automorphism is not None else "series-rotation"

    if aut is None:
        # Co-isometric WCOs have automorphic symbols whenever a prediction is possible.
        rationale.reasons.append("phi is not a disk automorphism")
        return TheoryOutcome(Theoretical.NOT_COISOMETRIC_EXPECTED, rationale)

    if space_class.kind is SpaceKind.HGAMMA:
        gamma = space_class.gamma
        points = default_grid() if grid is None else np.asarray(grid, dtype=complex)
        target = np.abs(aut.derivative_at(points)) ** (gamma / 2.0)
        modulus = np.abs(symbols.weight_at(ws, points, N))
        gap = float(np.max(np.abs(modulus - target) / target))
        if gap < match_tol:
            rationale.F_shape = "|F| = |phi'|^(gamma/2)"
            rationale.reasons.append(f"automorphism with the canonical weight on H_gamma, gamma={gamma!r}")
            return TheoryOutcome(Theoretical.UNITARY_EXPECTED, rationale)
        rationale.F_shape = "mismatch"
        rationale.reasons.append(f"|F| departs from |phi'|^(gamma/2) by {gap:.3e} (relative)")
        return TheoryOutcome(Theoretical.NOT_COISOMETRIC_EXPECTED, rationale)

    # Bounded on the diagonal, or unbounded but not H_gamma: trivial operators only.
    F = symbols.weight_series(ws, N)
    constant = _weight_is_unimodular_constant(F, match_tol)
    rationale.F_shape = "unimodular constant" if constant else "non-trivial"
    if rationale.phi_shape in ("rotation", "series-rotation") and constant:
        rationale.reasons.append("rotation with a unimodular constant weight")
        return TheoryOutcome(Theoretical.UNITARY_EXPECTED, rationale)
    rationale.reasons.append("trivial-only: outside H_gamma only rotations with unimodular constants qualify")
    return TheoryOutcome(Theoretical.NOT_COISOMETRIC_EXPECTED, rationale)


def _settles(first: float, doubled: float, floor: float) -> bool:
    """Decreases under N-doubling, or already sits at the round-off floor."""
    return doubled <= max(first, floor)


def numerical_verdict(ws: WeightSequence, symbols: WCOSymbols, N: int | None = None, k: int | None = None,
                      tol: float | None = None, floor: float | None = None) -> NumericalOutcome:
    """
    PassUnitary: both block defects below ``tol`` and not growing at 2N.
    FailCoisometry: co-isometry defect above 10·tol at N and 2N, within a factor 2.
    Inconclusive otherwise.
    """
    N = or_setting(N, "DEFAULT_N")
    k = or_setting(k, "BLOCK_K")
    tol = or_setting(tol, "TOL")
    floor = or_setting(floor, "ROUNDOFF_FLOOR")
    A = build_matrix(ws, symbols, N)
    A2 = build_matrix(ws, symbols, 2 * N)
    iso, co = isometry_defect(A, k), coisometry_defect(A, k)
    iso2, co2 = isometry_defect(A2, k), coisometry_defect(A2, k)
    logger.debug("defects N=%d: iso=%.3e co=%.3e; 2N: iso=%.3e co=%.3e", N, iso, co, iso2, co2)

    if iso < tol and co < tol and _settles(iso, iso2, floor) and _settles(co, co2, floor):
        verdict = Numerical.PASS_UNITARY
    elif co > 10 * tol and co2 > 10 * tol and 0.5 <= co2 / co <= 2.0:
        verdict = Numerical.FAIL_COISOMETRY
    else:
        verdict = Numerical.INCONCLUSIVE
    return NumericalOutcome(verdict, iso, co, iso2, co2, matrix=A)


def recurrence_series_defect(ws: WeightSequence, x_grid, terms: int | None = None) -> float:
    """
    max over x of the relative gap between Σ_{n≥1} γ(n)(n+γ(1))x^(2n) and
    Σ_{n≥1} (n+1)γ(n+1)x^(2n); vanishes exactly on H_γ.

    Both sums are taken with x² factored out, so as x → 0 the gap tends to
    the ratio of the n=1 terms instead of underflowing.
    """
    xs = np.asarray(list(x_grid), dtype=float)
    if xs.size == 0 or np.any(xs <= 0) or np.any(xs > 0.8):
        raise PreconditionError("x_grid must be a non-empty subset of (0, 0.8].")
    if terms is None:
        # x_max^(2n)·n² below 1e-18
        terms = int(math.ceil(-41.5 / (2.0 * math.log(float(xs.max()))))) + 64
    if ws.rule is None and terms + 1 > ws.n_max:
        logger.warning("%s: recurrence sums cut at n=%d by the list length", ws.label, ws.n_max - 1)
        terms = ws.n_max - 1
    if terms < 1:
        raise PreconditionError(f"{ws.label} holds too few weights for the recurrence sums.")
    gamma = ws.take(terms + 2)
    n = np.arange(1, terms + 1, dtype=float)
    lhs_coeffs = gamma[1:terms + 1] * (n + gamma[1])
    rhs_coeffs = (n + 1.0) * gamma[2:terms + 2]
    # (x²)^(n-1) from logs; terms past the first vanish cleanly for tiny x.
    powers = np.exp(2.0 * np.log(xs)[:, np.newaxis] * (n[np.newaxis, :] - 1.0))
    lhs = powers @ lhs_coeffs
    rhs = powers @ rhs_coeffs
    return float(np.max(np.abs(lhs - rhs) / np.abs(rhs)))


def random_probes(seed: int, count: int = 3, radius: float = 0.5) -> tuple:
    """``count`` points of the disk of the given radius, reproducible from ``seed``."""
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, count))
    theta = rng.uniform(0.0, 2.0 * np.pi, count)
    return tuple(complex(p) for p in r * np.exp(1j * theta))


@dataclass
class CheckParams:
    N: int | None = None
    k: int | None = None
    tol: float | None = None
    match_tol: float | None = None
    floor: float | None = None
    probes: tuple = (0.3 + 0j, 0.3j, -0.2 - 0.2j)
    radii: tuple | None = None
    angles: int | None = None
    x_grid: tuple = (0.1, 0.3, 0.5)

    def resolved(self) -> "CheckParams":
        return CheckParams(
            N=or_setting(self.N, "DEFAULT_N"), k=or_setting(self.k, "BLOCK_K"),
            tol=or_setting(self.tol, "TOL"), match_tol=or_setting(self.match_tol, "MATCH_TOL"),
            floor=or_setting(self.floor, "ROUNDOFF_FLOOR"), probes=tuple(self.probes),
            radii=tuple(or_setting(self.radii, "GRID_RADII")),
            angles=or_setting(self.angles, "GRID_ANGLES"), x_grid=tuple(self.x_grid),
        )


@dataclass
class CheckReport:
    space: dict
    symbols: dict
    N: int
    k: int
    defects: dict
    diagnostics: dict
    tolerances: dict
    verdict: Verdict
    failures: dict[str, str] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        """False when a verdict or the matrix itself could not be computed."""
        return not any(name in CORE_CONSTITUENTS for name in self.failures)

    def to_json(self) -> dict:
        agreement = self.verdict.agreement
        return {
            "version": REPORT_VERSION,
            "space": self.space,
            "symbols": self.symbols,
            "N": self.N,
            "k": self.k,
            "defects": self.defects,
            "diagnostics": self.diagnostics,
            "theoretical": self.verdict.theoretical.value,
            "numerical": self.verdict.numerical.value,
            "agreement": "n/a" if agreement is None else agreement,
            "rationale": self.verdict.rationale.to_json(),
            "tolerances": self.tolerances,
            "hypothesis": HYPOTHESIS,
        }


def _finite(value: float | None) -> float | None:
    if value is None or not math.isfinite(value):
        return None
    return float(value)


def dichotomy_report(ws: WeightSequence, symbols: WCOSymbols, params: CheckParams | None = None,
                     space_spec: str | None = None) -> CheckReport:
    """Theory, numerics and every identity defect for one (space, symbols) pair."""
    p = (params or CheckParams()).resolved()
    space_class = classify(ws)
    rationale = Rationale(space_class=str(space_class))
    failures: dict[str, str] = {}

    def attempt(name, func, *args, **kwargs):
        try:
            return func(*args, **kwargs)
        except LabError as exc:
            logger.warning("%s failed for %s on %s: %s", name, symbols.describe(), ws.label, exc)
            failures[name] = str(exc)
            return None

    theory = attempt("theoretical_verdict", theoretical_verdict, space_class, symbols, p.match_tol,
                     ws=ws, N=p.N, grid=default_grid(p.radii, p.angles))
    if theory is not None:
        theoretical, rationale = theory.verdict, theory.rationale
    else:
        theoretical = Theoretical.INDETERMINATE

    numeric = attempt("numerical_verdict", numerical_verdict, ws, symbols, p.N, p.k, p.tol, p.floor)
    numerical = numeric.verdict if numeric is not None else Numerical.INCONCLUSIVE

    if numeric is not None:
        A = numeric.matrix
    else:
        A = attempt("build_matrix", build_matrix, ws, symbols, p.N)
    adjoint = None
    if A is not None:
        values = [attempt("adjoint_kernel_defect", adjoint_kernel_defect, ws, symbols, w, p.N, min(2 * p.k, p.N),
                          matrix=A) for w in p.probes]
        if all(v is not None for v in values):
            adjoint = max(values)
    grid = default_grid(p.radii, p.angles)
    defects = {
        "isometry": _finite(numeric.isometry) if numeric else None,
        "coisometry": _finite(numeric.coisometry) if numeric else None,
        "adjoint_kernel": _finite(adjoint),
        "functional_identity": _finite(attempt(
            "functional_identity_defect", functional_identity_defect, ws, symbols,
            default_pairs(p.radii, p.angles), p.N)),
        "modulus_identity": _finite(attempt(
            "modulus_identity_defect", modulus_identity_defect, ws, symbols, grid, p.N)),
    }
    diagnostics = {
        "isometry_2N": _finite(numeric.isometry_doubled) if numeric else None,
        "coisometry_2N": _finite(numeric.coisometry_doubled) if numeric else None,
        "point_identity": _finite(attempt("point_identity_defect", point_identity_defect, ws, symbols, p.N)),
        "recurrence_series": _finite(attempt("recurrence_series_defect", recurrence_series_defect, ws, p.x_grid)),
        "univalence_margin": _finite(attempt("univalence_defect", univalence_defect, symbols, p.radii, p.angles)),
        "matrix_norm": _finite(matrix_norm(A)) if A is not None else None,
    }
    if failures:
        rationale.reasons.extend(f"failed constituent {name}: {msg}" for name, msg in failures.items())

    sigma = diagonal_sum(ws)
    space = {
        "spec": space_spec or ws.label,
        "class": str(space_class),
        "gamma1": float(ws.values[1]) if ws.n_max >= 1 else None,
        "diagonal_sum": None if sigma is None else (sigma if math.isfinite(sigma) else "inf"),
    }
    tolerances = {
        "tol": p.tol, "match_tol": p.match_tol, "roundoff_floor": p.floor,
        "grid_radii": list(p.radii), "grid_angles": p.angles,
        "probes": [format_complex(w) for w in p.probes], "x_grid": list(p.x_grid),
    }
    verdict = Verdict(theoretical=theoretical, numerical=numerical, rationale=rationale)
    return CheckReport(space=space, symbols=symbols.describe(), N=p.N, k=p.k, defects=defects,
                       diagnostics=diagnostics, tolerances=tolerances, verdict=verdict,
                       failures=failures)
