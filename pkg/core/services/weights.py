"""
Weight sequences γ(n) of weighted Hardy spaces.

A space is fixed by its kernel K_w(z) = Σ γ(n) (w̄z)ⁿ with γ(n) = ‖zⁿ‖⁻² > 0 and
γ(0) = 1. Named spaces carry a generator rule, so they can be materialized to
any length; explicit lists are final.

Note on the Gamma-ratio formula: the printed second form
``B(γ(1), n!)/(n+1+γ(1))`` does not agree with Γ(n+γ(1))/(Γ(γ(1)) n!) nor with
the recurrence (n+1)γ(n+1) = (n+γ(1))γ(n); only the latter two are used here.
"""
import enum
import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from core.conf import or_setting
from .errors import DomainError, PreconditionError

logger = logging.getLogger(__name__)

# Length materialized eagerly for named spaces; longer requests go through the rule.
DEFAULT_MATERIALIZED = 64


class Origin(str, enum.Enum):
    HARDY = "hardy"
    BERGMAN = "bergman"
    HGAMMA = "hgamma"
    DIRICHLET = "dirichlet"
    BOUNDED_LOG = "bounded-log"
    EXPLICIT = "explicit"


class Diagonal(str, enum.Enum):
    BOUNDED = "bounded"
    UNBOUNDED = "unbounded"
    UNKNOWN = "unknown"


class SpaceKind(str, enum.Enum):
    HGAMMA = "HGamma"
    BOUNDED_DIAGONAL = "BoundedDiagonal"
    UNBOUNDED_OTHER = "UnboundedOther"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class SpaceClass:
    kind: SpaceKind
    gamma: float | None = None

    @property
    def is_hgamma(self) -> bool:
        return self.kind is SpaceKind.HGAMMA

    def __str__(self) -> str:
        if self.kind is SpaceKind.HGAMMA:
            return f"HGamma({self.gamma!r})"
        return self.kind.value


@dataclass(frozen=True, eq=False)
class WeightSequence:
    """
    The sequence γ(0..n_max) of a space, plus what is known about it in closed form.

    - ``rule(n_max)`` regenerates γ(0..n_max) for named spaces (None for explicit lists).
    - ``ratio_bound(N)`` bounds γ(n+1)/γ(n) for all n ≥ N; it is what makes kernel
      tails certifiable.
    - ``diagonal_total`` is Σγ(n) when finite and known.
    """
    values: np.ndarray
    origin: Origin
    params: tuple = ()
    rule: Callable[[int], np.ndarray] | None = None
    diagonal: Diagonal = Diagonal.UNKNOWN
    diagonal_total: float | None = None
    ratio_bound: Callable[[int], float] | None = None

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        if values.size == 0:
            raise DomainError("A weight sequence needs at least γ(0).")
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            bad = int(np.argmax(~np.isfinite(values) | (values <= 0)))
            raise DomainError(f"γ({bad}) = {values[bad]!r} is not a positive real.")
        if not math.isclose(values[0], 1.0, rel_tol=0.0, abs_tol=1e-12):
            raise DomainError(f"γ(0) must be 1 (‖1‖ = 1), got {values[0]!r}.")
        values[0] = 1.0
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n_max(self) -> int:
        return self.values.size - 1

    @property
    def label(self) -> str:
        if not self.params:
            return self.origin.value
        args = ",".join(f"{k}={v!r}" for k, v in self.params)
        return f"{self.origin.value}:{args}"

    def take(self, count: int) -> np.ndarray:
        """γ(0..count-1), extending through the generator rule when needed."""
        if count <= self.values.size:
            return self.values[:count]
        if self.rule is None:
            raise DomainError(
                f"{self.label} only holds γ(0..{self.n_max}); "
                f"γ({count - 1}) was requested and the list has no generator rule."
            )
        values = self.rule(count - 1)
        values.setflags(write=False)
        return values

    def gamma(self, n: int) -> float:
        return float(self.take(n + 1)[n])

    def extended(self, n_max: int) -> "WeightSequence":
        """A copy materialized to at least ``n_max``."""
        if n_max <= self.n_max:
            return self
        return WeightSequence(
            values=self.take(n_max + 1), origin=self.origin, params=self.params,
            rule=self.rule, diagonal=self.diagonal,
            diagonal_total=self.diagonal_total, ratio_bound=self.ratio_bound,
        )

    def tail_bound(self, start: int, t: float) -> float | None:
        """
        Upper bound of Σ_{n≥start} γ(n) tⁿ for 0 ≤ t < 1, or None when the origin
        supplies no ratio bound (truncation-only).
        """
        if self.ratio_bound is None:
            return None
        if t == 0.0:
            return 0.0
        q = self.ratio_bound(start)
        if q * t >= 1.0:
            return None
        return self.gamma(start) * t ** start / (1.0 - q * t)


def _recurrence_values(gamma1: float, n_max: int) -> np.ndarray:
    n = np.arange(1, n_max + 1, dtype=float)
    return np.concatenate(([1.0], np.cumprod((n - 1.0 + gamma1) / n)))


def gamma_from_recurrence(gamma1: float, n_max: int) -> WeightSequence:
    """
    γ(0) = 1, γ(n) = γ(n-1)·(n-1+γ₁)/n: the weights of H_γ with γ = γ₁.

    Equal to Γ(n+γ₁)/(Γ(γ₁) n!) but computed multiplicatively, so large n never
    overflows.
    """
    if not (math.isfinite(gamma1) and gamma1 > 0):
        raise DomainError(f"γ(1) must be a positive real, got {gamma1!r}.")
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}.")
    return WeightSequence(
        values=_recurrence_values(gamma1, n_max),
        origin=Origin.HGAMMA,
        params=(("gamma", float(gamma1)),),
        rule=lambda m: _recurrence_values(gamma1, m),
        diagonal=Diagonal.UNBOUNDED,
        ratio_bound=lambda start: max(1.0, (start + gamma1) / (start + 1.0)),
    )


def _dirichlet_values(n_max: int) -> np.ndarray:
    return 1.0 / np.arange(1, n_max + 2, dtype=float)


def _bounded_log_values(n_max: int) -> np.ndarray:
    values = np.ones(n_max + 1)
    n = np.arange(2, n_max + 1, dtype=float)
    values[2:] = 1.0 / (n * (n - 1.0))
    return values


def _with_origin(ws: WeightSequence, origin: Origin, params: tuple) -> WeightSequence:
    return WeightSequence(
        values=ws.values, origin=origin, params=params, rule=ws.rule,
        diagonal=ws.diagonal, ratio_bound=ws.ratio_bound,
    )


def named_space(name: str, n_max: int = DEFAULT_MATERIALIZED, **params) -> WeightSequence:
    """
    Build a named space.

    - ``hardy``: γ(n) = 1
    - ``bergman`` (``alpha``): A²_α, i.e. H_γ with γ(1) = α + 2
    - ``hgamma`` (``gamma``): H_γ
    - ``dirichlet`` / ``dirichlet_classical``: γ(n) = 1/(n+1)
    - ``bounded-log`` / ``bounded_log_example``: γ(0)=γ(1)=1, γ(n) = 1/(n(n-1)),
      kernel 1 + 2t − (1−t)log(1/(1−t)) with t = w̄z
    - ``explicit`` (``values``): a validated copy of the given list
    """
    key = name.replace("_", "-").lower()
    if key == "hardy":
        return _with_origin(gamma_from_recurrence(1.0, n_max), Origin.HARDY, ())
    if key == "bergman":
        alpha = float(params.get("alpha", 0.0))
        if not alpha > -1.0:
            raise DomainError(f"bergman needs alpha > -1, got {alpha!r}.")
        return _with_origin(
            gamma_from_recurrence(alpha + 2.0, n_max), Origin.BERGMAN, (("alpha", alpha),)
        )
    if key == "hgamma":
        if "gamma" not in params:
            raise DomainError("hgamma needs a gamma parameter.")
        return gamma_from_recurrence(float(params["gamma"]), n_max)
    if key in ("dirichlet", "dirichlet-classical"):
        return WeightSequence(
            values=_dirichlet_values(n_max), origin=Origin.DIRICHLET,
            rule=_dirichlet_values, diagonal=Diagonal.UNBOUNDED,
            ratio_bound=lambda start: 1.0,
        )
    if key in ("bounded-log", "bounded-log-example"):
        return WeightSequence(
            values=_bounded_log_values(n_max), origin=Origin.BOUNDED_LOG,
            rule=_bounded_log_values, diagonal=Diagonal.BOUNDED,
            # 1 + 1 + Σ_{n≥2} 1/(n(n-1)) telescopes to 3
            diagonal_total=3.0,
            ratio_bound=lambda start: 1.0,
        )
    if key == "explicit":
        values = params.get("values")
        if values is None:
            raise DomainError("explicit needs a list of values.")
        return WeightSequence(values=np.asarray(values, dtype=float), origin=Origin.EXPLICIT)
    raise DomainError(f"Unknown space {name!r}.")


def recurrence_violation(ws: WeightSequence, n_check: int, rel_tol: float) -> tuple[int, float] | None:
    """
    First n in 1..n_check where (n+1)γ(n+1) = (n+γ(1))γ(n) fails beyond ``rel_tol``,
    with its relative gap; None when the recurrence holds throughout.
    """
    values = ws.take(n_check + 2)
    n = np.arange(1, n_check + 1, dtype=float)
    lhs = (n + 1.0) * values[2:n_check + 2]
    rhs = (n + values[1]) * values[1:n_check + 1]
    gaps = np.abs(lhs - rhs) / lhs
    failing = np.flatnonzero(gaps > rel_tol)
    if failing.size == 0:
        return None
    first = int(failing[0])
    return first + 1, float(gaps[first])


def classify(ws: WeightSequence, n_check: int | None = None, rel_tol: float | None = None) -> SpaceClass:
    """
    HGamma(γ(1)) when the H_γ recurrence holds up to ``n_check``; otherwise the
    diagonal behaviour when it is known for the origin; otherwise Undetermined.
    """
    n_check = or_setting(n_check, "N_CHECK")
    rel_tol = or_setting(rel_tol, "REL_TOL")
    if n_check < 2:
        raise PreconditionError(f"n_check must be at least 2, got {n_check}.")

    if ws.rule is None and ws.n_max < n_check + 1:
        available = ws.n_max - 1
        logger.warning(
            "%s holds %d weights; recurrence checked up to n=%d instead of %d",
            ws.label, ws.n_max + 1, max(available, 0), n_check,
        )
        n_check = available
    if n_check >= 1 and recurrence_violation(ws, n_check, rel_tol) is None:
        return SpaceClass(SpaceKind.HGAMMA, float(ws.values[1]))

    if ws.diagonal is Diagonal.BOUNDED:
        return SpaceClass(SpaceKind.BOUNDED_DIAGONAL)
    if ws.diagonal is Diagonal.UNBOUNDED:
        return SpaceClass(SpaceKind.UNBOUNDED_OTHER)
    logger.warning(
        "%s: boundedness of Σγ(n) cannot be decided from finitely many terms", ws.label
    )
    return SpaceClass(SpaceKind.UNDETERMINED)


def monomial_norm(ws: WeightSequence, n: int) -> float:
    """‖zⁿ‖ = γ(n)^(-1/2)."""
    return 1.0 / math.sqrt(ws.gamma(n))


def beta(ws: WeightSequence, n: int) -> float:
    """β(n) of the H²(β) notation; γ(n) = 1/β(n)²."""
    return monomial_norm(ws, n)


def diagonal_sum(ws: WeightSequence) -> float | None:
    """Σγ(n) when known: finite closed form, ``inf`` when divergent, else None."""
    if ws.diagonal is Diagonal.BOUNDED:
        return ws.diagonal_total
    if ws.diagonal is Diagonal.UNBOUNDED:
        return math.inf
    return None
