"""
Parsers for the textual inputs shared by the management commands and the API.

    space:   hardy | bergman:alpha=<x> | hgamma:gamma=<x> | dirichlet | bounded-log | seq:<path>.json
    phi:     aut:lambda=<c>,a=<c> | rot:theta=<radians> | series:<path>.json
    F:       auto-unitary[:nu=<c>] | forced[:nu=<c>] | const:<c> | series:<path>.json
    complex: <re>+<im>i (no spaces), or a bare real
"""
import json
import logging
import math
from pathlib import Path

import numpy as np

from .errors import LabError, SpecError
from .moebius import Automorphism, unimodular
from .operator import CanonicalWeight, ForcedWeight, WCOSymbols, WeightSymbol, SelfMap
from .series import TruncatedSeries
from .weights import WeightSequence, named_space

logger = logging.getLogger(__name__)

NAMED_SPACES = ("hardy", "bergman", "hgamma", "dirichlet", "bounded-log")


def parse_complex(text: str) -> complex:
    text = (text or "").strip()
    if not text or " " in text:
        raise SpecError(f"Invalid complex literal {text!r}; expected <re>+<im>i.")
    try:
        value = complex(text[:-1] + "j") if text.endswith("i") else complex(float(text))
    except ValueError:
        raise SpecError(f"Invalid complex literal {text!r}; expected <re>+<im>i.") from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise SpecError(f"Complex literal {text!r} is not finite.")
    return value


def parse_float(text: str, what: str) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise SpecError(f"{what} must be a real number, got {text!r}.") from None
    if not math.isfinite(value):
        raise SpecError(f"{what} must be finite, got {text!r}.")
    return value


def _key_values(body: str, allowed: set[str], literal: str) -> dict[str, str]:
    pairs = {}
    for chunk in filter(None, body.split(",")):
        key, sep, value = chunk.partition("=")
        if not sep or key not in allowed:
            raise SpecError(f"Unexpected parameter {chunk!r} in {literal!r}.")
        pairs[key] = value
    return pairs


def _read_json(path: str | Path, what: str) -> dict:
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise SpecError(f"Cannot read {what} file {str(path)!r}: {exc.strerror}.") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{what} file {str(path)!r} is not valid JSON: {exc.msg}.") from None
    if not isinstance(payload, dict):
        raise SpecError(f"{what} file {str(path)!r} must hold a JSON object.")
    return payload


def load_series(path: str | Path) -> TruncatedSeries:
    """``{"re": [...], "im": [...]}`` of equal length."""
    payload = _read_json(path, "series")
    re_part, im_part = payload.get("re"), payload.get("im")
    if not isinstance(re_part, list) or not isinstance(im_part, list):
        raise SpecError("A series file needs the lists 're' and 'im'.")
    if len(re_part) != len(im_part) or not re_part:
        raise SpecError("'re' and 'im' must be non-empty and of equal length.")
    try:
        coeffs = np.asarray(re_part, dtype=float) + 1j * np.asarray(im_part, dtype=float)
    except (TypeError, ValueError):
        raise SpecError("Series coefficients must be numbers.") from None
    if not np.all(np.isfinite(coeffs)):
        raise SpecError("Series coefficients must be finite.")
    return TruncatedSeries(coeffs)


def load_weights(path: str | Path) -> WeightSequence:
    """``{"gamma": [1.0, ...], "comment": "..."}``; γ(0) must be 1."""
    payload = _read_json(path, "weight sequence")
    values = payload.get("gamma")
    if not isinstance(values, list) or not values:
        raise SpecError("A weight sequence file needs a non-empty list 'gamma'.")
    if "comment" in payload and not isinstance(payload["comment"], str):
        raise SpecError("'comment' must be a string.")
    try:
        values = [float(v) for v in values]
    except (TypeError, ValueError):
        raise SpecError("Weights must be numbers.") from None
    try:
        return named_space("explicit", values=values)
    except LabError as exc:
        raise SpecError(str(exc)) from None


def parse_space(spec: str, n_max: int | None = None) -> WeightSequence:
    spec = (spec or "").strip()
    kind, _, body = spec.partition(":")
    extra = {} if n_max is None else {"n_max": n_max}
    if kind == "seq":
        if not body:
            raise SpecError("seq needs a path: seq:<path>.json.")
        return load_weights(body)
    if kind not in NAMED_SPACES:
        raise SpecError(f"Unknown space {spec!r}; expected one of {', '.join(NAMED_SPACES)} or seq:<path>.")
    allowed = {"bergman": {"alpha"}, "hgamma": {"gamma"}}.get(kind, set())
    params = {key: parse_float(value, key) for key, value in _key_values(body, allowed, spec).items()}
    if kind == "hgamma" and "gamma" not in params:
        raise SpecError("hgamma needs gamma: hgamma:gamma=<float>.")
    if kind == "bergman" and "alpha" not in params:
        raise SpecError("bergman needs alpha: bergman:alpha=<float>.")
    try:
        return named_space(kind, **extra, **params)
    except LabError as exc:
        raise SpecError(str(exc)) from None


def parse_automorphism(text: str) -> Automorphism:
    kind, _, body = (text or "").strip().partition(":")
    if kind == "rot":
        params = _key_values(body, {"theta"}, text)
        if "theta" not in params:
            raise SpecError("rot needs theta: rot:theta=<radians>.")
        return Automorphism.rotation_by(parse_float(params["theta"], "theta"))
    if kind == "aut":
        params = _key_values(body, {"lambda", "a"}, text)
        if "lambda" not in params:
            raise SpecError("aut needs lambda: aut:lambda=<re>+<im>i,a=<re>+<im>i.")
        lam = parse_complex(params["lambda"])
        a = parse_complex(params.get("a", "0"))
        try:
            return Automorphism(lam, a)
        except LabError as exc:
            raise SpecError(str(exc)) from None
    raise SpecError(f"Unknown automorphism literal {text!r}; expected aut:... or rot:theta=...")


def parse_phi(text: str) -> SelfMap:
    kind, _, body = (text or "").strip().partition(":")
    if kind == "series":
        return load_series(body)
    return parse_automorphism(text)


def parse_weight(text: str) -> WeightSymbol:
    kind, _, body = (text or "").strip().partition(":")
    if kind in ("auto-unitary", "forced"):
        params = _key_values(body, {"nu"}, text)
        try:
            nu = unimodular(parse_complex(params["nu"]), "nu") if "nu" in params else 1.0
        except LabError as exc:
            raise SpecError(str(exc)) from None
        return CanonicalWeight(nu) if kind == "auto-unitary" else ForcedWeight(nu)
    if kind == "const":
        return TruncatedSeries.constant(parse_complex(body))
    if kind == "series":
        return load_series(body)
    raise SpecError(f"Unknown weight literal {text!r}; expected auto-unitary, forced, const:<c> or series:<path>.")


def parse_symbols(f_text: str, phi_text: str) -> WCOSymbols:
    """Symbols labelled by the literals they were parsed from."""
    try:
        return WCOSymbols(F=parse_weight(f_text), phi=parse_phi(phi_text), F_label=f_text, phi_label=phi_text)
    except SpecError:
        raise
    except LabError as exc:
        raise SpecError(str(exc)) from None
