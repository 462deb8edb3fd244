# core/serializers.py
"""
Validation layer shared by the management commands and the HTTP API.

Every literal is parsed and every numeric flag range-checked in ``validate``;
``result()`` then runs the computation on the validated inputs.
"""
import math

from rest_framework import serializers

from core.conf import lab_setting
from .models import CheckRun
from .services.errors import LabError
from .services.kernel import kernel_closed_form, kernel_norm, kernel_value
from .services.literals import parse_complex, parse_space, parse_symbols
from .services.moebius import Automorphism, find_tau_for_target_radius, format_complex, point_moving_square
from .services.operator import (
    build_matrix, coisometry_defect, isometry_defect, lemma_square, matrix_norm,
)
from .services.verdict import CheckParams, CheckReport, dichotomy_report, random_probes
from .services.weights import beta, classify, diagonal_sum, recurrence_violation


# ───────────────── Helpers ─────────────────
def _lab(func, *args, **kwargs):
    """Run a service call, turning its LabError into a field-less ValidationError."""
    try:
        return func(*args, **kwargs)
    except LabError as exc:
        raise serializers.ValidationError(str(exc))


def _json_sum(value):
    if value is None:
        return None
    return value if math.isfinite(value) else "inf"


def flatten_errors(errors) -> str:
    """DRF error details as a single line."""
    if isinstance(errors, dict):
        parts = []
        for field, detail in errors.items():
            text = flatten_errors(detail)
            parts.append(text if field == "non_field_errors" else f"{field}: {text}")
        return "; ".join(parts)
    if isinstance(errors, (list, tuple)):
        return "; ".join(flatten_errors(e) for e in errors)
    return " ".join(str(errors).split())


class TruncationMixin:
    """Checks N against WCOLAB_MAX_N and the block size against N."""

    def validate_N(self, value):
        if value is not None and value > lab_setting("MAX_N"):
            raise serializers.ValidationError(
                f"N = {value} exceeds the configured maximum {lab_setting('MAX_N')} (WCOLAB_MAX_N)."
            )
        return value

    def validate_tol(self, value):
        if value is not None and not value > 0:
            raise serializers.ValidationError("tol must be positive.")
        return value

    def resolve_truncation(self, attrs):
        attrs["N"] = attrs.get("N") or lab_setting("DEFAULT_N")
        attrs["k"] = attrs.get("k") or lab_setting("BLOCK_K")
        if attrs["k"] > attrs["N"]:
            raise serializers.ValidationError({"k": f"k = {attrs['k']} must not exceed N = {attrs['N']}."})
        return attrs


# ───────────────── space-info ─────────────────
class SpaceInfoSerializer(TruncationMixin, serializers.Serializer):
    spec = serializers.CharField()
    n = serializers.IntegerField(min_value=1, required=False, default=10)
    tol = serializers.FloatField(required=False, allow_null=True, default=None)

    def validate(self, attrs):
        attrs["ws"] = _lab(parse_space, attrs["spec"])
        return attrs

    def result(self) -> dict:
        data = self.validated_data
        ws, tol = data["ws"], data["tol"]
        space = _lab(classify, ws, rel_tol=tol)
        count = data["n"] if ws.rule is not None else min(data["n"], ws.n_max + 1)
        gamma = _lab(ws.take, count)
        n_check = lab_setting("N_CHECK") if ws.rule is not None else max(ws.n_max - 1, 0)
        violation = None
        if n_check >= 1:
            violation = recurrence_violation(ws, n_check, tol or lab_setting("REL_TOL"))
        return {
            "spec": data["spec"],
            "class": str(space),
            "gamma1": float(ws.values[1]) if ws.n_max >= 1 else None,
            "diagonal_sum": _json_sum(diagonal_sum(ws)),
            "recurrence_violation": None if violation is None else {
                "n": violation[0], "relative_gap": violation[1],
            },
            "weights": [
                {"n": n, "gamma": float(g), "beta": beta(ws, n)} for n, g in enumerate(gamma)
            ],
        }


# ───────────────── kernel-eval ─────────────────
class KernelEvalSerializer(TruncationMixin, serializers.Serializer):
    spec = serializers.CharField()
    w = serializers.CharField()
    z = serializers.CharField()
    degree = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)

    def validate(self, attrs):
        attrs["ws"] = _lab(parse_space, attrs["spec"])
        attrs["w_value"] = _lab(parse_complex, attrs["w"])
        attrs["z_value"] = _lab(parse_complex, attrs["z"])
        for name in ("w_value", "z_value"):
            if not abs(attrs[name]) < 1:
                raise serializers.ValidationError({name[0]: "must lie in the open unit disk."})
        attrs["degree"] = self.validate_N(attrs.get("degree")) or lab_setting("DEFAULT_N")
        return attrs

    def result(self) -> dict:
        data = self.validated_data
        ws, w, z, N = data["ws"], data["w_value"], data["z_value"], data["degree"]
        estimate = _lab(kernel_value, ws, w, z, N)
        closed = kernel_closed_form(ws, w, z)
        return {
            "spec": data["spec"],
            "w": format_complex(w),
            "z": format_complex(z),
            "degree": N,
            "value": format_complex(estimate.value),
            "tail_bound": estimate.tail,
            "truncation_only": estimate.truncation_only,
            "closed_form": None if closed is None else format_complex(closed),
            "closed_form_gap": None if closed is None else abs(estimate.value - closed),
            "norm_w": _lab(kernel_norm, ws, w, N),
        }


# ───────────────── wco-build ─────────────────
class WCOInputSerializer(TruncationMixin, serializers.Serializer):
    spec = serializers.CharField()
    phi = serializers.CharField()
    f = serializers.CharField()
    N = serializers.IntegerField(min_value=2, required=False, allow_null=True, default=None)
    k = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)

    def validate(self, attrs):
        attrs = self.resolve_truncation(attrs)
        ws = _lab(parse_space, attrs["spec"])
        symbols = _lab(parse_symbols, attrs["f"], attrs["phi"])
        # Materializes F now, so auto-unitary on a non-H_gamma space fails here.
        _lab(symbols.weight_series, ws, attrs["N"])
        attrs["ws"], attrs["symbols"] = ws, symbols
        return attrs


class WCOBuildSerializer(WCOInputSerializer):
    def result(self) -> dict:
        data = self.validated_data
        ws, symbols, N, k = data["ws"], data["symbols"], data["N"], data["k"]
        A = _lab(build_matrix, ws, symbols, N)
        block = A.entries[:k, :k]
        return {
            "space": data["spec"],
            "symbols": symbols.describe(),
            "N": N,
            "k": k,
            "block": {"re": block.real.tolist(), "im": block.imag.tolist()},
            "isometry": isometry_defect(A, k),
            "coisometry": coisometry_defect(A, k),
            "matrix_norm": matrix_norm(A),
        }


# ───────────────── wco-check / CheckRun ─────────────────
class WCOCheckSerializer(WCOInputSerializer):
    tol = serializers.FloatField(required=False, allow_null=True, default=None)
    seed = serializers.IntegerField(min_value=0, required=False, allow_null=True, default=None)

    def validate(self, attrs):
        # The numerical verdict also builds the 2N truncation.
        limit = lab_setting("MAX_N") // 2
        N = attrs.get("N") or lab_setting("DEFAULT_N")
        if N > limit:
            raise serializers.ValidationError(
                {"N": f"N = {N} exceeds {limit}, half the configured maximum (WCOLAB_MAX_N), for a check."}
            )
        return super().validate(attrs)

    def params(self) -> CheckParams:
        data = self.validated_data
        params = CheckParams(N=data["N"], k=data["k"], tol=data["tol"])
        if data["seed"] is not None:
            params.probes = random_probes(data["seed"])
        return params

    def report(self) -> CheckReport:
        data = self.validated_data
        return dichotomy_report(data["ws"], data["symbols"], self.params(), space_spec=data["spec"])

    def result(self) -> dict:
        return self.report().to_json()


class CheckRunSerializer(serializers.ModelSerializer):
    class Meta:
        model = CheckRun
        fields = (
            "id", "space_spec", "phi", "f", "N", "k", "tol",
            "theoretical", "numerical", "agreement", "report", "created_at",
        )
        read_only_fields = ("theoretical", "numerical", "agreement", "report", "created_at")
        extra_kwargs = {"N": {"required": False}, "k": {"required": False}, "tol": {"required": False}}

    def validate(self, attrs):
        check = WCOCheckSerializer(data={
            "spec": attrs["space_spec"], "phi": attrs["phi"], "f": attrs["f"],
            "N": attrs.get("N"), "k": attrs.get("k"), "tol": attrs.get("tol"),
        })
        if not check.is_valid():
            raise serializers.ValidationError(check.errors)
        attrs["_check"] = check
        return attrs

    def create(self, validated_data):
        check = validated_data.pop("_check")
        report = check.result()
        agreement = report["agreement"]
        return CheckRun.objects.create(
            owner=validated_data.get("owner"),
            space_spec=validated_data["space_spec"],
            phi=validated_data["phi"],
            f=validated_data["f"],
            N=report["N"],
            k=report["k"],
            tol=report["tolerances"]["tol"],
            theoretical=report["theoretical"],
            numerical=report["numerical"],
            agreement=agreement if agreement == "n/a" else str(agreement).lower(),
            report=report,
        )


# ───────────────── lemma-move ─────────────────
class LemmaMoveSerializer(TruncationMixin, serializers.Serializer):
    # ``lambda`` is a keyword; the field is renamed in to_internal_value.
    lam = serializers.CharField()
    a = serializers.CharField()
    b = serializers.FloatField()
    spec = serializers.CharField(required=False, allow_null=True, default=None)
    f = serializers.CharField(required=False, default="auto-unitary")
    N = serializers.IntegerField(min_value=2, required=False, allow_null=True, default=None)
    k = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)

    def to_internal_value(self, data):
        if hasattr(data, "copy"):
            data = data.copy()
        if "lambda" in data and "lam" not in data:
            data["lam"] = data.pop("lambda")
            if isinstance(data["lam"], list):
                data["lam"] = data["lam"][0]
        return super().to_internal_value(data)

    def validate(self, attrs):
        attrs = self.resolve_truncation(attrs)
        attrs["lam_value"] = _lab(parse_complex, attrs["lam"])
        attrs["a_value"] = _lab(parse_complex, attrs["a"])
        seed = _lab(Automorphism, attrs["lam_value"], attrs["a_value"])
        if attrs["a_value"] == 0:
            raise serializers.ValidationError({"a": "The point-moving construction needs a != 0."})
        if not 0.0 <= attrs["b"] <= abs(seed.a):
            raise serializers.ValidationError(
                {"b": f"b must lie in [0, |a|] = [0, {abs(seed.a)!r}], got {attrs['b']!r}."}
            )
        attrs["seed"] = seed
        if attrs.get("spec"):
            attrs["ws"] = _lab(parse_space, attrs["spec"])
            phi_literal = f"aut:lambda={format_complex(seed.lam)},a={format_complex(seed.a)}"
            attrs["symbols"] = _lab(parse_symbols, attrs["f"], phi_literal)
        return attrs

    def result(self) -> dict:
        data = self.validated_data
        seed, b = data["seed"], data["b"]
        tau = _lab(find_tau_for_target_radius, seed.lam, seed.a, b)
        payload = {
            "lambda": format_complex(seed.lam),
            "a": format_complex(seed.a),
            "b": b,
            "tau": format_complex(tau),
        }
        squared = point_moving_square(seed.lam, seed.a, tau)
        payload.update({"mu": format_complex(squared.lam), "c": format_complex(squared.a)})
        payload["residual"] = abs(abs(squared.a) - b)
        if "ws" not in data:
            return payload
        ws, symbols, N, k = data["ws"], data["symbols"], data["N"], data["k"]
        lemma = _lab(lemma_square, ws, symbols.F, seed.lam, seed.a, tau, N)
        A = _lab(build_matrix, ws, lemma.symbols(), N)
        payload.update({
            "space": data["spec"],
            "N": N,
            "k": k,
            "square_coisometry": coisometry_defect(A, k),
        })
        return payload
