import io
import logging

from django.http import HttpResponse
from django.template.loader import render_to_string

from rest_framework import status, viewsets
from rest_framework.decorators import action
from rest_framework.exceptions import ValidationError
from rest_framework.negotiation import BaseContentNegotiation
from rest_framework.permissions import AllowAny, IsAuthenticated
from rest_framework.renderers import JSONRenderer
from rest_framework.response import Response
from rest_framework.views import APIView

from core.conf import DEFAULTS, lab_setting
from .models import CheckRun
from .serializers import (
    CheckRunSerializer, KernelEvalSerializer, LemmaMoveSerializer, SpaceInfoSerializer,
    WCOInputSerializer, flatten_errors,
)
from .services.errors import LabError
from .services.sweeps import coisometry_ladder, ladder_csv, ladder_xlsx
from .services.verdict import HYPOTHESIS, REPORT_VERSION

logger = logging.getLogger(__name__)

XLSX_TYPE = "application/vnd.openxmlformats-officedocument.spreadsheetml.sheet"


def _bad_request(errors) -> Response:
    return Response({"detail": flatten_errors(errors)}, status=status.HTTP_400_BAD_REQUEST)


def _attachment(content: bytes | str, content_type: str, filename: str) -> HttpResponse:
    resp = HttpResponse(content, content_type=content_type)
    resp["Content-Disposition"] = f'attachment; filename="{filename}"'
    resp["X-Content-Type-Options"] = "nosniff"
    resp["Cache-Control"] = "no-store"
    return resp


class PassthroughNegotiation(BaseContentNegotiation):
    """
    Ignores the Accept header and the ``format`` query parameter; file actions
    answer with an HttpResponse and fall back to JSON only for errors.
    """
    def select_renderer(self, request, renderers, format_suffix=None):
        renderer = renderers[0]
        return (renderer, renderer.media_type)


# ---------------- Scoped mixin (per user) ----------------
class OwnedQuerysetMixin:
    """Filters by owner = request.user."""
    owner_field = "owner"

    def get_queryset(self):
        qs = super().get_queryset()
        user = self.request.user
        if not user or not user.is_authenticated:
            return qs.none()
        return qs.filter(**{self.owner_field: user})

    def perform_create(self, serializer):
        serializer.save(**{self.owner_field: self.request.user})


# --------------- Public config ---------------
class PublicConfigAPIView(APIView):
    """Laboratory defaults and report schema; no authentication."""
    permission_classes = [AllowAny]
    authentication_classes = []

    def get(self, request, *args, **kwargs):
        return Response({
            "app": "wcolab",
            "report_version": REPORT_VERSION,
            "hypothesis": HYPOTHESIS,
            "defaults": {name: lab_setting(name) for name in DEFAULTS},
            "spaces": ["hardy", "bergman:alpha=<x>", "hgamma:gamma=<x>", "dirichlet", "bounded-log"],
        }, status=200)


# --------------- Stateless computations ---------------
class LabComputationView(APIView):
    """Validates the input with ``serializer_class`` and answers ``result()``."""
    permission_classes = [IsAuthenticated]
    serializer_class = None

    def respond(self, data):
        ser = self.serializer_class(data=data)
        if not ser.is_valid():
            return _bad_request(ser.errors)
        try:
            return Response(ser.result(), status=200)
        except ValidationError as exc:
            return _bad_request(exc.detail)
        except LabError as exc:
            return _bad_request(str(exc))


class SpaceInfoView(LabComputationView):
    serializer_class = SpaceInfoSerializer

    def get(self, request):
        return self.respond(request.query_params.dict())


class KernelEvalView(LabComputationView):
    serializer_class = KernelEvalSerializer

    def get(self, request):
        return self.respond(request.query_params.dict())


class LemmaMoveView(LabComputationView):
    serializer_class = LemmaMoveSerializer

    def post(self, request):
        return self.respond(request.data)


# --------------- Check runs (scoped per user) ---------------
class CheckRunViewSet(OwnedQuerysetMixin, viewsets.ModelViewSet):
    queryset = CheckRun.objects.all()
    serializer_class = CheckRunSerializer
    permission_classes = [IsAuthenticated]
    filterset_fields = ("theoretical", "numerical", "agreement")
    http_method_names = ["get", "post", "delete", "head", "options"]

    def create(self, request, *args, **kwargs):
        serializer = self.get_serializer(data=request.data)
        if not serializer.is_valid():
            return _bad_request(serializer.errors)
        self.perform_create(serializer)
        logger.info("check run %s: %s", serializer.instance.pk, serializer.instance)
        return Response(serializer.data, status=status.HTTP_201_CREATED)

    def _inputs(self, run: CheckRun) -> WCOInputSerializer:
        ser = WCOInputSerializer(data={"spec": run.space_spec, "phi": run.phi, "f": run.f, "N": run.N, "k": run.k})
        ser.is_valid(raise_exception=True)
        return ser

    # ---------- co-isometry defect ladder ----------
    @action(detail=True, methods=["get"], url_path="sweep",
            renderer_classes=[JSONRenderer], content_negotiation_class=PassthroughNegotiation)
    def sweep(self, request, pk=None):
        run = self.get_object()
        kind = (request.query_params.get("format") or "csv").strip().lower()
        if kind not in ("csv", "xlsx"):
            return _bad_request("format must be csv or xlsx.")
        ladder = request.query_params.get("ladder")
        try:
            rungs = [int(x) for x in ladder.split(",") if x.strip()] if ladder else None
        except ValueError:
            return _bad_request("ladder must be a comma-separated list of integers.")
        if rungs is not None and (not rungs or min(rungs) < 1 or max(rungs) > lab_setting("MAX_N")):
            return _bad_request(f"ladder truncations must lie in [1, {lab_setting('MAX_N')}].")

        data = self._inputs(run).validated_data
        try:
            frame = coisometry_ladder(data["ws"], data["symbols"], rungs, data["k"])
        except LabError as exc:
            return _bad_request(str(exc))
        if kind == "csv":
            return _attachment(ladder_csv(frame), "text/csv", f"check-{run.pk}-sweep.csv")
        return _attachment(ladder_xlsx(frame), XLSX_TYPE, f"check-{run.pk}-sweep.xlsx")

    # ---------- PDF report ----------
    @action(detail=True, methods=["get"], url_path="pdf",
            renderer_classes=[JSONRenderer], content_negotiation_class=PassthroughNegotiation)
    def pdf(self, request, pk=None):
        run = self.get_object()
        report = run.report or {}
        html = render_to_string("core/wco_report.html", {
            "run": run,
            "report": report,
            "defects": sorted((report.get("defects") or {}).items()),
            "diagnostics": sorted((report.get("diagnostics") or {}).items()),
            "reasons": (report.get("rationale") or {}).get("reasons", []),
        })
        from xhtml2pdf import pisa

        buf = io.BytesIO()
        result = pisa.CreatePDF(html, dest=buf, encoding="utf-8")
        if result.err:
            logger.error("xhtml2pdf failed for check run %s (%s errors)", run.pk, result.err)
            return Response({"detail": "The PDF report could not be rendered."},
                            status=status.HTTP_500_INTERNAL_SERVER_ERROR)
        pdf_bytes = buf.getvalue()
        resp = _attachment(pdf_bytes, "application/pdf", f"check-{run.pk}.pdf")
        resp["Content-Length"] = str(len(pdf_bytes))
        return resp
