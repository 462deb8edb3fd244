from pathlib import Path

from django.core.management.base import CommandError

from core.management.base import LabCommand
from core.services.sweeps import coisometry_ladder, ladder_csv
from core.serializers import WCOCheckSerializer


def _ladder(text: str) -> list[int]:
    try:
        rungs = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CommandError(f"--ladder must be a comma-separated list of integers, got {text!r}.") from None
    if not rungs or min(rungs) < 1:
        raise CommandError("--ladder needs at least one positive truncation.")
    return rungs


def _fmt(value) -> str:
    return "n/a" if value is None else f"{value:.3e}"


class Command(LabCommand):
    help = "Predict and measure whether W_{F,phi} is co-isometric; prints the dichotomy report."
    serializer_class = WCOCheckSerializer

    def add_arguments(self, parser):
        parser.add_argument("spec")
        parser.add_argument("--phi", required=True, help="aut:lambda=<c>,a=<c> | rot:theta=<x> | series:<path>.json")
        parser.add_argument("--f", required=True, help="auto-unitary | forced | const:<c> | series:<path>.json")
        parser.add_argument("--N", type=int, dest="N")
        parser.add_argument("--k", type=int)
        parser.add_argument("--tol", type=float)
        parser.add_argument("--seed", type=int, help="Draw the adjoint-kernel probe points at random from this seed.")
        parser.add_argument("--csv-sweep", dest="csv_sweep", metavar="PATH",
                            help="Write the co-isometry defect ladder as N,defect rows ('-' for stdout).")
        parser.add_argument("--ladder", help="Comma-separated truncations of the sweep (default WCOLAB_SWEEP_LADDER).")
        self.add_json_flag(parser)

    def handle(self, *args, **opts):
        ladder = _ladder(opts["ladder"]) if opts["ladder"] else None
        ser = self.validated(
            spec=opts["spec"], phi=opts["phi"], f=opts["f"], N=opts["N"], k=opts["k"],
            tol=opts["tol"], seed=opts["seed"],
        )
        data = ser.validated_data
        sweep = None
        if opts["csv_sweep"]:
            frame = self.compute(coisometry_ladder, data["ws"], data["symbols"], ladder, data["k"])
            sweep = ladder_csv(frame)

        report = self.compute(ser.report)
        if opts["csv_sweep"] == "-":
            self.stdout.write(sweep, ending="")
        else:
            if sweep is not None:
                Path(opts["csv_sweep"]).write_text(sweep, encoding="utf-8")
            self.emit(report.to_json(), opts["json"])
        if not report.complete:
            failed = ", ".join(sorted(report.failures))
            raise CommandError(f"The check could not be completed ({failed}).")

    def render_text(self, payload):
        defects = payload["defects"]
        lines = [
            f"space: {payload['space']['spec']} [{payload['space']['class']}]",
            f"F: {payload['symbols']['F']}  phi: {payload['symbols']['phi']}  N={payload['N']} k={payload['k']}",
            *(f"{name:>20}: {_fmt(value)}" for name, value in defects.items()),
            f"theoretical: {payload['theoretical']}",
            f"numerical:   {payload['numerical']}",
            f"agreement:   {payload['agreement']}",
            *(f"  - {reason}" for reason in payload["rationale"]["reasons"]),
        ]
        return "\n".join(lines)
