from core.management.base import LabCommand
from core.serializers import SpaceInfoSerializer


class Command(LabCommand):
    help = "Classify a weighted Hardy space and list its first weights γ(n) and β(n)."
    serializer_class = SpaceInfoSerializer

    def add_arguments(self, parser):
        parser.add_argument("spec", help="hardy | bergman:alpha=<x> | hgamma:gamma=<x> | dirichlet | bounded-log | seq:<path>.json")
        parser.add_argument("--n", type=int, default=10, help="Number of weights to list.")
        parser.add_argument("--tol", type=float, help="Relative tolerance of the H_gamma recurrence test.")
        self.add_json_flag(parser)

    def handle(self, *args, **opts):
        ser = self.validated(spec=opts["spec"], n=opts["n"], tol=opts["tol"])
        self.emit(self.compute(ser.result), opts["json"])

    def render_text(self, payload):
        lines = [
            f"space: {payload['spec']}",
            f"class: {payload['class']}",
            f"gamma(1): {payload['gamma1']}",
            f"sum of gamma(n): {'unknown' if payload['diagonal_sum'] is None else payload['diagonal_sum']}",
        ]
        violation = payload["recurrence_violation"]
        if violation:
            lines.append(f"recurrence fails first at n={violation['n']} (relative gap {violation['relative_gap']:.6g})")
        lines.append(f"{'n':>4}  {'gamma(n)':>22}  {'beta(n)':>22}")
        lines += [f"{row['n']:>4}  {row['gamma']:>22.15g}  {row['beta']:>22.15g}" for row in payload["weights"]]
        return "\n".join(lines)
