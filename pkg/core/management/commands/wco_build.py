from core.management.base import LabCommand
from core.serializers import WCOBuildSerializer


class Command(LabCommand):
    help = "Build the truncated matrix of W_{F,phi} and print its leading block and defects."
    serializer_class = WCOBuildSerializer

    def add_arguments(self, parser):
        parser.add_argument("spec")
        parser.add_argument("--phi", required=True, help="aut:lambda=<c>,a=<c> | rot:theta=<x> | series:<path>.json")
        parser.add_argument("--f", required=True, help="auto-unitary | forced | const:<c> | series:<path>.json")
        parser.add_argument("--N", type=int, dest="N")
        parser.add_argument("--k", type=int)
        self.add_json_flag(parser)

    def handle(self, *args, **opts):
        ser = self.validated(spec=opts["spec"], phi=opts["phi"], f=opts["f"], N=opts["N"], k=opts["k"])
        self.emit(self.compute(ser.result), opts["json"])

    def render_text(self, payload):
        lines = [
            f"space: {payload['space']}  F: {payload['symbols']['F']}  phi: {payload['symbols']['phi']}",
            f"N={payload['N']} k={payload['k']}",
            f"isometry defect:   {payload['isometry']:.3e}",
            f"coisometry defect: {payload['coisometry']:.3e}",
            f"norm of truncation: {payload['matrix_norm']:.6g}",
        ]
        re_rows, im_rows = payload["block"]["re"], payload["block"]["im"]
        for re_row, im_row in zip(re_rows[:6], im_rows[:6]):
            lines.append("  ".join(f"{complex(x, y):.4f}" for x, y in zip(re_row[:6], im_row[:6])))
        return "\n".join(lines)
