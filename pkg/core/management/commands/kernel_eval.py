from core.management.base import LabCommand
from core.serializers import KernelEvalSerializer


class Command(LabCommand):
    help = "Evaluate the truncated reproducing kernel K_w(z) of a space."
    serializer_class = KernelEvalSerializer

    def add_arguments(self, parser):
        parser.add_argument("spec")
        parser.add_argument("--w", required=True, help="Complex literal <re>+<im>i with |w| < 1.")
        parser.add_argument("--z", required=True, help="Complex literal <re>+<im>i with |z| < 1.")
        parser.add_argument("--degree", type=int, help="Number of kernel terms (default WCOLAB_DEFAULT_N).")
        self.add_json_flag(parser)

    def handle(self, *args, **opts):
        ser = self.validated(spec=opts["spec"], w=opts["w"], z=opts["z"], degree=opts["degree"])
        self.emit(self.compute(ser.result), opts["json"])
