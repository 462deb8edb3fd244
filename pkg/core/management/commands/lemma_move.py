from core.management.base import LabCommand
from core.serializers import LemmaMoveSerializer


class Command(LabCommand):
    help = (
        "Find a unimodular tau moving the zero of the squared automorphism "
        "phi_{tau*lambda, conj(tau)*a} to radius b; optionally check the squared WCO."
    )
    serializer_class = LemmaMoveSerializer

    def add_arguments(self, parser):
        parser.add_argument("--lambda", dest="lam", required=True, help="Unimodular complex literal.")
        parser.add_argument("--a", required=True, help="Complex literal with 0 < |a| < 1.")
        parser.add_argument("--b", type=float, required=True, help="Target radius, 0 <= b <= |a|.")
        parser.add_argument("--space", dest="spec", help="Also measure the squared WCO on this space.")
        parser.add_argument("--f", default="auto-unitary", help="Weight of the seed WCO (default auto-unitary).")
        parser.add_argument("--N", type=int, dest="N")
        parser.add_argument("--k", type=int)
        self.add_json_flag(parser)

    def handle(self, *args, **opts):
        ser = self.validated(
            lam=opts["lam"], a=opts["a"], b=opts["b"], spec=opts["spec"], f=opts["f"],
            N=opts["N"], k=opts["k"],
        )
        self.emit(self.compute(ser.result), opts["json"])
