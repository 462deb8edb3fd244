import itertools

from django.core.management.base import CommandError

from core.management.base import LabCommand
from core.serializers import WCOCheckSerializer

UNITARY_GAMMAS = ("0.5", "1", "2", "3")
UNITARY_ZEROS = ("0.3+0i", "0+0.6i")
UNITARY_LAMBDAS = ("1+0i", "0+1i")
OTHER_SPACES = ("dirichlet", "bounded-log")
MOVED_AUT = "aut:lambda=1+0i,a=0.5+0i"
ROTATION = "rot:theta=0.7"


def demo_cases(quick: bool = False) -> list[tuple[str, str, str, str]]:
    """(group, space, phi, F) for every case of the demonstration."""
    unitary = [
        ("unitary-family", f"hgamma:gamma={g}", f"aut:lambda={lam},a={a}", "auto-unitary")
        for g, a, lam in itertools.product(UNITARY_GAMMAS, UNITARY_ZEROS, UNITARY_LAMBDAS)
    ]
    negative = [("forced-weight", space, MOVED_AUT, "forced") for space in OTHER_SPACES]
    negative += [("constant-weight", space, MOVED_AUT, "const:1") for space in OTHER_SPACES]
    trivial = [("trivial", space, ROTATION, "const:0+1i") for space in ("hardy", *OTHER_SPACES)]
    cases = unitary + negative + trivial
    if quick:
        firsts = {}
        for case in cases:
            firsts.setdefault(case[0], case)
        cases = list(firsts.values())
    return cases


class Command(LabCommand):
    help = "Run the dichotomy on the unitary family, the negative cases and the trivial operators."
    serializer_class = WCOCheckSerializer

    def add_arguments(self, parser):
        parser.add_argument("--N", type=int, dest="N")
        parser.add_argument("--k", type=int)
        parser.add_argument("--quick", action="store_true", help="One case per group.")
        self.add_json_flag(parser)

    def handle(self, *args, **opts):
        rows = []
        for group, space, phi, f in demo_cases(opts["quick"]):
            ser = self.validated(spec=space, phi=phi, f=f, N=opts["N"], k=opts["k"])
            report = self.compute(ser.report).to_json()
            rows.append({
                "group": group, "space": space, "phi": phi, "F": f,
                "coisometry": report["defects"]["coisometry"],
                "theoretical": report["theoretical"],
                "numerical": report["numerical"],
                "agreement": report["agreement"],
            })
        agreeing = sum(1 for row in rows if row["agreement"] is True)
        self.emit({"cases": rows, "agreeing": agreeing, "total": len(rows)}, opts["json"])
        if agreeing != len(rows):
            raise CommandError(f"{len(rows) - agreeing} of {len(rows)} cases disagree with the prediction.")

    def render_text(self, payload):
        lines = []
        for row in payload["cases"]:
            co = "n/a" if row["coisometry"] is None else f"{row['coisometry']:.2e}"
            lines.append(
                f"{row['group']:<16} {row['space']:<16} {row['phi']:<28} {row['F']:<13} "
                f"co={co:<9} {row['theoretical']:<22} {row['numerical']:<14} {row['agreement']}"
            )
        lines.append(f"{payload['agreeing']}/{payload['total']} cases agree")
        return "\n".join(lines)
