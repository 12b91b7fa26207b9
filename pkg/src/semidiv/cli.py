"""semidiv command line.

    semidiv COMMAND PROBLEM.json [--format table|machine] [options]

Exit codes: 0 success, 2 input error, 3 hypothesis violation, 4 cap or
stabilization failure.
"""
import argparse
import logging
import sys

from .errors import SemidivError
from .problem import load_problem
from .report import COMMANDS, render_report, run_command


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser():
    p = argparse.ArgumentParser(prog="semidiv",
                                description="Divisorial invariants of normal affine semigroup rings.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("problem", help="problem file (JSON object)")
    p.add_argument("--format", choices=("table", "machine"), default="table")
    p.add_argument("--class", dest="cls", type=_int_list, help="class coordinates, e.g. -2 or 1,1")
    p.add_argument("--offset", type=_int_list, help="progression offset class d")
    p.add_argument("--face", type=_int_list, help="facet indices of a face")
    p.add_argument("--bound", type=int, help="mu bound C for enumerate")
    p.add_argument("--cap-faces", type=int)
    p.add_argument("--hs-window", type=int)
    p.add_argument("--box", type=int)
    p.add_argument("--jmax", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    options = {
        "cls": args.cls, "offset": args.offset, "face": args.face, "bound": args.bound,
        "cap_faces": args.cap_faces, "hs_window": args.hs_window, "box": args.box,
        "jmax": args.jmax, "k": args.k,
    }
    try:
        problem = load_problem(args.problem)
        report = run_command(problem, args.command, options)
        sys.stdout.write(render_report(report, args.format))
    except SemidivError as exc:
        print(f"semidiv: error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
