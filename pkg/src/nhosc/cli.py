"""Command-line front end: figure data, self-tests and state dumps.

Exit codes: 0 success, 1 usage error, 2 check failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _overrides(pairs):
    from .figures import parse_value
    out = {}
    for item in pairs or []:
        key, sep, val = item.partition("=")
        if not sep or not key:
            raise ValueError(f"--set expects key=value, got {item!r}")
        out[key.strip()] = parse_value(val)
    return out


def build_parser() -> argparse.ArgumentParser:
    from .figures import FIGURE_IDS
    from .states import FAMILIES

    p = _Parser(prog="nhosc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    f = sub.add_parser("figure", help="write the data files of one figure")
    f.add_argument("figure_id", choices=FIGURE_IDS)
    f.add_argument("--out", default="figures", help="output directory (default: %(default)s)")
    f.add_argument("--set", dest="overrides", action="append", metavar="KEY=VALUE",
                   help="override a figure parameter; VALUE is parsed as JSON when possible")
    f.add_argument("--svg", action="store_true", help="also write SVG heatmaps for grids")

    t = sub.add_parser("selftest", help="run the invariant suites")
    t.add_argument("--full", action="store_true", help="full sweeps instead of the quick ones")
    t.add_argument("--json", metavar="PATH", help="write the report here")

    st = sub.add_parser("state", help="state utilities")
    ssub = st.add_subparsers(dest="state_command", required=True, parser_class=_Parser)
    d = ssub.add_parser("dump", help="print the coefficient JSON of a state")
    d.add_argument("--family", required=True, choices=FAMILIES)
    d.add_argument("--params", default="{}", help="JSON object of family parameters")
    d.add_argument("--dim", type=int, default=None, help="explicit truncation")
    return p


def _cmd_figure(args) -> int:
    from .figures import run_figure
    try:
        overrides = _overrides(args.overrides)
    except ValueError as exc:
        print(f"nhosc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        manifest = run_figure(args.figure_id, args.out, overrides, args.svg)
    except KeyError as exc:
        print(f"nhosc: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"nhosc: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(json.dumps({"figure_id": manifest["figure_id"], "files": manifest["files"]}))
    return EXIT_OK


def _cmd_selftest(args) -> int:
    from .checks import run_selftest
    report = run_selftest(args.full)
    for c in report["checks"]:
        flag = "PASS" if c["passed"] else "FAIL"
        print(f"{flag}  {c['name']}: observed {c['observed']:.3g} (tol {c['tolerance']:.0e}, {c['seconds']:.2f} s)")
    if args.json:
        try:
            with open(args.json, "w") as fh:
                json.dump(report, fh, indent=1)
        except OSError as exc:
            print(f"nhosc: I/O error: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK if report["passed"] else EXIT_CHECK


def _cmd_state(args) -> int:
    from .states import FamilySpec, make_state, state_to_json
    try:
        params = json.loads(args.params)
        if not isinstance(params, dict):
            raise ValueError("--params must be a JSON object")
        spec = FamilySpec(args.family, params, args.dim)
        s = make_state(spec)
    except (ValueError, TypeError) as exc:
        print(f"nhosc: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(state_to_json(s, args.family, params))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "figure":
        return _cmd_figure(args)
    if args.command == "selftest":
        return _cmd_selftest(args)
    return _cmd_state(args)


if __name__ == "__main__":
    sys.exit(main())
