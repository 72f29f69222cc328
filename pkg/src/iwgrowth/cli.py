"""Command-line driver.

Reports go to stdout and diagnostics to stderr.  Exit codes: 0 success,
1 failed example or property check, 2 usage or parse error, 3 precision
exhausted, 4 invariant violation in the input (for example a matrix that is
not skew-Hermitian).
"""

from __future__ import annotations

import argparse
import sys

from .errors import IwasawaError, ParseError, PrecisionExhausted
from .growthcert import certify
from .iwalg import parse_elem, parse_header, retruncate, serialize, weierstrass_prepare
from .reports import SUITE_REPORTS, run_examples
from .signcert import symmetrize
from .skewherm import check_skew_hermitian, coker_rank_at_layer, determinant, parse_matrix_entries
from .suites import SUITE_IDS, SUITES, run_case

EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_PRECISION, EXIT_INVARIANT = 0, 1, 2, 3, 4


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _content_lines(text: str) -> list[str]:
    return [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _load_matrix(args):
    spec, rows = parse_matrix_entries(_read(args.input))
    if args.N is not None or args.D is not None:
        _check_override(spec, args)
        rows = [[retruncate(x, args.N, args.D) for x in row] for row in rows]
    return check_skew_hermitian(rows)


def _load_elements(args):
    """Element file: header line, then one serialized element per line."""
    lines = _content_lines(_read(args.input))
    if not lines:
        raise ParseError("empty input file")
    spec = parse_header(lines[0])
    if len(lines) < 2:
        raise ParseError("element file has a header but no elements")
    elems = [parse_elem(spec, ln) for ln in lines[1:]]
    if args.N is not None or args.D is not None:
        _check_override(spec, args)
        elems = [retruncate(x, args.N, args.D) for x in elems]
    return elems


def _check_override(spec, args) -> None:
    if args.N is not None and not 1 <= args.N <= spec.N:
        raise ParseError(f"--N must lie in [1, {spec.N}] for this file")
    if args.D is not None and not 2 <= args.D <= spec.D:
        raise ParseError(f"--D must lie in [2, {spec.D}] for this file")


def cmd_certify(args) -> int:
    H = _load_matrix(args)
    cert = certify(H, k_max=args.k_max)
    sys.stdout.write(cert.render())
    return EXIT_OK


def cmd_layers(args) -> int:
    H = _load_matrix(args)
    for k in range(args.k_max + 1):
        rep = coker_rank_at_layer(H, args.sign, k)
        sys.stdout.write(rep.line() + f" precision={rep.precision}\n")
    return EXIT_OK


def cmd_prepare(args) -> int:
    out = []
    for n, f in enumerate(_load_elements(args), start=1):
        if f.spec.d != 1:
            raise ParseError("prepare needs a univariate file (one sign in sig=)")
        w = weierstrass_prepare(f)
        out += [
            f"element: {n}",
            f"mu: {w.mu}",
            f"lambda: {w.lam}",
            f"distinguished: {serialize(w.distinguished)}",
            f"unit: {serialize(w.unit)}",
            f"precision: {w.precision}",
        ]
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_symmetrize(args) -> int:
    text = _read(args.input)
    lines = _content_lines(text)
    if len(lines) > 1 and lines[1].lstrip().startswith("matrix"):
        elems = [determinant(_load_matrix(args))]
    else:
        elems = _load_elements(args)
    out = []
    for n, L in enumerate(elems, start=1):
        rec = symmetrize(L)
        out += [
            f"element: {n}",
            f"epsilon_iota: {rec.epsilon_iota:+d}",
            f"epsilon_sigma: {rec.epsilon_sigma:+d}",
            f"epsilon_sigma_iota: {rec.epsilon_sigma_iota:+d}",
            f"mu: {rec.mu}",
            f"symmetrized: {serialize(rec.symmetrized)}",
        ]
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_examples(args) -> int:
    try:
        rep = run_examples(args.suite, args.bound)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    sys.stdout.write(rep.render())
    if not rep.ok:
        for c in rep.checks:
            if not c.passed:
                print(f"failed check [{c.tag}] {c.name}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_selftest(args) -> int:
    names = [args.suite] if args.suite else [s.name for s in SUITES]
    cases = [args.case] if args.case is not None else range(args.trials)
    for name in names:
        counts = {"pass": 0, "skip": 0, "fail": 0}
        for case in cases:
            res = run_case(args.seed, name, case)
            counts[res.status] += 1
            if args.case is not None:
                print(f"case seed={res.seed} suite={name} case={case}: {res.status} ({res.detail})")
            if res.status == "fail":
                print(f"FAIL seed={res.seed} suite={name} case={case}: {res.detail}")
                print(
                    f"replay: iwgrowth selftest --seed {res.seed} --suite {name} --case {case}",
                    file=sys.stderr,
                )
                return EXIT_CHECK
        print(f"suite {name}: cases={sum(counts.values())} pass={counts['pass']} skip={counts['skip']} fail=0")
    return EXIT_OK


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iwgrowth", description="Selmer-growth certificates over truncated Iwasawa algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def file_command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, help="input file")
        p.add_argument("--N", type=_positive, default=None, help="lower the p-adic precision of the input")
        p.add_argument("--D", type=_positive, default=None, help="lower the degree cap of the input")
        return p

    p = file_command("certify", "certify growth for an organizing matrix file")
    p.add_argument("--k-max", type=_nonnegative, default=1)
    p.set_defaults(fn=cmd_certify)

    p = file_command("layers", "layer corank table along one sign")
    p.add_argument("--sign", choices=["+", "-"], required=True)
    p.add_argument("--k-max", type=_nonnegative, required=True)
    p.set_defaults(fn=cmd_layers)

    p = file_command("prepare", "Weierstrass preparation of univariate elements")
    p.set_defaults(fn=cmd_prepare)

    p = file_command("symmetrize", "eps(iota), eps(sigma) and a symmetrized generator")
    p.set_defaults(fn=cmd_symmetrize)

    p = sub.add_parser("examples", help="worked-example checks")
    p.add_argument("suite", choices=sorted(SUITE_REPORTS))
    p.add_argument("--bound", type=_positive, default=None)
    p.set_defaults(fn=cmd_examples)

    p = sub.add_parser("selftest", help="seeded randomized invariant suites")
    p.add_argument("--seed", type=_nonnegative, default=0)
    p.add_argument("--trials", type=_positive, default=200, help="cases per suite")
    p.add_argument("--suite", choices=sorted(SUITE_IDS), default=None, help="run one suite only")
    p.add_argument("--case", type=_nonnegative, default=None, help="replay a single case")
    p.set_defaults(fn=cmd_selftest)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except IwasawaError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
