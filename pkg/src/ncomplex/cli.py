"""Command line interface: ``ncomplex <command> --in FILE [...]``.

Exit codes: 0 success / true, 1 mathematical "false" or a failing suite,
2 malformed input or an unsupported request.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .classes import ClassSpec, class_membership, ext_dw_dim, lifting_obstruction
from .complexes import (
    ChainMap,
    NComplex,
    first_nilpotency_failure,
    first_nonzero_homology,
    homology_table,
)
from .errors import NComplexError, NotNilpotent
from .homotopy import hom_k, null_homotopy
from .serialize import complex_from_dict, dumps, loads, _parse_json
from .triangles import cone, hull, inv_suspension, suspension
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load(path: str | None, flag: str = "--in") -> NComplex | ChainMap:
    if path is None:
        raise InputError(f"{flag} is required for this command")
    return loads(_read_text(path))


def _load_complex(path: str | None, flag: str = "--in") -> NComplex:
    obj = _load(path, flag)
    if not isinstance(obj, NComplex):
        raise InputError(f"{flag} must be a complex document")
    return obj


def _load_map(path: str | None, flag: str = "--in") -> ChainMap:
    obj = _load(path, flag)
    if not isinstance(obj, ChainMap):
        raise InputError(f"{flag} must be a chain-map document")
    return obj


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _verdict(args, value: bool, extra: dict | None = None, detail: str = "") -> int:
    payload = {"result": value, **(extra or {})}
    _emit(args, payload, ("true" if value else "false") + (f" {detail}" if detail else ""))
    return EXIT_OK if value else EXIT_FALSE


# -- commands -----------------------------------------------------------------------


def cmd_validate(args) -> int:
    if args.inp is None:
        raise InputError("--in is required for this command")
    text = _read_text(args.inp)
    doc = _parse_json(text)
    if isinstance(doc, dict) and doc.get("kind") == "map":
        loads(text)  # raises on any problem
        return _verdict(args, True)
    X = complex_from_dict(doc, text, validate=False)
    bad = first_nilpotency_failure(X)
    if bad is None:
        return _verdict(args, True)
    msg = f"d^{bad + X.N - 1}...d^{bad} is nonzero"
    return _verdict(args, False, {"degree": bad, "message": msg}, f"degree {bad}: {msg}")


def cmd_homology(args) -> int:
    X = _load_complex(args.inp)
    rows = [h for h in homology_table(X) if not h.is_zero]
    if args.json:
        print(json.dumps([
            {"degree": h.degree, "amplitude": h.amplitude, "free_rank": h.free_rank, "torsion": list(h.torsion)}
            for h in rows
        ]))
    else:
        for h in rows:
            print(h.degree, h.amplitude, h.free_rank, list(h.torsion))
    return EXIT_OK


def cmd_exact(args) -> int:
    X = _load_complex(args.inp)
    mode = args.mode or "all"
    if mode == "all":
        amps = None
    else:
        try:
            amps = [int(mode)]
        except ValueError:
            raise InputError(f"--mode for exact is 'all' or an amplitude, got {mode!r}") from None
        if not 1 <= amps[0] <= X.N - 1:
            raise InputError(f"amplitude {amps[0]} outside [1, {X.N - 1}]")
    h = first_nonzero_homology(X, amps)
    if h is None:
        return _verdict(args, True)
    return _verdict(args, False, {"degree": h.degree, "amplitude": h.amplitude},
                    f"H^{h.degree}_{h.amplitude} != 0")


def cmd_cone(args) -> int:
    C, _ = cone(_load_map(args.inp))
    sys.stdout.write(dumps(C))
    return EXIT_OK


def cmd_susp(args) -> int:
    sys.stdout.write(dumps(suspension(_load_complex(args.inp))))
    return EXIT_OK


def cmd_isusp(args) -> int:
    sys.stdout.write(dumps(inv_suspension(_load_complex(args.inp))))
    return EXIT_OK


def cmd_hull(args) -> int:
    I, _ = hull(_load_complex(args.inp))
    sys.stdout.write(dumps(I))
    return EXIT_OK


def cmd_homotopic(args) -> int:
    f = _load_map(args.inp)
    if args.in2 is not None:
        g = _load_map(args.in2, "--in2")
        if f.source != g.source or f.target != g.target:
            raise InputError("the two maps have different source or target")
        f = f - g
    h = null_homotopy(f)
    extra = {}
    if h is not None:
        extra["witness"] = {str(i): [[f.domain.format(x) for x in row] for row in m.rows()]
                            for i, m in sorted(h.witness.items())}
    return _verdict(args, h is not None, extra)


def cmd_homk(args) -> int:
    X, Y = _load_complex(args.inp), _load_complex(args.in2, "--in2")
    space = hom_k(X, Y)
    c, n, k = space.as_tuple()
    _emit(args, {"chain_maps": c, "null_homotopic": n, "homotopy_classes": k}, f"{c} {n} {k}")
    return EXIT_OK


def cmd_extdw(args) -> int:
    Y, X = _load_complex(args.inp), _load_complex(args.in2, "--in2")
    d = ext_dw_dim(Y, X)
    _emit(args, {"dimension": d}, str(d))
    return EXIT_OK


def cmd_classcheck(args) -> int:
    X = _load_complex(args.inp)
    spec = ClassSpec(args.base, args.mode or "degreewise")
    return _verdict(args, class_membership(X, spec))


def cmd_lifting(args) -> int:
    X = _load_complex(args.inp)
    ob = lifting_obstruction(X)
    if ob is None:
        return _verdict(args, True)
    return _verdict(args, False, {"degree": ob.degree, "amplitude": ob.amplitude},
                    f"a map to D^{ob.degree}_{ob.amplitude} does not lift")


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    if args.trials < 0:
        raise InputError("--trials must be nonnegative")
    report = run_suite(args.suite, args.seed, args.trials)
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        print(f"suite={report.suite} seed={report.seed} trials={report.trials} "
              f"failures={len(report.failures)} elapsed={report.elapsed:.2f}s")
        for t, ce in report.failures:
            print(f"  trial {t}: {json.dumps(ce, sort_keys=True)}")
    return EXIT_OK if report.ok else EXIT_FALSE


COMMANDS = {
    "validate": (cmd_validate, "check that every N-fold composite vanishes"),
    "homology": (cmd_homology, "list nonzero amplitude homology (degree, amplitude, free rank, torsion)"),
    "exact": (cmd_exact, "decide N-exactness (--mode all or a single amplitude)"),
    "cone": (cmd_cone, "mapping cone of a chain map"),
    "susp": (cmd_susp, "suspension"),
    "isusp": (cmd_isusp, "inverse suspension"),
    "hull": (cmd_hull, "contractible hull containing the complex"),
    "homotopic": (cmd_homotopic, "decide whether --in is homotopic to --in2 (or null-homotopic)"),
    "homk": (cmd_homk, "dimensions of chain maps, null-homotopic maps and homotopy classes"),
    "extdw": (cmd_extdw, "dimension of degreewise-split extensions of --in by --in2"),
    "classcheck": (cmd_classcheck, "class membership (--mode degreewise|exact-tilde|ex, --base all|free)"),
    "prop31": (cmd_lifting, "disc-lifting criterion for N-exactness"),
    "verify": (cmd_verify, "run a seeded randomized verification suite"),
}


def _default_seed() -> int:
    raw = os.environ.get("NCOMPLEX_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ncomplex", description="Exact computations with N-complexes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        if name == "verify":
            p.add_argument("suite", help="one of: " + ", ".join(SUITES))
        p.add_argument("--in", dest="inp", metavar="FILE", help="input document ('-' for stdin)")
        p.add_argument("--in2", metavar="FILE", help="second complex or map")
        p.add_argument("--mode", help="command-specific mode")
        p.add_argument("--base", default="all", choices=["all", "free"], help="base class for classcheck")
        p.add_argument("--seed", type=int, default=None, help="seed (default: $NCOMPLEX_SEED or 0)")
        p.add_argument("--trials", type=int, default=100)
        p.add_argument("--json", action="store_true", help="machine-readable JSON output")
        p.add_argument("--N", dest="n_override", help=argparse.SUPPRESS)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n_override is not None:
        print("ncomplex: error: --N is not accepted; N is read from the input document", file=sys.stderr)
        return EXIT_INPUT
    if args.seed is None:
        args.seed = _default_seed()
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except (InputError, NComplexError, ValueError, RecursionError) as exc:
        kind = "validation error" if isinstance(exc, NotNilpotent) else "error"
        print(f"ncomplex: {kind}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
