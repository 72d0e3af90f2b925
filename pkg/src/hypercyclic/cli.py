"""Command line front end: ``hypercyclic check|construct|orbit|table|kron``.

Exit codes: 0 Dense (or success), 1 NotDense, 2 Inconclusive, 3 NotFound,
64 usage error, 65 malformed input, 66 missing input file, 70 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from . import construct, density, diophantine, orbit
from .exactreal import SIGN_DEAD_ZONE, SymbolBasis, SymRealParseError, parse_symreal, sign_dead_zone

EXIT_DENSE, EXIT_NOT_DENSE, EXIT_INCONCLUSIVE, EXIT_NOT_FOUND = 0, 1, 2, 3
EXIT_USAGE, EXIT_DATA, EXIT_NO_INPUT, EXIT_INTERNAL = 64, 65, 66, 70

VERDICT_EXIT = {
    density.Verdict.DENSE: EXIT_DENSE,
    density.Verdict.NOT_DENSE: EXIT_NOT_DENSE,
    density.Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


class UsageError(Exception):
    pass


class InputError(Exception):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line, self.column = line, column


@dataclass
class SessionConfig:
    basis: SymbolBasis = field(default_factory=SymbolBasis)
    fmt: str = "human"
    seed: int = 0
    tol_sign: float = SIGN_DEAD_ZONE
    cov_threshold: float = orbit.DENSE_THRESHOLD
    relation_tol: float = 1e-10


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(cfg: SessionConfig, doc: dict[str, Any], human: str) -> None:
    if cfg.fmt == "structured":
        sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        sys.stdout.write(human.rstrip("\n") + "\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except FileNotFoundError:
        raise FileNotFoundError(path) from None


def parse_basis_flag(text: str | None) -> SymbolBasis:
    """``name=value,name=value`` declarations of opaque atoms."""
    if not text:
        return SymbolBasis()
    atoms = {}
    for part in text.split(","):
        if not part.strip():
            continue
        name, eq, value = part.partition("=")
        if not eq:
            raise UsageError(f"--basis entry {part!r} is not name=value")
        try:
            atoms[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"--basis value {value!r} is not a number") from None
    try:
        return SymbolBasis((), atoms)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- check --------------------------------------------------------------------

@dataclass
class CheckInput:
    vectors: list[list] = field(default_factory=list)
    spec: density.AbelianGroupSpec | None = None
    W: list[list] = field(default_factory=list)
    kind: str = "generators"


def _parse_row(text: str, basis: SymbolBasis, lineno: int, offset: int) -> list:
    out = []
    col = offset
    for piece in text.split(","):
        stripped = piece.strip()
        lead = len(piece) - len(piece.lstrip())
        try:
            out.append(parse_symreal(stripped, basis))
        except SymRealParseError as exc:
            raise InputError(str(exc).split(" at column")[0], lineno, col + lead + exc.column + 1) from None
        col += len(piece) + 1
    return out


def parse_check_input(text: str, basis: SymbolBasis) -> CheckInput:
    """Plain-text generator files or a JSON tuple document (as printed by ``construct``)."""
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(exc.msg, exc.lineno, exc.colno) from None
        try:
            T = construct.MatrixTuple.from_document(doc)
        except (ValueError, SymRealParseError) as exc:
            raise InputError(str(exc)) from None
        if T.spec is None:
            raise InputError("tuple document carries no exp_data")
        return CheckInput(spec=T.spec, W=T.exp_data, kind="tuple")

    out = CheckInput()
    gamma = []
    group = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        key = key.strip().lower()
        body_col = len(key) + 1 + (len(line) - len(line.lstrip()))
        if key.startswith("symbol") and "=" in line:
            name, _, value = line.strip()[len("symbol"):].partition("=")
            try:
                basis = basis.with_symbols([], {name.strip(): float(value)})
            except ValueError as exc:
                raise InputError(str(exc), lineno, 1) from None
            continue
        if not sep:
            raise InputError("expected 'vector:', 'group:', 'gamma:', 'w:' or 'symbol name = value'", lineno, 1)
        if key == "vector":
            out.vectors.append(_parse_row(rest, basis, lineno, body_col))
        elif key == "group":
            fields = {}
            for tok in rest.split():
                k, _, v = tok.partition("=")
                if not v.isdigit():
                    raise InputError(f"bad group field {tok!r}", lineno, body_col + rest.find(tok) + 1)
                fields[k] = int(v)
            if "n" not in fields:
                raise InputError("group line needs n=", lineno, 1)
            group = fields
        elif key == "gamma":
            row = _parse_row(rest, basis, lineno, body_col)
            if any(not x.is_rational() for x in row):
                raise InputError("gamma vectors must be rational", lineno, body_col + 1)
            gamma.append([x.rational_value() for x in row])
        elif key == "w":
            out.W.append(_parse_row(rest, basis, lineno, body_col))
        else:
            raise InputError(f"unknown key {key!r}", lineno, 1)

    if group is not None:
        if out.vectors:
            raise InputError("mixing 'vector:' with 'group:' input")
        try:
            out.spec = density.AbelianGroupSpec(group["n"], group.get("t", len(gamma)), tuple(map(tuple, gamma)))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        out.kind = "group"
        if any(len(w) != out.spec.n for w in out.W):
            raise InputError("w vectors must have length n")
        return out
    if not out.vectors:
        raise InputError("no vectors given")
    if len({len(v) for v in out.vectors}) != 1:
        raise InputError("vectors have different lengths")
    return out


def _render_verdict(v: density.DensityVerdict) -> str:
    lines = [f"verdict: {v.verdict.value}"]
    if v.failed_clause:
        lines.append(f"failed clause: {v.failed_clause}")
    if v.certificate:
        lines.append("certificate:")
        for k in sorted(v.certificate):
            lines.append(f"  {k}: {v.certificate[k]}")
    for note in v.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def cmd_check(args, cfg: SessionConfig) -> int:
    data = parse_check_input(_read_text(args.file), cfg.basis)
    if data.spec is not None:
        try:
            verdict = density.check_dense_group_exp(data.spec, data.W)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        vecs = [list(v) for v in data.spec.gamma_basis] + [list(w) for w in data.W]
        t = data.spec.t
    else:
        verdict = density.check_dense_Rn(data.vectors)
        vecs, t = data.vectors, 0
    verified = density.verify_verdict(vecs, verdict, t) if data.spec is None or data.spec.n else True
    doc = {"input": data.kind, **verdict.to_dict(), "verified": verified}
    _emit(cfg, doc, _render_verdict(verdict) + f"\nverified: {verified}")
    if not verified:
        return EXIT_INTERNAL
    return VERDICT_EXIT[verdict.verdict]


# -- construct ------------------------------------------------------------------

def cmd_construct(args, cfg: SessionConfig) -> int:
    try:
        T = construct.make_hypercyclic_tuple(args.cls, args.n)
    except construct.NonConstructive as exc:
        name = construct.resolve_class(args.cls)
        count = density.m_of_G(density.CLASS_ALIASES.get(name, name), args.n).count
        doc = {"class": name, "size": args.n, "status": "NON-CONSTRUCTIVE", "table_count": count, "reason": str(exc)}
        _emit(cfg, doc, f"NON-CONSTRUCTIVE: {exc}\ntable count m(G) = {count}")
        return EXIT_NOT_FOUND
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    doc = T.to_document()
    doc["self_check"] = construct.self_check(T)
    if cfg.fmt == "structured":
        _emit(cfg, doc, "")
    else:
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_DENSE if doc["self_check"]["density"]["verdict"] == "Dense" else EXIT_INTERNAL


# -- orbit ----------------------------------------------------------------------

def _parse_box(text: str | None, dim: int):
    if not text:
        return None
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --box {text!r}") from None
    if len(parts) == 2:
        return [tuple(parts)] * dim
    if len(parts) == 2 * dim:
        return [(parts[2 * i], parts[2 * i + 1]) for i in range(dim)]
    raise UsageError("--box takes lo,hi or lo1,hi1,...,loN,hiN")


def cmd_orbit(args, cfg: SessionConfig) -> int:
    if args.construct:
        cls, n = args.construct
        try:
            T = construct.make_hypercyclic_tuple(cls, int(n))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif args.file:
        text = _read_text(args.file)
        try:
            T = construct.MatrixTuple.from_document(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(exc.msg, exc.lineno, exc.colno) from None
        except (ValueError, SymRealParseError) as exc:
            raise InputError(str(exc)) from None
    else:
        raise UsageError("orbit needs a tuple file or --construct CLASS N")
    try:
        cloud = orbit.enumerate_orbit(T, L=args.budget)
    except orbit.NonCommuting as exc:
        raise InputError(str(exc)) from None
    report = orbit.coverage(cloud, _parse_box(args.box, T.dim), args.grid,
                            dense_threshold=cfg.cov_threshold)
    if args.dump:
        orbit.dump_points(cloud, args.dump)
    doc = {"class": T.class_tag, "points": len(cloud), "overflow": int(cloud.overflow.sum()),
           "L": args.budget, "k": len(T), **report.to_dict()}
    human = "\n".join([
        f"class: {T.class_tag}  generators: {len(T)}  L: {args.budget}  points: {len(cloud)}",
        f"hit fraction: {report.hit_fraction:.4f}  (x_n>0: {report.hit_fraction_positive_halfspace:.4f}, "
        f"x_n<0: {report.hit_fraction_negative_halfspace:.4f})",
        f"best half-scale sub-box: {report.best_subbox_fraction:.4f}  log-rescaled: {report.log_hit_fraction:.4f}",
        f"hint: {report.verdict_hint.value}",
    ])
    _emit(cfg, doc, human)
    return 0


# -- table ----------------------------------------------------------------------

def _parse_sizes(text: str) -> list[int]:
    try:
        if "-" in text:
            a, b = text.split("-", 1)
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --sizes {text!r}") from None


def cmd_table(args, cfg: SessionConfig) -> int:
    sizes = _parse_sizes(args.sizes)
    if any(n < 1 for n in sizes):
        raise UsageError("sizes must be >= 1")
    tab = density.table(args.which, sizes)
    rows = tab["rows"]
    cols = [k for k in rows[0] if k not in ("table", "field")] if rows else []
    widths = {c: max(len(c), *(len("-" if r[c] is None else str(r[c])) for r in rows)) for c in cols}
    lines = [f"Table {args.which}"]
    lines.append("  ".join(c.ljust(widths[c]) for c in cols))
    for r in rows:
        lines.append("  ".join(("-" if r[c] is None else str(r[c])).ljust(widths[c]) for c in cols).rstrip())
    _emit(cfg, tab, "\n".join(lines))
    return 0


# -- kron -----------------------------------------------------------------------

def _parse_reals(text: str, basis: SymbolBasis) -> list[float]:
    try:
        return [parse_symreal(x.strip(), basis).shadow() for x in text.split(",")]
    except SymRealParseError as exc:
        raise UsageError(str(exc)) from None


def cmd_kron(args, cfg: SessionConfig) -> int:
    r = _parse_reals(args.r, cfg.basis)
    y = _parse_reals(args.y, cfg.basis)
    if len(r) != len(y):
        raise UsageError("r and y need the same length")
    if not 0 < args.eps < 0.5:
        raise UsageError("eps must lie in (0, 1/2)")
    try:
        res = diophantine.kronecker_approximate(r, y, args.eps, brute_force_limit=args.budget)
    except diophantine.NotFound as exc:
        _emit(cfg, {"found": False, "bound": exc.bound}, f"not found within budget {exc.bound}")
        return EXIT_NOT_FOUND
    doc = {"found": True, "m": res.m, "distances": list(res.distances), "strategy": res.strategy}
    _emit(cfg, doc, f"m = {res.m}\ndistances: {' '.join(f'{d:.6g}' for d in res.distances)}\n"
                    f"strategy: {res.strategy}")
    return 0


# -- entry point ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypercyclic", description="Density checks and minimal generators for abelian matrix semigroups.")
    p.add_argument("--basis", help="opaque symbol declarations, name=value[,name=value...]")
    p.add_argument("--format", choices=("human", "structured"), default="human")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol-sign", type=float, default=SIGN_DEAD_ZONE)
    p.add_argument("--cov-threshold", type=float, default=orbit.DENSE_THRESHOLD)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="decide density of a generator set or Lie data")
    c.add_argument("file", help="input file, or - for stdin")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("construct", help="emit a minimal commuting tuple with a self-check")
    c.add_argument("cls", metavar="CLASS")
    c.add_argument("n", type=int)
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("orbit", help="simulate an orbit and report grid coverage")
    c.add_argument("file", nargs="?", help="tuple document, or - for stdin")
    c.add_argument("--construct", nargs=2, metavar=("CLASS", "N"))
    c.add_argument("--budget", type=int, default=100, help="maximal word length L")
    c.add_argument("--grid", type=int, default=10)
    c.add_argument("--box", help="lo,hi for every axis or lo1,hi1,...")
    c.add_argument("--dump", help="write orbit points to this path")
    c.set_defaults(func=cmd_orbit)

    c = sub.add_parser("table", help="recompute a generator-count table")
    c.add_argument("which", type=int, choices=(1, 2, 3))
    c.add_argument("--sizes", default="1-10")
    c.set_defaults(func=cmd_table)

    c = sub.add_parser("kron", help="simultaneous approximation m*r = y mod 1")
    c.add_argument("r", help="comma separated reals (SymReal syntax)")
    c.add_argument("y", help="comma separated targets")
    c.add_argument("eps", type=float)
    c.add_argument("--budget", type=int, default=diophantine.BRUTE_FORCE_LIMIT)
    c.set_defaults(func=cmd_kron)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = SessionConfig(parse_basis_flag(args.basis), args.format, args.seed,
                            args.tol_sign, args.cov_threshold)
        np.random.seed(cfg.seed)
        with sign_dead_zone(cfg.tol_sign):
            return args.func(args, cfg)
    except UsageError as exc:
        print(f"hypercyclic: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"hypercyclic: input error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"hypercyclic: no such file: {exc}", file=sys.stderr)
        return EXIT_NO_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"hypercyclic: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
