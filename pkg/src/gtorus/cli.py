"""Command-line interface.  Exit status: 0 success, 1 check failure, 2 input or usage error."""

from __future__ import annotations

import argparse
import json
import sys

from . import cp5, orbits, polytope, strata, topo
from .errors import GTorusError, InputError
from .linalg import FramedPoint, pair_label
from .moment import moment_of_frame
from .scalars import FIELDS, Field
from .verify import CRITERIA, RunConfig, run_verification


# matrix I/O ---------------------------------------------------------------------------

def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from None


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _scalar_field(doc: dict, default: Field) -> Field:
    name = doc.get("scalar", default.name)
    if name not in FIELDS:
        raise InputError(f"unknown scalar mode {name!r}")
    f = FIELDS[name]
    return f.with_eps(default.eps)


def read_matrix(text: str, default: Field) -> FramedPoint:
    """``{"scalar": ..., "rows": [[[re, im], [re, im]], ...]}``; bare numbers are real."""
    doc = _load_json(text)
    if not isinstance(doc, dict) or "rows" not in doc:
        raise InputError('expected an object with a "rows" key')
    f = _scalar_field(doc, default)
    rows = doc["rows"]
    if not isinstance(rows, list) or len(rows) != 4 or any(
            not isinstance(r, list) or len(r) != 2 for r in rows):
        raise InputError('"rows" must be a 4x2 array')
    try:
        return FramedPoint.from_rows([[f.from_json(x) for x in r] for r in rows], f)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad matrix entry: {exc}") from None


def write_matrix(X: FramedPoint) -> str:
    return json.dumps({"scalar": X.field.name,
                       "rows": [[X.field.to_json(x) for x in r] for r in X.rows]})


def read_cp5_point(text: str, default: Field) -> cp5.CP5Point:
    """``{"scalar": ..., "z": [z0, ..., z5]}``."""
    doc = _load_json(text)
    if not isinstance(doc, dict) or not isinstance(doc.get("z"), list) or len(doc["z"]) != 6:
        raise InputError('expected an object with a 6-entry "z" array')
    f = _scalar_field(doc, default)
    try:
        return cp5.CP5Point(tuple(f.from_json(x) for x in doc["z"]), f)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad coordinate: {exc}") from None


# commands ---------------------------------------------------------------------------

def _emit(args, payload, text: str | None = None) -> None:
    if args.json or text is None:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_verify(args, cfg: RunConfig) -> int:
    crit = [int(c) for c in args.criterion] if args.criterion else None
    if crit and any(c not in CRITERIA for c in crit):
        raise InputError(f"criteria are numbered 1..{len(CRITERIA)}")
    rep = run_verification(cfg, crit)
    if args.no_timings:
        for r in rep.results:
            r.elapsed = 0.0
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(rep.to_json(), fh, indent=2)
    _emit(args, rep.to_json(), rep.summary())
    return 0 if rep.passed else 1


def cmd_stratify(args, cfg) -> int:
    X = read_matrix(_read_source(args.matrix), cfg.field)
    st = strata.stratum_of(X)
    stab = strata.stabilizer_subtorus(st.pattern)
    payload = {"pattern": st.pattern.labels(),
               "polytope": {"kind": st.polytope.kind.value,
                            "vertices": [pair_label(J) for J in sorted(st.polytope.vertices)]},
               "dim": st.dim_real,
               "stabilizer": {"dim": stab.dim, "basis": [list(v) for v in stab.lattice_basis]}}
    _emit(args, payload)
    return 0


def cmd_orbit(args, cfg) -> int:
    X = read_matrix(_read_source(args.matrix), cfg.field)
    st = strata.stratum_of(X)
    c = orbits.cross_ratio(X)
    payload = {"stratum": st.name,
               "param": "indeterminate" if c is orbits.ANY else c.to_json(),
               "closure_model": orbits.classify_closure(st).model,
               "local_model": orbits.local_model(X).model}
    _emit(args, payload)
    return 0


def cmd_moment(args, cfg) -> int:
    X = read_matrix(_read_source(args.matrix), cfg.field)
    payload = {"moment": moment_of_frame(X).to_json(), "stratum": strata.stratum_of(X).name}
    _emit(args, payload)
    return 0


def cmd_cp5_stratify(args, cfg) -> int:
    z = read_cp5_point(_read_source(args.point), cfg.field)
    st = cp5.cp5_stratum(z)
    payload = {"polytope_vertices": [pair_label(J) for J in sorted(st.vertices)],
               "param": st.param.to_json(),
               "on_quadric": cp5.is_on_plucker_quadric(z)}
    _emit(args, payload)
    return 0


def cmd_homology(args, cfg) -> int:
    model = topo.build_space(args.space)
    H = topo.cellular_homology(model)
    payload = {"space": args.space, "model": model.space_tag, "cell_dims": model.dims(),
               "homology": [str(h) for h in H]}
    _emit(args, payload, topo.format_homology(H))
    return 0


def cmd_morse_check(args, cfg) -> int:
    rep = topo.morse_gradient_check(args.chart)
    _emit(args, rep.to_json())
    ok = rep.gradient_norm <= 1e-6 and bool(rep.nondegenerate) and bool(rep.analytic_match)
    return 0 if ok else 1


def cmd_lattice(args, cfg) -> int:
    L = strata.strata_lattice()
    if args.format == "dot":
        sys.stdout.write(L.to_dot())
    else:
        print(json.dumps({"counts_by_dim": L.counts_by_dim(), "covers": L.covers}, indent=2))
    return 0


def cmd_export_polytope(args, cfg) -> int:
    st = strata.parse_stratum_id(args.stratum)
    v = st.polytope.vertices
    if args.format == "off":
        out = polytope.to_off(v)
    elif args.format == "csv":
        out = polytope.to_csv(v)
    else:
        out = polytope.to_json(v, name=st.name, kind=st.polytope.kind.value) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def cmd_complex(args, cfg) -> int:
    K = topo.build_admissible_complex(include_main=not args.without_main)
    sys.stdout.write(K.to_dot() if args.format == "dot" else K.to_json() + "\n")
    return 0


# parser -----------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--scalar", choices=sorted(FIELDS), default=argparse.SUPPRESS,
                   help="scalar mode (env GT_SCALAR)")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="RNG seed (env GT_SEED)")
    p.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                   help="relative zero-test tolerance (env GT_TOL)")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="machine-readable output")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="gtorus", parents=[common],
                                     description="Torus-orbit stratification of G(4,2) and CP^5.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("verify", cmd_verify, "run every acceptance check")
    p.add_argument("--criterion", action="append", help="restrict to a criterion number")
    p.add_argument("--report", help="also write the JSON report to this file")
    p.add_argument("--no-timings", action="store_true",
                   help="zero the elapsed times so the JSON report is byte-stable")
    add("stratify", cmd_stratify, "stratum of a 4x2 frame").add_argument(
        "matrix", help="JSON file, or - for stdin")
    add("orbit", cmd_orbit, "orbit parameter and closure of a frame").add_argument(
        "matrix", help="JSON file, or - for stdin")
    add("moment", cmd_moment, "moment map image of a frame").add_argument(
        "matrix", help="JSON file, or - for stdin")
    add("cp5-stratify", cmd_cp5_stratify, "stratum of a point of CP^5").add_argument(
        "point", help="JSON file, or - for stdin")
    add("homology", cmd_homology, "cellular homology of an orbit-space model").add_argument(
        "--space", required=True, choices=sorted(topo.SPACES))
    add("morse-check", cmd_morse_check, "Morse function check at a chart origin").add_argument(
        "--chart", required=True, choices=[f"{i}{j}" for i, j in strata.PAIRS])
    add("lattice", cmd_lattice, "the strata lattice").add_argument(
        "--format", choices=("dot", "json"), default="dot")
    p = add("export-polytope", cmd_export_polytope, "export a stratum's moment polytope")
    p.add_argument("stratum", help="e.g. octahedron, P12, P12,34, T12,13,14, E12,13, V12")
    p.add_argument("--format", choices=("off", "csv", "json"), default="json")
    p.add_argument("-o", "--output")
    p = add("complex", cmd_complex, "the complex of admissible polytopes")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--without-main", action="store_true", help="drop the octahedron")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    try:
        cfg = RunConfig.from_env(getattr(args, "scalar", None), getattr(args, "seed", None),
                                 getattr(args, "tol", None))
        return args.func(args, cfg)
    except GTorusError as exc:
        print(f"gtorus: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
