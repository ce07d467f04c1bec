"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for usage or configuration errors (including exceeded enumeration caps).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import colored, rootcert, scomplex, transform
from .polycore import Poly
from .report import Report
from .triangles import CATALOG, FTriangle, build, derive, validate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("triangle source")
    src.add_argument("--catalog", choices=sorted(CATALOG), help="catalog triangle")
    src.add_argument("--json", metavar="PATH", help="custom f-triangle JSON file")
    src.add_argument("--r", type=int, help="edgewise / colored parameter")
    src.add_argument("--s", type=int, help="skeleton dimension for sdrs")
    src.add_argument("--d", type=int, help="triangle size (defaults to what the command needs)")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--strict", action="store_true", help="run the stricter validation checks")
    common.add_argument("--max-faces", type=int, default=scomplex.DEFAULT_MAX_FACES)
    common.add_argument("--max-perms", type=int, default=colored.DEFAULT_MAX_PERMS)

    p = argparse.ArgumentParser(prog="unitri", description="Uniform triangulation invariants.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("triangle", parents=[common], help="f-triangle and derived triangles")

    c = sub.add_parser("coeffs", parents=[common], help="coefficient table p(n,k,j)")
    c.add_argument("--n", type=int, required=True)

    a = sub.add_parser("apply", parents=[common], help="transform an h-vector")
    a.add_argument("--h", help="comma-separated h-vector, e.g. 1,1,1")
    a.add_argument("--complex", metavar="PATH", help="simplicial complex JSON (vertices, facets)")

    z = sub.add_parser("certify", parents=[common], help="real-rootedness assumptions and conclusions")
    z.add_argument("--n", type=int, required=True)
    z.add_argument("--samples", type=int, default=200)
    z.add_argument("--seed", type=int, default=0)

    o = sub.add_parser("oracle", parents=[common], help="brute-force checks on the subdivided simplex")
    o.add_argument("--n", type=int, required=True)
    return p


def _params(args) -> dict:
    out = {}
    if args.r is not None:
        out["r"] = args.r
    if args.s is not None:
        out["s"] = args.s
    return out


def load_triangle(args, need: int) -> FTriangle:
    """Exactly one source; catalog triangles are built to size ``max(d, need)``."""
    if (args.catalog is None) == (args.json is None):
        raise UsageError("give exactly one of --catalog and --json")
    if args.json is not None:
        try:
            F = FTriangle.from_json(Path(args.json).read_text())
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read triangle from {args.json}: {exc}") from None
        if args.d is not None:
            if args.d > F.d:
                raise UsageError(f"--d {args.d} exceeds the file's size {F.d}")
            F = F.truncated(args.d)
    else:
        d = need if args.d is None else args.d
        try:
            F = build(args.catalog, d, **_params(args))
        except (ValueError, AssertionError) as exc:
            raise UsageError(str(exc)) from None
    if F.d < need:
        raise UsageError(f"triangle size {F.d} is smaller than the required {need}")
    return F


def _need_n(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    return args.n


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _json_only(args) -> None:
    if args.format != "json":
        raise UsageError(f"{args.command} only supports --format json")


def cmd_triangle(args) -> int:
    F = load_triangle(args, 0 if args.d is None else args.d)
    D = derive(F)
    problems = validate(F, args.strict)
    if args.format == "csv":
        lines = ["n,i,f,h,f_interior,h_interior,local_h"]
        for n in range(F.d + 1):
            for i in range(n + 1):
                vals = [F(i, n), D.h[n][i], D.f_int[n][i], D.h_int[n][i], D.local[n][i]]
                lines.append(",".join([str(n), str(i)] + [str(v) for v in vals]))
        _emit(args, "\n".join(lines))
    else:
        _emit(args, _dump({"triangle": F.to_json(), "derived": D.to_json(), "violations": problems}))
    for p in problems:
        print(f"violation: {p}", file=sys.stderr)
    print(f"{F.label()}: {len(problems)} violations", file=sys.stderr)
    return EXIT_FAIL if problems else EXIT_OK


def cmd_coeffs(args) -> int:
    n = _need_n(args)
    # one extra row lets the column sums be audited against the boundary
    need = n + 1 if args.catalog and args.d is None else n
    F = load_triangle(args, need)
    table = transform.coeff_table(F, n)
    if args.format == "csv":
        _emit(args, table.to_csv())
    else:
        _emit(args, _dump(table.to_json()))
    for v in table.violations:
        print(f"violation: {v}", file=sys.stderr)
    print(f"{F.label()} n={n}: {len(table.violations)} audit violations", file=sys.stderr)
    return EXIT_FAIL if table.violations else EXIT_OK


def _parse_h(text: str) -> list[Fraction]:
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse h-vector {text!r}") from None


def cmd_apply(args) -> int:
    _json_only(args)
    if (args.h is None) == (args.complex is None):
        raise UsageError("give exactly one of --h and --complex")
    rep = Report("apply")
    K = None
    if args.h is not None:
        h = _parse_h(args.h)
        if not h:
            raise UsageError("empty h-vector")
        n = len(h) - 1
    else:
        try:
            K = scomplex.SimplicialComplex.from_json(Path(args.complex).read_text())
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read complex from {args.complex}: {exc}") from None
        n = K.dim + 1
        h = scomplex.h_vector(K)
    F = load_triangle(args, n)
    out = transform.apply_h(F, h, n)
    rep.data = {"triangle": F.label(), "n": n, "h_in": [str(c) for c in h], "h_out": out.to_json()}
    if K is not None and args.catalog is not None:
        try:
            S = scomplex.subdivide(args.catalog, K, max_faces=args.max_faces, **_params(args))
        except scomplex.FaceCapExceeded as exc:
            raise UsageError(str(exc)) from None
        brute = scomplex.h_poly(S.total)
        rep.data["h_brute_force"] = brute.to_json()
        rep.check(brute == out, f"brute-force h {brute} != transformed h {out}")
    _emit(args, _dump(rep.to_dict()))
    print(str(rep), file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_certify(args) -> int:
    _json_only(args)
    n = _need_n(args)
    if n < 1:
        raise UsageError("certify needs --n >= 1")
    if args.samples < 0:
        raise UsageError("--samples must be nonnegative")
    F = load_triangle(args, n)
    rep = Report(f"certify {F.label()} n={n}")
    rep.add(rootcert.check_assumptions(F, n))
    rep.add(rootcert.check_conclusions(F, n, args.samples, args.seed))
    _emit(args, _dump(rep.to_dict()))
    print(str(rep), file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def oracle_report(F: FTriangle, name: str, params: dict, n: int,
                  max_faces: int | None = None, max_perms: int | None = None) -> Report:
    """Explicit subdivision of the n-simplex checked against every formula for ``F``."""
    S = scomplex.subdivide(name, scomplex.simplex(n), max_faces=max_faces, **params)
    rep = Report(f"oracle {F.label()} n={n}")
    rep.check(not S.problems(), "explicit subdivision is malformed")
    rep.add(scomplex.uniformity_check(S, F))
    loc = scomplex.local_h(S)
    rep.check(loc == derive(F).local[n], f"local h {loc} != triangle value {derive(F).local[n]}")
    gam = Report("relative complexes")
    facets = scomplex.base_facets(S)
    rows = []
    for k in range(n + 1):
        G = scomplex.gamma_nk(S, k)
        h = G.h_poly()
        want = transform.p_poly_recurrence(F, n, k)
        rows.append({"k": k, "f": G.f_poly().to_json(), "h": h.to_json()})
        gam.check(h == want, f"k={k}: h = {h} but p = {want}")
        gam.add(scomplex.relative_symmetry_check(S, facets[:k]))
    gam.data["gamma"] = rows
    rep.add(gam)
    r = {"barycentric": 1, "interval": 2}.get(name, params.get("r") if name == "colored" else None)
    if r is not None:
        perms = Report(f"colored permutation counts, r={r}")
        try:
            q = colored.q_table(n, r, max_perms)
        except colored.EnumerationCapExceeded as exc:
            perms.note(f"skipped: {exc}")
        else:
            p = transform.coeff_table(F, n, check=False).p
            perms.check(q == [[int(c) for c in row] for row in p], f"q-table {q} != p-table")
        rep.add(perms)
    return rep


def cmd_oracle(args) -> int:
    _json_only(args)
    n = _need_n(args)
    if args.catalog is None:
        raise UsageError("oracle needs --catalog (custom triangles have no explicit construction)")
    F = load_triangle(args, n)
    try:
        rep = oracle_report(F, args.catalog, _params(args), n, args.max_faces, args.max_perms)
    except scomplex.FaceCapExceeded as exc:
        raise UsageError(str(exc)) from None
    _emit(args, _dump(rep.to_dict()))
    print(str(rep), file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


COMMANDS = {
    "triangle": cmd_triangle,
    "coeffs": cmd_coeffs,
    "apply": cmd_apply,
    "certify": cmd_certify,
    "oracle": cmd_oracle,
}


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"unitri: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
