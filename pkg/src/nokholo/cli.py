"""Command-line interface: ``nokholo {zariski,body,slice,complexity,certify,report}``.

Exit codes: 0 success, 1 usage error, 2 mathematical precondition violated,
3 no fit found.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from html import escape
from pathlib import Path

from . import io, svg
from .cohomology import (
    ProjectiveSpace,
    kunneth_table,
    parse_factors,
    parse_ray,
)
from .holonomic import Verdict, certify_complexity
from .lattice import PreconditionError
from .nok import (
    FIXTURES,
    FlagOnSurface,
    assemble_slice_body,
    build_klm_family,
    classify_boundary,
    nok_surface_body,
    slice_region,
)
from .zariski import zariski_decompose

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_NOFIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fixture_dir() -> Path:
    return Path(os.environ.get("NOKHOLO_FIXTURES", FIXTURES))


def resolve(name: str, relative_to: Path | None = None) -> Path:
    """A path as given, else relative to ``relative_to``, else in the fixture directory."""
    p = Path(name)
    candidates = [p]
    if relative_to is not None:
        candidates.append(relative_to / name)
    candidates.append(fixture_dir() / name)
    for c in candidates:
        if c.is_file():
            return c
    raise UsageError(f"file not found: {name}")


def _emit(args, files: dict, stdout_text: str) -> None:
    sys.stdout.write(stdout_text)
    if args.out:
        for name, text in files.items():
            io.write_atomic(Path(args.out) / name, text)


# -- subcommands ----------------------------------------------------------------


def cmd_zariski(args) -> int:
    s = io.load_surface(resolve(args.surface))
    b = s.parse(args.divisor)
    dec = zariski_decompose(s, b)
    text = io.dumps(io.decomposition_to_json(s, dec))
    _emit(args, {"zariski.json": text}, text)
    return EXIT_OK


def _parse_point(s, spec):
    if spec is None or spec == "generic":
        return None
    if spec.isdigit():
        return int(spec)
    target = s.parse(spec)
    if target not in s.negative_curves:
        raise UsageError(f"{spec} is not a listed negative curve")
    return s.negative_curves.index(target)


def cmd_body(args) -> int:
    s = io.load_surface(resolve(args.surface))
    b = s.parse(args.divisor)
    if not args.curve.strip():
        raise PreconditionError("empty flag: a flag curve class is required")
    flag = FlagOnSurface(s.parse(args.curve), _parse_point(s, args.point))
    body = nok_surface_body(s, b, flag)
    obj = io.body_to_json(body)
    obj["divisor"] = s.format(b)
    obj["flag"] = {"curve": s.format(flag.curve_class),
                   "point": "generic" if flag.point_on_negative_curve is None
                   else s.curve_name(flag.point_on_negative_curve)}
    text = io.dumps(obj)
    title = f"body of {s.format(b)} on {s.lattice_id}"
    _emit(args, {"body.json": text, "body.svg": svg.body_svg(body, title)}, text)
    return EXIT_OK


def _klm_region(dim: int, grid_size: int, epsilon=None):
    fam = build_klm_family(dim)
    eps = Fraction(epsilon) if epsilon is not None else fam.epsilon
    grid = [eps * k / grid_size for k in range(grid_size)]
    region = slice_region(fam.surface, fam.base, fam.wall, fam.curve, eps, grid)
    return region, {"configuration": "klm", "dimension": dim,
                    "divisor": f"O(3,1) on P^{dim - 2} x P^2"}


def _family_region(path: str, grid_size: int | None, epsilon=None):
    fpath = resolve(path)
    spec = json.loads(fpath.read_text())
    s = io.load_surface(resolve(spec["surface"], fpath.parent))
    eps = Fraction(epsilon) if epsilon is not None else Fraction(spec["epsilon"])
    if grid_size is not None:
        grid = [eps * k / grid_size for k in range(grid_size)]
    else:
        grid = [Fraction(x) for x in spec["grid"]]
    region = slice_region(s, s.parse(spec["base"]), s.parse(spec["wall"]),
                          s.parse(spec["curve"]), eps, grid)
    return region, {"configuration": fpath.name, "divisor": spec["base"]}


def slice_document(region, meta) -> tuple[dict, str]:
    verdict = classify_boundary(region)
    bodies = assemble_slice_body(region)
    obj = {
        "meta": meta,
        "region": io.region_to_json(region),
        "boundary": io.boundary_string(region.boundary_polynomial),
        "verdict": io.verdict_to_json(verdict),
        "sections": [{"s": io.rat(x), "extent": io.surd_to_json(b.extent),
                      "area": io.surd_to_json(b.area())} for x, b in bodies],
    }
    return obj, svg.slice_svg(region, bodies, title=meta.get("divisor", "slice family"))


def cmd_slice(args) -> int:
    if args.family:
        region, meta = _family_region(args.family, args.grid, args.epsilon)
    else:
        region, meta = _klm_region(args.dim, args.grid or 5, args.epsilon)
    obj, picture = slice_document(region, meta)
    text = io.dumps(obj)
    _emit(args, {"slice.json": text, "slice.svg": picture}, text)
    return EXIT_OK


def cmd_complexity(args) -> int:
    factors = parse_factors(args.factors)
    ray = parse_ray(args.ray)
    table = kunneth_table(factors, ray, args.N)
    csv_text = io.table_to_csv(table)
    sidecar = io.dumps(io.table_sidecar(table, factors, ray))
    _emit(args, {"table.csv": csv_text, "table.json": sidecar}, csv_text)
    return EXIT_OK


def _certify(table, meta, args):
    bounds = None
    if args.deg_u is not None or args.deg_v is not None:
        bounds = (args.deg_u if args.deg_u is not None else table.d + 1,
                  args.deg_v if args.deg_v is not None else table.d + 1)
    return certify_complexity(table, bounds, args.holdout, args.modulus, args.max_transient)


def cmd_certify(args) -> int:
    table, meta = io.load_table(resolve(args.table))
    cert = _certify(table, meta, args)
    if cert.verdict is Verdict.NO_FIT_FOUND:
        sys.stdout.write(io.dumps({"verdict": cert.verdict.value,
                                   "failing_slice": cert.failing_slice}))
        print(f"no fit found for slice i = {cert.failing_slice}", file=sys.stderr)
        return EXIT_NOFIT
    text = io.dumps(io.certificate_to_json(cert, source=meta or None))
    _emit(args, {"certificate.json": text}, text)
    return EXIT_OK


def render_report(slice_obj: dict, cert_obj: dict, slice_picture: str | None = None) -> str:
    """One HTML page juxtaposing the boundary verdict and the holonomicity verdict."""
    verdict = slice_obj["verdict"]
    meta = slice_obj.get("meta", {})
    source = cert_obj.get("source", {})
    rows = [
        ("Divisor (slice)", meta.get("divisor", "?")),
        ("Boundary polynomial Q(s,t)", slice_obj["boundary"]),
        ("Boundary verdict", verdict["kind"]),
        ("det of conic matrix", verdict["determinant"]),
        ("Complexity table source", f"{source.get('factors', '?')}, ray {source.get('ray', '?')}"),
        ("Complexity verdict", cert_obj["verdict"]),
        ("q-operator order", str(cert_obj.get("q_operator", {}).get("order", "-"))),
    ]
    table = "".join(f"<tr><th>{escape(k)}</th><td>{escape(str(v))}</td></tr>\n" for k, v in rows)
    return (
        "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
        "<title>nokholo report</title></head><body>\n"
        "<h1>Boundary shape versus holonomicity</h1>\n"
        f"<table border=\"1\" cellpadding=\"4\">\n{table}</table>\n"
        f"<h2>Slice family</h2>\n{slice_picture or ''}\n"
        "<h2>Certificate</h2>\n<pre>" + escape(io.dumps(cert_obj)) + "</pre>\n"
        "</body></html>\n"
    )


def cmd_report(args) -> int:
    if args.klm:
        region, meta = _klm_region(args.dim, 5)
        slice_obj, picture = slice_document(region, meta)
        factors = [ProjectiveSpace(args.dim - 2), ProjectiveSpace(2)]
        ray = parse_ray("3,1")
        table = kunneth_table(factors, ray, args.N)
        cert = certify_complexity(table, holdout=args.holdout)
        source = io.table_sidecar(table, factors, ray)
        cert_obj = json.loads(io.dumps(io.certificate_to_json(cert, source=source)))
    elif args.slice_json and args.certificate_json:
        slice_obj = json.loads(resolve(args.slice_json).read_text())
        cert_obj = json.loads(resolve(args.certificate_json).read_text())
        svg_path = resolve(args.slice_json).with_suffix(".svg")
        picture = svg_path.read_text() if svg_path.exists() else None
    else:
        raise UsageError("report needs --klm or both SLICE_JSON and CERTIFICATE_JSON")
    html = render_report(slice_obj, cert_obj, picture)
    summary = io.dumps({"boundary_verdict": slice_obj["verdict"]["kind"],
                        "complexity_verdict": cert_obj["verdict"],
                        "divisor": slice_obj.get("meta", {}).get("divisor")})
    _emit(args, {"report.html": html}, summary)
    return EXIT_OK


# -- wiring ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nokholo", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def out(sp):
        sp.add_argument("-o", "--out", help="directory for output files")

    z = sub.add_parser("zariski", help="Zariski decomposition of a class")
    z.add_argument("surface")
    z.add_argument("divisor")
    out(z)
    z.set_defaults(func=cmd_zariski)

    b = sub.add_parser("body", help="Newton-Okounkov body on a surface")
    b.add_argument("surface")
    b.add_argument("divisor")
    b.add_argument("--curve", required=True, help="flag curve class")
    b.add_argument("--point", default="generic",
                   help="'generic' or the negative curve through the flag point")
    out(b)
    b.set_defaults(func=cmd_body)

    s = sub.add_parser("slice", help="slice family and boundary certificate")
    s.add_argument("--dim", type=int, default=4)
    s.add_argument("--grid", type=int, default=None, help="number of grid points in [0, eps)")
    s.add_argument("--epsilon", default=None)
    s.add_argument("--family", default=None, help="JSON family description (control fixtures)")
    out(s)
    s.set_defaults(func=cmd_slice)

    c = sub.add_parser("complexity", help="cohomology table of nD")
    c.add_argument("--factors", required=True, help="e.g. P2xP2, ExP1")
    c.add_argument("--ray", required=True, help="multidegree of D, e.g. 3,1")
    c.add_argument("-N", type=int, default=40)
    out(c)
    c.set_defaults(func=cmd_complexity)

    k = sub.add_parser("certify", help="certify holonomicity of a table")
    k.add_argument("table")
    k.add_argument("--deg-u", type=int, default=None)
    k.add_argument("--deg-v", type=int, default=None)
    k.add_argument("--holdout", type=int, default=10)
    k.add_argument("--modulus", type=int, default=1)
    k.add_argument("--max-transient", type=int, default=None)
    out(k)
    k.set_defaults(func=cmd_certify)

    r = sub.add_parser("report", help="bundle both certificates into one HTML page")
    r.add_argument("slice_json", nargs="?")
    r.add_argument("certificate_json", nargs="?")
    r.add_argument("--klm", action="store_true", help="compute everything for O(3,1)")
    r.add_argument("--dim", type=int, default=4)
    r.add_argument("-N", type=int, default=40)
    r.add_argument("--holdout", type=int, default=10)
    out(r)
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"nokholo: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"nokholo: {exc}", file=sys.stderr)
        return EXIT_MATH
    except ValueError as exc:
        print(f"nokholo: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
