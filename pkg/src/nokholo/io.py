"""JSON and CSV formats.

Rationals are written as canonical ``"p/q"`` strings (``"p"`` when integral),
quadratic surds as objects carrying both the exact parts and a 12-digit
decimal for reading.  Keys are sorted so equal inputs give identical bytes.
"""
from __future__ import annotations

import csv
import io as _io
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .cohomology import CoefficientTable, format_factors, parse_factors
from .holonomic import HolonomicCertificate, OdeOperator, RationalFit, Verdict
from .lattice import ConeKind, ConeSpec, DivisorClass, IntersectionForm, SurfaceData
from .nok import (
    MONOMIALS,
    Affine,
    BoundaryKind,
    BoundaryVerdict,
    NokBody,
    Piece,
    SliceRegion,
)
from .poly import Poly2
from .surd import QuadSurd


def rat(x) -> str:
    return str(Fraction(x))


def surd_to_json(x) -> dict:
    x = QuadSurd.coerce(x)
    return {
        "a": rat(x.a),
        "b": rat(x.b),
        "d": x.d,
        "minpoly": [rat(c) for c in x.minimal_polynomial()],
        "approx": x.to_decimal_string(12),
    }


def surd_from_json(obj) -> QuadSurd:
    if isinstance(obj, str):
        return QuadSurd(Fraction(obj))
    return QuadSurd(Fraction(obj["a"]), Fraction(obj["b"]), obj["d"])


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_atomic(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- surfaces ----------------------------------------------------------------


def _cone_to_json(cone: ConeSpec) -> dict:
    if cone.kind is ConeKind.POLYHEDRAL:
        return {"kind": "polyhedral",
                "inequalities": [[rat(x) for x in c.coords] for c in cone.inequalities]}
    return {"kind": "quadratic",
            "ample_reference": [rat(x) for x in cone.ample_reference.coords]}


def _cone_from_json(obj, lid) -> ConeSpec:
    kind = ConeKind(obj["kind"].lower())
    if kind is ConeKind.POLYHEDRAL:
        return ConeSpec.polyhedral(
            DivisorClass(tuple(Fraction(x) for x in c), lid) for c in obj["inequalities"])
    return ConeSpec.quadratic(
        DivisorClass(tuple(Fraction(x) for x in obj["ample_reference"]), lid))


def surface_to_json(s: SurfaceData) -> dict:
    return {
        "id": s.lattice_id,
        "basis": list(s.basis_names),
        "matrix": [[rat(x) for x in row] for row in s.form.matrix],
        "nef": _cone_to_json(s.nef),
        "pseff": _cone_to_json(s.pseff),
        "negative_curves": [[rat(x) for x in c.coords] for c in s.negative_curves],
        "point_multiplicities": {str(k): v for k, v in sorted(s.point_multiplicities.items())},
        "pullback_degree": s.pullback_degree,
    }


def surface_from_json(obj, default_id: str = "surface") -> SurfaceData:
    lid = obj.get("id", default_id)
    return SurfaceData(
        lattice_id=lid,
        basis_names=tuple(obj["basis"]),
        form=IntersectionForm(tuple(tuple(Fraction(x) for x in row) for row in obj["matrix"])),
        nef=_cone_from_json(obj["nef"], lid),
        pseff=_cone_from_json(obj["pseff"], lid),
        negative_curves=tuple(DivisorClass(tuple(Fraction(x) for x in c), lid)
                              for c in obj.get("negative_curves", [])),
        point_multiplicities={int(k): int(v)
                              for k, v in obj.get("point_multiplicities", {}).items()},
        pullback_degree=int(obj.get("pullback_degree", 1)),
    )


def load_surface(path) -> SurfaceData:
    path = Path(path)
    with open(path) as fh:
        return surface_from_json(json.load(fh), default_id=path.stem)


# -- decompositions and bodies ------------------------------------------------


def decomposition_to_json(s: SurfaceData, dec) -> dict:
    return {
        "P": s.format(dec.positive_part),
        "N": [[s.curve_name(j), rat(a)] for j, a in dec.negative_part],
    }


def _affine_to_json(f: Affine) -> dict:
    return {"slope": rat(f.slope), "intercept": rat(f.intercept)}


def body_to_json(body: NokBody) -> dict:
    return {
        "breakpoints": [surd_to_json(t) for t in body.breakpoints],
        "pieces": [{"lo": surd_to_json(p.lo), "hi": surd_to_json(p.hi),
                    "alpha": _affine_to_json(p.alpha), "beta": _affine_to_json(p.beta)}
                   for p in body.pieces],
        "vertices": [[surd_to_json(x), surd_to_json(y)] for x, y in body.vertices],
        "area": surd_to_json(body.area()),
    }


def body_from_json(obj) -> NokBody:
    def aff(o):
        return Affine(Fraction(o["slope"]), Fraction(o["intercept"]))

    return NokBody(tuple(
        Piece(surd_from_json(p["lo"]), surd_from_json(p["hi"]), aff(p["alpha"]), aff(p["beta"]))
        for p in obj["pieces"]))


# -- slice regions ------------------------------------------------------------


def region_to_json(region: SliceRegion) -> dict:
    s = region.surface
    return {
        "surface": surface_to_json(s),
        "family": {"base": s.format(region.base), "wall": s.format(region.wall),
                   "curve": s.format(region.curve)},
        "epsilon": rat(region.epsilon),
        "boundary_polynomial": {"monomials": list(MONOMIALS),
                                "coefficients": [str(c) for c in region.boundary_polynomial]},
        "samples": [{"s": rat(x), "mu": surd_to_json(mu)} for x, mu in region.samples],
        "holdout": [{"s": rat(x), "mu": surd_to_json(mu)} for x, mu in region.holdout],
    }


def region_from_json(obj) -> SliceRegion:
    s = surface_from_json(obj["surface"])
    fam = obj["family"]
    return SliceRegion(
        surface=s,
        base=s.parse(fam["base"]),
        wall=s.parse(fam["wall"]),
        curve=s.parse(fam["curve"]),
        epsilon=Fraction(obj["epsilon"]),
        boundary_polynomial=tuple(int(c) for c in obj["boundary_polynomial"]["coefficients"]),
        samples=tuple((Fraction(p["s"]), surd_from_json(p["mu"])) for p in obj["samples"]),
        holdout=tuple((Fraction(p["s"]), surd_from_json(p["mu"])) for p in obj["holdout"]),
    )


def boundary_string(q) -> str:
    parts = []
    for c, mono in zip(q, MONOMIALS):
        if not c:
            continue
        mag = abs(c)
        body = str(mag) if mono == "1" else (mono if mag == 1 else f"{mag}*{mono}")
        parts.append(("-" if c < 0 else "+") + body)
    text = "".join(parts) or "0"
    return text[1:] if text.startswith("+") else text


def verdict_to_json(v: BoundaryVerdict) -> dict:
    return {
        "kind": v.kind.value,
        "matrix": [[rat(x) for x in row] for row in v.matrix],
        "determinant": rat(v.determinant),
        "pieces": list(v.pieces),
    }


def verdict_from_json(obj) -> BoundaryVerdict:
    return BoundaryVerdict(
        BoundaryKind(obj["kind"]),
        tuple(tuple(Fraction(x) for x in row) for row in obj["matrix"]),
        Fraction(obj["determinant"]),
        tuple(obj.get("pieces", ())),
    )


# -- coefficient tables -------------------------------------------------------


def table_to_csv(table: CoefficientTable) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "i", "dim"])
    for n, row in enumerate(table.entries):
        for i, x in enumerate(row):
            if x or n == 0:
                w.writerow([n, i, x])
    return buf.getvalue()


def table_sidecar(table: CoefficientTable, factors=None, ray=None) -> dict:
    out = {"N": table.N, "d": table.d}
    if factors is not None:
        out["factors"] = format_factors(factors)
    if ray is not None:
        out["ray"] = list(ray.coefficients)
    return out


def table_from_csv(text: str, N: int | None = None, d: int | None = None) -> CoefficientTable:
    rows = list(csv.DictReader(_io.StringIO(text)))
    cells = {(int(r["n"]), int(r["i"])): int(r["dim"]) for r in rows}
    if N is None:
        N = max((n for n, _ in cells), default=0)
    if d is None:
        d = max((i for _, i in cells), default=0)
    entries = tuple(tuple(cells.get((n, i), 0) for i in range(d + 1)) for n in range(N + 1))
    return CoefficientTable(N, d, entries)


def load_table(path) -> tuple[CoefficientTable, dict]:
    """Read ``table.csv`` together with its ``table.json`` sidecar when present."""
    path = Path(path)
    meta = {}
    sidecar = path.with_suffix(".json")
    if sidecar.exists():
        meta = json.loads(sidecar.read_text())
    table = table_from_csv(path.read_text(), meta.get("N"), meta.get("d"))
    if "factors" in meta:
        parse_factors(meta["factors"])
    return table, meta


# -- certificates -------------------------------------------------------------


def poly_to_json(p) -> list[str]:
    return [rat(c) for c in p]


def poly2_to_json(p: Poly2) -> list:
    return [[a, b, rat(c)] for (a, b), c in p.sorted_terms()]


def poly2_from_json(obj) -> Poly2:
    return Poly2({(a, b): Fraction(c) for a, b, c in obj})


def operator_to_json(op: OdeOperator) -> dict:
    return {"variable": op.variable, "order": op.order,
            "coefficients": [poly2_to_json(c) for c in op.coefficients]}


def operator_from_json(obj) -> OdeOperator:
    return OdeOperator(obj["variable"], tuple(poly2_from_json(c) for c in obj["coefficients"]))


def fit_to_json(fit: RationalFit) -> dict:
    return {"numerator": poly_to_json(fit.numerator),
            "denominator": poly_to_json(fit.denominator),
            "transient_prefix": poly_to_json(fit.transient_prefix)}


def fit_from_json(obj) -> RationalFit:
    return RationalFit(tuple(Fraction(c) for c in obj["numerator"]),
                       tuple(Fraction(c) for c in obj["denominator"]),
                       tuple(Fraction(c) for c in obj["transient_prefix"]))


def certificate_to_json(cert: HolonomicCertificate, source: dict | None = None) -> dict:
    out = {
        "verdict": cert.verdict.value,
        "d": cert.d,
        "N": cert.N,
        "modulus": cert.modulus,
        "fits": [fit_to_json(f) for f in cert.fits],
        "failing_slice": cert.failing_slice,
    }
    if cert.verdict is Verdict.CERTIFIED_HOLONOMIC:
        out.update({
            "closed_form": {"numerator": poly2_to_json(cert.numerator),
                            "denominator": poly_to_json(cert.denominator)},
            "x_operator": operator_to_json(cert.x_operator),
            "q_operator": operator_to_json(cert.q_operator),
            "validation": {
                "holdout_residuals": {str(i): [rat(r) for r in res]
                                      for i, res in cert.validation["holdout_residuals"].items()},
                "x_operator_identity": cert.validation["x_operator_identity"],
                "q_operator_identity": cert.validation["q_operator_identity"],
            },
        })
    if source:
        out["source"] = source
    return out


def certificate_from_json(obj) -> HolonomicCertificate:
    verdict = Verdict(obj["verdict"])
    fits = tuple(fit_from_json(f) for f in obj["fits"])
    if verdict is Verdict.NO_FIT_FOUND:
        return HolonomicCertificate(verdict, obj["d"], obj["N"], obj["modulus"], fits,
                                    failing_slice=obj["failing_slice"])
    val = obj["validation"]
    return HolonomicCertificate(
        verdict, obj["d"], obj["N"], obj["modulus"], fits,
        poly2_from_json(obj["closed_form"]["numerator"]),
        tuple(Fraction(c) for c in obj["closed_form"]["denominator"]),
        operator_from_json(obj["x_operator"]),
        operator_from_json(obj["q_operator"]),
        None,
        {"holdout_residuals": {int(i): [Fraction(r) for r in res]
                               for i, res in val["holdout_residuals"].items()},
         "x_operator_identity": val["x_operator_identity"],
         "q_operator_identity": val["q_operator_identity"]},
    )
