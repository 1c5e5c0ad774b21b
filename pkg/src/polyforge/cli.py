"""Command line front end.

Every subcommand is a thin wrapper over the library: parse arguments,
load JSON, call the construction or check, report, and translate the
outcome into an exit code.  Exit 0 means success, 1 means a check
failed, 2 means a usage problem (bad flags, missing or malformed
files).  All output is deterministic for fixed flags; the only
environment input is POLYFORGE_BUDGET.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import arrangement as arr_mod
from . import cct as cct_mod
from . import hirschpath
from . import morse as morse_mod
from . import projective as proj_mod
from .complexcore import SimplicialComplex
from .exactfield import ONE, ZERO, FieldElem

DEFAULT_BUDGET = 10 ** 6


class _UsageError(Exception):
    pass


@dataclass(frozen=True)
class CertificateBundle:
    """Named checks over one subject, re-verifiable from the embedded data."""

    kind: str
    subject: dict
    checks: tuple
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(passed for _, passed, _ in self.checks)

    def to_json(self) -> dict:
        doc = {
            "format": "polyforge/1",
            "kind": self.kind,
            "subject": self.subject,
            "checks": [
                {"name": name, "pass": passed, "witness": witness}
                for name, passed, witness in self.checks
            ],
            "pass": self.ok,
        }
        doc.update(self.extra)
        return doc


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _UsageError(f"{path} is not valid JSON: {exc}") from exc


def _load_complex(path: str) -> SimplicialComplex:
    data = _load_json(path)
    try:
        return SimplicialComplex.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise _UsageError(f"{path} is not a complex document: {exc}") from exc


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {out}")
    else:
        print(text, end="")


def _budget(args) -> int:
    if args.budget is not None:
        return args.budget
    return int(os.environ.get("POLYFORGE_BUDGET", str(DEFAULT_BUDGET)))


def _fe_text(x: FieldElem) -> str:
    return repr(x)[3:-1]


def _point_text(p) -> str:
    return "(" + ", ".join(_fe_text(x) for x in p) + ")"


def _parse_facet(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise _UsageError(f"facet must be comma-separated vertex ids: {text!r}") from exc


_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(x(?:\^(\d+))?)?$")


def _parse_poly(text: str):
    """Coefficients, ascending, of a polynomial like 'x^2 - 2' or '7x-3'."""
    s = text.replace(" ", "").replace("*", "")
    if not s:
        raise _UsageError("empty polynomial")
    coeffs = {}
    for term in re.findall(r"[+-]?[^+-]+", s):
        m = _TERM.match(term)
        if not m or m.end() != len(term) or (not m.group(2) and not m.group(3)):
            raise _UsageError(f"cannot parse polynomial term {term!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            exp = int(m.group(4)) if m.group(4) else 1
        else:
            exp = 0
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + sign * coef
    degree = max(coeffs)
    return [coeffs.get(i, Fraction(0)) for i in range(degree + 1)]


_ROOTS = {"2": FieldElem.sqrt2, "3": FieldElem.sqrt3, "6": FieldElem.sqrt6}


def _parse_value(text: str) -> FieldElem:
    """A rational like '3/7', or a rational multiple of sqrt2/sqrt3/sqrt6."""
    s = text.replace(" ", "")
    m = re.fullmatch(r"[+-]?\d+(?:/\d+)?", s)
    if m:
        return FieldElem(Fraction(s))
    m = re.fullmatch(r"([+-])?(?:(\d+(?:/\d+)?)\*?)?sqrt([236])", s)
    if m:
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            coef = -coef
        return _ROOTS[m.group(3)]() * FieldElem(coef)
    raise _UsageError(f"cannot parse value {text!r}")


# ---------------------------------------------------------------------------
# hirsch

def _cmd_hirsch_segment(args) -> int:
    c = _load_complex(args.complex)
    path = hirschpath.combinatorial_segment(
        c, _parse_facet(args.from_facet), _parse_facet(args.to_facet))
    hirschpath.validate_path(c, path)
    non_revisiting = hirschpath.is_non_revisiting(path)
    bound = hirschpath.hirsch_bound(c)
    bundle = CertificateBundle(
        kind="facet-path",
        subject={
            "facet_count": len(c.facets),
            "dim": c.dim,
            "length": path.length(),
            "hirsch_bound": bound,
        },
        checks=(
            ("ridge-adjacency", True, "each consecutive pair shares a ridge"),
            ("non-revisiting", non_revisiting,
             "every vertex star is met along a contiguous subpath"),
        ),
        extra={"path": path.to_json()},
    )
    print(f"segment of length {path.length()}, "
          f"non-revisiting: {'yes' if non_revisiting else 'no'}")
    _emit(bundle.to_json(), args.out)
    return 0 if bundle.ok else 1


def _cmd_hirsch_diameter(args) -> int:
    c = _load_complex(args.complex)
    diam = hirschpath.dual_diameter(c)
    bound = hirschpath.hirsch_bound(c)
    ok = diam <= bound
    print(f"dual diameter = {diam}")
    print(f"hirsch bound = {bound}")
    if args.out:
        bundle = CertificateBundle(
            kind="diameter",
            subject={"facet_count": len(c.facets), "dim": c.dim,
                     "diameter": diam, "hirsch_bound": bound},
            checks=(("within-hirsch-bound", ok, f"{diam} <= {bound}"),),
        )
        _emit(bundle.to_json(), args.out)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# morse

def _cmd_morse_collapse(args) -> int:
    c = _load_complex(args.complex)
    budget = _budget(args)
    ledger = None
    try:
        if args.out_j is not None:
            if args.target is None:
                raise _UsageError("--out-j needs --target")
            d = _load_complex(args.target)
            matching, ledger = morse_mod.out_j_collapse(
                c, d, args.out_j, budget=budget, seed=args.seed)
        else:
            target = _load_complex(args.target) if args.target else None
            matching = morse_mod.collapse_search(
                c, target=target, budget=budget, seed=args.seed)
    except morse_mod.SearchExhausted as exc:
        print(f"FAIL: {exc}")
        return 1
    print(f"collapse found: {len(matching.pairs)} pairs")
    if ledger is not None:
        print(f"ledger: {len(ledger)} crossing faces "
              f"{[list(f) for f in ledger]}")
    doc = {"format": "polyforge/1", "kind": "morse-matching"}
    doc.update(matching.to_json())
    if ledger is not None:
        doc["ledger"] = [list(f) for f in ledger]
    _emit(doc, args.out)
    return 0


def _cmd_morse_validate(args) -> int:
    c = _load_complex(args.complex)
    data = _load_json(args.matching)
    try:
        matching = morse_mod.MorseMatching.from_json(data)
    except (KeyError, TypeError) as exc:
        raise _UsageError(f"{args.matching} is not a matching document: {exc}") from exc
    ok = morse_mod.validate_matching(c, matching)
    print(f"matching with {len(matching.pairs)} pairs: "
          f"{'valid' if ok else 'invalid'}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# arrangements

def _cmd_arr_betti(args) -> int:
    data = _load_json(args.file)
    try:
        arr = arr_mod.arrangement_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise _UsageError(f"{args.file} is not an arrangement document: {exc}") from exc
    value = arr_mod.gm_betti(arr, args.i)
    print(f"b_{args.i} = {value}")
    if args.out:
        _emit({"format": "polyforge/1", "kind": "betti",
               "i": args.i, "value": value}, args.out)
    return 0


# ---------------------------------------------------------------------------
# cct

def _cct_checks(geo, jobs: int):
    checks = [
        ("symmetry", cct_mod.check_symmetric(geo), "screw motion invariance"),
        ("transversality", cct_mod.check_transversal(geo),
         "tube rays cross every slab cell"),
        ("obtuse-slope", cct_mod.check_slope_obtuse(geo),
         "consecutive slope vectors at obtuse angles"),
        ("orientation", cct_mod.check_oriented(geo),
         "all cells tilt toward the core circle"),
    ]
    normals = None
    if geo.width >= 3:
        try:
            normals = cct_mod.check_convex_position(geo, jobs=jobs)
            checks.append(("convex-position", True,
                           f"{len(normals)} facets exactly exposed"))
        except ValueError as exc:
            checks.append(("convex-position", False, str(exc)))
    else:
        checks.append(("convex-position", True, "skipped: width below three"))
    return checks, normals


def _cmd_cct_generate(args) -> int:
    geo = cct_mod.generate(args.n)
    checks, normals = _cct_checks(geo, args.jobs)
    expected = 12 * (args.n + 1)
    checks.append(("vertex-count", len(geo.coords) == expected,
                   f"f0 = {len(geo.coords)}, expected {expected}"))
    extra = {"cct": geo.to_json()}
    if normals:
        extra["facet_normals"] = {
            str(i): [x.to_json() for x in n] for i, n in normals.items()}
    bundle = CertificateBundle(
        kind="cct-bundle",
        subject={"width": geo.width, "f0": len(geo.coords)},
        checks=tuple(checks),
        extra=extra,
    )
    for name, passed, _ in bundle.checks:
        print(f"{name}: {'pass' if passed else 'FAIL'}")
    print(f"f0 = {len(geo.coords)}")
    _emit(bundle.to_json(), args.out)
    return 0 if bundle.ok else 1


def _cmd_cct_verify(args) -> int:
    data = _load_json(args.file)
    kind = data.get("kind")
    if kind == "cct-bundle":
        inner = data.get("cct", {})
    elif kind == "cct":
        inner = data
    else:
        raise _UsageError(f"{args.file} holds no tube document")
    try:
        geo = cct_mod.GeoCCT.from_json(inner)
    except (KeyError, TypeError, ValueError) as exc:
        raise _UsageError(f"{args.file} is malformed: {exc}") from exc
    ok = True
    for name, passed, witness in _cct_checks(geo, args.jobs)[0]:
        print(f"{name}: {'pass' if passed else 'FAIL'}")
        ok = ok and passed
    return 0 if ok else 1


def _cmd_cct_kappa(args) -> int:
    chain = cct_mod.kappa_chain(args.upto)
    for i, point in enumerate(chain):
        lam_exact = cct_mod.clifford_lambda_exact(point)
        lam_float = cct_mod.clifford_lambda(point)
        print(f"kappa[{i:>2}] = {_point_text(point)}   "
              f"lambda = {_fe_text(lam_exact)} = {format(lam_float, '.6g')}")
    return 0


# ---------------------------------------------------------------------------
# proj

def _cmd_proj_staudt(args) -> int:
    coeffs = _parse_poly(args.poly)
    prog = proj_mod.compile_polynomial(coeffs)
    print(f"program with {len(prog.steps)} steps for coefficients "
          f"{[str(c) for c in coeffs]}")
    if args.at is not None:
        value = _parse_value(args.at)
        result = proj_mod.evaluate_slp(prog, {"x": (value, ZERO, ONE)})
        out_point = result[prog.outputs[0]]
        is_root = proj_mod.proj_equal(out_point, (ZERO, ZERO, ONE))
        print(f"evaluated at {args.at}: {_point_text(out_point)}")
        print(f"root: {'yes' if is_root else 'no'}")
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(prog.to_json(), indent=2) + "\n")
        print(f"wrote {args.emit}")
    elif args.out:
        _emit(prog.to_json(), args.out)
    return 0


def _cmd_proj_lawrence(args) -> int:
    data = _load_json(args.config)
    cfg = proj_mod.PPConfig.from_json(data)
    lifted = proj_mod.lawrence_extension(cfg)
    normal, offset = proj_mod.lawrence_face_certificate(lifted)
    f0 = len(lifted.polytope_vertices)
    expected = len(cfg.polytope_vertices) + 2 * len(cfg.free_points)
    bundle = CertificateBundle(
        kind="lawrence",
        subject={
            "ambient_dim": lifted.ambient_dim,
            "f0": f0,
            "source_dim": cfg.ambient_dim,
            "free_count": len(cfg.free_points),
        },
        checks=(
            ("vertex-certification", True,
             "every declared vertex is outside the hull of the others"),
            ("count-formula", f0 == expected, f"{f0} vertices"),
            ("face-certificate", True,
             f"normal {_point_text(normal)}, offset {_fe_text(offset)}"),
        ),
        extra={"config": lifted.to_json()},
    )
    print(f"lifted to dimension {lifted.ambient_dim} with {f0} vertices")
    _emit(bundle.to_json(), args.out)
    return 0 if bundle.ok else 1


def _cmd_proj_kconfig(args) -> int:
    k = proj_mod.build_k_configuration()
    cert = k.certificate
    checks = ()
    if args.verify:
        from .cct import seed_ct1
        replay_ok = proj_mod.frame_replay(k.points, k.derivation)
        ring = {k.points[name] for name in k.ct_vertex_names}
        checks = (
            ("replay", replay_ok,
             "all derived points reproduced from the nine generators"),
            ("coplanarity", cert["rank_at_parameter"] == 4,
             f"six ring points have rank {cert['rank_at_parameter']}"),
            ("coplanarity-alternative", cert["rank_at_alternative"] == 5,
             f"rank {cert['rank_at_alternative']} at parameter "
             f"{cert['alternative']}"),
            ("tube-match", ring == set(seed_ct1().coords),
             "ring points equal the width-1 tube vertices"),
        )
    bundle = CertificateBundle(
        kind="k-config",
        subject={
            "f0": len(k.points),
            "ring_points": len(k.ct_vertex_names),
            "companion_points": len(k.free_names),
            "points": {name: [x.to_json() for x in p]
                       for name, p in sorted(k.points.items())},
        },
        checks=checks,
        extra={"certificate": {
            "parameter": cert["parameter"].to_json(),
            "pinning": [str(c) for c in cert["pinning"]],
            "six_points": list(cert["six_points"]),
            "rank_at_parameter": cert["rank_at_parameter"],
            "alternative": str(cert["alternative"]),
            "rank_at_alternative": cert["rank_at_alternative"],
        }},
    )
    print(f"{len(k.points)} points "
          f"({len(k.ct_vertex_names)} tube vertices + "
          f"{len(k.free_names)} companions)")
    for name, passed, _ in checks:
        print(f"{name}: {'pass' if passed else 'FAIL'}")
    _emit(bundle.to_json(), args.out)
    return 0 if bundle.ok else 1


def _cmd_proj_pcctp(args) -> int:
    counts = proj_mod.pcctp_counts(args.n)
    print(f"width {args.n}: dimension {counts['dim']}, "
          f"vertices {counts['f0']}")
    if args.out:
        _emit({"format": "polyforge/1", "kind": "pcctp-counts", **counts},
              args.out)
    return 0


# ---------------------------------------------------------------------------
# wiring

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="FILE",
                        help="write the JSON artifact here")
    common.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for per-facet checks")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized search restarts")
    common.add_argument("--budget", type=int, default=None,
                        help="search node budget (default POLYFORGE_BUDGET "
                             f"or {DEFAULT_BUDGET})")

    parser = argparse.ArgumentParser(
        prog="polyforge",
        description="exact certificates for paths, collapses, "
                    "arrangements, tubes, and incidence constructions")
    groups = parser.add_subparsers(dest="group")

    hirsch = groups.add_parser("hirsch").add_subparsers(dest="command")
    seg = hirsch.add_parser("segment", parents=[common])
    seg.add_argument("--complex", required=True)
    seg.add_argument("--from", dest="from_facet", required=True)
    seg.add_argument("--to", dest="to_facet", required=True)
    seg.set_defaults(handler=_cmd_hirsch_segment)
    dia = hirsch.add_parser("diameter", parents=[common])
    dia.add_argument("--complex", required=True)
    dia.set_defaults(handler=_cmd_hirsch_diameter)

    morse = groups.add_parser("morse").add_subparsers(dest="command")
    col = morse.add_parser("collapse", parents=[common])
    col.add_argument("--complex", required=True)
    col.add_argument("--target")
    col.add_argument("--out-j", dest="out_j", type=int, default=None)
    col.set_defaults(handler=_cmd_morse_collapse)
    val = morse.add_parser("validate", parents=[common])
    val.add_argument("--complex", required=True)
    val.add_argument("--matching", required=True)
    val.set_defaults(handler=_cmd_morse_validate)

    arr = groups.add_parser("arr").add_subparsers(dest="command")
    betti = arr.add_parser("betti", parents=[common])
    betti.add_argument("--file", required=True)
    betti.add_argument("--i", type=int, required=True)
    betti.set_defaults(handler=_cmd_arr_betti)

    cct = groups.add_parser("cct").add_subparsers(dest="command")
    gen = cct.add_parser("generate", parents=[common])
    gen.add_argument("--n", type=int, required=True)
    gen.set_defaults(handler=_cmd_cct_generate)
    ver = cct.add_parser("verify", parents=[common])
    ver.add_argument("--file", required=True)
    ver.set_defaults(handler=_cmd_cct_verify)
    kap = cct.add_parser("kappa", parents=[common])
    kap.add_argument("--upto", type=int, required=True)
    kap.set_defaults(handler=_cmd_cct_kappa)

    proj = groups.add_parser("proj").add_subparsers(dest="command")
    sta = proj.add_parser("staudt", parents=[common])
    sta.add_argument("--poly", required=True)
    sta.add_argument("--at")
    sta.add_argument("--emit", metavar="FILE")
    sta.set_defaults(handler=_cmd_proj_staudt)
    law = proj.add_parser("lawrence", parents=[common])
    law.add_argument("--config", required=True)
    law.set_defaults(handler=_cmd_proj_lawrence)
    kcfg = proj.add_parser("k-config", parents=[common])
    kcfg.add_argument("--verify", action="store_true")
    kcfg.set_defaults(handler=_cmd_proj_kconfig)
    pcc = proj.add_parser("pcctp", parents=[common])
    pcc.add_argument("--n", type=int, required=True)
    pcc.add_argument("--counts", action="store_true")
    pcc.set_defaults(handler=_cmd_proj_pcctp)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    if not hasattr(args, "handler"):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"FAIL: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
