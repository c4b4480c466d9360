"""Command-line front end: ``vogan-lab <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from . import render
from .chevalley import (
    OracleError, build_chevalley, eigenspace_dims, realize_kac, realize_sigma, sign_classes,
)
from .diagram import SCHEMA, DiagramError, affine_extend, fold_quotient
from .involution import RootInvolution, dim_invariant
from .kac import KacError, Painting, enumerate_kac, kac_subalgebra, kac_table, real_form_of_theta
from .rootsys import InvalidTypeError, SimpleType, build_root_system
from .sympairs import (
    DoubleVoganDiagram, SymplecticError, UnsupportedDiagram, enumerate_symplectic, involution_class,
    oracle_report, sigma_of_double,
)
from .vogan import AffineVoganDiagram, ParityError, VoganError, classify, orbit_set, parity, reduce_canonical

EXIT_TYPE = 3
EXIT_JSON = 4
EXIT_PARITY = 5
EXIT_UNSUPPORTED = 6
EXIT_GOLDEN = 7

RANK_CAP_VAR = "VOGAN_LAB_RANK_CAP"
GOLDEN_TYPES = ("A2 A3 A4 A5 A6 A7 B2 B3 B4 B5 B6 C2 C3 C4 C5 C6 "
                "D4 D5 D6 D7 E6 E7 E8 F4 G2").split()


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def rank_cap() -> int:
    raw = os.environ.get(RANK_CAP_VAR, "12")
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{RANK_CAP_VAR} must be an integer, got {raw!r}", EXIT_TYPE) from None


def _type(args) -> SimpleType:
    try:
        t = SimpleType(args.type.upper(), args.rank)
    except InvalidTypeError as exc:
        raise CliError(f"invalid type: {exc}", EXIT_TYPE) from None
    if t.family in "ABCD" and t.rank > rank_cap():
        raise CliError(f"invalid rank {t.rank}: exceeds the rank cap {rank_cap()} (set {RANK_CAP_VAR})", EXIT_TYPE)
    return t


def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        doc = json.loads(text)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_JSON) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"malformed diagram JSON: {exc.msg} at line {exc.lineno}", EXIT_JSON) from None
    try:
        return render.from_json(doc)
    except InvalidTypeError as exc:
        raise CliError(f"invalid type: {exc}", EXIT_TYPE) from None
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed diagram JSON: {exc}", EXIT_JSON) from None


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommands

def cmd_roots(args) -> str:
    t = _type(args)
    rs = build_root_system(t)
    doc = {"schema": SCHEMA, "type": str(t), "positive_roots": rs.npos, "roots": 2 * rs.npos,
           "dim": rs.dim, "highest_root": list(rs.marks)}
    if args.format == "json":
        doc["positive"] = [list(rs.coeffs[k]) for k in range(rs.npos)]
        return _dump(doc)
    return f"{t}: |Delta| = {2 * rs.npos}, |Delta+| = {rs.npos}, dim L = {rs.dim}, highest root {list(rs.marks)}\n"


def _affine(t: SimpleType, twisted: bool):
    if twisted:
        try:
            return fold_quotient(t)
        except DiagramError as exc:
            raise CliError(str(exc), EXIT_UNSUPPORTED) from None
    return affine_extend(build_root_system(t))


def cmd_kac(args) -> str:
    t = _type(args)
    ad = _affine(t, args.twisted)
    rows = kac_table(ad)
    if args.format == "json":
        return _dump({"schema": SCHEMA, "type": str(t), "r": ad.r, "rows": rows})
    if args.format == "dot":
        return "".join(render.to_dot((ad, Painting.of(r["black"]))) for r in rows)
    lines = [f"{'name':<12} {'black':<10} {'L^theta':<14} {'dim':>4} {'delta':>6}"]
    for r in rows:
        lines.append(f"{r['name']:<12} {str(r['black']):<10} {r['subalgebra']:<14} {r['dim']:>4} {r['character']:>6}")
    return "\n".join(lines) + "\n"


def cmd_involutions(args) -> str:
    t = _type(args)
    rows = []
    ads = [affine_extend(build_root_system(t))]
    try:
        ads.append(fold_quotient(t))
    except DiagramError:
        pass
    for ad in ads:
        for p in enumerate_kac(ad):
            cls = involution_class(ad, p)
            k = kac_subalgebra(ad, p)
            rows.append({"r": ad.r, "black": list(p.sorted()), "fixed": str(k), "dim": k.dim,
                         "real_form": real_form_of_theta(ad, p).name, "class": cls.inner_outer,
                         "hermitian": cls.hermitian, "equal_rank": cls.equal_rank})
    if args.format == "json":
        return _dump({"schema": SCHEMA, "type": str(t), "involutions": rows})
    lines = []
    for r in rows:
        tag = "Hermitian" if r["hermitian"] else ""
        lines.append(f"r={r['r']} {str(r['black']):<8} {r['fixed']:<14} dim {r['dim']:<5} "
                     f"{r['real_form']:<12} {r['class']} {tag}".rstrip())
    return "\n".join(lines) + "\n"


def _require_vogan(x) -> AffineVoganDiagram:
    if not isinstance(x, AffineVoganDiagram):
        raise CliError("expected an affine Vogan diagram (kind \"affine_vogan\")", EXIT_JSON)
    return x


def _parity_error(v: AffineVoganDiagram) -> CliError:
    total = sum(o.mark for o in orbit_set(v))
    return CliError(f"parity rule violated: orbit-mark sum {total} is odd, so the diagram "
                    "does not represent an involution", EXIT_PARITY)


def cmd_reduce(args) -> str:
    v = _require_vogan(_load(args.input))
    if parity(v):
        raise _parity_error(v)
    cls = reduce_canonical(v)
    if args.format == "json":
        return _dump({"schema": SCHEMA, "canonical": cls.to_json()})
    return f"class {cls.family_id} (m = {cls.m}), circled {list(cls.circled)}, d = {list(cls.d)}\n"


def cmd_classify(args) -> str:
    x = _load(args.input)
    if isinstance(x, DoubleVoganDiagram):
        h = sigma_of_double(x)
    else:
        v = _require_vogan(x)
        if parity(v):
            raise _parity_error(v)
        h = classify(v)
    if args.format == "json":
        return _dump({"schema": SCHEMA, "fixed": h.to_json()})
    return f"{h} (dim {h.dim})\n"


def _golden_path(t: SimpleType):
    return resources.files("vogan_lab") / "golden" / f"symplectic_{t}.json"


def symplectic_document(t: SimpleType) -> str:
    return _dump({"schema": SCHEMA, "type": str(t),
                  "pairs": [p.to_json() for p in enumerate_symplectic(t)]})


def cmd_classify_symplectic(args) -> str:
    t = _type(args)
    if args.golden:
        path = _golden_path(t)
        if not path.is_file():
            raise CliError(f"no golden table shipped for {t}", EXIT_GOLDEN)
        fresh = symplectic_document(t)
        if fresh != path.read_text():
            raise CliError(f"golden mismatch for {t}", EXIT_GOLDEN)
        return f"{t}: golden table matches ({len(json.loads(fresh)['pairs'])} pairs)\n"
    pairs = enumerate_symplectic(t, verify=not args.no_verify)
    if args.format == "json":
        return _dump([p.to_json() for p in pairs])
    lines = []
    for p in pairs:
        flag = " [derived-name]" if p.derived_name else ""
        lines.append(f"({p.g.name}, {p.h_name})  {p.h}  family {p.family}{flag}")
    return "\n".join(lines) + ("\n" if lines else "")


def _verify_vogan(v: AffineVoganDiagram) -> dict:
    if parity(v):
        raise _parity_error(v)
    rs = build_root_system(v.diagram.type)
    sig = realize_sigma(v, build_chevalley(rs))
    plus, minus = eigenspace_dims(sig)
    signs = sign_classes(sig)
    formula = dim_invariant(rs, RootInvolution(rs, v.d), signs)
    h = classify(v)
    return {"parity": "even", "sigma_found": True, "involution": sig.is_involution(),
            "bracket_residual": sig.bracket_residual(), "fixed_dim": plus, "minus_dim": minus,
            "sign_partition": {"plus": len(signs.plus), "minus": len(signs.minus)},
            "formula_dim": formula, "classified": str(h), "classified_dim": h.dim,
            "agree": plus == formula == h.dim}


def _verify_kac(ad, p) -> dict:
    sig = realize_kac(ad, p)
    plus, minus = eigenspace_dims(sig)
    k = kac_subalgebra(ad, p)
    return {"sigma_found": True, "involution": sig.is_involution(), "bracket_residual": sig.bracket_residual(),
            "fixed_dim": plus, "minus_dim": minus, "kac_subalgebra": str(k), "kac_dim": k.dim,
            "agree": plus == k.dim}


def _verify_double(dv: DoubleVoganDiagram) -> dict:
    h = sigma_of_double(dv)
    rep = oracle_report(dv)
    return {**rep, "sigma_found": True, "classified": str(h), "classified_dim": h.dim,
            "agree": rep["fixed_dim"] == h.dim and rep["center_dim"] == h.center}


def cmd_oracle_verify(args) -> str:
    x = _load(args.input)
    if isinstance(x, DoubleVoganDiagram):
        report = _verify_double(x)
    elif isinstance(x, tuple):
        report = _verify_kac(*x)
    elif isinstance(x, AffineVoganDiagram):
        report = _verify_vogan(x)
    else:
        raise CliError("oracle-verify needs a Kac, affine Vogan or double Vogan diagram", EXIT_JSON)
    if args.format == "json":
        return _dump({"schema": SCHEMA, "report": report})
    return "".join(f"{k}: {v}\n" for k, v in report.items())


def cmd_render(args) -> str:
    if args.input:
        x = _load(args.input)
    elif args.type and args.rank:
        x = _affine(_type(args), args.twisted)
    else:
        raise CliError("render needs --in or --type/--rank", EXIT_JSON)
    if args.format == "dot":
        return render.to_dot(x)
    if args.format == "json":
        return _dump(render.to_json(x))
    return render.to_ascii(x)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vogan-lab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def typed(name, help_, func, formats=("text", "json")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--type", required=True, help="family letter A-G")
        p.add_argument("--rank", required=True, type=int)
        p.add_argument("--format", choices=formats, default="text")
        p.set_defaults(func=func)
        return p

    def with_input(name, help_, func, formats=("text", "json")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--in", dest="input", required=True, help="diagram JSON file, or - for stdin")
        p.add_argument("--format", choices=formats, default="text")
        p.set_defaults(func=func)
        return p

    typed("roots", "root counts and dim L", cmd_roots)
    typed("kac", "order-two Kac diagrams", cmd_kac, ("text", "json", "dot")).add_argument(
        "--twisted", action="store_true", help="use D^2 instead of D^1")
    typed("involutions", "all involutions with their fixed algebras", cmd_involutions)
    sym = typed("classify-symplectic", "symplectic non-pseudo-Hermitian pairs", cmd_classify_symplectic)
    sym.add_argument("--golden", action="store_true", help="compare against the shipped golden table")
    sym.add_argument("--no-verify", action="store_true", help="skip the oracle checks")
    with_input("reduce", "canonical class of an affine Vogan diagram", cmd_reduce)
    with_input("classify", "fixed algebra of an affine or double Vogan diagram", cmd_classify)
    with_input("oracle-verify", "check a diagram against the Chevalley-basis oracle", cmd_oracle_verify)
    r = sub.add_parser("render", help="draw a diagram")
    r.add_argument("--in", dest="input")
    r.add_argument("--type")
    r.add_argument("--rank", type=int)
    r.add_argument("--twisted", action="store_true")
    r.add_argument("--format", choices=("text", "json", "dot"), default="text")
    r.set_defaults(func=cmd_render)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except CliError as exc:
        print(f"vogan-lab: error: {exc}", file=sys.stderr)
        return exc.code
    except ParityError as exc:
        print(f"vogan-lab: error: {exc}", file=sys.stderr)
        return EXIT_PARITY
    except UnsupportedDiagram as exc:
        print(f"vogan-lab: error: unsupported diagram: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (DiagramError, KacError, VoganError, SymplecticError) as exc:
        print(f"vogan-lab: error: invalid diagram: {exc}", file=sys.stderr)
        return EXIT_JSON
    except OracleError as exc:
        print(f"vogan-lab: error: oracle failure: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
