"""Command-line front end.

Every subcommand reads JSON files, writes one JSON document to stdout
(or ``--out``), and exits 0 on success, 1 on a domain error (error JSON
on stderr), 2 on a usage or parse error.

    torsionkit compare --genus 1 --euler 2
    torsionkit torsion complex.json --check-independence 100 --seed 0
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib.metadata import PackageNotFoundError, version

from .chain import (BasedChainComplex, HomologyBasis, betti_numbers, default_homology_basis,
                    integral_homology, torsion, torsion_choice_independence_check, validate)
from .errors import InvalidInputError, TorsionKitError
from .group import (GroupPresentation, abelianization_matrix, dim_H1_real, first_homology,
                    seifert_presentation, torsion_subgroup_order)
from .linalg import IntegerMatrix, smith_normal_form
from .localization import (LocalizationData, bw_partition_torus, exp_class, integrate_top,
                           symplectic_class, K)
from .partition import REPORT_VERSION, SeifertData, compare
from .twisted import Representation, presentation_complex, specialize

SCHEMA_VERSION = 1


class UsageError(Exception):
    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


def _tool_version() -> str:
    try:
        return version("artifact")
    except PackageNotFoundError:
        return "unknown"


def _load_json(path: str):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}", path=path) from None
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        byte_offset = len(exc.doc[:exc.pos].encode("utf-8"))
        raise UsageError(f"malformed JSON in {path}: {exc.msg}", path=path, offset=byte_offset,
                         line=exc.lineno, column=exc.colno) from None
    except UnicodeDecodeError as exc:
        raise UsageError(f"{path} is not UTF-8", path=path, offset=exc.start) from None


# ---------------------------------------------------------------------------
# subcommands

def cmd_snf(args):
    m = IntegerMatrix.from_json(_load_json(args.matrix))
    return smith_normal_form(m).to_json()


def _integral_or_none(c):
    try:
        return integral_homology(c)
    except InvalidInputError:
        return None


def cmd_homology(args):
    c = BasedChainComplex.from_json(_load_json(args.complex))
    validate(c)
    return {"degrees": list(c.degrees), "betti": betti_numbers(c),
            "euler_characteristic": c.euler_characteristic(),
            "integral": _integral_or_none(c),
            "homology_basis": default_homology_basis(c).to_json()}


def cmd_torsion(args):
    c = BasedChainComplex.from_json(_load_json(args.complex))
    h = HomologyBasis.from_json(_load_json(args.homology_basis)) if args.homology_basis else None
    if args.check_independence:
        value = torsion_choice_independence_check(c, h, trials=args.check_independence, seed=args.seed)
    else:
        value = torsion(c, h)
    out = {"torsion": value.to_json(), "betti": betti_numbers(c)}
    if args.check_independence:
        out["independence_check"] = {"trials": args.check_independence, "seed": args.seed,
                                     "result": "ok"}
    return out


def cmd_abelianize(args):
    p = GroupPresentation.from_json(_load_json(args.presentation))
    return {"matrix": abelianization_matrix(p).to_json(),
            "first_homology": first_homology(p).to_json(),
            "dim_H1_real": dim_H1_real(p),
            "torsion_subgroup_order": torsion_subgroup_order(p)}


def cmd_seifert(args):
    p = seifert_presentation(args.genus, args.euler)
    if args.emit == "presentation":
        return p.to_json()
    if args.emit == "homology":
        return {"genus": args.genus, "euler": args.euler,
                "first_homology": first_homology(p).to_json(),
                "dim_H1_real": dim_H1_real(p),
                "torsion_subgroup_order": torsion_subgroup_order(p)}
    return compare(SeifertData(args.genus, args.euler)).to_json()


def cmd_twist(args):
    p = GroupPresentation.from_json(_load_json(args.presentation))
    rho = Representation.from_json(p, _load_json(args.rep))
    c = specialize(presentation_complex(p), rho)
    out = {"complex": c.to_json(), "betti": betti_numbers(c)}
    if args.torsion:
        if c.is_acyclic():
            out["torsion"] = torsion(c).to_json()
        else:
            h = default_homology_basis(c)
            out["homology_basis"] = h.to_json()
            out["torsion"] = torsion(c, h).to_json()
    return out


def cmd_localize(args):
    part = bw_partition_torus(args.genus, args.euler, args.level)
    out = part.to_json()
    out["symplectic_volume_polynomial"] = integrate_top(
        exp_class(symplectic_class(args.genus).scale(K))).to_json()
    out["data"] = LocalizationData(args.euler).to_json()
    return out


def cmd_compare(args):
    return compare(SeifertData(args.genus, args.euler)).to_json()


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")

    ap = argparse.ArgumentParser(prog="torsionkit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version",
                    version=f"torsionkit {_tool_version()} (schema {SCHEMA_VERSION}, "
                            f"report {REPORT_VERSION})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snf", parents=[common], help="Smith normal form of an integer matrix")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("homology", parents=[common], help="Betti numbers and integral homology")
    p.add_argument("complex")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("torsion", parents=[common], help="Reidemeister torsion of a based complex")
    p.add_argument("complex")
    p.add_argument("--homology-basis")
    p.add_argument("--check-independence", type=int, default=0, metavar="N")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("abelianize", parents=[common], help="first homology of a presentation")
    p.add_argument("presentation")
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("seifert", parents=[common], help="Seifert manifold presentation and invariants")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--euler", type=int, required=True)
    p.add_argument("--emit", choices=["presentation", "homology", "report"], default="presentation")
    p.set_defaults(func=cmd_seifert)

    p = sub.add_parser("twist", parents=[common], help="presentation complex twisted by a representation")
    p.add_argument("presentation")
    p.add_argument("--rep", required=True)
    p.add_argument("--torsion", action="store_true")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("localize", parents=[common], help="U(1) localization integral on U(1)^{2g}")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--euler", type=int, default=1)
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("compare", parents=[common], help="k-exponent comparison report")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--euler", type=int, required=True)
    p.set_defaults(func=cmd_compare)
    return ap


def _emit_error(payload: dict, code: int) -> int:
    sys.stderr.write(json.dumps(payload, indent=2) + "\n")
    return code


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors and --help/--version
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except UsageError as exc:
        return _emit_error({"error": "ParseError", "message": str(exc), **exc.details}, 2)
    except InvalidInputError as exc:
        return _emit_error(exc.to_json(), 2)
    except TorsionKitError as exc:
        return _emit_error(exc.to_json(), 1)
    except ValueError as exc:
        return _emit_error({"error": "UsageError", "message": str(exc)}, 2)
    text = json.dumps(result, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
