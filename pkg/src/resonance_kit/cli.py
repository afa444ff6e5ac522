"""Command-line front end (``resonance-kit`` / ``python -m resonance_kit``).

Every command prints one JSON document on stdout.  Exit status: 0 on a
completed computation, 2 on malformed input, 3 on a violated precondition.
With ``--expect V`` the status is 0 iff the result's ``verdict`` equals V.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import ConsistencyError, InputFormatError, PreconditionError
from .exactalg import field_from_tag
from .io import dump_instance, read_instance, scalar_to_json

EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_EXPECT = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputFormatError(f"usage: {message}")


def _load(path: str, kind: type, what: str):
    obj = read_instance(path)
    if not isinstance(obj, kind):
        raise InputFormatError(f"{path}: expected a {what} instance, got {type(obj).__name__}")
    return obj


def _skew(path):
    from .skewpfaff import SkewLinearMatrix

    return _load(path, SkewLinearMatrix, "skew")


def _betti(path):
    from .betti import BettiTable

    return _load(path, BettiTable, "betti")


def _vector(text: str, field) -> tuple:
    try:
        return tuple(field(x.strip()) for x in text.split(","))
    except ValueError as exc:
        raise InputFormatError(f"bad vector {text!r}") from exc


# -- commands ----------------------------------------------------------------


def cmd_pfaffian(args) -> dict:
    from .io import ideal_to_json
    from .skewpfaff import pfaffian, principal_pfaffians

    a = _skew(args.file)
    if args.principal or a.n % 2:
        gens = principal_pfaffians(a)
    else:
        gens = [pfaffian(a)]
    return ideal_to_json(a.ring, gens)


def cmd_quadric_rank(args) -> dict:
    from .groebner import Ideal
    from .polyring import Ring, quadric_rank

    if args.expr is not None:
        if not args.vars:
            raise InputFormatError("--expr needs --vars")
        ring = Ring(tuple(v.strip() for v in args.vars.split(",")), field_from_tag(args.field))
        q = ring.parse(args.expr)
        r = quadric_rank(q)
        return {"verdict": str(r), "rank": r, "quadric": str(q)}
    if args.file is None:
        raise InputFormatError("give an ideal file or --expr")
    obj = read_instance(args.file)
    if not isinstance(obj, Ideal):
        raise InputFormatError("quadric-rank needs an ideal instance")
    ranks = [quadric_rank(g) for g in obj.generators]
    return {"verdict": ",".join(map(str, sorted(ranks))), "ranks": ranks, "generators": [str(g) for g in obj.generators]}


def cmd_resonance(args) -> dict:
    from .resonance import resonance_decide, equivalence_crosscheck

    a = _skew(args.file)
    if args.crosscheck:
        rep = equivalence_crosscheck(a, strict=False)
        out = rep.certificate.to_json()
        out["crosscheck"] = rep.to_json()
        return out
    return resonance_decide(a).to_json()


def cmd_generalized_zero(args) -> dict:
    from .polyring import quadric_rank
    from .resonance import generalized_zero, low_rank_generalized_pfaffian, resonance_decide
    from .skewpfaff import base_change

    a = _skew(args.file)
    if (args.a is None) != (args.b is None):
        raise InputFormatError("give both --a and --b or neither")
    if args.field is not None:
        field = field_from_tag(args.field)
        if field != a.ring.field:
            a = a.with_field(field)
    if args.a is not None:
        field = a.ring.field
        u, v = _vector(args.a, field), _vector(args.b, field)
        if len(u) != a.n or len(v) != a.n:
            raise InputFormatError(f"witness vectors need {a.n} entries")
    else:
        cert = resonance_decide(a)
        if cert.witness_a is None:
            raise PreconditionError(f"no witness available (verdict {cert.verdict})")
        if cert.witness_field != a.ring.field:
            a = a.with_field(cert.witness_field)
        u, v = cert.witness_a, cert.witness_b
    U = generalized_zero(a, (u, v))
    q = low_rank_generalized_pfaffian(a, U)
    b = base_change(a, U)
    return {
        "verdict": "generalized_zero",
        "field": a.ring.field.tag,
        "U": [[scalar_to_json(x) for x in r] for r in U.to_rows()],
        "entry_12": str(b.entry(0, 1)),
        "pfaffian": str(q),
        "pfaffian_rank": quadric_rank(q),
        "transformed": dump_instance(b),
    }


def cmd_betti(args) -> dict:
    from .betti import dual_betti, hilbert_numerator, horseshoe_sum, ideal_to_quotient, mapping_cone

    op = args.betti_op
    if op == "hilbert":
        t = _betti(args.file)
        h = str(hilbert_numerator(t))
        return {"verdict": h, "numerator": h}
    if op == "cone":
        cancels = []
        for c in args.cancel or []:
            try:
                i, j, m = (int(x) for x in c.split(","))
            except ValueError as exc:
                raise InputFormatError(f"--cancel takes i,j,mult, got {c!r}") from exc
            cancels.append((i, j, m))
        out = mapping_cone(_betti(args.sub), _betti(args.ambient), cancels)
    elif op == "horseshoe":
        c = _betti(args.quotient)
        if args.twist:
            c = c.twist(args.twist)
        out = horseshoe_sum(_betti(args.sub), c)
        if args.to_quotient:
            out = ideal_to_quotient(out)
    elif op == "dual":
        out = dual_betti(_betti(args.file), args.codim, args.omega)
    else:  # pragma: no cover - argparse guards the choices
        raise InputFormatError(op)
    doc = out.to_json()
    doc["rendered"] = out.render()
    return doc


def cmd_grassmann(args) -> dict:
    from .grassmann import LinearSection, PluckerContext, pfaffians_match_pluecker, pluecker_ideal, section_smoothness
    from .io import ideal_to_json

    if args.grassmann_op == "pluecker":
        ctx = PluckerContext(args.n, field_from_tag(args.field))
        ideal = pluecker_ideal(ctx)
        doc = ideal_to_json(ideal.ring, list(ideal.generators))
        if args.n == 5:
            match = pfaffians_match_pluecker(ctx)
            doc["pfaffians_match"] = match
        return doc
    s = _load(args.file, LinearSection, "section")
    return section_smoothness(s).to_json()


def cmd_random(args) -> dict:
    from .rng import random_instance

    return dump_instance(random_instance(args.kind, args.n, args.m, args.seed, field_from_tag(args.field)))


def cmd_verify(args) -> dict:
    from .verify import FIXTURES, verify_fixtures

    if args.list:
        return {"fixtures": [{"id": f.id, "citation": f.citation} for f in FIXTURES]}
    matrix = _skew(args.matrix) if args.matrix else None
    results = verify_fixtures(matrix)
    ok = all(r["passed"] for r in results)
    return {"verdict": "pass" if ok else "fail", "results": results, "_exit": 0 if ok else 1}


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS keeps a subcommand's defaults from clobbering flags given before it
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="human-readable output")
    common.add_argument("--expect", metavar="VALUE", default=argparse.SUPPRESS, help="exit 0 iff the verdict equals VALUE")

    p = _Parser(prog="resonance-kit", description=__doc__.splitlines()[0], parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("pfaffian", parents=[common], help="Pfaffian(s) of a skew matrix as an ideal instance")
    s.add_argument("file")
    s.add_argument("--principal", action="store_true", help="the n principal Pfaffians (odd n)")
    s.set_defaults(func=cmd_pfaffian)

    s = sub.add_parser("quadric-rank", parents=[common], help="ranks of quadratic forms")
    s.add_argument("file", nargs="?")
    s.add_argument("--expr")
    s.add_argument("--vars", help="comma-separated variable names for --expr")
    s.add_argument("--field", default="Q")
    s.set_defaults(func=cmd_quadric_rank)

    s = sub.add_parser("resonance", parents=[common], help="decide resonance and print a certificate")
    s.add_argument("file")
    s.add_argument("--crosscheck", action="store_true", help="also compare with enumeration mod 3 and 5")
    s.set_defaults(func=cmd_resonance)

    s = sub.add_parser("generalized-zero", parents=[common], help="base change placing a zero at (1,2)")
    s.add_argument("file")
    s.add_argument("--a", help="first witness vector, comma-separated")
    s.add_argument("--b", help="second witness vector, comma-separated")
    s.add_argument("--field", help="reduce the matrix to this field first, e.g. Fp:3")
    s.set_defaults(func=cmd_generalized_zero)

    s = sub.add_parser("betti", parents=[common], help="Betti table arithmetic")
    bs = s.add_subparsers(dest="betti_op", required=True, parser_class=_Parser)
    c = bs.add_parser("cone", parents=[common])
    c.add_argument("sub", help="resolution of the subobject A")
    c.add_argument("ambient", help="resolution of B")
    c.add_argument("--cancel", action="append", metavar="I,J,MULT")
    c = bs.add_parser("horseshoe", parents=[common])
    c.add_argument("sub")
    c.add_argument("quotient")
    c.add_argument("--twist", type=int, default=0, help="twist the quotient table by O(D) first")
    c.add_argument("--to-quotient", action="store_true", help="turn an ideal resolution into one of S/I")
    c = bs.add_parser("dual", parents=[common])
    c.add_argument("file")
    c.add_argument("--codim", type=int, required=True)
    c.add_argument("--omega", type=int, required=True, help="degree of the canonical sheaf, -7 on P^6")
    c = bs.add_parser("hilbert", parents=[common])
    c.add_argument("file")
    s.set_defaults(func=cmd_betti)

    s = sub.add_parser("grassmann", parents=[common], help="Plücker ideals and linear sections")
    gs = s.add_subparsers(dest="grassmann_op", required=True, parser_class=_Parser)
    c = gs.add_parser("pluecker", parents=[common])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--field", default="Q")
    c = gs.add_parser("section-check", parents=[common])
    c.add_argument("file")
    s.set_defaults(func=cmd_grassmann)

    s = sub.add_parser("random", parents=[common], help="seeded random instance")
    s.add_argument("--kind", required=True, choices=["skew", "section", "betti", "ideal"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, default=3)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--field", default="Q")
    s.set_defaults(func=cmd_random)

    s = sub.add_parser("verify-paper", parents=[common], help="run the reproduction fixtures")
    s.add_argument("--list", action="store_true")
    s.add_argument("--matrix", metavar="FILE", help="replace the built-in 5x5 matrix")
    s.set_defaults(func=cmd_verify)
    return p


def _is_flat(v, depth: int = 0) -> bool:
    # scalars, and lists nesting at most two levels, print on one line
    if isinstance(v, list):
        return depth < 2 and all(_is_flat(x, depth + 1) for x in v)
    return not isinstance(v, dict)


def _flat(v) -> str:
    return json.dumps(v) if isinstance(v, list) else str(v)


def _render(doc, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, str) and "\n" in v:
                lines.append(f"{pad}{k}:")
                lines.extend(pad + "  " + line for line in v.splitlines())
            elif _is_flat(v):
                lines.append(f"{pad}{k}: {_flat(v)}")
            else:
                lines.append(f"{pad}{k}:")
                lines.append(_render(v, indent + 1))
    elif isinstance(doc, list):
        for x in doc:
            if _is_flat(x):
                lines.append(f"{pad}- {_flat(x)}")
            else:
                lines.append(f"{pad}-")
                lines.append(_render(x, indent + 1))
    else:
        lines.append(f"{pad}{doc}")
    return "\n".join(lines)


def _emit(doc: dict, pretty: bool, stream) -> None:
    if pretty:
        print(_render(doc), file=stream)
    else:
        print(json.dumps(doc), file=stream)


def main(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    pretty = "--pretty" in argv
    try:
        args = build_parser().parse_args(argv)
        doc = args.func(args)
    except InputFormatError as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc), "exit": EXIT_INPUT}}, pretty, stdout)
        return EXIT_INPUT
    except (PreconditionError, ConsistencyError) as exc:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc), "exit": EXIT_PRECONDITION}}, pretty, stdout)
        return EXIT_PRECONDITION
    status = doc.pop("_exit", 0)
    _emit(doc, getattr(args, "pretty", False), stdout)
    expect = getattr(args, "expect", None)
    if expect is not None:
        return 0 if str(doc.get("verdict")) == expect else EXIT_EXPECT
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
