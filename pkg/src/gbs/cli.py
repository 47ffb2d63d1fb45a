"""``gbs``: command-line front end.

Every command prints one JSON document on stdout.  Exit status is 0 on
success, 1 when the mathematics says no (infinite index, no hemisphere, ...)
and 2 for malformed input, in which case a diagnostic also goes to stderr.

Examples::

    gbs subgroup index --group gamma:6 --gens "t1^2, t2, a^5"
    gbs sigma complement --group gamma:30
    gbs certify-rinfty --product gamma:6,gamma:10
    gbs cayley witness --group twisted:2,3,1 --chi "-1,0" --depth 8
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import serialize as ser
from .arith import GammaSpec, GroupWord, TwistedSpec, nf_from_word, parse_word_list
from .cayley import GammaBackend, TwistedBackend, witness_search
from .oracle import DEFAULT_MAX_COSETS, CosetOverflow, gamma_presentation, todd_coxeter
from .sigma import (
    complement_gamma,
    complement_product,
    complement_subgroup,
    extend_character,
    restrict_character,
)
from .sphere import (
    SIGMA_COMPLEMENT,
    USER_ASSERTED,
    CertificateFailure,
    Hemisphere,
    InducedMap,
    SpherePolytope,
    polytope_invariant,
    polytope_vertices,
    rinfty_certificate,
    set_invariant,
)
from .subgroup import (
    NotFiniteIndex,
    canonicalize,
    coset_reduce,
    index,
    is_gamma_k,
    membership,
    presentation,
    transversal,
    verify_presentation,
)
from .twisted import DEFAULT_BUDGET

EXIT_OK = 0
EXIT_MATH = 1
EXIT_INPUT = 2

# options whose values may legitimately start with '-' (e.g. --chi "-1,0")
_VALUE_OPTIONS = {"--chi", "--word", "--gens", "--points", "--normals", "--chart", "--map"}


class MathFailure(Exception):
    """Carries a JSON error document for exit status 1."""

    def __init__(self, doc: dict):
        super().__init__(str(doc))
        self.doc = doc


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _gamma(args) -> GammaSpec:
    spec = ser.parse_group(args.group)
    if not isinstance(spec, GammaSpec):
        raise ser.DocumentError("this command needs a gamma:N or gammaS:... group")
    return spec


def _load_json(text: str):
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ser.DocumentError(f"invalid JSON: {exc}") from None


def _subgroup(args):
    if getattr(args, "subgroup", None):
        spec = ser.parse_group(args.group) if args.group else None
        return ser.parse_subgroup_doc(_load_json(args.subgroup), spec)
    if not args.group or not args.gens:
        raise ser.DocumentError("give --group and --gens, or --subgroup")
    spec = _gamma(args)
    try:
        return canonicalize(parse_word_list(args.gens), spec,
                            reduce_tails=not getattr(args, "keep_tails", False))
    except NotFiniteIndex as exc:
        raise MathFailure({"error": {"failure": "infinite-index", "detail": str(exc)}}) from None


def _certificate_result(result) -> dict:
    if isinstance(result, CertificateFailure):
        raise MathFailure(ser.failure_doc(result))
    return ser.certificate_doc(result)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_group_describe(args) -> dict:
    spec = ser.parse_group(args.group)
    doc = {"group": spec.describe(), "document": ser.group_doc(spec),
           "generators": spec.symbols()}
    if isinstance(spec, GammaSpec):
        doc.update(r=spec.r, moduli=list(spec.moduli), primes=list(spec.primes),
                   presentation=str(gamma_presentation(spec)))
    return doc


def cmd_subgroup_normalize(args) -> dict:
    return ser.subgroup_doc(_subgroup(args))


def cmd_subgroup_index(args) -> dict:
    return {"index": index(_subgroup(args))}


def cmd_subgroup_transversal(args) -> dict:
    H = _subgroup(args)
    return {"index": index(H),
            "transversal": [{"beta": list(t.beta), "j": t.j} for t in transversal(H)]}


def cmd_subgroup_member(args) -> dict:
    H = _subgroup(args)
    w = nf_from_word(GroupWord.parse(args.word), H.spec)
    rep = coset_reduce(w, H)
    return {"member": membership(w, H), "coset": {"beta": list(rep.beta), "j": rep.j}}


def cmd_subgroup_present(args) -> dict:
    H = _subgroup(args)
    return ser.presentation_doc(presentation(H), verify_presentation(H))


def cmd_subgroup_is_gamma_k(args) -> dict:
    status, k = is_gamma_k(_subgroup(args))
    doc = {"result": status}
    if k is not None:
        doc["k"] = k
    return doc


def cmd_sigma_complement(args) -> dict:
    if args.gens or args.subgroup:
        return ser.directions_doc(complement_subgroup(_subgroup(args)))
    return ser.directions_doc(complement_gamma(_gamma(args)))


def cmd_sigma_restrict(args) -> dict:
    return ser.character_doc(restrict_character(ser.parse_character_text(args.chi), _subgroup(args)))


def cmd_sigma_extend(args) -> dict:
    return ser.character_doc(extend_character(ser.parse_character_text(args.chi), _subgroup(args)))


def cmd_sphere_hull(args) -> dict:
    normals = ser.parse_direction_list(args.normals)
    chart = ser.parse_direction_list(args.chart)[0]
    verts = polytope_vertices([Hemisphere(n) for n in normals], chart)
    return {"vertices": [list(v.coords) for v in verts]}


def cmd_sphere_invariance(args) -> dict:
    maps = [InducedMap(ser.parse_matrix(m)) for m in args.map]
    if args.normals:
        chart = ser.parse_direction_list(args.chart)[0]
        K = SpherePolytope.build([Hemisphere(n) for n in ser.parse_direction_list(args.normals)], chart)
        return {"vertices": [list(v.coords) for v in K.vertices],
                "invariant": polytope_invariant(K, maps)}
    points = ser.parse_direction_list(args.points)
    return {"invariant": set_invariant(points, maps)}


def _complement_for(literal: str):
    spec = ser.parse_group(literal)
    if not isinstance(spec, GammaSpec):
        raise ser.DocumentError("complements are only available for gamma groups")
    return complement_gamma(spec), spec.r


def cmd_certify_rinfty(args) -> dict:
    if args.points:
        points = ser.parse_direction_list(args.points)
        return _certificate_result(rinfty_certificate(points, USER_ASSERTED))
    if args.product:
        parts = [_complement_for(lit) for lit in ser.split_group_list(args.product)]
        return _certificate_result(rinfty_certificate(complement_product(parts), SIGMA_COMPLEMENT))
    if args.gens or args.subgroup:
        points = complement_subgroup(_subgroup(args))
    else:
        points = complement_gamma(_gamma(args))
    return _certificate_result(rinfty_certificate(points, SIGMA_COMPLEMENT))


def cmd_cayley_witness(args) -> dict:
    spec = ser.parse_group(args.group)
    if isinstance(spec, TwistedSpec):
        backend = TwistedBackend(spec, args.budget)
    else:
        backend = GammaBackend(spec)
    chi = ser.parse_character_text(args.chi)
    return ser.witness_doc(witness_search(backend, chi, args.depth))


def cmd_oracle_coset_enum(args) -> dict:
    spec = _gamma(args)
    gens = parse_word_list(args.gens)
    try:
        table = todd_coxeter(gamma_presentation(spec), gens, args.max_cosets, args.strategy)
    except CosetOverflow:
        table = None
    return ser.coset_doc(table)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_subgroup_opts(p: argparse.ArgumentParser, required_group: bool = True) -> None:
    p.add_argument("--group", required=required_group, help="gamma:N or gammaS:a,b,...")
    p.add_argument("--gens", help='comma-separated words, e.g. "t1^2, t2, a^5"')
    p.add_argument("--subgroup", help="subgroup JSON document (or @file)")
    p.add_argument("--keep-tails", action="store_true",
                   help="keep the integer tails instead of reducing them mod m")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gbs", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="JSON output (the only mode)")
    sub = parser.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("group", help="group literals").add_subparsers(dest="action", required=True)
    p = grp.add_parser("describe")
    p.add_argument("--group", required=True)
    p.set_defaults(func=cmd_group_describe)

    sg = sub.add_parser("subgroup", help="finite-index subgroups").add_subparsers(
        dest="action", required=True)
    for name, func in [("normalize", cmd_subgroup_normalize), ("index", cmd_subgroup_index),
                       ("transversal", cmd_subgroup_transversal), ("present", cmd_subgroup_present),
                       ("is-gamma-k", cmd_subgroup_is_gamma_k), ("member", cmd_subgroup_member)]:
        p = sg.add_parser(name)
        _add_subgroup_opts(p, required_group=False)
        if name == "member":
            p.add_argument("--word", required=True)
        p.set_defaults(func=func)

    sig = sub.add_parser("sigma", help="characters and complements").add_subparsers(
        dest="action", required=True)
    p = sig.add_parser("complement")
    _add_subgroup_opts(p, required_group=False)
    p.set_defaults(func=cmd_sigma_complement)
    for name, func in [("restrict", cmd_sigma_restrict), ("extend", cmd_sigma_extend)]:
        p = sig.add_parser(name)
        _add_subgroup_opts(p, required_group=False)
        p.add_argument("--chi", required=True, help='character values, e.g. "1/2,0"')
        p.set_defaults(func=func)

    sph = sub.add_parser("sphere", help="sphere polytopes").add_subparsers(
        dest="action", required=True)
    p = sph.add_parser("hull")
    p.add_argument("--normals", required=True, help='hemisphere normals "1,0; 0,1"')
    p.add_argument("--chart", required=True, help='chart direction "1,1"')
    p.set_defaults(func=cmd_sphere_hull)
    p = sph.add_parser("invariance")
    p.add_argument("--points", help='point set "1,0; 0,1"')
    p.add_argument("--normals", help="polytope given by hemisphere normals")
    p.add_argument("--chart", default=None)
    p.add_argument("--map", action="append", required=True, help='matrix rows "0,1; 1,0"')
    p.set_defaults(func=cmd_sphere_invariance)

    p = sub.add_parser("certify-rinfty", help="hemisphere certificate")
    _add_subgroup_opts(p, required_group=False)
    p.add_argument("--product", help="comma-separated group literals")
    p.add_argument("--points", help="user-supplied invariant point set")
    p.set_defaults(func=cmd_certify_rinfty)

    cay = sub.add_parser("cayley", help="Cayley-graph witnesses").add_subparsers(
        dest="action", required=True)
    p = cay.add_parser("witness")
    p.add_argument("--group", required=True)
    p.add_argument("--chi", required=True)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="relator applications allowed per equality check")
    p.set_defaults(func=cmd_cayley_witness)

    orc = sub.add_parser("oracle", help="brute-force checks").add_subparsers(
        dest="action", required=True)
    p = orc.add_parser("coset-enum")
    p.add_argument("--group", required=True)
    p.add_argument("--gens", required=True)
    p.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    p.add_argument("--strategy", choices=["hlt", "felsch"], default="hlt")
    p.set_defaults(func=cmd_oracle_coset_enum)
    return parser


def _join_values(argv: Sequence[str]) -> list[str]:
    """Glue ``--chi -1,0`` into ``--chi=-1,0`` so argparse keeps the value."""
    out: list[str] = []
    it = iter(range(len(argv)))
    for i in it:
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            next(it, None)
        else:
            out.append(tok)
    return out


def _emit(doc: dict, stream) -> None:
    stream.write(json.dumps(doc, sort_keys=False) + "\n")


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(argv))
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_INPUT
        if code != 0:
            _emit({"error": "invalid arguments"}, stdout)
            return EXIT_INPUT
        return EXIT_OK
    try:
        doc = args.func(args)
    except MathFailure as exc:
        _emit(exc.doc, stdout)
        return EXIT_MATH
    except (ValueError, OSError) as exc:
        print(f"gbs: {exc}", file=stderr)
        _emit({"error": str(exc)}, stdout)
        return EXIT_INPUT
    _emit(doc, stdout)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
