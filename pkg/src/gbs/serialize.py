"""JSON documents and command-line literals.

Rationals are written as ``"p/q"`` strings so that no value ever passes
through a float.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

from .arith import GammaSpec, TwistedSpec
from .cayley import CayleyPath, InSigma, SearchUnknown, letter_str, parse_letter
from .oracle import CosetTable
from .sigma import Character
from .sphere import CertificateFailure, Direction, RInftyCertificate
from .subgroup import CanonicalSubgroup, Presentation

Spec = GammaSpec | TwistedSpec


class DocumentError(ValueError):
    """A JSON document or literal does not have the expected shape."""


def _ints(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise DocumentError(f"{what} must be comma-separated integers, got {text!r}") from None


def parse_group(text: str) -> Spec:
    """``gamma:N``, ``gammaS:a,b,c`` or ``twisted:n,m,r``."""
    kind, sep, body = text.strip().partition(":")
    if not sep:
        raise DocumentError(f"group literal {text!r} needs a kind prefix")
    if kind == "gamma":
        vals = _ints(body, "gamma")
        if len(vals) != 1:
            raise DocumentError("gamma:N takes a single integer")
        return GammaSpec.gamma(vals[0])
    if kind == "gammaS":
        return GammaSpec.general(_ints(body, "gammaS"))
    if kind == "twisted":
        vals = _ints(body, "twisted")
        if len(vals) not in (2, 3):
            raise DocumentError("twisted:n,m,r takes two or three integers")
        return TwistedSpec(*vals)
    raise DocumentError(f"unknown group kind {kind!r}")


def split_group_list(text: str) -> list[str]:
    """Split ``gamma:6,gammaS:2,9,5`` at the commas that start a new group."""
    parts = re.split(r",\s*(?=(?:gammaS|gamma|twisted):)", text.strip())
    return [p for p in parts if p]


def group_doc(spec: Spec) -> dict:
    if isinstance(spec, TwistedSpec):
        return {"kind": "twisted", "n": spec.n, "m": spec.m, "r": spec.r_twist}
    if spec.kind == "gamma":
        return {"kind": "gamma", "n": spec.n}
    return {"kind": "gammaS", "moduli": list(spec.moduli)}


def parse_group_doc(doc: Any) -> Spec:
    if isinstance(doc, str):
        return parse_group(doc)
    try:
        kind = doc["kind"]
        if kind == "gamma":
            return GammaSpec.gamma(int(doc["n"]))
        if kind == "gammaS":
            return GammaSpec.general([int(x) for x in doc["moduli"]])
        if kind == "twisted":
            return TwistedSpec(int(doc["n"]), int(doc["m"]), int(doc.get("r", 0)))
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed group document: {exc}") from None
    raise DocumentError(f"unknown group kind {kind!r}")


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(x: Any) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise DocumentError(f"rational values must be integers or 'p/q' strings, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError):
        raise DocumentError(f"bad rational {x!r}") from None


def parse_character_text(text: str) -> Character:
    return Character(tuple(parse_frac(x.strip()) for x in text.split(",")))


def character_doc(chi: Character) -> dict:
    return {"values": [frac_str(v) for v in chi.values]}


def parse_character_doc(doc: Any) -> Character:
    try:
        return Character(tuple(parse_frac(v) for v in doc["values"]))
    except (KeyError, TypeError):
        raise DocumentError("character documents look like {\"values\": [\"1/2\", \"0\"]}") from None


def subgroup_doc(H: CanonicalSubgroup) -> dict:
    return {"group": group_doc(H.spec), "k": [list(r) for r in H.k], "l": list(H.l), "m": H.m}


def parse_subgroup_doc(doc: Any, spec: GammaSpec | None = None) -> CanonicalSubgroup:
    try:
        g = parse_group_doc(doc["group"]) if "group" in doc else spec
        if not isinstance(g, GammaSpec):
            raise DocumentError("subgroup documents need a gamma or gammaS group")
        return CanonicalSubgroup(g, tuple(tuple(int(x) for x in row) for row in doc["k"]),
                                 tuple(int(x) for x in doc["l"]), int(doc["m"]))
    except (KeyError, TypeError) as exc:
        raise DocumentError(f"malformed subgroup document: {exc}") from None


def presentation_doc(p: Presentation, verified: bool) -> dict:
    return {"P": list(p.P), "R": [list(r) for r in p.R], "verified": verified}


def directions_doc(dirs) -> dict:
    return {"directions": [list(d.coords) for d in dirs]}


def parse_directions_doc(doc: Any) -> list[Direction]:
    try:
        return [Direction(tuple(int(x) for x in d)) for d in doc["directions"]]
    except (KeyError, TypeError):
        raise DocumentError("expected {\"directions\": [[...], ...]}") from None


def parse_direction_list(text: str) -> list[Direction]:
    """``"1,0; 0,1"`` -> two directions."""
    return [Direction(tuple(_ints(chunk, "direction"))) for chunk in text.split(";") if chunk.strip()]


def parse_matrix(text: str) -> tuple[tuple[int, ...], ...]:
    """``"0,1; 1,0"`` -> rows."""
    return tuple(tuple(_ints(chunk, "matrix row")) for chunk in text.split(";") if chunk.strip())


def certificate_doc(cert: RInftyCertificate) -> dict:
    return {
        "points": [list(p.coords) for p in cert.points],
        "witness": list(cert.witness.coords),
        "provenance": cert.provenance,
    }


def parse_certificate_doc(doc: Any) -> RInftyCertificate:
    try:
        return RInftyCertificate(
            tuple(Direction(tuple(int(x) for x in p)) for p in doc["points"]),
            Direction(tuple(int(x) for x in doc["witness"])),
            doc["provenance"],
        )
    except (KeyError, TypeError):
        raise DocumentError("malformed certificate document") from None


def failure_doc(f: CertificateFailure) -> dict:
    return {"error": {"failure": f.reason, "detail": f.detail}}


def coset_doc(table: CosetTable | None) -> dict:
    return {"overflow": True} if table is None else {"index": table.index}


def parse_coset_doc(doc: Any) -> int | None:
    if doc.get("overflow"):
        return None
    return int(doc["index"])


def witness_doc(result: InSigma | SearchUnknown) -> dict:
    if isinstance(result, SearchUnknown):
        return {"result": "unknown", "reason": result.reason,
                "missing": [letter_str(y) for y in result.missing]}
    return {
        "result": "in-sigma",
        "t_letter": letter_str(result.t_letter),
        "witnesses": [
            {"letter": letter_str(y), "base": str(p.base), "steps": p.steps_str()}
            for y, p in result.witnesses
        ],
    }


def parse_witness_doc(doc: Any) -> InSigma | SearchUnknown:
    if doc.get("result") == "unknown":
        return SearchUnknown(doc.get("reason", ""), tuple(parse_letter(y) for y in doc.get("missing", [])))
    return InSigma(
        parse_letter(doc["t_letter"]),
        tuple((parse_letter(w["letter"]), CayleyPath.parse(w["base"], w["steps"]))
              for w in doc["witnesses"]),
    )

