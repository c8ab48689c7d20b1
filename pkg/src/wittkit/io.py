"""JSON forms of rings, Witt vectors, ghost vectors and glued schemes.

Ring::

    {"base": "Z" | "Z/8" | "Z[1/2,3]", "vars": ["x"], "relations": ["x^2-2*x"],
     "rewrite": [["x^2", "2*x"]]}                      # rewrite is optional

Witt vector: ``{"p": 2, "n": 1, "ring": <ring>, "components": ["1", "x+1"]}``;
ghost vectors carry ``"entries"`` instead. Scheme:
``{"charts": [<ring>, ...], "overlaps": [{"i": 0, "j": 1, "f_ij": "t", ...}]}``.
Polynomials are written in the canonical graded-lex text form, which the
expression parser reads back to the same value.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import ParseError
from .rings import FPRing, Z
from .scalars import ZZ, Scalar

_MOD = re.compile(r"^Z/(\d+)$")
_INV = re.compile(r"^Z\[1/([\d,\s]+)\]$")


def parse_base(text) -> Scalar:
    if isinstance(text, dict):
        kind = text.get("kind")
        if kind in ("Z", "Integers"):
            return ZZ
        if kind in ("mod", "IntegersMod"):
            return Scalar.mod(int(text["m"]))
        if kind in ("inv", "IntegersWithInverted"):
            return Scalar.inverted(text["S"])
        raise ParseError(f"unknown base {text!r}")
    s = str(text).strip().replace(" ", "")
    if s in ("Z", "ZZ", "Integers"):
        return ZZ
    m = _MOD.match(s)
    if m:
        if int(m.group(1)) < 2:
            raise ParseError("modulus must be >= 2")
        return Scalar.mod(int(m.group(1)))
    m = _INV.match(s)
    if m:
        try:
            return Scalar.inverted([int(x) for x in m.group(1).split(",") if x])
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"cannot parse base ring {text!r}")


def ring_to_dict(R: FPRing) -> dict:
    d = {"base": str(R.base), "vars": list(R.vars), "relations": [str(r) for r in R.relations]}
    if R.name:
        d["name"] = R.name
    return d


def ring_from_dict(d) -> FPRing:
    if d is None:
        return Z
    if isinstance(d, str):
        return FPRing(parse_base(d), (), ())
    if not isinstance(d, dict):
        raise ParseError("a ring is a JSON object")
    base = parse_base(d.get("base", "Z"))
    vars = d.get("vars", [])
    if not all(isinstance(v, str) and re.match(r"^[A-Za-z_][A-Za-z0-9_]*$", v) for v in vars):
        raise ParseError(f"bad variable names {vars!r}")
    rewrite = [tuple(r) for r in d["rewrite"]] if d.get("rewrite") else None
    try:
        return FPRing(base, tuple(vars), list(d.get("relations", [])), rewrite=rewrite, name=d.get("name"))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def witt_to_dict(v) -> dict:
    ctx = v.ctx
    return {"p": ctx.p, "n": ctx.n, "ring": _ring_ref(ctx.ring), "components": [str(c) for c in v.comps]}


def ghost_to_dict(g) -> dict:
    ctx = g.ctx
    return {"p": ctx.p, "n": ctx.n, "ring": _ring_ref(ctx.ring), "entries": [str(e) for e in g.entries]}


def _ring_ref(R):
    if isinstance(R, FPRing):
        return ring_to_dict(R)
    return {"witt": {"p": R.p, "n": R.n, "ring": _ring_ref(R.ring)}}


def witt_from_dict(d, ring: FPRing | None = None):
    from .witt.vectors import WittCtx
    R = ring if ring is not None else ring_from_dict(d.get("ring"))
    ctx = WittCtx(int(d["p"]), int(d["n"]), R)
    if "components" in d:
        return ctx.vec(list(d["components"]))
    return ctx.ghost_vec(list(d["entries"]))


def scheme_to_dict(X) -> dict:
    return {"charts": [ring_to_dict(A) for A in X.charts], "overlaps": [dict(e) for e in X.entries],
            **({"name": X.name} if X.name else {})}


def scheme_from_dict(d):
    from .geometry import GluedScheme
    if not isinstance(d, dict) or "charts" not in d:
        raise ParseError("a scheme needs a 'charts' list")
    charts = [ring_from_dict(c) for c in d["charts"]]
    return GluedScheme(charts, d.get("overlaps", []), name=d.get("name"))


def load_json(path_or_text):
    """Read JSON from a file path, or parse it directly when it looks like JSON."""
    s = str(path_or_text)
    try:
        if s.lstrip().startswith(("{", "[")):
            return json.loads(s)
        return json.loads(Path(s).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read JSON from {s!r}: {exc}") from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)
