"""Command-line interface: ``wittkit <group> <action> [operands] [flags]``.

Exit codes: 0 success, 1 a verification failed, 2 bad input (parse errors,
unknown flags, non-prime p), 3 a mathematical obstruction (not in the ghost
image, congruence failure, failed isomorphism, ...).
"""
from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import io as wio
from .errors import (CtxMismatch, LengthError, LevelExceeded, MathError, ParseError, VerificationFailed,
                     WittkitError)
from .rings import Z
from .scalars import is_prime

WITT_ACTIONS = ("add", "mul", "ghost", "from-ghost", "teich", "frob", "versch", "rgh", "alpha", "section",
                "present-Z", "localize", "coplethysm", "big")
JET_ACTIONS = ("present", "delta", "coghost", "rcgh", "greenberg", "blowup", "iso-check")
SCHEME_ACTIONS = ("witt-space", "h0-p1")
CACHE_ACTIONS = ("build", "show")

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_MATH = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _prime(text):
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"p={p} is not prime")
    return p


def _nat(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--p", type=_prime, default=2, help="the prime (default 2)")
    common.add_argument("--n", type=_nat, default=1, help="length / level (default 1)")
    common.add_argument("--ring", help="ring JSON file (or inline JSON); default Z")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--degree-bound", type=_nat, default=3)

    top = _Parser(prog="wittkit", description="Witt vectors, arithmetic jets and their verification suites")
    sub = top.add_subparsers(dest="group", required=True, parser_class=_Parser)
    w = sub.add_parser("witt", parents=[common], help="Witt vector arithmetic")
    w.add_argument("action", choices=WITT_ACTIONS)
    w.add_argument("operands", nargs="*", help="vectors as comma lists like 0,1 or JSON arrays")
    w.add_argument("--m", type=_nat, default=1, help="outer length for coplethysm")
    w.add_argument("--lengths", default="2:1,3:1", help="big Witt lengths, e.g. 2:1,3:1")
    j = sub.add_parser("jet", parents=[common], help="arithmetic jet spaces")
    j.add_argument("action", choices=JET_ACTIONS)
    j.add_argument("operands", nargs="*")
    s = sub.add_parser("scheme", parents=[common], help="glued schemes")
    s.add_argument("action", choices=SCHEME_ACTIONS)
    s.add_argument("--scheme", help="scheme JSON file (default P^1)")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", help="suite name or 'all'")
    c = sub.add_parser("cache", parents=[common], help="universal polynomial cache")
    c.add_argument("action", choices=CACHE_ACTIONS)
    return top


# ---------------------------------------------------------------------------
# operand parsing
# ---------------------------------------------------------------------------

def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _wraps(text: str) -> bool:
    if not (text.startswith("(") and text.endswith(")")):
        return False
    depth = 0
    for k, ch in enumerate(text):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and k < len(text) - 1:
            return False
    return True


def parse_components(text: str) -> list[str]:
    t = text.strip()
    if t.startswith("["):
        try:
            vals = json.loads(t)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON list {t!r}: {exc}") from None
        return [str(x) for x in vals]
    if _wraps(t) and "," in t:
        t = t[1:-1]
    parts = _split_top(t)
    if any(not p for p in parts):
        raise ParseError(f"empty component in {text!r}")
    return parts


def _need(ops, k, what):
    if len(ops) != k:
        raise ParseError(f"expected {k} operand(s): {what}")


# ---------------------------------------------------------------------------
# command handlers: each returns (json-able result, text lines, exit code)
# ---------------------------------------------------------------------------

def _ring(args):
    return wio.ring_from_dict(wio.load_json(args.ring)) if args.ring else Z


def _vec(W, text):
    return W.vec(parse_components(text))


def cmd_witt(args):
    from .witt.big import BigWittCtx
    from .witt.presentations import witt_localized, wittring_presentation_Z
    from .witt.vectors import WittCtx, coplethysm
    p, n, ops, a = args.p, args.n, args.operands, args.action
    R = _ring(args)
    W = WittCtx(p, n, R)
    if a in ("add", "mul"):
        _need(ops, 2, "two vectors")
        u, v = _vec(W, ops[0]), _vec(W, ops[1])
        r = u + v if a == "add" else u * v
        return wio.witt_to_dict(r), [str(r)], EXIT_OK
    if a == "ghost":
        _need(ops, 1, "a vector")
        g = W.ghost(_vec(W, ops[0]))
        return wio.ghost_to_dict(g), [str(g)], EXIT_OK
    if a == "from-ghost":
        _need(ops, 1, "ghost entries")
        v = W.from_ghost(W.ghost_vec(parse_components(ops[0])))
        return wio.witt_to_dict(v), [str(v)], EXIT_OK
    if a == "teich":
        _need(ops, 1, "a ring element")
        v = W.teich(R.elem(ops[0]))
        return wio.witt_to_dict(v), [str(v)], EXIT_OK
    if a == "frob":
        _need(ops, 1, "a vector of length n")
        v = W.frob(_vec(W, ops[0]))
        return wio.witt_to_dict(v), [str(v)], EXIT_OK
    if a == "versch":
        _need(ops, 1, "a vector of length n-1")
        v = W.versch(W.with_length(n - 1).vec(parse_components(ops[0])) if n >= 1 else None)
        return wio.witt_to_dict(v), [str(v)], EXIT_OK
    if a == "rgh":
        _need(ops, 1, "a vector")
        e = W.rgh(_vec(W, ops[0]))
        return {"value": str(e), "ring": wio.ring_to_dict(e.ring)}, [f"{e}  in {e.ring}"], EXIT_OK
    if a == "alpha":
        _need(ops, 1, "a vector of length n >= 1")
        w, g = W.alpha(_vec(W, ops[0]))
        return ({"truncation": wio.witt_to_dict(w), "ghost": str(g)},
                [f"truncation {w}", f"ghost_{n} {g}"], EXIT_OK)
    if a == "section":
        _need(ops, 2, "a vector of length n and a ring element")
        v = W.alpha_section(_vec(W, ops[0]), R.elem(ops[1]))
        return wio.witt_to_dict(v), [str(v)], EXIT_OK
    if a == "present-Z":
        P, rep = wittring_presentation_Z(p, n)
        d = {"ring": wio.ring_to_dict(P), "report": rep.as_dict()}
        d["report"].pop("ring", None)
        code = EXIT_OK if rep.ok else EXIT_VERIFY
        return d, [str(P), f"verified: {rep.ok}"], code
    if a == "localize":
        _need(ops, 1, "the element f to invert")
        loc = witt_localized(R, ops[0], p, n)
        d = {"ring": wio.ring_to_dict(loc.ring), "inverse": [str(c) for c in loc.inverse.comps],
             "report": loc.report}
        return d, [str(loc.ring), f"[f]^-1 = {loc.inverse}", f"ok: {loc.report['ok']}"], EXIT_OK
    if a == "coplethysm":
        _need(ops, 1, "a vector of length n")
        c = coplethysm(_vec(W, ops[0]), args.m)
        rows = [[str(x) for x in inner.comps] for inner in c.comps]
        return {"p": p, "m": args.m, "n": n - args.m, "components": rows}, [str(c)], EXIT_OK
    if a == "big":
        lengths = {}
        try:
            for part in args.lengths.split(","):
                q, k = part.split(":")
                lengths[int(q)] = int(k)
        except ValueError:
            raise ParseError(f"bad --lengths {args.lengths!r}") from None
        B = BigWittCtx(lengths, R)
        other = B.with_order(list(reversed(B.order)))
        if ops:
            _need(ops, 1, "a ring element")
            v = B.teich(R.elem(ops[0]))
        else:
            v = B.random(np.random.default_rng(args.seed), degree=2, bound=4, terms=2)
        flat = B.flatten_ghost(v)
        moved = B.reorder(v, other.order)
        agree = other.flatten_ghost(moved) == flat
        d = {"lengths": {str(k): v for k, v in sorted(lengths.items())}, "order": B.order,
             "flat_ghost": {str(k): str(flat[k]) for k in sorted(flat)}, "orders_agree": agree}
        lines = [f"w_{k} = {flat[k]}" for k in sorted(flat)] + [f"orders agree: {agree}"]
        return d, lines, EXIT_OK if agree else EXIT_VERIFY
    raise ParseError(f"unknown witt action {a}")


def cmd_jet(args):
    from .geometry import blowup_vs_jet_iso, coghost_away_from_p
    from .jets import JetCtx, coghost, delta_apply, greenberg, jet_presentation, rcgh
    p, n, ops, a = args.p, args.n, args.operands, args.action
    R = _ring(args)
    if a == "greenberg":
        G = greenberg(R, p)
        return wio.ring_to_dict(G), [str(G)], EXIT_OK
    if a == "blowup":
        rep = blowup_vs_jet_iso(R, p, n)
        return rep, [f"{k} -> {v}" for k, v in rep["forward"].items()] + [f"ok: {rep['ok']}"], EXIT_OK
    if a == "iso-check":
        rep = coghost_away_from_p(R, p, n)
        return rep, [f"{k} -> {v}" for k, v in rep["inverse"].items()] + [f"ok: {rep['ok']}"], EXIT_OK
    ctx = JetCtx(p, n, R)
    if a == "present":
        J = jet_presentation(ctx)
        d = J.as_dict()
        return d, [f"vars: {', '.join(d['vars'])}", f"relations: {', '.join(d['relations']) or '(none)'}"], EXIT_OK
    if a == "delta":
        _need(ops, 1, "a polynomial in the jet variables")
        f = delta_apply(ctx, ops[0])
        return {"delta": str(f)}, [str(f)], EXIT_OK
    if a == "coghost":
        J = jet_presentation(ctx)
        out = {}
        for i in range(n + 1):
            h = coghost(ctx, i, J)
            out[str(i)] = {v: str(img) for v, img in zip(h.domain.vars, h.images)}
        return out, [f"cgh_{i}: {m}" for i, m in out.items()], EXIT_OK
    if a == "rcgh":
        h = rcgh(ctx)
        d = {"target": wio.ring_to_dict(h.codomain), "images": {v: str(i) for v, i in zip(h.domain.vars, h.images)}}
        return d, [f"{v} -> {i}" for v, i in d["images"].items()], EXIT_OK
    raise ParseError(f"unknown jet action {a}")


def cmd_scheme(args):
    from .geometry import global_sections_P1, projective_line, witt_space
    if args.action == "h0-p1":
        rep = global_sections_P1(args.p, args.n, args.degree_bound, seed=args.seed)
        lines = [f"rank {rep['rank']}", "generators: " + ", ".join(
            f"{name} = ({', '.join(g)})" for name, g in zip(rep["generator_names"], rep["generators"]))]
        return rep, lines, EXIT_OK if rep["ok"] else EXIT_VERIFY
    X = wio.scheme_from_dict(wio.load_json(args.scheme)) if args.scheme else projective_line()
    W = witt_space(X, args.p, args.n, seed=args.seed)
    return W.report, [f"{len(W.charts)} charts: {', '.join(W.report['charts'])}",
                      f"pairs checked: {', '.join(W.report['pairs'])}",
                      f"cocycles checked: {', '.join(W.report['cocycle']) or '(none)'}"], EXIT_OK


def cmd_verify(args):
    from .lab import SUITES, run_suite
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            raise ParseError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    reps = [run_suite(name, args.p, args.n, args.seed) for name in names]
    ok = all(r.ok for r in reps)
    d = {"ok": ok, "p": args.p, "n": args.n, "seed": args.seed, "suites": [r.as_dict() for r in reps]}
    lines = [line for r in reps for line in r.lines()]
    return d, lines, EXIT_OK if ok else EXIT_VERIFY


def cmd_cache(args):
    from .witt.universal import build, cache_path, is_integral, write_cache
    path = cache_path(args.p, args.n)
    if args.action == "build":
        u = build(args.p, args.n)
        if not is_integral(u):
            raise VerificationFailed("universal polynomials are not integral")
        write_cache(u)
    if not path.exists():
        return {"path": str(path), "exists": False}, [f"{path}: not built"], EXIT_OK
    text = path.read_text()
    lines = text.splitlines()
    d = {"path": str(path), "exists": True, "lines": len(lines), "bytes": len(text.encode())}
    return d, [f"{path}: {len(lines)} polynomials, {d['bytes']} bytes"], EXIT_OK


_FLAG = re.compile(r"^--?[A-Za-z]")


def parse_args(argv=None):
    """Flags may come before or after operands; anything flag-like left over is an error."""
    args, extra = build_parser().parse_known_args(argv)
    bad = [x for x in extra if _FLAG.match(x)]
    if bad:
        raise ParseError(f"unrecognized arguments: {' '.join(bad)}")
    if extra:
        if not hasattr(args, "operands"):
            raise ParseError(f"unexpected operands: {' '.join(extra)}")
        args.operands = list(args.operands) + extra
    return args


HANDLERS = {"witt": cmd_witt, "jet": cmd_jet, "scheme": cmd_scheme, "verify": cmd_verify, "cache": cmd_cache}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    as_json = "--json" in (argv if argv is not None else sys.argv[1:])
    try:
        args = parse_args(argv)
        result, lines, code = HANDLERS[args.group](args)
    except SystemExit as exc:      # --help
        return int(exc.code or 0)
    except (ParseError, LengthError, CtxMismatch, LevelExceeded, ValueError) as exc:
        return _fail(err, as_json, "ParseError" if isinstance(exc, (ParseError, ValueError)) else type(exc).__name__,
                     exc, EXIT_PARSE)
    except VerificationFailed as exc:
        return _fail(err, as_json, type(exc).__name__, exc, EXIT_VERIFY, getattr(exc, "witness", None))
    except (MathError, WittkitError) as exc:
        return _fail(err, as_json, type(exc).__name__, exc, EXIT_MATH)
    if as_json:
        out.write(wio.dumps(result) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return code


def _fail(err, as_json, name, exc, code, witness=None):
    if as_json:
        d = {"error": name, "message": str(exc), "exit_code": code}
        if witness is not None:
            d["witness"] = witness
        err.write(wio.dumps(d) + "\n")
    else:
        err.write(f"error: {name}: {exc}\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
