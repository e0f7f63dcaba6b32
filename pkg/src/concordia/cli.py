"""Command-line front end: ``concordia <command> ...``.

Exit codes: 0 success, 2 unparsable input, 3 a precondition failed
(for example delta has no sharp definite form for the diagram).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import mpmath

from . import __version__
from .cache import Cache, CacheMismatch, cache_path
from .group import (DEFAULT_B, FormalClass, MarkedLinkDescription, default_omegas,
                    independence_rank, link_invariants, load_fixture_text,
                    nontriviality_certificate, obstruction_vector)
from .lattice import DefiniteLattice, MethodUnavailable, char_cosets, correction_term
from .link_core import ORIENTED, PARTLY, DiagramError, OrientationError
from .plumbing import parse_tree, plumbing_matrix, plumbing_sweep
from .goeritz import determinant
from .seifert_lt import signature_profile
from .twobridge import FactorizationLimit, torsion_witness

EXIT_PARSE = 2
EXIT_PRECONDITION = 3


class CliError(Exception):
    def __init__(self, msg: str, code: int):
        super().__init__(msg)
        self.code = code


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _read_arg(text: str) -> str:
    """``@path`` reads a file; anything else is taken literally."""
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return fh.read()
    return text


def _description(args) -> MarkedLinkDescription:
    mode = PARTLY if getattr(args, "partly", False) else ORIENTED
    given = [(k, getattr(args, k)) for k in ("pd", "braid", "two_bridge", "tree")
             if getattr(args, k, None)]
    if args.link:
        given.append(("auto", args.link))
    if len(given) != 1:
        raise CliError("give exactly one link description", EXIT_PARSE)
    kind, text = given[0]
    text = _read_arg(text)
    prefix = {"pd": "pd: ", "braid": "braid: ", "tree": "tree: ", "two_bridge": ""}.get(kind, "")
    if kind == "tree":
        text = "\n".join(ln for ln in text.splitlines() if not ln.lstrip().startswith("#"))
    try:
        return MarkedLinkDescription.parse(prefix + text.strip(), mode)
    except (DiagramError, ValueError) as exc:
        raise CliError(f"cannot parse link: {exc}", EXIT_PARSE) from None


def _invariants_report(desc: MarkedLinkDescription, B: int) -> dict:
    inv = link_invariants(desc, default_omegas(B))
    lname = "l" if desc.mode == PARTLY else "l_tilde"
    rep = {
        "input": str(desc),
        "mode": desc.mode,
        lname: inv.l,
        "mu": inv.mu,
        "det": inv.det,
        "det_square_class": list(inv.det_class) if inv.det_class is not None else None,
        "sigma": inv.sigma,
        "delta": inv.delta,
    }
    if inv.delta is None:
        rep["delta_unavailable"] = inv.delta_reason
    if inv.lt is None:
        rep["sigma_omega"] = None
        rep["sigma_omega_unavailable"] = inv.lt_reason
    else:
        rep["sigma_omega"] = [{"omega_turns": str(w.turns), "sigma": s, "nullity": n}
                              for w, s, n in inv.lt]
    return rep


def _cache(args) -> Cache | None:
    p = cache_path(getattr(args, "cache", None))
    return Cache(p) if p else None


def cmd_invariants(args) -> int:
    desc = _description(args)
    B = args.omega_res
    cache = _cache(args)
    compute = lambda: _invariants_report(desc, B)  # noqa: E731
    name = f"invariants/B={B}/{desc.kind}"
    rep = cache.get_or_compute(desc.key, name, compute, str(desc)) if cache else compute()
    _emit(args, rep)
    if desc.mode == ORIENTED and rep["delta"] is None:
        print(f"delta unavailable: {rep.get('delta_unavailable')}", file=sys.stderr)
        return EXIT_PRECONDITION
    return 0


def _emit(args, rep: dict) -> None:
    if args.json:
        print(_dump(rep))
        return
    for k in sorted(rep):
        print(f"{k}: {rep[k]}")


def _turns_str(t) -> str:
    return str(t) if isinstance(t, Fraction) else mpmath.nstr(t, 20)


def cmd_profile(args) -> int:
    desc = _description(args)
    S = desc.seifert
    if S is None:
        raise CliError("profile needs a braid or S(p,1) description (a Seifert matrix)",
                       EXIT_PRECONDITION)
    prof = signature_profile(S, args.omega_res)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["start_turns", "end_turns", "start_angle", "end_angle", "sigma"])
    two_pi = 2 * mpmath.pi
    for lo, hi, s in prof.arcs:
        w.writerow([_turns_str(lo), _turns_str(hi), mpmath.nstr(two_pi * lo, 15),
                    mpmath.nstr(two_pi * hi, 15), s])
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
    rep = {
        "input": str(desc),
        "jumps": [{"turns": _turns_str(j.turns), "before": j.before, "after": j.after,
                   "at": j.at} for j in prof.jumps],
        "n_jumps": len(prof.jumps),
        "samples": [{"turns": str(f), "sigma": s, "nullity": n}
                    for f, (s, n) in sorted(prof.samples.items())],
    }
    if args.json:
        print(_dump(rep))
    else:
        print(f"{len(prof.jumps)} jumps")
        for j in rep["jumps"]:
            print(f"  at {j['turns']} turns: {j['before']} -> {j['after']}")
        if not args.csv:
            print(buf.getvalue(), end="")
    return 0


def cmd_dinv(args) -> int:
    try:
        Q = json.loads(_read_arg(args.matrix))
        lat = DefiniteLattice.of(Q)
    except (ValueError, TypeError) as exc:
        raise CliError(f"need a definite symmetric integer matrix: {exc}", EXIT_PRECONDITION) \
            from None
    out = [{"char_class": list(c.rep), "d": str(correction_term(lat, c))}
           for c in char_cosets(lat)]
    rep = {"matrix": lat.rows(), "sign": lat.sign, "discriminant": lat.discriminant,
           "correction_terms": out}
    _emit(args, rep)
    return 0


def cmd_witness(args) -> int:
    try:
        cert = torsion_witness(args.q)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    rep = {"p": cert.p, "q": cert.q, "qs": list(cert.qs), "checks": cert.checks(),
           "verified": cert.verify()}
    _emit(args, rep)
    return 0 if cert.verify() else 1


def _load_classes(path: str) -> tuple[list[FormalClass], dict]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    opts = {}
    if isinstance(data, dict):
        opts = {k: v for k, v in data.items() if k != "classes"}
        data = data["classes"]
    mode = opts.get("mode", ORIENTED)
    if data and isinstance(data[0], dict):
        data = [data]
    classes = []
    for recs in data:
        items = []
        for r in recs:
            text = r["link"]
            if text.startswith("fixture:") and text.endswith(".tree"):
                text = "tree: " + load_fixture_text(text.split(":", 1)[1].strip())
            items.append((text, int(r.get("mult", 1))))
        classes.append(FormalClass.of(*items, mode=mode))
    return classes, opts


def cmd_group(args) -> int:
    try:
        classes, opts = _load_classes(args.file)
    except (OSError, KeyError, TypeError, json.JSONDecodeError, DiagramError, ValueError) as exc:
        raise CliError(f"bad class file: {exc}", EXIT_PARSE) from None
    if "omega_turns" in opts:
        from .seifert_lt import RootOfUnity
        omegas = [RootOfUnity.from_fraction(Fraction(t)) for t in opts["omega_turns"]]
    else:
        omegas = default_omegas(args.omega_res)
    vecs = [obstruction_vector(c, omegas).as_dict() for c in classes]
    certs = [nontriviality_certificate(c, omegas) for c in classes]
    rank = independence_rank(classes, omegas, rows=opts.get("rows"))
    rep = {
        "classes": [[{"link": str(d), "mult": m} for d, m in c.terms] for c in classes],
        "vectors": vecs,
        "certificates": [str(c) if c else "no obstruction found" for c in certs],
        "rank": [rank.free_rank, rank.two_torsion_rank],
        "rank_report": rank.as_dict(),
    }
    _emit(args, rep)
    return 0


def cmd_sweep(args) -> int:
    try:
        t = parse_tree(_read_arg("@" + args.tree))
    except (OSError, ValueError) as exc:
        raise CliError(f"bad tree file: {exc}", EXIT_PARSE) from None
    try:
        d, entries = plumbing_sweep(t)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PRECONDITION) from None
    rep = {
        "plumbing_matrix": plumbing_matrix(t),
        "determinant": determinant(d),
        "components": d.n_components,
        "entries": [{"reversed": list(e.reversed), "sigma": e.signature, "delta": e.delta,
                     "char_class": list(e.char_class) if e.char_class else None}
                    for e in entries],
        "sigma_multiset": sorted(e.signature for e in entries),
        "delta_multiset": sorted(e.delta for e in entries),
    }
    _emit(args, rep)
    return 0


def _recompute(rec: dict):
    inv = rec["invariant"]
    if inv.startswith("invariants/"):
        _, b, kind = inv.split("/")
        mode = PARTLY if rec["key"].endswith("|" + PARTLY) else ORIENTED
        prefix = {"pd": "pd: ", "braid": "braid: ", "tree": "tree: "}.get(kind, "")
        text = rec["input"]
        if kind in ("braid", "tree"):
            text = text.split(":", 1)[1]
        desc = MarkedLinkDescription.parse(prefix + text.strip(), mode)
        return _invariants_report(desc, int(b[2:]))
    raise CacheMismatch(f"unknown invariant {inv!r} in cache")


def cmd_cache(args) -> int:
    cache = _cache(args)
    if cache is None:
        raise CliError("no cache path (use --cache or CONCORDIA_CACHE)", EXIT_PRECONDITION)
    bad = cache.verify(_recompute)
    rep = {"records": len(cache.records()), "mismatches": bad}
    _emit(args, rep)
    return 1 if bad else 0


def _link_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("link", nargs="?", help="S(p,q), braid:/tree:/fixture: prefixed text, or PD")
    p.add_argument("--pd", help="PD text (or @file)")
    p.add_argument("--braid", help="braid word, e.g. '1 1 -2'")
    p.add_argument("--two-bridge", dest="two_bridge", help="S(p,q)")
    p.add_argument("--tree", help="plumbing tree text (or @file)")
    p.add_argument("--partly", action="store_true", help="partly oriented mode")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="concordia", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--cache", help="JSON-lines cache file")
    common.add_argument("--omega-res", "--res", dest="omega_res", type=int, default=DEFAULT_B,
                        help="omega sampling resolution B")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="obstruction vector of one link")
    _link_flags(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("profile", parents=[common], help="Levine-Tristram signature profile")
    _link_flags(p)
    p.add_argument("--csv", help="write (angle, sigma) step data here")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("dinv", parents=[common], help="correction terms of a definite lattice")
    p.add_argument("matrix", help="JSON matrix such as '[[-2]]' (or @file)")
    p.set_defaults(func=cmd_dinv)

    p = sub.add_parser("witness", parents=[common], help="prime witness for 2-torsion")
    p.add_argument("q", nargs="*", type=int)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("group", parents=[common], help="vectors and ranks for a class file")
    p.add_argument("file")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("sweep", parents=[common], help="quasi-orientation sweep of a plumbing")
    p.add_argument("tree", help="tree file")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("cache", parents=[common], help="cache maintenance")
    p.add_argument("action", choices=["verify"])
    p.set_defaults(func=cmd_cache)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (DiagramError, OrientationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (MethodUnavailable, FactorizationLimit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CacheMismatch as exc:
        print(f"cache mismatch: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
