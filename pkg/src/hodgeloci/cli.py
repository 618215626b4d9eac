"""Command-line front end.

Input files use one plain-text format::

    ring: x0 x1 x2 [weights 1 1 2]
    k: 3
    d: 4
    c: 2
    f: x0^3+x1^3+x2^3
    ideal: I1
    gen: x0^2
    gen: x0*x1
    Q 0 0: x0^2+x2^2+x4^2
    P 0: x4*(x4^2+x6^2)

``gen:`` lines belong to the most recent ``ideal:`` header (default name I).
Files with k, d, c and Q/P lines describe a plane pair datum.

Exit status: 0 when every check passes, 1 when a check fails, 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field

from .cycles import (PlanePairDatum, classify_regime, is_smooth, plane_pair_ideals,
                     smoothness_codim_report)
from .exactnum import rational_str
from .groebner import Ideal, compute_basis, ideal_sum
from .pairing import full_rank_certificate, pencil_analysis, subquotient_pairing
from .polyring import DEGREVLEX, LEX, ParseError, Polynomial, RingCtx, block_order
from .quotient import GradedQuotient
from .scenarios import SCENARIOS, Budget, ScenarioConfig, _plain, run_scenario


class InputError(ValueError):
    pass


class CheckFailed(Exception):
    def __init__(self, claim, expected, actual):
        super().__init__(claim)
        self.claim, self.expected, self.actual = claim, expected, actual


@dataclass
class InputFile:
    ring: RingCtx
    headers: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    f: Polynomial | None = None
    Q: dict = field(default_factory=dict)
    P: dict = field(default_factory=dict)

    def ideal(self, name: str | None = None) -> Ideal:
        if self.Q and not self.ideals:
            ids = plane_pair_ideals(self.datum())
            named = {"I1": ids.I1, "I2": ids.I2, "sum": ids.Isum, "int": ids.Iint}
            if (name or "I1") not in named:
                raise InputError(f"datum files provide ideals {', '.join(named)}")
            return named[name or "I1"]
        if not self.ideals:
            if name is None:
                return Ideal(self.ring, [], "zero")
            raise InputError("file has no gen: lines")
        if name is None:
            name = next(iter(self.ideals))
        if name not in self.ideals:
            raise InputError(f"no ideal named {name}; have {', '.join(self.ideals)}")
        return Ideal(self.ring, self.ideals[name], name)

    def datum(self) -> PlanePairDatum | None:
        if not self.Q:
            return None
        try:
            k, d, c = (int(self.headers[h]) for h in ("k", "d", "c"))
        except KeyError as exc:
            raise InputError(f"datum needs a {exc.args[0]}: header") from None
        Q = [[self.Q.get((i, j), self.ring.zero()) for j in range(c)] for i in range(c)]
        P = [self.P.get(s, self.ring.zero()) for s in range(k + 1 - c)]
        return PlanePairDatum(k, c, d, Q, P, self.ring)


@dataclass
class RunConfig:
    subcommand: str
    fmt: str = "text"
    seed: int = 0
    max_degree: int | None = None
    budget: Budget = field(default_factory=Budget)
    out: str | None = None


def parse_input(text: str, source: str = "<input>") -> InputFile:
    inp = None
    current = "I"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise InputError(f"{source}:{lineno}: expected 'key: value'")
        key, value = (s.strip() for s in line.split(":", 1))
        try:
            if key == "ring":
                inp = InputFile(_parse_ring(value))
                continue
            if inp is None:
                raise InputError(f"{source}:{lineno}: the first line must be 'ring: ...'")
            if key in ("k", "d", "c"):
                inp.headers[key] = int(value)
            elif key == "ideal":
                current = value
                inp.ideals.setdefault(current, [])
            elif key == "gen":
                inp.ideals.setdefault(current, []).append(inp.ring.parse(value))
            elif key == "f":
                inp.f = inp.ring.parse(value)
            elif key.startswith("Q "):
                i, j = (int(x) for x in key.split()[1:3])
                inp.Q[(i, j)] = inp.ring.parse(value)
            elif key.startswith("P "):
                inp.P[int(key.split()[1])] = inp.ring.parse(value)
            else:
                raise InputError(f"{source}:{lineno}: unknown key {key!r}")
        except ParseError as exc:
            exc.where = f"{source}:{lineno}"
            raise
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"{source}:{lineno}: {exc}") from None
    if inp is None:
        raise InputError(f"{source}: empty input")
    return inp


def format_datum(datum: PlanePairDatum) -> str:
    """Input-file text for a plane pair datum; parse_input reads it back."""
    r = datum.ring
    head = "ring: " + " ".join(r.names)
    if any(w != 1 for w in r.weights):
        head += " weights " + " ".join(str(w) for w in r.weights)
    lines = [head, f"k: {datum.k}", f"d: {datum.d}", f"c: {datum.c}"]
    for i, row in enumerate(datum.Q):
        for j, q in enumerate(row):
            if not q.is_zero():
                lines.append(f"Q {i} {j}: {q}")
    for s, p in enumerate(datum.P):
        if not p.is_zero():
            lines.append(f"P {s}: {p}")
    return "\n".join(lines) + "\n"


def _parse_ring(value: str) -> RingCtx:
    parts = value.split()
    weights = None
    if "weights" in parts:
        at = parts.index("weights")
        weights = [int(w) for w in parts[at + 1:]]
        parts = parts[:at]
        if len(weights) != len(parts):
            raise InputError("one weight per variable")
    return RingCtx(tuple(parts), tuple(weights) if weights else None)


def parse_order(text: str):
    if text == "degrevlex":
        return DEGREVLEX
    if text == "lex":
        return LEX
    if text.startswith("block:"):
        return block_order(int(text.split(":", 1)[1]))
    raise InputError(f"unknown order {text!r}")


def parse_budget(text: str | None) -> Budget:
    b = Budget()
    if not text:
        return b
    for part in text.split(","):
        if "=" not in part:
            b.max_active_vars = int(part)
            continue
        key, val = part.split("=", 1)
        if key == "vars":
            b.max_active_vars = int(val)
        elif key == "lift":
            b.max_lift_steps = int(val)
        else:
            raise InputError(f"unknown budget key {key!r}")
    return b


def parse_degrees(text: str) -> list[int]:
    if ".." in text:
        a, b = text.split("..", 1)
        return list(range(int(a), int(b) + 1))
    return [int(x) for x in text.split(",")]


def _load(path: str) -> InputFile:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_input(text, path)


# ---------------------------------------------------------------------------
# subcommands; each returns (section dict, text lines)


def cmd_hilbert(args, cfg):
    inp = _load(args.file)
    q = GradedQuotient(inp.ideal(args.ideal), max_degree=cfg.max_degree)
    degs = parse_degrees(args.degrees)
    values = {str(e): q.hilbert_function(e) for e in degs}
    sec, lines = {"hilbert": values}, [f"h({e}) = {v}" for e, v in values.items()]
    if args.expect is not None:
        expected = [int(x) for x in args.expect.split(",")]
        actual = list(values.values())
        if expected != actual:
            err = CheckFailed("Hilbert values", expected, actual)
            err.partial = (sec, lines)
            raise err
    return sec, lines


def cmd_groebner(args, cfg):
    inp = _load(args.file)
    I = inp.ideal(args.ideal)
    gb = compute_basis(I.ring, I.generators, parse_order(args.order), max_degree=cfg.max_degree)
    elems = [str(p) for p in gb]
    ok = gb.check_buchberger_criterion()
    sec = {"groebner": {"order": args.order, "size": len(elems), "elements": elems,
                        "criterion": ok}}
    if not ok:
        raise CheckFailed("S-pairs reduce to zero", True, False)
    return sec, elems


def cmd_nf(args, cfg):
    inp = _load(args.file)
    I = inp.ideal(args.ideal)
    p = inp.ring.parse(args.poly)
    nf = I.groebner(max_degree=cfg.max_degree).normal_form(p)
    return {"nf": {"input": str(p), "normal_form": str(nf)}}, [str(nf)]


def cmd_kbase(args, cfg):
    inp = _load(args.file)
    q = GradedQuotient(inp.ideal(args.ideal), max_degree=cfg.max_degree)
    monos = [str(inp.ring.monomial(m)) for m in q.kbase(args.degree)]
    return {"kbase": {"degree": args.degree, "size": len(monos), "monomials": monos}}, monos


def _pair_ideals(inp: InputFile):
    datum = inp.datum()
    if datum is not None:
        ids = plane_pair_ideals(datum)
        return ids.I1, ids.I2, ids.Isum, ids.Iint, datum.d
    I1, I2 = inp.ideal("I1"), inp.ideal("I2")
    return I1, I2, ideal_sum(I1, I2), None, inp.headers.get("d")


def cmd_gram(args, cfg):
    inp = _load(args.file)
    I1, I2, Isum, _, d = _pair_ideals(inp)
    a = args.degree if args.degree is not None else d
    if a is None:
        raise InputError("give --degree or a d: header")
    target = I1 if args.target == 1 else I2
    gp = subquotient_pairing(Isum, target, a, args.right_degree, workers=args.workers)
    cert = full_rank_certificate(gp)
    sec = {"gram": {"target": f"I{args.target}", "degrees": [gp.left_degree, gp.right_degree],
                    "socle_monomial": str(inp.ring.monomial(gp.socle_monomial)),
                    "rows": cert["rows"], "cols": cert["cols"], "rank": cert["rank"],
                    "left_kernel_dim": cert["left_kernel_dim"],
                    "det": rational_str(cert["det"]) if "det" in cert else None,
                    "full_rank": cert["full_rank"],
                    "matrix": [[rational_str(gp.gram[i, j]) for j in range(gp.gram.cols)]
                               for i in range(gp.gram.rows)] if args.matrix else None}}
    lines = [f"size {cert['rows']}x{cert['cols']}", f"rank {cert['rank']}",
             f"left kernel {cert['left_kernel_dim']}"]
    if "det" in cert:
        lines.append(f"det {rational_str(cert['det'])}")
    if args.expect_rank is not None and args.expect_rank != cert["rank"]:
        err = CheckFailed("Gram rank", args.expect_rank, cert["rank"])
        err.partial = (sec, lines)
        raise err
    return sec, lines


def cmd_pencil(args, cfg):
    inp = _load(args.file)
    I1, I2, Isum, Iint, d = _pair_ideals(inp)
    a = args.degree if args.degree is not None else d
    if a is None:
        raise InputError("give --degree or a d: header")
    rep = pencil_analysis(I1, I2, a, Iint, Isum, seed=cfg.seed)
    sec = {"pencil": rep.as_dict()}
    lines = [f"size {rep.A1.rows}x{rep.A1.cols}", f"generic rank {rep.generic_rank}",
             f"det {rep.det_poly}",
             "drop values " + ", ".join(f"{rational_str(r)} (x{m})" for r, m in rep.drop_values),
             f"nonzero drop values {len(rep.nonzero_drop_values)} (bound {rep.bound})"]
    for label, ok in rep.checks:
        lines.append(f"{'ok  ' if ok else 'FAIL'} {label}")
        if not ok:
            raise CheckFailed(label, True, False)
    return sec, lines


def cmd_classify(args, cfg):
    cls = classify_regime(args.d, args.c, args.k)
    sec = {"classify": {"d": cls.d, "c": cls.c, "k": cls.k, "case": cls.case,
                        "h_sum_at_top": cls.h_sum_at_top}}
    return sec, [cls.case, f"hSumAtTop {cls.h_sum_at_top}"]


def cmd_smooth(args, cfg):
    inp = _load(args.file)
    f = inp.f
    if f is None:
        datum = inp.datum()
        if datum is None:
            raise InputError("smooth-check needs an f: line or a plane pair datum")
        f = datum.f
    rep = is_smooth(f, split=not args.direct)
    sec = {"smooth-check": {"smooth": rep.smooth, "method": rep.method, "leaf_cases": rep.cases}}
    return sec, ["smooth" if rep.smooth else "singular", f"method {rep.method}"]


def cmd_codim(args, cfg):
    rep = smoothness_codim_report(args.k, args.d, args.c, groebner=not args.closed_only, seed=cfg.seed)
    lines = [f"{key} {val}" for key, val in rep["closed_form"].items()]
    lines.append(f"balance {rep['balance']}")
    if "agree" in rep:
        lines.append(f"groebner agreement {rep['agree']}")
    if not rep["balance"]:
        raise CheckFailed("tangent codim = containment codim - family dim", True, False)
    if rep.get("agree") is False:
        raise CheckFailed("closed forms equal Groebner values", rep["closed_form"], rep["groebner"])
    return {"codim": rep}, lines


def cmd_scenario(args, cfg):
    config = ScenarioConfig(seed=cfg.seed, budget=cfg.budget, check_smoothness=not args.skip_smooth,
                            workers=args.workers)
    params = {}
    if args.name == "fermat" and args.params:
        d, c, k = (int(x) for x in args.params.split(","))
        params = {"d": d, "c": c, "k": k}
    if args.name == "lift":
        params = {"base": args.base, "steps": args.steps}
    rep = run_scenario(args.name, config, **params)
    lines = _scenario_text(rep)
    sec = {"scenario": rep.as_dict()}
    fails = rep.failures()
    if rep.status != "ok":
        print(f"scenario {rep.name}: {rep.status}", file=sys.stderr)
    if fails:
        first = fails[0]
        err = CheckFailed(first["label"], first.get("expected"), first.get("actual"))
        err.partial = (sec, lines)
        raise err
    return sec, lines


def _scenario_text(rep) -> list[str]:
    lines = [f"scenario {rep.name} {json.dumps(rep.parameters, sort_keys=True)}",
             f"status {rep.status}"]
    if rep.smooth_ok is not None:
        lines.append(f"smooth {rep.smooth_ok}")
    pr = rep.pairing_result or {}
    if "rows" in pr:
        lines.append(f"basis size {pr['rows']}")
        lines.append(f"rank {pr['rank']}")
        lines.append(f"left kernel {pr['left_kernel_dim']}")
        if "det" in pr:
            lines.append(f"det {_plain(pr['det'])}")
    elif "left_kernel_dim" in pr:
        lines.append(f"left kernel {pr['left_kernel_dim']}")
    if rep.pencil_result:
        pen = rep.pencil_result
        lines.append(f"pencil det {pen['det_poly']}")
        lines.append(f"pencil nonzero drop values {pen['nonzero_drop_count']} (bound {pen['bound']})")
    for c in rep.identity_checks:
        lines.append(f"{'ok  ' if c['ok'] else 'FAIL'} {c['label']}")
    lines.append("anchors " + " ".join(rep.anchors))
    lines.append(f"elapsed {rep.elapsed:.2f}s")
    return lines


COMMANDS = {
    "hilbert": cmd_hilbert, "groebner": cmd_groebner, "nf": cmd_nf, "kbase": cmd_kbase,
    "gram": cmd_gram, "pencil": cmd_pencil, "classify": cmd_classify,
    "smooth-check": cmd_smooth, "codim": cmd_codim, "scenario": cmd_scenario,
}


def build_parser() -> argparse.ArgumentParser:
    def flags(suppress):
        p = argparse.ArgumentParser(add_help=False)
        dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        p.add_argument("--format", choices=("text", "structured"), default=dflt("text"))
        p.add_argument("--seed", type=int, default=dflt(0))
        p.add_argument("--max-degree", type=int, default=dflt(None))
        p.add_argument("--budget", default=dflt(None), help="N, or vars=N,lift=M")
        p.add_argument("--out", default=dflt(None))
        return p

    # flags are accepted before or after the subcommand
    common = flags(suppress=True)
    ap = argparse.ArgumentParser(prog="hodgeloci", parents=[flags(suppress=False)],
                                 description="Exact Hilbert functions, socle pairings and pencils.")
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add("hilbert", help="Hilbert function of S/I")
    p.add_argument("file")
    p.add_argument("--degrees", default="0..4", help="a..b or a,b,c")
    p.add_argument("--expect", default=None, help="comma-separated values to assert")
    p.add_argument("--ideal", default=None, help="ideal name; I1, I2, sum or int for datum files")
    p = add("groebner", help="reduced Groebner basis")
    p.add_argument("file")
    p.add_argument("--order", default="degrevlex")
    p.add_argument("--ideal", default=None, help="ideal name; I1, I2, sum or int for datum files")
    p = add("nf", help="normal form of a polynomial")
    p.add_argument("file")
    p.add_argument("poly")
    p.add_argument("--ideal", default=None, help="ideal name; I1, I2, sum or int for datum files")
    p = add("kbase", help="standard monomials of one degree")
    p.add_argument("file")
    p.add_argument("degree", type=int)
    p.add_argument("--ideal", default=None, help="ideal name; I1, I2, sum or int for datum files")
    for name in ("gram", "pencil"):
        p = add(name, help=f"{name} of a pair of ideals or a plane pair datum")
        p.add_argument("file")
        p.add_argument("--degree", type=int, default=None)
        if name == "gram":
            p.add_argument("--right-degree", type=int, default=None)
            p.add_argument("--target", type=int, choices=(1, 2), default=1)
            p.add_argument("--workers", type=int, default=1)
            p.add_argument("--matrix", action="store_true", help="include the matrix entries")
            p.add_argument("--expect-rank", type=int, default=None)
    p = add("classify", help="kernel regime for plane pairs")
    for n in ("d", "c", "k"):
        p.add_argument(n, type=int)
    p = add("smooth-check", help="is V(f) smooth")
    p.add_argument("file")
    p.add_argument("--direct", action="store_true", help="skip the case split")
    p = add("codim", help="codimension formulas for plane pairs")
    for n in ("k", "d", "c"):
        p.add_argument(n, type=int)
    p.add_argument("--closed-only", action="store_true")
    p = add("scenario", help="named end-to-end scenario")
    p.add_argument("name", choices=sorted(SCENARIOS))
    p.add_argument("--params", default=None, help="d,c,k for fermat")
    p.add_argument("--base", default="fermat:3,3,5", help="lift base: example-a or fermat:d,c,k")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--skip-smooth", action="store_true")
    return ap


def _emit(cfg: RunConfig, sections: dict, lines: list[str], status: dict | None = None):
    if cfg.fmt == "structured":
        doc = {"command": cfg.subcommand, "seed": cfg.seed, **_plain(sections)}
        if status:
            doc["status"] = status
        text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig(args.subcommand, args.format, args.seed, args.max_degree,
                        parse_budget(args.budget), args.out)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    random.seed(cfg.seed)
    try:
        sections, lines = COMMANDS[args.subcommand](args, cfg)
    except ParseError as exc:
        where = getattr(exc, "where", "")
        print(f"parse error: {where + ': ' if where else ''}{exc.args[0]}", file=sys.stderr)
        if exc.text:
            print(f"  {exc.text}\n  {' ' * exc.position}^", file=sys.stderr)
        return 2
    except (InputError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except CheckFailed as exc:
        partial = getattr(exc, "partial", None)
        status = {"failed": exc.claim, "expected": _plain(exc.expected), "actual": _plain(exc.actual)}
        if partial:
            _emit(cfg, partial[0], partial[1], status)
        print(f"check failed: {exc.claim}\n  expected: {_plain(exc.expected)}\n"
              f"  actual:   {_plain(exc.actual)}", file=sys.stderr)
        return 1
    _emit(cfg, sections, lines)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
