"""Command-line entry point.

    pdgschur basis --n 2 --l 3 --p 3 --lambda 0,1,1 --truncated
    pdgschur schur --n 2 --r 2 --s 1 --p 3 --basic
    pdgschur functor --op E --power 1 --lambda 1,1,1,0 --r 2 --s 1 --p 3
    pdgschur canonical --r 2 --s 1
    pdgschur compare --r 2 --s 1 --p 3
    pdgschur verify --only dp-zero
    pdgschur cache info

JSON goes to stdout, diagnostics to stderr. Exit status: 0 success, 1 failed
check or internal error, 2 bad usage.
"""
import argparse
import json
import logging
import sys

import numpy as np

from ..coeff import Laurent, is_prime
from ..combinatorics import (TwoBlockShape, fmt_multipartition, parse_multipartition,
                             two_block_of, two_block_shapes)
from ..nilhecke import build_rep, set_rep_source, word_str
from .cache import ENV_VAR, RepCache

SCHEMA = 1
log = logging.getLogger("pdgschur")


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ rendering

def to_jsonable(x):
    if isinstance(x, Laurent):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def to_text(x, indent=0):
    pad = "  " * indent
    if isinstance(x, dict):
        lines = []
        for k, v in x.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(to_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(x, list):
        if _flat_list(x):
            return pad + _scalar(x)
        return "\n".join(f"{pad}-\n{to_text(v, indent + 1)}" if isinstance(v, (dict, list))
                         else f"{pad}- {_scalar(v)}" for v in x)
    return pad + _scalar(x)


def _flat_list(v):
    """Lists of scalars, or of lists of scalars, print on one line."""
    return isinstance(v, list) and all(
        not isinstance(x, (dict, list)) or (isinstance(x, list) and
                                           all(not isinstance(y, (dict, list)) for y in x))
        for x in v)


def _scalar(v):
    if isinstance(v, Laurent):
        return str(v)
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit(payload, fmt):
    if fmt == "json":
        body = {"schema": SCHEMA}
        body.update(to_jsonable(payload))
        sys.stdout.write(json.dumps(body, indent=2) + "\n")
    else:
        sys.stdout.write(to_text(payload) + "\n")


# ------------------------------------------------------------------ validation

def need_prime(p):
    if p is None or not is_prime(p):
        raise UsageError(f"--p must be a prime, got {p}")
    return p


def need_nl(n, l):
    if n is None or l is None or not 0 <= n <= l:
        raise UsageError(f"need 0 <= n <= l, got n={n}, l={l}")


def parse_lambda(text, n, l):
    try:
        lam = parse_multipartition(text)
    except ValueError as exc:
        raise UsageError(f"bad --lambda {text!r}: {exc}") from None
    if len(lam) != l or sum(lam) != n:
        raise UsageError(f"--lambda {text} is not a 0/1 vector of length {l} with {n} ones")
    return lam


def parse_shape(text):
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad --lambda {text!r}: expected a,b,c,d") from None
    if len(parts) != 4 or min(parts) < 0:
        raise UsageError(f"--lambda for functor is a,b,c,d with nonnegative entries, got {text}")
    return TwoBlockShape(*parts)


def default_split(lam):
    """The split r for which e_lam uses the fewest idempotent blocks."""
    best = None
    for r in range(len(lam) + 1):
        sh = two_block_of(lam, r)
        if sh is None:
            continue
        key = (sum(1 for k in (sh.b, sh.d) if k), r)
        if best is None or key < best[0]:
            best = (key, sh)
    return None if best is None else best[1]


# ------------------------------------------------------------------ commands

def _lift_rows(M):
    rows, node = np.eye(M.dim, dtype=np.int64), M
    while node.parent is not None:
        rows = (rows @ node.basis_in_parent) % M.p
        node = node.parent
    return rows


def _element_terms(rep, coords):
    return [[word_str(rep.basis_words[j]), int(c)] for j, c in enumerate(coords) if c]


def cmd_basis(args):
    from ..modules import G_of, specht, truncated_G

    need_nl(args.n, args.l)
    p = need_prime(args.p)
    lam = parse_lambda(args.lam, args.n, args.l)
    rep = build_rep(args.n, args.l, p)
    if args.specht:
        M = specht(rep, lam)
    elif args.truncated:
        sh = two_block_of(lam, args.r) if args.r is not None else default_split(lam)
        if sh is None:
            raise UsageError(f"{fmt_multipartition(lam)} is not a two-block shape for r={args.r}")
        M = truncated_G(rep, sh)
    else:
        M = G_of(rep, lam)
    rows = _lift_rows(M)
    order = sorted(range(M.dim), key=lambda i: (int(M.degrees[i]), i))
    basis = [{"degree": int(M.degrees[i]) + M.shift, "element": _element_terms(rep, rows[i])}
             for i in order]
    return {"label": M.label, "shift": M.shift, "dim": M.dim, "d_stable": M.diff is not None,
            "graded_basis": basis, "char": M.char()}


def cmd_algebra(args):
    from ..nilhecke import trace_functional

    need_nl(args.n, args.l)
    p = need_prime(args.p)
    rep = build_rep(args.n, args.l, p)
    tau = trace_functional(rep)
    out = {"n": rep.n, "l": rep.l, "p": p, "dim": rep.dim,
           "expected_dim": rep.expected_dimension(),
           "graded_dim": Laurent([(int(d), 1) for d in rep.degrees]),
           "relations": rep.check_relations(), "dp_zero": rep.dp_zero(),
           "trace_degree": tau.degree, "trace_nondegenerate": tau.nondegenerate}
    if args.basis:
        out["basis"] = [{"word": word_str(w), "degree": int(d)}
                        for w, d in zip(rep.basis_words, rep.degrees)]
    return out


def cmd_schur(args):
    from ..homs import basic_two_tensor, positivity_report, two_tensor_schur

    if args.r is None or args.s is None or min(args.r, args.s) < 0:
        raise UsageError("--r and --s must be nonnegative")
    need_nl(args.n, args.r + args.s)
    p = need_prime(args.p)
    A = basic_two_tensor(args.n, args.r, args.s, p) if args.basic else \
        two_tensor_schur(args.n, args.r, args.s, p)
    shapes = two_block_shapes(args.n, args.r, args.s)
    blocks = []
    for (i, j), idx in sorted(A.blocks.items()):
        blocks.append({"source": fmt_multipartition(shapes[i].multipartition()),
                       "target": fmt_multipartition(shapes[j].multipartition()),
                       "graded_dims": Laurent([(int(A.degrees[a]), 1) for a in idx])})
    pos = positivity_report(A)
    return {"algebra": A.label or ("S^b" if args.basic else "S") + f"_{args.n}({args.r},{args.s})",
            "blocks": blocks, "total_dim": A.dim, "graded_dim": A.graded_dim(),
            "positivity": pos["ok"], "dp_zero": A.dp_zero()}


def cmd_functor(args):
    from ..catsl2 import Y_module, decompose, induct, restrict

    sh = parse_shape(args.lam)
    if (args.r is not None and args.r != sh.r) or (args.s is not None and args.s != sh.s):
        raise UsageError(f"shape {sh.label()} does not have r={args.r}, s={args.s}")
    p = need_prime(args.p)
    k = args.power
    n = sh.n
    m = n - k if args.op == "E" else n + k
    if k < 0 or not 0 <= m <= sh.r + sh.s:
        raise UsageError(f"{args.op}^({k}) leaves the weights of V_{sh.r} (x) V_{sh.s}")
    Y = Y_module(n, sh.r, sh.s, sh, p)
    X = Y if k == 0 else (restrict(Y, k) if args.op == "E" else induct(Y, k))
    targets = two_block_shapes(m, sh.r, sh.s)
    mults = decompose(X, [Y_module(m, sh.r, sh.s, t, p) for t in targets])
    return {"source": sh.label(), "op": args.op, "power": k,
            "module": {"dim": X.dim, "shift": X.shift, "char": X.char(), "d_stable": X.diff is not None},
            "decomposition": [{"shape": t.label(), "multiplicity": c}
                              for t, c in zip(targets, mults) if not c.is_zero()]}


def cmd_canonical(args):
    from ..decat import canonical_action, tensor_model, transition_matrix

    if args.r is None or args.s is None or min(args.r, args.s) < 0:
        raise UsageError("--r and --s must be nonnegative")
    T = tensor_model(args.r, args.s)
    order = T.shapes()
    labels = [f"v{b}<>v{d}" for b, d in order]
    out = {"r": args.r, "s": args.s, "basis": labels,
           "standard_basis": [f"v{i}(x)v{j}" for i in range(args.r + 1) for j in range(args.s + 1)],
           "transition": transition_matrix(T)}
    for op in ("E", "F"):
        act = canonical_action(T, op)
        out[op] = [[act[col].get(row, Laurent()) for col in order] for row in order]
    return out


def cmd_compare(args):
    from ..decat import decat_compare, normalization_consistent

    if args.r is None or args.s is None or min(args.r, args.s) < 0:
        raise UsageError("--r and --s must be nonnegative")
    p = need_prime(args.p)
    weights = []
    reports = []
    for n in range(args.r + args.s + 1):
        rep = decat_compare(n, args.r, args.s, p)
        reports.append(rep)
        weights.append({"n": n, "weight": args.r + args.s - 2 * n,
                        "E": {k: rep["E"][k] for k in ("shift", "match", "op_match")},
                        "F": {k: rep["F"][k] for k in ("shift", "match", "op_match")},
                        "ok": rep["ok"]})
    ok = all(w["ok"] for w in weights) and normalization_consistent(reports)
    return {"r": args.r, "s": args.s, "p": p, "weights": weights,
            "normalization_consistent": normalization_consistent(reports), "ok": ok}


def cmd_verify(args):
    from .suite import SuiteConfig, run_suite, select

    try:
        checks = select(args.only)
    except KeyError as exc:
        raise UsageError(f"unknown check {exc.args[0]!r}") from None
    primes = tuple(args.primes) if args.primes else None
    for p in primes or ():
        need_prime(p)
    cfg = SuiteConfig(max_n=args.max_n, max_l=args.max_l, primes=primes, seed=args.seed)

    def sink(res):
        status = "PASS" if res["ok"] else "FAIL"
        print(f"[{res['criterion']:>2}] {status} {res['name']} ({res['seconds']:.2f}s)", file=sys.stderr)

    results = run_suite(checks, cfg, width=args.width, sink=sink)
    if args.no_timing:
        for r in results:
            r.pop("seconds", None)
    return {"config": {"max_n": cfg.max_n, "max_l": cfg.max_l, "primes": primes, "seed": cfg.seed},
            "checks": results, "ok": all(r["ok"] for r in results)}


def cmd_cache(args):
    cache = RepCache(args.cache_dir)
    if args.action == "clear":
        return {"dir": str(cache.root), "removed": cache.clear()}
    if args.action == "warm":
        p = need_prime(args.p)
        built = []
        for l in range(args.max_l + 1):
            for n in range(min(l, args.max_n) + 1):
                rep = cache.get(n, l, p)
                built.append({"n": n, "l": l, "p": p, "dim": rep.dim})
        return {"dir": str(cache.root), "entries": built}
    return {"dir": str(cache.root), "entries": cache.entries()}


COMMANDS = {"basis": cmd_basis, "algebra": cmd_algebra, "schur": cmd_schur,
            "functor": cmd_functor, "canonical": cmd_canonical, "compare": cmd_compare,
            "verify": cmd_verify, "cache": cmd_cache}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--cache-dir", default=None, help=f"overrides ${ENV_VAR}")
    common.add_argument("--no-cache", action="store_true", help="build everything in memory")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="pdgschur", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def nlp(sp):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--l", type=int, required=True)
        sp.add_argument("--p", type=int, required=True)

    sp = sub.add_parser("basis", parents=[common], help="graded basis of G(lam), e_lam G(lam) or S^lam")
    nlp(sp)
    sp.add_argument("--lambda", dest="lam", required=True, help="0/1 vector, e.g. 0,1,1")
    kind = sp.add_mutually_exclusive_group()
    kind.add_argument("--truncated", action="store_true")
    kind.add_argument("--specht", action="store_true")
    sp.add_argument("--r", type=int, default=None, help="split for --truncated")

    sp = sub.add_parser("algebra", parents=[common], help="NH_n^l summary")
    nlp(sp)
    sp.add_argument("--basis", action="store_true")

    sp = sub.add_parser("schur", parents=[common], help="two-tensor Schur algebra blocks")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--basic", action="store_true", help="use the Y modules instead of e_lam G(lam)")

    sp = sub.add_parser("functor", parents=[common], help="E^(a) or F^(a) of Y(lam), decomposed")
    sp.add_argument("--op", choices=("E", "F"), required=True)
    sp.add_argument("--power", type=int, default=1)
    sp.add_argument("--lambda", dest="lam", required=True, help="a,b,c,d")
    sp.add_argument("--r", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--p", type=int, required=True)

    sp = sub.add_parser("canonical", parents=[common], help="canonical basis of V_r (x) V_s")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)

    sp = sub.add_parser("compare", parents=[common], help="functor action against the canonical basis")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)

    sp = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    sp.add_argument("--only", nargs="+", help="check names or criterion numbers")
    sp.add_argument("--primes", type=int, nargs="+")
    sp.add_argument("--max-n", type=int, default=None)
    sp.add_argument("--max-l", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--width", type=int, default=1, help="checks run concurrently")
    sp.add_argument("--no-timing", action="store_true", help="omit timings for byte-stable output")

    sp = sub.add_parser("cache", parents=[common], help="inspect, warm or clear the cache")
    sp.add_argument("action", choices=("info", "warm", "clear"), nargs="?", default="info")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--max-n", type=int, default=3)
    sp.add_argument("--max-l", type=int, default=4)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    if not args.no_cache:
        set_rep_source(RepCache(args.cache_dir).get)
    try:
        payload = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (AssertionError, ArithmeticError, ValueError) as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return 1
    finally:
        set_rep_source(None)
    emit(payload, args.format)
    return 0 if payload.get("ok", True) else 1
