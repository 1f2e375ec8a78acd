"""The acceptance suite: one entry per numbered criterion, plus finer-grained
checks that can be selected by name with `verify --only`.

Every check takes a SuiteConfig and returns a dict with at least "ok" and
"cases"; failing cases are listed under "failures" (capped).
"""
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb, factorial

import numpy as np

from ..catsl2 import (Y_modules, Y_via_functors, Y_via_truncation, comparison_check,
                      ef_char_decomposition, forced_terms, induction_lemma_check,
                      multiplicity_filtration_check, single_term_expected)
from ..coeff import Laurent, quantum_binom
from ..combinatorics import TwoBlockShape, binomial_identity_holds, enumerate_multipartitions, \
    truncated_dimension, two_block_shapes
from ..decat import (canonical_closed, canonical_via_divided_powers, decat_compare,
                     normalization_consistent, tensor_model)
from ..homs import (basic_two_tensor, double_centralizer_check,
                    indecomposability_certificate, path_algebra_realization, positivity_report,
                    schur_algebra, truncation_report, two_tensor_schur)
from ..linalg import RowSpace, mm, rank
from ..modules import G_of, specht_filtration_check, truncated_G
from ..nilhecke import (build_rep, cell_ideal, cellular_basis, e_prime, gram_matrix,
                        idempotent_e, is_differential_stable, trace_functional)

MAX_FAILURES = 10


@dataclass
class SuiteConfig:
    max_n: int = None        # None: n <= 3 for the algebra checks, unbounded elsewhere
    max_l: int = 4
    primes: tuple = None     # None: each check uses its own default primes
    seed: int = 0

    def primes_or(self, default):
        return tuple(self.primes) if self.primes else default

    def n_cap(self, default=99):
        return default if self.max_n is None else self.max_n


@dataclass
class Tally:
    cases: int = 0
    failures: list = field(default_factory=list)

    def check(self, ok, label):
        self.cases += 1
        if not ok and len(self.failures) < MAX_FAILURES:
            self.failures.append(str(label))
        return ok

    def report(self, **extra):
        out = {"ok": not self.failures, "cases": self.cases, "failures": self.failures}
        out.update(extra)
        return out


def _sizes(cfg, primes):
    for p in primes:
        for l in range(0, cfg.max_l + 1):
            for n in range(0, min(cfg.n_cap(3), l) + 1):
                yield n, l, p


def _all_shapes(max_l):
    for l in range(1, max_l + 1):
        for r in range(l + 1):
            for n in range(l + 1):
                for sh in two_block_shapes(n, r, l - r):
                    yield sh


# ------------------------------------------------------------ 1, 2: the algebra

def check_algebra(cfg):
    t = Tally()
    for n, l, p in _sizes(cfg, cfg.primes_or((2, 3, 5))):
        label = f"NH_{n}^{l} p={p}"
        try:
            rep = build_rep(n, l, p)
            ok = rep.dim == comb(l, n) * factorial(n) ** 2 and rep.check_relations()
        except AssertionError as exc:
            ok, label = False, f"{label}: {exc}"
        t.check(ok, label)
    return t.report()


def check_leibniz(cfg, pairs=200):
    t = Tally()
    rng = np.random.default_rng(cfg.seed)
    for n, l, p in _sizes(cfg, cfg.primes_or((2, 3, 5))):
        rep = build_rep(n, l, p)
        ok = True
        for _ in range(pairs):
            x, y = rng.integers(0, p, rep.dim), rng.integers(0, p, rep.dim)
            lhs = mm(rep.mul(x, y), rep.D, p)
            rhs = (rep.mul(mm(x, rep.D, p), y) + rep.mul(x, mm(y, rep.D, p))) % p
            if not np.array_equal(lhs, rhs):
                ok = False
                break
        t.check(ok, f"Leibniz NH_{n}^{l} p={p}")
    return t.report()


def check_dp_zero(cfg):
    t = Tally()
    for n, l, p in _sizes(cfg, cfg.primes_or((2, 3, 5))):
        t.check(build_rep(n, l, p).dp_zero(), f"d^p NH_{n}^{l} p={p}")
    return t.report()


def check_idempotent_differentials(cfg):
    """d(e_n) = -e_n sum (i-1) y_i and d(e'_n) = -sum (n-i) y_i e'_n."""
    t = Tally()
    for n, l, p in _sizes(cfg, cfg.primes_or((2, 3, 5))):
        if n == 0:
            continue
        rep = build_rep(n, l, p)
        unit = lambda i: tuple(1 if k == i else 0 for k in range(n))
        lower = rep.element_from_poly({unit(i - 1): i - 1 for i in range(2, n + 1)}) if n > 1 else rep.zero()
        upper = rep.element_from_poly({unit(i - 1): n - i for i in range(1, n)}) if n > 1 else rep.zero()
        e, ep = idempotent_e(rep, (n,)), e_prime(rep, n)
        ok = rep.differential(e) == -(e * lower) and rep.differential(ep) == -(upper * ep)
        t.check(ok, f"idempotents NH_{n}^{l} p={p}")
    return t.report()


def check_pdg_axioms(cfg):
    parts = {"leibniz": check_leibniz(cfg), "dp_zero": check_dp_zero(cfg),
             "idempotents": check_idempotent_differentials(cfg)}
    return _merge(parts)


def _merge(parts):
    return {"ok": all(v["ok"] for v in parts.values()),
            "cases": sum(v["cases"] for v in parts.values()),
            "failures": [f"{k}: {f}" for k, v in parts.items() for f in v["failures"]],
            "parts": {k: v["ok"] for k, v in parts.items()}}


# ------------------------------------------------------------ 3: n = 2, l = 3

WORKED_EXAMPLE = {
    (1, 1, 0): ["y1^2 y2", "y1^2 y2 p1"],
    (1, 0, 1): ["y1^2 y2", "y1^2 y2 p1", "y1^2", "y1^2 p1"],
    (0, 1, 1): ["y1^2 y2", "y1^2 y2 p1", "p1 y1^2 y2", "p1 y1^2 y2 p1",
                "y1^2", "y1^2 p1", "y1", "y1 p1"],
}


def worked_example_report(p):
    rep = build_rep(2, 3, p)
    out = {}
    for lam, words in WORKED_EXAMPLE.items():
        G = G_of(rep, lam)
        rows = np.stack([rep.element_from_word(w).coords for w in words])
        span = RowSpace(rows, p)
        out[lam] = {"dim": G.dim, "spanned": span.dim == len(words) == G.dim
                    and span.sum(RowSpace(G.ambient_rows(), p)).dim == G.dim}
    zeta = (0, 1, 1)
    trunc = truncated_G(rep, TwoBlockShape(1, 0, 0, 2))
    G = G_of(rep, zeta)
    e2 = idempotent_e(rep, (2,))
    comp_rows = mm(G.ambient_rows(), rep.left_op_element((rep.one() - e2).coords), p)
    comp = {}
    for d in sorted(set(rep.degrees.tolist())):
        r = rank(np.where(rep.degrees == d, comp_rows, 0), p)
        if r:
            comp[d] = r
    comp_char = Laurent(list(comp.items())).shift(G.shift)
    out["truncated_dim"] = trunc.dim
    out["complement_char"] = comp_char
    out["complement_matches"] = comp_char == G_of(rep, (1, 1, 0)).char()
    out["truncation_indecomposable"] = indecomposability_certificate(trunc)
    out["untruncated_decomposes"] = not indecomposability_certificate(G)
    return out


def check_worked_example(cfg):
    t = Tally()
    for p in cfg.primes_or((2, 3, 5)):
        r = worked_example_report(p)
        dims = [r[lam]["dim"] for lam in WORKED_EXAMPLE]
        t.check(dims == [2, 4, 8], f"p={p} dims {dims}")
        t.check(all(r[lam]["spanned"] for lam in WORKED_EXAMPLE), f"p={p} listed spanning sets")
        t.check(r["truncated_dim"] == 6, f"p={p} e_2 G(0,1,1) dim {r['truncated_dim']}")
        t.check(r["complement_matches"], f"p={p} complement char {r['complement_char']}")
        t.check(r["truncation_indecomposable"] and r["untruncated_decomposes"], f"p={p} certificates")
    return t.report()


# ------------------------------------------------------------ 4, 5: cells, trace

def check_cellular(cfg):
    t = Tally()
    for n, l, p in _sizes(cfg, cfg.primes_or((3,))):
        rep = build_rep(n, l, p)
        try:
            cells = cellular_basis(rep)
        except AssertionError:
            t.check(False, f"cellular basis NH_{n}^{l} p={p}")
            continue
        t.check(len(cells) == rep.dim, f"cell count NH_{n}^{l}")
        for mu in enumerate_multipartitions(n, l):
            t.check(is_differential_stable(rep, cell_ideal(rep, mu, cells)), f"ideal above {mu} p={p}")
        for lam in enumerate_multipartitions(n, l):
            t.check(specht_filtration_check(rep, lam, cells), f"Specht filtration {lam} p={p}")
    return t.report()


def check_trace(cfg):
    t = Tally()
    for n, l, p in _sizes(cfg, cfg.primes_or((2, 3, 5))):
        rep = build_rep(n, l, p)
        try:
            tau = trace_functional(rep)
        except AssertionError:
            t.check(False, f"trace NH_{n}^{l} p={p}")
            continue
        gram = gram_matrix(rep, tau.vector)
        ok = tau.nondegenerate and np.array_equal(gram, gram.T) and tau.degree == -2 * n * (l - n)
        t.check(ok, f"trace NH_{n}^{l} p={p}")
    return t.report()


# ------------------------------------------------------------ 6, 7: Schur algebras, dimensions

def check_two_tensor_schur(cfg):
    t = Tally()
    for p in cfg.primes_or((2, 3, 5)):
        S = two_tensor_schur(2, 2, 1, p)
        blocks = sorted(len(v) for v in S.blocks.values())
        t.check(S.dim == 11 and blocks == [1, 2, 2, 6], f"S_2(2,1) p={p}: {S.dim} {blocks}")
        for l in (2, 3):
            res = path_algebra_realization(schur_algebra(1, l, p), l)
            t.check(res["ok"], f"S_1({l}) quiver presentation p={p}: {res}")
        for l in range(1, cfg.max_l + 1):
            for n in range(0, l + 1):
                A = two_tensor_schur(n, l, 0, p)
                want = quantum_binom(l, n).shift(n * (l - n))
                t.check(A.is_commutative() and A.graded_dim() == want, f"S_{n}({l},0) p={p}")
    return t.report()


def check_dimension_formula(cfg):
    t = Tally()
    for sh in _all_shapes(cfg.max_l):
        if sh.n > cfg.n_cap():
            continue
        rep = build_rep(sh.n, sh.r + sh.s, 3)
        t.check(truncated_G(rep, sh).dim == truncated_dimension(sh), sh.label())
    for a in range(5):
        for b in range(5):
            for c in range(5):
                for d in range(5):
                    t.check(binomial_identity_holds(a, b, c, d), f"identity {(a, b, c, d)}")
    return t.report()


# ------------------------------------------------------------ 8-10: functors and Y

TENSOR_PAIRS = ((2, 1), (1, 2), (2, 2), (3, 1))


def check_classification(cfg):
    t = Tally()
    for p in cfg.primes_or((3,)):
        for r, s in TENSOR_PAIRS:
            if r + s > cfg.max_l:
                continue
            for n in range(0, r + s + 1):
                for Y in Y_modules(n, r, s, p):
                    t.check(Y.diff is not None, f"{Y.label} not d-stable p={p}")
                    t.check(indecomposability_certificate(Y), f"{Y.label} certificate p={p}")
                for sh in two_block_shapes(n, r, s):
                    if sh.b != sh.c:
                        continue
                    base = Y_via_truncation(n, r, s, sh, p).char()
                    for order in ("EF", "FE"):
                        other = Y_via_functors(n, r, s, sh, p, order).char()
                        k = other.min_degree() - base.min_degree() if not base.is_zero() else 0
                        t.check(other == base.shift(k), f"{sh.label()} {order} p={p}")
    return t.report()


def check_functor_lemmas(cfg):
    t = Tally()
    for p in cfg.primes_or((3, 5)):
        for sh in _all_shapes(cfg.max_l):
            if max(sh.a + sh.b, sh.n) > cfg.n_cap():
                continue
            if sh.d == 0 and sh.a > 0:
                res = comparison_check(sh, p)
                t.check(res["ok"], f"comparison {sh.label()} p={p}: {res}")
            if sh.d > 0:
                t.check(induction_lemma_check(sh, p), f"induction {sh.label()} p={p}")
    return t.report()


def check_ef_decomposition(cfg):
    t = Tally()
    for p in cfg.primes_or((3,)):
        for l in range(1, cfg.max_l + 1):
            for r in range(l + 1):
                s = l - r
                for n in range(0, min(l, cfg.n_cap()) + 1):
                    for sh in two_block_shapes(n, r, s):
                        for op in ("E", "F"):
                            m = n - 1 if op == "E" else n + 1
                            if not 0 <= m <= min(l, cfg.n_cap()):
                                continue
                            try:
                                dec = ef_char_decomposition(n, r, s, sh, op, p)
                            except ValueError as exc:
                                t.check(False, f"{op}{sh.label()} p={p}: {exc}")
                                continue
                            for tgt, coeff in forced_terms(sh, op).items():
                                t.check(dec.get(tgt) == coeff, f"forced {op}{sh.label()} -> {tgt.label()}")
                            if single_term_expected(sh, op):
                                t.check(len(dec) == 1, f"single term {op}{sh.label()}: {len(dec)}")
                        if sh.b >= sh.c:
                            ok, sig = multiplicity_filtration_check(n, r, s, sh, p)
                            t.check(ok, f"multiplicities {sh.label()} p={p}: shifts {sig}")
    return t.report()


# ------------------------------------------------------------ 11, 12: Schur algebras again

def check_double_centralizer(cfg):
    t = Tally()
    for p in cfg.primes_or((3,)):
        for r, s in ((2, 1), (1, 2)):
            for n in range(0, min(cfg.n_cap(), r + s) + 1):
                ok, cent, dim, act = double_centralizer_check(n, r, s, p)
                t.check(ok, f"n={n} ({r},{s}) p={p}: centraliser {cent}, NH {dim}, image {act}")
    return t.report()


TRUNCATION_EXAMPLES = (
    # n, vertices, standard module dims in the order of two_block_shapes
    (1, (2, 3), [4, 1]),
    (2, (1, 3), [2, 2]),
)


def check_basic_positivity(cfg):
    t = Tally()
    for p in cfg.primes_or((2, 3, 5)):
        for r, s in ((2, 1), (1, 2), (2, 2)):
            for n in range(0, min(cfg.n_cap(3), r + s) + 1):
                rep = positivity_report(basic_two_tensor(n, r, s, p))
                t.check(rep["ok"], f"S^b_{n}({r},{s}) p={p}: {rep}")
        for n, vertices, deltas in TRUNCATION_EXAMPLES:
            rep = truncation_report(n, 2, 1, list(vertices), p)
            got = [v["standard"] for v in rep["standard_modules"].values()]
            t.check(rep["isomorphic"], f"S^b_{n}(2,1) vs truncation at {vertices} p={p}")
            t.check(got == deltas, f"S^b_{n}(2,1) standard modules {got} p={p}")
    return t.report()


# ------------------------------------------------------------ 13: decategorification

def check_decategorification(cfg):
    t = Tally()
    for r, s in ((2, 1), (1, 2), (2, 2)):
        if r + s > cfg.max_l:
            continue
        T = tensor_model(r, s)
        for b in range(r + 1):
            for d in range(s + 1):
                closed = canonical_closed(T, b, d)
                t.check(closed == canonical_via_divided_powers(T, b, d), f"({r},{s}) v_{b}<>v_{d}")
                if b == s - d:
                    both = canonical_closed(T, b, d, "low") == canonical_closed(T, b, d, "high")
                    alt = canonical_via_divided_powers(T, b, d, "EF") == \
                        canonical_via_divided_powers(T, b, d, "FE")
                    t.check(both and alt, f"({r},{s}) both branches at b=c={b}")
        for p in cfg.primes_or((3, 5)):
            reports = []
            for n in range(0, min(cfg.n_cap(), r + s) + 1):
                rep = decat_compare(n, r, s, p)
                reports.append(rep)
                t.check(rep["ok"], f"({r},{s}) n={n} p={p}: E {rep['E']['mismatch']} F {rep['F']['mismatch']}")
            t.check(normalization_consistent(reports), f"({r},{s}) p={p} normalisation")
    return t.report()


# ------------------------------------------------------------ registry and runner

@dataclass(frozen=True)
class Check:
    name: str
    criterion: int
    title: str
    run: object


CRITERIA = (
    Check("algebra", 1, "nilHecke algebras build with the right dimension and relations", check_algebra),
    Check("pdg-axioms", 2, "Leibniz rule, d^p = 0 and the idempotent differentials", check_pdg_axioms),
    Check("worked-example", 3, "the n = 2, l = 3 modules and the e_2 splitting", check_worked_example),
    Check("cellular", 4, "cellular basis, d-stable cell ideals, Specht filtrations", check_cellular),
    Check("trace", 5, "symmetric nondegenerate trace of the expected degree", check_trace),
    Check("schur", 6, "two-tensor Schur algebras and the A_l^! presentation", check_two_tensor_schur),
    Check("dimension-formula", 7, "dimensions of e_lam G(lam) and the binomial identity",
          check_dimension_formula),
    Check("classification", 8, "Y modules are d-stable and indecomposable; b = c routes agree",
          check_classification),
    Check("functor-lemmas", 9, "E and F of Y modules as subspaces and explicit bijections",
          check_functor_lemmas),
    Check("ef-decomposition", 10, "E Y and F Y decompose with the forced multiplicities",
          check_ef_decomposition),
    Check("double-centralizer", 11, "NH_n^l is the centraliser of the Schur algebra", check_double_centralizer),
    Check("basic-positivity", 12, "positivity of S^b and the two A_3^! truncations", check_basic_positivity),
    Check("decategorification", 13, "E and F on Y modules match the canonical basis",
          check_decategorification),
)

EXTRA = (
    Check("leibniz", 2, "Leibniz rule on random pairs", check_leibniz),
    Check("dp-zero", 2, "d^p = 0 on every nilHecke algebra", check_dp_zero),
    Check("idempotent-differentials", 2, "differentials of e_n and e'_n", check_idempotent_differentials),
)

ALL_CHECKS = {c.name: c for c in CRITERIA + EXTRA}


def select(only=None):
    if not only:
        return list(CRITERIA)
    out = []
    for name in only:
        if name.isdigit():
            out.extend(c for c in CRITERIA if c.criterion == int(name))
        elif name in ALL_CHECKS:
            out.append(ALL_CHECKS[name])
        else:
            raise KeyError(name)
    return out


def _timed(check, cfg):
    start = time.perf_counter()
    try:
        res = check.run(cfg)
    except Exception as exc:  # a crash is a failed check, not a crashed suite
        res = {"ok": False, "cases": 0, "failures": [f"{type(exc).__name__}: {exc}"]}
    res = dict(res)
    res.update(name=check.name, criterion=check.criterion, title=check.title,
               seconds=round(time.perf_counter() - start, 3))
    return res


def run_suite(checks, cfg=None, width=1, sink=None):
    """Run checks (up to width at once); results come back in the given order."""
    cfg = cfg or SuiteConfig()
    if width <= 1:
        results = []
        for c in checks:
            results.append(_timed(c, cfg))
            if sink:
                sink(results[-1])
        return results
    with ThreadPoolExecutor(max_workers=width) as pool:
        futures = [pool.submit(_timed, c, cfg) for c in checks]
        results = [f.result() for f in futures]
    if sink:
        for r in results:
            sink(r)
    return results
