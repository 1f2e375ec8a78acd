"""Divided-power functors between module categories of NH_n^l and the
modules Y(lam) they produce.

E^(a) sends a right NH_n-module M to M e*, with e* the sign-corrected e'_a on
the last a strands, viewed over NH_{n-a}; its differential is twisted by a
multiple of y_{n-a+1} + ... + y_n. F^(d) is induction along e_d on d new
strands, with the tensor product differential.
"""
import numpy as np

from .coeff import Laurent, ZERO, quantum_binom, quantum_int
from .combinatorics import TwoBlockShape, two_block_shapes
from .homs import hom_space, map_from_generator, module_generators
from .linalg import RowSpace, mm, rref, solve_left
from .modules import G_of, GradedModule, _regular, span_right_ideal, truncated_G
from .nilhecke import NHWord, build_rep, e_star, e_word, psi_ab_word, y_word


def E_shift(n_small, a, l):
    """Grading shift of E^(a) landing in NH_{n_small}-modules."""
    return -a * (l - 2 * n_small) + a * (a + 1) // 2


def F_shift(d):
    return -d * (d - 1) // 2


def E_twist(n_small, a, l):
    """E^(a) twists the differential by this multiple of the new-strand sum."""
    return 2 * n_small + a - l


# ------------------------------------------------------------------ restriction

def restrict(M, a=1, twist=True):
    """E^(a) M = M e* as a graded module over NH_{n-a}."""
    rep = M.rep
    n, l, p = rep.n, rep.l, rep.p
    if not 0 <= a <= n:
        raise ValueError(f"cannot restrict NH_{n} by {a} strands")
    small = build_rep(n - a, l, p)
    es = e_star(rep, n - a, a)
    proj = M.act_element(es)
    space = RowSpace(proj, p, M.dim)
    basis = space.rows
    degs = np.array([M.vector_degree(b) for b in basis], dtype=np.int64)
    act = {g: space.coords(mm(basis, M.act[g], p)) for g in small.generator_letters()}
    diff = None
    if M.diff is not None:
        img = mm(basis, M.diff, p)
        if twist and a:
            sigma = sum(M.act[("y", n - a + i)] for i in range(1, a + 1)) % p
            img = (img + E_twist(n - a, a, l) * mm(basis, sigma, p)) % p
        if space.contains(img):
            diff = space.coords(img)
    label = f"E^({a}){M.label}" if a != 1 else f"E{M.label}"
    out = GradedModule(small, degs, act, diff, M.shift + E_shift(n - a, a, l), label,
                       None, M, basis, "sub")
    return out


# -------------------------------------------------------------------- induction

def _new_strand_idempotent(big, n, d):
    return big.element_from_word(NHWord.of(e_word(d, n)))


def _right_ideal_generator(M):
    """Ambient generator rows if M is a right ideal of the regular module."""
    if M.kind != "sub" or M.parent is None or M.parent.kind != "root" or M.generators is None:
        return None
    return mm(M.generators, M.basis_in_parent, M.p)


def induct(M, d=1, method="auto"):
    """F^(d) M = M (x)_{NH_n} e_(1^n,d) NH_{n+d}."""
    gens = _right_ideal_generator(M)
    if method == "ideal" or (method == "auto" and gens is not None):
        if gens is None:
            raise ValueError("ideal induction needs a right ideal")
        return _induct_ideal(M, gens, d)
    return _induct_presented(M, d)


def _induct_ideal(M, gens, d):
    rep = M.rep
    big = build_rep(rep.n + d, rep.l, rep.p)
    emb = big.embedding_from(rep, 0)
    e = _new_strand_idempotent(big, rep.n, d)
    rows = []
    for g in gens:
        x = big.element(mm(g, emb, rep.p))
        rows.append((x * e).coords)
    label = f"F^({d}){M.label}" if d != 1 else f"F{M.label}"
    return _regular(big).submodule(np.array(rows), label, M.shift + F_shift(d))


def _induct_presented(M, d):
    """B^k / K.B with B = e NH_{n+d}, K the relations among the generators of M."""
    rep = M.rep
    p = rep.p
    big = build_rep(rep.n + d, rep.l, p)
    emb = big.embedding_from(rep, 0)
    e = _new_strand_idempotent(big, rep.n, d)
    B = span_right_ideal(big, e, 0, "eNH")
    gens = module_generators(M)
    k = len(gens)
    N = rep.dim
    acts = np.stack([M.act_word(w) for w in rep.basis_words])
    # row (i, j) is m_i . B_j
    Pi = np.concatenate([mm(g, acts, p) for g in gens]) if k else np.zeros((0, M.dim))
    # iota(B_j) e in big coordinates, then in B coordinates
    left_e = big.right_op_element(e.coords)
    emb_e = B.coords(mm(emb, left_e, p))
    relations = _left_kernel(Pi, p)
    dimB = B.dim
    total = k * dimB
    rel_rows = []
    for kap in relations:
        v = np.concatenate([mm(kap[i * N:(i + 1) * N], emb_e, p) for i in range(k)])
        if v.any():
            rel_rows.append(v)
    gen_deg = [int(M.vector_degree(g)) for g in gens]
    degrees = np.concatenate([B.degrees + gd for gd in gen_deg]) if k else np.zeros(0, dtype=np.int64)
    act = {g: np.kron(np.eye(k, dtype=np.int64), B.act[g]) for g in big.generator_letters()}
    diff = None
    if M.diff is not None and B.diff is not None:
        diff = np.kron(np.eye(k, dtype=np.int64), B.diff) % p
        # d(m_i) = sum_j m_j alpha_ij contributes iota(alpha_ij) b to slot j
        alpha = solve_left(Pi, np.stack([mm(g, M.diff, p) for g in gens]), p)
        ambient = B.ambient_rows()
        for i in range(k):
            for j in range(k):
                a = alpha[i, j * N:(j + 1) * N]
                if not a.any():
                    continue
                lop = big.left_op_element(mm(a, emb, p))
                block = B.coords(mm(ambient, lop, p))
                diff[i * dimB:(i + 1) * dimB, j * dimB:(j + 1) * dimB] = \
                    (diff[i * dimB:(i + 1) * dimB, j * dimB:(j + 1) * dimB] + block) % p
    free_gens = np.zeros((k, total), dtype=np.int64)
    e_in_B = B.coords(e.coords)
    for i in range(k):
        free_gens[i, i * dimB:(i + 1) * dimB] = e_in_B
    free = GradedModule(big, degrees, act, diff, M.shift + F_shift(d), "free", free_gens,
                        None, None, "root")
    sub = free.span(np.array(rel_rows)) if rel_rows else RowSpace(np.zeros((0, total)), p, total)
    label = f"F^({d}){M.label}" if d != 1 else f"F{M.label}"
    return free.quotient(sub, label)


def _left_kernel(a, p):
    from .linalg import left_nullspace
    return left_nullspace(a, p)


# ------------------------------------------------------------ Y modules

def Y_top(n, l, p):
    """Y(1^n 0^(l-n)) = G(1^n 0^(l-n)) over NH_n^l."""
    lam = tuple([1] * n + [0] * (l - n))
    return G_of(build_rep(n, l, p), lam)


def Y_via_truncation(n, r, s, shape, p):
    rep = build_rep(n, r + s, p)
    return truncated_G(rep, shape)


def Y_via_functors(n, r, s, shape, p, order="EF"):
    """E^(a) F^(d) Y(1^(a+b) 0^(c+d)), or F^(d) E^(a) of it when order == 'FE'."""
    a, b, c, d = shape
    l = r + s
    top = Y_top(a + b, l, p)
    if order == "EF":
        out = restrict(induct(top, d), a) if a else induct(top, d)
    else:
        out = induct(restrict(top, a), d) if d else restrict(top, a)
    out.label = f"Y{shape.label()}"
    return out


def Y_module(n, r, s, shape, p, route=None):
    """Y(lam) for lam = (0^a 1^b 0^c 1^d): e_lam G(lam) if b <= c, else E^(a) F^(d)."""
    shape = TwoBlockShape(*shape)
    if shape.n != n or shape.r != r or shape.s != s:
        raise ValueError("shape outside P_n^{r,s}")
    if route is None:
        route = "truncation" if shape.b <= shape.c else "functors"
    if route == "truncation":
        out = Y_via_truncation(n, r, s, shape, p)
    else:
        out = Y_via_functors(n, r, s, shape, p)
    out.label = f"Y{shape.label()}"
    return out


def Y_modules(n, r, s, p):
    return [Y_module(n, r, s, sh, p) for sh in two_block_shapes(n, r, s)]


# ------------------------------------------------------------ lemma checks

def comparison_map(shape, p):
    """Phi: e_lam G(lam) -> E^(a) Y(1^(a+b) 0^(c+d)) for lam = (0^a 1^b 0^c).

    Phi sends the generator e_b y^lam to y_1^(l-1) ... y_(a+b)^(l-a-b) psi_{b,a} e*,
    i.e. the generator of the top module with the a new strands shuffled
    to the left. Returns (source, target, matrix).
    """
    a, b, c, d = shape
    l = shape.r + shape.s
    if d:
        raise ValueError("the comparison map is defined for d = 0")
    small = build_rep(b, l, p)
    big = build_rep(a + b, l, p)
    src = truncated_G(small, shape)
    tgt = restrict(Y_top(a + b, l, p), a)
    top = y_word(tuple(l - 1 - i for i in range(a + b)))
    x = big.element_from_word(NHWord.of(top + psi_ab_word(b, a))) * e_star(big, b, a)
    image = solve_left(tgt.ambient_rows(), x.coords, p)
    return src, tgt, map_from_generator(src, tgt, image)


def comparison_check(shape, p):
    """Phi is a bijection, preserves total degree and commutes with the differentials."""
    try:
        src, tgt, F = comparison_map(shape, p)
    except ValueError:
        return {"bijective": False, "degree": False, "differential": False, "ok": False}
    bij = F.shape[0] == F.shape[1] and len(rref(F, p)[1]) == F.shape[0]
    deg_ok = all((tgt.degrees[np.flatnonzero(F[i])] + tgt.shift == src.degrees[i] + src.shift).all()
                 for i in range(src.dim))
    d_ok = src.diff is not None and tgt.diff is not None and \
        not ((mm(src.diff, F, p) - mm(F, tgt.diff, p)) % p).any()
    return {"bijective": bool(bij), "degree": bool(deg_ok), "differential": bool(d_ok),
            "ok": bool(bij and deg_ok and d_ok)}


def induction_lemma_check(shape, p):
    """F^(d) Y(0^a 1^b 0^(c+d)) and e_lam G(lam) coincide as right ideals with equal shift."""
    a, b, c, d = shape
    l = shape.r + shape.s
    small = build_rep(b, l, p)
    base = truncated_G(small, TwoBlockShape(a, b, c + d, 0))
    ind = induct(base, d)
    target = truncated_G(build_rep(b + d, l, p), shape)
    same = RowSpace(ind.ambient_rows(), p).sum(RowSpace(target.ambient_rows(), p)).dim == ind.dim == target.dim
    return bool(same and ind.shift == target.shift)


# ------------------------------------------------------------ decompositions

def _to_sympy(f, q):
    return sum(c * q ** e for e, c in f.items())


def _from_sympy(expr, q):
    import sympy

    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    den = sympy.Poly(den, q)
    if len(den.terms()) != 1:
        raise ValueError(f"multiplicity {expr} is not a Laurent polynomial")
    (dexp,), dc = den.terms()[0]
    out = {}
    for (e,), c in sympy.Poly(num, q).terms():
        c = sympy.Rational(c, dc)
        if c.q != 1:
            raise ValueError(f"multiplicity {expr} has non-integer coefficients")
        out[int(e) - int(dexp)] = int(c)
    return Laurent(out)


def hom_char(M, N):
    return hom_space(M, N).graded_dims()


def decompose(X, summands):
    """Multiplicities c_mu in N[q, q^-1] with X = sum c_mu Y_mu.

    Solves dim_q Hom(Y_nu, X) = sum_mu c_mu dim_q Hom(Y_nu, Y_mu); the Hom
    matrix between the indecomposables is invertible over Q(q). The answer
    is checked against the graded character of X.
    """
    import sympy

    q = sympy.Symbol("q")
    k = len(summands)
    if k == 0:
        if X.dim:
            raise ValueError("nonzero module with no summands to decompose into")
        return []
    C = sympy.Matrix(k, k, lambda i, j: _to_sympy(hom_char(summands[i], summands[j]), q))
    h = sympy.Matrix(k, 1, lambda i, _: _to_sympy(hom_char(summands[i], X), q))
    sol = C.LUsolve(h)
    mults = [_from_sympy(sol[i], q) for i in range(k)]
    if any(not m.is_nonnegative() for m in mults):
        raise ValueError(f"negative multiplicity in {[str(m) for m in mults]}")
    total = ZERO
    for m, Y in zip(mults, summands):
        total = total + m * Y.char()
    if total != X.char():
        raise ValueError("multiplicities do not reproduce the graded character")
    return mults


def apply_generator(Y, op):
    return restrict(Y, 1) if op == "E" else induct(Y, 1)


def ef_char_decomposition(n, r, s, shape, op, p):
    """E Y(lam) or F Y(lam) as {shape: multiplicity} over the indecomposables of the target weight."""
    if op not in ("E", "F"):
        raise ValueError("op must be 'E' or 'F'")
    m = n - 1 if op == "E" else n + 1
    if not 0 <= m <= r + s:
        return {}
    X = apply_generator(Y_module(n, r, s, shape, p), op)
    shapes = two_block_shapes(m, r, s)
    mults = decompose(X, [Y_module(m, r, s, sh, p) for sh in shapes])
    return {sh: c for sh, c in zip(shapes, mults) if not c.is_zero()}


def forced_terms(shape, op):
    """The neighbour whose coefficient is fixed: [a+1] for E (b > 0), [d+1] for F (c > 0)."""
    a, b, c, d = shape
    if op == "E" and b > 0:
        return {TwoBlockShape(a + 1, b - 1, c, d): quantum_int(a + 1)}
    if op == "F" and c > 0:
        return {TwoBlockShape(a, b, c - 1, d + 1): quantum_int(d + 1)}
    return {}


def single_term_expected(shape, op):
    """E with b > c and F with b < c have exactly one summand."""
    return (op == "E" and shape.b > shape.c) or (op == "F" and shape.b < shape.c)


def multiplicity_filtration_check(n, r, s, shape, p):
    """e_lam G(lam) for b >= c: multiplicities [b-c choose j] q^sigma_j on Y(0^(a-j) 1^(b+j) 0^(c+j) 1^(d-j)).

    Returns (ok, {j: sigma_j}).
    """
    shape = TwoBlockShape(*shape)
    a, b, c, d = shape
    if b < c:
        raise ValueError("the filtration statement needs b >= c")
    X = Y_via_truncation(n, r, s, shape, p)
    shapes = two_block_shapes(n, r, s)
    mults = dict(zip(shapes, decompose(X, [Y_module(n, r, s, sh, p) for sh in shapes])))
    expected = {TwoBlockShape(a - j, b + j, c + j, d - j): j for j in range(min(a, d) + 1)}
    sigmas = {}
    ok = True
    for sh, m in mults.items():
        if sh not in expected:
            ok = ok and m.is_zero()
            continue
        j = expected[sh]
        target = quantum_binom(b - c, j) if j <= b - c else ZERO
        if m.is_zero() or target.is_zero():
            ok = ok and m.is_zero() == target.is_zero()
            continue
        shift = m.min_degree() - target.min_degree()
        sigmas[j] = shift
        ok = ok and m == target.shift(shift)
    return ok, sigmas
