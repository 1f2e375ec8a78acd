"""The decategorified side: Weyl modules of quantum sl2 over Z[q, q^-1],
tensor products through the comultiplication, the canonical basis of
V_r (x) V_s and its comparison with the functor action on Y modules.

Matrices are nested lists of Laurent polynomials acting on column vectors:
column j is the image of basis vector j.
"""
from dataclasses import dataclass, field

from .coeff import Laurent, ONE, ZERO, op_reduce, quantum_binom, quantum_int
from .combinatorics import TwoBlockShape, two_block_shapes


def q_power(k):
    return Laurent({k: 1})


def zeros(m, n):
    return [[ZERO] * n for _ in range(m)]


def matmul(a, b):
    m, k, n = len(a), len(b), len(b[0]) if b else 0
    out = zeros(m, n)
    for i in range(m):
        for t in range(k):
            if a[i][t].is_zero():
                continue
            for j in range(n):
                if not b[t][j].is_zero():
                    out[i][j] = out[i][j] + a[i][t] * b[t][j]
    return out


def matsub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matvec(a, v):
    return [sum((a[i][j] * v[j] for j in range(len(v)) if not v[j].is_zero()), ZERO)
            for i in range(len(a))]


# ------------------------------------------------------------------ V_l

@dataclass
class WeylModule:
    l: int
    E: list
    F: list
    weights: list

    @property
    def dim(self):
        return self.l + 1

    def divided_E(self, t):
        """E^(t) v_i = [l-i+t choose t] v_(i-t)."""
        out = zeros(self.dim, self.dim)
        for i in range(t, self.dim):
            out[i - t][i] = quantum_binom(self.l - i + t, t)
        return out

    def divided_F(self, t):
        """F^(t) v_i = [i+t choose t] v_(i+t)."""
        out = zeros(self.dim, self.dim)
        for i in range(self.dim - t):
            out[i + t][i] = quantum_binom(i + t, t)
        return out

    def K_power(self, k):
        out = zeros(self.dim, self.dim)
        for i, m in enumerate(self.weights):
            out[i][i] = q_power(k * m)
        return out


def weyl_module(l):
    if l < 0:
        raise ValueError("l must be nonnegative")
    E, F = zeros(l + 1, l + 1), zeros(l + 1, l + 1)
    for i in range(l + 1):
        if i + 1 <= l:
            F[i + 1][i] = quantum_int(i + 1)
        if i >= 1:
            E[i - 1][i] = quantum_int(l - i + 1)
    return WeylModule(l, E, F, [l - 2 * i for i in range(l + 1)])


def signed_quantum_int(m):
    """[m] with [-m] = -[m], the value EF - FE takes on weight m."""
    return -quantum_int(m) if m < 0 else quantum_int(m)


def commutator_matrix(E, F):
    return matsub(matmul(E, F), matmul(F, E))


def commutator_check(V, weights=None, p=None):
    """(EF - FE) v = [weight] v on every basis vector; compared in O_p when p is given."""
    weights = V.weights if weights is None else weights
    C = commutator_matrix(V.E, V.F)
    red = (lambda f: op_reduce(f, p)) if p else (lambda f: f)
    for i in range(len(weights)):
        for j in range(len(weights)):
            want = signed_quantum_int(weights[i]) if i == j else ZERO
            if red(C[i][j]) != red(want):
                return False
    return True


# ------------------------------------------------------------ V_r (x) V_s

def kron(a, b):
    m, n = len(a), len(b)
    out = zeros(m * n, m * n)
    for i in range(m):
        for j in range(m):
            if a[i][j].is_zero():
                continue
            for k in range(n):
                for t in range(n):
                    if not b[k][t].is_zero():
                        out[i * n + k][j * n + t] = a[i][j] * b[k][t]
    return out


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = ONE
    return out


@dataclass
class WeylTensorModel:
    r: int
    s: int
    Vr: WeylModule
    Vs: WeylModule
    E: list = field(default=None)
    F: list = field(default=None)

    @property
    def dim(self):
        return (self.r + 1) * (self.s + 1)

    def index(self, i, j):
        return i * (self.s + 1) + j

    def weight(self, i, j):
        return self.r - 2 * i + self.s - 2 * j

    def divided_E(self, t):
        """sum_j q^(-j(t-j)) E^(t-j) K^-j (x) E^(j)."""
        out = zeros(self.dim, self.dim)
        for j in range(t + 1):
            left = matmul(self.Vr.divided_E(t - j), self.Vr.K_power(-j))
            term = kron(left, self.Vs.divided_E(j))
            c = q_power(-j * (t - j))
            out = [[x + c * y for x, y in zip(ro, rt)] for ro, rt in zip(out, term)]
        return out

    def divided_F(self, t):
        """sum_j q^(-j(t-j)) F^(t-j) (x) F^(j) K^(t-j)."""
        out = zeros(self.dim, self.dim)
        for j in range(t + 1):
            right = matmul(self.Vs.divided_F(j), self.Vs.K_power(t - j))
            term = kron(self.Vr.divided_F(t - j), right)
            c = q_power(-j * (t - j))
            out = [[x + c * y for x, y in zip(ro, rt)] for ro, rt in zip(out, term)]
        return out

    def pure(self, i, j):
        v = [ZERO] * self.dim
        v[self.index(i, j)] = ONE
        return v

    def shapes(self):
        return [(b, d) for b in range(self.r + 1) for d in range(self.s + 1)]


def tensor_model(r, s):
    """V_r (x) V_s with E = K^-1 (x) E + E (x) 1 and F = 1 (x) F + F (x) K."""
    Vr, Vs = weyl_module(r), weyl_module(s)
    T = WeylTensorModel(r, s, Vr, Vs)
    T.E = [[x + y for x, y in zip(ra, rb)]
           for ra, rb in zip(kron(Vr.K_power(-1), Vs.E), kron(Vr.E, identity(s + 1)))]
    T.F = [[x + y for x, y in zip(ra, rb)]
           for ra, rb in zip(kron(identity(r + 1), Vs.F), kron(Vr.F, Vs.K_power(1)))]
    return T


def tensor_commutator_check(T, p=None):
    weights = [T.weight(i, j) for i in range(T.r + 1) for j in range(T.s + 1)]
    return commutator_check(T, weights, p)


def coproduct_check(T):
    """The generator formula and the divided-power formula at t = 1 agree."""
    return T.divided_E(1) == T.E and T.divided_F(1) == T.F


# ------------------------------------------------------------ canonical basis

def canonical_closed(T, b, d, branch=None):
    """v_b <> v_d from the closed sums; branch 'low' needs b <= c, 'high' needs b >= c.

    Terms whose index leaves V_r or V_s vanish and are skipped.
    """
    r, s = T.r, T.s
    a, c = r - b, s - d
    if branch is None:
        branch = "low" if b <= c else "high"
    v = [ZERO] * T.dim
    if branch == "low":
        if b > c:
            raise ValueError("low branch needs b <= c")
        for j in range(min(d, r - b) + 1):
            v[T.index(b + j, d - j)] = q_power(j * (j + c)) * quantum_binom(b + j, j)
    else:
        if b < c:
            raise ValueError("high branch needs b >= c")
        for j in range(min(a, d) + 1):
            v[T.index(b + j, d - j)] = q_power(j * (j + b)) * quantum_binom(c + j, j)
    return v


def canonical_via_divided_powers(T, b, d, order=None):
    """F^(d) E^(a) (v_r (x) v_0) when b <= c, E^(a) F^(d) (v_r (x) v_0) when b >= c."""
    a, c = T.r - b, T.s - d
    if order is None:
        order = "FE" if b <= c else "EF"
    v = T.pure(T.r, 0)
    if order == "FE":
        v = matvec(T.divided_F(d), matvec(T.divided_E(a), v))
    else:
        v = matvec(T.divided_E(a), matvec(T.divided_F(d), v))
    return v


def canonical_basis(T):
    return {(b, d): canonical_closed(T, b, d) for b, d in T.shapes()}


def transition_matrix(T):
    """Columns are the canonical vectors in the standard basis, ordered by (b, d)."""
    cols = [canonical_closed(T, b, d) for b, d in T.shapes()]
    return [[cols[j][i] for j in range(len(cols))] for i in range(T.dim)]


def canonical_coordinates(T, v):
    """Solve v = sum x_(b,d) v_b<>v_d; the closed forms are unitriangular (b increasing)."""
    v = list(v)
    out = {}
    for b in range(T.r + 1):
        for d in range(T.s + 1):
            x = v[T.index(b, d)]
            if x.is_zero():
                continue
            out[(b, d)] = x
            col = canonical_closed(T, b, d)
            v = [vi - x * ci for vi, ci in zip(v, col)]
    if any(not x.is_zero() for x in v):
        raise ArithmeticError("vector outside the canonical span")
    return out


def canonical_action(T, op):
    """{(b,d): {(b',d'): coefficient}} for op in {'E','F'} on the canonical basis."""
    M = T.E if op == "E" else T.F
    return {(b, d): canonical_coordinates(T, matvec(M, canonical_closed(T, b, d)))
            for b, d in T.shapes()}


# ------------------------------------------------------------ comparison

def shape_of(r, s, b, d):
    return TwoBlockShape(r - b, b, s - d, d)


def _block_shift(cat, alg, cols, rows):
    """The single power q^k with cat = q^k alg on the block, or None."""
    k = None
    for col in cols:
        for row in rows:
            x, y = cat.get(col, {}).get(row, ZERO), alg.get(col, {}).get(row, ZERO)
            if x.is_zero() != y.is_zero():
                return None, (col, row)
            if x.is_zero():
                continue
            shift = x.min_degree() - y.min_degree()
            if k is None:
                k = shift
            if x != y.shift(k):
                return None, (col, row)
    return (0 if k is None else k), None


def decat_compare(n, r, s, p):
    """Compare E and F on {Y(lam)} in weight n with E and F on the canonical basis.

    Returns a report per operator: the normalising power of q, whether the
    blocks agree after it, and whether the O_p reductions agree.
    """
    from .catsl2 import ef_char_decomposition

    T = tensor_model(r, s)
    report = {"n": n, "r": r, "s": s, "p": p}
    src = two_block_shapes(n, r, s)
    for op, m in (("E", n - 1), ("F", n + 1)):
        alg = canonical_action(T, op)
        tgt = two_block_shapes(m, r, s) if 0 <= m <= r + s else []
        cat = {sh: ef_char_decomposition(n, r, s, sh, op, p) for sh in src}
        alg_sh = {sh: {shape_of(r, s, *k): v for k, v in alg[(sh.b, sh.d)].items()} for sh in src}
        k, bad = _block_shift(cat, alg_sh, src, tgt)
        op_ok = bad is None and all(
            op_reduce(cat[c].get(t, ZERO), p) == op_reduce(alg_sh[c].get(t, ZERO).shift(k), p)
            for c in src for t in tgt)
        report[op] = {"shift": k, "match": bad is None, "op_match": bool(op_ok),
                      "mismatch": None if bad is None else [list(bad[0]), list(bad[1])],
                      "categorical": {_key(c): {_key(t): cat[c][t].to_json() for t in cat[c]} for c in src},
                      "canonical": {_key(c): {_key(t): alg_sh[c][t].to_json() for t in alg_sh[c]}
                                    for c in src}}
    report["ok"] = bool(report["E"]["match"] and report["F"]["match"]
                        and report["E"]["op_match"] and report["F"]["op_match"])
    return report


def _key(shape):
    return ",".join(str(x) for x in shape)


def normalization_consistent(reports):
    """Weight-space shifts t_n exist with E-shift(n) = t_(n-1) - t_n = -F-shift(n-1)."""
    by_n = {rep["n"]: rep for rep in reports}
    for n, rep in by_n.items():
        prev = by_n.get(n - 1)
        if prev is None or rep["E"]["shift"] is None or prev["F"]["shift"] is None:
            continue
        if rep["E"]["shift"] != -prev["F"]["shift"]:
            return False
    return True
