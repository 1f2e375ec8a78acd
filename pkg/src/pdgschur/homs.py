"""Graded Hom spaces, endomorphism algebras with their differential, the
quiver Schur algebras and the checks built on them.

A homomorphism M -> N is stored as a dim M x dim N matrix F acting on row
vectors, x -> x @ F. Composition g o f is F_f @ F_g and the differential of
a map is F D_N - D_M F.
"""
from itertools import permutations, product

import numpy as np

from .coeff import Laurent, ZERO
from .combinatorics import (dominance_lt, enumerate_multipartitions,
                            tab_lambda, two_block_shapes)
from .linalg import RowSpace, inverse, mm, nullspace, pivot_solver, rank, rref
from .modules import G_of, GradedModule, truncated_G
from .nilhecke import build_rep


# ------------------------------------------------------------------ Hom spaces

class HomSpace:
    def __init__(self, source, target, maps, degrees):
        self.source = source
        self.target = target
        self.maps = maps
        self.degrees = degrees

    @property
    def dim(self):
        return len(self.maps)

    def graded_dims(self):
        return Laurent([(d, 1) for d in self.degrees])

    def __repr__(self):
        return f"Hom({self.source.label}, {self.target.label}) = {self.graded_dims()}"


def module_generators(M):
    """Homogeneous generating rows: the recorded generators, completed greedily."""
    p = M.p
    gens = [] if M.generators is None else [g for g in np.asarray(M.generators) if g.any()]
    space = M.span(np.array(gens)) if gens else RowSpace(np.zeros((0, M.dim)), p, M.dim)
    for k in np.argsort(M.degrees, kind="stable"):
        if space.dim == M.dim:
            break
        e = np.zeros(M.dim, dtype=np.int64)
        e[k] = 1
        if not space.contains(e):
            gens.append(e)
            space = M.span(np.array(gens))
    return gens


def spin(M, gens):
    """Basis of M reached from the generators by right multiplication.

    Returns node rows X, the generator index of each node and the letter
    path from it.
    """
    p = M.p
    space = RowSpace(np.zeros((0, M.dim)), p, M.dim)
    nodes, roots, paths = [], [], []
    queue = []
    for r, g in enumerate(gens):
        if space.add(g):
            nodes.append(g % p)
            roots.append(r)
            paths.append(())
            queue.append(len(nodes) - 1)
    letters = list(M.act)
    while queue:
        i = queue.pop(0)
        for g in letters:
            v = mm(nodes[i], M.act[g], p)
            if space.add(v):
                nodes.append(v)
                roots.append(roots[i])
                paths.append(paths[i] + (g,))
                queue.append(len(nodes) - 1)
    X = np.array(nodes, dtype=np.int64).reshape(-1, M.dim)
    if X.shape[0] != M.dim:
        raise AssertionError("generators do not span the module")
    return X, roots, paths


def hom_space(M, N, degrees=None):
    """All graded homomorphisms M -> N, by solving for the generator images."""
    if M.rep.p != N.rep.p or set(M.act) != set(N.act):
        raise ValueError("modules over different algebras")
    p = M.p
    if M.dim == 0 or N.dim == 0:
        return HomSpace(M, N, [], [])
    gens = module_generators(M)
    X, roots, paths = spin(M, gens)
    Xinv = inverse(X, p)
    # transport matrices: T(node i) = T(gen root(i)) @ W[i]
    W = []
    cache = {(): np.eye(N.dim, dtype=np.int64)}
    for path in paths:
        if path not in cache:
            cache[path] = mm(cache[path[:-1]], N.act[path[-1]], p)
        W.append(cache[path])
    W = np.stack(W)
    # relation coefficients: X A_g = C_g X
    C = {g: mm(mm(X, M.act[g], p), Xinv, p) for g in M.act}
    gen_deg = [M.vector_degree(g) for g in gens]
    ks = sorted({int(dn) + N.shift - gd - M.shift for gd in gen_deg for dn in N.degrees})
    if degrees is not None:
        ks = [k for k in ks if k in set(degrees)]
    maps, degs = [], []
    for k in ks:
        var = [(r, s) for r, gd in enumerate(gen_deg)
               for s in np.flatnonzero(N.degrees == gd + M.shift + k - N.shift)]
        if not var:
            continue
        phi = np.zeros((len(var), M.dim, N.dim), dtype=np.int64)
        for v, (r, s) in enumerate(var):
            rows = [i for i, rt in enumerate(roots) if rt == r]
            phi[v, rows, :] = W[rows, s, :]
        cons = []
        for g in M.act:
            lhs = mm(phi, N.act[g], p)
            rhs = np.einsum("ij,vjk->vik", C[g], phi) % p
            cons.append((lhs - rhs).reshape(len(var), -1))
        sol = nullspace(np.concatenate(cons, axis=1).T, p) if cons else np.eye(len(var), dtype=np.int64)
        for u in sol:
            Fn = np.tensordot(u, phi, axes=1) % p
            maps.append(mm(Xinv, Fn, p))
            degs.append(k)
    return HomSpace(M, N, maps, degs)


def map_from_generator(M, N, image):
    """The module map M -> N sending M's first generator to image (N coordinates).

    M must be cyclic. Raises ValueError when the assignment does not extend
    to a homomorphism.
    """
    p = M.p
    X, _, paths = spin(M, [np.asarray(M.generators)[0]])
    imgs = np.stack([mm(image, N.act_word(path), p) for path in paths])
    F = mm(inverse(X, p), imgs, p)
    for g in M.act:
        if ((mm(M.act[g], F, p) - mm(F, N.act[g], p)) % p).any():
            raise ValueError("generator image does not define a module map")
    return F


def hom_from_cyclic(g, N):
    """Hom(g NH, N) as {n in N : n a = 0 whenever g a = 0}, for a right ideal g NH.

    Returns the graded dimension; used to cross-check hom_space.
    """
    rep = N.rep
    p = rep.p
    ann = nullspace(rep.left_op_element(g.coords).T, p)
    acts = np.stack([N.act_word(w) for w in rep.basis_words])
    if ann.shape[0] == 0:
        cond = np.zeros((N.dim, 0), dtype=np.int64)
    else:
        # n . a = sum_j a_j n @ act(B_j)
        ops = np.tensordot(ann, acts, axes=(1, 0)) % p
        cond = np.concatenate(list(ops), axis=1)
    sol = nullspace(cond.T, p)
    gdeg = g.degree()
    return Laurent([(int(N.vector_degree(v)) + N.shift - gdeg, 1) for v in _homogeneous_basis(sol, N)])


def _homogeneous_basis(rows, N):
    out = []
    for d in sorted(set(N.degrees.tolist())):
        mask = N.degrees == d
        part = np.where(mask, rows, 0)
        part = part[part.any(axis=1)]
        if part.shape[0]:
            out.extend(rref(part, N.p)[0])
    return out


def intertwiner_dims(M, N):
    """Graded dimension of Hom(M, N) by solving A^M_g F = F A^N_g directly."""
    p = M.p
    out = ZERO
    ks = sorted({int(dn) + N.shift - int(dm) - M.shift for dm in M.degrees for dn in N.degrees})
    for k in ks:
        pairs = [(i, j) for i in range(M.dim) for j in range(N.dim)
                 if N.degrees[j] + N.shift == M.degrees[i] + M.shift + k]
        phi = np.zeros((len(pairs), M.dim, N.dim), dtype=np.int64)
        for v, (i, j) in enumerate(pairs):
            phi[v, i, j] = 1
        cons = [(np.einsum("ij,vjk->vik", M.act[g], phi) - mm(phi, N.act[g], p)).reshape(len(pairs), -1) % p
                for g in M.act]
        dim = len(pairs) - rank(np.concatenate(cons, axis=1), p) if cons else len(pairs)
        if dim:
            out = out + Laurent({k: dim})
    return out


# ------------------------------------------------------------ graded algebras

class GradedAlgebra:
    """END(M_1 + ... + M_k) with basis maps, structure constants and differential."""

    def __init__(self, summands, p, label=""):
        self.summands = summands
        self.p = p
        self.label = label
        self.blocks = {}
        self.basis = []
        for i, M in enumerate(summands):
            for j, N in enumerate(summands):
                H = hom_space(M, N)
                start = len(self.basis)
                for F, d in zip(H.maps, H.degrees):
                    self.basis.append((i, j, d, F))
                self.blocks[(i, j)] = list(range(start, len(self.basis)))
        self.dim = len(self.basis)
        self.degrees = np.array([b[2] for b in self.basis], dtype=np.int64)
        self._solvers = {}
        self._struct = None
        self._D = None

    def block_dims(self):
        return {key: Laurent([(self.basis[a][2], 1) for a in idx]) for key, idx in self.blocks.items()}

    def graded_dim(self):
        return Laurent([(int(d), 1) for d in self.degrees])

    def _solver(self, i, j):
        if (i, j) not in self._solvers:
            idx = self.blocks[(i, j)]
            if idx:
                flat = np.stack([self.basis[a][3].reshape(-1) for a in idx])
                self._solvers[(i, j)] = (idx, RowSpace(flat, self.p), pivot_solver(flat, self.p))
            else:
                self._solvers[(i, j)] = (idx, None, None)
        return self._solvers[(i, j)]

    def coords(self, F, i, j):
        """Coordinates of a map M_i -> M_j (raises if it is not a homomorphism)."""
        idx, space, solver = self._solver(i, j)
        out = np.zeros(self.dim, dtype=np.int64)
        flat = np.asarray(F).reshape(-1) % self.p
        if not idx:
            if flat.any():
                raise ValueError("nonzero map in an empty block")
            return out
        if not space.contains(flat):
            raise ValueError("matrix is not a module map")
        piv, Q = solver
        out[idx] = mm(flat[piv], Q, self.p)
        return out

    def element_matrix(self, x, i, j):
        idx = self.blocks[(i, j)]
        M, N = self.summands[i], self.summands[j]
        F = np.zeros((M.dim, N.dim), dtype=np.int64)
        for a in idx:
            if x[a]:
                F = (F + int(x[a]) * self.basis[a][3]) % self.p
        return F

    @property
    def struct(self):
        """T[a, b] = coordinates of basis_a o basis_b."""
        if self._struct is None:
            T = np.zeros((self.dim, self.dim, self.dim), dtype=np.int64)
            k = len(self.summands)
            for i in range(k):
                for j in range(k):
                    for l in range(k):
                        B_idx = self.blocks[(i, j)]
                        A_idx = self.blocks[(j, l)]
                        if not A_idx or not B_idx:
                            continue
                        FB = np.stack([self.basis[b][3] for b in B_idx])
                        FA = np.stack([self.basis[a][3] for a in A_idx])
                        prod = np.einsum("bxy,ayz->abxz", FB.astype(np.int64), FA.astype(np.int64)) % self.p
                        idx, space, solver = self._solver(i, l)
                        flat = prod.reshape(len(A_idx) * len(B_idx), -1)
                        if not idx:
                            assert not flat.any()
                            continue
                        piv, Q = solver
                        c = mm(flat[:, piv], Q, self.p).reshape(len(A_idx), len(B_idx), -1)
                        for ai, a in enumerate(A_idx):
                            for bi, b in enumerate(B_idx):
                                T[a, b, idx] = c[ai, bi]
            self._struct = T
        return self._struct

    def mult(self, x, y):
        T = self.struct
        return np.einsum("a,b,abc->c", x % self.p, y % self.p, T) % self.p

    def one(self):
        out = np.zeros(self.dim, dtype=np.int64)
        for i in range(len(self.summands)):
            out = (out + self.idempotent(i)) % self.p
        return out

    def idempotent(self, i):
        M = self.summands[i]
        return self.coords(np.eye(M.dim, dtype=np.int64), i, i)

    @property
    def D(self):
        if self._D is None:
            rows = []
            for i, j, d, F in self.basis:
                M, N = self.summands[i], self.summands[j]
                if M.diff is None or N.diff is None:
                    raise ValueError("summand without a differential")
                dF = (mm(F, N.diff, self.p) - mm(M.diff, F, self.p)) % self.p
                rows.append(self.coords(dF, i, j))
            self._D = np.array(rows, dtype=np.int64).reshape(self.dim, self.dim)
        return self._D

    def check_associative(self):
        T = self.struct
        d, p = self.dim, self.p
        if d == 0:
            return True
        flat = T.reshape(d, d * d)
        for a in range(d):
            left = mm(T[a], flat, p).reshape(d, d, d)          # (a b) c
            right = mm(T.reshape(d * d, d), T[a], p).reshape(d, d, d)  # a (b c)
            if not np.array_equal(left, right):
                return False
        return True

    def check_leibniz(self, pairs=None, seed=0):
        rng = np.random.default_rng(seed)
        d, p = self.dim, self.p
        if d == 0:
            return True
        if pairs is None:
            pairs = 200
        for _ in range(pairs):
            x = rng.integers(0, p, d)
            y = rng.integers(0, p, d)
            lhs = mm(self.mult(x, y), self.D, p)
            rhs = (self.mult(mm(x, self.D, p), y) + self.mult(x, mm(y, self.D, p))) % p
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def dp_zero(self):
        if self.dim == 0:
            return True
        m = np.eye(self.dim, dtype=np.int64)
        for _ in range(self.p):
            m = mm(m, self.D, self.p)
        return not m.any()

    def is_commutative(self):
        T = self.struct
        return np.array_equal(T, T.transpose(1, 0, 2))

    def summary(self):
        blocks = []
        for (i, j), idx in sorted(self.blocks.items()):
            blocks.append({"source": self.summands[i].label, "target": self.summands[j].label,
                           "graded_dims": Laurent([(self.basis[a][2], 1) for a in idx]).to_json()})
        return blocks


GradedAlgebraPresentation = GradedAlgebra


def end_algebra(summands, label=""):
    if not summands:
        return GradedAlgebra([], 2, label)
    p = summands[0].p
    for M in summands:
        if M.diff is None:
            raise ValueError(f"{M.label} is not stable under the differential")
    return GradedAlgebra(summands, p, label)


def schur_algebra(n, l, p):
    rep = build_rep(n, l, p)
    mods = [G_of(rep, lam) for lam in enumerate_multipartitions(n, l)]
    return end_algebra(mods, f"S_{n}({l})")


def two_tensor_modules(n, r, s, p):
    rep = build_rep(n, r + s, p)
    return [truncated_G(rep, sh) for sh in two_block_shapes(n, r, s)]


def two_tensor_schur(n, r, s, p):
    return end_algebra(two_tensor_modules(n, r, s, p), f"S_{n}({r},{s})")


def cellular_schur_count(n, l):
    """Number of Psi_th^{mu nu}: sum over lam of (sum over mu of |Tab^mu(lam)|)^2."""
    parts = enumerate_multipartitions(n, l)
    return sum(sum(len(tab_lambda(mu, lam)) for mu in parts) ** 2 for lam in parts)


def indecomposability_certificate(module_or_algebra):
    """End is supported in degrees >= 0 with a one-dimensional degree-0 part."""
    E = module_or_algebra if isinstance(module_or_algebra, GradedAlgebra) \
        else GradedAlgebra([module_or_algebra], module_or_algebra.p)
    if E.dim == 0:
        return False
    return bool((E.degrees >= 0).all() and int((E.degrees == 0).sum()) == 1)


def direct_sum(modules):
    """Ungraded-shift direct sum with block-diagonal action and differential."""
    dims = [M.dim for M in modules]
    total = sum(dims)
    act = {}
    for g in modules[0].act:
        m = np.zeros((total, total), dtype=np.int64)
        off = 0
        for M in modules:
            m[off:off + M.dim, off:off + M.dim] = M.act[g]
            off += M.dim
        act[g] = m
    diff = None
    if all(M.diff is not None for M in modules):
        diff = np.zeros((total, total), dtype=np.int64)
        off = 0
        for M in modules:
            diff[off:off + M.dim, off:off + M.dim] = M.diff
            off += M.dim
    degrees = np.concatenate([M.degrees + M.shift for M in modules]) if modules else []
    return GradedModule(modules[0].rep, degrees, act, diff, 0, "+".join(M.label for M in modules))


def double_centralizer_check(n, r, s, p):
    """END over S_n(r,s) of the sum of the e_lam G(lam) is NH_n^l acting on the right.

    Returns (ok, dim of the centralizer, dim NH, rank of the action map).
    """
    mods = two_tensor_modules(n, r, s, p)
    rep = mods[0].rep
    S = end_algebra(mods)
    M = direct_sum(mods)
    m = M.dim
    offsets = np.cumsum([0] + [X.dim for X in mods])
    # S acts on M through block matrices
    fs = []
    for i, j, d, F in S.basis:
        big = np.zeros((m, m), dtype=np.int64)
        big[offsets[i]:offsets[i + 1], offsets[j]:offsets[j + 1]] = F
        fs.append(big)
    # T commutes with every f:  T F - F T = 0, unknown T flattened row-major
    eye = np.eye(m, dtype=np.int64)
    blocks = []
    for F in fs:
        # vec(T F) = (I kron F^T) vec(T); vec(F T) = (F kron I) vec(T)
        blocks.append((np.kron(eye, F.T) - np.kron(F, eye)) % p)
    cons = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, m * m), dtype=np.int64)
    cent_dim = m * m - rank(cons, p) if cons.shape[0] else m * m
    acts = np.stack([M.act_word(w).reshape(-1) for w in rep.basis_words])
    act_rank = rank(acts, p)
    inside = (not blocks) or not (mm(acts, cons.T, p)).any()
    ok = inside and cent_dim == rep.dim and act_rank == rep.dim
    return ok, cent_dim, rep.dim, act_rank


def basic_two_tensor(n, r, s, p):
    """S_n^b(r,s) = END(sum of Y(lam)) with the normalised grading."""
    from .catsl2 import Y_module

    shapes = two_block_shapes(n, r, s)
    mods = [Y_module(n, r, s, sh, p) for sh in shapes]
    A = end_algebra(mods, f"S^b_{n}({r},{s})")
    A.shapes = shapes
    return A


def positivity_report(A):
    """Degrees >= 0, degree-0 part spanned by the summand identities, d(xi) = 0."""
    k = len(A.summands)
    nonneg = bool((A.degrees >= 0).all())
    zero_deg = np.flatnonzero(A.degrees == 0)
    idems = np.stack([A.idempotent(i) for i in range(k)]) if k else np.zeros((0, A.dim))
    spanned = len(zero_deg) == k and rank(idems, A.p) == k and \
        RowSpace(idems, A.p).contains(np.eye(A.dim, dtype=np.int64)[zero_deg]) if k else True
    dxi = all(not mm(x, A.D, A.p).any() for x in idems)
    return {"nonnegative": nonneg, "degree_zero_is_idempotents": bool(spanned),
            "idempotents_closed": bool(dxi), "ok": bool(nonneg and spanned and dxi)}


# ----------------------------------------------------- stratified structure

class StandardModule:
    def __init__(self, algebra, index, P_rows, sub, label):
        self.algebra = algebra
        self.index = index
        self.P = P_rows
        self.sub = sub
        self.label = label

    @property
    def dim(self):
        return self.P.dim - self.sub.dim

    def graded_dims(self):
        A = self.algebra
        out = ZERO
        for d in sorted(set(A.degrees.tolist())):
            mask = (A.degrees == d)
            pd = _restricted_dim(self.P, mask, A.p)
            sd = _restricted_dim(self.sub, mask, A.p)
            if pd - sd:
                out = out + Laurent({d: pd - sd})
        return out


def _restricted_dim(space, mask, p):
    if space.dim == 0:
        return 0
    rows = np.where(mask, space.rows, 0)
    return rank(rows, p)


def _factoring_through(A, src, targets):
    """Span of all g o f with f: src -> t for t in targets, g any map out of t."""
    rows = []
    for t in targets:
        for f in A.blocks[(src, t)]:
            ef = np.zeros(A.dim, dtype=np.int64)
            ef[f] = 1
            for (i, j), idx in A.blocks.items():
                if i != t:
                    continue
                for g in idx:
                    eg = np.zeros(A.dim, dtype=np.int64)
                    eg[g] = 1
                    rows.append(A.mult(eg, ef))
    if not rows:
        return RowSpace(np.zeros((0, A.dim)), A.p, A.dim)
    return RowSpace(np.array(rows), A.p, A.dim)


def projective_rows(A, src):
    idx = [a for (i, j), ids in A.blocks.items() if i == src for a in ids]
    rows = np.eye(A.dim, dtype=np.int64)[idx] if idx else np.zeros((0, A.dim), dtype=np.int64)
    return RowSpace(rows, A.p, A.dim)


def standard_module(A, index):
    """Delta(lam) = P(lam) / maps factoring through Y(gamma), gamma > lam."""
    shapes = A.shapes
    lam = shapes[index].multipartition()
    higher = [k for k, sh in enumerate(shapes) if dominance_lt(lam, sh.multipartition())]
    P = projective_rows(A, index)
    sub = _factoring_through(A, index, higher)
    return StandardModule(A, index, P, sub, f"Delta{shapes[index].label()}")


def stratification_filtration(A, index):
    """Chain P^{>=gamma}(lam) for gamma in the fixed total order, with ∂-stability."""
    shapes = A.shapes
    chain = []
    P = projective_rows(A, index)
    for k, sh in enumerate(shapes):
        gam = sh.multipartition()
        geq = [m for m, s2 in enumerate(shapes)
               if s2.multipartition() == gam or dominance_lt(gam, s2.multipartition())]
        sp = _factoring_through(A, index, geq)
        stable = sp.dim == 0 or sp.contains(mm(sp.rows, A.D, A.p))
        chain.append({"gamma": sh, "dim": sp.dim, "stable": bool(stable)})
    return P, chain


# ------------------------------------------------------------ A_l^! quiver

class PathAlgebra:
    """A_l^!: paths on 1 - 2 - ... - l modulo (i|i-1|i) = (i|i+1|i), (1|2|1) = 0.

    Graded by path length; the basis is computed degree by degree.
    """

    def __init__(self, l, p, vertices=None):
        self.l, self.p = l, p
        self.vertices = list(range(1, l + 1)) if vertices is None else list(vertices)
        self._build()

    def _paths(self, length):
        if length == 0:
            return [(v,) for v in range(1, self.l + 1)]
        out = []
        for path in self._paths(length - 1):
            for w in (path[-1] - 1, path[-1] + 1):
                if 1 <= w <= self.l:
                    out.append(path + (w,))
        return out

    def _relations(self):
        rels = [{(1, 2, 1): 1}]
        for i in range(2, self.l):
            rels.append({(i, i - 1, i): 1, (i, i + 1, i): -1})
        return rels

    def _build(self):
        p = self.p
        self.layers = []
        length = 0
        while True:
            paths = self._paths(length)
            index = {pt: k for k, pt in enumerate(paths)}
            rows = []
            if length >= 2:
                for rel in self._relations():
                    for pre in range(length - 1):
                        for lead in self._paths(pre):
                            for tail in self._paths(length - 2 - pre):
                                row = np.zeros(len(paths), dtype=np.int64)
                                for rp, c in rel.items():
                                    if lead[-1] != rp[0] or rp[-1] != tail[0]:
                                        break
                                    row[index[lead + rp[1:] + tail[1:]]] += c
                                else:
                                    rows.append(row % p)
            ideal = RowSpace(np.array(rows), p, len(paths)) if rows else \
                RowSpace(np.zeros((0, len(paths))), p, len(paths))
            keep = [k for k in range(len(paths)) if k not in set(ideal.pivots)]
            keep = [k for k in keep if paths[k][0] in self.vertices and paths[k][-1] in self.vertices]
            self.layers.append((paths, index, ideal, keep))
            if len(paths) == len(ideal.pivots):
                break
            length += 1
        self.dim = sum(len(k) for *_, k in self.layers)

    def graded_dim(self):
        return Laurent([(d, len(k)) for d, (*_, k) in enumerate(self.layers) if k])

    def path_coords(self, path):
        """Normal form of a path (tuple of vertices) as {(length, basis idx): coeff}."""
        length = len(path) - 1
        if length >= len(self.layers):
            return {}
        paths, index, ideal, keep = self.layers[length]
        v = np.zeros(len(paths), dtype=np.int64)
        v[index[tuple(path)]] = 1
        red = ideal.reduce(v)
        return {(length, k): int(red[k]) for k in range(len(paths)) if red[k]}


def path_algebra_realization(S, l):
    """Check that S_1(l) realises A_l^!: arrows as maps, relations, ∂, dimension.

    Vertex i is G(0^(i-1) 1 0^(l-i)), i.e. the i-th summand counted from the
    smallest multipartition.
    """
    p = S.p
    parts = enumerate_multipartitions(1, l)
    vert = {i: parts.index(tuple([0] * (i - 1) + [1] + [0] * (l - i))) for i in range(1, l + 1)}
    arrow = {}
    for i in range(1, l):
        # (i+1|i): y^(l-i) -> y^(l-i) from vertex i to vertex i+1
        arrow[(i + 1, i)] = _map_by_generator(S, vert[i], vert[i + 1], l - i, l - i)
        # (i|i+1): y^(l-i-1) -> y^(l-i) from vertex i+1 to vertex i
        arrow[(i, i + 1)] = _map_by_generator(S, vert[i + 1], vert[i], l - i - 1, l - i)

    def path(*vs):
        x = arrow[(vs[0], vs[1])]
        for a, b in zip(vs[1:], vs[2:]):
            x = S.mult(x, arrow[(a, b)])
        return x

    checks = {}
    checks["relation_121"] = not path(1, 2, 1).any() if l >= 2 else True
    checks["relation_loops"] = all(np.array_equal(path(i, i - 1, i), path(i, i + 1, i)) for i in range(2, l))
    checks["d_up"] = all(np.array_equal(mm(arrow[(i, i + 1)], S.D, p), path(i, i + 1, i, i + 1))
                         for i in range(1, l))
    checks["d_down"] = all(not mm(arrow[(i, i - 1)], S.D, p).any() for i in range(2, l + 1))
    # arrows and idempotents generate S
    gens = [S.idempotent(k) for k in range(len(S.summands))] + list(arrow.values())
    span = RowSpace(np.array(gens), p, S.dim)
    while True:
        new = [S.mult(a, b) for a in span.rows for b in gens]
        grown = RowSpace(np.concatenate([span.rows, np.array(new)]), p, S.dim)
        if grown.dim == span.dim:
            break
        span = grown
    checks["generated"] = span.dim == S.dim
    A = PathAlgebra(l, p)
    checks["dimension"] = A.dim == S.dim
    checks["ok"] = all(checks.values())
    return checks


def _map_by_generator(S, i, j, src_exp, tgt_exp):
    """Coordinates of the map y^src_exp -> y^tgt_exp between n = 1 summands."""
    M, N = S.summands[i], S.summands[j]
    rep = M.rep
    power = lambda k: rep.element_from_word((("y", 1),) * k).coords
    ks = range(rep.l - src_exp)
    A = np.stack([M.coords(power(src_exp + k)) for k in ks])
    B = np.stack([N.coords(power(tgt_exp + k)) for k in ks])
    return S.coords(mm(inverse(A, S.p), B, S.p), i, j)


# ------------------------------------------------- idempotent truncations

class PathTruncation:
    """e A_l^! e for e the sum of the chosen vertex idempotents.

    Basis elements are normal-form paths; a path (u|...|v) lives in block
    (u, v) and products concatenate.
    """

    def __init__(self, A):
        self.A, self.p = A, A.p
        self.basis = [(d, k) for d, (*_, keep) in enumerate(A.layers) for k in keep]
        self.pos = {b: i for i, b in enumerate(self.basis)}
        self.dim = len(self.basis)

    def path(self, i):
        d, k = self.basis[i]
        return self.A.layers[d][0][k]

    def degree(self, i):
        return self.basis[i][0]

    def vector(self, path):
        out = np.zeros(self.dim, dtype=np.int64)
        for key, c in self.A.path_coords(path).items():
            out[self.pos[key]] = c % self.p
        return out

    def idempotent(self, v):
        return self.vector((v,))

    def generators(self):
        """Basis paths of positive degree not in the span of products of shorter ones."""
        gens = []
        for d in range(1, len(self.A.layers)):
            prods = []
            for i in range(self.dim):
                for j in range(self.dim):
                    pi, pj = self.path(i), self.path(j)
                    if self.degree(i) and self.degree(j) and self.degree(i) + self.degree(j) == d \
                            and pi[-1] == pj[0]:
                        prods.append(self.vector(pi + pj[1:]))
            span = RowSpace(np.array(prods), self.p, self.dim) if prods else \
                RowSpace(np.zeros((0, self.dim)), self.p, self.dim)
            for i in range(self.dim):
                if self.degree(i) == d and span.add(np.eye(self.dim, dtype=np.int64)[i]):
                    gens.append(i)
        return gens


def _graph_is_isomorphism(pairs, dim_t, dim_s, p):
    """The pairs (t, s) are the graph of a linear bijection T -> S."""
    t = np.array([a for a, _ in pairs])
    ts = np.array([np.concatenate([a, b]) for a, b in pairs])
    s = np.array([b for _, b in pairs])
    return rank(t, p) == dim_t == rank(ts, p) and rank(s, p) == dim_s


def truncation_isomorphism(S, vertices, l):
    """Find an isomorphism from e A_l^! e onto S generated by vertex and generator images.

    Tries every bijection of the vertices with the summands of S and every
    nonzero image of each generator inside the matching homogeneous block of
    S. A choice succeeds when the induced assignment on composable generator
    words is the graph of a linear bijection, which makes it an algebra
    isomorphism. Returns (vertex map, generator images) or None.
    """
    p = S.p
    T = PathTruncation(PathAlgebra(l, p, vertices))
    if T.dim != S.dim:
        return None
    gens = T.generators()
    top = max(T.degree(i) for i in range(T.dim))
    for order in permutations(range(len(S.summands))):
        vert = dict(zip(vertices, order))
        choices = []
        for g in gens:
            u, v = T.path(g)[0], T.path(g)[-1]
            # a path (u|...|v) acts as a map from the v summand to the u summand
            idx = [a for a in S.blocks[(vert[v], vert[u])] if S.degrees[a] == T.degree(g)]
            cands = []
            for coeffs in product(range(p), repeat=len(idx)):
                if any(coeffs):
                    x = np.zeros(S.dim, dtype=np.int64)
                    x[idx] = coeffs
                    cands.append(x)
            choices.append(cands)
        for images in product(*choices):
            pairs = [(T.idempotent(v), S.idempotent(vert[v])) for v in vertices]
            frontier = list(pairs)
            ends = [(v, v) for v in vertices]
            words = list(zip(ends, pairs))
            for _ in range(top):
                grown = []
                for (u, w), (tx, sx) in words:
                    for g, img in zip(gens, images):
                        path = T.path(g)
                        if path[0] != w:
                            continue
                        tt = np.zeros(T.dim, dtype=np.int64)
                        for i in np.flatnonzero(tx):
                            tt = (tt + int(tx[i]) * T.vector(T.path(i) + path[1:])) % p
                        grown.append(((u, path[-1]), (tt, S.mult(sx, img))))
                words = grown
                frontier.extend(pair for _, pair in grown)
            if _graph_is_isomorphism(frontier, T.dim, S.dim, p):
                return vert, {T.path(g): img for g, img in zip(gens, images)}
    return None


def truncation_report(n, r, s, vertices, p):
    """S_n^b(r,s) against e A_(r+s)^! e, plus the standard module dimensions."""
    S = basic_two_tensor(n, r, s, p)
    T = PathTruncation(PathAlgebra(r + s, p, vertices))
    found = truncation_isomorphism(S, vertices, r + s)
    deltas = {}
    for k, sh in enumerate(S.shapes):
        D = standard_module(S, k)
        deltas[sh] = {"projective": D.P.dim, "standard": D.dim}
    return {"graded_dim": S.graded_dim(), "truncation_graded_dim": T.A.graded_dim(),
            "isomorphic": found is not None,
            "vertex_map": None if found is None else {v: S.shapes[k] for v, k in found[0].items()},
            "standard_modules": deltas}
