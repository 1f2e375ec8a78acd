"""Graded right modules over NH_n^l held as concrete matrices.

A module has a homogeneous basis, one action matrix per generator letter
(x . g = x @ act[g]), an optional differential matrix and an explicit
grading shift. Submodules and quotients keep a pointer to their parent so
that vectors can be carried back to the ambient algebra.
"""
import numpy as np

from .coeff import Laurent, ZERO
from .combinatorics import enumerate_multipartitions, positions, size, tab_lambda, tableaux
from .linalg import RowSpace, mm, rref
from .nilhecke import (NHWord, cell_ideal, cellular_word, idempotent_e, y_mu_exponents,
                       y_word)


class GradedModule:
    def __init__(self, rep, degrees, act, diff=None, shift=0, label="", generators=None,
                 parent=None, basis_in_parent=None, kind="sub"):
        self.rep = rep
        self.degrees = np.asarray(degrees, dtype=np.int64)
        self.dim = len(self.degrees)
        self.act = act
        self.diff = diff
        self.shift = shift
        self.label = label
        self.generators = generators
        self.parent = parent
        self.basis_in_parent = basis_in_parent
        self.kind = kind

    @property
    def p(self):
        return self.rep.p

    @property
    def is_partial_stable(self):
        return self.diff is not None

    def shifted(self, k, label=None):
        out = GradedModule(self.rep, self.degrees, self.act, self.diff, self.shift + k,
                           label or self.label, self.generators, self.parent,
                           self.basis_in_parent, self.kind)
        return out

    def char(self):
        return Laurent([(int(d) + self.shift, 1) for d in self.degrees])

    def act_word(self, letters):
        m = np.eye(self.dim, dtype=np.int64)
        for g in letters:
            m = mm(m, self.act[g], self.p)
        return m

    def act_element(self, x):
        """Matrix of right multiplication by an algebra element given by its lift."""
        m = np.zeros((self.dim, self.dim), dtype=np.int64)
        for c, w in x.lift().terms:
            m = (m + c * self.act_word(w)) % self.p
        return m

    def vector_degree(self, v):
        nz = np.flatnonzero(np.asarray(v) % self.p)
        if nz.size == 0:
            return None
        degs = set(self.degrees[nz].tolist())
        if len(degs) != 1:
            raise ValueError("vector is not homogeneous")
        return degs.pop()

    # -- constructions

    def span(self, rows):
        """Smallest submodule containing the rows, as a RowSpace."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.dim) % self.p
        space = RowSpace(rows, self.p, self.dim)
        while space.dim:
            cand = np.concatenate([mm(space.rows, self.act[g], self.p) for g in self.act]) \
                if self.act else np.zeros((0, self.dim), dtype=np.int64)
            rest = space.reduce(cand)
            rest = rest[rest.any(axis=1)]
            if rest.shape[0] == 0:
                break
            space = RowSpace(np.concatenate([space.rows, rest]), self.p, self.dim)
        return space

    def submodule(self, rows, label="", shift=None):
        """Submodule generated by homogeneous rows (in this module's coordinates)."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.dim) % self.p
        for r in rows:
            self.vector_degree(r)
        space = self.span(rows)
        return self._from_space(space, label, self.shift if shift is None else shift,
                                gens=rows[rows.any(axis=1)])

    def _from_space(self, space, label, shift, gens=None):
        basis = space.rows
        degs = np.array([self.vector_degree(b) for b in basis], dtype=np.int64)
        act = {g: space.coords(mm(basis, m, self.p)) for g, m in self.act.items()}
        diff = None
        if self.diff is not None:
            img = mm(basis, self.diff, self.p)
            if space.contains(img):
                diff = space.coords(img)
        generators = space.coords(gens) if gens is not None and len(gens) else None
        return GradedModule(self.rep, degs, act, diff, shift, label, generators, self, basis, "sub")

    def quotient(self, sub_rows, label=""):
        """self / span(sub_rows); sub_rows must span a submodule."""
        space = sub_rows if isinstance(sub_rows, RowSpace) else RowSpace(sub_rows, self.p, self.dim)
        keep = [c for c in range(self.dim) if c not in set(space.pivots)]
        basis = np.eye(self.dim, dtype=np.int64)[keep]
        proj = lambda v: space.reduce(v)[..., keep]
        act = {g: proj(mm(basis, m, self.p)) for g, m in self.act.items()}
        if space.dim and not all(space.contains(mm(space.rows, m, self.p)) for m in self.act.values()):
            raise ValueError("quotient by a non-submodule")
        diff = None
        if self.diff is not None and (space.dim == 0 or space.contains(mm(space.rows, self.diff, self.p))):
            diff = proj(mm(basis, self.diff, self.p))
        gens = proj(self.generators) if self.generators is not None else None
        out = GradedModule(self.rep, self.degrees[keep], act, diff, self.shift, label, gens,
                           self, basis, "quotient")
        out.quotient_space = space
        out.quotient_keep = keep
        return out

    def project(self, v):
        """Image in this module of a vector from the parent (quotient modules only)."""
        if self.kind != "quotient":
            raise ValueError("project applies to quotient modules")
        return self.quotient_space.reduce(v)[..., self.quotient_keep]

    def ambient_rows(self):
        """Basis as rows in the root module's coordinates (submodule chains only)."""
        if self.parent is None:
            return np.eye(self.dim, dtype=np.int64)
        if self.kind != "sub":
            raise ValueError("ambient coordinates are undefined through a quotient")
        return mm(self.basis_in_parent, self.parent.ambient_rows(), self.p)

    def coords(self, vecs):
        """Coordinates of parent vectors lying in this submodule."""
        return RowSpace(self.basis_in_parent, self.p, self.parent.dim).coords(vecs) \
            if self.dim else np.zeros(np.asarray(vecs).shape[:-1] + (0,), dtype=np.int64)

    def __repr__(self):
        return f"GradedModule({self.label or '?'}, dim={self.dim}, shift={self.shift})"


def regular_module(rep, shift=0, label="NH"):
    act = {g: rep.right_op(g) for g in rep.generator_letters()}
    gens = np.zeros((1, rep.dim), dtype=np.int64)
    gens[0] = rep.one().coords
    return GradedModule(rep, rep.degrees, act, rep.D, shift, label, gens, None, None, "root")


def _regular(rep):
    cache = rep.__dict__.setdefault("_module_cache", {})
    if "regular" not in cache:
        cache["regular"] = regular_module(rep)
    return cache["regular"]


def zero_module(rep, label="0"):
    return GradedModule(rep, [], {g: np.zeros((0, 0), dtype=np.int64) for g in rep.generator_letters()},
                        np.zeros((0, 0), dtype=np.int64), 0, label, np.zeros((0, 0), dtype=np.int64))


def span_right_ideal(rep, g, shift=0, label=""):
    """g . NH_n^l as a graded submodule of the regular module."""
    coords = g.coords if hasattr(g, "coords") else np.asarray(g)
    return _regular(rep).submodule(coords, label or "gNH", shift)


def G_shift(lam):
    n, l = size(lam), len(lam)
    return -n * l + sum(positions(lam))


def y_lambda(rep, lam):
    return rep.element_from_word(NHWord.of(y_word(y_mu_exponents(lam))))


def G_of(rep, lam):
    from .combinatorics import fmt_multipartition
    return span_right_ideal(rep, y_lambda(rep, lam), G_shift(lam), f"G({fmt_multipartition(lam)})")


def shape_idempotent(rep, shape):
    comp = tuple(k for k in (shape.b, shape.d) if k)
    return idempotent_e(rep, comp) if comp else rep.one()


def truncated_G(rep, shape):
    lam = shape.multipartition()
    if len(lam) != rep.l or shape.n != rep.n:
        raise ValueError("shape does not match the algebra")
    g = shape_idempotent(rep, shape) * y_lambda(rep, lam)
    return span_right_ideal(rep, g, G_shift(lam), f"e_lambda G{shape.label()}")


def specht(rep, mu, cells=None):
    """S^mu: the submodule of NH / NH^{>mu} generated by the class of y^mu."""
    from .combinatorics import fmt_multipartition
    reg = _regular(rep)
    ideal = cell_ideal(rep, mu, cells)
    quo = reg.quotient(ideal, f"NH/NH^>({fmt_multipartition(mu)})")
    gen = quo.project(y_lambda(rep, mu).coords)
    return quo.submodule(gen, f"S({fmt_multipartition(mu)})", 0)


def is_partial_stable(module):
    return module.is_partial_stable


def graded_char(module):
    return module.char()


def filtration_terms(lam):
    """(mu, tableau) pairs indexing the Specht layers of G(lam)."""
    l = len(lam)
    return [(mu, t) for mu in enumerate_multipartitions(size(lam), l) for t in tab_lambda(lam, mu)]


def specht_filtration_char(rep, lam, cells=None):
    """Sum over layers of q^(-2 len(w_t) + shift of G(lam)) char(S^mu)."""
    chars = {}
    total = ZERO
    for mu, t in filtration_terms(lam):
        if mu not in chars:
            chars[mu] = specht(rep, mu, cells).char()
        total = total + chars[mu].shift(G_shift(lam) - 2 * t.perm().length())
    return total


def specht_filtration_check(rep, lam, cells=None):
    return G_of(rep, lam).char() == specht_filtration_char(rep, lam, cells)


def G_basis_elements(rep, lam):
    """The elements psi_t^* y^mu psi_h, t in Tab^lam(mu), h in Tab(mu)."""
    out = []
    for mu, t in filtration_terms(lam):
        for h in tableaux(mu):
            out.append(rep.element_from_word(NHWord.of(cellular_word(mu, t, h))))
    return out


def G_basis_check(rep, lam):
    """The tableau elements lie in G(lam), are independent and span it."""
    G = G_of(rep, lam)
    elems = G_basis_elements(rep, lam)
    if not elems:
        return G.dim == 0
    rows = np.stack([e.coords for e in elems])
    inside = RowSpace(G.basis_in_parent, rep.p, rep.dim).contains(rows)
    return inside and len(rref(rows, rep.p)[1]) == len(elems) == G.dim


def palindromic(ch):
    """Coefficients symmetric about the midpoint of the support."""
    if ch.is_zero():
        return True
    mid = ch.min_degree() + ch.max_degree()
    return all(ch.coeff(e) == ch.coeff(mid - e) for e, _ in ch.items())
