"""Bimodules and the functor calculus built from them.

An (A,B)-bimodule is bigraded by vertex pairs, with left action matrices for
the radical basis of A and right action matrices for the radical basis of B;
the two actions commute.  Tensoring a right A-module with an (A,B)-bimodule
and taking right-B-linear maps out of one are the two workhorses: together
with restriction along an algebra surjection they realize every functor used
by the split-extension and recollement layers.

Conventions: for a left action by a: u -> u' the matrix lam(a)[w] sends the
block X_{u',w} to X_{u,w} (row convention, so x.lam is "multiply by a on the
left"); for a right action by b: w -> w' the matrix rho(b)[u] sends X_{u,w}
to X_{u,w'}.
"""

from __future__ import annotations

from .algebra import Algebra, AlgebraMorphismData
from .linalg import Matrix, Subspace, quotient_with_section, rank_kernel_image, solve_right
from .modules import ModuleError, RightModule


class BimoduleError(ValueError):
    pass


class Bimodule:
    def __init__(
        self,
        left_algebra: Algebra,
        right_algebra: Algebra,
        dims: list[list[int]],
        left: dict[int, dict[int, Matrix]],
        right: dict[int, dict[int, Matrix]],
        name: str = "bimodule",
        check: bool = True,
    ):
        if left_algebra.field != right_algebra.field:
            raise BimoduleError("bimodule algebras over different fields")
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.dims = [list(row) for row in dims]
        self.name = name
        f = left_algebra.field
        nu, nw = left_algebra.n_vertices, right_algebra.n_vertices
        if len(self.dims) != nu or any(len(r) != nw for r in self.dims):
            raise BimoduleError("dims grid has the wrong shape")
        self.left: dict[int, dict[int, Matrix]] = {}
        for i in left_algebra.radical_indices:
            b = left_algebra.basis[i]
            per_w = {}
            for w in range(nw):
                m = left.get(i, {}).get(w)
                if m is None:
                    m = Matrix.zeros(f, self.dims[b.target][w], self.dims[b.source][w])
                if (m.nrows, m.ncols) != (self.dims[b.target][w], self.dims[b.source][w]):
                    raise BimoduleError(f"left action of {left_algebra.basis_label(i)} has wrong shape at column {w}")
                per_w[w] = m
            self.left[i] = per_w
        self.right: dict[int, dict[int, Matrix]] = {}
        for j in right_algebra.radical_indices:
            b = right_algebra.basis[j]
            per_u = {}
            for u in range(nu):
                m = right.get(j, {}).get(u)
                if m is None:
                    m = Matrix.zeros(f, self.dims[u][b.source], self.dims[u][b.target])
                if (m.nrows, m.ncols) != (self.dims[u][b.source], self.dims[u][b.target]):
                    raise BimoduleError(f"right action of {right_algebra.basis_label(j)} has wrong shape at row {u}")
                per_u[u] = m
            self.right[j] = per_u
        if check:
            bad = self.violations()
            if bad:
                raise BimoduleError("bimodule axioms fail: " + bad[0])

    @property
    def field(self):
        return self.left_algebra.field

    def violations(self) -> list[str]:
        A, B, f = self.left_algebra, self.right_algebra, self.field
        out = []
        # left multiplicativity: lam(a1*a2) = lam(a2).lam(a1) blockwise
        for i1 in A.radical_indices:
            b1 = A.basis[i1]
            for i2 in A.radical_indices:
                b2 = A.basis[i2]
                if b1.target != b2.source:
                    continue
                for w in range(B.n_vertices):
                    lhs = self.left[i2][w].mul(self.left[i1][w])
                    rhs = Matrix.zeros(f, self.dims[b2.target][w], self.dims[b1.source][w])
                    for k, c in A.mult(i1, i2).items():
                        rhs = rhs.add(self._left_any(k, w).scale(c))
                    if lhs != rhs:
                        out.append(f"left pair ({A.basis_label(i1)},{A.basis_label(i2)}) column {w}")
        for j1 in B.radical_indices:
            c1 = B.basis[j1]
            for j2 in B.radical_indices:
                c2 = B.basis[j2]
                if c1.target != c2.source:
                    continue
                for u in range(A.n_vertices):
                    lhs = self.right[j1][u].mul(self.right[j2][u])
                    rhs = Matrix.zeros(f, self.dims[u][c1.source], self.dims[u][c2.target])
                    for k, c in B.mult(j1, j2).items():
                        rhs = rhs.add(self._right_any(k, u).scale(c))
                    if lhs != rhs:
                        out.append(f"right pair ({B.basis_label(j1)},{B.basis_label(j2)}) row {u}")
        for i in A.radical_indices:
            a = A.basis[i]
            for j in B.radical_indices:
                b = B.basis[j]
                lhs = self.left[i][b.source].mul(self.right[j][a.source])
                rhs = self.right[j][a.target].mul(self.left[i][b.target])
                if lhs != rhs:
                    out.append(f"actions do not commute: ({A.basis_label(i)}, {B.basis_label(j)})")
        return out

    def _left_any(self, k: int, w: int) -> Matrix:
        b = self.left_algebra.basis[k]
        if b.degree == 0:
            return Matrix.identity(self.field, self.dims[b.source][w])
        return self.left[k][w]

    def _right_any(self, k: int, u: int) -> Matrix:
        b = self.right_algebra.basis[k]
        if b.degree == 0:
            return Matrix.identity(self.field, self.dims[u][b.source])
        return self.right[k][u]

    def __repr__(self):
        return f"Bimodule({self.name}: {self.left_algebra.name} x {self.right_algebra.name})"


# ---------------------------------------------------------------------------
# standard constructions


def algebra_as_bimodule(
    carrier: Algebra,
    left_algebra: Algebra,
    right_algebra: Algebra,
    left_transport: AlgebraMorphismData | None = None,
    right_transport: AlgebraMorphismData | None = None,
    left_vertex_map: dict[int, int] | None = None,
    right_vertex_map: dict[int, int] | None = None,
    name: str | None = None,
) -> Bimodule:
    """The carrier algebra as an (L, R)-bimodule.

    Left/right transports send basis elements of the acting algebras into the
    carrier (identity if omitted, for the carrier acting on itself); vertex
    maps send acting-algebra vertices to carrier vertices (label match if
    omitted).  Actions are carrier multiplication after transport.
    """
    f = carrier.field

    def _vmap(alg: Algebra, given) -> dict[int, int]:
        if given is not None:
            return given
        return {vi: carrier.vertex_index(v) for vi, v in enumerate(alg.vertices) if v in carrier.vertices}

    lmap = _vmap(left_algebra, left_vertex_map)
    rmap = _vmap(right_algebra, right_vertex_map)
    members: dict[tuple[int, int], list[int]] = {}
    for t, b in enumerate(carrier.basis):
        members.setdefault((b.source, b.target), []).append(t)
    pos = {t: k for mem in members.values() for k, t in enumerate(mem)}

    def block(u: int, w: int) -> list[int]:
        if u not in lmap or w not in rmap:
            return []
        return members.get((lmap[u], rmap[w]), [])

    dims = [[len(block(u, w)) for w in range(right_algebra.n_vertices)] for u in range(left_algebra.n_vertices)]

    def transported(alg: Algebra, transport: AlgebraMorphismData | None, i: int) -> dict[int, object]:
        if transport is None:
            return {i: f.one()}
        return transport.image_vec(i)

    left: dict[int, dict[int, Matrix]] = {}
    for i in left_algebra.radical_indices:
        a = left_algebra.basis[i]
        vec = transported(left_algebra, left_transport, i)
        per_w = {}
        for w in range(right_algebra.n_vertices):
            src_block = block(a.target, w)
            dst_block = block(a.source, w)
            m = Matrix.zeros(f, len(src_block), len(dst_block))
            for r, t in enumerate(src_block):
                prod = carrier.mult_vec(vec, {t: f.one()})
                for k, c in prod.items():
                    m.rows[r][pos[k]] = c
            per_w[w] = m
        left[i] = per_w
    right: dict[int, dict[int, Matrix]] = {}
    for j in right_algebra.radical_indices:
        b = right_algebra.basis[j]
        vec = transported(right_algebra, right_transport, j)
        per_u = {}
        for u in range(left_algebra.n_vertices):
            src_block = block(u, b.source)
            dst_block = block(u, b.target)
            m = Matrix.zeros(f, len(src_block), len(dst_block))
            for r, t in enumerate(src_block):
                prod = carrier.mult_vec({t: f.one()}, vec)
                for k, c in prod.items():
                    m.rows[r][pos[k]] = c
            per_u[u] = m
        right[j] = per_u
    return Bimodule(
        left_algebra,
        right_algebra,
        dims,
        left,
        right,
        name=name or f"{left_algebra.name}|{carrier.name}|{right_algebra.name}",
    )


# ---------------------------------------------------------------------------
# functors


def _tensor_data(m: RightModule, x: Bimodule):
    """Quotient data behind M tensor_A X: the module plus the per-column
    ambient offsets and projection/section pairs (needed for functoriality)."""
    A, B = x.left_algebra, x.right_algebra
    if not m.algebra.same_as(A):
        raise ModuleError("tensor: module is not over the bimodule's left algebra")
    f = x.field
    nv, nw = A.n_vertices, B.n_vertices
    offsets: list[list[int]] = []
    amb: list[int] = []
    for w in range(nw):
        offs = []
        total = 0
        for v in range(nv):
            offs.append(total)
            total += m.dims[v] * x.dims[v][w]
        offsets.append(offs)
        amb.append(total)
    rel_spaces: list[Subspace] = []
    for w in range(nw):
        rows = []
        for i in A.radical_indices:
            a = A.basis[i]
            v, v2 = a.source, a.target  # a: v -> v2
            act = m.action[i]           # M_v -> M_v2
            lam = x.left[i][w]          # X_{v2,w} -> X_{v,w}
            for p in range(m.dims[v]):
                for t in range(x.dims[v2][w]):
                    row = [f.zero()] * amb[w]
                    for k in range(m.dims[v2]):
                        c = act.rows[p][k]
                        if c != 0:
                            row[offsets[w][v2] + k * x.dims[v2][w] + t] = f.add(
                                row[offsets[w][v2] + k * x.dims[v2][w] + t], c
                            )
                    for s in range(x.dims[v][w]):
                        c = lam.rows[t][s]
                        if c != 0:
                            row[offsets[w][v] + p * x.dims[v][w] + s] = f.sub(
                                row[offsets[w][v] + p * x.dims[v][w] + s], c
                            )
                    if any(e != 0 for e in row):
                        rows.append(row)
        rel_spaces.append(Subspace.from_rows(f, amb[w], rows))
    projs, sects, dims = [], [], []
    for w in range(nw):
        p, s, q = quotient_with_section(f, amb[w], rel_spaces[w])
        projs.append(p)
        sects.append(s)
        dims.append(q)
    action: dict[int, Matrix] = {}
    for j in B.radical_indices:
        b = B.basis[j]
        w, w2 = b.source, b.target
        big = Matrix.zeros(f, amb[w], amb[w2])
        for v in range(nv):
            rho = x.right[j][v]  # X_{v,w} -> X_{v,w2}
            for p in range(m.dims[v]):
                for t in range(x.dims[v][w]):
                    src = offsets[w][v] + p * x.dims[v][w] + t
                    for t2 in range(x.dims[v][w2]):
                        c = rho.rows[t][t2]
                        if c != 0:
                            big.rows[src][offsets[w2][v] + p * x.dims[v][w2] + t2] = c
        action[j] = sects[w].mul(big).mul(projs[w2])
    return RightModule(B, dims, action), projs, sects, offsets, amb


def tensor_with_bimodule(m: RightModule, x: Bimodule) -> RightModule:
    """M tensor_A X for M a right A-module and X an (A,B)-bimodule.

    The space over a B-vertex w is (direct sum over v of M_v (x) X_{v,w})
    modulo the balancing relations (m.a)(x)x - m(x)(a.x) for radical a; the
    right B-action is induced through the canonical section of the quotient.
    """
    return _tensor_data(m, x)[0]


def tensor_with_bimodule_map(fmap, x: Bimodule):
    """Functoriality of - tensor X: the induced map between the tensors."""
    from .modules import ModuleMap

    A, B = x.left_algebra, x.right_algebra
    f = x.field
    src_mod, _, src_sects, src_off, src_amb = _tensor_data(fmap.source, x)
    tgt_mod, tgt_projs, _, tgt_off, tgt_amb = _tensor_data(fmap.target, x)
    mats = []
    for w in range(B.n_vertices):
        big = Matrix.zeros(f, src_amb[w], tgt_amb[w])
        for v in range(A.n_vertices):
            F = fmap.mats[v]
            for p in range(fmap.source.dims[v]):
                for t in range(x.dims[v][w]):
                    src_idx = src_off[w][v] + p * x.dims[v][w] + t
                    for k in range(fmap.target.dims[v]):
                        c = F.rows[p][k]
                        if c != 0:
                            big.rows[src_idx][tgt_off[w][v] + k * x.dims[v][w] + t] = c
        mats.append(src_sects[w].mul(big).mul(tgt_projs[w]))
    return ModuleMap(src_mod, tgt_mod, mats)


def hom_from_bimodule(x: Bimodule, n: RightModule) -> RightModule:
    """Hom_B(X, N) as a right A-module, for X an (A,B)-bimodule and N over B.

    The space over an A-vertex u is the solution space of right-B-linear maps
    from the row e_u X to N; the right A-action is (f.a)(x) = f(a.x).
    """
    A, B = x.left_algebra, x.right_algebra
    if not n.algebra.same_as(B):
        raise ModuleError("hom: module is not over the bimodule's right algebra")
    f = x.field
    nu, nw = A.n_vertices, B.n_vertices
    # unknowns per u: block matrices f_w : X_{u,w} -> N_w
    bases: list[list[list[Matrix]]] = []  # per u: list of solutions, each a list of per-w matrices
    offsets_per_u: list[list[int]] = []
    ambients: list[int] = []
    for u in range(nu):
        offs = []
        total = 0
        for w in range(nw):
            offs.append(total)
            total += x.dims[u][w] * n.dims[w]
        offsets_per_u.append(offs)
        ambients.append(total)
    for u in range(nu):
        total = ambients[u]
        if total == 0:
            bases.append([])
            continue
        n_eqs = 0
        for j in B.radical_indices:
            b = B.basis[j]
            n_eqs += x.dims[u][b.source] * n.dims[b.target]
        E = Matrix.zeros(f, total, n_eqs)
        eq = 0
        offs = offsets_per_u[u]
        for j in B.radical_indices:
            b = B.basis[j]
            w, w2 = b.source, b.target
            rho_x = x.right[j][u]  # X_{u,w} -> X_{u,w2}
            rho_n = n.action[j]    # N_w -> N_w2
            for p in range(x.dims[u][w]):
                for q in range(n.dims[w2]):
                    for k in range(x.dims[u][w2]):
                        c = rho_x.rows[p][k]
                        if c != 0:
                            idx = offs[w2] + k * n.dims[w2] + q
                            E.rows[idx][eq] = f.add(E.rows[idx][eq], c)
                    for l in range(n.dims[w]):
                        c = rho_n.rows[l][q]
                        if c != 0:
                            idx = offs[w] + p * n.dims[w] + l
                            E.rows[idx][eq] = f.sub(E.rows[idx][eq], c)
                    eq += 1
        _, kernel, _ = rank_kernel_image(E)
        sols = []
        for row in kernel.basis.rows:
            mats = []
            for w in range(nw):
                mat = Matrix.zeros(f, x.dims[u][w], n.dims[w])
                for p in range(x.dims[u][w]):
                    for q in range(n.dims[w]):
                        mat.rows[p][q] = row[offs[w] + p * n.dims[w] + q]
                mats.append(mat)
            sols.append(mats)
        bases.append(sols)
    dims = [len(bases[u]) for u in range(nu)]
    action: dict[int, Matrix] = {}
    for i in A.radical_indices:
        a = A.basis[i]
        u, u2 = a.source, a.target
        mat = Matrix.zeros(f, dims[u], dims[u2])
        for r, sol in enumerate(bases[u]):
            # (f.a) on e_{u2}X: precompose with left multiplication by a
            moved = [x.left[i][w].mul(sol[w]) for w in range(nw)]
            flat = [e for w in range(nw) for row_ in moved[w].rows for e in row_]
            if dims[u2] == 0:
                continue
            amb_rows = []
            for sol2 in bases[u2]:
                amb_rows.append([e for w in range(nw) for row_ in sol2[w].rows for e in row_])
            width = ambients[u2]
            sol_m = solve_right(Matrix(f, amb_rows, dims[u2], width), Matrix(f, [flat], 1, width))
            if sol_m is None:
                raise BimoduleError("hom action left the solution space (internal error)")
            mat.rows[r] = sol_m[0].rows[0]
        action[i] = mat
    return RightModule(A, dims, action)


def left_module_over_op(x: Bimodule) -> RightModule:
    """Forget the right action: the left structure as a right module over the
    opposite of the left algebra (space at u is the direct sum of row u)."""
    from .algebra import opposite_algebra

    a = x.left_algebra
    opp, _ = opposite_algebra(a)
    f = a.field
    nw = x.right_algebra.n_vertices
    offsets: list[list[int]] = []
    dims = []
    for u in range(a.n_vertices):
        offs = []
        total = 0
        for w in range(nw):
            offs.append(total)
            total += x.dims[u][w]
        offsets.append(offs)
        dims.append(total)
    action: dict[int, Matrix] = {}
    for i in a.radical_indices:
        b = a.basis[i]  # u -> u2 in A; over the opposite it runs u2 -> u
        u, u2 = b.source, b.target
        mat = Matrix.zeros(f, dims[u2], dims[u])
        for w in range(nw):
            lam = x.left[i][w]  # X_{u2,w} -> X_{u,w}
            for p in range(x.dims[u2][w]):
                for q in range(x.dims[u][w]):
                    mat.rows[offsets[u2][w] + p][offsets[u][w] + q] = lam.rows[p][q]
        action[i] = mat
    return RightModule(opp, dims, action)


def right_module_of(x: Bimodule) -> RightModule:
    """Forget the left action: the underlying right module over the right
    algebra (space at w is the direct sum of column w)."""
    b_alg = x.right_algebra
    f = x.field
    nu = x.left_algebra.n_vertices
    offsets: list[list[int]] = []
    dims = []
    for w in range(b_alg.n_vertices):
        offs = []
        total = 0
        for u in range(nu):
            offs.append(total)
            total += x.dims[u][w]
        offsets.append(offs)
        dims.append(total)
    action: dict[int, Matrix] = {}
    for j in b_alg.radical_indices:
        b = b_alg.basis[j]
        w, w2 = b.source, b.target
        mat = Matrix.zeros(f, dims[w], dims[w2])
        for u in range(nu):
            rho = x.right[j][u]
            for p in range(x.dims[u][w]):
                for q in range(x.dims[u][w2]):
                    mat.rows[offsets[w][u] + p][offsets[w2][u] + q] = rho.rows[p][q]
        action[j] = mat
    return RightModule(b_alg, dims, action)


def restrict_along_surjection(m: RightModule, morph: AlgebraMorphismData) -> RightModule:
    """Pull a module over the target of an algebra surjection back to the source.

    Source basis elements act as their images; the kernel acts as zero.
    Vertices of the target must be a (label-preserving) subset of the source's.
    """
    src, tgt = morph.source, morph.target
    if not m.algebra.same_as(tgt):
        raise ModuleError("restriction: module is not over the morphism target")
    f = src.field
    tgt_index = {v: i for i, v in enumerate(tgt.vertices)}
    dims = [m.dims[tgt_index[v]] if v in tgt_index else 0 for v in src.vertices]
    action: dict[int, Matrix] = {}
    for i in src.radical_indices:
        b = src.basis[i]
        mat = Matrix.zeros(f, dims[b.source], dims[b.target])
        for k, c in morph.image_vec(i).items():
            mat = mat.add(m.rho(k).scale(c))
        action[i] = mat
    return RightModule(src, dims, action)
