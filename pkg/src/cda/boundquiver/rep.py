"""Representations of bound quivers and the basic modules built from them.

An arrow a: u -> v acts by a matrix of shape (dim M_v, dim M_u) on column
vectors, so a path a1 a2 ... ak acts by M_ak ... M_a2 M_a1.
"""

from __future__ import annotations

import json

from ..exactalg import ExactMatrix, _rref_inplace, kernel_basis, field_from_json
from .algebra import AlgebraMismatch, BoundQuiverAlgebra


class RelationViolated(ValueError):
    pass


class Representation:
    """Immutable module over a bound quiver algebra.

    ``dims`` and ``maps`` are indexed like the quiver's vertices and arrows.
    """

    def __init__(self, alg: BoundQuiverAlgebra, dims, maps, check: bool = True):
        self.alg = alg
        Q = alg.quiver
        if isinstance(dims, dict):
            dims = [dims.get(v, 0) for v in Q.vertices]
        if isinstance(maps, dict):
            maps = [maps.get(a.name) for a in Q.arrows]
        self.dims = tuple(int(d) for d in dims)
        F = alg.field
        ms = []
        for a, m in zip(Q.arrows, maps):
            r, c = self.dims[Q.vindex[a.target]], self.dims[Q.vindex[a.source]]
            if m is None:
                m = ExactMatrix.zeros(r, c, F)
            elif not isinstance(m, ExactMatrix):
                m = ExactMatrix(m, F, cols=c)
            if m.shape != (r, c):
                raise ValueError(f"arrow {a.name}: matrix shape {m.shape}, expected {(r, c)}")
            if m.field != F:
                raise AlgebraMismatch(f"arrow {a.name}: matrix over the wrong field")
            ms.append(m)
        if len(ms) != len(Q.arrows):
            raise ValueError("one matrix per arrow is required")
        self.maps = tuple(ms)
        self._cache = {}
        if check:
            self.check_relations()

    @property
    def field(self):
        return self.alg.field

    def dim(self, v) -> int:
        return self.dims[self.alg.quiver.vindex[v]]

    def map(self, arrow: str) -> ExactMatrix:
        return self.maps[self.alg.quiver.aindex[arrow]]

    def dim_vector(self) -> dict:
        return {v: d for v, d in zip(self.alg.vertices, self.dims)}

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_matrix(self, start, path) -> ExactMatrix:
        m = ExactMatrix.identity(self.dim(start), self.field)
        for a in path:
            m = self.map(a) @ m
        return m

    def check_relations(self):
        Q = self.alg.quiver
        for r in self.alg.relations:
            s, t = r.ends(Q)
            acc = ExactMatrix.zeros(self.dim(t), self.dim(s), self.field)
            for c, p in r.terms:
                acc = acc + self.path_matrix(s, p).scale(c)
            if not acc.is_zero():
                raise RelationViolated(f"relation {r!r} does not hold")

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.alg is other.alg
            and self.dims == other.dims
            and self.maps == other.maps
        )

    def __hash__(self):
        return hash((id(self.alg), self.dims, self.maps))

    def __repr__(self):
        dv = ", ".join(f"{v}:{d}" for v, d in zip(self.alg.vertices, self.dims))
        return f"Representation({dv})"

    def to_json(self) -> dict:
        return {
            "dims": self.dim_vector(),
            "maps": {a.name: m.to_json() for a, m in zip(self.alg.arrows, self.maps)},
        }

    @classmethod
    def from_json(cls, alg: BoundQuiverAlgebra, obj) -> "Representation":
        if isinstance(obj, str):
            obj = json.loads(obj)
        maps = {k: ExactMatrix.from_json(v, alg.field) for k, v in obj.get("maps", {}).items()}
        return cls(alg, obj["dims"], maps)


def zero_rep(alg) -> Representation:
    return Representation(alg, [0] * len(alg.vertices), [None] * len(alg.arrows), check=False)


def simple(alg, v) -> Representation:
    return Representation(alg, {v: 1}, {}, check=False)


def projective(alg: BoundQuiverAlgebra, v) -> Representation:
    """e_v A: paths starting at v, arrows acting by right multiplication."""
    dims = [alg.dim(v, w) for w in alg.vertices]
    maps = [alg.right_arrow_matrix(v, a.name) for a in alg.arrows]
    return Representation(alg, dims, maps, check=False)


def dual(M: Representation) -> Representation:
    """k-dual: a representation of the opposite algebra with transposed maps."""
    op = M.alg.opposite()
    return Representation(op, M.dims, [m.T for m in M.maps], check=False)


def injective(alg: BoundQuiverAlgebra, v) -> Representation:
    """D(A e_v), the dual of the projective of the opposite algebra at v."""
    return dual(projective(alg.opposite(), v))


def direct_sum(mods) -> Representation:
    mods = list(mods)
    alg = mods[0].alg
    Q = alg.quiver
    dims = [sum(M.dims[k] for M in mods) for k in range(len(Q.vertices))]
    maps = []
    for ai, a in enumerate(Q.arrows):
        si = Q.vindex[a.source]
        rows = []
        c_off = 0
        for M in mods:
            m = M.maps[ai]
            for row in m.entries:
                full = [alg.field.zero] * dims[si]
                full[c_off : c_off + m.cols] = row
                rows.append(tuple(full))
            c_off += M.dims[si]
        maps.append(ExactMatrix._raw(tuple(rows), alg.field, dims[si]))
    return Representation(alg, dims, maps, check=False)


def free_module(alg, gens) -> Representation:
    """Direct sum of e_v A over the generator vertices ``gens``."""
    if not gens:
        return zero_rep(alg)
    return direct_sum([projective(alg, v) for v in gens])


# subspaces, kernels and cokernels --------------------------------------------


class Subspace:
    """Row-reduced basis of a subspace of F^n, with its pivot columns."""

    def __init__(self, vectors, n: int, field):
        rows = [list(v) for v in vectors]
        pivots = _rref_inplace(rows, n) if rows else ()
        self.rows = [tuple(r) for r in rows[: len(pivots)]]
        self.pivots = pivots
        self.n = n
        self.field = field

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def complement_coords(self) -> list[int]:
        ps = set(self.pivots)
        return [k for k in range(self.n) if k not in ps]

    def reduce(self, vec) -> list:
        v = list(vec)
        for p, row in zip(self.pivots, self.rows):
            c = v[p]
            if c:
                for k, x in enumerate(row):
                    if x:
                        v[k] = v[k] - c * x
        return v

    def quotient_matrix(self) -> ExactMatrix:
        """Projection F^n -> F^n / U in the coordinates of the complement."""
        comp = self.complement_coords()
        F = self.field
        cols = []
        for j in range(self.n):
            e = [F.zero] * self.n
            e[j] = F.one
            r = self.reduce(e)
            cols.append([r[k] for k in comp])
        return _cols_to_matrix(cols, len(comp), F)

    def inclusion_matrix(self) -> ExactMatrix:
        return _cols_to_matrix(self.rows, self.n, self.field)

    def coords(self, vec) -> tuple:
        """Coordinates of a vector of the subspace in the row basis."""
        return tuple(vec[p] for p in self.pivots)


def _cols_to_matrix(cols, nrows, field) -> ExactMatrix:
    if not cols:
        return ExactMatrix.zeros(nrows, 0, field)
    if nrows == 0:
        return ExactMatrix.zeros(0, len(cols), field)
    return ExactMatrix._raw(tuple(zip(*cols)), field, len(cols))


def image_subspace(m: ExactMatrix) -> Subspace:
    return Subspace(m.columns(), m.rows, m.field)


def subrepresentation(M: Representation, subspaces) -> tuple[Representation, list]:
    """The subrepresentation with the given per-vertex subspaces (assumed stable).

    Returns it together with the inclusion matrices.
    """
    Q = M.alg.quiver
    incl = [U.inclusion_matrix() for U in subspaces]
    maps = []
    for ai, a in enumerate(Q.arrows):
        s, t = Q.vindex[a.source], Q.vindex[a.target]
        img = M.maps[ai] @ incl[s]
        U = subspaces[t]
        cols = [U.coords(c) for c in img.columns()]
        maps.append(_cols_to_matrix(cols, U.dim, M.field))
    return Representation(M.alg, [U.dim for U in subspaces], maps, check=False), incl


def quotient(M: Representation, subspaces) -> tuple[Representation, list]:
    """M / U for stable per-vertex subspaces U; returns it with the projections."""
    Q = M.alg.quiver
    proj = [U.quotient_matrix() for U in subspaces]
    maps = []
    for ai, a in enumerate(Q.arrows):
        s, t = Q.vindex[a.source], Q.vindex[a.target]
        comp = subspaces[s].complement_coords()
        lift = _cols_to_matrix(
            [tuple(M.field.one if r == k else M.field.zero for r in range(M.dims[s])) for k in comp],
            M.dims[s],
            M.field,
        )
        maps.append(proj[t] @ M.maps[ai] @ lift)
    return Representation(M.alg, [len(U.complement_coords()) for U in subspaces], maps, check=False), proj


def kernel(M: Representation, N: Representation, f) -> tuple[Representation, list]:
    """Kernel of a morphism f: M -> N given as per-vertex matrices."""
    subs = [Subspace(kernel_basis(fv), M.dims[k], M.field) for k, fv in enumerate(f)]
    return subrepresentation(M, subs)


def cokernel(M: Representation, N: Representation, f) -> tuple[Representation, list]:
    subs = [image_subspace(fv) for fv in f]
    return quotient(N, subs)


def image(M: Representation, N: Representation, f) -> tuple[Representation, list]:
    subs = [image_subspace(fv) for fv in f]
    return subrepresentation(N, subs)


def radical_subspaces(M: Representation) -> list[Subspace]:
    """rad M at each vertex: the sum of the images of incoming arrows."""
    Q = M.alg.quiver
    out = []
    for k, v in enumerate(Q.vertices):
        vecs = []
        for a in Q.arrows_into(v):
            vecs.extend(M.map(a.name).columns())
        out.append(Subspace(vecs, M.dims[k], M.field))
    return out


def top(M: Representation) -> Representation:
    return quotient(M, radical_subspaces(M))[0]


def restrict(M: Representation, sub: BoundQuiverAlgebra) -> Representation:
    """Restriction to a full subalgebra on a subset of the vertices."""
    return Representation(
        sub,
        {v: M.dim(v) for v in sub.vertices},
        {a.name: M.map(a.name) for a in sub.arrows},
        check=False,
    )


# morphisms between free modules ----------------------------------------------


class FreeMap:
    """Homomorphism from sum_s e_{src[s]} A to sum_t e_{tgt[t]} A.

    ``elems[t][s]`` is an element of e_{tgt[t]} A e_{src[s]}: the image of the
    s-th generator has component elems[t][s] in the t-th summand.
    """

    def __init__(self, alg: BoundQuiverAlgebra, src, tgt, elems):
        self.alg = alg
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        self.elems = [list(r) for r in elems]

    def vertex_matrices(self) -> list[ExactMatrix]:
        A = self.alg
        F = A.field
        out = []
        for w in A.vertices:
            rows_dim = sum(A.dim(t, w) for t in self.tgt)
            cols = []
            for s_i, s in enumerate(self.src):
                for j in range(A.dim(s, w)):
                    y = [F.zero] * A.dim(s, w)
                    y[j] = F.one
                    col = []
                    for t_i, t in enumerate(self.tgt):
                        col.extend(A.multiply(t, s, w, self.elems[t_i][s_i], y))
                    cols.append(col)
            out.append(_cols_to_matrix(cols, rows_dim, F))
        return out

    def cokernel(self) -> Representation:
        P1 = free_module(self.alg, self.src)
        P0 = free_module(self.alg, self.tgt)
        return cokernel(P1, P0, self.vertex_matrices())[0]

    def transpose(self) -> "FreeMap":
        """Hom(-, A) applied to the map: a free map over the opposite algebra."""
        A = self.alg
        op = A.opposite()
        elems = [
            [A.opposite_element(t, s, self.elems[t_i][s_i]) for t_i, t in enumerate(self.tgt)]
            for s_i, s in enumerate(self.src)
        ]
        return FreeMap(op, self.tgt, self.src, elems)
