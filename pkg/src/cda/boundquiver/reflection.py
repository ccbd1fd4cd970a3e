"""BGP reflection functors on representations of quivers without relations."""

from __future__ import annotations

from ..exactalg import ExactMatrix, kernel_basis
from .algebra import Arrow, BoundQuiverAlgebra, Quiver
from .rep import Representation, Subspace, _cols_to_matrix


class NotHereditary(ValueError):
    pass


class WrongVertexType(ValueError):
    pass


_ALGEBRAS = {}


def path_algebra(quiver: Quiver, field) -> BoundQuiverAlgebra:
    """The path algebra of a quiver, shared between equal quivers."""
    key = (quiver, field)
    alg = _ALGEBRAS.get(key)
    if alg is None:
        alg = BoundQuiverAlgebra(quiver, (), field, name="path")
        _ALGEBRAS[key] = alg
    return alg


def reflected_quiver(Q: Quiver, v) -> Quiver:
    arrows = [
        Arrow(a.name, a.target, a.source) if v in (a.source, a.target) else a for a in Q.arrows
    ]
    return Quiver(Q.vertices, arrows)


def bgp_reflect(M: Representation, v, direction: str) -> Representation:
    """S+ at a sink (direction "plus") or S- at a source ("minus")."""
    A = M.alg
    if A.relations:
        raise NotHereditary("reflection functors need a quiver without relations")
    Q = A.quiver
    F = A.field
    if direction not in ("plus", "minus"):
        raise ValueError("direction must be 'plus' or 'minus'")
    if direction == "plus" and not Q.is_sink(v):
        raise WrongVertexType(f"{v} is not a sink")
    if direction == "minus" and not Q.is_source(v):
        raise WrongVertexType(f"{v} is not a source")
    A2 = path_algebra(reflected_quiver(Q, v), F)
    local = Q.arrows_into(v) if direction == "plus" else Q.arrows_from(v)
    others = [a.source if direction == "plus" else a.target for a in local]
    odims = [M.dim(u) for u in others]
    total = sum(odims)
    dv = M.dim(v)
    if direction == "plus":
        # h = (M_a)_a : sum M_u -> M_v ; new M_v = ker h
        cols = []
        for a, d in zip(local, odims):
            cols.extend(M.map(a.name).columns())
        h = _cols_to_matrix(cols, dv, F)
        K = Subspace(kernel_basis(h), total, F)
        new_dim = K.dim
        incl = K.inclusion_matrix()
        new_maps = {}
        off = 0
        for a, d in zip(local, odims):
            # projection of the kernel onto the a-th summand
            new_maps[a.name] = incl.submatrix(range(off, off + d), range(incl.cols))
            off += d
    else:
        # h = (M_a)_a : M_v -> sum M_u ; new M_v = cok h
        rows = []
        for a in local:
            rows.extend(M.map(a.name).entries)
        h = ExactMatrix._raw(tuple(rows), F, dv) if rows else ExactMatrix.zeros(0, dv, F)
        U = Subspace(h.columns(), total, F)
        proj = U.quotient_matrix()
        new_dim = proj.rows
        new_maps = {}
        off = 0
        for a, d in zip(local, odims):
            new_maps[a.name] = proj.submatrix(range(proj.rows), range(off, off + d))
            off += d
    dims = {u: M.dim(u) for u in Q.vertices}
    dims[v] = new_dim
    maps = {a.name: M.map(a.name) for a in Q.arrows if a.name not in new_maps}
    maps.update(new_maps)
    return Representation(A2, dims, maps, check=False)


def reflect_sequence(M: Representation, vertices, direction: str) -> Representation:
    for v in vertices:
        M = bgp_reflect(M, v, direction)
    return M


def canonical_chain(weights) -> list[list]:
    """The three stages of sink reflections taking N to S+ N.

    Stage 1 empties the arms beyond the first vertex, stage 2 reflects the
    first arm vertices, stage 3 refills the rest of the arms.  Vertices are
    squid arm labels e_i(j).
    """
    from ..speciesdims import arm_label

    s1, s2, s3 = [], [], []
    for i, p in enumerate(weights, 1):
        m = p - 1
        for start in range(m, 1, -1):
            s1.extend(arm_label(i, j) for j in range(start, m + 1))
        s2.append(arm_label(i, 1))
        s3.extend(arm_label(i, j) for j in range(2, m + 1))
    return [s1, s2, s3]
