"""Hom spaces, projective presentations, Ext and Auslander-Reiten translates."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..exactalg import ExactMatrix, determinant, kernel_basis, rank, QQ
from .algebra import AlgebraMismatch, BoundQuiverAlgebra
from .rep import (
    FreeMap,
    Representation,
    Subspace,
    dual,
    free_module,
    injective,
    kernel,
    projective,
    radical_subspaces,
    simple,
    top,
    _cols_to_matrix,
)


class ProjectiveSummand(ValueError):
    pass


class InjectiveSummand(ValueError):
    pass


# Hom ---------------------------------------------------------------------------


def _hom_system(M: Representation, N: Representation):
    if M.alg is not N.alg:
        raise AlgebraMismatch("modules over different algebras")
    Q = M.alg.quiver
    F = M.field
    offs = []
    n = 0
    for k in range(len(Q.vertices)):
        offs.append(n)
        n += N.dims[k] * M.dims[k]
    rows = []
    for ai, a in enumerate(Q.arrows):
        s, t = Q.vindex[a.source], Q.vindex[a.target]
        Ma, Na = M.maps[ai], N.maps[ai]
        ms, mt, ns, nt = M.dims[s], M.dims[t], N.dims[s], N.dims[t]
        # (g_t M_a - N_a g_s)[r][c] = 0 with g_v[r][c] at offs[v] + r*dim M_v + c
        for r in range(nt):
            for c in range(ms):
                row = {}
                for k in range(mt):
                    x = Ma[k, c]
                    if x:
                        key = offs[t] + r * mt + k
                        row[key] = row.get(key, F.zero) + x
                for k in range(ns):
                    x = Na[r, k]
                    if x:
                        key = offs[s] + k * ms + c
                        row[key] = row.get(key, F.zero) - x
                if any(row.values()):
                    dense = [F.zero] * n
                    for key, x in row.items():
                        dense[key] = x
                    rows.append(dense)
    return rows, n, offs


@dataclass(frozen=True)
class HomSpace:
    dim: int
    basis: tuple  # each morphism is a tuple of per-vertex matrices


def hom_space(M: Representation, N: Representation) -> HomSpace:
    rows, n, offs = _hom_system(M, N)
    F = M.field
    eq = ExactMatrix._raw(tuple(tuple(r) for r in rows), F, n) if rows else ExactMatrix.zeros(0, n, F)
    if n == 0:
        return HomSpace(0, ())
    basis = []
    for vec in kernel_basis(eq):
        g = []
        for k in range(len(M.dims)):
            r_, c_ = N.dims[k], M.dims[k]
            o = offs[k]
            g.append(
                ExactMatrix._raw(
                    tuple(tuple(vec[o + r * c_ + c] for c in range(c_)) for r in range(r_)), F, c_
                )
            )
        basis.append(tuple(g))
    return HomSpace(len(basis), tuple(basis))


def hom_dim(M: Representation, N: Representation) -> int:
    key = ("hom", id(N))
    hit = M._cache.get(key)
    if hit is not None and hit[0] is N:
        return hit[1]
    rows, n, _ = _hom_system(M, N)
    if not rows:
        d = n
    else:
        d = n - rank(ExactMatrix._raw(tuple(tuple(r) for r in rows), M.field, n))
    M._cache[key] = (N, d)
    return d


# presentations -----------------------------------------------------------------


@dataclass(frozen=True)
class ProjectiveCover:
    gens: tuple  # generator vertices of P0
    module: Representation  # P0
    map: tuple  # per-vertex matrices P0 -> M


def top_generators(M: Representation) -> list[tuple]:
    """(vertex, vector) pairs whose classes form a basis of top(M)."""
    F = M.field
    out = []
    for k, (v, U) in enumerate(zip(M.alg.vertices, radical_subspaces(M))):
        for c in U.complement_coords():
            vec = tuple(F.one if r == c else F.zero for r in range(M.dims[k]))
            out.append((v, vec))
    return out


def projective_cover(M: Representation) -> ProjectiveCover:
    hit = M._cache.get("cover")
    if hit is not None:
        return hit
    A = M.alg
    gens = top_generators(M)
    P0 = free_module(A, [v for v, _ in gens])
    maps = []
    for w in A.vertices:
        cols = []
        for v, m in gens:
            for path in A.basis(v, w):
                cols.append(M.path_matrix(v, path).apply(m))
        maps.append(_cols_to_matrix(cols, M.dim(w), M.field))
    cov = ProjectiveCover(tuple(v for v, _ in gens), P0, tuple(maps))
    M._cache["cover"] = cov
    return cov


def syzygy(M: Representation) -> Representation:
    hit = M._cache.get("syzygy")
    if hit is not None:
        return hit
    cov = projective_cover(M)
    K = kernel(cov.module, M, cov.map)[0]
    M._cache["syzygy"] = K
    return K


@dataclass(frozen=True)
class Presentation:
    """P1 -> P0 -> M -> 0 with P1 -> P0 given as a free map."""

    p0_gens: tuple
    p1_gens: tuple
    map: FreeMap
    cover: ProjectiveCover


def min_proj_presentation(M: Representation) -> Presentation:
    hit = M._cache.get("presentation")
    if hit is not None:
        return hit
    A = M.alg
    cov = projective_cover(M)
    K, incl = kernel(cov.module, M, cov.map)
    # generators of K, written as elements of P0 = sum_k e_{g_k} A
    kgens = top_generators(K)
    elems = [[None] * len(kgens) for _ in cov.gens]
    for j, (u, vec) in enumerate(kgens):
        ui = A.quiver.vindex[u]
        x = incl[ui].apply(vec)
        off = 0
        for k, g in enumerate(cov.gens):
            d = A.dim(g, u)
            elems[k][j] = tuple(x[off : off + d])
            off += d
    fm = FreeMap(A, [u for u, _ in kgens], cov.gens, elems)
    pres = Presentation(cov.gens, tuple(u for u, _ in kgens), fm, cov)
    M._cache["presentation"] = pres
    M._cache.setdefault("syzygy", K)
    return pres


def projective_dimension(M: Representation, limit: int = 64) -> int:
    """pd M; the zero module gets -1."""
    if M.is_zero():
        return -1
    X = M
    for d in range(limit):
        X = syzygy(X)
        if X.is_zero():
            return d
    raise RuntimeError("projective dimension exceeds the search limit")


def ext_dim(M: Representation, N: Representation, degree: int) -> int:
    """dim Ext^m(M, N) by dimension shifting along minimal syzygies.

    From 0 -> Omega X -> P0 -> X -> 0:
    dim Ext^1(X, N) = dim Hom(Omega X, N) - dim Hom(P0, N) + dim Hom(X, N).
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if degree == 0:
        return hom_dim(M, N)
    X = M
    for _ in range(degree - 1):
        X = syzygy(X)
        if X.is_zero():
            return 0
    if X.is_zero():
        return 0
    cov = projective_cover(X)
    hom_p0 = sum(N.dim(v) for v in cov.gens)
    return hom_dim(syzygy(X), N) - hom_p0 + hom_dim(X, N)


def injective_dimension(M: Representation) -> int:
    """id M = pd of the dual module over the opposite algebra."""
    return projective_dimension(dual(M))


def euler_form(M: Representation, N: Representation) -> int:
    """sum_m (-1)^m dim Ext^m(M, N), over the finite projective dimension of M."""
    return sum((-1) ** m * ext_dim(M, N, m) for m in range(projective_dimension(M) + 1))


# summands ----------------------------------------------------------------------


def projective_summand_vertices(M: Representation) -> list:
    """Vertices v such that e_v A is a direct summand of M.

    A map g: M -> e_v A is onto iff it reaches the trivial path, i.e. g_v != 0,
    and an epimorphism onto a projective splits.
    """
    out = []
    for v in M.alg.vertices:
        if M.dim(v) == 0:
            continue
        P = projective(M.alg, v)
        k = M.alg.quiver.vindex[v]
        if any(not g[k].is_zero() for g in hom_space(M, P).basis):
            out.append(v)
    return out


def injective_summand_vertices(M: Representation) -> list:
    """Vertices v such that D(A e_v) is a direct summand of M (dual test)."""
    out = []
    for v in M.alg.vertices:
        if M.dim(v) == 0:
            continue
        I = injective(M.alg, v)
        k = M.alg.quiver.vindex[v]
        if any(not g[k].is_zero() for g in hom_space(I, M).basis):
            out.append(v)
    return out


def has_projective_summand(M) -> bool:
    return bool(projective_summand_vertices(M))


def has_injective_summand(M) -> bool:
    return bool(injective_summand_vertices(M))


# Auslander-Reiten translates ---------------------------------------------------


def _transpose_cokernel(M: Representation) -> Representation:
    """Tr M: cokernel of the transposed minimal presentation, over the opposite algebra."""
    pres = min_proj_presentation(M)
    return pres.map.transpose().cokernel()


def ar_translate_inverse(M: Representation) -> Representation:
    """tau^{-1} M = Tr D M.

    Refuses modules with a projective summand (the stated precondition) and
    modules with an injective summand, which tau^{-1} would silently drop.
    """
    if has_projective_summand(M):
        raise ProjectiveSummand(f"{M!r} has a projective direct summand")
    if has_injective_summand(M):
        raise InjectiveSummand(f"{M!r} has an injective direct summand")
    return _ar_inverse(M)


def _ar_inverse(M: Representation) -> Representation:
    return _transpose_cokernel(dual(M))


def ar_translate(M: Representation) -> Representation:
    """tau M = D Tr M; refuses projective summands, which tau would drop."""
    if has_projective_summand(M):
        raise ProjectiveSummand(f"{M!r} has a projective direct summand")
    return _ar(M)


def _ar(M: Representation) -> Representation:
    return dual(_transpose_cokernel(M))


# isomorphism and indecomposability ---------------------------------------------


def _small_coeffs(rng, k, field):
    return [field(rng.randint(-7, 7)) for _ in range(k)]


def _combine(basis, coeffs):
    out = None
    for c, g in zip(coeffs, basis):
        if not c:
            continue
        term = [m.scale(c) for m in g]
        out = term if out is None else [x + y for x, y in zip(out, term)]
    return out


def find_isomorphism(M: Representation, N: Representation, tries: int = 40, seed: int = 0):
    """An isomorphism M -> N as per-vertex matrices, or None.

    Random combinations from Hom(M, N); over F_p with a small Hom space every
    element is tried.
    """
    if M.alg is not N.alg or M.dims != N.dims:
        return None
    if M.is_zero():
        return tuple()
    H = hom_space(M, N)
    if H.dim == 0:
        return None
    F = M.field

    def invertible(g):
        return g is not None and all(determinant(m) for m in g if m.rows)

    for g in H.basis:
        if invertible(g):
            return g
    if F != QQ and F.p ** H.dim <= 4096:
        import itertools

        for coeffs in itertools.product(F.elements(), repeat=H.dim):
            g = _combine(H.basis, coeffs)
            if invertible(g):
                return tuple(g)
        return None
    rng = random.Random(seed)
    for _ in range(tries):
        g = _combine(H.basis, _small_coeffs(rng, H.dim, F))
        if invertible(g):
            return tuple(g)
    return None


def is_isomorphic(M: Representation, N: Representation) -> bool:
    return find_isomorphism(M, N) is not None


def _block(g) -> ExactMatrix:
    """An endomorphism as one block-diagonal matrix on the total space."""
    F = g[0].field if g else QQ
    n = sum(m.rows for m in g)
    rows = []
    off = 0
    for m in g:
        for r in m.entries:
            full = [F.zero] * n
            full[off : off + m.cols] = r
            rows.append(tuple(full))
        off += m.cols
    return ExactMatrix._raw(tuple(rows), F, n)


def _fitting_splits(phi: ExactMatrix) -> bool:
    """True when phi is neither nilpotent nor invertible (then M splits)."""
    n = phi.rows
    r = rank(phi ** n)
    return 0 < r < n


def _rational_roots(phi: ExactMatrix):
    """Eigenvalues in the base field found among small candidates."""
    F = phi.field
    n = phi.rows
    cands = F.elements() if F != QQ and F.p <= 101 else [F(x) for x in range(-6, 7)]
    for c in cands:
        shifted = phi - ExactMatrix.identity(n, F).scale(c)
        if rank(shifted) < n:
            yield c


def is_indecomposable(M: Representation, tries: int = 24, seed: int = 0) -> bool:
    """Bricks are indecomposable; otherwise search End(M) for a Fitting witness.

    A witness (an endomorphism neither nilpotent nor invertible) proves M
    decomposable.  If none is found the module is reported indecomposable,
    which is a heuristic outside the brick case.
    """
    if M.is_zero():
        return False
    H = hom_space(M, M)
    if H.dim == 1:
        return True
    F = M.field
    cands = [_block(g) for g in H.basis]
    rng = random.Random(seed)
    for _ in range(tries):
        g = _combine(H.basis, _small_coeffs(rng, H.dim, F))
        if g is not None:
            cands.append(_block(g))
    n = M.total_dim
    for phi in cands:
        if _fitting_splits(phi):
            return False
        for c in _rational_roots(phi):
            if _fitting_splits(phi - ExactMatrix.identity(n, F).scale(c)):
                return False
    return True


# tilting -----------------------------------------------------------------------


@dataclass
class TiltingReport:
    projective_dims: list
    ext_nonzero: list
    pairwise_non_isomorphic: bool
    indecomposable: list
    count_ok: bool

    @property
    def ok(self) -> bool:
        return (
            all(0 <= d <= 1 for d in self.projective_dims)
            and not self.ext_nonzero
            and self.pairwise_non_isomorphic
            and all(self.indecomposable)
            and self.count_ok
        )


def tilting_report(alg: BoundQuiverAlgebra, summands) -> TiltingReport:
    summands = list(summands)
    pds = [projective_dimension(T) for T in summands]
    bad = []
    for a, Ta in enumerate(summands):
        for b, Tb in enumerate(summands):
            if ext_dim(Ta, Tb, 1):
                bad.append((a, b))
    noniso = True
    for a in range(len(summands)):
        for b in range(a + 1, len(summands)):
            if is_isomorphic(summands[a], summands[b]):
                noniso = False
    indec = [is_indecomposable(T) for T in summands]
    return TiltingReport(pds, bad, noniso, indec, len(summands) == len(alg.vertices))


def is_tilting(alg: BoundQuiverAlgebra, summands) -> bool:
    """Classical tilting test.

    pd <= 1, Ext^1 vanishing between all summands, and n pairwise
    non-isomorphic indecomposable summands (n = number of vertices), which
    by Bongartz's lemma replaces the explicit coresolution of A.
    """
    return tilting_report(alg, summands).ok


def is_cotilting(alg: BoundQuiverAlgebra, summands) -> bool:
    """The dual test: id <= 1, Ext^1 vanishing, n pairwise non-isomorphic
    indecomposable summands."""
    rep = tilting_report(alg, summands)
    ids = [injective_dimension(T) for T in summands]
    return (
        all(0 <= d <= 1 for d in ids)
        and not rep.ext_nonzero
        and rep.pairwise_non_isomorphic
        and all(rep.indecomposable)
        and rep.count_ok
    )


def self_ext_vanishes(summands, max_degree: int = 2) -> bool:
    """Ext^m(T, T) = 0 for 1 <= m <= max_degree."""
    summands = list(summands)
    return all(
        ext_dim(Ta, Tb, m) == 0
        for m in range(1, max_degree + 1)
        for Ta in summands
        for Tb in summands
    )


def end_dims(summands) -> ExactMatrix:
    """Entry (a, b) is dim Hom(T_b, T_a), matching the Cartan convention
    dim e_a B e_b = dim Hom(e_b B, e_a B)."""
    summands = list(summands)
    return ExactMatrix([[hom_dim(Tb, Ta) for Tb in summands] for Ta in summands])


def dim_vector_matrix(summands) -> ExactMatrix:
    """Columns are the dimension vectors of the summands."""
    summands = list(summands)
    if not summands:
        return ExactMatrix.zeros(0, 0)
    return ExactMatrix.from_columns([T.dims for T in summands])
