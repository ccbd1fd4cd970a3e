"""Dimension-level presentations of the squid, Coxeter-Dynkin and canonical algebras.

All dimensions are exact rationals in units of dim_k F.  ``hom_dims[i][j]`` is
dim_k e_i X e_j, so with right modules Hom(e_i X, e_j X) = e_j X e_i and the
Euler form on projectives is ``hom_dims`` transposed.

Vertex orders follow the matrix displays:
  squid          e1(p1-1) .. e1(1), ..., et(1), F, G
  Coxeter-Dynkin F, e1(p1-1) .. e1(1), ..., G
  canonical      F, c1(1) .. c1(p1-1), ..., G
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg import QQ, ExactMatrix, SingularMatrix, inverse, is_unimodular
from .lattice import Symbol, kappa, opposite_basis_change, gram_s_basis


class Condition6Violated(ValueError):
    pass


class SingularCartan(ArithmeticError):
    pass


class SizeMismatch(ValueError):
    pass


SQUID, CD, CANONICAL = "squid", "cd", "canonical"


def arm_label(i: int, j: int, prefix: str = "e") -> str:
    return f"{prefix}{i}({j})"


def squid_labels(weights) -> list[str]:
    out = []
    for i, p in enumerate(weights, 1):
        out.extend(arm_label(i, j) for j in range(p - 1, 0, -1))
    return out + ["F", "G"]


def cd_labels(weights) -> list[str]:
    out = ["F"]
    for i, p in enumerate(weights, 1):
        out.extend(arm_label(i, j) for j in range(p - 1, 0, -1))
    return out + ["G"]


def canonical_labels(weights) -> list[str]:
    out = ["F"]
    for i, p in enumerate(weights, 1):
        out.extend(arm_label(i, j, "c") for j in range(1, p))
    return out + ["G"]


@dataclass(frozen=True)
class DimPresentation:
    algebra: str
    vertex_labels: tuple[str, ...]
    vertex_dims: tuple
    hom_dims: ExactMatrix

    def index(self, label: str) -> int:
        return self.vertex_labels.index(label)

    def entry(self, a: str, b: str):
        return self.hom_dims[self.index(a), self.index(b)]

    def euler_projective(self) -> ExactMatrix:
        """Gram matrix <P_i, P_j> = dim Hom(P_i, P_j) = hom_dims[j][i]."""
        return self.hom_dims.T

    def to_json(self) -> dict:
        out = dict(self.hom_dims.to_json())
        out["algebra"] = self.algebra
        out["vertex_labels"] = list(self.vertex_labels)
        out["vertex_dims"] = [str(x) for x in self.vertex_dims]
        return out


def _build(tag, labels, entries: dict, vdims: dict) -> DimPresentation:
    idx = {l: k for k, l in enumerate(labels)}
    n = len(labels)
    g = [[Fraction(0)] * n for _ in range(n)]
    for (a, b), v in entries.items():
        g[idx[a]][idx[b]] = Fraction(v)
    vd = tuple(QQ(Fraction(vdims[l])) for l in labels)
    return DimPresentation(tag, tuple(labels), vd, ExactMatrix(g))


def _arm_dims(s: Symbol, prefix="e"):
    eps = s.epsilon
    for i, arm in enumerate(s.arms, 1):
        D = Fraction(eps * arm.f, arm.e)
        yield i, arm, D, eps * arm.f, eps * eps * arm.f


def cartan_squid(s: Symbol) -> DimPresentation:
    eps = s.epsilon
    ent, vd = {}, {"F": 1, "G": eps * eps}
    for i, arm, D, U, V in _arm_dims(s):
        for j in range(1, arm.p):
            a = arm_label(i, j)
            vd[a] = D
            for jj in range(1, j + 1):
                ent[a, arm_label(i, jj)] = D
            ent[a, "F"] = U
            ent[a, "G"] = V
    ent["F", "F"] = 1
    ent["F", "G"] = 2 * eps
    ent["G", "G"] = eps * eps
    return _build(SQUID, squid_labels(s.weights), ent, vd)


def w_dim(s: Symbol) -> int:
    return s.epsilon ** 2 * sum(s.d) - 2 * s.epsilon


def check_condition6(points) -> bool:
    """points: (dim_D U, dim U_F) per exceptional point."""
    return sum(du * uf for du, uf in points) >= 2


def cartan_cd(s: Symbol) -> DimPresentation:
    if not s.condition6:
        raise Condition6Violated(f"eps * sum(d_i) < 2 for {s}")
    eps = s.epsilon
    ent, vd = {}, {"F": 1, "G": eps * eps}
    for i, arm, D, U, V in _arm_dims(s):
        ent["F", arm_label(i, 1)] = U
        for j in range(1, arm.p):
            a = arm_label(i, j)
            vd[a] = D
            for jj in range(1, j + 1):
                ent[a, arm_label(i, jj)] = D
            ent[a, "G"] = V
    ent["F", "F"] = 1
    ent["F", "G"] = w_dim(s)
    ent["G", "G"] = eps * eps
    return _build(CD, cd_labels(s.weights), ent, vd)


def cartan_canonical(s: Symbol) -> DimPresentation:
    eps = s.epsilon
    ent, vd = {}, {"F": 1, "G": eps * eps}
    for i, arm, D, U, V in _arm_dims(s):
        for j in range(1, arm.p):
            c = arm_label(i, j, "c")
            vd[c] = D
            ent["F", c] = U
            ent[c, "G"] = V
            for jj in range(j, arm.p):
                ent[c, arm_label(i, jj, "c")] = D
    ent["F", "F"] = 1
    ent["F", "G"] = 2 * eps
    ent["G", "G"] = eps * eps
    return _build(CANONICAL, canonical_labels(s.weights), ent, vd)


def multiplicity_matrix(p: DimPresentation) -> ExactMatrix:
    """M[i][j] = [P_i : S_j] = hom_dims[i][j] / vertex_dims[j]."""
    h = p.hom_dims
    return ExactMatrix._raw(
        tuple(tuple(x / d for x, d in zip(row, p.vertex_dims)) for row in h.entries), QQ, h.cols
    )


def gram_simple_basis(p: DimPresentation) -> ExactMatrix:
    """Euler form on the simples: M^{-1} G_P M^{-T}."""
    m = multiplicity_matrix(p)
    try:
        mi = inverse(m)
    except SingularMatrix as exc:
        raise SingularCartan(str(exc)) from None
    return mi @ p.euler_projective() @ mi.T


def lemma_simple_table(s: Symbol) -> ExactMatrix:
    """The non-vanishing Euler values on simples of B as given by the reference value table.

    Written out in the Coxeter-Dynkin vertex order; every unlisted pair is 0.
    """
    eps = s.epsilon
    labels = cd_labels(s.weights)
    idx = {l: k for k, l in enumerate(labels)}
    n = len(labels)
    g = [[Fraction(0)] * n for _ in range(n)]
    F, G = idx["F"], idx["G"]
    g[F][F] = 1
    g[F][G] = 2 * eps
    g[G][G] = eps * eps
    for i, arm, D, U, V in _arm_dims(s):
        g[F][idx[arm_label(i, 1)]] = -eps * arm.f
        for j in range(1, arm.p):
            a = idx[arm_label(i, j)]
            g[a][a] = D
            g[a][G] = eps * eps * arm.f
            if j + 1 < arm.p:
                g[idx[arm_label(i, j + 1)]][a] = -D
    return ExactMatrix(g)


def corrected_simple_table(s: Symbol) -> ExactMatrix:
    """The reference value table with the arm-to-G values the computation actually gives.

    <S_i(1), S_G> = -eps^2 f_i and <S_i(j), S_G> = 0 for j >= 2.
    """
    eps = s.epsilon
    g = [list(r) for r in lemma_simple_table(s).entries]
    labels = cd_labels(s.weights)
    idx = {l: k for k, l in enumerate(labels)}
    G = idx["G"]
    for i, arm in enumerate(s.arms, 1):
        for j in range(1, arm.p):
            g[idx[arm_label(i, j)]][G] = -eps * eps * arm.f if j == 1 else 0
    return ExactMatrix(g)


def table_mismatches(computed: ExactMatrix, expected: ExactMatrix, labels) -> list[str]:
    out = []
    for a in range(computed.rows):
        for b in range(computed.cols):
            if computed[a, b] != expected[a, b]:
                out.append(f"<S_{labels[a]},S_{labels[b]}>: computed {computed[a, b]}, listed {expected[a, b]}")
    return out


def congruence_check(g1: ExactMatrix, g2: ExactMatrix, base_change: ExactMatrix) -> bool:
    if not (g1.is_square() and g2.is_square() and base_change.is_square()):
        raise SizeMismatch("congruence needs square matrices")
    if not (g1.rows == g2.rows == base_change.rows):
        raise SizeMismatch(f"sizes {g1.rows}, {g2.rows}, {base_change.rows} differ")
    if not base_change.is_integral() or not is_unimodular(base_change):
        return False
    return base_change.T @ g1 @ base_change == g2


# explicit base changes between projective bases -----------------------------


def _unit(n, k):
    return tuple(QQ.one if r == k else QQ.zero for r in range(n))


def squid_to_cd_base_change(s: Symbol) -> ExactMatrix:
    """Columns are the classes of the APR tilting summands in squid projective
    coordinates, ordered like the Coxeter-Dynkin vertices.

    The F slot carries [X] = -[P_F] + sum_i e_i [P_i(1)].
    """
    A = squid_labels(s.weights)
    ia = {l: k for k, l in enumerate(A)}
    n = len(A)
    cols = []
    for l in cd_labels(s.weights):
        if l == "F":
            v = [QQ.zero] * n
            v[ia["F"]] = QQ(-1)
            for i, arm in enumerate(s.arms, 1):
                v[ia[arm_label(i, 1)]] += arm.e
            cols.append(tuple(v))
        else:
            cols.append(_unit(n, ia[l]))
    return ExactMatrix.from_columns(cols)


def squid_to_canonical_base_change(s: Symbol) -> ExactMatrix:
    """Columns are the classes of the summands D(Ae_G), tau^j D(Ae_i(j)), D(Ae_F)
    in squid projective coordinates, ordered like the canonical vertices with
    c_i(j) matched to tau^j D(Ae_i(j)).

    Classes of injectives are -Phi[P_v] with Phi the Coxeter matrix; the arm
    summands live over the algebra without G, whose Coxeter matrix shifts
    them first.
    """
    A = squid_labels(s.weights)
    ia = {l: k for k, l in enumerate(A)}
    n = len(A)
    gp = cartan_squid(s).euler_projective()
    phi = -(inverse(gp) @ gp.T)
    h0 = cartan_squid(s).hom_dims.submatrix(range(n - 1), range(n - 1))
    phi0_inv = inverse(-(inverse(h0) @ h0.T))
    inj = [phi.apply(_unit(n, k)) for k in range(n)]
    inj = [tuple(-x for x in v) for v in inj]
    cols = []
    for l in canonical_labels(s.weights):
        if l in ("F", "G"):
            cols.append(inj[ia[l]])
            continue
        i, j = l[1:].split("(")
        i, j = int(i), int(j[:-1])
        c = _unit(n - 1, ia[arm_label(i, j)])
        for _ in range(j):
            c = phi0_inv.apply(c)
        v = [QQ.zero] * n
        for k, ck in enumerate(c):
            if ck:
                v = [x + ck * y for x, y in zip(v, inj[k])]
        cols.append(tuple(v))
    return ExactMatrix.from_columns(cols)


def lattice_to_canonical_base_change(s: Symbol) -> ExactMatrix:
    """Base change from the s-basis of the lattice to the projectives of C.

    The basis (eps*a - w, b_i(j), a) lists the right projectives of C in the
    order G, c_i(p_i-1) .. c_i(1), F; the columns are reordered to C's order.
    """
    q = opposite_basis_change(s, "1..p-1")
    order = []  # position in the opposite basis for each canonical vertex
    pos = {}
    k = 1
    for i, arm in enumerate(s.arms, 1):
        for j in range(1, arm.p):
            pos[arm_label(i, arm.p - j, "c")] = k
            k += 1
    pos["G"] = 0
    pos["F"] = k
    for l in canonical_labels(s.weights):
        order.append(pos[l])
    return q.submatrix(range(q.rows), order)


def scaled_projective_gram(p: DimPresentation, s: Symbol) -> ExactMatrix:
    """kappa times the projective Euler matrix; integral for every symbol."""
    return p.euler_projective().scale(kappa(s))


def congruence_report(s: Symbol) -> list[tuple[str, bool]]:
    """Pairwise congruences lattice ~ C ~ A ~ B via the explicit base changes."""
    ga = scaled_projective_gram(cartan_squid(s), s)
    gc = scaled_projective_gram(cartan_canonical(s), s)
    gs = gram_s_basis(s).gram
    out = [
        ("lattice ~ canonical", congruence_check(gs, gc, lattice_to_canonical_base_change(s))),
        ("squid ~ canonical", congruence_check(ga, gc, squid_to_canonical_base_change(s))),
    ]
    if s.condition6:
        gb = scaled_projective_gram(cartan_cd(s), s)
        out.append(("squid ~ coxeter-dynkin", congruence_check(ga, gb, squid_to_cd_base_change(s))))
    return out
