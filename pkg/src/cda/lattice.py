"""Canonical bilinear lattices attached to symbols.

Conventions: vectors are columns and ``<x, y> = x^T G y``.  The Coxeter
transformation is then ``tau = -G^{-1} G^T``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import gcd, lcm

from gmpy2 import mpq

from .exactalg import (
    QQ,
    ExactMatrix,
    inverse,
    is_unimodular,
    signature_symmetric,
)


class NonIntegralCoxeter(ArithmeticError):
    pass


class NoConventionMatches(AssertionError):
    pass


class InconsistentDimensions(ValueError):
    pass


class InvalidSymbol(ValueError):
    pass


@dataclass(frozen=True)
class Arm:
    p: int
    e: int = 1
    f: int = 1

    def __post_init__(self):
        for name, lo in (("p", 2), ("e", 1), ("f", 1)):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < lo:
                raise InvalidSymbol(f"arm field {name}={v!r} must be an integer >= {lo}")

    @property
    def d(self) -> int:
        return self.e * self.f

    def key(self):
        return (self.p, self.e, self.f)


@dataclass(frozen=True, eq=False)
class Symbol:
    """Weights p_i with invariants e_i, f_i per arm and epsilon in {1, 2}.

    Arm order is kept (it fixes basis order) but equality and hashing use
    the arm multiset.
    """

    arms: tuple[Arm, ...]
    epsilon: int = 1

    def __post_init__(self):
        arms = tuple(a if isinstance(a, Arm) else Arm(*a) for a in self.arms)
        object.__setattr__(self, "arms", arms)
        if not arms:
            raise InvalidSymbol("a symbol needs at least one arm")
        if self.epsilon not in (1, 2):
            raise InvalidSymbol(f"epsilon must be 1 or 2, got {self.epsilon!r}")

    @classmethod
    def simply_laced(cls, weights, epsilon: int = 1) -> "Symbol":
        return cls(tuple(Arm(p) for p in weights), epsilon)

    @property
    def t(self) -> int:
        return len(self.arms)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(a.p for a in self.arms)

    @property
    def d(self) -> tuple[int, ...]:
        return tuple(a.d for a in self.arms)

    @property
    def rank(self) -> int:
        return 2 + sum(a.p - 1 for a in self.arms)

    @property
    def condition6(self) -> bool:
        return self.epsilon * sum(self.d) >= 2

    def _multiset(self):
        return tuple(sorted(a.key() for a in self.arms))

    def __eq__(self, other):
        if not isinstance(other, Symbol):
            return NotImplemented
        return self.epsilon == other.epsilon and self._multiset() == other._multiset()

    def __hash__(self):
        return hash((self.epsilon, self._multiset()))

    def __str__(self):
        ps = " ".join(str(a.p) for a in self.arms)
        ds = " ".join(str(a.d) for a in self.arms)
        fs = " ".join(str(a.f) for a in self.arms)
        return f"({ps} | {ds} | {fs} ; eps={self.epsilon})"

    def to_json(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "arms": [{"p": a.p, "e": a.e, "f": a.f} for a in self.arms],
        }

    @classmethod
    def from_json(cls, obj) -> "Symbol":
        if isinstance(obj, str):
            obj = json.loads(obj)
        if not isinstance(obj, dict) or "arms" not in obj:
            raise InvalidSymbol("symbol JSON needs an 'arms' list")
        arms = []
        for a in obj["arms"]:
            if not isinstance(a, dict) or "p" not in a:
                raise InvalidSymbol(f"bad arm entry {a!r}")
            extra = set(a) - {"p", "e", "f", "d"}
            if extra:
                raise InvalidSymbol(f"unknown arm keys {sorted(extra)}")
            arm = Arm(a["p"], a.get("e", 1), a.get("f", 1))
            if "d" in a and a["d"] != arm.d:
                raise InvalidSymbol(f"arm {a!r}: d must equal e*f")
            arms.append(arm)
        return cls(tuple(arms), obj.get("epsilon", 1))


class RepType(enum.Enum):
    DOMESTIC = "domestic"
    TUBULAR = "tubular"
    WILD = "wild"


def kappa(s: Symbol) -> int:
    eps = s.epsilon
    return lcm(*(a.e // gcd(a.e, eps * a.f) for a in s.arms))


def delta(s: Symbol) -> int:
    p = lcm(*s.weights)
    val = p * (sum(Fraction(a.d) * (1 - Fraction(1, a.p)) for a in s.arms) - Fraction(2, s.epsilon))
    assert val.denominator == 1, val
    return int(val)


def rep_type(s: Symbol) -> RepType:
    dl = delta(s)
    if dl < 0:
        return RepType.DOMESTIC
    if dl == 0:
        return RepType.TUBULAR
    return RepType.WILD


@dataclass(frozen=True)
class BilinearLattice:
    symbol: Symbol
    gram: ExactMatrix
    basis_labels: tuple[str, ...] = field(default=())

    @property
    def rank(self) -> int:
        return self.gram.rows

    def index(self, label: str) -> int:
        return self.basis_labels.index(label)

    def unit(self, label: str) -> tuple:
        v = [mpq(0)] * self.rank
        v[self.index(label)] = mpq(1)
        return tuple(v)

    def form(self, x, y):
        return sum((a * g * b for a, row in zip(x, self.gram.entries) for g, b in zip(row, y)), mpq(0))

    def to_json(self) -> dict:
        return {
            "symbol": self.symbol.to_json(),
            "basis_labels": list(self.basis_labels),
            "gram": self.gram.to_json(),
        }


def s_label(i: int, j: int) -> str:
    """Label of s_i^{(j)}; i is 1-based, j is 0-based."""
    return f"s{i}^({j})"


def s_basis_labels(s: Symbol) -> tuple[str, ...]:
    labels = ["a", "w"]
    for i, arm in enumerate(s.arms, 1):
        labels.extend(s_label(i, j) for j in range(arm.p - 1))
    return tuple(labels)


def gram_s_basis(s: Symbol) -> BilinearLattice:
    labels = s_basis_labels(s)
    idx = {l: k for k, l in enumerate(labels)}
    n = len(labels)
    k, eps = kappa(s), s.epsilon
    g = [[0] * n for _ in range(n)]
    g[0][0] = k
    g[0][1] = k * eps
    g[1][0] = -k * eps
    for i, arm in enumerate(s.arms, 1):
        diag = Fraction(k * eps * arm.f, arm.e)
        assert diag.denominator == 1
        diag = int(diag)
        g[0][idx[s_label(i, 0)]] = k * eps * arm.f
        for j in range(arm.p - 1):
            c = idx[s_label(i, j)]
            g[c][c] = diag
            if j:
                g[idx[s_label(i, j - 1)]][c] = -diag
    return BilinearLattice(s, ExactMatrix(g), labels)


def coxeter_matrix(L: BilinearLattice) -> ExactMatrix:
    g = L.gram
    tau = -(inverse(g) @ g.T)
    if not tau.is_integral():
        raise NonIntegralCoxeter("Coxeter matrix has a non-integral entry")
    return tau


def _unit(n: int, k: int) -> tuple:
    v = [mpq(0)] * n
    v[k] = mpq(1)
    return tuple(v)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _scale(c, v):
    return tuple(c * a for a in v)


@lru_cache(maxsize=4096)
def _lattice_data(arms, epsilon):
    # keyed on the ordered arms: the multiset equality of Symbol would mix up basis orders
    L = gram_s_basis(Symbol(arms, epsilon))
    tau = coxeter_matrix(L)
    return L, tau, inverse(tau)


# index conventions for a_i(j) and b_i(j): j runs over 1..p-1 or over 0..p-2,
# tried in this order
CONVENTIONS = {"1..p-1": lambda p: range(1, p), "0..p-2": lambda p: range(0, p - 1)}


def _arm_sums(L: BilinearLattice, tau_inv: ExactMatrix, i: int, js) -> list[tuple]:
    """sum_{l=1}^{j} tau^{-l} s_i for each j in js."""
    js = list(js)
    v = L.unit(s_label(i, 0))
    acc = tuple(mpq(0) for _ in v)
    partial = {0: acc}
    for j in range(1, max(js, default=0) + 1):
        v = tau_inv.apply(v)
        acc = _add(acc, v)
        partial[j] = acc
    return [partial[j] for j in js]


def canonical_basis_change(s: Symbol, convention: str) -> ExactMatrix:
    """Columns (in s-basis coordinates): a, a_i(j), w + eps*a."""
    L, _, tau_inv = _lattice_data(s.arms, s.epsilon)
    eps = s.epsilon
    a, w = L.unit("a"), L.unit("w")
    cols = [a]
    for i, arm in enumerate(s.arms, 1):
        for v in _arm_sums(L, tau_inv, i, CONVENTIONS[convention](arm.p)):
            cols.append(_add(v, _scale(eps * arm.f, a)))
    cols.append(_add(w, _scale(eps, a)))
    return ExactMatrix.from_columns(cols)


def opposite_basis_change(s: Symbol, convention: str) -> ExactMatrix:
    """Columns: eps*a - w, b_i(j), a."""
    L, _, tau_inv = _lattice_data(s.arms, s.epsilon)
    eps = s.epsilon
    a, w = L.unit("a"), L.unit("w")
    ea_w = _add(_scale(eps, a), _scale(-1, w))
    cols = [ea_w]
    for i, arm in enumerate(s.arms, 1):
        for v in _arm_sums(L, tau_inv, i, CONVENTIONS[convention](arm.p)):
            cols.append(_add(v, _scale(arm.f, ea_w)))
    cols.append(a)
    return ExactMatrix.from_columns(cols)


def _block_display(s: Symbol, corner_first, first_row_arm, last_col_arm, corner_last) -> ExactMatrix:
    k, eps = kappa(s), s.epsilon
    n = s.rank
    g = [[Fraction(0)] * n for _ in range(n)]
    g[0][0] = corner_first
    g[0][n - 1] = 2 * k * eps
    g[n - 1][n - 1] = corner_last
    pos = 1
    for arm in s.arms:
        m = arm.p - 1
        diag = Fraction(k * eps * arm.f, arm.e)
        for r in range(m):
            g[0][pos + r] = first_row_arm(arm)
            g[pos + r][n - 1] = last_col_arm(arm)
            for c in range(r, m):
                g[pos + r][pos + c] = diag
        pos += m
    return ExactMatrix(g)


def canonical_display(s: Symbol) -> ExactMatrix:
    """The displayed Gram matrix of the canonical basis, written out entry by entry."""
    k, eps = kappa(s), s.epsilon
    return _block_display(
        s, k, lambda a: k * eps * a.f, lambda a: k * eps * eps * a.f, k * eps * eps
    )


def opposite_display(s: Symbol) -> ExactMatrix:
    k, eps = kappa(s), s.epsilon
    return _block_display(
        s, k * eps * eps, lambda a: k * eps * eps * a.f, lambda a: k * eps * a.f, k
    )


def _match_convention(s: Symbol, change, display) -> tuple[ExactMatrix, str, ExactMatrix]:
    g = _lattice_data(s.arms, s.epsilon)[0].gram
    target = display(s)
    for name in CONVENTIONS:
        q = change(s, name)
        gram = q.T @ g @ q
        if gram == target:
            return gram, name, q
    raise NoConventionMatches(f"no index convention reproduces the display for {s}")


def gram_canonical_basis_with_convention(s: Symbol) -> tuple[ExactMatrix, str, ExactMatrix]:
    """(Gram matrix, matching convention, base change) for the canonical basis."""
    return _match_convention(s, canonical_basis_change, canonical_display)


def gram_opposite_basis_with_convention(s: Symbol) -> tuple[ExactMatrix, str, ExactMatrix]:
    return _match_convention(s, opposite_basis_change, opposite_display)


def gram_canonical_basis(s: Symbol) -> ExactMatrix:
    return gram_canonical_basis_with_convention(s)[0]


def gram_opposite_basis(s: Symbol) -> ExactMatrix:
    return gram_opposite_basis_with_convention(s)[0]


def signature(s: Symbol) -> tuple[int, int, int]:
    g = gram_s_basis(s).gram
    return signature_symmetric(g + g.T)


def expected_signature(s: Symbol) -> tuple[int, int, int]:
    """Row of the representation-type table selected by the sign of delta."""
    n = s.rank
    t = rep_type(s)
    if t is RepType.DOMESTIC:
        return (n - 1, 1, 0)
    if t is RepType.TUBULAR:
        return (n - 2, 2, 0)
    return (n - 2, 1, 1)


def tau_periodicity(L: BilinearLattice, tau: ExactMatrix | None = None) -> list[tuple[str, bool]]:
    """Checks tau s_i^(j) = s_i^(j+1) and tau^{p_i} s_i = s_i on every arm."""
    tau = coxeter_matrix(L) if tau is None else tau
    out = []
    for i, arm in enumerate(L.symbol.arms, 1):
        v = L.unit(s_label(i, 0))
        shifts_ok = True
        for j in range(arm.p - 2):
            v = tau.apply(v)
            shifts_ok &= v == L.unit(s_label(i, j + 1))
        out.append((f"arm{i}: tau s^(j) = s^(j+1)", shifts_ok))
        v = L.unit(s_label(i, 0))
        for _ in range(arm.p):
            v = tau.apply(v)
        out.append((f"arm{i}: tau^{arm.p} s = s", v == L.unit(s_label(i, 0))))
    return out


def coxeter_identity_holds(L: BilinearLattice, tau: ExactMatrix | None = None) -> bool:
    """<y, x> = -<x, tau y> for every pair of basis vectors, i.e. G^T = -G tau."""
    tau = coxeter_matrix(L) if tau is None else tau
    g = L.gram
    return g.T == -(g @ tau)


def _as_fraction(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point epsilon is not accepted")
    return Fraction(x)


def symbol_from_data(eps_raw, points, weights) -> Symbol:
    """Symbol from bimodule dimension data.

    ``points`` holds (dim_D U, dim U_F, dim_D V, dim V_G) per exceptional point.
    Regular points satisfy dim_D V = eps * dim_D U and dim U_F = eps * dim V_G.
    """
    eps = _as_fraction(eps_raw)
    if eps not in (Fraction(1, 2), 1, 2):
        raise InconsistentDimensions(f"epsilon must be 1/2, 1 or 2, got {eps}")
    if len(points) != len(weights):
        raise InconsistentDimensions("one weight per exceptional point is required")
    arms = []
    for k, (du, uf, dv, vg) in enumerate(points):
        if dv != eps * du or uf != eps * vg:
            raise InconsistentDimensions(
                f"point {k}: dims (DU={du}, UF={uf}, DV={dv}, VG={vg}) are not regular for eps={eps}"
            )
        if eps == Fraction(1, 2):
            e, f = dv, uf
        else:
            e, f = du, vg
        arms.append(Arm(int(weights[k]), int(e), int(f)))
    return Symbol(tuple(arms), 2 if eps == Fraction(1, 2) else int(eps))


def _arm_types(max_extra: int, max_d: int):
    for p in range(2, max_extra + 2):
        for e in range(1, max_d + 1):
            for f in range(1, max_d // e + 1):
                yield Arm(p, e, f)


def enumerate_symbols(max_rank: int, max_d: int) -> list[Symbol]:
    """All symbols up to arm order with rank <= max_rank and d_i <= max_d.

    Ordered by rank, then epsilon, then the sorted arm tuple.
    """
    budget = max_rank - 2
    if budget < 1 or max_d < 1:
        return []
    types = sorted(_arm_types(budget, max_d), key=Arm.key)
    found = []

    def grow(start, left, acc):
        if acc:
            found.append(tuple(acc))
        for k in range(start, len(types)):
            a = types[k]
            if a.p - 1 <= left:
                acc.append(a)
                grow(k, left - (a.p - 1), acc)
                acc.pop()

    grow(0, budget, [])
    out = [Symbol(arms, eps) for arms in found for eps in (1, 2)]
    out.sort(key=lambda s: (s.rank, s.epsilon, tuple(a.key() for a in s.arms)))
    return out


def lattice_report(s: Symbol) -> dict:
    """Everything the CLI prints for one symbol, plus pass/fail checks."""
    L = gram_s_basis(s)
    tau = coxeter_matrix(L)
    gc, conv_c, qc = gram_canonical_basis_with_convention(s)
    go, conv_o, qo = gram_opposite_basis_with_convention(s)
    sig = signature(s)
    checks = [("coxeter identity", coxeter_identity_holds(L, tau))]
    checks += tau_periodicity(L, tau)
    checks.append(("signature matches type table", sig == expected_signature(s)))
    checks.append(("canonical base change unimodular", qc.is_integral() and is_unimodular(qc)))
    checks.append(("opposite base change unimodular", qo.is_integral() and is_unimodular(qo)))
    return {
        "symbol": s.to_json(),
        "rank": s.rank,
        "kappa": kappa(s),
        "delta": delta(s),
        "rep_type": rep_type(s).value,
        "signature": list(sig),
        "condition6": s.condition6,
        "index_convention": {"canonical": conv_c, "opposite": conv_o},
        "matrices": {
            "gram_s_basis": dict(L.gram.to_json(), basis_labels=list(L.basis_labels)),
            "gram_canonical_basis": gc.to_json(),
            "gram_opposite_basis": go.to_json(),
            "coxeter": tau.to_json(),
        },
        "checks": checks,
    }
