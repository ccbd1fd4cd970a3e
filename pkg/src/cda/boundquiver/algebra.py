"""Quivers with relations and their path algebras over QQ or F_p.

Paths compose left to right: the path ``(a, b)`` means first ``a`` then ``b``.
A path is stored as the tuple of its arrow names; trivial paths are the empty
tuple together with their vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..exactalg import QQ, ExactMatrix, _rref_inplace


class InvalidQuiver(ValueError):
    pass


class InvalidRelation(ValueError):
    pass


class AlgebraMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidQuiver("vertex labels must be unique")
        arrs = []
        for a in arrows:
            a = a if isinstance(a, Arrow) else Arrow(*a)
            if a.source not in self.vertices or a.target not in self.vertices:
                raise InvalidQuiver(f"arrow {a.name} has an unknown endpoint")
            arrs.append(a)
        self.arrows = tuple(arrs)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise InvalidQuiver("arrow names must be unique")
        self.vindex = {v: k for k, v in enumerate(self.vertices)}
        self.aindex = {a.name: k for k, a in enumerate(self.arrows)}
        self._check_acyclic()

    def _check_acyclic(self):
        out = {v: [a.target for a in self.arrows if a.source == v] for v in self.vertices}
        state = {}

        def visit(v):
            state[v] = 1
            for w in out[v]:
                if state.get(w) == 1:
                    raise InvalidQuiver("quiver has an oriented cycle")
                if w not in state:
                    visit(w)
            state[v] = 2

        for v in self.vertices:
            if v not in state:
                visit(v)

    def arrow(self, name: str) -> Arrow:
        return self.arrows[self.aindex[name]]

    def arrows_from(self, v):
        return [a for a in self.arrows if a.source == v]

    def arrows_into(self, v):
        return [a for a in self.arrows if a.target == v]

    def is_sink(self, v) -> bool:
        return not self.arrows_from(v)

    def is_source(self, v) -> bool:
        return not self.arrows_into(v)

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [Arrow(a.name, a.target, a.source) for a in self.arrows])

    def path_ends(self, v, path: tuple) -> tuple:
        """(source, target) of a path; ``v`` is used for the trivial path."""
        if not path:
            return v, v
        first, last = self.arrow(path[0]), self.arrow(path[-1])
        for x, y in zip(path, path[1:]):
            if self.arrow(x).target != self.arrow(y).source:
                raise InvalidRelation(f"arrows {x}, {y} do not compose")
        return first.source, last.target

    def all_paths(self) -> dict:
        """Every path, keyed by (source, target). Finite since acyclic."""
        out = {(u, v): [] for u in self.vertices for v in self.vertices}
        for u in self.vertices:
            stack = [(u, ())]
            while stack:
                v, p = stack.pop()
                out[u, v].append(p)
                for a in self.arrows_from(v):
                    stack.append((a.target, p + (a.name,)))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and self.vertices == other.vertices
            and self.arrows == other.arrows
        )

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        arr = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        return f"Quiver({list(self.vertices)}; {arr})"


class Relation:
    """A linear combination of parallel paths of length at least two."""

    def __init__(self, terms, field=QQ):
        self.terms = tuple((field(c), tuple(p)) for c, p in terms if field(c))
        if not self.terms:
            raise InvalidRelation("relation has no nonzero term")

    def ends(self, quiver: Quiver):
        ends = {quiver.path_ends(None, p) for _, p in self.terms}
        if len(ends) != 1:
            raise InvalidRelation("relation paths are not parallel")
        if any(len(p) < 2 for _, p in self.terms):
            raise InvalidRelation("relation paths must have length at least 2")
        return ends.pop()

    def reversed(self) -> "Relation":
        r = Relation.__new__(Relation)
        r.terms = tuple((c, tuple(reversed(p))) for c, p in self.terms)
        return r

    def __repr__(self):
        return " + ".join(f"{c}*{'.'.join(p)}" for c, p in self.terms) + " = 0"


def _path_order(p):
    # longer paths first so that reduction replaces them by shorter ones
    return (-len(p), p)


class BoundQuiverAlgebra:
    """kQ/I for an acyclic quiver Q and the ideal I generated by ``relations``."""

    def __init__(self, quiver: Quiver, relations=(), field=QQ, name: str = ""):
        self.quiver = quiver
        self.field = field
        self.relations = tuple(relations)
        self.name = name
        self.info = {}
        self._opposite = None
        for r in self.relations:
            r.ends(quiver)
        self._compute_basis()

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def arrows(self):
        return self.quiver.arrows

    def _compute_basis(self):
        Q = self.quiver
        F = self.field
        paths = Q.all_paths()
        for key in paths:
            paths[key].sort(key=_path_order)
        rel_ends = [(r, r.ends(Q)) for r in self.relations]
        self._basis = {}
        self._reduce = {}
        for (u, v), plist in paths.items():
            pos = {p: k for k, p in enumerate(plist)}
            rows = []
            for r, (s, t) in rel_ends:
                for left in paths[u, s]:
                    for right in paths[t, v]:
                        row = [F.zero] * len(plist)
                        for c, p in r.terms:
                            k = pos[left + p + right]
                            row[k] = row[k] + c
                        rows.append(row)
            pivots = _rref_inplace(rows, len(plist)) if rows else ()
            pivot_row = {c: i for i, c in enumerate(pivots)}
            basis_idx = [k for k in range(len(plist)) if k not in pivot_row]
            # present the basis shortest first
            basis_idx.sort(key=lambda k: (len(plist[k]), plist[k]))
            basis = [plist[k] for k in basis_idx]
            self._basis[u, v] = tuple(basis)
            bpos = {k: n for n, k in enumerate(basis_idx)}
            for k, p in enumerate(plist):
                vec = [F.zero] * len(basis)
                if k in bpos:
                    vec[bpos[k]] = F.one
                else:
                    row = rows[pivot_row[k]]
                    for kk, n in bpos.items():
                        if row[kk]:
                            vec[n] = -row[kk]
                self._reduce[u, v, p] = tuple(vec)
        self._mult_cache = {}
        self._right_cache = {}

    # basis access ---------------------------------------------------------

    def basis(self, u, v) -> tuple:
        """Basis paths of e_u A e_v (paths from u to v modulo relations)."""
        return self._basis[u, v]

    def dim(self, u, v) -> int:
        return len(self._basis[u, v])

    @cached_property
    def dimension(self) -> int:
        return sum(len(b) for b in self._basis.values())

    def cartan(self) -> ExactMatrix:
        """Entry (u, v) is dim e_u A e_v, vertices in quiver order."""
        V = self.vertices
        return ExactMatrix([[self.dim(u, v) for v in V] for u in V])

    def reduce(self, u, v, path: tuple) -> tuple:
        """Coordinates of a path from u to v in the basis of e_u A e_v."""
        return self._reduce[u, v, tuple(path)]

    def reduce_combination(self, u, v, terms) -> tuple:
        out = [self.field.zero] * self.dim(u, v)
        for c, p in terms:
            if c:
                for k, x in enumerate(self.reduce(u, v, p)):
                    if x:
                        out[k] = out[k] + c * x
        return tuple(out)

    def element(self, u, v, terms) -> tuple:
        """Element of e_u A e_v from (coefficient, path) pairs."""
        return self.reduce_combination(u, v, [(self.field(c), tuple(p)) for c, p in terms])

    def _mult_table(self, u, v, w):
        key = (u, v, w)
        t = self._mult_cache.get(key)
        if t is None:
            t = [
                [self.reduce(u, w, p + q) for q in self.basis(v, w)]
                for p in self.basis(u, v)
            ]
            self._mult_cache[key] = t
        return t

    def multiply(self, u, v, w, x, y) -> tuple:
        """x in e_u A e_v times y in e_v A e_w."""
        table = self._mult_table(u, v, w)
        out = [self.field.zero] * self.dim(u, w)
        for i, a in enumerate(x):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, z in enumerate(row[j]):
                    if z:
                        out[k] = out[k] + ab * z
        return tuple(out)

    def left_multiplication(self, u, v, w, x) -> ExactMatrix:
        """Matrix of y -> x*y from e_v A e_w to e_u A e_w, for x in e_u A e_v."""
        cols = []
        for j in range(self.dim(v, w)):
            y = [self.field.zero] * self.dim(v, w)
            y[j] = self.field.one
            cols.append(self.multiply(u, v, w, x, y))
        return _from_cols(cols, self.dim(u, w), self.field)

    def right_arrow_matrix(self, u, arrow: str) -> ExactMatrix:
        """Matrix of right multiplication by an arrow on e_u A, from e_u A e_s to e_u A e_t."""
        key = (u, arrow)
        m = self._right_cache.get(key)
        if m is None:
            a = self.quiver.arrow(arrow)
            cols = [self.reduce(u, a.target, p + (arrow,)) for p in self.basis(u, a.source)]
            m = _from_cols(cols, self.dim(u, a.target), self.field)
            self._right_cache[key] = m
        return m

    # derived algebras -----------------------------------------------------

    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            op = BoundQuiverAlgebra(
                self.quiver.opposite(),
                [r.reversed() for r in self.relations],
                self.field,
                name=f"{self.name}^op" if self.name else "",
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def opposite_element(self, u, v, x) -> tuple:
        """x in e_u A e_v as an element of e_v A^op e_u."""
        op = self.opposite()
        return op.reduce_combination(
            v, u, [(c, tuple(reversed(p))) for c, p in zip(x, self.basis(u, v))]
        )

    def full_subalgebra(self, keep) -> "BoundQuiverAlgebra":
        """The algebra on a subset of vertices.

        Correct as e A e when every dropped vertex is a sink or a source, which is
        the only way it is used here.
        """
        keep = [v for v in self.vertices if v in set(keep)]
        ks = set(keep)
        arrows = [a for a in self.arrows if a.source in ks and a.target in ks]
        names = {a.name for a in arrows}
        rels = [r for r in self.relations if all(set(p) <= names for _, p in r.terms)]
        return BoundQuiverAlgebra(Quiver(keep, arrows), rels, self.field, name=f"{self.name}|sub")

    def is_hereditary_presentation(self) -> bool:
        return not self.relations

    def __repr__(self):
        return f"BoundQuiverAlgebra({self.name or self.quiver!r}, dim={self.dimension}, field={self.field!r})"


def _from_cols(cols, nrows, field) -> ExactMatrix:
    if not cols:
        return ExactMatrix.zeros(nrows, 0, field)
    return ExactMatrix._raw(tuple(zip(*cols)) if nrows else (), field, len(cols))
