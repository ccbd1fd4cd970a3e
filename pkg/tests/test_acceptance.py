"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``PASS``/``FAIL criterion N`` line. Criteria 4 and 7
are computed in full and are expected to fail; see the decisions notes.
"""

import pytest

from cda.boundquiver import (
    bgp_reflect,
    build_tilting_apr,
    build_tilting_canonical,
    canonical_algebra,
    canonical_chain,
    cd_algebra,
    check_conditions,
    dim_vector_matrix,
    end_dims,
    ext_dim,
    is_cotilting,
    is_tilting,
    simple,
    squid_algebra,
)
from cda.boundquiver.constructions import enumerate_instances, n_module
from cda.boundquiver.reflection import reflect_sequence
from cda.exactalg import is_unimodular
from cda.lattice import (
    RepType,
    Symbol,
    canonical_display,
    coxeter_identity_holds,
    coxeter_matrix,
    delta,
    enumerate_symbols,
    gram_canonical_basis_with_convention,
    gram_opposite_basis_with_convention,
    gram_s_basis,
    opposite_display,
    rep_type,
    signature,
    symbol_from_data,
    tau_periodicity,
)
from cda.speciesdims import (
    cartan_cd,
    cartan_squid,
    cd_labels,
    gram_simple_basis,
    lemma_simple_table,
    table_mismatches,
)

MAX_RANK, MAX_D = 12, 2
POINTS = ["0", "1", "2", "3", "inf"]

# finite points so that the Coxeter-Dynkin algebra exists; t = 2, 3, 4 and mixed weights
TILT_INSTANCES = [
    ([2, 2], ["0", "1"]),
    ([2, 3], ["0", "1"]),
    ([3, 2], ["1", "3"]),
    ([3, 3], ["0", "2"]),
    ([2, 4], ["1", "3"]),
    ([4, 4], ["0", "1"]),
    ([2, 2, 2], ["0", "1", "2"]),
    ([2, 2, 3], ["0", "1", "3"]),
    ([2, 3, 3], ["0", "1", "2"]),
    ([2, 3, 4], ["0", "1", "3"]),
    ([3, 3, 3], ["1", "2", "3"]),
    ([2, 2, 2, 2], ["0", "1", "2", "3"]),
]


@pytest.fixture(scope="module")
def symbols():
    return enumerate_symbols(MAX_RANK, MAX_D)


def test_criterion_1_lattice_axioms(symbols, verdict):
    bad = []
    for s in symbols:
        L = gram_s_basis(s)
        tau = coxeter_matrix(L)
        if not (tau.is_integral() and coxeter_identity_holds(L, tau)):
            bad.append(str(s))
        elif not all(ok for _, ok in tau_periodicity(L, tau)):
            bad.append(str(s))
    ok = verdict(1, not bad, f"lattice axioms on {len(symbols)} symbols (rank <= {MAX_RANK}), {len(bad)} failures")
    assert ok, bad[:10]


def test_criterion_2_gram_displays(symbols, verdict):
    conventions, bad = set(), []
    for s in symbols:
        gc, name_c, _ = gram_canonical_basis_with_convention(s)
        go, name_o, _ = gram_opposite_basis_with_convention(s)
        conventions |= {name_c, name_o}
        if gc != canonical_display(s) or go != opposite_display(s):
            bad.append(str(s))
    ok = verdict(
        2,
        not bad and len(conventions) == 1,
        f"both displays on {len(symbols)} symbols under convention {sorted(conventions)}",
    )
    assert ok, (bad[:10], conventions)


def test_criterion_3_rep_type_table(symbols, verdict):
    bad = []
    for s in symbols:
        n, d = s.rank, delta(s)
        want = (n - 1, 1, 0) if d < 0 else (n - 2, 2, 0) if d == 0 else (n - 2, 1, 1)
        if signature(s) != want:
            bad.append(str(s))
    ok = verdict(3, not bad, f"sign of delta vs signature on {len(symbols)} symbols")
    assert ok, bad[:10]


@pytest.mark.xfail(strict=True, reason="the listed arm-to-G Euler values disagree with the computed ones")
def test_criterion_4_euler_value_table(symbols, verdict):
    checked = skipped = 0
    bad = []
    ext2_ok = True
    for s in symbols:
        if not s.condition6:
            skipped += 1
            continue
        checked += 1
        g = gram_simple_basis(cartan_cd(s))
        lab = cd_labels(s.weights)
        ext2_ok &= g[lab.index("F"), lab.index("G")] == 2 * s.epsilon
        diffs = table_mismatches(g, lemma_simple_table(s), lab)
        if diffs:
            bad.append((str(s), diffs[:3]))
    ok = verdict(
        4,
        not bad,
        f"listed Euler values on {checked} symbols ({skipped} skipped): "
        f"{checked - len(bad)} match, <S_F,S_G> = 2 eps {'holds' if ext2_ok else 'fails'}",
    )
    assert ext2_ok
    assert ok, bad[:3]


def test_criterion_5_condition_equivalence(verdict):
    instances = enumerate_instances(4, 4, POINTS)
    bad = []
    for w, pts in instances:
        c = check_conditions(w, pts)
        vals = [c[k] for k in (1, 2, 3, 5, 6)]
        if len(set(vals)) != 1 or c[4] != c[1] or (len(w) == 1 and vals[0]):
            bad.append((w, pts, c))
    ok = verdict(5, not bad, f"conditions agree on {len(instances)} instances")
    assert ok, bad[:5]


def test_criterion_6_tilting_to_cd(verdict):
    bad = []
    for w, pts in TILT_INSTANCES:
        T = build_tilting_apr(w, pts)
        B = cd_algebra(w, pts)
        if not is_tilting(T[0].alg, T):
            bad.append((w, "not tilting"))
        if end_dims(T) != B.cartan():
            bad.append((w, "end_dims"))
        if ext_dim(simple(B, "F"), simple(B, "G"), 2) != 2:
            bad.append((w, "Ext^2"))
    ok = verdict(6, not bad, f"APR module tilting with End = cd Cartan on {len(TILT_INSTANCES)} instances")
    assert ok, bad


@pytest.mark.xfail(strict=True, reason="for three or more points the module has a summand of projective dimension 2")
def test_criterion_7_tilting_to_canonical(verdict):
    not_tilting, bad_end = [], []
    cotilting = True
    for w, pts in TILT_INSTANCES:
        T = build_tilting_canonical(w, pts)
        A = T[0].alg
        if not is_tilting(A, T):
            not_tilting.append(tuple(w))
            cotilting &= is_cotilting(A, T)
        if end_dims(T) != canonical_algebra(w, pts).cartan():
            bad_end.append(tuple(w))
    ok = verdict(
        7,
        not not_tilting and not bad_end,
        f"canonical module on {len(TILT_INSTANCES)} instances: End = canonical Cartan "
        f"{'everywhere' if not bad_end else f'fails for {bad_end}'}; not classical tilting for "
        f"{len(not_tilting)} instances with t >= 3 (all cotilting: {cotilting})",
    )
    # the Hom-dimension part and the dual property hold throughout
    assert not bad_end and cotilting
    assert ok, not_tilting


def test_criterion_8_base_change(verdict):
    bad = []
    for w, pts in TILT_INSTANCES:
        gs = gram_simple_basis(cartan_squid(Symbol.simply_laced(w)))
        for T, target in (
            (build_tilting_apr(w, pts), cd_algebra(w, pts)),
            (build_tilting_canonical(w, pts), canonical_algebra(w, pts)),
        ):
            S = dim_vector_matrix(T)
            if not (S.is_integral() and is_unimodular(S) and S.T @ gs @ S == target.cartan().T):
                bad.append((w, target.name))
    ok = verdict(8, not bad, f"unimodular base change onto both targets on {len(TILT_INSTANCES)} instances")
    assert ok, bad


def test_criterion_9_reflections(verdict):
    instances = [(w, p) for w, p in enumerate_instances(4, 4, POINTS) if len(w) >= 2]
    bad = []
    for w, pts in instances:
        N = n_module(squid_algebra(w, pts))
        R = bgp_reflect(N, "F", "minus")
        if "inf" in pts:
            want = {v: cartan_cd(Symbol.simply_laced(w)).entry(v, "G") for v in R.alg.vertices}
        else:
            B = cd_algebra(w, pts)
            want = {v: B.dim(v, "G") for v in R.alg.vertices}
        if R.dim_vector() != want or R.dim("F") != len(w) - 2:
            bad.append((w, pts, "W"))
            continue
        stages = [N]
        for st in canonical_chain(w):
            stages.append(reflect_sequence(stages[-1], st, "plus"))
        table_ok = all(M.dim("F") == 2 for M in stages)
        for i, p in enumerate(w, 1):
            table_ok &= [M.dim(f"e{i}(1)") for M in stages] == [1, 1, 1, 1]
            for j in range(2, p):
                table_ok &= [M.dim(f"e{i}({j})") for M in stages] == [1, 0, 0, 1]
        if not table_ok:
            bad.append((w, pts, "chain"))
    ok = verdict(9, not bad, f"reflection at F and the reflection chain on {len(instances)} instances")
    assert ok, bad[:5]


def test_criterion_10_real_complex_example(verdict):
    # one point over D = R, F = C: (dim_D U, dim U_F, dim_D V, dim V_G) = (1, 2, 1, 2), weight 2
    s = symbol_from_data(1, [(1, 2, 1, 2)], [2])
    ok = verdict(10, delta(s) == -2 and rep_type(s) is RepType.DOMESTIC, f"{s}: delta {delta(s)}, {rep_type(s).value}")
    assert ok
