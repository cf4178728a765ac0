"""Presentations, shifts, the correspondence functors, and decomposition."""

import random

import pytest

import gradedk._kernel as kern
from gradedk import algebra as alg
from gradedk.algebra import HypothesisError
from gradedk.fields import QQ
from gradedk.grading import GradingGroup
from gradedk.gmod import (
    GradedMap,
    PresentationError,
    ProjectivePresentation,
    component_matrix,
    decompose,
    default_window,
    direct_sum,
    free_module,
    functor_S,
    functor_T,
    graded_iso,
    identity_map,
    indec_iso,
    nakayama_zero_test,
    nu,
    psi,
    random_presentation,
    regular_module,
    restriction_map,
    section,
    summand_classes,
    zero_module,
)
from gradedk.gmod.swan import VerificationError


# -- presentations and shifts ---------------------------------------------------


def test_idempotency_enforced(M201):
    d = M201.deg
    e21 = M201.basis_element(d([1]), 0)
    with pytest.raises(PresentationError):
        ProjectivePresentation(M201, (d([0]), d([1])), [[None, None], [e21, None]])


def test_entry_degree_enforced(M201):
    d = M201.deg
    e21 = M201.basis_element(d([1]), 0)
    with pytest.raises(PresentationError):
        ProjectivePresentation(M201, (d([0]), d([0])), [[None, e21], [None, None]])


def test_shift_axioms(Qx):
    P = free_module(Qx, [[0], [-2]])
    z = Qx.group.zero
    g = Qx.deg([1])
    assert P.shift(z).shifts == P.shifts
    double = P.shift(g).shift(-g)
    w = default_window(Qx, [P], 2)
    assert all(double.dim(h) == P.dim(h) for h in w)
    # component(shift(P, g), h) = component(P, g + h)
    for h in w[:-1]:
        assert P.shift(g).dim(h) == P.dim(g + h)


def test_free_module_components(Qx):
    # shift(A(0), w) has dim at h equal to dim A_{w+h}
    w = Qx.deg([2])
    P = free_module(Qx, [Qx.group.zero]).shift(w)
    for k in range(-3, 4):
        h = Qx.deg([k])
        assert P.dim(h) == Qx.component_dim(w + h)


def test_zero_module_total(Qx):
    Z = zero_module(Qx)
    assert Z.is_zero()
    assert decompose(Z) == []
    assert Z.dim(Qx.group.zero) == 0


# -- functors -----------------------------------------------------------------


def test_T_of_regular_is_zero_part(M201x):
    A = M201x
    R = regular_module(A)
    tp = functor_T(R)
    zpe = A.zero_part_embedded()
    w = default_window(A, [R], 2)
    for h in w:
        assert tp.dim(h) == zpe.component_dim(h)


def test_T_of_shifted_free_line(Qx):
    P = free_module(Qx, [[-2]])
    tp = functor_T(P)
    for k in range(-4, 5):
        assert tp.dim(Qx.deg([k])) == (1 if k == 2 else 0)


def test_TS_is_identity_on_presentations(Bx):
    Q = functor_T(free_module(Bx, [[0, 0], [1, 1]]))
    tsq = functor_T(functor_S(Q, Bx))
    assert tsq.shifts == Q.shifts
    w = default_window(Bx, [Q], 2)
    assert all(tsq.dim(h) == Q.dim(h) for h in w)


def test_S_commutes_with_shift(Bx):
    Q = functor_T(free_module(Bx, [[0, 0]]))
    g = Bx.deg([2, 1])
    lhs = functor_S(Q.shift(g), Bx)
    rhs = functor_S(Q, Bx).shift(g)
    assert lhs.shifts == rhs.shifts
    assert lhs.entries == rhs.entries  # entrywise identity of idempotents


def test_functors_reject_unsupported_grading(M5):
    with pytest.raises(HypothesisError):
        functor_T(regular_module(M5))  # support is Z, not N
    L = alg.group_algebra(QQ, GradingGroup(1, ()))
    with pytest.raises(HypothesisError):
        functor_T(regular_module(L))


def test_nu_is_identity_matrix(Bx):
    Q = functor_T(random_presentation(Bx, [[0, 0], [1, 1]], random.Random(3)))
    nq = nu(Q, Bx)
    w = default_window(Bx, [Q], 2)
    for h in w:
        m = component_matrix(nq, h)
        n = Q.dim(h)
        assert m == kern.identity(n, Bx.field.char) if n else m == []


def test_section_splits_quotient(M201x):
    A = M201x
    P = random_presentation(A, [[0, 0], [1, 1], [1, 0]], random.Random(5))
    tp = functor_T(P)
    f = restriction_map(P)
    w = default_window(A, [P], 2)
    for rng in (None, random.Random(6), random.Random(7)):
        g = section(P, rng)
        for h in w:
            n = tp.dim(h)
            if not n:
                continue
            comp = kern.mat_mul(
                f.component_matrix(h), g.component_matrix(h), A.field.char
            )
            assert comp == kern.identity(n, A.field.char)


def test_section_choices_differ_inside_kernel(M201x):
    # two lifts differ by a map into the positive-degree part: the
    # difference must be killed by the restriction but need not vanish
    A = M201x
    P = free_module(A, [[0, 0], [1, 1]])
    g0 = section(P)
    g1 = section(P, random.Random(11))
    f = restriction_map(P)
    w = default_window(A, [P], 2)
    tp = functor_T(P)
    differs = False
    for h in w:
        m0 = g0.component_matrix(h)
        m1 = g1.component_matrix(h)
        if m0 != m1:
            differs = True
        n = tp.dim(h)
        if n:
            c0 = kern.mat_mul(f.component_matrix(h), m0, A.field.char)
            c1 = kern.mat_mul(f.component_matrix(h), m1, A.field.char)
            assert c0 == c1 == kern.identity(n, A.field.char)
    assert differs


def test_psi_isomorphism_and_restriction(Qx, M201x, Bx):
    for A, shifts, seed in (
        (Qx, [[-1]], 1),
        (M201x, [[0, 0], [1, 1], [0, 1]], 2),
        (Bx, [[0, 0], [1, 1]], 3),
    ):
        P = random_presentation(A, shifts, random.Random(seed))
        w = default_window(A, [P], 2)
        for rng in (None, random.Random(seed + 10)):
            ps = psi(P, rng)  # raises VerificationError if T(psi) != nu
            assert ps.is_iso_on(w)
            for h in w:
                m = component_matrix(ps, h)
                n = P.dim(h)
                assert len(m) == n and all(len(r) == n for r in m)


def test_component_matrix_identity_and_zero(Qx):
    P = free_module(Qx, [[0], [-1]])
    w = default_window(Qx, [P], 1)
    ident = identity_map(P)
    for h in w:
        n = P.dim(h)
        assert component_matrix(ident, h) == kern.identity(n, 0)
    zm = GradedMap(P, P, [[None, None], [None, None]], normalize=False, check=False)
    for h in w:
        m = component_matrix(zm, h)
        assert all(not x for row in m for x in row)


def test_composition_matches_matrix_product(Qx):
    P = random_presentation(Qx, [[0], [-1]], random.Random(21))
    e = identity_map(P)
    comp = e.compose(e)
    w = default_window(Qx, [P], 1)
    for h in w:
        lhs = component_matrix(comp, h)
        rhs = kern.mat_mul(
            component_matrix(e, h), component_matrix(e, h), Qx.field.char
        )
        assert lhs == rhs


# -- Nakayama ------------------------------------------------------------------


def test_nakayama_vanishing(Qx, M201x):
    for A, shifts in ((Qx, [[0], [1]]), (M201x, [[0, 0], [1, 1]])):
        for seed in range(6):
            P = random_presentation(A, shifts[: 1 + seed % 2], random.Random(seed))
            w = default_window(A, [P], 2)
            assert nakayama_zero_test(P, w)
    # a presentation whose restriction vanishes is exactly zero
    Z = zero_module(Qx)
    assert functor_T(Z).is_zero() and Z.is_zero()


def test_positive_entry_matrices_are_never_idempotent(Qx):
    # entries of strictly positive leading degree cannot form a nonzero
    # idempotent: powers of such a matrix drop out of the shift window
    d = Qx.deg
    x = Qx.basis_element(d([1]), 0)
    with pytest.raises(PresentationError):
        ProjectivePresentation(Qx, (d([0]), d([1])), [[None, None], [x, None]])


# -- decomposition ---------------------------------------------------------------


def test_m5_regular_single_orbit(M5):
    parts = decompose(regular_module(M5))
    assert sum(m for _p, m in parts) == 5
    shifts = sorted(
        (p.shifts[0].values[0], m) for p, m in parts
    )
    assert shifts == [(-3, 1), (-2, 2), (-1, 1), (0, 1)]
    # all summands are shifts of one column: same class id
    cls = summand_classes(regular_module(M5))
    assert {blk for blk, _g in cls} == {0}


def test_free_rank2_split(Qx):
    P = free_module(Qx, [[0], [-1]])
    parts = decompose(P)
    assert len(parts) == 2 and all(m == 1 for _p, m in parts)
    assert not graded_iso(free_module(Qx, [[0]]), free_module(Qx, [[-1]]))


def test_graded_iso_shift_and_roundtrip(M201x):
    A = M201x
    for seed in range(4):
        P = random_presentation(A, [[0, 0], [1, 1], [0, 1]], random.Random(seed))
        assert graded_iso(P, P.shift(A.group.zero))
        assert graded_iso(functor_S(functor_T(P), A), P)


def test_direct_sum_classes_add(Qx):
    P = free_module(Qx, [[0]])
    Q = free_module(Qx, [[-1]])
    s = summand_classes(direct_sum(P, Q, Q))
    assert sorted(s.values()) == [1, 2]


def test_indec_iso_distinguishes_blocks(M5):
    Z = M5.zero_part()
    parts = decompose(regular_module(Z))
    reps = [p for p, _m in parts]
    iso_pairs = sum(
        1
        for i in range(len(reps))
        for j in range(i + 1, len(reps))
        if indec_iso(reps[i], reps[j])
    )
    assert iso_pairs == 0  # registry reps are pairwise non-isomorphic
    assert len(reps) == 4


def test_decompose_deterministic(M201x):
    P = random_presentation(M201x, [[0, 0], [1, 1], [0, 1]], random.Random(9))
    a = summand_classes(P, seed=0)
    b = summand_classes(P, seed=123)
    assert a == b


def test_negative_leading_degree_blocks_vanish(Qx, M201x):
    # over an N-supported algebra an idempotent entry whose leading degree
    # is negative sits in an empty component: the slice structure of the
    # restricted module is triangular with those blocks exactly zero
    for A, shifts in ((Qx, [[0], [1], [2]]), (M201x, [[0, 0], [1, 1], [2, 0]])):
        P = random_presentation(A, shifts, random.Random(14))
        for i in range(P.rank):
            for j in range(P.rank):
                d = P.shifts[i] - P.shifts[j]
                if d.values[0] < 0:
                    assert A.component_dim(d) == 0
                    assert P.entries[i][j] is None


def test_nu_naturality_square(Bx):
    # nu is natural: for maps f between zero-part modules, restricting the
    # induced map and composing with nu agrees with nu then f, degreewise
    from gradedk.gmod import hom_basis
    from gradedk.gmod.swan import functor_S, functor_T, nu

    A = Bx
    Q1 = functor_T(random_presentation(A, [[0, 0], [1, 1]], random.Random(41)))
    Q2 = functor_T(random_presentation(A, [[0, 1], [1, 0]], random.Random(42)))
    maps = hom_basis(Q1, Q2)
    if not maps:
        return
    w = default_window(A, [Q1, Q2], 2)
    nu1 = nu(Q1, A)
    nu2 = nu(Q2, A)
    for entries in maps[:3]:
        f = GradedMap(Q1, Q2, entries, normalize=False, check=False)
        # the restriction of the induced map has the same entries, so the
        # square commutes iff f o nu1 == nu2 o f on every component
        ts_f = GradedMap(nu1.source, nu2.source, entries, normalize=False, check=False)
        for h in w:
            lhs = kern.mat_mul(
                f.component_matrix(h), nu1.component_matrix(h), A.field.char
            )
            rhs = kern.mat_mul(
                nu2.component_matrix(h), ts_f.component_matrix(h), A.field.char
            )
            assert lhs == rhs


def test_free_modules_with_permuted_shifts_isomorphic(Qx):
    P = free_module(Qx, [[0], [-2], [1]])
    Q = free_module(Qx, [[1], [0], [-2]])
    assert graded_iso(P, Q)


def test_graded_map_normalization_is_idempotent(Bx):
    from gradedk.gmod import hom_basis

    P = random_presentation(Bx, [[0, 0], [1, 1]], random.Random(51))
    Q = random_presentation(Bx, [[0, 1], [1, 0]], random.Random(52))
    for entries in hom_basis(P, Q)[:3]:
        renorm = GradedMap(P, Q, entries, normalize=True)
        w = default_window(Bx, [P, Q], 1)
        raw = GradedMap(P, Q, entries, normalize=False, check=False)
        for h in w:
            assert renorm.component_matrix(h) == raw.component_matrix(h)
