"""Radical computation and exact idempotent splitting on known algebras.

The endomorphism algebras here are realized through regular modules over
trivially graded constructor algebras, so the expected radicals and
splitting patterns are classical facts (group algebras in defining
characteristic, triangular matrix algebras, full matrix algebras over Q
and over prime fields, cyclotomic commutative algebras).
"""

import random

import pytest

from gradedk import algebra as alg
from gradedk.fields import GF, QQ
from gradedk.grading import GradingGroup
from gradedk.gmod import EndAlgebra, regular_module, split_projective
from gradedk.gmod.endos import (
    SplitError,
    _rat_recon,
    factor_irreducible,
    primitive_idempotents,
    radical_basis,
)


def _end_of_regular(A):
    return EndAlgebra(regular_module(A)).fd


def _forget(A):
    return alg.forget_grading(A)


CASES_RADICAL = [
    # (algebra builder, expected radical dimension)
    (lambda: _forget(alg.group_algebra(GF(2), GradingGroup(0, (2,)))), 1),
    (lambda: _forget(alg.group_algebra(GF(2), GradingGroup(0, (2, 2)))), 3),
    (lambda: _forget(alg.group_algebra(GF(3), GradingGroup(0, (3,)))), 2),
    (lambda: _forget(alg.group_algebra(GF(3), GradingGroup(0, (2,)))), 0),
    (lambda: _forget(alg.matrix_algebra(GF(2), [0, 0])), 0),
    (lambda: _forget(alg.matrix_algebra(GF(2), [0, 1]).positive_part()), 1),
    (lambda: _forget(alg.matrix_algebra(QQ, [0, 1]).positive_part()), 1),
    (lambda: _forget(alg.group_algebra(QQ, GradingGroup(0, (4,)))), 0),
]


@pytest.mark.parametrize("build,expected", CASES_RADICAL)
def test_radical_dimensions(build, expected):
    fd = _end_of_regular(build())
    assert len(radical_basis(fd)) == expected


CASES_SPLIT = [
    # (algebra builder, number of summands, number of distinct blocks)
    (lambda: _forget(alg.group_algebra(GF(2), GradingGroup(0, (2,)))), 1, 1),
    (lambda: _forget(alg.group_algebra(GF(3), GradingGroup(0, (3,)))), 1, 1),
    (lambda: _forget(alg.group_algebra(QQ, GradingGroup(0, (2,)))), 2, 2),
    (lambda: _forget(alg.group_algebra(QQ, GradingGroup(0, (3,)))), 2, 2),
    (lambda: _forget(alg.group_algebra(QQ, GradingGroup(0, (4,)))), 3, 3),
    (lambda: _forget(alg.matrix_algebra(QQ, [0, 0])), 2, 1),
    (lambda: _forget(alg.matrix_algebra(GF(2), [0, 0])), 2, 1),
    (lambda: _forget(alg.matrix_algebra(GF(2), [0, 1]).positive_part()), 2, 2),
    (lambda: alg.matrix_algebra(QQ, [0, 1, 2, 2, 3]).zero_part(), 5, 4),
    (lambda: alg.matrix_algebra(GF(2), [0, 1, 2, 2, 3]).zero_part(), 5, 4),
    (lambda: alg.regrade_mod(alg.matrix_algebra(QQ, [0, 1]), 2), 2, 2),
]


@pytest.mark.parametrize("build,n_summands,n_blocks", CASES_SPLIT)
def test_split_regular_modules(build, n_summands, n_blocks):
    A = build()
    parts = split_projective(regular_module(A), random.Random(0))
    assert len(parts) == n_summands
    # block ids come from the central decomposition of End/rad
    end_blocks = {b for _p, b in parts}
    assert len(end_blocks) == n_blocks
    # dimension bookkeeping: summand dims add up to the module dims
    R = regular_module(A)
    for d in A.support_degrees():
        for s in R.shifts:
            h = d - s
            assert sum(p.dim(h) for p, _b in parts) == R.dim(h)


def test_split_is_seed_independent_here():
    A = alg.matrix_algebra(QQ, [0, 1, 2, 2, 3]).zero_part()
    a = split_projective(regular_module(A), random.Random(0))
    b = split_projective(regular_module(A), random.Random(99))
    assert [blk for _p, blk in a] == [blk for _p, blk in b]
    assert [p.entries for p, _b in a] == [p.entries for p, _b in b]


def test_primitive_idempotents_verified_exactly():
    A = alg.regrade_mod(alg.matrix_algebra(QQ, [0, 1]), 2)
    fd = _end_of_regular(A)
    idems = primitive_idempotents(fd, random.Random(1))
    total = [QQ.zero] * fd.dim
    for v, _b in idems:
        assert fd.mul_vec(v, v) == list(v)
        total = [a + b for a, b in zip(total, v)]
    assert total == list(fd.unit)


def test_rational_reconstruction():
    from fractions import Fraction

    M = 10007**8
    for fr in (Fraction(3, 7), Fraction(-22, 5), Fraction(0), Fraction(4)):
        s = (fr.numerator * pow(fr.denominator, -1, M)) % M
        assert _rat_recon(s, M) == fr


def test_factor_irreducible_fields():
    from fractions import Fraction

    # x^2 - 1 over Q
    fs = factor_irreducible([Fraction(-1), Fraction(0), Fraction(1)], QQ)
    assert sorted(tuple(f) for f, _m in fs) == [
        (Fraction(-1), Fraction(1)),
        (Fraction(1), Fraction(1)),
    ]
    # x^2 + 1 irreducible over Q, splits over F5
    fs_q = factor_irreducible([Fraction(1), Fraction(0), Fraction(1)], QQ)
    assert len(fs_q) == 1
    fs_5 = factor_irreducible([1, 0, 1], GF(5))
    assert len(fs_5) == 2
    # (x+1)^2 over F2 carries its multiplicity
    fs_2 = factor_irreducible([1, 0, 1], GF(2))
    assert fs_2 == [([1, 1], 2)]


def test_local_algebra_is_not_split():
    # F2[C2] is local: its regular module must stay in one piece
    A = _forget(alg.group_algebra(GF(2), GradingGroup(0, (2,))))
    parts = split_projective(regular_module(A), random.Random(2))
    assert len(parts) == 1
    end = EndAlgebra(parts[0][0])
    assert len(radical_basis(end.fd)) == 1
