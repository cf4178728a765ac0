import pytest

from gradedk import algebra as alg
from gradedk.fields import GF, QQ
from gradedk.grading import GradingGroup


@pytest.fixture(scope="session")
def M5():
    return alg.matrix_algebra(QQ, [0, 1, 2, 2, 3])


@pytest.fixture(scope="session")
def M5_f2():
    return alg.matrix_algebra(GF(2), [0, 1, 2, 2, 3])


@pytest.fixture(scope="session")
def M201():
    return alg.matrix_algebra(QQ, [0, 1])


@pytest.fixture(scope="session")
def Qx():
    return alg.polynomial_extension(alg.matrix_algebra(QQ, [0]), [1])


@pytest.fixture(scope="session")
def Bx():
    B = alg.group_algebra(QQ, GradingGroup(0, (2,)))
    return alg.polynomial_extension(B, [1, 1])


@pytest.fixture(scope="session")
def M201x(M201):
    return alg.polynomial_extension(M201, [1, 0])
