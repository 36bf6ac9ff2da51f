import json
import random
from fractions import Fraction

import pytest

from lndkit.constructions import (
    build_example1,
    build_example2,
    build_example3,
    build_ntr_instance,
    build_tr_instance,
    default_ntr_instance,
    default_tr_instance,
    random_ntr_instance,
    random_tr_instance,
    random_unimodular,
    verify_example1,
    verify_example2,
    verify_example3,
    verify_instance,
    verify_paper,
)
from lndkit.derivation import deg_d
from lndkit.errors import ShapeViolation
from lndkit.linalg import det3
from lndkit.poly import Poly

from helpers import CIRCLE, Q, QT

x, y, z = Poly.gens(Q, 3)


def test_example1_transcription():
    ex = build_example1()
    X, Y, Z = Poly.gens(QT, 3)
    t = Poly.symbol(QT, 3, "t")
    assert ex.F.coeff((0, 2, 0)) == (-t ** 2).coeff((0, 0, 0))
    assert ex.P == t * Y * ex.F + X ** 3
    # modulo t, H reduces to its first and third displayed terms: 4 x^5 G1 - 20 x^8 F1
    from lndkit.constructions import _at_t0
    assert _at_t0(ex.H) == _at_t0(4 * X ** 5 * ex.G1 - 20 * X ** 8 * ex.F1)
    assert (ex.G ** 2 - 4 * ex.F ** 5 - t * ex.H).is_zero()


def test_example1_report():
    rep = verify_example1()
    assert rep.passed, rep.failures()
    assert rep["orders"].value == [3, 7, 11]
    assert rep["homogeneity_degree"].value == 4
    assert rep["kernel_type"].value == [2, 5]
    assert any("asserted (proof-level, not checked)" in n for n in rep.notes)


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_example2_report(d):
    rep = verify_example2(d)
    assert rep.passed, rep.failures()
    assert rep["filtration_jumps"].value == sorted({0, 1, d + 2})
    # both facts at once: forms over the fraction field, yet no certified variable
    assert rep["strict triple over the fraction field"].passed
    assert rep["m=0 row not certified as a variable"].passed


def test_example2_small_cases():
    X, Y, Z = Poly.gens(CIRCLE, 3)
    w1 = Poly.symbol(CIRCLE, 3, "w1")
    ex = build_example2(0)
    assert ex.D.images[2] == 2 * w1 * Y and deg_d(ex.D, Z) == 2
    ex1 = build_example2(1)
    assert ex1.D(ex1.F).is_zero()


@pytest.mark.parametrize("d", [0, 1, 2])
def test_example3_report(d):
    rep = verify_example3(d)
    assert rep.passed, rep.failures()
    assert rep["rank upper bound"].value == 2


def test_builders_reject_bad_input():
    with pytest.raises(ShapeViolation):
        build_example2(-1)
    with pytest.raises(ShapeViolation):
        build_example3(-1)
    with pytest.raises(ShapeViolation):
        build_tr_instance(1, y ** 2, 0)
    with pytest.raises(ShapeViolation):
        build_tr_instance(1, y ** 3, 1)
    with pytest.raises(ShapeViolation):
        build_tr_instance(1, y * z, 1)
    with pytest.raises(ShapeViolation):
        build_ntr_instance(2, 2, y ** 2, [1, 0])
    with pytest.raises(ShapeViolation):
        build_ntr_instance(2, 2, y ** 2, [1])
    with pytest.raises(ShapeViolation):
        build_ntr_instance(2, 2, 2 * y ** 2, [0, 1])
    with pytest.raises(ShapeViolation):
        build_ntr_instance(1, 2, y ** 2, [1])


def test_spec_instances():
    tr = default_tr_instance(1)
    assert tr.P == y ** 3 + x * y ** 2 + x ** 2 * z
    rep = verify_instance(tr)
    assert rep.passed and rep["classification"].value == "Triangular"
    ntr = default_ntr_instance(2, 2)
    assert ntr.P == (y ** 2 + x * z) ** 2 + x ** 3 * y
    rep = verify_instance(ntr)
    assert rep.passed and rep["classification"].value == "NotTriangular"
    assert rep["deg_d(Y), deg_d(Z)"].value == [2, 4]
    assert deg_d(ntr.D, y) == 2 and deg_d(ntr.D, z) == 4


def test_random_instances_verify():
    rng = random.Random(11)
    for _ in range(5):
        m = random_unimodular(rng)
        assert det3(m) in (1, -1)
        assert verify_instance(random_tr_instance(rng, rng.choice([1, 3]))).passed
        assert verify_instance(random_ntr_instance(rng, 2, rng.choice([2, 3]))).passed


def test_reports_are_deterministic():
    a = json.dumps([r.to_dict() for r in verify_paper("2", 1)], sort_keys=True)
    b = json.dumps([r.to_dict() for r in verify_paper("2", 1)], sort_keys=True)
    assert a == b
    assert [r.instance for r in verify_paper("3")] == ["example3[d=0]", "example3[d=1]", "example3[d=2]"]
    with pytest.raises(ValueError):
        verify_paper("4")
