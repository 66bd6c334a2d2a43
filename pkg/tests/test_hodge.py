import pytest

from conetract.hodge import (
    HodgeNumbers,
    SingularityCounts,
    euler_consistency,
    expected_ieq_dim,
    hodge_of_resolution,
    mu2_target,
    smooth_euler,
    smoothability,
    transition_hodge,
)


def test_smooth_quintic():
    h = hodge_of_resolution(SingularityCounts(0, 0, 0))
    assert h.as_tuple() == (1, 101)
    assert h.e == smooth_euler() == -200


def test_cone_quintic_c3():
    # 24 nodes, one triple point, defect 1
    c = SingularityCounts(24, 1, 1, dim_Ieq5=expected_ieq_dim(24, 1) + 1)
    h = hodge_of_resolution(c)
    assert h.as_tuple() == (3, 67)
    assert euler_consistency(c, h, smooth_euler()).ok


def test_euler_catches_a_wrong_count():
    c = SingularityCounts(24, 1, 1)
    h = HodgeNumbers(3, 66)
    chk = euler_consistency(c, h, smooth_euler())
    assert not chk.ok and chk.residual_resolution == 2


def test_counts_validation():
    with pytest.raises(ValueError):
        SingularityCounts(-1, 0, 0)
    with pytest.raises(ValueError):
        SingularityCounts(10, 1, 0, dim_Ieq5=expected_ieq_dim(10, 1) + 1)


def test_transition_and_target():
    h = HodgeNumbers(3, 55)
    t = transition_hodge(h, 2)
    assert t.hodge.as_tuple() == (2, 56) and t.nodes == 2 and t.c == 1
    assert mu2_target(56, 2) == 36
    assert mu2_target(41, 2) == 51
    with pytest.raises(ValueError):
        transition_hodge(h, 1)


def test_smoothability():
    assert smoothability(0).verdict == "undetermined"
    assert smoothability(1).nodes == 0
    assert smoothability(5).nodes == 8
