import math

import numpy as np
import pytest

import spinsim

Z = (0.0, 0.0, 1.0)
X = (1.0, 0.0, 0.0)


def test_parse_spin():
    assert spinsim.parse_spin("3/2") == 3
    assert spinsim.parse_spin("1") == 2
    with pytest.raises(ValueError):
        spinsim.parse_spin("1/3")


def test_correlation_routes_agree():
    b = (math.sin(0.7), 0.0, math.cos(0.7))
    for spin in ("1/2", "1", "3/2", "7/2"):
        closed = spinsim.correlation_closed_form(spin, Z, b)
        matrix = spinsim.correlation_matrix(spin, Z, b)
        assert closed == pytest.approx(matrix, abs=1e-10)
    assert spinsim.correlation_closed_form("1/2", Z, Z) == pytest.approx(-0.25)


def test_spin_operators_commutator():
    jx, jy, jz = spinsim.spin_operators("3/2")
    assert np.allclose(jx @ jy - jy @ jx, 1j * jz, atol=1e-12)
    w, _ = spinsim.eigendecompose_hermitian(jz)
    assert np.allclose(w, [1.5, 0.5, -0.5, -1.5])


def test_singlet_is_normalised():
    psi = spinsim.singlet("7/2")
    assert psi.shape == (64,)
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)


def test_joint_distribution_orthogonal_probe():
    table = spinsim.joint_distribution("3/2", Z, X)
    assert table.shape == (4, 4)
    assert table.sum() == pytest.approx(1.0, abs=1e-12)
    assert table[0, 3] == pytest.approx(1.0 / 32.0, abs=1e-9)


def test_run_round_bits():
    for spin, n in (("1/2", 1), ("3/2", 2), ("7/2", 3), ("15/2", 4)):
        r = spinsim.run_round(spin, Z, X, seed=3, round_index=11)
        assert r["bits_sent"] == n
        assert len(r["messages"]) == n
        assert len(r["lambdas"]) == n
    with pytest.raises(ValueError, match="power of two"):
        spinsim.run_round("1", Z, Z)


def test_estimate_report_fields():
    r = spinsim.estimate("3/2", Z, Z, trials=20000, seed=4)
    for key in ("corr_estimate", "corr_stderr", "corr_quantum", "joint_empirical", "tvd", "chi2_alpha", "total_bits"):
        assert key in r
    assert r["bits_per_round"] == 2
    assert r["total_bits"] == 40000
    assert r["corr_estimate"] == pytest.approx(-1.25, abs=5 * r["corr_stderr"] + 1e-12)
    again = spinsim.estimate("3/2", Z, Z, trials=20000, seed=4, workers=3)
    again["config"]["workers"] = 1
    assert again == r


def test_sweep_shape():
    result = spinsim.sweep("1/2", trials=5000, points=7, seed=2)
    assert len(result["points"]) == 7
    assert result["fit"]["slope"] == pytest.approx(-0.25, abs=0.03)


def test_statistics_helpers():
    assert spinsim.chi_squared_uniform([100, 100, 100, 100]) == 0.0
    u = np.full((2, 2), 0.25)
    anti = np.array([[0.0, 0.5], [0.5, 0.0]])
    assert spinsim.total_variation_distance("1/2", u, anti) == pytest.approx(0.5)


def test_verify_small():
    results = spinsim.verify(["1/2"], trials=20000)
    assert results
    assert all(r["passed"] for r in results), [r for r in results if not r["passed"]]
