import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import PRESETS, cubic_free
from hodgelab.errors import ContractError, InversionError
from hodgelab.families import load_model
from hodgelab.hodge import (ANCHORS, alpha, curvature_ab, direct_curvature_oracle, hodge_metric,
                            hodge_metric_from_jet, hodge_report, normal_hodge_field,
                            scalar_curvature, theorem_checks)
from hodgelab.wp import normal_frame


def _symmetrize(T):
    return sum(np.transpose(T, p) for p in itertools.permutations(range(T.ndim))) / math.factorial(T.ndim)


def _random_yukawa(seed, n, scale=1.0):
    r = np.random.default_rng(seed)
    F = _symmetrize(r.normal(size=(n,) * 3) + 1j * r.normal(size=(n,) * 3)) * scale
    C = _symmetrize(r.normal(size=(n,) * 4) + 1j * r.normal(size=(n,) * 4)) * scale
    return F, C


def test_alpha_values():
    assert alpha(1) == pytest.approx(0.2, abs=1e-15)
    assert alpha(4) == pytest.approx(0.1, abs=1e-15)


@pytest.mark.parametrize("y, expected", [(1.0, 2.5), (2.0, 0.625), (0.7, 2.5 / 0.49)])
def test_cubic_hodge_metric_both_paths(cubic, y, expected):
    t = [0.3 + 1j * y]
    hm = hodge_metric(cubic, t)
    assert abs(hm.h_yukawa[0, 0] - expected) <= 1e-8 * expected
    assert abs(hm.h_ricci[0, 0] - expected) <= 1e-6 * expected


def test_curvature_closed_form_examples():
    c = curvature_ab(np.zeros((1, 1, 1)), np.zeros((1,) * 4))
    assert np.allclose(c.h, 2 * np.eye(1)) and abs(c.A[0, 0, 0, 0] - 4) <= 1e-15
    assert scalar_curvature(c.h, c.R) == pytest.approx(-1.0, abs=1e-15)
    F = np.full((1, 1, 1), 2 / math.sqrt(3))
    c = curvature_ab(F, np.zeros((1,) * 4))
    assert abs(c.A[0, 0, 0, 0] - 20 / 9) <= 1e-14
    assert scalar_curvature(c.h, c.R) == pytest.approx(-0.2, abs=1e-14)
    c = curvature_ab(np.ones((1, 1, 1)), np.zeros((1,) * 4))
    assert abs(c.A[0, 0, 0, 0] - 2) <= 1e-15
    with pytest.raises(ContractError):
        curvature_ab(F, np.zeros((1,) * 4), g=2 * np.eye(1))


def test_scalar_curvature_singular():
    with pytest.raises(InversionError):
        scalar_curvature(np.zeros((2, 2)), np.zeros((2,) * 4))


def test_cubic_is_extremal():
    rep = hodge_report(cubic_free(), [1j])
    assert rep.passed
    assert abs(rep.alpha - 0.2) <= 1e-15
    ric = rep.check(ANCHORS["ricci"])
    sect = rep.check(ANCHORS["sectional"])
    assert abs(ric.residual) <= 1e-8 and abs(sect.residual) <= 1e-8
    assert abs(rep.rho + 0.2) <= 1e-8


def test_oracle_synthetic_fields():
    disc = lambda s: np.array([[2 / (1 - abs(s[0]) ** 2) ** 2]])
    R, err = direct_curvature_oracle(disc, [0.0], step=1e-2, refinements=3)
    assert abs(R[0, 0, 0, 0] - 4) <= 1e-6 and err <= 1e-6
    flat = lambda s: np.diag([2.0, 3.0]).astype(complex)
    R, _ = direct_curvature_oracle(flat, [0.0, 0.0])
    assert np.max(np.abs(R)) <= 1e-12


def test_oracle_on_cubic():
    m = cubic_free()
    jet = m.jet([1j], order=4)
    frame = normal_frame(jet)
    R, err = direct_curvature_oracle(normal_hodge_field(m, frame), [0.0], refinements=3)
    assert abs(R[0, 0, 0, 0] - 20 / 9) <= 1e-6


def test_hodge_metric_frame_contract():
    h = hodge_metric_from_jet(cubic_free().jet([1j], order=3))
    frame = normal_frame(cubic_free().jet([1j], order=3))
    assert abs(frame.push_metric(h)[0, 0] - 10 / 3) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.sampled_from([0.05, 1.0, 4.0]))
def test_bounds_on_arbitrary_normal_frame_data(seed, n, scale):
    F, C = _random_yukawa(seed, n, scale)
    c = curvature_ab(F, C)
    results = theorem_checks(c.h, c.A, c.B, c.R, C, seed=seed)
    assert all(r.passed for r in results), [(r.name, r.residual) for r in results if not r.passed]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_unitary_invariance(seed, n):
    F, C = _random_yukawa(seed, n)
    r = np.random.default_rng(seed + 1)
    U, _ = np.linalg.qr(r.normal(size=(n, n)) + 1j * r.normal(size=(n, n)))
    F2 = np.einsum("ijk,ia,jb,kc->abc", F, U, U, U)
    C2 = np.einsum("ijkl,ia,jb,kc,ld->abcd", C, U, U, U, U)
    c1, c2 = curvature_ab(F, C), curvature_ab(F2, C2)
    assert scalar_curvature(c2.h, c2.R) == pytest.approx(scalar_curvature(c1.h, c1.R), rel=1e-10)
    Ub = U.conj()
    R_rot = np.einsum("ijkl,ia,jb,kc,ld->abcd", c1.R, U, Ub, U, Ub)
    assert np.allclose(c2.R, R_rot, atol=1e-10 * max(1, np.abs(c1.R).max()))


@pytest.mark.parametrize("name", PRESETS)
def test_reports_pass_on_presets(name):
    m = load_model(name)
    for k, t in enumerate(m.sample_points(3, seed=7)):
        rep = hodge_report(m, t, seed=k)
        assert rep.passed, [(c.name, c.residual) for c in rep.checks if not c.passed]
        assert rep.curvature_deviation <= 1e-4
