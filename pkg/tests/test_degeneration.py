import csv
import io
import warnings

import mpmath
import numpy as np
import pytest

from conftest import ORBIT_PRESETS
from hodgelab.degeneration import (SCAN_COLUMNS, DegenerationData, constraint_check, degeneration_data, limit_f3,
                                   wang_criterion, yukawa_limit_scan)
from hodgelab.errors import PrecisionError, StructureError
from hodgelab.families import NilpotentOrbitModel, PicardFuchsModel, SymplecticForm, load_model
from hodgelab.families.picard_fuchs import quintic_operator
from hodgelab.scalars import extended

SHIFT = np.zeros((4, 4), dtype=int)
SHIFT[1, 0] = 1
SHIFT[3, 1] = 6
SHIFT[2, 3] = -1
Q = SymplecticForm.standard(1)


def test_limit_f3_recovers_leading_coefficient():
    m = load_model("orbit_deformed")
    res = limit_f3(m)
    assert np.allclose(res.Finf, [1, 0, 0, 0])
    assert res.residuals[-1] <= 1e-5


def test_wang_criterion_examples():
    assert wang_criterion(np.zeros((4, 4)), [1, 2, 3, 4]).incomplete
    assert not wang_criterion(SHIFT, [1, 0, 0, 0]).incomplete
    # a vector in ker N: e2 (N e2 = 0)
    assert wang_criterion(SHIFT, [0, 0, 1, 0]).incomplete


def test_constraint_values():
    # N^3 e0 = -6 e2 and Q(e0, e2) = 1, so Q(F, N^3 F) = -6
    con = constraint_check(SHIFT, [1, 0, 0, 0], Q)
    assert abs(con.literal + 6) <= 1e-12
    assert abs(con.derived - (-6) / (2j * np.pi) ** 3) <= 1e-12
    zero = constraint_check(np.zeros((4, 4)), [1, 0.5j, 0, 2], Q)
    assert zero.derived == 0 and zero.literal == 0


def test_degeneration_data_structure_checks():
    with pytest.raises(StructureError):
        DegenerationData(N=np.eye(4), Finf=np.ones(4), Q=Q)
    with pytest.raises(StructureError):
        DegenerationData(N=np.diag([1, 0, 0], -1), Finf=np.ones(4), Q=Q)
    with pytest.raises(StructureError):
        DegenerationData(N=SHIFT, Finf=np.zeros(4), Q=Q)
    data = degeneration_data(load_model("orbit_cubic"), 0.3)
    assert data.theta == 0.3 and np.allclose(data.M, SHIFT / (2j * np.pi))


def _brute_force_z3F3(N, A, z, dps=40):
    """z^3 Q(Omega, Omega''') from mpmath matrix exponentials and numerical differentiation."""
    with mpmath.workdps(dps):
        M = mpmath.matrix(N.tolist()) / (2j * mpmath.pi)
        Qm = mpmath.matrix(Q.matrix.tolist())

        def omega(w):
            Av = mpmath.matrix([sum(mpmath.mpc(A[k][i]) * w**k for k in range(len(A))) for i in range(4)])
            return mpmath.expm(M * mpmath.log(w)) * Av

        zz = mpmath.mpc(z)
        Om = omega(zz)
        d3 = mpmath.matrix([mpmath.diff(lambda w: omega(w)[i], zz, 3) for i in range(4)])
        return complex(zz**3 * (Om.T * Qm * d3)[0])


@pytest.mark.parametrize("name", ["orbit_cubic", "orbit_deformed"])
def test_limit_identity_against_brute_force(name):
    m = load_model(name)
    A = np.asarray(m.A_series)
    z = 1e-4 * m.radius * np.exp(0.3j)
    brute = _brute_force_z3F3(np.asarray(m.N), A, z)
    scan = yukawa_limit_scan(m)
    assert abs(brute - scan.limit_rhs) <= 1e-3 * abs(scan.limit_rhs)
    assert scan.agreement <= 1e-10 * abs(scan.limit_rhs)


def test_random_finf_negative_control():
    """Replacing Finf by an unrelated vector breaks the identity."""
    m = load_model("orbit_deformed")
    scan = yukawa_limit_scan(m)
    r = np.random.default_rng(0)
    other = constraint_check(m.N, r.normal(size=4) + 1j * r.normal(size=4), Q).derived
    assert abs(other - scan.limit_lhs) > 1e-3 * abs(scan.limit_lhs)


def test_quintic_ode_constancy(quintic):
    scan = yukawa_limit_scan(quintic)
    vals = [row.z3F * (1 - 5**5 * row.r * np.exp(1j * scan.theta)) for row in scan.rows]
    ref = vals[-1]
    assert max(abs(v - ref) for v in vals) <= 1e-6 * abs(ref)
    assert not scan.wang.incomplete
    assert scan.agrees


def test_trivial_orbit_is_incomplete():
    scan = yukawa_limit_scan(load_model("orbit_trivial"))
    assert scan.limit_rhs == 0 and scan.wang.incomplete
    assert abs(scan.limit_lhs) <= 1e-12


@pytest.mark.parametrize("name", ORBIT_PRESETS)
@pytest.mark.parametrize("theta", [0.3, 1.7, -2.2])
def test_scan_inequalities(name, theta):
    scan = yukawa_limit_scan(load_model(name), theta=theta)
    assert scan.agrees
    assert scan.hodge_yukawa_ok
    assert scan.schwarz_bounded


def test_csv_layout():
    scan = yukawa_limit_scan(load_model("orbit_cubic"))
    rows = list(csv.reader(io.StringIO(scan.to_csv())))
    assert tuple(rows[0]) == SCAN_COLUMNS
    assert len(rows) == 7
    assert all(float(rows[i][0]) > float(rows[i + 1][0]) for i in range(1, 6))


def test_truncated_series_drops_radii_with_warning():
    m = PicardFuchsModel(quintic_operator(), truncation=8)
    with pytest.warns(RuntimeWarning):
        scan = yukawa_limit_scan(m)
    assert 2 < len(scan.rows) < 6
    assert scan.warnings and scan.agrees


def test_truncated_series_all_radii_fail():
    m = PicardFuchsModel(quintic_operator(), truncation=2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        with pytest.raises(PrecisionError):
            yukawa_limit_scan(m)


def test_extended_precision_agrees():
    m = load_model("orbit_deformed")
    a = yukawa_limit_scan(m)
    b = yukawa_limit_scan(m, ctx=extended(40))
    for ra, rb in zip(a.rows, b.rows):
        assert abs(ra.z3F - rb.z3F) <= 1e-12 * abs(rb.z3F)
        assert abs(ra.h - rb.h) <= 1e-9 * rb.h
