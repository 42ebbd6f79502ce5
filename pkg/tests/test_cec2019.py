import math
from fractions import Fraction

import numpy as np
import pytest

from kmgwo import ConfigurationError, DataIngestionError, InputError
from kmgwo.problems import (
    canonical_id,
    cec2019_function,
    default_data_dir,
    get_problem,
    load_cec2019_data,
    write_cec2019_data,
)
from kmgwo.problems.cec2019 import DIMENSIONS, LJ_OFFSET, rotation_filename, shift_filename

# Values printed by the official C implementation (cec19_func.cpp) at three
# fixed points per function: all zeros, all ones, and an even ramp from -s to s
# (s = 3 for F3, 50 otherwise).
REFERENCE = {
    1: (1.0, 1954.4135069363297, 971034.634159955),
    2: (5.0, 17.885714285714286, 242.65079365079364),
    3: (1.5e21, 1.5e21, 13.449144360605663),
    4: (153.81331105100503, 160.0498845250914, 245.41260572938302),
    5: (227.98210333738817, 225.42247905220262, 353.927064829124),
    6: (18.246775281680595, 18.464489866243518, 18.27597647265827),
    7: (3730.2600493809896, 3664.6124531713585, 3790.8458933077472),
    8: (6.3326400882407325, 6.222410539883352, 5.941832289983094),
    9: (7.580031067555259, 7.701463093949149, 7.04061686092543),
    10: (22.210959804664075, 22.890094147314034, 22.50957404883014),
}


def reference_points(fid):
    d = DIMENSIONS[fid]
    s = 3.0 if fid == 3 else 50.0
    return np.zeros(d), np.ones(d), np.linspace(-1, 1, d) * s


def octahedron_lj6():
    """Six atoms on the coordinate axes at the energy-minimizing spacing.

    12 pairs sit at edge length e and 3 at e*sqrt(2). With t = e**-6 the
    energy is 12.046875 t^2 - 24.75 t, minimized at t = 24.75 / 24.09375.
    """
    t = Fraction(2475, 100) / (2 * Fraction(12046875, 1000000))
    e = float(t) ** (-1.0 / 6.0)
    h = e / math.sqrt(2.0)
    atoms = []
    for axis in range(3):
        for sign in (1.0, -1.0):
            p = [0.0, 0.0, 0.0]
            p[axis] = sign * h
            atoms.extend(p)
    energy = -Fraction(2475, 100) ** 2 / (4 * Fraction(12046875, 1000000))
    return np.array(atoms), float(energy)


# ------------------------------------------------------------- reference


@pytest.mark.parametrize("fid", range(1, 11))
def test_matches_official_implementation(fid):
    f = cec2019_function(fid)
    for x, ref in zip(reference_points(fid), REFERENCE[fid]):
        assert f.evaluate(x) == pytest.approx(ref, rel=1e-11)


@pytest.mark.parametrize("fid", range(4, 11))
def test_shifted_functions_hit_one_at_shift(fid):
    f = cec2019_function(fid)
    assert abs(f.evaluate(f.shift_vector) - 1.0) <= 1e-9


def test_f1_at_chebyshev_t8_coefficients():
    # T8(y) = 128y^8 - 256y^6 + 160y^4 - 32y^2 + 1, highest power first
    x = [128, 0, -256, 0, 160, 0, -32, 0, 1]
    assert cec2019_function(1).evaluate(x) == pytest.approx(1.0, abs=1e-9)


def test_f2_at_inverse_hilbert():
    inv = [[16, -120, 240, -140], [-120, 1200, -2700, 1680], [240, -2700, 6480, -4200], [-140, 1680, -4200, 2800]]
    # check the oracle matrix itself with exact arithmetic
    hilbert = [[Fraction(1, i + j + 1) for j in range(4)] for i in range(4)]
    prod = [[sum(hilbert[i][k] * inv[k][j] for k in range(4)) for j in range(4)] for i in range(4)]
    assert prod == [[int(i == j) for j in range(4)] for i in range(4)]
    assert cec2019_function(2).evaluate(np.ravel(inv)) == pytest.approx(1.0, abs=1e-9)


def test_f3_at_octahedron():
    x, energy = octahedron_lj6()
    f3 = cec2019_function(3)
    value = f3.evaluate(x)
    assert value == pytest.approx(1.0, abs=1e-9)
    # the truncated offset leaves 1 + (E* + 12.7120622568), just under one
    assert value == pytest.approx(1.0 + energy + LJ_OFFSET, abs=1e-12)


def test_f3_random_points_stay_above_one():
    f3 = cec2019_function(3)
    X = np.random.default_rng(0).uniform(-4, 4, (10_000, 18))
    v = f3.evaluate_many(X)
    assert np.all(v >= 1.0)
    assert np.all(np.isfinite(v))
    # uniform clusters in the box are far from compact: energies near zero
    assert 10.0 < np.median(v) < 15.0


@pytest.mark.parametrize("fid", range(1, 11))
def test_batch_matches_scalar(fid):
    f = cec2019_function(fid)
    X = np.random.default_rng(fid).uniform(f.bounds.lower, f.bounds.upper, (50, f.dimension))
    assert np.array_equal(f.evaluate_many(X), np.array([f.evaluate(x) for x in X]))


def test_dimensions_and_bounds():
    assert {fid: cec2019_function(fid).dimension for fid in range(1, 11)} == {
        1: 9, 2: 16, 3: 18, 4: 10, 5: 10, 6: 10, 7: 10, 8: 10, 9: 10, 10: 10,
    }
    assert cec2019_function(1).bounds.upper[0] == 8192.0
    assert cec2019_function(2).bounds.lower[0] == -16384.0
    assert cec2019_function(3).bounds.upper[0] == 4.0
    assert cec2019_function(7).bounds.upper[0] == 100.0


def test_wrong_dimension():
    with pytest.raises(InputError):
        cec2019_function(4).evaluate(np.zeros(9))
    with pytest.raises(InputError):
        cec2019_function(1).evaluate_many(np.zeros((3, 10)))
    with pytest.raises(InputError):
        cec2019_function(11)


# ----------------------------------------------------------------- loading


def test_bundled_data_shapes():
    table = load_cec2019_data(default_data_dir())
    assert sorted(table) == [4, 5, 6, 7, 8, 9, 10]
    for fid, (shift, rot) in table.items():
        assert shift.shape == (10,) and rot.shape == (10, 10)
        assert not shift.flags.writeable


def test_missing_directory_names_the_function(tmp_path):
    with pytest.raises(DataIngestionError, match=r"F4: missing data file shift_data_4\.txt"):
        load_cec2019_data(tmp_path)


def test_short_rotation_file(tmp_path):
    write_cec2019_data(load_cec2019_data(default_data_dir()), tmp_path)
    path = tmp_path / rotation_filename(6)
    path.write_text(" ".join(["0.5"] * 99) + "\n")
    with pytest.raises(DataIngestionError, match="99 values, expected 100"):
        load_cec2019_data(tmp_path)


def test_short_shift_file(tmp_path):
    write_cec2019_data(load_cec2019_data(default_data_dir()), tmp_path)
    (tmp_path / shift_filename(9)).write_text("1 2 3\n")
    with pytest.raises(DataIngestionError, match="F9"):
        load_cec2019_data(tmp_path)


def test_malformed_token_reports_position(tmp_path):
    write_cec2019_data(load_cec2019_data(default_data_dir()), tmp_path)
    (tmp_path / shift_filename(5)).write_text("1.0 2.0\n3.0  4.0x 5.0\n")
    with pytest.raises(DataIngestionError, match=r":2:6: malformed number '4.0x'"):
        load_cec2019_data(tmp_path)


def test_round_trip_is_lossless(tmp_path):
    table = load_cec2019_data(default_data_dir())
    write_cec2019_data(table, tmp_path)
    again = load_cec2019_data(tmp_path)
    for fid in table:
        assert np.array_equal(table[fid][0], again[fid][0])
        assert np.array_equal(table[fid][1], again[fid][1])
    f = cec2019_function(7, tmp_path)
    assert f.evaluate(np.ones(10)) == cec2019_function(7).evaluate(np.ones(10))


# --------------------------------------------------------------- registry


@pytest.mark.parametrize("raw, canon", [("f3", "cec19:f3"), ("CEC19:F10", "cec19:f10"), ("7", "cec19:f7"),
                                        ("vessel", "vessel"), ("pressure-vessel", "vessel"), ("sphere", "sphere")])
def test_canonical_id(raw, canon):
    assert canonical_id(raw) == canon


@pytest.mark.parametrize("bad", ["f0", "f11", "rosenbrock", ""])
def test_canonical_id_rejects(bad):
    with pytest.raises(ConfigurationError):
        canonical_id(bad)


def test_get_problem():
    p = get_problem("f5")
    assert p.name == "cec19:f5" and p.dimension == 10
    assert get_problem("vessel").dimension == 4
    assert get_problem("sphere").evaluate(np.ones(10)) == 10.0
