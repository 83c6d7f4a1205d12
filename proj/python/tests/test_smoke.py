import math

import numpy as np
import pytest

import stablemix as sm


def test_alpha_half_closed_forms():
    t = np.geomspace(0.05, 50.0, 40)
    exact = 1.0 / (2.0 * math.sqrt(math.pi)) * t**-1.5 * np.exp(-1.0 / (4.0 * t))
    assert np.max(np.abs(sm.stable_density(t, 0.5) - exact)) < 1e-8
    assert abs(sm.ml_density(1.0, 0.5) - 0.43939128946772240) < 1e-12
    assert abs(sm.lamperti_density(1.0, 0.5) - 0.5 / math.pi) < 1e-15


def test_broadcasting():
    out = sm.stable_density([[0.5], [2.0]], [0.3, 0.7])
    assert out.shape == (2, 2)
    assert out[1, 1] == sm.stable_density(2.0, 0.7)


def test_special_functions():
    assert sm.gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    # E_{1/2}(-1) = e erfc(1)
    assert sm.prabhakar_ml(0.5, 1.0, 1.0, 1.0) == pytest.approx(math.e * math.erfc(1.0), abs=1e-14)
    assert sm.ml_laplace(0.0, 0.6, 0.3) == pytest.approx(1.0, abs=1e-15)
    assert sm.ml_moment(2, 0.5) == pytest.approx(2.0, rel=1e-14)


def test_errors_map_to_python():
    with pytest.raises(sm.ConstraintError):
        sm.ml_density(1.0, 0.5, -0.5)
    with pytest.raises(ValueError):
        sm.lamperti_unit_density(1.0, 0.5)
    with pytest.raises(sm.ArgumentError):
        sm.verify(n=10)
    assert issubclass(sm.ConstraintError, sm.DomainError)


def test_sampling_is_reproducible():
    a = sm.sample_ml(0.5, n=1000, seed=3)
    b = sm.sample_ml(0.5, n=1000, seed=3)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, sm.sample_ml(0.5, n=1000, seed=3, stream=1))


def test_ml_half_is_half_normal():
    x = sm.sample_ml(0.5, n=20000, seed=5)
    _, p = sm.ks_one_sample(x, lambda m: math.erf(0.5 * m))
    assert p > 0.01


def test_chain():
    path = sm.simulate_chain(0.6, 0.2, 1.0, 10, seed=2)
    assert path.shape == (11,)
    assert np.all(np.diff(path) > 0)


def test_verify():
    names = sm.verify_names()
    assert "lamperti-lt" in names
    (r,) = sm.verify(only=["lamperti-lt"])
    assert r["pass"] and r["name"] == "lamperti-lt"
