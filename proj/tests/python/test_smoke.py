import math

import pytest

import periloss


def test_version():
    assert periloss.__version__ == "0.1.0"


def test_loss_limit_calibrated_network():
    value = periloss.loss_limit(1 / 0.019, 2.13, 1.55, 660)
    assert value == pytest.approx(39.79, abs=0.01)
    assert periloss.loss_limit(10.0, 0.0, 3.0) == 0.0


def test_availability_and_delta():
    a = periloss.availability(1 / 0.019, 2.13)
    d = periloss.delta(1 / 0.019, 2.13)
    assert a + d == pytest.approx(1.0)
    assert d == pytest.approx(0.0389, abs=2e-4)
    with pytest.raises(ValueError):
        periloss.availability(0.0, 1.0)


def test_fourier_bound():
    alpha, c = periloss.fourier_bound(10.0, 1.0)
    assert alpha == pytest.approx(10.0 / math.sqrt(100.0 + 4 * math.pi**2), rel=1e-12)
    assert c == pytest.approx(2.7898849819802547, rel=1e-12)


def test_wrapped_sup_distance_decreases():
    d1 = periloss.wrapped_sup_distance(10.0, 1.0, fold=1, bins=1024)
    d5 = periloss.wrapped_sup_distance(10.0, 1.0, fold=5, bins=1024)
    assert d1 == pytest.approx(10.0 / (1.0 - math.exp(-10.0)) - 1.0, abs=0.06)
    assert d5 < d1


def test_single_cell_study_deterministic():
    kwargs = dict(lam=0.019, mu=0.47, amplitude=1.75, offset=3.0,
                  n_cycles=1000, reps=4, seed=11, threads=2)
    a = periloss.single_cell_study(**kwargs)
    b = periloss.single_cell_study(**kwargs)
    assert a == b
    assert a["limit"] == pytest.approx(periloss.loss_limit(1 / 0.019, 1 / 0.47, 3.0))
    assert a["median"] > 0


def test_ticket_fixture_round_trip(tmp_path):
    path = str(tmp_path / "tickets.csv")
    periloss.write_ticket_fixture(path, lambda_pooled=12.6, mu=0.47,
                                  n_cells=660, n_tickets=5000, seed=3)
    fit = periloss.fit_tickets(path, n_cells=660)
    assert fit["lambda_hat"] == pytest.approx(12.6, rel=0.05)
    assert fit["mean_y"] == pytest.approx(1 / 0.47, rel=0.05)
    assert fit["n_tickets"] == 5000
    with pytest.raises(periloss.DataError):
        periloss.fit_tickets(str(tmp_path / "missing.csv"))
