import math

import numpy as np
import pytest

import mcmv_kit as mk

BLOCK = [0.3 + 0.1j, -0.2j, 0.25, 0.1 - 0.3j]
POLES = [0, 0.3 + 0.2j]


@pytest.fixture
def two_pole():
    return mk.VerblunskySequence(BLOCK, 0.7), mk.PoleVector(POLES)


def test_free_case():
    ev = mk.evaluator([0, 0])
    assert ev.discriminant(1) == pytest.approx(2)
    assert mk.bands(ev)["g"] == 0
    sm = mk.spectral_measure(ev)
    assert sm["masses"] == []
    assert sm["total"] == pytest.approx(1, abs=1e-12)


def test_window_is_unitary(two_pole):
    w = mk.mcmv_window(*two_pole, -20, 20)
    rows = w[15:25, :]
    assert np.abs(rows @ rows.conj().T - np.eye(10)).max() < 1e-12


def test_magic_formula(two_pole):
    seq, z = two_pole
    report = mk.magic_check(seq, z, 0, 12)
    assert report["pass"] and report["max_deviation"] < 1e-9
    assert not mk.magic_check(seq.with_override(3, 0.5), z, 0, 12)["pass"]


def test_measure_and_roundtrip(two_pole):
    ev = mk.MonodromyEvaluator(*two_pole)
    assert mk.spectral_measure(ev)["total"] == pytest.approx(1, abs=1e-10)
    rec = np.array(mk.roundtrip(ev, 4))
    assert np.abs(rec - np.array(BLOCK)).max() < 1e-7


def test_partial_fractions_constant_term():
    pf = mk.partial_fractions(mk.evaluator([0.5, 0.5]))
    assert pf["terms"][0]["pole"] == 0
    # Delta is real on the circle
    t = 0.4
    x = complex(math.cos(t), math.sin(t))
    val = pf["c"] + 2 * (pf["terms"][0]["coeffs"][0] * x).real
    assert val == pytest.approx(mk.evaluator([0.5, 0.5]).discriminant(x).real, abs=1e-10)


def test_ahlfors():
    gaps = [(2.0, 3.0)]
    zeros = mk.ahlfors_zeros(gaps, 1j)
    assert all(abs(mk.ahlfors_eval(gaps, 1j, q)) < 1e-12 for q in zeros)
    assert abs(mk.ahlfors_eval(gaps, 1j, 5 + 1e-14j)) == pytest.approx(1, abs=1e-10)
    assert abs(mk.ahlfors_eval(gaps, 1j, 2.5 + 1e-14j)) < 1


def test_circle_sets():
    assert mk.generalized_discriminant([(0, 2 * math.pi)], 0.5) == pytest.approx(2.5)
    poles = mk.pole_vector_of_set([(-1, 1), (2, 2 * math.pi - 2)])
    assert len(poles) == 2 and poles[0] == 0 and abs(poles[1].imag) < 1e-10


def test_errors():
    with pytest.raises(ValueError):
        mk.VerblunskySequence([1.5, 0])
    assert issubclass(mk.NumericError, RuntimeError)
