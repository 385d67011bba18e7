import math

import pytest

import lineshape as ls


def make_signal(components, n=128, sigma2=0.0, seed=0):
    return ls.synthesize(components, ls.TimeGrid.unit(n), sigma2, seed)


def test_component_roundtrip():
    c = ls.ComponentParams(r=1.5, phi=0.3, omega=0.9, beta=0.01,
                           cls=ls.ModelClass.Lorentzian)
    assert c.r == 1.5
    assert c.cls == ls.ModelClass.Lorentzian
    assert "lorentzian" in repr(c)


def test_validation_raises():
    with pytest.raises(Exception):
        ls.ComponentParams(r=-1.0)
    with pytest.raises(Exception):
        ls.ComponentParams(beta=0.1)  # cisoid may not decay


def test_envelope_and_synthesis():
    assert ls.envelope(0.0, 0.3, 0.01) == 1.0
    assert ls.envelope(2.0, 0.5, 0.0) == pytest.approx(math.exp(-1.0))
    comps = [ls.ComponentParams(r=1.0, omega=0.7)]
    rec = make_signal(comps)
    assert len(rec.samples) == 128
    assert ls.nls_cost(rec, comps) < 1e-20


def test_synthesis_deterministic():
    comps = [ls.ComponentParams(r=1.0, omega=0.7)]
    a = make_signal(comps, sigma2=1e-3, seed=5)
    b = make_signal(comps, sigma2=1e-3, seed=5)
    assert a.samples == b.samples


def test_periodogram_parseval():
    rec = make_signal([], n=64, sigma2=1.0, seed=9)
    per = ls.periodogram(rec)
    assert sum(per.values) == pytest.approx(
        sum(abs(z) ** 2 for z in rec.samples), rel=1e-10)


def test_f_distribution():
    # F(2, 10) closed form
    x = 4.102821
    assert ls.f_cdf(x, 2.0, 10.0) == pytest.approx(0.95, abs=1e-5)
    assert ls.f_upper_quantile(0.05, 2.0, 10.0) == pytest.approx(x, abs=1e-4)
    v = ls.f_quantile_test(1.0, 14, 112, 0.05)
    assert v.sufficient


def test_pseudo_true_cisoid():
    psi = ls.ComponentParams(r=1.0, omega=1.1, beta=1.0 / 200.0,
                             cls=ls.ModelClass.Lorentzian)
    res = ls.pseudo_true_cisoid(psi, ls.TimeGrid.unit(200))
    assert res.r0 == pytest.approx(0.6337021771429111, rel=1e-12)
    assert res.omega0 == 1.1


def test_pseudo_true_lorentzian_bracket():
    psi = ls.ComponentParams(r=1.0, omega=1.5, beta=1.0 / 150.0, gamma=1e-5,
                             cls=ls.ModelClass.Voigt)
    res = ls.pseudo_true_lorentzian(psi, ls.TimeGrid.unit(200))
    assert res.beta0 is not None
    lo, hi = res.bracket
    assert lo < res.beta0 <= hi
    assert res.beta0 - psi.beta == pytest.approx(1.538147e-3, rel=1e-3)


def test_fit_single():
    truth = ls.ComponentParams(r=1.2, phi=0.4, omega=2 * math.pi * 17.3 / 128)
    rec = make_signal([truth])
    est = ls.fit_single(rec, ls.ModelClass.Cisoid)
    assert est.omega == pytest.approx(truth.omega, abs=1e-5)
    assert est.r == pytest.approx(1.2, rel=1e-4)


def test_pipeline_classifies():
    comps = [
        ls.ComponentParams(r=1.0, phi=0.3, omega=0.7),
        ls.ComponentParams(r=1.0, phi=1.1, omega=1.5, beta=1.0 / 150.0,
                           gamma=1e-5, cls=ls.ModelClass.Voigt),
    ]
    rec = make_signal(comps, n=200, sigma2=1e-4, seed=3)
    report = ls.run_pipeline(rec)
    assert len(report.components) == 2
    classes = sorted(c.final_class.name for c in report.components)
    assert classes == ["Cisoid", "Voigt"]
    assert report.steps_executed == 5
    assert report.noise_variance_estimate == pytest.approx(1e-4, rel=0.5)


def test_crlb():
    comps = [ls.ComponentParams(r=0.9, phi=0.4, omega=1.3)]
    f = ls.fisher_information(comps, ls.TimeGrid.unit(50), 2e-3)
    diag = ls.crlb_diag(f, ls.active_mask(comps))
    n = 50
    expect = 6 * 2e-3 / (0.9 ** 2 * n * (n ** 2 - 1))
    assert diag[2] == pytest.approx(expect, rel=1e-6)


def test_classify_residual():
    leftover = [ls.ComponentParams(r=0.5, phi=0.3, omega=2 * math.pi * 70 / 128)]
    residual = make_signal(leftover, n=128, sigma2=1e-4, seed=17)
    omegas = [2 * math.pi * 20 / 128, 2 * math.pi * 70 / 128]
    verdicts = ls.classify_residual(residual, omegas, 3, 0.01)
    assert verdicts[0].sufficient
    assert not verdicts[1].sufficient
