import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wqed import g2corr
from wqed.errors import ParameterError, TruncationError, UnsupportedCaseError, ZeroOccupationError
from wqed.g2corr import (G2Config, build_cascaded_liouvillian, converged_nfock, g2, g2_filtered,
                         g2_unfiltered, g2_zero, steady_state_of, trace_preserving)
from wqed.params import power_to_flux

MHz = 2 * math.pi * 1e6
W10 = 2 * math.pi * 5.12e9
NIN = power_to_flux(-131, W10, unit="dBm")


def detector(T=0.0, bw=1000.0, **kw):
    return G2Config(T=T, gammaBW=bw * MHz, Gamma10=41 * MHz, omega10=W10, Nin=NIN, **kw)


def test_config_validation():
    with pytest.raises(ParameterError):
        detector(field="sideways")
    with pytest.raises(ParameterError):
        detector(nFock=1)
    with pytest.raises(ParameterError):
        detector(bw=0.0)
    with pytest.raises(ParameterError):
        detector(tauGrid=[0.0, 2e-9, 1e-9])
    with pytest.raises(ParameterError):
        detector(thermal_factor="symmetric")
    with pytest.raises(ParameterError):
        G2Config(Nin=-1.0)
    with pytest.raises(ParameterError):
        build_cascaded_liouvillian(detector(filtered=False))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["reflected", "transmitted"]), st.floats(min_value=0, max_value=0.2),
       st.integers(min_value=2, max_value=6), st.floats(min_value=1, max_value=2000),
       st.floats(min_value=0, max_value=1e9), st.sampled_from(["verbatim", "conventional"]))
def test_generators_trace_preserving(field, T, n, bw, Nin, tf):
    cfg = G2Config(field=field, T=T, nFock=n, gammaBW=bw * MHz, Nin=Nin, thermal_factor=tf)
    assert trace_preserving(cfg)
    assert trace_preserving(replace(cfg, filtered=False))


def test_undriven_ground_state():
    rho = steady_state_of(G2Config(Nin=0.0, nFock=4))
    ground = np.zeros(8)
    ground[0] = 1
    assert np.allclose(rho, np.outer(ground, ground), atol=1e-10)


def test_zero_occupation():
    with pytest.raises(ZeroOccupationError):
        g2_filtered(G2Config(Nin=0.0, nFock=4), auto_truncate=False)


def test_unfiltered_antibunching():
    cfg = detector(filtered=False, tauGrid=np.linspace(0, 400e-9, 401))
    c = g2_unfiltered(cfg)
    assert abs(c.values[0]) <= 1e-8
    assert abs(c.values[-1] - 1) <= 1e-3
    assert np.all(c.values >= -1e-12)


def test_unfiltered_transmitted_unsupported():
    with pytest.raises(UnsupportedCaseError):
        g2_unfiltered(detector(filtered=False, field="transmitted"))


def test_detector_ordering_and_values():
    a = g2_zero(detector(0.0, 1000.0))
    b = g2_zero(detector(0.0, 55.0))
    c = g2_zero(detector(0.05, 55.0))
    assert c > b > a
    assert a < 0.1
    # frozen at nFock = 8
    assert a == pytest.approx(0.0021149, rel=1e-4)
    assert b == pytest.approx(0.2460, rel=1e-3)
    assert c == pytest.approx(0.3460, rel=1e-3)


def test_conventional_thermal_factor_more_bunched():
    v = g2_zero(detector(0.05, 55.0))
    c = g2_zero(detector(0.05, 55.0, thermal_factor="conventional"))
    assert c > v
    assert c == pytest.approx(0.469, abs=2e-3)


@pytest.mark.parametrize("T, bw", [(0.0, 1000.0), (0.0, 55.0), (0.05, 55.0)])
def test_fock_convergence(T, bw):
    cfg = detector(T, bw)
    assert converged_nfock(cfg) == 8
    assert abs(g2_zero(cfg) - g2_zero(replace(cfg, nFock=10))) < 1e-3


def test_truncation_error(monkeypatch):
    monkeypatch.setattr(g2corr, "MAX_NFOCK", 4)
    with pytest.raises(TruncationError):
        converged_nfock(detector(nFock=2), tol=0.0)


def test_filtered_dip_recovers():
    c = g2(detector(0.0, 1000.0))
    assert c.values[0] < 0.1
    assert abs(c.values[-1] - 1) < 1e-2
    assert np.all(c.values >= 0)


def test_wide_filter_approaches_unfiltered():
    taus = np.linspace(0, 100e-9, 101)
    wide = g2_filtered(detector(0.0, 50 * 41.0, tauGrid=taus))
    bare = g2_unfiltered(detector(filtered=False, tauGrid=taus))
    assert np.abs(wide.values - bare.values).max() < 0.05


def test_transmitted_field_bunches():
    c = g2(detector(0.0, 1000.0, field="transmitted", tauGrid=np.linspace(0, 200e-9, 51)))
    assert c.values[0] > 1
    assert abs(c.values[-1] - 1) < 1e-2
