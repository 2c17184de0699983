import math

import numpy as np
import pytest
from scipy.integrate import quad

from drivenosc import (
    ConstantForcing,
    DomainError,
    PulseForcing,
    SinusoidForcing,
    TabulatedForcing,
    ZeroForcing,
    forcing_from_dict,
)

ALL_SPECS = [
    ZeroForcing(),
    ConstantForcing(K=2.0),
    SinusoidForcing(A=1.0, Omega=math.pi, phi=0.0),
    PulseForcing(K=1.5, t_on=0.5, t_off=2.0),
    TabulatedForcing(samples=((0.0, 0.0), (1.0, 2.0), (2.5, -1.0))),
]


class TestEvaluate:
    def test_zero(self):
        assert ZeroForcing().evaluate(3.7) == 0.0

    def test_constant(self):
        assert ConstantForcing(K=2.0).evaluate(5.0) == 2.0

    def test_sinusoid_quarter_period(self):
        # cos(pi/2) = 0
        assert SinusoidForcing(A=1.0, Omega=math.pi, phi=0.0).evaluate(0.5) == pytest.approx(0.0, abs=1e-15)

    def test_pulse_window(self):
        p = PulseForcing(K=1.5, t_on=0.5, t_off=2.0)
        assert p.evaluate(0.4) == 0.0
        assert p.evaluate(1.0) == 1.5
        assert p.evaluate(2.1) == 0.0

    def test_tabulated_interpolation_and_outside(self):
        t = TabulatedForcing(samples=((0.0, 0.0), (1.0, 2.0), (2.5, -1.0)))
        assert t.evaluate(0.5) == pytest.approx(1.0)
        assert t.evaluate(1.75) == pytest.approx(0.5)
        assert t.evaluate(-0.1) == 0.0
        assert t.evaluate(3.0) == 0.0

    def test_tabulated_exact_at_samples(self):
        samples = ((0.0, 0.3), (0.7, -1.2), (1.1, 0.9), (4.0, 2.0))
        t = TabulatedForcing(samples=samples)
        for ts, ks in samples:
            assert t.evaluate(ts) == ks  # exact, not approximate

    @pytest.mark.parametrize("spec", ALL_SPECS)
    def test_nonfinite_time_rejected(self, spec):
        with pytest.raises(DomainError):
            spec.evaluate(math.inf)
        with pytest.raises(DomainError):
            spec.evaluate(math.nan)

    @pytest.mark.parametrize("spec", ALL_SPECS)
    def test_deterministic(self, spec):
        for t in (0.0, 0.31, 1.78, 2.4):
            assert spec.evaluate(t) == spec.evaluate(t)


class TestValidation:
    def test_pulse_needs_ordered_window(self):
        with pytest.raises(DomainError):
            PulseForcing(K=1.0, t_on=2.0, t_off=1.0)

    def test_tabulated_needs_two_samples(self):
        with pytest.raises(DomainError):
            TabulatedForcing(samples=((0.0, 1.0),))

    def test_tabulated_needs_increasing_times(self):
        with pytest.raises(DomainError):
            TabulatedForcing(samples=((0.0, 1.0), (0.0, 2.0)))


class TestAbsIntegral:
    def test_zero(self):
        assert ZeroForcing().abs_integral(10.0) == 0.0

    def test_constant(self):
        assert ConstantForcing(K=2.0).abs_integral(3.0) == pytest.approx(6.0)

    def test_sinusoid_closed_form(self):
        # integral of |cos(2 pi s)| over [0, 1] is 2/pi
        spec = SinusoidForcing(A=1.0, Omega=2 * math.pi, phi=0.0)
        assert spec.abs_integral(1.0, tol=1e-12) == pytest.approx(2.0 / math.pi, abs=1e-11)

    def test_pulse(self):
        spec = PulseForcing(K=-2.0, t_on=0.5, t_off=2.0)
        assert spec.abs_integral(1.0) == pytest.approx(1.0, abs=1e-10)
        assert spec.abs_integral(5.0) == pytest.approx(3.0, abs=1e-10)

    def test_tabulated_vs_quadpack(self):
        spec = TabulatedForcing(samples=((0.0, 1.0), (1.0, -1.0), (2.0, 0.5)))
        ref, _ = quad(lambda s: abs(spec.evaluate(s)), 0.0, 2.0,
                      points=[0.5, 1.0, 1.75], epsabs=1e-13)
        assert spec.abs_integral(2.0, tol=1e-12) == pytest.approx(ref, abs=1e-10)

    @pytest.mark.parametrize("spec", ALL_SPECS)
    def test_monotone_in_time(self, spec):
        times = np.linspace(0.0, 4.0, 17)
        vals = [spec.abs_integral(float(t), tol=1e-11) for t in times]
        assert all(b >= a - 1e-10 for a, b in zip(vals, vals[1:]))

    def test_negative_time_rejected(self):
        with pytest.raises(DomainError):
            ConstantForcing(K=1.0).abs_integral(-1.0)


class TestSerialization:
    @pytest.mark.parametrize("spec", ALL_SPECS)
    def test_round_trip(self, spec):
        clone = forcing_from_dict(spec.to_dict())
        assert clone == spec
        for t in (0.0, 0.6, 1.3, 3.3):
            assert clone.evaluate(t) == spec.evaluate(t)

    def test_wire_format(self):
        assert ConstantForcing(K=2.0).to_dict() == {"type": "constant", "K": 2.0}
        assert TabulatedForcing(samples=((0.0, 1.0), (1.0, 2.0))).to_dict() == {
            "type": "tabulated", "samples": [[0.0, 1.0], [1.0, 2.0]]}

    def test_unknown_type_rejected(self):
        with pytest.raises(DomainError):
            forcing_from_dict({"type": "sawtooth"})

    def test_bad_fields_rejected(self):
        with pytest.raises(DomainError):
            forcing_from_dict({"type": "constant", "amplitude": 1.0})
