"""Time-dependent driving force k(t).

A force profile is one of five variants: zero, constant, sinusoid, a
rectangular pulse, or a tabulated series with linear interpolation.  Every
variant is locally integrable, so the admissibility diagnostic
``abs_integral`` (the integral of |k| from 0 to t) is finite for finite t.

All specs are frozen dataclasses: immutable, hashable, safe to share
between threads, and serializable to a small JSON object.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass

from .errors import DomainError
from .quadrature import adaptive_simpson


@dataclass(frozen=True)
class ForcingSpec:
    """Base class for force profiles; subclasses implement k(t)."""

    def evaluate(self, t: float) -> float:
        """Force at time t. Pure and deterministic."""
        if not math.isfinite(t):
            raise DomainError(f"time must be finite, got {t!r}")
        return self._value(t)

    def _value(self, t: float) -> float:
        raise NotImplementedError

    def breakpoints(self, t0: float, t1: float) -> tuple[float, ...]:
        """Times in (t0, t1) where k or |k| is not smooth.

        Quadrature routines split integration intervals here instead of
        discovering the kinks adaptively.
        """
        return ()

    def oscillation_rate(self) -> float:
        """Fastest angular rate in k(t); 0 for non-oscillatory profiles.

        Lets quadrature panels be sized to resolve the integrand.
        """
        return 0.0

    def abs_integral(self, t: float, tol: float = 1e-10) -> float:
        """Integral of |k(s)| over [0, t], by adaptive Simpson bisection."""
        if not math.isfinite(t) or t < 0.0:
            raise DomainError(f"abs_integral needs finite t >= 0, got {t!r}")
        if t == 0.0:
            return 0.0
        return adaptive_simpson(
            lambda s: abs(self._value(s)), 0.0, t, tol=tol,
            breakpoints=self.breakpoints(0.0, t),
        )

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class ZeroForcing(ForcingSpec):
    def _value(self, t):
        return 0.0

    def abs_integral(self, t, tol=1e-10):
        if not math.isfinite(t) or t < 0.0:
            raise DomainError(f"abs_integral needs finite t >= 0, got {t!r}")
        return 0.0

    def to_dict(self):
        return {"type": "zero"}


@dataclass(frozen=True)
class ConstantForcing(ForcingSpec):
    K: float

    def _value(self, t):
        return self.K

    def abs_integral(self, t, tol=1e-10):
        if not math.isfinite(t) or t < 0.0:
            raise DomainError(f"abs_integral needs finite t >= 0, got {t!r}")
        return abs(self.K) * t

    def to_dict(self):
        return {"type": "constant", "K": self.K}


@dataclass(frozen=True)
class SinusoidForcing(ForcingSpec):
    """k(t) = A cos(Omega t + phi)."""

    A: float
    Omega: float
    phi: float = 0.0

    def _value(self, t):
        return self.A * math.cos(self.Omega * t + self.phi)

    def breakpoints(self, t0, t1):
        # Zero crossings of cos, where |k| has kinks.
        if self.Omega == 0.0 or self.A == 0.0:
            return ()
        lo = (self.Omega * t0 + self.phi - 0.5 * math.pi) / math.pi
        hi = (self.Omega * t1 + self.phi - 0.5 * math.pi) / math.pi
        first, last = math.ceil(min(lo, hi)), math.floor(max(lo, hi))
        if last - first > 100_000:
            raise DomainError("sinusoid breakpoint count over 100000; range too long")
        return tuple(
            (0.5 * math.pi + n * math.pi - self.phi) / self.Omega
            for n in range(first, last + 1)
        )

    def oscillation_rate(self):
        return abs(self.Omega)

    def to_dict(self):
        return {"type": "sinusoid", "A": self.A, "Omega": self.Omega, "phi": self.phi}


@dataclass(frozen=True)
class PulseForcing(ForcingSpec):
    """Constant force K switched on over [t_on, t_off), zero elsewhere."""

    K: float
    t_on: float
    t_off: float

    def __post_init__(self):
        if not (self.t_on < self.t_off):
            raise DomainError(f"pulse needs t_on < t_off, got [{self.t_on}, {self.t_off}]")

    def _value(self, t):
        return self.K if self.t_on <= t < self.t_off else 0.0

    def breakpoints(self, t0, t1):
        return tuple(p for p in (self.t_on, self.t_off) if t0 < p < t1)

    def to_dict(self):
        return {"type": "pulse", "K": self.K, "t_on": self.t_on, "t_off": self.t_off}


@dataclass(frozen=True)
class TabulatedForcing(ForcingSpec):
    """Piecewise-linear interpolation of (time, force) samples.

    Returns 0 outside the sampled range: the force is switched off where
    no data defines it.
    """

    samples: tuple[tuple[float, float], ...]

    def __post_init__(self):
        samples = tuple((float(t), float(k)) for t, k in self.samples)
        object.__setattr__(self, "samples", samples)
        if len(samples) < 2:
            raise DomainError("tabulated forcing needs at least 2 samples")
        times = [t for t, _ in samples]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise DomainError("tabulated forcing needs strictly increasing times")
        object.__setattr__(self, "_times", times)

    def _value(self, t):
        times = self._times
        if t < times[0] or t > times[-1]:
            return 0.0
        i = bisect_right(times, t)
        if i == len(times):
            return self.samples[-1][1]
        if i == 0:
            return self.samples[0][1]
        (t0, k0), (t1, k1) = self.samples[i - 1], self.samples[i]
        if t == t0:
            return k0
        return k0 + (k1 - k0) * (t - t0) / (t1 - t0)

    def breakpoints(self, t0, t1):
        return tuple(t for t, _ in self.samples if t0 < t < t1)

    def to_dict(self):
        return {"type": "tabulated", "samples": [[t, k] for t, k in self.samples]}


_VARIANTS = {
    "zero": ZeroForcing,
    "constant": ConstantForcing,
    "sinusoid": SinusoidForcing,
    "pulse": PulseForcing,
    "tabulated": TabulatedForcing,
}


def forcing_from_dict(data: dict) -> ForcingSpec:
    """Rebuild a ForcingSpec from its JSON object form."""
    if not isinstance(data, dict) or "type" not in data:
        raise DomainError(f"forcing JSON must be an object with a 'type' key, got {data!r}")
    kind = data["type"]
    if kind not in _VARIANTS:
        raise DomainError(f"unknown forcing type {kind!r}")
    fields = {k: v for k, v in data.items() if k != "type"}
    if kind == "tabulated":
        try:
            fields["samples"] = tuple((float(t), float(k)) for t, k in fields["samples"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"bad tabulated samples: {exc}") from exc
    try:
        return _VARIANTS[kind](**fields)
    except TypeError as exc:
        raise DomainError(f"bad fields for forcing type {kind!r}: {exc}") from exc
