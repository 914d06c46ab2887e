"""Parsing of ``key = value`` run configurations.

Keys carry their unit as a suffix (``Gamma10_MHz``, ``T_mK``, ``P_dBm``).
Two pseudo-units are understood: ``rel`` for photon fluxes means
N / (Gamma10 / 2 pi), and for detunings means units of the relevant
linewidth (gamma10 for the two-level scan, Gamma10 for the three-level scan).
Lines starting with ``#`` and trailing ``# ...`` comments are ignored.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import (ConfigError, MalformedNumberError, MissingKeyError, UnitSuffixError,
                     UnknownKeyError)
from .params import H_PLANCK

SCENARIOS = ("spectrum", "two-level", "three-level", "g2")
FORMATS = ("csv", "csv+plotscript")

TWO_PI = 2.0 * math.pi

# unit -> factor to SI; frequency factors give rad/s
_UNITS = {
    "frequency": {"Hz": TWO_PI, "kHz": TWO_PI * 1e3, "MHz": TWO_PI * 1e6, "GHz": TWO_PI * 1e9},
    "energy": {"J": 1.0, "MHz": H_PLANCK * 1e6, "GHz": H_PLANCK * 1e9},
    "temperature": {"K": 1.0, "mK": 1e-3},
    "power": {"W": None, "dBm": None},
    "capacitance": {"F": 1.0, "pF": 1e-12, "fF": 1e-15},
    "impedance": {"ohm": 1.0},
    "voltage": {"V": 1.0, "mV": 1e-3, "uV": 1e-6},
    "time": {"s": 1.0, "us": 1e-6, "ns": 1e-9},
    "flux": {"per_s": 1.0, "rel": None},
    "detuning": {"rel": None, "Hz": TWO_PI, "kHz": TWO_PI * 1e3, "MHz": TWO_PI * 1e6,
                 "GHz": TWO_PI * 1e9},
    "int": {},
    "str": {},
    "bool": {},
    "float": {},
}

# base name -> (kind, allows a comma-separated list)
_KEYS = {
    "scenario": ("str", False),
    "output": ("str", False),
    "format": ("str", False),
    "method": ("str", False),
    # circuit
    "Cc": ("capacitance", False),
    "CJ": ("capacitance", False),
    "EJ": ("energy", False),
    "Z0": ("impedance", False),
    "VDC": ("voltage", False),
    "ng": ("float", False),
    "nPorts": ("int", False),
    "nLevels": ("int", False),
    "nCut": ("int", False),
    "T": ("temperature", True),
    # drives and rates
    "f10": ("frequency", False),
    "Gamma10": ("frequency", False),
    "Gamma21": ("frequency", False),
    "gamma10": ("frequency", False),
    "gamma20": ("frequency", False),
    "gamma21": ("frequency", False),
    "Nin": ("flux", False),
    "NinP": ("flux", False),
    "NinC": ("flux", True),
    "NinC_min": ("flux", False),
    "NinC_max": ("flux", False),
    "NinC_points": ("int", False),
    "NinC_spacing": ("str", False),
    "P": ("power", False),
    "delta_min": ("detuning", False),
    "delta_max": ("detuning", False),
    "delta_points": ("int", False),
    "deltaP": ("detuning", False),
    "deltaP_min": ("detuning", False),
    "deltaP_max": ("detuning", False),
    "deltaP_points": ("int", False),
    "deltaC": ("detuning", False),
    "sweep": ("str", False),
    # g2
    "BW": ("frequency", True),
    "field": ("str", False),
    "filtered": ("bool", False),
    "nFock": ("int", False),
    "tau_max": ("time", False),
    "tau_points": ("int", False),
    "thermal_factor": ("str", False),
}

_REQUIRED = {
    "spectrum": ("Cc", "CJ", "EJ"),
    "two-level": ("Gamma10",),
    "three-level": ("Gamma10",),
    "g2": ("Gamma10", "f10"),
}


@dataclass(frozen=True)
class Quantity:
    """A parsed value with the unit suffix it was given in."""

    value: object
    unit: str | None
    line: int
    kind: str = "str"

    def si(self):
        """Value in SI units (frequencies in rad/s); pseudo-units are left as is."""
        f = _UNITS[self.kind].get(self.unit) if self.unit else None
        if f is None:
            return self.value
        if isinstance(self.value, list):
            return [v * f for v in self.value]
        return self.value * f


@dataclass
class RunConfig:
    scenario: str
    values: dict = field(default_factory=dict)
    output: str | None = None
    format: str = "csv"

    def has(self, key):
        return key in self.values

    def get(self, key, default=None):
        q = self.values.get(key)
        return default if q is None else q

    def unit(self, key):
        return self.values[key].unit

    def si(self, key, default=None):
        q = self.values.get(key)
        return default if q is None else q.si()

    def raw(self, key, default=None):
        q = self.values.get(key)
        return default if q is None else q.value

    def require(self, key):
        if key not in self.values:
            raise MissingKeyError(f"missing required key {key!r} for scenario {self.scenario!r}",
                                  key=key)
        return self.values[key]


def _split_key(key, line):
    if key in _KEYS:
        units = _UNITS[_KEYS[key][0]]
        if units:
            raise UnitSuffixError(
                f"key {key!r} needs a unit suffix (one of: {', '.join(units)})", key=key,
                line=line)
        return key, None
    best = None
    for base in _KEYS:
        if key.startswith(base + "_") and (best is None or len(base) > len(best)):
            best = base
    if best is None:
        raise UnknownKeyError(f"unknown key {key!r}", key=key, line=line)
    suffix = key[len(best) + 1:]
    kind = _KEYS[best][0]
    if suffix not in _UNITS[kind]:
        allowed = ", ".join(_UNITS[kind]) or "no suffix"
        raise UnitSuffixError(
            f"key {key!r}: unit suffix {suffix!r} not valid for {best!r} (allowed: {allowed})",
            key=key, line=line)
    return best, suffix


def _number(text, key, line, integer=False):
    try:
        if integer:
            v = float(text)
            if v != int(v):
                raise ValueError
            return int(v)
        v = float(text)
    except ValueError:
        kind = "integer" if integer else "number"
        raise MalformedNumberError(f"key {key!r}: malformed {kind} {text!r}", key=key,
                                   line=line) from None
    if not math.isfinite(v):
        raise MalformedNumberError(f"key {key!r}: non-finite value {text!r}", key=key, line=line)
    return v


def _convert(base, unit, text, key, line):
    kind, listy = _KEYS[base]
    if kind == "str":
        return text
    if kind == "bool":
        low = text.lower()
        if low in ("true", "yes", "1", "on"):
            return True
        if low in ("false", "no", "0", "off"):
            return False
        raise MalformedNumberError(f"key {key!r}: expected a boolean, got {text!r}", key=key,
                                   line=line)
    parts = [p.strip() for p in text.split(",")]
    if len(parts) > 1 and not listy:
        raise MalformedNumberError(f"key {key!r} does not accept a list", key=key, line=line)
    vals = [_number(p, key, line, integer=(kind == "int")) for p in parts]
    return vals if listy else vals[0]


def parse_config(text: str, scenario: str | None = None) -> RunConfig:
    """Parse and validate a configuration.

    ``scenario`` overrides (and must agree with) a ``scenario`` key in the text.
    """
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", line=lineno)
        key, _, val = (s.strip() for s in line.partition("="))
        if not key or not val:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", key=key or None,
                              line=lineno)
        base, unit = _split_key(key, lineno)
        if base in values:
            raise ConfigError(f"key {key!r} given twice (first on line {values[base].line})",
                              key=key, line=lineno)
        values[base] = Quantity(_convert(base, unit, val, key, lineno), unit, lineno,
                                _KEYS[base][0])

    given = values.pop("scenario", None)
    if scenario is None:
        if given is None:
            raise MissingKeyError("missing required key 'scenario'", key="scenario")
        scenario = given.value
    elif given is not None and given.value != scenario:
        raise ConfigError(f"config scenario {given.value!r} conflicts with {scenario!r}",
                          key="scenario", line=given.line)
    if scenario not in SCENARIOS:
        raise ConfigError(f"unknown scenario {scenario!r} (choose from {', '.join(SCENARIOS)})",
                          key="scenario")
    out = values.pop("output", None)
    fmt = values.pop("format", None)
    cfg = RunConfig(scenario=scenario, values=values,
                    output=out.value if out else None,
                    format=fmt.value if fmt else "csv")
    if cfg.format not in FORMATS:
        raise ConfigError(f"unknown format {cfg.format!r}", key="format")
    for key in _REQUIRED[scenario]:
        cfg.require(key)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig):
    s = cfg.scenario
    needs_f10 = cfg.has("P") or (cfg.has("T") and any(t > 0 for t in _as_list(cfg.si("T"))))
    if s in ("two-level", "three-level") and needs_f10 and not cfg.has("f10"):
        raise MissingKeyError("key 'f10' is required when P or a non-zero T is given", key="f10")
    if s == "two-level" and not (cfg.has("Nin") or cfg.has("P")):
        raise MissingKeyError("two-level scenario needs 'Nin_rel', 'Nin_per_s' or 'P_dBm'",
                              key="Nin")
    if s == "g2" and not (cfg.has("Nin") or cfg.has("P")):
        raise MissingKeyError("g2 scenario needs 'P_dBm' or a 'Nin' key", key="P")
    if s == "three-level":
        sweep = cfg.raw("sweep", "detuning")
        if sweep not in ("detuning", "control"):
            raise ConfigError(f"key 'sweep': unknown value {sweep!r}", key="sweep")
        if sweep == "control":
            for k in ("NinC_min", "NinC_max"):
                cfg.require(k)
        elif not cfg.has("NinC"):
            raise MissingKeyError("detuning sweep needs 'NinC' (one value or a list)", key="NinC")
    if s == "g2" and cfg.raw("filtered", True):
        cfg.require("BW")
    for k in ("method", "field", "thermal_factor", "NinC_spacing"):
        allowed = {
            "method": ("analytic", "numeric", "both"),
            "field": ("reflected", "transmitted"),
            "thermal_factor": ("verbatim", "conventional"),
            "NinC_spacing": ("log", "linear"),
        }[k]
        if cfg.has(k) and cfg.raw(k) not in allowed:
            q = cfg.get(k)
            raise ConfigError(f"key {k!r}: {q.value!r} not one of {allowed}", key=k, line=q.line)


def _as_list(v):
    return v if isinstance(v, list) else [v]
