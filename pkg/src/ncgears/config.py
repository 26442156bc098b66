"""Job configuration: a single JSON document describing one gear pair.

Example::

    {
      "transmission": {"name": "sinusoidal", "parameters": {"b": 0.585786437626905}},
      "m": 2, "z1": 14, "z2": 14, "alpha_deg": 20,
      "h_a_over_m": 1.0, "h_f_over_m": 1.2, "rho_over_m": 0.3,
      "tolerances": {"quad": 1e-10, "root": 1e-12, "geom": 1e-9, "max_iter": 100},
      "outputs": ["svg", "dxf", "report", "mesh-report", "base-curves"]
    }

``transmission.name`` is one of ``sinusoidal`` (parameter ``b``),
``fourier`` (lists ``sin`` and ``cos``), ``circular`` or ``custom``
(``factory`` given as ``"module:callable"`` plus keyword arguments).
"""

import json
import re
from dataclasses import dataclass, field
from math import radians

from .centrodes import ToleranceSet, make_context
from .errors import ConfigError, GearError
from .rack import RackProfile
from .transmission import from_config

OUTPUTS = ("svg", "dxf", "report", "mesh-report", "base-curves")
KEYS = {"transmission", "m", "z1", "z2", "alpha_deg", "h_a_over_m", "h_f_over_m",
        "rho_over_m", "tolerances", "outputs"}
# which config key to blame for each rack or transmission invariant
BLAME = {
    "m > 0": "m",
    "0 < alpha < pi/2": "alpha_deg",
    "h_a > 0 and h_f > 0": "h_a_over_m",
    "rho >= 0": "rho_over_m",
    "h_f > rho (1 - sin alpha)": "h_f_over_m",
    "z2 = z1": "z2",
    "z1 >= 3": "z1",
}


@dataclass
class JobConfig:
    transmission: str
    parameters: dict
    m: float
    z1: int
    z2: int
    alpha_deg: float = 20.0
    h_a_over_m: float = 1.0
    h_f_over_m: float = 1.2
    rho_over_m: float = 0.3
    tolerances: dict = field(default_factory=dict)
    outputs: list = field(default_factory=lambda: ["svg", "report"])
    source: str = ""

    def line_of(self, key):
        return key_line(self.source, key)

    def rack(self):
        return RackProfile.from_ratios(self.m, radians(self.alpha_deg), self.h_a_over_m,
                                       self.h_f_over_m, self.rho_over_m)

    def tolerance_set(self, quad=None, root=None):
        t = dict(self.tolerances)
        if quad is not None:
            t["quad"] = quad
        if root is not None:
            t["root"] = root
        return ToleranceSet(**t)

    def build(self, quad=None, root=None):
        """Transmission, rack and synthesis context; errors carry the config line."""
        try:
            spec = from_config(self.transmission, self.parameters)
        except GearError as exc:
            exc.details.setdefault("line", self.line_of("transmission"))
            raise
        try:
            rack = self.rack()
            return make_context(spec, rack, self.z1, self.z2,
                                self.tolerance_set(quad, root))
        except GearError as exc:
            key = BLAME.get(exc.invariant or "", "transmission")
            exc.details.setdefault("line", self.line_of(key))
            exc.details.setdefault("key", key)
            raise


def key_line(text, key):
    """1-based line of the first occurrence of ``"key":`` in ``text`` (0 if absent)."""
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else 0


def _fail(text, key, msg):
    raise ConfigError(msg, invariant=f"valid {key}", line=key_line(text, key), key=key)


def parse_config(text):
    """Validate a JSON config document and return a :class:`JobConfig`."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", invariant="well-formed JSON",
                          line=exc.lineno, column=exc.colno) from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object", invariant="object at top level", line=1)
    unknown = sorted(set(raw) - KEYS)
    if unknown:
        _fail(text, unknown[0], f"unknown key {unknown[0]!r}")
    for key in ("transmission", "m", "z1"):
        if key not in raw:
            raise ConfigError(f"missing required key {key!r}", invariant=f"{key} present", line=1)
    tr = raw["transmission"]
    if not isinstance(tr, dict) or not isinstance(tr.get("name"), str):
        _fail(text, "transmission", "transmission must be an object with a string 'name'")
    params = tr.get("parameters", {})
    if not isinstance(params, dict):
        _fail(text, "parameters", "transmission parameters must be an object")
    numbers = {}
    for key in ("m", "alpha_deg", "h_a_over_m", "h_f_over_m", "rho_over_m"):
        if key in raw:
            v = raw[key]
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                _fail(text, key, f"{key} must be a number")
            numbers[key] = float(v)
    for key in ("z1", "z2"):
        if key in raw:
            v = raw[key]
            if isinstance(v, bool) or not isinstance(v, int):
                _fail(text, key, f"{key} must be an integer")
    tol = raw.get("tolerances", {})
    if not isinstance(tol, dict) or set(tol) - {"quad", "root", "geom", "max_iter"}:
        _fail(text, "tolerances", "tolerances accepts quad, root, geom and max_iter")
    if any(not (isinstance(v, (int, float)) and v > 0) for v in tol.values()):
        _fail(text, "tolerances", "tolerances must be positive numbers")
    outputs = raw.get("outputs", ["svg", "report"])
    if not isinstance(outputs, list) or any(o not in OUTPUTS for o in outputs):
        _fail(text, "outputs", f"outputs must be a list drawn from {list(OUTPUTS)}")
    return JobConfig(tr["name"], dict(params), numbers["m"], raw["z1"],
                     raw.get("z2", raw["z1"]),
                     **{k: v for k, v in numbers.items() if k != "m"},
                     tolerances=dict(tol), outputs=list(outputs), source=text)


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
