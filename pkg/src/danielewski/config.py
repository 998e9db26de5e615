"""Ring configurations: JSON-friendly descriptions of R and A_{r,s}.

A configuration is a dict such as::

    {"variables": ["X", "Y", "Z"], "relation": "X^2 + Y^3 + Z^7",
     "designated": "X", "r": "x", "s": "y", "params": ["t"],
     "irreducible": true, "units_are_scalars": true}

``r``, ``s`` and ``params`` are optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InputError
from .hypersurface import HypersurfaceRing
from .parse import parse_expr
from .poly import QQ, ParamField, PolyRing
from .ring import DanielewskiRing

__all__ = ["RingConfig", "load_config", "ring_config_from_dict"]

_KEYS = {"variables", "relation", "designated", "r", "s", "params",
         "irreducible", "units_are_scalars", "name"}


@dataclass
class RingConfig:
    variables: tuple
    relation: str
    designated: str
    r: str | None = None
    s: str | None = None
    params: tuple = ()
    irreducible: bool = True
    units_are_scalars: bool = True
    name: str | None = None

    def field(self):
        return ParamField(self.params) if self.params else QQ

    def base(self):
        field = self.field()
        P = PolyRing(self.variables, field)
        F = parse_expr(self.relation, P)
        return HypersurfaceRing(self.variables, F, self.designated, field,
                                self.irreducible, self.units_are_scalars)

    def ring(self, check=True):
        """The DanielewskiRing, or None when r and s are absent."""
        if self.r is None or self.s is None:
            return None
        base = self.base()
        r = base(parse_expr(self.r, base.poly_ring))
        s = base(parse_expr(self.s, base.poly_ring))
        return DanielewskiRing(base, r, s, check=check)

    def with_pair(self, r, s):
        d = self.to_dict()
        d["r"], d["s"] = r, s
        return ring_config_from_dict(d)

    def assumptions(self):
        return {"irreducible": self.irreducible, "units_are_scalars": self.units_are_scalars}

    def to_dict(self):
        d = {
            "variables": list(self.variables),
            "relation": self.relation,
            "designated": self.designated,
            "irreducible": self.irreducible,
            "units_are_scalars": self.units_are_scalars,
        }
        if self.params:
            d["params"] = list(self.params)
        for key in ("r", "s", "name"):
            if getattr(self, key) is not None:
                d[key] = getattr(self, key)
        return d


def ring_config_from_dict(d):
    if not isinstance(d, dict):
        raise InputError("a ring configuration must be a JSON object")
    unknown = set(d) - _KEYS
    if unknown:
        raise InputError(f"unknown configuration keys: {sorted(unknown)}")
    for key in ("variables", "relation", "designated"):
        if key not in d:
            raise InputError(f"configuration is missing {key!r}")
    variables = d["variables"]
    if isinstance(variables, str):
        variables = [v.strip() for v in variables.split(",")]
    if not variables or not all(isinstance(v, str) and v.isidentifier() for v in variables):
        raise InputError("variables must be a list of identifiers")
    if any(v in ("U", "V") for v in variables):
        raise InputError("U and V are reserved for the Danielewski ring")
    if ("r" in d) != ("s" in d):
        raise InputError("give both r and s, or neither")
    params = tuple(d.get("params", ()))
    return RingConfig(
        tuple(variables), str(d["relation"]), str(d["designated"]),
        d.get("r"), d.get("s"), params,
        bool(d.get("irreducible", True)), bool(d.get("units_are_scalars", True)),
        d.get("name"),
    )


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    return ring_config_from_dict(data)
