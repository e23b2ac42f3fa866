"""Enumeration caps for the exhaustive routines.

Defaults can be overridden with the ``GEODIST_CAPS`` environment variable,
either as a JSON object or as ``key=value`` pairs separated by commas::

    GEODIST_CAPS="path_vertices=10,reliability_arcs=22"
"""

import dataclasses
import json
import os

from .errors import PreconditionError


@dataclasses.dataclass(frozen=True)
class Caps:
    path_vertices: int = 12     # simple-path enumeration: max n
    reliability_arcs: int = 20  # arc-subset enumeration: max m
    forest_vertices: int = 8
    forest_arcs: int = 16
    ie_paths: int = 15          # inclusion-exclusion: max number of paths

    @classmethod
    def from_env(cls, environ=None):
        environ = os.environ if environ is None else environ
        raw = environ.get("GEODIST_CAPS", "").strip()
        if not raw:
            return cls()
        if raw.startswith("{"):
            values = json.loads(raw)
        else:
            values = {}
            for item in raw.split(","):
                if not item.strip():
                    continue
                key, sep, val = item.partition("=")
                if not sep:
                    raise PreconditionError(f"GEODIST_CAPS: expected key=value, got {item!r}")
                values[key.strip()] = val.strip()
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise PreconditionError(f"GEODIST_CAPS: unknown caps {sorted(unknown)}")
        return cls(**{k: int(v) for k, v in values.items()})


def default_caps():
    return Caps.from_env()
