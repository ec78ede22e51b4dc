"""Connectivity systems: set families, exact widths and theorem audits.

Every query returns plain Python data (dicts and lists of label lists).
"""

import json

from ._core import ConnsysError, version
from ._core import System as _Core

__all__ = ["ConnsysError", "System", "version"]


class System:
    """A validated symmetric submodular function on a labelled ground set."""

    def __init__(self, core):
        self._core = core

    @classmethod
    def from_json(cls, instance, seed=None):
        """Build from an instance document (dict or JSON text)."""
        text = instance if isinstance(instance, str) else json.dumps(instance)
        core = _Core.from_json(text) if seed is None else _Core.from_json(text, seed)
        return cls(core)

    @classmethod
    def edge_cut(cls, vertices, edges):
        return cls(_Core.edge_cut(vertices, [tuple(e) for e in edges]))

    @classmethod
    def vertex_cut(cls, vertices, edges):
        return cls(_Core.vertex_cut(vertices, [tuple(e) for e in edges]))

    @property
    def size(self):
        return self._core.size

    @property
    def labels(self):
        return list(self._core.labels)

    @property
    def max_value(self):
        return self._core.max_value

    def evaluate(self, subset):
        return self._core.evaluate(list(subset))

    def to_json(self):
        return json.loads(self._core.to_json())

    def branch_width(self, workers=1):
        return json.loads(self._core.width("branch", workers))

    def linear_width(self):
        return json.loads(self._core.width("linear"))

    def certificate_width(self, certificate):
        return self._core.certificate_width(json.dumps(certificate))

    def check_family(self, kind, sets, k, mode="QS1"):
        return json.loads(self._core.check_family(kind, [list(s) for s in sets], k, mode))

    def enumerate(self, kind, k, non_principal=False, limit=None, workers=1):
        return json.loads(self._core.enumerate(kind, k, non_principal, limit, workers))

    def construct_ultrafilter(self, k):
        return json.loads(self._core.construct_ultrafilter(k))

    def extend_filter(self, sets, k):
        return json.loads(self._core.extend_filter([list(s) for s in sets], k))

    def generate(self, subbase, k):
        return json.loads(self._core.generate([list(s) for s in subbase], k))

    def ultrafilter_number(self, k):
        return json.loads(self._core.ultrafilter_number(k))

    def duality(self, kind, k):
        return json.loads(self._core.duality(kind, k))

    def audit(self, theorems="all", k=0, workers=1):
        return json.loads(self._core.audit(theorems, k, workers))

    def dilworth(self, k):
        return json.loads(self._core.dilworth(k))
