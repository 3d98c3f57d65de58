"""Exact eps-subdifferential calculus for finite convex integral functionals.

Thin wrapper over the C++ core.  Rationals cross the boundary as strings
(e.g. "-3/4") so nothing is rounded; structured results come back as JSON
and are decoded here.
"""

import json as _json

try:
    from ._subint import (
        Instance as _Instance,
        SchemaError,
        NotInSubdifferentialError,
        TheoremViolationError,
        LimitExceededError,
        SubintError,
        generate as _generate,
        l2_example as _l2_example,
        l1_example as _l1_example,
    )
except ImportError:  # in-tree build: module next to the package on the path
    from _subint import (
        Instance as _Instance,
        SchemaError,
        NotInSubdifferentialError,
        TheoremViolationError,
        LimitExceededError,
        SubintError,
        generate as _generate,
        l2_example as _l2_example,
        l1_example as _l1_example,
    )

__all__ = [
    "Instance",
    "generate",
    "l2_example",
    "l1_example",
    "SchemaError",
    "NotInSubdifferentialError",
    "TheoremViolationError",
    "LimitExceededError",
    "SubintError",
]


class Instance:
    """A finite weighted family of polyhedral convex integrands."""

    def __init__(self, raw):
        self._raw = raw

    @classmethod
    def from_dict(cls, doc, enforce_limits=True):
        return cls(_Instance.from_json(_json.dumps(doc), enforce_limits))

    @classmethod
    def from_json(cls, text, enforce_limits=True):
        return cls(_Instance.from_json(text, enforce_limits))

    @property
    def dim(self):
        return self._raw.dim

    @property
    def num_atoms(self):
        return self._raw.num_atoms

    def to_dict(self):
        return _json.loads(self._raw.to_json())

    def value(self, x):
        return self._raw.value([str(c) for c in x])

    def conjugate_value(self, xstar):
        return self._raw.conjugate_value([str(c) for c in xstar])

    def inf_convolution_value(self, xstar):
        return self._raw.inf_convolution_value([str(c) for c in xstar])

    def eps_subdifferential(self, x, eps):
        return _json.loads(
            self._raw.eps_subdifferential([str(c) for c in x], str(eps)))

    def eps_normal_dom(self, x, eps):
        return _json.loads(
            self._raw.eps_normal_dom([str(c) for c in x], str(eps)))

    def aumann_integral(self, x, ell, budget):
        return _json.loads(self._raw.aumann_integral(
            [str(c) for c in x], [str(c) for c in ell], str(budget)))

    def decompose(self, x, xstar, eps):
        return _json.loads(self._raw.decompose(
            [str(c) for c in x], [str(c) for c in xstar], str(eps)))

    def verify_certificate(self, x, xstar, eps, certificate):
        return self._raw.verify_certificate(
            [str(c) for c in x], [str(c) for c in xstar], str(eps),
            _json.dumps(certificate))

    def check_sum_rule(self, x, eps, seed=0x5EED):
        return _json.loads(
            self._raw.check_sum_rule([str(c) for c in x], str(eps), seed))

    def normal_set_four_ways(self, x, eps):
        return _json.loads(
            self._raw.normal_set_four_ways([str(c) for c in x], str(eps)))

    def gateaux(self, x):
        return _json.loads(self._raw.gateaux([str(c) for c in x]))

    def br_run(self, x, xstar, eps_schedule, lambda_schedule):
        return _json.loads(self._raw.br_run(
            [str(c) for c in x], [str(c) for c in xstar],
            [str(e) for e in eps_schedule],
            [str(l) for l in lambda_schedule]))


def generate(seed, profile="box-domains"):
    return _json.loads(_generate(seed, profile))


def l2_example(dim, point):
    return _json.loads(_l2_example(dim, list(point)))


def l1_example(n_max):
    return _json.loads(_l1_example(n_max))
