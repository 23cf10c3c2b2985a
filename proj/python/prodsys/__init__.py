"""Exact Wick-monomial algebra over product systems, with truncated Fock checks."""

import json as _json

from . import _core

__version__ = _core.__version__

suite_ids = _core.suite_ids
demo_ids = _core.demo_ids
ConfigError = _core.ConfigError
InexactError = _core.InexactError
ParseError = _core.ParseError
UnsupportedOperation = _core.UnsupportedOperation


def _doc(config):
    if config is None:
        return ""
    if isinstance(config, str):
        return config
    return _json.dumps(config)


class System:
    """A configured product system. `config` is a dict, a JSON string or None for the default."""

    def __init__(self, config=None):
        self._impl = _core.System(_doc(config))

    @classmethod
    def from_file(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls(fh.read())

    @property
    def config(self):
        return _json.loads(self._impl.config_json())

    def normalize(self, s):
        return self._impl.normalize(s)

    def join(self, s, t):
        """The least upper bound as a string, or None when it is infinite."""
        return self._impl.join(s, t)

    def leq(self, s, t):
        return self._impl.leq(s, t)

    def wick_mul(self, a, b):
        return self._impl.wick_mul(a, b)

    def expect(self, x):
        return self._impl.expect(x)

    def norm_diag(self, x):
        return _json.loads(self._impl.norm_diag(x))

    def fock_matrix(self, x, bound=None):
        """Dense complex matrix of x on the truncated Fock space."""
        return self._impl.fock_matrix(x, bound)

    def check(self, suite, seed=1, samples=0):
        return _json.loads(self._impl.check(suite, seed, samples))


def run_demo(name):
    return _json.loads(_core.run_demo(name))


__all__ = ["System", "run_demo", "suite_ids", "demo_ids", "ConfigError", "InexactError", "ParseError", "UnsupportedOperation", "__version__"]
