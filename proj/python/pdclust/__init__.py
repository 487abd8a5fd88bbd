"""Python bindings for the pdclust clustering library."""

import json

from . import _pdclust
from ._pdclust import Error, InputError, complexity_reduction, frechet, kl_median

__all__ = ["Error", "InputError", "solve", "brute_force", "frechet", "complexity_reduction", "kl_median", "verify"]


def _text(instance):
    return instance if isinstance(instance, str) else json.dumps(instance)


def solve(instance, mode, k=None, epsilon=0.25, regime="auto", seed=0, repeats=1):
    """Solve facility location ("fl") or k-median ("kmedian"); returns the solution dict."""
    return json.loads(_pdclust.solve(_text(instance), mode, k, epsilon, regime, seed, repeats))


def brute_force(instance, mode, k=None):
    return json.loads(_pdclust.brute_force(_text(instance), mode, k))


def verify(suite, trials=None, seed=0):
    return json.loads(_pdclust.verify(suite, trials, seed))
