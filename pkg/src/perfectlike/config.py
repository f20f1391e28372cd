"""Vertex budget for operations that allocate an array over the whole space.

Precedence: explicit ``set_budget``/``budget`` context > environment variable
``PERFECTLIKE_BUDGET`` > default of 2**28 vertices.
"""

import os
from contextlib import contextmanager

DEFAULT_BUDGET = 2**28
ENV_VAR = "PERFECTLIKE_BUDGET"

_override = None


def get_budget() -> int:
    if _override is not None:
        return _override
    env = os.environ.get(ENV_VAR)
    if env:
        return int(env)
    return DEFAULT_BUDGET


def set_budget(value):
    global _override
    _override = None if value is None else int(value)


@contextmanager
def budget(value):
    global _override
    old = _override
    _override = int(value)
    try:
        yield
    finally:
        _override = old
