"""Deliberate construction mutations used as negative controls.

Each mutation breaks one structural ingredient of the Pauli-string
construction.  A verification run under any of them must report at least one
failed check; if it does not, the checks are vacuous.

    with negative_control("sigma_x"):
        report = run_suite("grassmann", n=2)
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager

MUTATIONS = {
    "sigma_x": "grading string built from sigma_x instead of sigma_z",
    "no_string": "grading string dropped (identity in place of sigma_z)",
    "omega_flip": "symplectic matrix sign flipped",
}

_active: contextvars.ContextVar[str | None] = contextvars.ContextVar("cartanpauli_mutation", default=None)


def active_mutation() -> str | None:
    return _active.get()


@contextmanager
def negative_control(kind: str | None):
    if kind is not None and kind not in MUTATIONS:
        raise ValueError(f"unknown mutation {kind!r}; choose from {sorted(MUTATIONS)}")
    token = _active.set(kind)
    try:
        yield
    finally:
        _active.reset(token)
