"""Runtime knobs: lattice gate and solver cap.

Values live in a context variable so that overrides are scoped and thread-local::

    with override(lattice_gate=16):
        ...
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    lattice_gate: int = 20
    solver_cap: int = 24
    # Fourier-Motzkin gives up (verdict Unknown) once a stage holds more rows.
    fm_row_limit: int = 20000


_current: contextvars.ContextVar[Settings] = contextvars.ContextVar("dsgraphoid_settings", default=Settings())


def get() -> Settings:
    return _current.get()


@contextlib.contextmanager
def override(**changes):
    token = _current.set(replace(_current.get(), **changes))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
