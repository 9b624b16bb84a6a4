"""Variables, product frames of discernment and their subset algebra.

Configurations of a frame are numbered by a mixed-radix code in variable
declaration order (the first variable is the most significant digit), so the
numbering coincides with the lexicographic order of value tuples.  A set of
configurations is an ``int`` bit mask: bit ``i`` set means configuration ``i``
belongs to the set.  Python integers are unbounded, so the same representation
serves every frame size.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import FrameError


@dataclass(frozen=True)
class Variable:
    name: str
    domain: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(str(v) for v in self.domain))
        if not self.name or not str(self.name).strip():
            raise FrameError("variable name must be nonempty")
        if not self.domain:
            raise FrameError(f"variable {self.name!r} has an empty domain")
        if len(set(self.domain)) != len(self.domain):
            raise FrameError(f"variable {self.name!r} has repeated domain labels")

    def __len__(self):
        return len(self.domain)


class Frame:
    """An ordered product of finite variable domains."""

    __slots__ = ("variables", "names", "radices", "strides", "size", "_by_name", "_hash")

    def __init__(self, variables: Iterable[Variable] = ()):
        variables = tuple(variables)
        names = tuple(v.name for v in variables)
        if len(set(names)) != len(names):
            raise FrameError(f"duplicate variable names in {names}")
        self.variables = variables
        self.names = names
        self.radices = tuple(len(v) for v in variables)
        strides = []
        acc = 1
        for r in reversed(self.radices):
            strides.append(acc)
            acc *= r
        self.strides = tuple(reversed(strides))
        self.size = acc
        self._by_name = {v.name: v for v in variables}
        self._hash = hash(variables)

    def __eq__(self, other):
        return isinstance(other, Frame) and self.variables == other.variables

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = "; ".join(f"{v.name}={' '.join(v.domain)}" for v in self.variables)
        return f"Frame({inner})"

    def __contains__(self, name):
        return name in self._by_name

    def __len__(self):
        return len(self.variables)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    @property
    def varset(self) -> frozenset[str]:
        return frozenset(self.names)

    def variable(self, name: str) -> Variable:
        try:
            return self._by_name[name]
        except KeyError:
            raise FrameError(f"unknown variable {name!r}") from None

    def encode(self, values: Sequence) -> int:
        """Index of a configuration given as labels or integer positions."""
        if len(values) != len(self.variables):
            raise FrameError(f"expected {len(self.variables)} values, got {len(values)}")
        index = 0
        for var, stride, value in zip(self.variables, self.strides, values):
            if isinstance(value, int) and not isinstance(value, bool):
                if not 0 <= value < len(var):
                    raise FrameError(f"value index {value} out of range for {var.name}")
                pos = value
            else:
                try:
                    pos = var.domain.index(str(value))
                except ValueError:
                    raise FrameError(f"unknown value {value!r} for variable {var.name}") from None
            index += pos * stride
        return index

    def decode_positions(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.size:
            raise FrameError(f"configuration index {index} out of range")
        return tuple((index // s) % r for s, r in zip(self.strides, self.radices))

    def decode(self, index: int) -> tuple[str, ...]:
        return tuple(v.domain[i] for v, i in zip(self.variables, self.decode_positions(index)))

    def subframe(self, names: Iterable[str]) -> "Frame":
        """Frame over a subset of the variables, keeping this frame's order."""
        wanted = as_varset(self, names)
        return Frame(v for v in self.variables if v.name in wanted)

    def configurations(self) -> Iterator[tuple[str, ...]]:
        for i in range(self.size):
            yield self.decode(i)


UNIT = Frame(())


def build_frame(variables: Iterable[Variable | tuple]) -> Frame:
    """Build a frame from ``Variable`` objects or ``(name, domain)`` pairs."""
    vs = [v if isinstance(v, Variable) else Variable(v[0], tuple(v[1])) for v in variables]
    return Frame(vs)


def as_varset(frame: Frame, names: Iterable[str] | str | None) -> frozenset[str]:
    """Validate a collection of variable names against ``frame``."""
    if names is None:
        return frozenset()
    if isinstance(names, str):
        names = [n for n in names.replace(",", " ").split() if n]
    out = frozenset(n.name if isinstance(n, Variable) else n for n in names)
    unknown = out - frame.varset
    if unknown:
        raise FrameError(f"unknown variables {sorted(unknown)} for {frame!r}")
    return out


def union_frame(a: Frame, b: Frame) -> Frame:
    """Smallest frame containing both; shared variables must agree on domains."""
    for name in a.varset & b.varset:
        if a.variable(name) != b.variable(name):
            raise FrameError(f"variable {name!r} has different domains in the two frames")
    if b.varset <= a.varset:
        return a
    if a.varset <= b.varset:
        return b
    return Frame(a.variables + tuple(v for v in b.variables if v.name not in a))


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@lru_cache(maxsize=4096)
def projection_map(source: Frame, target: Frame) -> tuple[int, ...]:
    """For every configuration of ``source``, its projection's index in ``target``.

    ``target`` may list its variables in any order, but they must all occur in
    ``source`` with identical domains.
    """
    for v in target.variables:
        if v.name not in source or source.variable(v.name) != v:
            raise FrameError(f"{target!r} is not a subframe of {source!r}")
    pos = [source.names.index(n) for n in target.names]
    out = []
    for i in range(source.size):
        digits = source.decode_positions(i)
        j = 0
        for p, stride in zip(pos, target.strides):
            j += digits[p] * stride
        out.append(j)
    return tuple(out)


@lru_cache(maxsize=4096)
def fiber_masks(source: Frame, target: Frame) -> tuple[int, ...]:
    """Cylinder mask in ``source`` of every single configuration of ``target``."""
    fibers = [0] * target.size
    for i, j in enumerate(projection_map(source, target)):
        fibers[j] |= 1 << i
    return tuple(fibers)


def project_mask(mask: int, source: Frame, target: Frame) -> int:
    pm = projection_map(source, target)
    out = 0
    for i in bits(mask):
        out |= 1 << pm[i]
    return out


def extend_mask(mask: int, source: Frame, target: Frame) -> int:
    """Cylinder over ``target`` of a set living on ``source`` (a subframe of ``target``)."""
    fibers = fiber_masks(target, source)
    out = 0
    for j in bits(mask):
        out |= fibers[j]
    return out


@dataclass(frozen=True)
class EventSet:
    """A set of configurations of ``frame``."""

    frame: Frame
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.frame.size:
            raise FrameError("mask has bits outside the frame")

    @classmethod
    def of(cls, frame: Frame, configurations: Iterable[Sequence]) -> "EventSet":
        mask = 0
        for cfg in configurations:
            mask |= 1 << frame.encode(cfg)
        return cls(frame, mask)

    @classmethod
    def full(cls, frame: Frame) -> "EventSet":
        return cls(frame, frame.full_mask)

    @classmethod
    def empty(cls, frame: Frame) -> "EventSet":
        return cls(frame, 0)

    @classmethod
    def cylinder(cls, frame: Frame, **assignment) -> "EventSet":
        """All configurations agreeing with ``assignment`` (name -> label or labels)."""
        allowed = {}
        for name, val in assignment.items():
            var = frame.variable(name)
            vals = [val] if isinstance(val, str) else list(val)
            for x in vals:
                if x not in var.domain:
                    raise FrameError(f"unknown value {x!r} for variable {name}")
            allowed[frame.names.index(name)] = {var.domain.index(x) for x in vals}
        mask = 0
        for i in range(frame.size):
            digits = frame.decode_positions(i)
            if all(digits[k] in ok for k, ok in allowed.items()):
                mask |= 1 << i
        return cls(frame, mask)

    def _check(self, other: "EventSet"):
        if other.frame != self.frame:
            raise FrameError("event sets live on different frames")

    def __and__(self, other):
        self._check(other)
        return EventSet(self.frame, self.mask & other.mask)

    def __or__(self, other):
        self._check(other)
        return EventSet(self.frame, self.mask | other.mask)

    def __sub__(self, other):
        self._check(other)
        return EventSet(self.frame, self.mask & ~other.mask)

    def __le__(self, other):
        self._check(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def __len__(self):
        return self.mask.bit_count()

    def __bool__(self):
        return self.mask != 0

    def __iter__(self):
        return bits(self.mask)

    def __contains__(self, configuration):
        idx = configuration if isinstance(configuration, int) else self.frame.encode(configuration)
        return bool(self.mask >> idx & 1)

    def complement(self) -> "EventSet":
        return EventSet(self.frame, self.frame.full_mask & ~self.mask)

    def labels(self) -> list[tuple[str, ...]]:
        return [self.frame.decode(i) for i in self]

    def __repr__(self):
        body = " ".join("(" + " ".join(c) + ")" for c in self.labels())
        return f"EventSet{{{body}}}"


def project_set(a: EventSet, w: Iterable[str] | str) -> EventSet:
    """Set of projections of the configurations of ``a`` onto the variables ``w``."""
    target = a.frame.subframe(w)
    return EventSet(target, project_mask(a.mask, a.frame, target))


def extend_set(b: EventSet, target: Frame) -> EventSet:
    """Cylinder extension of ``b`` to the superframe ``target``."""
    if not b.frame.varset <= target.varset:
        raise FrameError(f"{target!r} does not contain the variables of {b.frame!r}")
    return EventSet(target, extend_mask(b.mask, b.frame, target))
