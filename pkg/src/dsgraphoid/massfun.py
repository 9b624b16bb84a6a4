"""Mass functions and the m / Bel / Pl / Q transform family, in exact rationals."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple

import numpy as np

from . import _lattice as lat
from . import config
from .errors import FrameError, InvalidMass, LatticeTooLarge, NotNormalizable, NotPseudoBelief
from .frame import EventSet, Frame, bits, project_mask


class NormMode(enum.Enum):
    ABSOLUTE = "abs"   # sum of |m| is one
    SIGNED = "signed"  # sum of m is one


def _as_mask(frame: Frame, key) -> int:
    if isinstance(key, EventSet):
        if key.frame != frame:
            raise InvalidMass(f"focal set on {key.frame!r} given for {frame!r}")
        return key.mask
    if isinstance(key, int) and not isinstance(key, bool):
        if key < 0 or key >> frame.size:
            raise InvalidMass("focal mask has bits outside the frame")
        return key
    return EventSet.of(frame, key).mask


class MassFunction:
    """A sparse basic probability assignment over ``frame``.

    ``focal`` maps focal sets (``EventSet``, bit masks, or iterables of
    configuration tuples) to masses.  Masses are kept as given; use
    :func:`normalize` or :meth:`normalized` to rescale.  Signed masses are
    accepted only when every commonality value stays nonnegative.
    """

    __slots__ = ("frame", "masses", "mode", "_cache")

    def __init__(self, frame: Frame, focal: Mapping, mode: NormMode = NormMode.ABSOLUTE, *, check: bool = True):
        masses: dict[int, Fraction] = {}
        for key, value in focal.items():
            mask = _as_mask(frame, key)
            value = Fraction(value)
            if mask == 0:
                if value != 0:
                    raise InvalidMass("the empty set cannot carry mass")
                continue
            masses[mask] = masses.get(mask, Fraction(0)) + value
        self.frame = frame
        self.masses = {k: v for k, v in sorted(masses.items()) if v != 0}
        self.mode = NormMode(mode)
        self._cache = {}
        if check and any(v < 0 for v in self.masses.values()):
            bad = _negative_commonality(self)
            if bad is not None:
                raise NotPseudoBelief(
                    f"commonality is negative at {EventSet(frame, bad[0])!r}: {bad[1]}", witness=bad
                )

    # -- construction helpers -------------------------------------------------

    @classmethod
    def vacuous(cls, frame: Frame, mode: NormMode = NormMode.ABSOLUTE) -> "MassFunction":
        return cls(frame, {frame.full_mask: 1}, mode)

    @classmethod
    def point(cls, event: EventSet, mode: NormMode = NormMode.ABSOLUTE) -> "MassFunction":
        if not event:
            raise InvalidMass("point mass on the empty set")
        return cls(event.frame, {event.mask: 1}, mode)

    @classmethod
    def from_sets(cls, frame: Frame, pairs: Iterable[tuple[Iterable, object]], mode=NormMode.ABSOLUTE) -> "MassFunction":
        """Build from ``(configurations, mass)`` pairs, rejecting duplicate focal sets."""
        focal = {}
        for configs, value in pairs:
            mask = EventSet.of(frame, configs).mask
            if mask in focal:
                raise InvalidMass(f"duplicate focal set {EventSet(frame, mask)!r}")
            focal[mask] = Fraction(value) if not isinstance(value, str) else Fraction(value)
        return cls(frame, focal, mode)

    # -- views ------------------------------------------------------------------

    def items(self) -> Iterator[tuple[EventSet, Fraction]]:
        for mask, v in self.masses.items():
            yield EventSet(self.frame, mask), v

    @property
    def focal(self) -> dict[EventSet, Fraction]:
        return dict(self.items())

    def __len__(self):
        return len(self.masses)

    def mass(self, event) -> Fraction:
        return self.masses.get(_as_mask(self.frame, event), Fraction(0))

    @property
    def total(self) -> Fraction:
        return sum(self.masses.values(), Fraction(0))

    @property
    def abs_total(self) -> Fraction:
        return sum((abs(v) for v in self.masses.values()), Fraction(0))

    def normalizer(self, mode: NormMode | None = None) -> Fraction:
        mode = self.mode if mode is None else NormMode(mode)
        return self.abs_total if mode is NormMode.ABSOLUTE else self.total

    @property
    def is_normal(self) -> bool:
        return self.normalizer() == 1

    def normalized(self, mode: NormMode | None = None) -> "MassFunction":
        return normalize(self, self.mode if mode is None else mode)

    def with_frame(self, frame: Frame) -> "MassFunction":
        """Same function re-encoded on a frame with the same variables in another order."""
        if frame == self.frame:
            return self
        if frame.varset != self.frame.varset:
            raise FrameError("re-encoding needs the same variable set")
        from .frame import extend_mask

        return MassFunction(
            frame, {extend_mask(k, self.frame, frame): v for k, v in self.masses.items()}, self.mode, check=False
        )

    def __eq__(self, other):
        if not isinstance(other, MassFunction):
            return NotImplemented
        if other.frame.varset != self.frame.varset:
            return False
        try:
            other = other.with_frame(self.frame)
        except FrameError:
            return False
        try:
            a, b = self.normalized(), other.normalized(self.mode)
        except NotNormalizable:
            return self.masses == other.masses
        return a.masses == b.masses

    def __hash__(self):
        return hash((self.frame.varset, len(self.masses)))

    def __repr__(self):
        parts = ", ".join(f"{EventSet(self.frame, k)!r}: {v}" for k, v in self.masses.items())
        return f"MassFunction({self.frame.names}, {{{parts}}})"

    # -- commonality ------------------------------------------------------------

    def q(self, event) -> Fraction:
        a = _as_mask(self.frame, event)
        return sum((v for b, v in self.masses.items() if a & ~b == 0), Fraction(0))

    def dense_q(self) -> tuple[np.ndarray, int]:
        """Dense integer commonality array (index = mask) and its denominator.

        Entry 0 holds the total signed mass.  Requires a gated frame.
        """
        cached = self._cache.get("dense_q")
        if cached is None:
            lat.check_gate(self.frame)
            ints, d = lat.scaled(self.masses)
            arr = lat.zeta_up(lat.dense(ints, self.frame.size))
            arr.setflags(write=False)
            cached = self._cache["dense_q"] = (arr, d)
        return cached

    def singleton_q(self) -> list[Fraction]:
        """Commonality of every singleton, equal to its plausibility."""
        out = [Fraction(0)] * self.frame.size
        for mask, v in self.masses.items():
            for i in bits(mask):
                out[i] += v
        return out


def _negative_commonality(m: MassFunction):
    """First set (by mask order) with negative commonality, or ``None``."""
    if m.frame.size <= config.get().lattice_gate:
        arr, d = m.dense_q()
        neg = np.flatnonzero(arr[1:] < 0)
        if neg.size:
            a = int(neg[0]) + 1
            return a, Fraction(int(arr[a]), d)
        return None
    limit = 1 << config.get().lattice_gate
    family = lat.down_closure((k for k, v in m.masses.items() if v < 0), limit)
    for a in sorted(family):
        qa = m.q(a)
        if qa < 0:
            return a, qa
    return None


def normalize(m: MassFunction, mode: NormMode = NormMode.ABSOLUTE) -> MassFunction:
    mode = NormMode(mode)
    c = m.normalizer(mode)
    if c == 0:
        raise NotNormalizable("normalizing sum is zero")
    if c == 1 and m.mode is mode:
        return m
    return MassFunction(m.frame, {k: v / c for k, v in m.masses.items()}, mode, check=False)


class CommonalityTable:
    """Dense commonality values over every nonempty subset of a gated frame.

    Stored as integer numerators ``num`` (indexed by mask) over a single
    denominator ``den``.
    """

    __slots__ = ("frame", "num", "den")

    def __init__(self, frame: Frame, num: np.ndarray, den: int = 1):
        lat.check_gate(frame, "commonality table")
        if num.shape != (1 << frame.size,):
            raise ValueError("numerator array does not match the frame's lattice")
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.frame = frame
        self.num = num
        self.den = int(den)

    @classmethod
    def from_values(cls, frame: Frame, values: Mapping[int, Fraction] | None = None, default=0) -> "CommonalityTable":
        """Table from a mask -> value mapping; unlisted nonempty sets get ``default``."""
        values = dict(values or {})
        lat.check_gate(frame, "commonality table")
        default = Fraction(default)
        d = lat.common_denominator(list(values.values()) + [default])
        n = 1 << frame.size
        arr = np.empty(n, dtype=object)
        arr[:] = int(default * d)
        arr[0] = 0
        for k, v in values.items():
            if k == 0:
                continue
            arr[k] = int(Fraction(v) * d)
        return cls(frame, _compact(arr), d)

    def _mask(self, key) -> int:
        mask = _as_mask(self.frame, key)
        if mask == 0:
            raise KeyError("commonality is defined on nonempty sets only")
        return mask

    def __getitem__(self, key) -> Fraction:
        return Fraction(int(self.num[self._mask(key)]), self.den)

    def __len__(self):
        return (1 << self.frame.size) - 1

    def items(self) -> Iterator[tuple[int, Fraction]]:
        for a in range(1, 1 << self.frame.size):
            yield a, Fraction(int(self.num[a]), self.den)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.items())

    def __eq__(self, other):
        if not isinstance(other, CommonalityTable):
            return NotImplemented
        if other.frame != self.frame:
            return False
        lhs = lat.exact_product(self.num[1:], np.asarray(other.den))
        rhs = lat.exact_product(other.num[1:], np.asarray(self.den))
        return bool(np.all(lhs == rhs))

    __hash__ = None

    def is_nonnegative(self) -> bool:
        return bool(np.all(self.num[1:] >= 0))

    def is_positive(self) -> bool:
        return bool(np.all(self.num[1:] > 0))

    def __repr__(self):
        return f"CommonalityTable({self.frame.names}, {len(self)} sets)"


def _compact(arr: np.ndarray) -> np.ndarray:
    """Downcast an object array of ints to int64 when every entry fits."""
    if arr.dtype != object:
        return arr
    peak = max((abs(int(x)) for x in arr), default=0)
    if peak < (1 << 62):
        return arr.astype(np.int64)
    return arr


def commonality(m: MassFunction) -> CommonalityTable:
    """Dense Q table, ``Q(A) = sum of m(B) over B containing A``."""
    if m.frame.size > config.get().lattice_gate:
        raise LatticeTooLarge(
            f"dense commonality over {m.frame.size} configurations exceeds lattice gate {config.get().lattice_gate}"
        )
    arr, d = m.dense_q()
    return CommonalityTable(m.frame, arr.copy(), d)


def mass_from_commonality(table: CommonalityTable, mode: NormMode = NormMode.ABSOLUTE) -> MassFunction:
    """Mobius inversion of a commonality table; the result is not normalized."""
    arr = table.num.copy()
    if arr.dtype != object and int(np.abs(arr).max(initial=0)) << table.frame.size >= 1 << 62:
        arr = arr.astype(object)
    arr[0] = 0
    lat.mobius_up(arr)
    nz = np.flatnonzero(arr)
    focal = {int(a): Fraction(int(arr[a]), table.den) for a in nz if a}
    return MassFunction(table.frame, focal, mode, check=not table.is_nonnegative())


class Query(NamedTuple):
    bel: Fraction
    pl: Fraction
    q: Fraction


def query(m: MassFunction, event) -> Query:
    """Belief, plausibility and commonality of one set, straight from the focal map.

    Plausibility is the mass of focal sets meeting the event, which equals
    ``1 - Bel(complement)`` for normal functions.
    """
    a = _as_mask(m.frame, event)
    bel = pl = q = Fraction(0)
    for b, v in m.masses.items():
        if b & ~a == 0:
            bel += v
        if b & a:
            pl += v
        if a & ~b == 0:
            q += v
    if a == 0:
        q = m.total
    return Query(bel, pl, q)


@dataclass(frozen=True)
class Classification:
    proper: bool
    pseudo: bool
    normal: bool
    positive: bool
    vacuous: bool
    diverse: bool
    probabilistic: bool

    def flags(self) -> dict[str, bool]:
        return dict(self.__dict__)


def is_diverse(m: MassFunction) -> bool:
    return all(v != 0 for v in m.singleton_q())


def is_positive(m: MassFunction) -> bool:
    if all(v >= 0 for v in m.masses.values()):
        return m.masses.get(m.frame.full_mask, 0) > 0
    if m.masses.get(m.frame.full_mask, 0) <= 0:
        return False
    arr, _ = m.dense_q()
    return bool(np.all(arr[1:] > 0))


def is_vacuous(m: MassFunction) -> bool:
    return len(m.masses) == 1 and m.frame.full_mask in m.masses and m.masses[m.frame.full_mask] > 0


def classify(m: MassFunction) -> Classification:
    proper = all(v >= 0 for v in m.masses.values())
    pseudo = proper or _negative_commonality(m) is None
    return Classification(
        proper=proper,
        pseudo=pseudo,
        normal=m.total == 1,
        positive=is_positive(m),
        vacuous=is_vacuous(m),
        diverse=is_diverse(m),
        probabilistic=all(k.bit_count() == 1 for k in m.masses),
    )


def marginal_masses(m: MassFunction, target: Frame) -> dict[int, Fraction]:
    """Unnormalized projected masses on ``target``."""
    out: dict[int, Fraction] = {}
    for k, v in m.masses.items():
        j = project_mask(k, m.frame, target)
        out[j] = out.get(j, Fraction(0)) + v
    return {k: v for k, v in out.items() if v != 0}
