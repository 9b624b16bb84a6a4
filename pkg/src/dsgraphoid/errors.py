"""Exception hierarchy shared by all modules."""


class DSError(Exception):
    """Base class for every domain error raised by the package."""


class FrameError(DSError, ValueError):
    """Malformed variables or frames, unknown variables, mismatched universes."""


class NotNormalizable(DSError):
    """The normalizing sum of a mass function is zero."""


class NotPseudoBelief(DSError):
    """A signed mass assignment has a negative commonality value."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class LatticeTooLarge(DSError):
    """A dense subset-lattice computation was requested above the lattice gate."""


class TotalConflict(DSError):
    """Dempster combination put all mass on the empty set."""


class RemovalUndefined(DSError):
    """The removal operator's normalizing constant K is not positive."""


class NoAnticonditional(DSError):
    """Q(A) is nonzero while the conditioning marginal vanishes at A."""


class NoCanonicalMember(DSError):
    """The zero-filled anticonditional is not a pseudo-belief function."""

    def __init__(self, message, violated=None):
        super().__init__(message)
        self.violated = violated


class InconsistentOracles(DSError, AssertionError):
    """Two independent decision procedures returned different verdicts."""


class InvalidMass(DSError, ValueError):
    """Structurally invalid mass assignment (mass on the empty set, foreign frame)."""
