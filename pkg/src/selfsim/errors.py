"""Exception types shared across the package.

Two families matter to callers: resource-cap failures (a computation was cut
off before it could certify anything) and input/usage errors.  The CLI maps
cap failures to exit code 3 and usage errors to exit code 2; failed empirical
properties are reported data, not exceptions, except where an operation's
contract is violated outright.
"""


class SelfSimError(Exception):
    """Base class for package-specific errors."""


class InputError(SelfSimError):
    """Malformed group definitions, words, rays, or parameter combinations."""


class UnknownName(InputError):
    """A generator name that was never declared."""


class CapExceeded(SelfSimError):
    """A configured resource budget was hit before the answer was certified."""


class StateCapExceeded(CapExceeded):
    """Restriction closure grew past ``state_cap`` distinct states."""


class NotContractingWithinBound(CapExceeded):
    """Nucleus/magic-level iteration failed to stabilize within its round cap."""


class LevelTooLarge(CapExceeded):
    """A level graph would exceed the vertex materialization budget."""


class DifferentLevels(InputError):
    """Horizontal operations need vertices of equal length."""


class KTooLarge(InputError):
    """push_down asked to remove more letters than the word has."""


class LevelTooSmall(InputError):
    """A hull needs more room below the set than the tree provides."""


class NotAnIterate(InputError):
    """iterate_type called on sets the shift does not map onto each other."""


class NotStabilized(SelfSimError):
    """A reported quantity failed to stabilize within the sampled range."""


class UndecidedEquivalence(SelfSimError):
    """Ray equivalence came back Unknown at the requested depth."""


class ZeroInradius(InputError):
    """Roundness needs the center to be interior at sample resolution."""
