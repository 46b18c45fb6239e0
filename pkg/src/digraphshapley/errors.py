"""Exception hierarchy. Validation problems derive from ValueError so callers
that only care about bad input can catch the builtin."""


class DigraphShapleyError(Exception):
    """Base class for every error raised by digraphshapley."""


class ValidationError(DigraphShapleyError, ValueError):
    """Input that does not describe a valid digraph, game, coalition or order.

    Arguments:
    message -- human readable description
    field -- name of the offending input field, if known
    """

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field

    def __str__(self):
        message = super().__str__()
        if self.field:
            return "%s: %s" % (self.field, message)
        return message


class PlayerRangeError(ValidationError):
    """A player id lies outside [1, n]."""


class SelfLoopError(ValidationError):
    """An edge (a, a) was given."""


class PlayerCountError(ValidationError):
    """n is smaller than one."""


class DimensionMismatchError(ValidationError):
    """Two inputs disagree on the number of players, or a table has the wrong length."""


class EmptyGameError(ValidationError):
    """The empty coalition was assigned a nonzero payoff."""


class PermutationError(ValidationError):
    """An entry order is not a permutation of the players."""


class MembershipError(ValidationError):
    """A player was required to be in a coalition but is not, or the coalition is empty."""


class EngineSelectionError(ValidationError):
    """The requested engine cannot be used for this game/graph pair."""


class GuardError(DigraphShapleyError):
    """A size guard was exceeded.

    Arguments:
    message -- human readable description
    overridable -- True if passing force=True (--force) lifts the guard
    """

    def __init__(self, message, overridable=True, field=None):
        super().__init__(message)
        self.overridable = overridable
        self.field = field


class CapacityError(GuardError, ValueError):
    """More players than a coalition mask can hold. Never overridable."""

    def __init__(self, message, field="n"):
        super().__init__(message, overridable=False, field=field)


class InternalError(DigraphShapleyError, RuntimeError):
    """An invariant that the algorithms guarantee did not hold."""
