"""Exception types.  All derive from :class:`ConlatError` (a ValueError)."""


class ConlatError(ValueError):
    pass


class CycleDetected(ConlatError):
    pass


class NotALattice(ConlatError):
    def __init__(self, pair, reason: str = ""):
        self.pair = tuple(pair)
        msg = f"pair {self.pair} has no unique {reason or 'bound'}"
        super().__init__(msg)


class SizeOverflow(ConlatError):
    pass


class NotComparable(ConlatError):
    pass


class MixedLattices(ConlatError):
    pass


class FamilyInvalid(ConlatError):
    pass


class PreconditionViolated(ConlatError):
    pass


class NotJoinHom(ConlatError):
    pass


class NotMeetHom(ConlatError):
    pass


class NotAHom(ConlatError):
    pass


class IndexMismatch(ConlatError):
    pass


class InvalidIso(ConlatError):
    pass


class BoundExceeded(ConlatError):
    pass


class ParseError(ConlatError):
    pass


class WitnessCheckFailed(ConlatError):
    pass
