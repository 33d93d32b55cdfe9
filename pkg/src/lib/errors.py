""" Exceptions raised by the interference-channel analysis library. Every error carries a
short machine-readable code so the driver can report it as JSON on stderr. """


class ICNashError(Exception):
    code = 'ICNashError'

    def to_dict(self):
        return {'error': self.code, 'message': str(self)}


class InvalidChannel(ICNashError):
    code = 'InvalidChannel'


class EmptyRegion(ICNashError):
    code = 'EmptyRegion'


class InfeasibleSplit(ICNashError):
    code = 'InfeasibleSplit'


class NoSplit(ICNashError):
    code = 'NoSplit'


class InfeasibleInput(ICNashError):
    code = 'InfeasibleInput'


class PreconditionViolated(ICNashError):
    code = 'PreconditionViolated'


class NotInNERegion(ICNashError):
    code = 'NotInNERegion'


class EmptyInner(ICNashError):
    code = 'EmptyInner'


class NotInInnerRegion(ICNashError):
    code = 'NotInInnerRegion'


class DimensionMismatch(ICNashError):
    code = 'DimensionMismatch'


class TooLarge(ICNashError):
    code = 'TooLarge'


class NonIntegerSplit(ICNashError):
    code = 'NonIntegerSplit'
