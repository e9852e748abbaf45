class SpiralToolboxError(Exception):
    """Base class for everything the toolbox raises on purpose"""
    pass


class PoleError(SpiralToolboxError):
    """Denominator of a rational-linear profile vanishes"""
    pass


class FamilyError(SpiralToolboxError):
    """Operation is not defined for this profile family"""
    pass


class DomainError(SpiralToolboxError):
    """Input violates a domain invariant (interval, positivity, ...)"""
    pass


class ProfileDomainError(DomainError):
    pass


class StepError(SpiralToolboxError):
    pass


class QuadratureError(SpiralToolboxError):
    pass


class DegenerateError(SpiralToolboxError):
    """Torsion is undefined where the curve straightens out"""
    pass


class RankError(SpiralToolboxError):
    pass


class InsufficientDataError(SpiralToolboxError):
    pass


class MissingIntrinsicsError(SpiralToolboxError):
    pass


class DivisionError(SpiralToolboxError):
    pass


class ParseError(SpiralToolboxError):
    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line

        location = []
        if line is not None:
            location.append("line {}".format(line))
        if field is not None:
            location.append("field '{}'".format(field))
        if location:
            message = "{} ({})".format(message, ", ".join(location))
        super(ParseError, self).__init__(message)
