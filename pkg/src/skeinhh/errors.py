"""Exception hierarchy. Every error carries a machine-readable ``code``."""


class SkeinError(Exception):
    code = "ERROR"

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.details = details

    def to_dict(self):
        out = {"code": self.code, "message": str(self)}
        out.update({k: v for k, v in self.details.items()})
        return out


def _make(name, code, base=SkeinError):
    return type(name, (base,), {"code": code, "__doc__": f"Raised with code {code}."})


NotDivisible = _make("NotDivisible", "NOT_DIVISIBLE")
RelationNotContained = _make("RelationNotContained", "RELATION_NOT_CONTAINED")
NoStabilization = _make("NoStabilization", "NO_STABILIZATION")
InvalidDiagram = _make("InvalidDiagram", "INVALID_DIAGRAM")
TooManyCrossings = _make("TooManyCrossings", "TOO_MANY_CROSSINGS")
NotPrimitive = _make("NotPrimitive", "NOT_PRIMITIVE")
ZeroCurve = _make("ZeroCurve", "ZERO_CURVE")
NotUnimodular = _make("NotUnimodular", "NOT_UNIMODULAR")
BadParameters = _make("BadParameters", "BAD_PARAMETERS")
DegreeZero = _make("DegreeZero", "DEGREE_ZERO")
NotInSpan = _make("NotInSpan", "NOT_IN_SPAN")
NoLiftFound = _make("NoLiftFound", "NO_LIFT_FOUND")


class ParseError(SkeinError, ValueError):
    """Malformed text input; records the offending position and what was expected."""

    code = "PARSE_ERROR"

    def __init__(self, message, position, expected=()):
        super().__init__(f"{message} at position {position}", position=position,
                         expected=sorted(set(expected)))
        self.position = position
        self.expected = sorted(set(expected))
