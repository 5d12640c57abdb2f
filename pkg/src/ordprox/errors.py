"""Exception hierarchy.

Everything raised for bad input derives from :class:`ValidationError`, so
callers (and the CLI) can separate malformed data from I/O failures.
"""


class ValidationError(ValueError):
    """Input data violates a structural requirement."""

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self)}


# -- orders -----------------------------------------------------------------

class UnknownElement(ValidationError):
    def __init__(self, element):
        super().__init__(f"unknown element {element!r}")
        self.element = element


class DuplicateElement(ValidationError):
    def __init__(self, element):
        super().__init__(f"duplicate element {element!r}")
        self.element = element


class MissingReflexivePair(ValidationError):
    def __init__(self, element):
        super().__init__(f"missing reflexive pair ({element!r}, {element!r})")
        self.element = element


class AntisymmetryViolation(ValidationError):
    def __init__(self, a, b):
        super().__init__(f"both ({a!r}, {b!r}) and ({b!r}, {a!r}) present")
        self.pair = (a, b)


class TransitivityViolation(ValidationError):
    def __init__(self, a, b, c):
        super().__init__(
            f"({a!r}, {b!r}) and ({b!r}, {c!r}) present but ({a!r}, {c!r}) missing"
        )
        self.triple = (a, b, c)


class IncomparablePair(ValidationError):
    def __init__(self, a, b):
        super().__init__(f"{a!r} and {b!r} are incomparable")
        self.pair = (a, b)


class TooFewElements(ValidationError):
    pass


class DegenerateTriple(ValidationError):
    def __init__(self, triple):
        super().__init__(f"triple {list(triple)!r} has repeated components")
        self.triple = tuple(triple)


class InconsistentTriples(ValidationError):
    pass


class AmbiguousTriples(ValidationError):
    pass


class NotComparable(ValidationError):
    def __init__(self, a, b):
        super().__init__(f"{a!r} is not below {b!r}")
        self.pair = (a, b)


# -- graphs -----------------------------------------------------------------

class UnsupportedGraph(ValidationError):
    pass


class UnknownFormat(ValidationError):
    pass


# -- geometry ---------------------------------------------------------------

class TooFewPoints(ValidationError):
    pass


class DuplicatePoint(ValidationError):
    pass


class AllCollinear(ValidationError):
    pass


class CoincidentPoint(ValidationError):
    pass


class InvalidLevel(ValidationError):
    pass


class TooFewTriangles(ValidationError):
    pass


class CoincidentCentroid(ValidationError):
    pass


# -- frames -----------------------------------------------------------------

class MalformedRow(ValidationError):
    def __init__(self, line, reason=""):
        msg = f"malformed row at line {line}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)
        self.line = line


class TooFewPointsInFrame(ValidationError):
    def __init__(self, frame_id, count):
        super().__init__(f"frame {frame_id} has {count} points, need at least 3")
        self.frame_id = frame_id


class DuplicatePointInFrame(ValidationError):
    def __init__(self, frame_id, point):
        super().__init__(f"frame {frame_id} repeats point {tuple(point)!r}")
        self.frame_id = frame_id


class FrameNotFound(ValidationError):
    def __init__(self, frame_id):
        super().__init__(f"frame {frame_id} does not appear in the chain")
        self.frame_id = frame_id


class FrameGeometryError(ValidationError):
    """A geometry failure while processing one frame."""

    def __init__(self, frame_id, cause):
        super().__init__(f"frame {frame_id}: {type(cause).__name__}: {cause}")
        self.frame_id = frame_id
        self.cause = cause
