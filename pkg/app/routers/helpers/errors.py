class GeometryError(ValueError):
    """Base class for refused or failed geometric computations."""


class DegenerateSegment(GeometryError):
    pass


class UnitRatio(GeometryError):
    """The external division point for ratio 1 lies at infinity."""


class PoleAtB(GeometryError):
    pass


class NonPositiveRatio(GeometryError):
    pass


class NegativeConstant(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class GridTooLarge(GeometryError):
    pass


class WindowDegenerate(GeometryError):
    pass


class IdentityViolation(GeometryError):
    """A numeric identity check failed beyond tolerance."""


class SceneParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")
