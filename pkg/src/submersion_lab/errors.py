"""Exception hierarchy shared by every submersion_lab module."""


class SubmersionLabError(Exception):
    """Base class for all errors raised by the package."""


class DimensionMismatch(SubmersionLabError, ValueError):
    pass


class EvaluationFailure(SubmersionLabError, ArithmeticError):
    """A map or a derivative could not be evaluated at the requested point."""


class MapSyntaxError(SubmersionLabError):
    """Map-file text does not follow the grammar.

    ``position`` is the 0-based character offset into the parsed text.
    """

    def __init__(self, message, position=None, text=None):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(self._render())

    def _render(self):
        if self.position is None:
            return self.message
        if self.text is None:
            return f"{self.message} (at offset {self.position})"
        line_start = self.text.rfind("\n", 0, self.position) + 1
        line_no = self.text.count("\n", 0, self.position) + 1
        line_end = self.text.find("\n", self.position)
        if line_end < 0:
            line_end = len(self.text)
        col = self.position - line_start
        return (f"{self.message} (line {line_no}, column {col + 1})\n"
                f"  {self.text[line_start:line_end]}\n  {' ' * col}^")


class DimensionError(MapSyntaxError):
    """A variable index is outside ``1..domain_dim`` (or dims are invalid)."""


class UnknownExample(SubmersionLabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class CriticalPoint(SubmersionLabError):
    """The differential is not surjective at the point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class NonConformal(SubmersionLabError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NonConstantRank(SubmersionLabError):
    pass


class NotVertical(SubmersionLabError, ValueError):
    pass


class NotHorizontal(SubmersionLabError, ValueError):
    pass


class ZeroVector(SubmersionLabError, ValueError):
    pass


class UnknownTheorem(SubmersionLabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
