"""Exception types shared across the package."""

from __future__ import annotations


class CutPolyError(Exception):
    pass


class PreconditionError(CutPolyError, ValueError):
    """An input violates a documented precondition."""


class GraphFormatError(CutPolyError, ValueError):
    def __init__(self, message: str, lineno: int, path: str | None = None):
        super().__init__(message)
        self.message = message
        self.lineno = lineno
        self.path = path

    def __str__(self):
        where = f"{self.path}:" if self.path else "line "
        return f"{where}{self.lineno}: {self.message}"


class BudgetExceeded(CutPolyError):
    """A search hit its node budget before reaching a verdict.

    This is never a "no": callers must report the outcome as unknown.
    """

    def __init__(self, limit: int, what: str = "search"):
        super().__init__(f"{what} exceeded node budget of {limit}")
        self.limit = limit
        self.what = what


class K5MinorError(PreconditionError):
    """The odd-cycle description was requested for a graph with a K5 minor."""

    def __init__(self, witness):
        super().__init__(f"graph has a K5 minor (branch sets {witness.as_lists()})")
        self.witness = witness


class InternalContradiction(CutPolyError, RuntimeError):
    """A state the lifting and merge constructions rule out was reached."""


class Budget:
    """Counts search nodes and raises :class:`BudgetExceeded` past ``limit``."""

    __slots__ = ("limit", "used", "what")

    def __init__(self, limit: int | None = None, what: str = "search"):
        self.limit = limit
        self.used = 0
        self.what = what

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(self.limit, self.what)

    @classmethod
    def coerce(cls, budget: Budget | int | None, what: str = "search") -> Budget:
        if isinstance(budget, Budget):
            return budget
        return cls(budget, what)
