"""Exception hierarchy shared by the engine, the graph tools and the CLI."""

from __future__ import annotations


class CentlabError(Exception):
    """Base class for every error raised by centlab."""


class OrderBoundExceededError(CentlabError):
    def __init__(self, what: str, size: int, bound: int) -> None:
        super().__init__(f"{what} size {size} exceeds bound {bound}")
        self.what = what
        self.size = size
        self.bound = bound


class ElementIndexError(CentlabError, IndexError):
    def __init__(self, index: int, order: int) -> None:
        super().__init__(f"element index {index} out of range for group of order {order}")
        self.index = index
        self.order = order


class NotSubgroupError(CentlabError):
    pass


class NotCentralError(CentlabError):
    pass


class InvalidActionError(CentlabError):
    pass


class InvalidGroupError(CentlabError):
    """A multiplication rule and generator list that do not describe a group."""


class InconsistentExtensionError(CentlabError):
    """Raised when a collection rule fails the group axioms.

    ``triple`` holds the first failing ``(x, s, y)`` when associativity broke,
    or ``None`` when identity or inverses failed first.
    """

    def __init__(
        self,
        reason: str,
        triple: tuple[int, int, int] | None = None,
        params: object | None = None,
    ) -> None:
        detail = f"{reason} (failing triple {triple})" if triple is not None else reason
        super().__init__(detail)
        self.reason = reason
        self.triple = triple
        self.params = params


class IsoBudgetExceededError(CentlabError):
    def __init__(self, budget: int) -> None:
        super().__init__(f"isomorphism search exceeded budget of {budget} nodes")
        self.budget = budget


class DescriptorError(CentlabError, ValueError):
    pass


class JoinStructureError(CentlabError):
    pass


class FamilySpecError(CentlabError, ValueError):
    pass
