"""Base class for named polytope families."""

from abc import ABC, abstractmethod

from stringy_engine.errors import InvalidParams
from stringy_engine.polytope import Polytope


class PolytopeFamily(ABC):
    """Base class for a registry of named lattice polytopes."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Return the registry name of this family."""
        pass

    @property
    @abstractmethod
    def display_name(self) -> str:
        """Return the display name of this family."""
        pass

    @abstractmethod
    def members(self) -> list[str]:
        """List the member names this family advertises.

        Returns:
            Member names accepted by build()
        """
        pass

    @abstractmethod
    def build(self, member: str) -> Polytope:
        """Construct a member polytope.

        Args:
            member: Member name, one of members() or a parametrized name the family accepts

        Returns:
            The member as a lattice polytope

        Raises:
            InvalidParams: If the member is unknown
        """
        pass

    def describe(self, member: str) -> str:
        """One-line description of a member."""
        return f"{self.display_name}: {member}"

    def unknown(self, member: str) -> InvalidParams:
        return InvalidParams(
            f"unknown member {member!r} of family {self.name!r}; "
            f"available: {', '.join(self.members())}"
        )
