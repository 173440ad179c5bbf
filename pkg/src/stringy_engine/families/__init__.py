"""Named polytope families."""

from stringy_engine.families.base import PolytopeFamily
from stringy_engine.families.named import NamedExamples
from stringy_engine.families.quintic import ProjectiveHypersurfaces
from stringy_engine.families.reflexive import ReflexiveFamily
from stringy_engine.families.wps import WeightedProjectiveFamily

# Registry of available families
FAMILIES: dict[str, type[PolytopeFamily]] = {
    "projective": ProjectiveHypersurfaces,
    "reflexive": ReflexiveFamily,
    "named": NamedExamples,
    "wps": WeightedProjectiveFamily,
}


def get_family(family_name: str) -> PolytopeFamily | None:
    """Get a family instance by name.

    Args:
        family_name: Name of the family (e.g., "projective", "reflexive", "wps")

    Returns:
        PolytopeFamily instance or None if not found
    """
    family_class = FAMILIES.get(family_name.lower())
    if family_class:
        return family_class()
    return None


def list_families() -> list[str]:
    """List all available families.

    Returns:
        List of family names
    """
    return list(FAMILIES.keys())
