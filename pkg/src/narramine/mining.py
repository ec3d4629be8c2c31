"""Mining narrative elements from a semantic graph.

The mapping follows the narrative policy framework: the plot is the set of
frame predicates, characters are the fillers of the first two argument
roles, the setting comes from time/location relations, and the moral of the
story from purpose/cause relations.  Constant attributes (names, years,
quantities) are mined as entities.  All miners are pure functions of the
graph and count per incidence: a reentrant instance contributes once per
qualifying edge.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .graph import AmrGraph, Attribute, is_predicate

__all__ = [
    "CHARACTER_ROLES",
    "ElementKind",
    "MORAL_ROLES",
    "NarrativeElement",
    "ORDERED_KINDS",
    "SETTING_ROLES",
    "mine_all",
    "mine_characters",
    "mine_entities",
    "mine_moral",
    "mine_plot",
    "mine_setting",
]


class ElementKind(enum.Enum):
    PLOT = "plot"
    CHARACTER = "character"
    SETTING = "setting"
    MORAL = "moral"
    ENTITY = "entity"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


# Deterministic reporting order, also used by mine_all.
ORDERED_KINDS = (
    ElementKind.PLOT,
    ElementKind.CHARACTER,
    ElementKind.SETTING,
    ElementKind.MORAL,
    ElementKind.ENTITY,
)

CHARACTER_ROLES = ("ARG0", "ARG1")
SETTING_ROLES = ("time", "location")
MORAL_ROLES = ("purpose", "cause")


@dataclass(frozen=True)
class NarrativeElement:
    """One mined item: its kind, label, and the role that licensed it.

    Labels keep sense tags intact; display-level stripping happens in
    reporting, never in counting.
    """

    kind: ElementKind
    label: str
    role_context: Optional[str] = None

    def __post_init__(self):
        kind, role = self.kind, self.role_context
        if kind is ElementKind.PLOT and not is_predicate(self.label):
            raise ValueError(f"plot element {self.label!r} is not a predicate")
        if kind is ElementKind.CHARACTER:
            if is_predicate(self.label):
                raise ValueError(f"character element {self.label!r} is a predicate")
            if role not in CHARACTER_ROLES:
                raise ValueError(f"character element needs an ARG0/ARG1 context, got {role!r}")
        if kind is ElementKind.SETTING and role not in SETTING_ROLES:
            raise ValueError(f"setting element needs a time/location context, got {role!r}")
        if kind is ElementKind.MORAL and role not in MORAL_ROLES:
            raise ValueError(f"moral element needs a purpose/cause context, got {role!r}")
        if kind in (ElementKind.PLOT, ElementKind.ENTITY) and role is not None:
            raise ValueError(f"{kind.value} elements carry no role context")


def mine_plot(graph: AmrGraph) -> list[NarrativeElement]:
    """One element per predicate instance, regardless of incoming edges."""
    return [
        NarrativeElement(ElementKind.PLOT, concept)
        for concept in graph.instances.values()
        if is_predicate(concept)
    ]


def mine_characters(graph: AmrGraph) -> list[NarrativeElement]:
    """One element per ARG0/ARG1 edge whose target is a non-predicate instance."""
    out = []
    for _, role, target in graph.instance_edges():
        if role in CHARACTER_ROLES and not is_predicate(graph.concept(target)):
            out.append(NarrativeElement(ElementKind.CHARACTER, graph.concept(target), role))
    return out


def mine_setting(graph: AmrGraph) -> list[NarrativeElement]:
    """One element per time/location edge; attribute targets keep their value."""
    out = []
    for _, role, target in graph.edges:
        if role in SETTING_ROLES:
            label = target.value if isinstance(target, Attribute) else graph.concept(target)
            out.append(NarrativeElement(ElementKind.SETTING, label, role))
    return out


def mine_moral(graph: AmrGraph) -> list[NarrativeElement]:
    """One element per purpose/cause edge, labeled by the target subgraph's root."""
    out = []
    for _, role, target in graph.edges:
        if role in MORAL_ROLES:
            label = target.value if isinstance(target, Attribute) else graph.concept(target)
            out.append(NarrativeElement(ElementKind.MORAL, label, role))
    return out


def mine_entities(graph: AmrGraph) -> list[NarrativeElement]:
    """One element per attribute occurrence, in stored edge order."""
    return [
        NarrativeElement(ElementKind.ENTITY, edge.target.value)
        for edge in graph.attribute_edges()
    ]


_MINERS = {
    ElementKind.PLOT: mine_plot,
    ElementKind.CHARACTER: mine_characters,
    ElementKind.SETTING: mine_setting,
    ElementKind.MORAL: mine_moral,
    ElementKind.ENTITY: mine_entities,
}


def mine_all(graph: AmrGraph) -> list[NarrativeElement]:
    """All elements in deterministic order: plot, characters, setting, moral, entities."""
    out: list[NarrativeElement] = []
    for kind in ORDERED_KINDS:
        out.extend(_MINERS[kind](graph))
    return out
