from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from .._order import is_antisymmetric, order_matrix, strict_pairs, transitive_closure
from .._serialize import sort_elements
from ..exception import IllFormed
from ..fincat import FinCategory


@dataclass(frozen=True)
class FinSet:
    """
    A finite set; elements are kept in canonical order.
    """

    elements: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", sort_elements(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)


@dataclass(frozen=True)
class FinPoset:
    """
    A finite poset.

    Attributes:
        elements: Underlying elements, canonically ordered.
        order: Strict comparisons ``(x, y)`` meaning ``x < y``; stored
            transitively closed.

    Raises:
        IllFormed: If the generated order is not antisymmetric.
    """

    elements: tuple = ()
    order: tuple = ()

    def __post_init__(self):
        elements = sort_elements(self.elements)
        for x, y in self.order:
            if x not in elements or y not in elements:
                raise IllFormed(f"order pair ({x}, {y}) mentions a non-element")
        matrix = transitive_closure(order_matrix(elements, self.order))
        if not is_antisymmetric(matrix):
            raise IllFormed("order relation is not antisymmetric")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "order", strict_pairs(elements, matrix))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._members

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    @cached_property
    def _strict(self) -> frozenset:
        return frozenset(self.order)

    def leq(self, x, y) -> bool:
        return x == y or (x, y) in self._strict


@dataclass(frozen=True)
class FinMap:
    """
    A function between finite sets or a monotone map between finite posets.

    ``mapping`` is stored as ``(x, f(x))`` pairs in the canonical order of the
    source. Totality, well-typedness and (for posets) monotonicity are checked
    on construction.
    """

    source: Any
    target: Any
    mapping: tuple = ()

    def __post_init__(self):
        pairs = dict(self.mapping)
        if len(pairs) != len(self.mapping) or set(pairs) != set(self.source.elements):
            raise IllFormed("map is not total on its source")
        for x, y in pairs.items():
            if y not in self.target:
                raise IllFormed(f"map sends {x!r} outside its target")
        if isinstance(self.source, FinPoset):
            for x, y in self.source.order:
                if not self.target.leq(pairs[x], pairs[y]):
                    raise IllFormed(f"map is not monotone at {x!r} < {y!r}")
        object.__setattr__(
            self,
            "mapping",
            tuple((x, pairs[x]) for x in self.source.elements),
        )

    @cached_property
    def _table(self) -> dict:
        return dict(self.mapping)

    def __call__(self, x):
        return self._table[x]

    @classmethod
    def of(cls, source, target, fn) -> "FinMap":
        return cls(source, target, tuple((x, fn(x)) for x in source.elements))

    def image_elements(self) -> tuple:
        return sort_elements(y for _, y in self.mapping)


@dataclass(frozen=True)
class Presheaf:
    """
    A finite-set-valued presheaf on a finite category.

    Attributes:
        base: The indexing category.
        values: ``(object, FinSet)`` pairs in base object order.
        actions: ``(morphism, FinMap)`` pairs for every base morphism; the map
            for ``f: a -> b`` goes from ``values(b)`` to ``values(a)``.
    """

    base: FinCategory
    values: tuple
    actions: tuple

    @cached_property
    def _values(self) -> dict:
        return dict(self.values)

    @cached_property
    def _actions(self) -> dict:
        return dict(self.actions)

    def at(self, obj: str) -> FinSet:
        return self._values[obj]

    def action(self, morphism: str) -> FinMap:
        return self._actions[morphism]

    def act(self, morphism: str, x):
        return self._actions[morphism](x)

    @property
    def size(self) -> int:
        return sum(len(v) for _, v in self.values)

    def elements(self) -> list[tuple[str, Any]]:
        return [(obj, x) for obj, values in self.values for x in values]

    @classmethod
    def build(
        cls,
        base: FinCategory,
        values: Mapping[str, Iterable],
        generator_actions: Mapping[str, Mapping] | None = None,
    ) -> "Presheaf":
        """
        Build a presheaf from its generator actions, extending along paths.

        Raises:
            IllFormed: If an action is partial or the equations of the base
                are not respected.
        """
        generator_actions = generator_actions or {}
        unknown = set(values) - set(base.objects)
        if unknown:
            raise IllFormed(f"values given for unknown objects {sorted(unknown)}")
        sets = {obj: FinSet(tuple(values.get(obj, ()))) for obj in base.objects}
        generators = {}
        for g in base.generators:
            a, b = base.source(g), base.target(g)
            generators[g] = FinMap(
                sets[b], sets[a], tuple(dict(generator_actions.get(g, {})).items())
            )
        extra = set(generator_actions) - set(base.generators)
        if extra:
            raise IllFormed(f"actions given for non-generators {sorted(extra)}")
        actions = []
        for arrow in base.arrows:
            table = {x: x for x in sets[arrow.target]}
            for step in reversed(arrow.path):
                table = {x: generators[step](y) for x, y in table.items()}
            action = FinMap(
                sets[arrow.target], sets[arrow.source], tuple(table.items())
            )
            actions.append((arrow.name, action))
        pointwise = tuple((obj, sets[obj]) for obj in base.objects)
        presheaf = cls(base, pointwise, tuple(actions))
        presheaf.validate()
        return presheaf

    def validate(self) -> None:
        for obj in self.base.objects:
            identity = self.action(self.base.identity(obj))
            if any(x != y for x, y in identity.mapping):
                raise IllFormed(f"identity on {obj} does not act trivially")
        for g, f, h in self.base.table:
            composite = self.action(h)
            for x in self.at(self.base.target(h)):
                if composite(x) != self.act(f, self.act(g, x)):
                    raise IllFormed(
                        f"action of {h} differs from the action of {f} after {g}"
                    )


@dataclass(frozen=True)
class NatTrans:
    """A natural transformation between presheaves on the same base."""

    source: Presheaf
    target: Presheaf
    components: tuple

    @cached_property
    def _components(self) -> dict:
        return dict(self.components)

    def component(self, obj: str) -> FinMap:
        return self._components[obj]

    def __call__(self, obj: str, x):
        return self._components[obj](x)

    @classmethod
    def build(
        cls, source: Presheaf, target: Presheaf, components: Mapping[str, Mapping]
    ) -> "NatTrans":
        if source.base != target.base:
            raise IllFormed("natural transformation between different bases")
        maps = tuple(
            (
                obj,
                FinMap(
                    source.at(obj),
                    target.at(obj),
                    tuple(dict(components.get(obj, {})).items()),
                ),
            )
            for obj in source.base.objects
        )
        transformation = cls(source, target, maps)
        transformation.validate()
        return transformation

    def validate(self) -> None:
        base = self.source.base
        for g in base.generators:
            a, b = base.source(g), base.target(g)
            for x in self.source.at(b):
                left = self(a, self.source.act(g, x))
                right = self.target.act(g, self(b, x))
                if left != right:
                    raise IllFormed(f"naturality square for {g} fails at {x!r}")


# construction results


@dataclass(frozen=True)
class Product:
    apex: Any
    projections: tuple


@dataclass(frozen=True)
class Coproduct:
    apex: Any
    injections: tuple


@dataclass(frozen=True)
class Equalizer:
    apex: Any
    inclusion: Any


@dataclass(frozen=True)
class Coequalizer:
    """``collapsed`` marks poset quotients where the reflection merged extra classes."""

    apex: Any
    quotient: Any
    collapsed: bool = False


@dataclass(frozen=True)
class Pullback:
    apex: Any
    p1: Any
    p2: Any


@dataclass(frozen=True)
class Pushout:
    apex: Any
    q1: Any
    q2: Any
    coproduct: Coproduct = field(repr=False, compare=False)
    coequalizer: Coequalizer = field(repr=False, compare=False)

    @property
    def collapsed(self) -> bool:
        return self.coequalizer.collapsed


@dataclass(frozen=True)
class Image:
    """Factorization ``f = mono . epi``."""

    apex: Any
    epi: Any
    mono: Any


@dataclass(frozen=True)
class Limit:
    apex: Any
    legs: tuple
    product: Product = field(repr=False, compare=False)
    equalizer: Equalizer = field(repr=False, compare=False)

    def leg(self, obj: str):
        return dict(self.legs)[obj]


@dataclass(frozen=True)
class Colimit:
    apex: Any
    legs: tuple
    coproduct: Coproduct = field(repr=False, compare=False)
    coequalizer: Coequalizer = field(repr=False, compare=False)

    def leg(self, obj: str):
        return dict(self.legs)[obj]

    @property
    def collapsed(self) -> bool:
        return self.coequalizer.collapsed
