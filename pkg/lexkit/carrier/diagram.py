from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property
from itertools import product as cartesian
from typing import Any

from ..exception import IllFormed, MonoViolation
from ..fincat import FinCategory, FinFunctor
from .base import Carrier


@dataclass(frozen=True)
class Diagram:
    """
    A functor from a finite shape into a carrier.

    Attributes:
        shape: The indexing category.
        objects: ``(shape object, carrier object)`` pairs in shape order.
        morphisms: ``(shape morphism, carrier morphism)`` pairs for every
            morphism of the shape, identities included.
    """

    shape: FinCategory
    objects: tuple
    morphisms: tuple

    @cached_property
    def _objects(self) -> dict:
        return dict(self.objects)

    @cached_property
    def _morphisms(self) -> dict:
        return dict(self.morphisms)

    def at(self, obj: str) -> Any:
        return self._objects[obj]

    def map(self, morphism: str) -> Any:
        return self._morphisms[morphism]

    @classmethod
    def build(
        cls,
        carrier: Carrier,
        shape: FinCategory,
        objects: Mapping[str, Any],
        generators: Mapping[str, Any],
    ) -> "Diagram":
        """
        Extend an assignment on generators along canonical paths.

        Raises:
            IllFormed: If a generator has the wrong ends or the equations of
                the shape are not respected.
            MonoViolation: If a generator marked mono is sent to a non-mono.
        """
        missing = [o for o in shape.objects if o not in objects]
        if missing:
            raise IllFormed(f"diagram has no object for {', '.join(missing)}")
        for g in shape.generators:
            if g not in generators:
                raise IllFormed(f"diagram has no morphism for generator {g}")
            f = generators[g]
            source, target = objects[shape.source(g)], objects[shape.target(g)]
            if f.source != source or f.target != target:
                raise IllFormed(f"morphism for {g} has the wrong source or target")
            if shape.is_mono_marked(g) and not carrier.is_mono(f):
                raise MonoViolation(g)
        morphisms = {}
        for arrow in shape.arrows:
            current = carrier.identity(objects[arrow.source])
            for step in arrow.path:
                current = carrier.compose(generators[step], current)
            morphisms[arrow.name] = current
        for g, f, h in shape.table:
            if carrier.compose(morphisms[g], morphisms[f]) != morphisms[h]:
                raise IllFormed(f"diagram does not respect {g}∘{f} = {h}")
        return cls(
            shape,
            tuple((o, objects[o]) for o in shape.objects),
            tuple((a.name, morphisms[a.name]) for a in shape.arrows),
        )

    def restrict(self, functor: FinFunctor) -> "Diagram":
        """Precompose with a functor into this diagram's shape."""
        if functor.codomain != self.shape:
            raise IllFormed("functor does not land in the diagram shape")
        return Diagram(
            functor.domain,
            tuple((o, self.at(functor.obj(o))) for o in functor.domain.objects),
            tuple((m, self.map(functor.map(m))) for m in functor.domain.morphisms),
        )


def enumerate_diagrams(
    carrier: Carrier, shape: FinCategory, pool: Iterable
) -> Iterator[Diagram]:
    """All diagrams of ``shape`` whose objects are drawn from ``pool``."""
    pool = list(pool)
    generators = list(shape.generators)
    for choice in cartesian(pool, repeat=len(shape.objects)):
        objects = dict(zip(shape.objects, choice))
        spaces = [
            list(carrier.hom(objects[shape.source(g)], objects[shape.target(g)]))
            for g in generators
        ]
        for maps in cartesian(*spaces):
            try:
                yield Diagram.build(
                    carrier, shape, objects, dict(zip(generators, maps))
                )
            except (IllFormed, MonoViolation):
                continue


def transformations(
    carrier: Carrier, source: Diagram, target: Diagram
) -> Iterator[dict]:
    """Natural transformations ``source => target`` as component dictionaries."""
    if source.shape != target.shape:
        raise IllFormed("transformations need diagrams of the same shape")
    shape = source.shape
    spaces = [list(carrier.hom(source.at(o), target.at(o))) for o in shape.objects]
    for choice in cartesian(*spaces):
        components = dict(zip(shape.objects, choice))
        if all(
            carrier.compose(target.map(g), components[shape.source(g)])
            == carrier.compose(components[shape.target(g)], source.map(g))
            for g in shape.generators
        ):
            yield components


def encode_diagram(carrier: Carrier, diagram: Diagram) -> dict:
    shape = diagram.shape
    return {
        "objects": {o: carrier.encode_object(diagram.at(o)) for o in shape.objects},
        "generators": {
            g: carrier.encode_morphism(diagram.map(g)) for g in shape.generators
        },
    }


def decode_diagram(carrier: Carrier, shape: FinCategory, data: dict) -> Diagram:
    return Diagram.build(
        carrier,
        shape,
        {o: carrier.decode_object(v) for o, v in data["objects"].items()},
        {g: carrier.decode_morphism(v) for g, v in data["generators"].items()},
    )


def encode_components(carrier: Carrier, components: Mapping[str, Any]) -> dict:
    return {o: carrier.encode_morphism(f) for o, f in components.items()}


def decode_components(carrier: Carrier, data: Mapping[str, dict]) -> dict:
    return {o: carrier.decode_morphism(f) for o, f in data.items()}
