import abc
import random
from collections.abc import Iterator, Mapping, Sequence
from itertools import product as cartesian
from typing import Any

from .._logger import get_logger
from ..config import Cutoffs
from ..exception import IllFormed, Unsupported
from .model import (
    Colimit,
    Coequalizer,
    Coproduct,
    Equalizer,
    Image,
    Limit,
    Product,
    Pullback,
    Pushout,
)

# The sampled phase of presheaf sweeps starts above this size.
EXHAUSTIVE_SAMPLED_SIZE = 2


class Carrier(metaclass=abc.ABCMeta):
    """
    A computable category.

    Concrete carriers supply composition, finite limits, the colimits the
    checkers need, image factorizations, enumeration of small objects and
    JSON encodings. Everything derived from those (pushouts, kernel pairs,
    regular and effective epimorphisms, stability along probes, limits and
    colimits of diagrams) is implemented here once.
    """

    name: str = "carrier"
    is_topos: bool = False
    sampled: bool = False

    def __init__(self, logger=None):
        if logger is None:
            logger = get_logger()
        self._logger = logger

    # -- category structure ------------------------------------------------

    @abc.abstractmethod
    def identity(self, obj) -> Any: ...

    @abc.abstractmethod
    def compose(self, g, f) -> Any:
        """
        ``g ∘ f``.

        Raises:
            IllFormed: If ``f`` and ``g`` are not composable.
        """
        ...

    @abc.abstractmethod
    def hom(self, source, target) -> Iterator[Any]:
        """All morphisms ``source -> target`` in canonical order."""
        ...

    @abc.abstractmethod
    def size(self, obj) -> int:
        """Total number of elements; the measure used by size cutoffs."""
        ...

    @abc.abstractmethod
    def is_mono(self, f) -> bool: ...

    @abc.abstractmethod
    def is_epi(self, f) -> bool: ...

    @abc.abstractmethod
    def is_iso(self, f) -> bool: ...

    @abc.abstractmethod
    def inverse(self, f) -> Any: ...

    # -- limits ------------------------------------------------------------

    @abc.abstractmethod
    def terminal(self) -> Any: ...

    @abc.abstractmethod
    def to_terminal(self, obj) -> Any: ...

    @abc.abstractmethod
    def product(self, objects: Sequence) -> Product: ...

    @abc.abstractmethod
    def pair(self, product: Product, maps: Sequence, source) -> Any:
        """The mediating map ``source -> product.apex`` of a family of maps."""
        ...

    @abc.abstractmethod
    def equalizer(self, f, g) -> Equalizer: ...

    @abc.abstractmethod
    def lift_equalizer(self, equalizer: Equalizer, h) -> Any: ...

    @abc.abstractmethod
    def pullback(self, f, g) -> Pullback: ...

    @abc.abstractmethod
    def mediate_pullback(self, pullback: Pullback, u, v) -> Any: ...

    # -- colimits ----------------------------------------------------------

    @abc.abstractmethod
    def initial(self) -> Any: ...

    @abc.abstractmethod
    def from_initial(self, obj) -> Any: ...

    @abc.abstractmethod
    def coproduct(self, objects: Sequence) -> Coproduct: ...

    @abc.abstractmethod
    def copair(self, coproduct: Coproduct, maps: Sequence, target) -> Any: ...

    @abc.abstractmethod
    def coequalizer(self, f, g) -> Coequalizer: ...

    @abc.abstractmethod
    def descend(self, coequalizer: Coequalizer, h) -> Any:
        """
        Factor ``h`` through the quotient.

        Raises:
            IllFormed: If ``h`` does not coequalize the pair.
        """
        ...

    @abc.abstractmethod
    def image(self, f) -> Image: ...

    # -- enumeration -------------------------------------------------------

    @abc.abstractmethod
    def objects(self, max_size: int) -> list:
        """Objects of size at most ``max_size``, one per isomorphism class."""
        ...

    @abc.abstractmethod
    def probe_family(self, obj, probe_bound: int) -> list:
        """Morphisms into ``obj`` along which stability is tested."""
        ...

    @abc.abstractmethod
    def subobjects(self, obj) -> list:
        """Canonical monos into ``obj``."""
        ...

    @abc.abstractmethod
    def equivalence_relations(self, obj) -> list:
        """Monos into ``obj × obj`` that are internal equivalence relations."""
        ...

    @abc.abstractmethod
    def reflexive_relations(self, obj) -> list: ...

    # -- serialization -----------------------------------------------------

    @abc.abstractmethod
    def encode_object(self, obj) -> dict: ...

    @abc.abstractmethod
    def decode_object(self, data: dict) -> Any: ...

    @abc.abstractmethod
    def encode_morphism(self, f) -> dict: ...

    @abc.abstractmethod
    def decode_morphism(self, data: dict) -> Any: ...

    # -- instance streams --------------------------------------------------

    def random_object(self, rng: random.Random, max_size: int) -> Any:
        raise Unsupported(self.name, "random objects")

    def exhaustive_size(self, cutoffs: Cutoffs) -> int:
        if self.sampled:
            return min(cutoffs.max_size, EXHAUSTIVE_SAMPLED_SIZE)
        return cutoffs.max_size

    def sweep_objects(self, cutoffs: Cutoffs, label: str = "objects") -> Iterator:
        """Exhaustive small objects, then seeded random ones for sampled carriers."""
        yield from self.objects(self.exhaustive_size(cutoffs))
        if self.sampled:
            rng = random.Random(f"{cutoffs.seed}/{label}")
            for _ in range(cutoffs.samples):
                yield self.random_object(rng, cutoffs.max_size)

    def sweep_pairs(self, cutoffs: Cutoffs, label: str = "pairs") -> Iterator:
        small = self.objects(self.exhaustive_size(cutoffs))
        yield from cartesian(small, repeat=2)
        if self.sampled:
            rng = random.Random(f"{cutoffs.seed}/{label}")
            for _ in range(cutoffs.samples):
                yield (
                    self.random_object(rng, cutoffs.max_size),
                    self.random_object(rng, cutoffs.max_size),
                )

    # -- derived structure -------------------------------------------------

    def is_initial(self, obj) -> bool:
        return any(self.is_iso(h) for h in self.hom(obj, self.initial()))

    def is_terminal(self, obj) -> bool:
        return any(self.is_iso(h) for h in self.hom(self.terminal(), obj))

    def is_strict_initial(self, max_size: int = 3) -> tuple[bool, Any]:
        """
        Whether every morphism into the initial object is invertible.

        Returns:
            ``(verdict, witness)`` with a non-invertible map as witness.
        """
        zero = self.initial()
        for obj in self.objects(max_size):
            for h in self.hom(obj, zero):
                if not self.is_iso(h):
                    return False, h
        return True, None

    def pushout(self, f, g) -> Pushout:
        """Pushout of the span ``X <-f- Z -g-> Y`` via coproduct and coequalizer."""
        if f.source != g.source:
            raise IllFormed("pushout legs must share their source")
        coproduct = self.coproduct([f.target, g.target])
        i1, i2 = coproduct.injections
        coequalizer = self.coequalizer(self.compose(i1, f), self.compose(i2, g))
        return Pushout(
            apex=coequalizer.apex,
            q1=self.compose(coequalizer.quotient, i1),
            q2=self.compose(coequalizer.quotient, i2),
            coproduct=coproduct,
            coequalizer=coequalizer,
        )

    def copair_pushout(self, pushout: Pushout, u, v) -> Any:
        return self.descend(
            pushout.coequalizer, self.copair(pushout.coproduct, [u, v], u.target)
        )

    def kernel_pair(self, f) -> Pullback:
        return self.pullback(f, f)

    def cokernel_pair(self, f) -> Pushout:
        return self.pushout(f, f)

    def relation_legs(self, mono, obj) -> tuple[Any, Any]:
        square = self.product([obj, obj])
        d, c = square.projections
        return self.compose(d, mono), self.compose(c, mono)

    def kernel_mono(self, f) -> Any:
        """Canonical mono presenting the kernel pair of ``f`` inside ``X × X``."""
        kernel = self.kernel_pair(f)
        square = self.product([f.source, f.source])
        return self.image(self.pair(square, [kernel.p1, kernel.p2], kernel.apex)).mono

    def quotients(self, obj) -> list:
        """One regular quotient of ``obj`` per kernel, in enumeration order."""
        seen = set()
        result = []
        for mono in self.equivalence_relations(obj):
            d, c = self.relation_legs(mono, obj)
            quotient = self.coequalizer(d, c).quotient
            key = self.kernel_mono(quotient)
            if key not in seen:
                seen.add(key)
                result.append(quotient)
        return result

    def is_regular_epi(self, f) -> bool:
        kernel = self.kernel_pair(f)
        coequalizer = self.coequalizer(kernel.p1, kernel.p2)
        return self.is_iso(self.descend(coequalizer, f))

    def is_effective_epimorphic(self, legs: Sequence, target) -> bool:
        """
        Whether ``legs`` exhibit ``target`` as the colimit of the sieve they generate.

        Computed as the coequalizer of the pairwise pullbacks
        ``Σ U_i ×_V U_j ⇉ Σ U_i`` followed by an isomorphism test.
        """
        legs = list(legs)
        for leg in legs:
            if leg.target != target:
                raise IllFormed("family members must share their target")
        cover = self.coproduct([leg.source for leg in legs])
        total = self.copair(cover, legs, target)
        index_pairs = [(i, j) for i in range(len(legs)) for j in range(len(legs))]
        pullbacks = [self.pullback(legs[i], legs[j]) for i, j in index_pairs]
        overlaps = self.coproduct([pb.apex for pb in pullbacks])
        u = self.copair(
            overlaps,
            [
                self.compose(cover.injections[i], pb.p1)
                for (i, _), pb in zip(index_pairs, pullbacks)
            ],
            cover.apex,
        )
        v = self.copair(
            overlaps,
            [
                self.compose(cover.injections[j], pb.p2)
                for (_, j), pb in zip(index_pairs, pullbacks)
            ],
            cover.apex,
        )
        coequalizer = self.coequalizer(u, v)
        return self.is_iso(self.descend(coequalizer, total))

    def pull_back_family(self, legs: Sequence, probe) -> list:
        """Pullbacks of each leg along ``probe``, as maps into ``probe.source``."""
        return [self.pullback(leg, probe).p2 for leg in legs]

    def find_unstable_probe(self, legs: Sequence, target, probe_bound: int) -> Any:
        """
        First probe along which ``legs`` stop being effective-epimorphic.

        The identity is tried first, so an unstable answer also covers the
        plain (non-stable) failure.
        """
        probes = [self.identity(target)] + list(self.probe_family(target, probe_bound))
        for probe in probes:
            if not self.is_effective_epimorphic(
                self.pull_back_family(legs, probe), probe.source
            ):
                return probe
        return None

    # -- diagrams ----------------------------------------------------------

    def limit(self, diagram) -> Limit:
        shape = diagram.shape
        objects = list(shape.objects)
        product = self.product([diagram.at(o) for o in objects])
        projection = dict(zip(objects, product.projections))
        arrows = list(shape.generators)
        codomain = self.product([diagram.at(shape.target(a)) for a in arrows])
        s = self.pair(
            codomain, [projection[shape.target(a)] for a in arrows], product.apex
        )
        t = self.pair(
            codomain,
            [self.compose(diagram.map(a), projection[shape.source(a)]) for a in arrows],
            product.apex,
        )
        equalizer = self.equalizer(s, t)
        legs = tuple(
            (o, self.compose(projection[o], equalizer.inclusion)) for o in objects
        )
        return Limit(equalizer.apex, legs, product, equalizer)

    def colimit(self, diagram) -> Colimit:
        shape = diagram.shape
        objects = list(shape.objects)
        coproduct = self.coproduct([diagram.at(o) for o in objects])
        injection = dict(zip(objects, coproduct.injections))
        arrows = list(shape.generators)
        domain = self.coproduct([diagram.at(shape.source(a)) for a in arrows])
        s = self.copair(
            domain, [injection[shape.source(a)] for a in arrows], coproduct.apex
        )
        t = self.copair(
            domain,
            [self.compose(injection[shape.target(a)], diagram.map(a)) for a in arrows],
            coproduct.apex,
        )
        coequalizer = self.coequalizer(s, t)
        if coequalizer.collapsed:
            self._logger.debug(f"colimit over {shape.describe()} collapsed classes")
        legs = tuple(
            (o, self.compose(coequalizer.quotient, injection[o])) for o in objects
        )
        return Colimit(coequalizer.apex, legs, coproduct, coequalizer)

    def limit_mediator(self, limit: Limit, maps: Mapping, source) -> Any:
        objects = [o for o, _ in limit.legs]
        paired = self.pair(limit.product, [maps[o] for o in objects], source)
        return self.lift_equalizer(limit.equalizer, paired)

    def colimit_mediator(self, colimit: Colimit, maps: Mapping, target) -> Any:
        objects = [o for o, _ in colimit.legs]
        return self.descend(
            colimit.coequalizer,
            self.copair(colimit.coproduct, [maps[o] for o in objects], target),
        )

    def describe(self) -> str:
        return self.name
