from collections.abc import Iterator, Sequence
from itertools import combinations
from itertools import product as cartesian

from .._order import UnionFind, set_partitions
from .._serialize import from_jsonable, to_jsonable
from ..exception import IllFormed
from .base import Carrier
from .model import (
    Coequalizer,
    Coproduct,
    Equalizer,
    FinMap,
    FinSet,
    Image,
    Product,
    Pullback,
)

POINT = "*"


class FinSetCarrier(Carrier):
    """The category of finite sets and functions."""

    name = "finset"
    is_topos = True

    # -- category structure ------------------------------------------------

    def identity(self, obj: FinSet) -> FinMap:
        return FinMap(obj, obj, tuple((x, x) for x in obj.elements))

    def compose(self, g: FinMap, f: FinMap) -> FinMap:
        if f.target != g.source:
            raise IllFormed("cannot compose maps: target and source differ")
        return FinMap(f.source, g.target, tuple((x, g(y)) for x, y in f.mapping))

    def hom(self, source, target) -> Iterator[FinMap]:
        for values in cartesian(target.elements, repeat=len(source.elements)):
            yield FinMap(source, target, tuple(zip(source.elements, values)))

    def size(self, obj) -> int:
        return len(obj.elements)

    def is_mono(self, f: FinMap) -> bool:
        return len(f.image_elements()) == len(f.source.elements)

    def is_epi(self, f: FinMap) -> bool:
        return len(f.image_elements()) == len(f.target.elements)

    def is_iso(self, f: FinMap) -> bool:
        return self.is_mono(f) and self.is_epi(f)

    def inverse(self, f: FinMap) -> FinMap:
        if not self.is_iso(f):
            raise IllFormed("map is not invertible")
        return FinMap(f.target, f.source, tuple((y, x) for x, y in f.mapping))

    # -- limits ------------------------------------------------------------

    def terminal(self) -> FinSet:
        return FinSet((POINT,))

    def to_terminal(self, obj) -> FinMap:
        return FinMap.of(obj, self.terminal(), lambda x: POINT)

    def product(self, objects: Sequence) -> Product:
        objects = list(objects)
        apex = self._product_object(objects)
        projections = tuple(
            FinMap.of(apex, obj, lambda t, k=k: t[k]) for k, obj in enumerate(objects)
        )
        return Product(apex, projections)

    def _product_object(self, objects):
        return FinSet(tuple(cartesian(*[o.elements for o in objects])))

    def pair(self, product: Product, maps: Sequence, source) -> FinMap:
        return FinMap.of(source, product.apex, lambda x: tuple(m(x) for m in maps))

    def equalizer(self, f: FinMap, g: FinMap) -> Equalizer:
        kept = [x for x in f.source.elements if f(x) == g(x)]
        apex = self._restrict(f.source, kept)
        return Equalizer(apex, FinMap.of(apex, f.source, lambda x: x))

    def _restrict(self, obj, kept):
        return FinSet(tuple(kept))

    def lift_equalizer(self, equalizer: Equalizer, h: FinMap) -> FinMap:
        return FinMap(h.source, equalizer.apex, h.mapping)

    def pullback(self, f: FinMap, g: FinMap) -> Pullback:
        if f.target != g.target:
            raise IllFormed("pullback legs must share their target")
        square = self._product_object([f.source, g.source])
        kept = [(x, y) for x, y in square.elements if f(x) == g(y)]
        apex = self._restrict(square, kept)
        return Pullback(
            apex,
            FinMap.of(apex, f.source, lambda t: t[0]),
            FinMap.of(apex, g.source, lambda t: t[1]),
        )

    def mediate_pullback(self, pullback: Pullback, u: FinMap, v: FinMap) -> FinMap:
        return FinMap.of(u.source, pullback.apex, lambda x: (u(x), v(x)))

    # -- colimits ----------------------------------------------------------

    def initial(self) -> FinSet:
        return FinSet(())

    def from_initial(self, obj) -> FinMap:
        return FinMap(self.initial(), obj, ())

    def coproduct(self, objects: Sequence) -> Coproduct:
        objects = list(objects)
        apex = self._coproduct_object(objects)
        injections = tuple(
            FinMap.of(obj, apex, lambda x, k=k: (k, x)) for k, obj in enumerate(objects)
        )
        return Coproduct(apex, injections)

    def _coproduct_object(self, objects):
        return FinSet(tuple((k, x) for k, obj in enumerate(objects) for x in obj))

    def copair(self, coproduct: Coproduct, maps: Sequence, target) -> FinMap:
        return FinMap.of(coproduct.apex, target, lambda t: maps[t[0]](t[1]))

    def coequalizer(self, f: FinMap, g: FinMap) -> Coequalizer:
        if f.source != g.source or f.target != g.target:
            raise IllFormed("coequalizer needs a parallel pair")
        classes = UnionFind(f.target.elements)
        for x in f.source.elements:
            classes.union(f(x), g(x))
        representative = classes.representative_map()
        apex = FinSet(tuple(set(representative.values())))
        return Coequalizer(apex, FinMap(f.target, apex, tuple(representative.items())))

    def descend(self, coequalizer: Coequalizer, h: FinMap) -> FinMap:
        quotient = coequalizer.quotient
        if h.source != quotient.source:
            raise IllFormed("map does not start at the coequalized object")
        values: dict = {}
        for y, value in h.mapping:
            rep = quotient(y)
            if values.setdefault(rep, value) != value:
                raise IllFormed("map does not coequalize the pair")
        return FinMap(coequalizer.apex, h.target, tuple(values.items()))

    def image(self, f: FinMap) -> Image:
        apex = self._image_object(f)
        return Image(
            apex,
            FinMap(f.source, apex, f.mapping),
            FinMap.of(apex, f.target, lambda y: y),
        )

    def _image_object(self, f):
        return FinSet(f.image_elements())

    # -- enumeration -------------------------------------------------------

    def objects(self, max_size: int) -> list:
        return [FinSet(tuple(range(n))) for n in range(max_size + 1)]

    def probe_family(self, obj, probe_bound: int) -> list:
        point = self.terminal()
        return [FinMap(point, obj, ((POINT, x),)) for x in obj.elements]

    def subobjects(self, obj) -> list:
        monos = []
        for k in range(len(obj.elements) + 1):
            for subset in combinations(obj.elements, k):
                apex = self._restrict(obj, subset)
                monos.append(FinMap.of(apex, obj, lambda x: x))
        return monos

    def _relation(self, obj, pairs) -> FinMap:
        square = self.product([obj, obj]).apex
        apex = self._restrict(square, pairs)
        return FinMap.of(apex, square, lambda x: x)

    def equivalence_relations(self, obj) -> list:
        relations = []
        for blocks in set_partitions(obj.elements):
            pairs = [(x, y) for block in blocks for x in block for y in block]
            relations.append(self._relation(obj, pairs))
        return relations

    def reflexive_relations(self, obj) -> list:
        diagonal = [(x, x) for x in obj.elements]
        off = [(x, y) for x in obj.elements for y in obj.elements if x != y]
        relations = []
        for k in range(len(off) + 1):
            for extra in combinations(off, k):
                relations.append(self._relation(obj, diagonal + list(extra)))
        return relations

    # -- serialization -----------------------------------------------------

    def encode_object(self, obj) -> dict:
        return {"elements": to_jsonable(obj.elements)}

    def decode_object(self, data: dict) -> FinSet:
        try:
            return FinSet(from_jsonable(data["elements"]))
        except (KeyError, TypeError) as e:
            raise IllFormed(f"cannot decode finite set: {e}")

    def encode_morphism(self, f: FinMap) -> dict:
        return {
            "source": self.encode_object(f.source),
            "target": self.encode_object(f.target),
            "mapping": to_jsonable(f.mapping),
        }

    def decode_morphism(self, data: dict) -> FinMap:
        try:
            return FinMap(
                self.decode_object(data["source"]),
                self.decode_object(data["target"]),
                from_jsonable(data["mapping"]),
            )
        except (KeyError, TypeError) as e:
            raise IllFormed(f"cannot decode map: {e}")
