from itertools import combinations

import pytest

from lexkit.carrier import (
    FinMap,
    FinPoset,
    FinPosetCarrier,
    FinSet,
    FinSetCarrier,
    PresheafCarrier,
)
from lexkit.carrier.model import Coequalizer, Coproduct
from lexkit.config import Cutoffs
from lexkit.fincat import standard_shape

BASE = "*"
LABELS = (BASE, "a", "b", "c", "d")


def is_base(x) -> bool:
    if isinstance(x, tuple):
        return len(x) > 0 and all(is_base(y) for y in x)
    return x == BASE


def basepoint(obj):
    return next(x for x in obj.elements if is_base(x))


class PointedSetCarrier(FinSetCarrier):
    """
    Finite pointed sets and basepoint-preserving maps.

    Coproducts are wedges and the one-point set is a zero object, so the
    initial object is not strict and coproducts are not stable.
    """

    name = "pointed"
    is_topos = False

    def hom(self, source, target):
        point = basepoint(target)
        for f in super().hom(source, target):
            if f(basepoint(source)) == point:
                yield f

    def initial(self) -> FinSet:
        return FinSet((BASE,))

    def from_initial(self, obj) -> FinMap:
        return FinMap(self.initial(), obj, ((BASE, basepoint(obj)),))

    def _coproduct_object(self, objects):
        rest = tuple(
            (k, x) for k, obj in enumerate(objects) for x in obj if not is_base(x)
        )
        return FinSet((BASE,) + rest)

    def coproduct(self, objects):
        objects = list(objects)
        apex = self._coproduct_object(objects)
        injections = tuple(
            FinMap.of(obj, apex, lambda x, k=k: BASE if is_base(x) else (k, x))
            for k, obj in enumerate(objects)
        )
        return Coproduct(apex, injections)

    def copair(self, coproduct, maps, target) -> FinMap:
        point = basepoint(target)
        return FinMap.of(
            coproduct.apex,
            target,
            lambda t: point if t == BASE else maps[t[0]](t[1]),
        )

    def coequalizer(self, f, g) -> Coequalizer:
        plain = super().coequalizer(f, g)
        base_class = plain.quotient(basepoint(f.target))

        def rename(y):
            return BASE if y == base_class else y

        apex = FinSet(tuple(rename(y) for y in plain.apex.elements))
        mapping = tuple((x, rename(y)) for x, y in plain.quotient.mapping)
        return Coequalizer(apex, FinMap(f.target, apex, mapping))

    def objects(self, max_size: int) -> list:
        return [FinSet(LABELS[:n]) for n in range(1, max(max_size, 1) + 1)]

    def probe_family(self, obj, probe_bound: int) -> list:
        domain = FinSet((BASE, "z"))
        point = basepoint(obj)
        return [FinMap(domain, obj, ((BASE, point), ("z", x))) for x in obj.elements]

    def subobjects(self, obj) -> list:
        point = basepoint(obj)
        rest = [x for x in obj.elements if x != point]
        monos = []
        for k in range(len(rest) + 1):
            for subset in combinations(rest, k):
                apex = FinSet((point,) + subset)
                monos.append(FinMap.of(apex, obj, lambda x: x))
        return monos


@pytest.fixture
def finset() -> FinSetCarrier:
    return FinSetCarrier()


@pytest.fixture
def finposet() -> FinPosetCarrier:
    return FinPosetCarrier()


@pytest.fixture
def pointed() -> PointedSetCarrier:
    return PointedSetCarrier()


@pytest.fixture
def arrow_presheaves() -> PresheafCarrier:
    return PresheafCarrier(standard_shape("walking_arrow"))


@pytest.fixture
def small() -> Cutoffs:
    return Cutoffs(max_size=2, samples=8, probe_bound=2, budget=1, seed=7, hom_cap=64)


@pytest.fixture
def chain2() -> FinPoset:
    return FinPoset((0, 1), ((0, 1),))
