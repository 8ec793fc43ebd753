"""
Exhaustive universal-property checks.

A construction is accepted when, for every test object ``T``, composing
with its legs is a bijection between ``Hom(T, apex)`` (or ``Hom(apex, T)``)
and the set of cones (or cocones) with vertex ``T``.
"""

from collections.abc import Callable, Iterable, Sequence
from itertools import product as cartesian
from typing import Any

from ..exception import UniversalPropertyViolation
from .base import Carrier
from .model import Coequalizer, Coproduct, Equalizer, Product, Pullback, Pushout

DEFAULT_TEST_SIZE = 2


def _bijective(
    construction: str, test, hom: Iterable, fn: Callable, cones: set
) -> None:
    images = [fn(h) for h in hom]
    if len(set(images)) != len(images):
        raise UniversalPropertyViolation(
            construction, f"two mediating morphisms from {test!r} induce the same cone"
        )
    if set(images) != cones:
        raise UniversalPropertyViolation(
            construction, f"some cone from {test!r} has no mediating morphism"
        )


def verify_terminal(carrier: Carrier, terminal, tests: Iterable) -> None:
    for t in tests:
        if len(list(carrier.hom(t, terminal))) != 1:
            raise UniversalPropertyViolation(
                "terminal", f"not exactly one map from {t!r}"
            )


def verify_initial(carrier: Carrier, initial, tests: Iterable) -> None:
    for t in tests:
        if len(list(carrier.hom(initial, t))) != 1:
            raise UniversalPropertyViolation(
                "initial", f"not exactly one map into {t!r}"
            )


def verify_product(
    carrier: Carrier, product: Product, objects: Sequence, tests: Iterable
) -> None:
    for t in tests:
        cones = set(cartesian(*[list(carrier.hom(t, x)) for x in objects]))
        _bijective(
            "product",
            t,
            carrier.hom(t, product.apex),
            lambda h: tuple(carrier.compose(p, h) for p in product.projections),
            cones,
        )


def verify_pullback(
    carrier: Carrier, pullback: Pullback, f, g, tests: Iterable
) -> None:
    if carrier.compose(f, pullback.p1) != carrier.compose(g, pullback.p2):
        raise UniversalPropertyViolation("pullback", "square does not commute")
    for t in tests:
        cones = {
            (u, v)
            for u in carrier.hom(t, f.source)
            for v in carrier.hom(t, g.source)
            if carrier.compose(f, u) == carrier.compose(g, v)
        }
        _bijective(
            "pullback",
            t,
            carrier.hom(t, pullback.apex),
            lambda h: (
                carrier.compose(pullback.p1, h),
                carrier.compose(pullback.p2, h),
            ),
            cones,
        )


def verify_equalizer(
    carrier: Carrier, equalizer: Equalizer, f, g, tests: Iterable
) -> None:
    m = equalizer.inclusion
    if carrier.compose(f, m) != carrier.compose(g, m):
        raise UniversalPropertyViolation("equalizer", "inclusion does not equalize")
    for t in tests:
        cones = {
            h
            for h in carrier.hom(t, f.source)
            if carrier.compose(f, h) == carrier.compose(g, h)
        }
        _bijective(
            "equalizer",
            t,
            carrier.hom(t, equalizer.apex),
            lambda h: carrier.compose(m, h),
            cones,
        )


def verify_coproduct(
    carrier: Carrier, coproduct: Coproduct, objects: Sequence, tests: Iterable
) -> None:
    for t in tests:
        cocones = set(cartesian(*[list(carrier.hom(x, t)) for x in objects]))
        _bijective(
            "coproduct",
            t,
            carrier.hom(coproduct.apex, t),
            lambda h: tuple(carrier.compose(h, i) for i in coproduct.injections),
            cocones,
        )


def verify_pushout(carrier: Carrier, pushout: Pushout, f, g, tests: Iterable) -> None:
    if carrier.compose(pushout.q1, f) != carrier.compose(pushout.q2, g):
        raise UniversalPropertyViolation("pushout", "square does not commute")
    for t in tests:
        cocones = {
            (u, v)
            for u in carrier.hom(f.target, t)
            for v in carrier.hom(g.target, t)
            if carrier.compose(u, f) == carrier.compose(v, g)
        }
        _bijective(
            "pushout",
            t,
            carrier.hom(pushout.apex, t),
            lambda h: (carrier.compose(h, pushout.q1), carrier.compose(h, pushout.q2)),
            cocones,
        )


def verify_coequalizer(
    carrier: Carrier, coequalizer: Coequalizer, f, g, tests: Iterable
) -> None:
    q = coequalizer.quotient
    if carrier.compose(q, f) != carrier.compose(q, g):
        raise UniversalPropertyViolation("coequalizer", "quotient does not coequalize")
    for t in tests:
        cocones = {
            h
            for h in carrier.hom(f.target, t)
            if carrier.compose(h, f) == carrier.compose(h, g)
        }
        _bijective(
            "coequalizer",
            t,
            carrier.hom(coequalizer.apex, t),
            lambda h: carrier.compose(h, q),
            cocones,
        )


class AuditedCarrier(Carrier):
    """
    Wrap a carrier and verify every construction it returns.

    Test objects are the wrapped carrier's objects up to ``test_size``.

    Raises:
        UniversalPropertyViolation: As soon as a construction fails.
    """

    def __init__(self, inner: Carrier, test_size: int = DEFAULT_TEST_SIZE, logger=None):
        super().__init__(logger)
        self.inner = inner
        self.name = inner.name
        self.is_topos = inner.is_topos
        self.sampled = inner.sampled
        self.tests = list(inner.objects(test_size))
        self.audits = 0

    def _audited(self, check: Callable, *args) -> None:
        check(self.inner, *args, self.tests)
        self.audits += 1

    # -- delegated structure -----------------------------------------------

    def identity(self, obj) -> Any:
        return self.inner.identity(obj)

    def compose(self, g, f) -> Any:
        return self.inner.compose(g, f)

    def hom(self, source, target):
        return self.inner.hom(source, target)

    def size(self, obj) -> int:
        return self.inner.size(obj)

    def is_mono(self, f) -> bool:
        return self.inner.is_mono(f)

    def is_epi(self, f) -> bool:
        return self.inner.is_epi(f)

    def is_iso(self, f) -> bool:
        return self.inner.is_iso(f)

    def inverse(self, f) -> Any:
        return self.inner.inverse(f)

    def to_terminal(self, obj) -> Any:
        return self.inner.to_terminal(obj)

    def pair(self, product, maps, source) -> Any:
        return self.inner.pair(product, maps, source)

    def lift_equalizer(self, equalizer, h) -> Any:
        return self.inner.lift_equalizer(equalizer, h)

    def mediate_pullback(self, pullback, u, v) -> Any:
        return self.inner.mediate_pullback(pullback, u, v)

    def from_initial(self, obj) -> Any:
        return self.inner.from_initial(obj)

    def copair(self, coproduct, maps, target) -> Any:
        return self.inner.copair(coproduct, maps, target)

    def descend(self, coequalizer, h) -> Any:
        return self.inner.descend(coequalizer, h)

    def image(self, f):
        return self.inner.image(f)

    def objects(self, max_size: int) -> list:
        return self.inner.objects(max_size)

    def random_object(self, rng, max_size: int) -> Any:
        return self.inner.random_object(rng, max_size)

    def probe_family(self, obj, probe_bound: int) -> list:
        return self.inner.probe_family(obj, probe_bound)

    def subobjects(self, obj) -> list:
        return self.inner.subobjects(obj)

    def equivalence_relations(self, obj) -> list:
        return self.inner.equivalence_relations(obj)

    def reflexive_relations(self, obj) -> list:
        return self.inner.reflexive_relations(obj)

    def encode_object(self, obj) -> dict:
        return self.inner.encode_object(obj)

    def decode_object(self, data: dict) -> Any:
        return self.inner.decode_object(data)

    def encode_morphism(self, f) -> dict:
        return self.inner.encode_morphism(f)

    def decode_morphism(self, data: dict) -> Any:
        return self.inner.decode_morphism(data)

    # -- audited constructions ---------------------------------------------

    def terminal(self) -> Any:
        terminal = self.inner.terminal()
        self._audited(verify_terminal, terminal)
        return terminal

    def initial(self) -> Any:
        initial = self.inner.initial()
        self._audited(verify_initial, initial)
        return initial

    def product(self, objects: Sequence) -> Product:
        product = self.inner.product(objects)
        self._audited(verify_product, product, list(objects))
        return product

    def equalizer(self, f, g) -> Equalizer:
        equalizer = self.inner.equalizer(f, g)
        self._audited(verify_equalizer, equalizer, f, g)
        return equalizer

    def pullback(self, f, g) -> Pullback:
        pullback = self.inner.pullback(f, g)
        self._audited(verify_pullback, pullback, f, g)
        return pullback

    def coproduct(self, objects: Sequence) -> Coproduct:
        coproduct = self.inner.coproduct(objects)
        self._audited(verify_coproduct, coproduct, list(objects))
        return coproduct

    def coequalizer(self, f, g) -> Coequalizer:
        coequalizer = self.inner.coequalizer(f, g)
        self._audited(verify_coequalizer, coequalizer, f, g)
        return coequalizer

    def pushout(self, f, g) -> Pushout:
        pushout = super().pushout(f, g)
        self._audited(verify_pushout, pushout, f, g)
        return pushout
