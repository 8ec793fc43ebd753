from collections.abc import Iterator, Sequence
from functools import lru_cache
from itertools import combinations, permutations

from .._order import (
    UnionFind,
    is_antisymmetric,
    mutual_classes,
    order_matrix,
    set_partitions,
    strict_pairs,
    sub_orders,
    transitive_closure,
)
from .._serialize import from_jsonable, sort_elements, to_jsonable
from ..exception import IllFormed, PosetQuotientCollapse
from .finset import POINT, FinSetCarrier
from .model import Coequalizer, FinMap, FinPoset


@lru_cache(maxsize=None)
def _unlabeled_posets(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Strict orders on ``range(n)``, one canonical labelling per iso class."""
    if n == 0:
        return ((),)
    found = set()
    newest = n - 1
    for pairs in _unlabeled_posets(n - 1):
        below = {y: {x for x, z in pairs if z == y} for y in range(newest)}
        for k in range(n):
            for down in combinations(range(newest), k):
                down_set = set(down)
                if any(not below[y] <= down_set for y in down_set):
                    continue
                extended = set(pairs) | {(d, newest) for d in down_set}
                found.add(_canonical(extended, n))
    return tuple(sorted(found, key=lambda p: (len(p), p)))


def _canonical(pairs, n: int) -> tuple[tuple[int, int], ...]:
    return min(
        tuple(sorted((perm[x], perm[y]) for x, y in pairs))
        for perm in permutations(range(n))
    )


class FinPosetCarrier(FinSetCarrier):
    """
    Finite posets and monotone maps.

    Monos are injective monotone maps. Quotients push the order forward and
    close it transitively; when antisymmetry breaks the poset reflection
    merges the offending classes (``collapsed=True``), or, with
    ``strict=True``, :class:`PosetQuotientCollapse` is raised.
    """

    name = "finposet"
    is_topos = False

    def __init__(self, strict: bool = False, logger=None):
        super().__init__(logger)
        self.strict = strict

    def hom(self, source, target) -> Iterator[FinMap]:
        xs = list(source.elements)
        assigned: dict = {}

        def extend(index):
            if index == len(xs):
                yield FinMap(source, target, tuple((x, assigned[x]) for x in xs))
                return
            x = xs[index]
            for y in target.elements:
                if all(
                    (not source.leq(prev, x) or target.leq(assigned[prev], y))
                    and (not source.leq(x, prev) or target.leq(y, assigned[prev]))
                    for prev in xs[:index]
                ):
                    assigned[x] = y
                    yield from extend(index + 1)
                    del assigned[x]

        yield from extend(0)

    def is_iso(self, f: FinMap) -> bool:
        if not (self.is_mono(f) and self.is_epi(f)):
            return False
        back = {y: x for x, y in f.mapping}
        return all(f.source.leq(back[a], back[b]) for a, b in f.target.order)

    # -- limits ------------------------------------------------------------

    def terminal(self) -> FinPoset:
        return FinPoset((POINT,))

    def _product_object(self, objects):
        base = super()._product_object(objects).elements
        pairs = [
            (s, t)
            for s in base
            for t in base
            if s != t and all(o.leq(a, b) for o, a, b in zip(objects, s, t))
        ]
        return FinPoset(base, tuple(pairs))

    def _restrict(self, obj, kept):
        kept_set = set(kept)
        pairs = tuple((x, y) for x, y in obj.order if x in kept_set and y in kept_set)
        return FinPoset(tuple(kept), pairs)

    # -- colimits ----------------------------------------------------------

    def initial(self) -> FinPoset:
        return FinPoset(())

    def _coproduct_object(self, objects):
        elements = tuple((k, x) for k, obj in enumerate(objects) for x in obj)
        pairs = tuple(
            ((k, x), (k, y)) for k, obj in enumerate(objects) for x, y in obj.order
        )
        return FinPoset(elements, pairs)

    def coequalizer(self, f: FinMap, g: FinMap) -> Coequalizer:
        if f.source != g.source or f.target != g.target:
            raise IllFormed("coequalizer needs a parallel pair")
        target = f.target
        classes = UnionFind(target.elements)
        for x in f.source.elements:
            classes.union(f(x), g(x))
        collapsed = False
        while True:
            representative = classes.representative_map()
            reps = sort_elements(representative.values())
            pushed = [
                (representative[x], representative[y])
                for x, y in target.order
                if representative[x] != representative[y]
            ]
            matrix = transitive_closure(order_matrix(reps, pushed))
            if is_antisymmetric(matrix):
                break
            groups = [
                [reps[i] for i in c] for c in mutual_classes(matrix) if len(c) > 1
            ]
            if self.strict:
                raise PosetQuotientCollapse(groups)
            self._logger.warning(f"poset quotient collapsed classes {groups}")
            collapsed = True
            for group in groups:
                for other in group[1:]:
                    classes.union(group[0], other)
        apex = FinPoset(reps, strict_pairs(reps, matrix))
        quotient = FinMap(target, apex, tuple(representative.items()))
        return Coequalizer(apex, quotient, collapsed)

    def _image_object(self, f):
        pairs = [(f(x), f(y)) for x, y in f.source.order if f(x) != f(y)]
        return FinPoset(f.image_elements(), tuple(pairs))

    # -- enumeration -------------------------------------------------------

    def objects(self, max_size: int) -> list:
        return [
            FinPoset(tuple(range(n)), pairs)
            for n in range(max_size + 1)
            for pairs in _unlabeled_posets(n)
        ]

    def probe_family(self, obj, probe_bound: int) -> list:
        probes = []
        for domain in self.objects(probe_bound):
            if domain.elements:
                probes.extend(self.hom(domain, obj))
        return probes

    def equivalence_relations(self, obj) -> list:
        """
        For each partition: the relation with the order induced from
        ``obj × obj`` and, when different, the least order making it an
        internal equivalence relation (only diagonal pairs comparable).
        """
        square = self.product([obj, obj]).apex
        relations = []
        for blocks in set_partitions(obj.elements):
            pairs = [(x, y) for block in blocks for x in block for y in block]
            induced = self._restrict(square, pairs)
            relations.append(FinMap.of(induced, square, lambda x: x))
            least = FinPoset(
                tuple(pairs), tuple(((x, x), (y, y)) for x, y in obj.order)
            )
            if least != induced:
                relations.append(FinMap.of(least, square, lambda x: x))
        return relations

    def subobjects(self, obj) -> list:
        """Every subset with every sub-order of its induced order."""
        monos = []
        for k in range(len(obj.elements) + 1):
            for subset in combinations(obj.elements, k):
                induced = self._restrict(obj, subset)
                for order in sub_orders(induced.order):
                    apex = FinPoset(induced.elements, order)
                    monos.append(FinMap.of(apex, obj, lambda x: x))
        return monos

    def reflexive_relations(self, obj) -> list:
        """
        Sub-posets of ``obj × obj`` containing the diagonal, which keeps
        its own order so that ``x -> (x, x)`` stays monotone.
        """
        square = self.product([obj, obj]).apex
        diagonal = [(x, x) for x in obj.elements]
        required = [((x, x), (y, y)) for x, y in obj.order]
        off = [(x, y) for x in obj.elements for y in obj.elements if x != y]
        relations = []
        for k in range(len(off) + 1):
            for extra in combinations(off, k):
                induced = self._restrict(square, diagonal + list(extra))
                for order in sub_orders(induced.order, required):
                    apex = FinPoset(induced.elements, order)
                    relations.append(FinMap.of(apex, square, lambda x: x))
        return relations

    # -- serialization -----------------------------------------------------

    def encode_object(self, obj) -> dict:
        return {"elements": to_jsonable(obj.elements), "order": to_jsonable(obj.order)}

    def decode_object(self, data: dict) -> FinPoset:
        try:
            return FinPoset(
                from_jsonable(data["elements"]), from_jsonable(data.get("order", []))
            )
        except (KeyError, TypeError) as e:
            raise IllFormed(f"cannot decode finite poset: {e}")
