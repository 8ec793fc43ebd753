"""
Finite categories with explicit composition tables.

Categories are presented by objects, generating arrows and equations between
paths. The presentation is completed into a full table by oriented rewriting
and breadth-first closure; the resulting table is then checked against the
category laws and the equations, so any accepted table is exactly the
category presented.
"""

from collections import deque
from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from ._lexer import Token, TokenCursor
from ._logger import get_logger
from .exception import IllFormed

MAX_MORPHISMS = 2000
IDENTITY_PREFIX = "id_"


@dataclass(frozen=True)
class Arrow:
    """
    A morphism of a finite category.

    Attributes:
        name: Canonical name; ``id_X`` for identities, the generator name for
            generators, otherwise the right-to-left path such as ``r.d``.
        source: Source object.
        target: Target object.
        path: Generators in application order (empty for identities).
    """

    name: str
    source: str
    target: str
    path: tuple[str, ...]


@dataclass(frozen=True)
class FinCategory:
    """
    A validated finite category.

    Equality is structural (objects, arrows, generators, table and mono
    markings); the display name does not take part in comparisons.
    """

    objects: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    generators: tuple[str, ...]
    table: tuple[tuple[str, str, str], ...]
    monos: frozenset[str] = frozenset()
    name: str = field(default="", compare=False)

    @cached_property
    def _arrow_index(self) -> dict[str, Arrow]:
        return {arrow.name: arrow for arrow in self.arrows}

    @cached_property
    def _compose_index(self) -> dict[tuple[str, str], str]:
        return {(g, f): h for g, f, h in self.table}

    @cached_property
    def _hom_index(self) -> dict[tuple[str, str], tuple[str, ...]]:
        homs: dict[tuple[str, str], list[str]] = {
            (a, b): [] for a in self.objects for b in self.objects
        }
        for arrow in self.arrows:
            homs[(arrow.source, arrow.target)].append(arrow.name)
        return {key: tuple(names) for key, names in homs.items()}

    @property
    def morphisms(self) -> tuple[str, ...]:
        return tuple(arrow.name for arrow in self.arrows)

    def describe(self) -> str:
        if self.name:
            return self.name
        return f"<{len(self.objects)} objects, {len(self.arrows)} morphisms>"

    def arrow(self, name: str) -> Arrow:
        try:
            return self._arrow_index[name]
        except KeyError:
            raise IllFormed(f"unknown morphism '{name}' in {self.describe()}")

    def has_arrow(self, name: str) -> bool:
        return name in self._arrow_index

    def source(self, name: str) -> str:
        return self.arrow(name).source

    def target(self, name: str) -> str:
        return self.arrow(name).target

    def identity(self, obj: str) -> str:
        if obj not in self.objects:
            raise IllFormed(f"unknown object '{obj}' in {self.describe()}")
        return IDENTITY_PREFIX + obj

    def is_identity(self, name: str) -> bool:
        return not self.arrow(name).path

    def compose(self, g: str, f: str) -> str:
        """``g ∘ f``; defined only when target(f) = source(g)."""
        try:
            return self._compose_index[(g, f)]
        except KeyError:
            raise IllFormed(
                f"cannot compose {g} after {f} in {self.describe()}: not composable"
            )

    def evaluate(self, path: Sequence[str], start: str) -> str:
        """Compose generators given in application order, starting at ``start``."""
        current = self.identity(start)
        for step in path:
            current = self.compose(step, current)
        return current

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._hom_index.get((a, b), ())

    def is_mono_marked(self, name: str) -> bool:
        return name in self.monos


# ---------------------------------------------------------------------------
# canonical assembly


def _assemble(
    objects: Sequence[str],
    generators: Sequence[tuple[str, Hashable, str, str]],
    identities: Mapping[str, Hashable],
    endpoints: Mapping[Hashable, tuple[str, str]],
    compose: Callable[[Hashable, Hashable], Hashable],
    monos: Iterable[str] = (),
    name: str = "",
) -> FinCategory:
    """
    Name and order abstract morphisms canonically, then validate the laws.

    Every morphism is named after the shortlex-least generator path reaching
    it, where generators are ordered by declaration.
    """
    canonical: dict[Hashable, tuple[str, ...]] = {}
    frontier = []
    for obj in objects:
        key = identities[obj]
        canonical[key] = ()
        frontier.append(key)

    seen_generators: dict[Hashable, str] = {}
    for gen_name, key, _, _ in generators:
        if key in identities.values():
            raise IllFormed(f"generator '{gen_name}' collapses to an identity")
        if key in seen_generators:
            raise IllFormed(
                f"generators '{seen_generators[key]}' and '{gen_name}' coincide"
            )
        seen_generators[key] = gen_name

    while frontier:
        next_frontier = []
        for key in frontier:
            _, tgt = endpoints[key]
            for gen_name, gen_key, gen_src, _ in generators:
                if gen_src != tgt:
                    continue
                composite = compose(gen_key, key)
                if composite not in canonical:
                    canonical[composite] = canonical[key] + (gen_name,)
                    next_frontier.append(composite)
        frontier = next_frontier

    missing = [key for key in endpoints if key not in canonical]
    if missing:
        raise IllFormed(f"{len(missing)} morphisms are not generated")

    gen_order = {gen_name: index for index, (gen_name, *_) in enumerate(generators)}
    names: dict[Hashable, str] = {}
    for key, path in canonical.items():
        src, _ = endpoints[key]
        if not path:
            names[key] = IDENTITY_PREFIX + src
        elif key in seen_generators:
            names[key] = seen_generators[key]
        else:
            names[key] = ".".join(reversed(path))

    def order(key):
        path = canonical[key]
        if not path:
            return (0, objects.index(endpoints[key][0]), ())
        if key in seen_generators:
            return (1, gen_order[seen_generators[key]], ())
        return (2, len(path), tuple(gen_order[g] for g in path))

    keys = sorted(canonical, key=order)
    arrows = tuple(
        Arrow(names[key], endpoints[key][0], endpoints[key][1], canonical[key])
        for key in keys
    )
    table = []
    for f_key in keys:
        for g_key in keys:
            if endpoints[g_key][0] == endpoints[f_key][1]:
                table.append((names[g_key], names[f_key], names[compose(g_key, f_key)]))

    monos = frozenset(monos)
    unknown = monos - {gen_name for gen_name, *_ in generators}
    if unknown:
        raise IllFormed(f"mono marking on non-generators: {sorted(unknown)}")

    category = FinCategory(
        objects=tuple(objects),
        arrows=arrows,
        generators=tuple(gen_name for gen_name, *_ in generators),
        table=tuple(table),
        monos=monos,
        name=name,
    )
    check_laws(category)
    return category


def check_laws(category: FinCategory) -> None:
    """Exhaustively verify endpoints, identity and associativity laws."""
    for g, f, h in category.table:
        if category.source(h) != category.source(f) or category.target(
            h
        ) != category.target(g):
            raise IllFormed(f"composite {g}∘{f} = {h} has the wrong endpoints")
    for arrow in category.arrows:
        if category.compose(category.identity(arrow.target), arrow.name) != arrow.name:
            raise IllFormed(f"left identity law fails for {arrow.name}")
        if category.compose(arrow.name, category.identity(arrow.source)) != arrow.name:
            raise IllFormed(f"right identity law fails for {arrow.name}")
    for f in category.arrows:
        for g_name in _outgoing(category, f.target):
            gf = category.compose(g_name, f.name)
            for h_name in _outgoing(category, category.target(g_name)):
                left = category.compose(h_name, gf)
                right = category.compose(category.compose(h_name, g_name), f.name)
                if left != right:
                    raise IllFormed(
                        f"associativity fails for ({h_name}, {g_name}, {f.name})"
                    )


def _outgoing(category: FinCategory, obj: str) -> list[str]:
    return [a.name for a in category.arrows if a.source == obj]


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class _Presentation:
    objects: tuple[str, ...]
    generators: tuple[tuple[str, str, str], ...]
    equations: tuple[tuple[tuple[str, ...], tuple[str, ...], str, str], ...]
    monos: tuple[str, ...]


def _shortlex(path: tuple[str, ...], order: Mapping[str, int]) -> tuple:
    return (len(path), tuple(order[g] for g in path))


def _complete(presentation: _Presentation, name: str = "") -> FinCategory:
    objects = presentation.objects
    gen_info = {g: (s, t) for g, s, t in presentation.generators}
    order = {g: i for i, (g, _, _) in enumerate(presentation.generators)}

    rules: list[tuple[tuple[str, ...], tuple[str, ...]]] = []
    for left, right, _, _ in presentation.equations:
        if left == right:
            continue
        if _shortlex(left, order) < _shortlex(right, order):
            left, right = right, left
        rules.append((left, right))
    rules.sort(key=lambda rule: _shortlex(rule[0], order), reverse=True)

    def normalize(path: tuple[str, ...]) -> tuple[str, ...]:
        changed = True
        while changed:
            changed = False
            for lhs, rhs in rules:
                width = len(lhs)
                for start in range(len(path) - width + 1):
                    if path[start : start + width] == lhs:
                        path = path[:start] + rhs + path[start + width :]
                        changed = True
                        break
                if changed:
                    break
        return path

    # keys are (source, target, normal form)
    identities = {obj: (obj, obj, ()) for obj in objects}
    endpoints: dict[Hashable, tuple[str, str]] = {
        key: (key[0], key[1]) for key in identities.values()
    }
    step_cache: dict[tuple[Hashable, str], Hashable] = {}

    def step(key, gen):
        cached = step_cache.get((key, gen))
        if cached is None:
            cached = (key[0], gen_info[gen][1], normalize(key[2] + (gen,)))
            step_cache[(key, gen)] = cached
        return cached

    queue = deque(identities.values())
    while queue:
        key = queue.popleft()
        for gen, (src, _) in gen_info.items():
            if src != key[1]:
                continue
            nxt = step(key, gen)
            if nxt not in endpoints:
                endpoints[nxt] = (nxt[0], nxt[1])
                if len(endpoints) > MAX_MORPHISMS:
                    raise IllFormed(
                        "composite undefined: the presentation does not close "
                        f"to a finite category within {MAX_MORPHISMS} morphisms"
                    )
                queue.append(nxt)

    def compose(g_key, f_key):
        current = f_key
        for gen in g_key[2]:
            current = step(current, gen)
            if current not in endpoints:
                raise IllFormed("ambiguous composition: rewriting is not confluent")
        return current

    generators = [
        (g, step(identities[s], g), s, t) for g, s, t in presentation.generators
    ]
    category = _assemble(
        objects,
        generators,
        identities,
        endpoints,
        compose,
        presentation.monos,
        name,
    )
    for left, right, src, _ in presentation.equations:
        if category.evaluate(left, src) != category.evaluate(right, src):
            raise IllFormed(
                "ambiguous composition: equation "
                f"{_render_path(left, src)} = {_render_path(right, src)} "
                "does not hold in the completed table"
            )
    get_logger().debug(
        f"completed {category.describe()} with {len(category.arrows)} morphisms"
    )
    return category


def _render_path(path: Sequence[str], start: str) -> str:
    if not path:
        return IDENTITY_PREFIX + start
    return ".".join(reversed(path))


# ---------------------------------------------------------------------------
# DSL


def parse_category(text: str, name: str = "") -> FinCategory:
    """
    Parse the category DSL.

    Statements: ``objects A, B;``, ``arrows f:A->B, g:B->A;``,
    ``eq f.g = id_B, ...;`` (paths read right to left) and ``mono f;``.

    Raises:
        ParseError: On syntax errors.
        IllFormed: On undeclared names or a presentation that does not
            determine a finite category.
    """
    cursor = TokenCursor.of(text)
    category = parse_category_body(cursor, name=name)
    cursor.expect(Token.END)
    return category


def parse_category_body(
    cursor: TokenCursor, closing: Token | None = None, name: str = ""
) -> FinCategory:
    objects: list[str] = []
    generators: list[tuple[str, str, str]] = []
    raw_equations: list[tuple[list[str], list[str]]] = []
    monos: list[str] = []

    def finished() -> bool:
        return cursor.at(Token.END) or (closing is not None and cursor.at(closing))

    while not finished():
        keyword = cursor.expect(Token.IDENT)
        if keyword.text == "objects":
            objects.extend(lexeme.text for lexeme in cursor.ident_list())
        elif keyword.text == "arrows":
            while True:
                arrow = cursor.expect(Token.IDENT).text
                cursor.expect(Token.COLON)
                src = cursor.expect(Token.IDENT).text
                cursor.expect(Token.ARROW)
                tgt = cursor.expect(Token.IDENT).text
                generators.append((arrow, src, tgt))
                if not cursor.accept(Token.COMMA):
                    break
        elif keyword.text == "eq":
            while True:
                left = [lexeme.text for lexeme in cursor.path()]
                cursor.expect(Token.EQUALS)
                right = [lexeme.text for lexeme in cursor.path()]
                raw_equations.append((left, right))
                if not cursor.accept(Token.COMMA):
                    break
        elif keyword.text == "mono":
            monos.extend(lexeme.text for lexeme in cursor.ident_list())
        else:
            raise cursor.error(f"unknown statement '{keyword.text}'")
        cursor.expect(Token.SEMI)

    return build_category(objects, generators, raw_equations, monos, name=name)


def build_category(
    objects: Sequence[str],
    generators: Sequence[tuple[str, str, str]],
    equations: Sequence[tuple[Sequence[str], Sequence[str]]] = (),
    monos: Sequence[str] = (),
    name: str = "",
) -> FinCategory:
    """
    Build a category from generators and equations between written paths.

    Paths are given as written in the DSL, i.e. ``["d", "r"]`` means ``d∘r``.
    """
    if len(set(objects)) != len(objects):
        raise IllFormed("duplicate object names")
    gen_names = [g for g, _, _ in generators]
    if len(set(gen_names)) != len(gen_names):
        raise IllFormed("duplicate arrow names")
    for g, src, tgt in generators:
        if g.startswith(IDENTITY_PREFIX):
            raise IllFormed(f"arrow name '{g}' is reserved for identities")
        for end in (src, tgt):
            if end not in objects:
                raise IllFormed(f"arrow '{g}' refers to undeclared object '{end}'")
    gen_info = {g: (s, t) for g, s, t in generators}

    def resolve(written: Sequence[str]) -> tuple[tuple[str, ...], str, str]:
        steps: list[str] = []
        endpoints: list[tuple[str, str]] = []
        for token in reversed(written):
            if token in gen_info:
                steps.append(token)
                endpoints.append(gen_info[token])
            elif token.startswith(IDENTITY_PREFIX) and token[3:] in objects:
                obj = token[3:]
                endpoints.append((obj, obj))
            else:
                raise IllFormed(f"undeclared arrow '{token}' in equation")
        for (_, tgt), (src, _) in zip(endpoints, endpoints[1:]):
            if tgt != src:
                raise IllFormed(f"path {'.'.join(written)} is not composable")
        return tuple(steps), endpoints[0][0], endpoints[-1][1]

    resolved = []
    for left, right in equations:
        left_path, left_src, left_tgt = resolve(left)
        right_path, right_src, right_tgt = resolve(right)
        if (left_src, left_tgt) != (right_src, right_tgt):
            raise IllFormed(
                f"equation {'.'.join(left)} = {'.'.join(right)} relates "
                "morphisms with different endpoints"
            )
        resolved.append((left_path, right_path, left_src, left_tgt))

    for m in monos:
        if m not in gen_info:
            raise IllFormed(f"mono marking on undeclared arrow '{m}'")

    return _complete(
        _Presentation(
            tuple(objects), tuple(generators), tuple(resolved), tuple(monos)
        ),
        name=name,
    )


def pretty_print(category: FinCategory) -> str:
    """Render a category in the DSL; parsing the text gives back an equal category."""
    lines = [f"objects {', '.join(category.objects)};"]
    if category.generators:
        decls = [
            f"{g}:{category.source(g)}->{category.target(g)}"
            for g in category.generators
        ]
        lines.append(f"arrows {', '.join(decls)};")
    equations = []
    for arrow in category.arrows:
        for g in category.generators:
            if category.source(g) != arrow.target:
                continue
            composite = category.arrow(category.compose(g, arrow.name))
            if composite.path == arrow.path + (g,):
                continue
            left = _render_path(arrow.path + (g,), arrow.source)
            right = _render_path(composite.path, composite.source)
            equations.append(f"{left} = {right}")
    for equation in equations:
        lines.append(f"eq {equation};")
    if category.monos:
        marked = [g for g in category.generators if g in category.monos]
        lines.append(f"mono {', '.join(marked)};")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# standard shapes

_SHAPES = {
    "parallel_pair": "objects X, Y; arrows d:X->Y, c:X->Y;",
    "reflexive_pair": (
        "objects X, Y; arrows d:X->Y, c:X->Y, r:Y->X; eq d.r=id_Y, c.r=id_Y;"
    ),
    "span": "objects C, A, B; arrows m:C->A, f:C->B;",
    "cospan": "objects A, B, C; arrows f:A->C, g:B->C;",
    "mono_span": "objects C, A, B; arrows m:C->A, f:C->B; mono m;",
    "mono_cospan": "objects A, B, C; arrows f:A->C, g:B->C; mono f, g;",
    "walking_arrow": "objects A, B; arrows f:A->B;",
}

SHAPE_NAMES = tuple(_SHAPES) + ("discrete",)


def standard_shape(name: str, n: int | None = None) -> FinCategory:
    """
    Return a named shape.

    ``discrete`` takes the number of objects either as ``n`` or inline as
    ``discrete(2)`` / ``discrete2``.

    ``reflexive_pair`` has seven morphisms, not five: with ``d.r = c.r = id_Y``
    the composites ``r.d`` and ``r.c`` are new endomorphisms of ``X``.
    """
    key = name.strip()
    if key.startswith("discrete"):
        suffix = key[len("discrete") :].strip("()")
        if suffix:
            n = int(suffix)
        if n is None or n < 0:
            raise IllFormed("discrete shapes need a non-negative object count")
        objects = ", ".join(f"x{i}" for i in range(n))
        text = f"objects {objects};" if n else ""
        return parse_category(text, name=f"discrete({n})")
    try:
        text = _SHAPES[key]
    except KeyError:
        raise IllFormed(f"unknown shape '{name}'")
    return parse_category(text, name=key)


def opposite(category: FinCategory) -> FinCategory:
    """The opposite category; generators keep their names, composites are renamed."""
    endpoints = {a.name: (a.target, a.source) for a in category.arrows}
    identities = {obj: category.identity(obj) for obj in category.objects}
    generators = [
        (g, g, category.target(g), category.source(g)) for g in category.generators
    ]
    name = f"{category.name}^op" if category.name else ""
    if category.name.endswith("^op"):
        name = category.name[: -len("^op")]
    return _assemble(
        category.objects,
        generators,
        identities,
        endpoints,
        lambda g, f: category.compose(f, g),
        category.monos,
        name,
    )


# ---------------------------------------------------------------------------
# derived shapes and structure


def cocone_shape(
    shape: FinCategory, apex: str = "apex"
) -> "tuple[FinCategory, FinFunctor]":
    """
    Adjoin a cocone vertex to ``shape``.

    Returns the extended category (one leg ``leg_<k>`` per object, commuting
    with every arrow) and the inclusion functor.
    """
    while apex in shape.objects:
        apex += "'"
    generators = [(g, shape.source(g), shape.target(g)) for g in shape.generators]
    legs = [(f"leg_{obj}", obj, apex) for obj in shape.objects]
    equations: list[tuple[list[str], list[str]]] = []
    for arrow in shape.arrows:
        for g in shape.generators:
            if shape.source(g) != arrow.target:
                continue
            composite = shape.arrow(shape.compose(g, arrow.name))
            if composite.path != arrow.path + (g,):
                equations.append(
                    (
                        list(reversed(arrow.path + (g,))),
                        list(reversed(composite.path)) or [composite.name],
                    )
                )
    for g in shape.generators:
        equations.append(([f"leg_{shape.target(g)}", g], [f"leg_{shape.source(g)}"]))
    extended = build_category(
        list(shape.objects) + [apex],
        generators + legs,
        equations,
        sorted(shape.monos),
        name=f"{shape.describe()}▷",
    )
    inclusion = FinFunctor.from_generators(
        shape,
        extended,
        {obj: obj for obj in shape.objects},
        {g: g for g in shape.generators},
    )
    return extended, inclusion


def is_filtered(shape: FinCategory) -> tuple[bool, str]:
    """Decide filteredness of a finite category; returns (verdict, reason)."""
    if not shape.objects:
        return False, "the shape is empty"
    for a, b in product(shape.objects, repeat=2):
        if not any(shape.hom(a, c) and shape.hom(b, c) for c in shape.objects):
            return False, f"objects {a} and {b} have no common cocone"
    for a, b in product(shape.objects, repeat=2):
        homs = shape.hom(a, b)
        for f, g in product(homs, repeat=2):
            if f >= g:
                continue
            if not any(
                shape.compose(h, f) == shape.compose(h, g)
                for c in shape.objects
                for h in shape.hom(b, c)
            ):
                return False, f"parallel arrows {f}, {g} are not coequalized"
    return True, "filtered"


def terminal_object(category: FinCategory) -> str | None:
    for t in category.objects:
        if all(len(category.hom(x, t)) == 1 for x in category.objects):
            return t
    return None


def binary_product(
    category: FinCategory, a: str, b: str
) -> tuple[str, str, str] | None:
    """Search for a product of ``a`` and ``b``; returns (object, proj_a, proj_b)."""
    for p in category.objects:
        for pa, pb in product(category.hom(p, a), category.hom(p, b)):
            if all(
                _is_bijection(
                    category.hom(x, p),
                    lambda h: (category.compose(pa, h), category.compose(pb, h)),
                    set(product(category.hom(x, a), category.hom(x, b))),
                )
                for x in category.objects
            ):
                return p, pa, pb
    return None


def equalizer(category: FinCategory, f: str, g: str) -> tuple[str, str] | None:
    """Search for an equalizer of ``f`` and ``g``; returns (object, inclusion)."""
    a = category.source(f)
    for e in category.objects:
        for m in category.hom(e, a):
            if category.compose(f, m) != category.compose(g, m):
                continue
            if all(
                _is_bijection(
                    category.hom(x, e),
                    lambda h: category.compose(m, h),
                    {
                        h
                        for h in category.hom(x, a)
                        if category.compose(f, h) == category.compose(g, h)
                    },
                )
                for x in category.objects
            ):
                return e, m
    return None


def _is_bijection(domain, fn, codomain) -> bool:
    images = [fn(x) for x in domain]
    return len(set(images)) == len(images) and set(images) == set(codomain)


# ---------------------------------------------------------------------------
# functors


@dataclass(frozen=True)
class FinFunctor:
    """A functor between finite categories, validated exhaustively."""

    domain: FinCategory
    codomain: FinCategory
    object_map: tuple[tuple[str, str], ...]
    morphism_map: tuple[tuple[str, str], ...]

    @cached_property
    def _objects(self) -> dict[str, str]:
        return dict(self.object_map)

    @cached_property
    def _morphisms(self) -> dict[str, str]:
        return dict(self.morphism_map)

    def obj(self, name: str) -> str:
        return self._objects[name]

    def map(self, name: str) -> str:
        return self._morphisms[name]

    @classmethod
    def build(
        cls,
        domain: FinCategory,
        codomain: FinCategory,
        object_map: Mapping[str, str],
        morphism_map: Mapping[str, str],
    ) -> "FinFunctor":
        functor = cls(
            domain,
            codomain,
            tuple((obj, object_map[obj]) for obj in domain.objects),
            tuple((m, morphism_map[m]) for m in domain.morphisms),
        )
        functor.validate()
        return functor

    @classmethod
    def from_generators(
        cls,
        domain: FinCategory,
        codomain: FinCategory,
        object_map: Mapping[str, str],
        generator_map: Mapping[str, str],
    ) -> "FinFunctor":
        """Extend an assignment on generators along canonical paths."""
        morphisms = {}
        for arrow in domain.arrows:
            current = codomain.identity(object_map[arrow.source])
            for step in arrow.path:
                current = codomain.compose(generator_map[step], current)
            morphisms[arrow.name] = current
        return cls.build(domain, codomain, object_map, morphisms)

    @classmethod
    def identity(cls, category: FinCategory) -> "FinFunctor":
        return cls.build(
            category,
            category,
            {o: o for o in category.objects},
            {m: m for m in category.morphisms},
        )

    def validate(self) -> None:
        dom, cod = self.domain, self.codomain
        for obj in dom.objects:
            if self.obj(obj) not in cod.objects:
                raise IllFormed(f"object {obj} maps outside the codomain")
            if self.map(dom.identity(obj)) != cod.identity(self.obj(obj)):
                raise IllFormed(f"identity of {obj} is not preserved")
        for arrow in dom.arrows:
            image = cod.arrow(self.map(arrow.name))
            if (image.source, image.target) != (
                self.obj(arrow.source),
                self.obj(arrow.target),
            ):
                raise IllFormed(f"{arrow.name} is sent to a morphism with wrong ends")
        for g, f, h in dom.table:
            if cod.compose(self.map(g), self.map(f)) != self.map(h):
                raise IllFormed(f"composite {g}∘{f} is not preserved")

    def then(self, other: "FinFunctor") -> "FinFunctor":
        """``other ∘ self``."""
        if other.domain != self.codomain:
            raise IllFormed("functors are not composable")
        return FinFunctor.build(
            self.domain,
            other.codomain,
            {o: other.obj(self.obj(o)) for o in self.domain.objects},
            {m: other.map(self.map(m)) for m in self.domain.morphisms},
        )
