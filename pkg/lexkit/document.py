"""
Parser for lexkit documents.

A document is a sequence of named blocks::

    category C { objects A, B; arrows f:A->B; }
    presheaf P on C { A: {a0, a1}; B: {b0}; f: b0 -> a1; }
    diagram D on walking_arrow in finset { A = {x, y}; B = {u}; f = {x -> u, y -> u}; }
    cocone K on C { apex B; leg a = f; }

``on`` names a category block or a standard shape. Diagram objects are
written ``{x, y}`` for sets, ``{x, y; x < y}`` for posets and by presheaf
block name for presheaves; morphisms are ``{x -> u, ...}`` element maps or
``{A: {...}, B: {...}}`` component maps.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ._lexer import Token, TokenCursor
from .carrier import (
    FinMap,
    FinPoset,
    FinPosetCarrier,
    FinSet,
    NatTrans,
    Presheaf,
    carrier_for,
)
from .carrier.base import Carrier
from .carrier.diagram import Diagram
from .carrier.presheaf import PresheafCarrier
from .exception import IllFormed, ParseError
from .fincat import FinCategory, parse_category_body, standard_shape
from .postulate import CoconePresentation


@dataclass(frozen=True)
class DiagramBlock:
    diagram: Diagram
    carrier: Carrier = field(compare=False)


@dataclass
class Document:
    categories: dict[str, FinCategory] = field(default_factory=dict)
    presheaves: dict[str, Presheaf] = field(default_factory=dict)
    diagrams: dict[str, DiagramBlock] = field(default_factory=dict)
    cocones: dict[str, CoconePresentation] = field(default_factory=dict)

    def category(self, name: str) -> FinCategory:
        """A category block, or a standard shape of that name."""
        if name in self.categories:
            return self.categories[name]
        return standard_shape(name)

    def only(self, kind: str, name: str | None = None) -> Any:
        """
        The block of ``kind`` called ``name``, or the single such block.

        Raises:
            IllFormed: If the choice is missing or ambiguous.
        """
        blocks = getattr(self, kind)
        if name is not None:
            if name not in blocks:
                raise IllFormed(f"document has no {kind[:-1]} '{name}'")
            return blocks[name]
        if len(blocks) != 1:
            raise IllFormed(
                f"document has {len(blocks)} {kind}; name the one to use"
            )
        return next(iter(blocks.values()))


def _name(cursor: TokenCursor) -> str:
    return cursor.expect(Token.IDENT).text


def _shape_name(cursor: TokenCursor) -> str:
    """A shape reference; ``discrete(2)`` is accepted."""
    name = _name(cursor)
    if cursor.accept(Token.LPAREN):
        name += f"({_name(cursor)})"
        cursor.expect(Token.RPAREN)
    return name


def _element_set(cursor: TokenCursor) -> tuple[list[str], list[tuple[str, str]]]:
    """``{x, y; x < y}``; the order part is optional."""
    cursor.expect(Token.LBRACE)
    elements: list[str] = []
    order: list[tuple[str, str]] = []
    if cursor.at(Token.IDENT):
        elements = [lexeme.text for lexeme in cursor.ident_list()]
    if cursor.accept(Token.SEMI):
        while cursor.at(Token.IDENT):
            chain = [_name(cursor)]
            while cursor.accept(Token.LESS):
                chain.append(_name(cursor))
            if len(chain) < 2:
                raise cursor.error("order statements are written x < y")
            order.extend(zip(chain, chain[1:]))
            if not cursor.accept(Token.COMMA):
                break
    cursor.expect(Token.RBRACE)
    return elements, order


def _pairs(cursor: TokenCursor, closing: Token) -> dict[str, str]:
    pairs: dict[str, str] = {}
    while not cursor.at(closing):
        source = _name(cursor)
        cursor.expect(Token.ARROW)
        target = _name(cursor)
        if source in pairs:
            raise cursor.error(f"element '{source}' is mapped twice")
        pairs[source] = target
        if not cursor.accept(Token.COMMA):
            break
    return pairs


def _braced_pairs(cursor: TokenCursor) -> dict[str, str]:
    cursor.expect(Token.LBRACE)
    pairs = _pairs(cursor, Token.RBRACE)
    cursor.expect(Token.RBRACE)
    return pairs


def _parse_presheaf(cursor: TokenCursor, base: FinCategory) -> Presheaf:
    values: dict[str, list[str]] = {}
    actions: dict[str, dict[str, str]] = {}
    cursor.expect(Token.LBRACE)
    while not cursor.accept(Token.RBRACE):
        head = cursor.expect(Token.IDENT)
        cursor.expect(Token.COLON)
        if head.text in base.objects:
            elements, order = _element_set(cursor)
            if order:
                raise cursor.error("presheaf values are plain sets")
            values[head.text] = elements
        elif head.text in base.generators:
            if cursor.at(Token.LBRACE):
                actions[head.text] = _braced_pairs(cursor)
            else:
                actions[head.text] = _pairs(cursor, Token.SEMI)
        else:
            raise ParseError(
                head.line, head.column, f"'{head.text}' is not an object or generator"
            )
        cursor.expect(Token.SEMI)
    return Presheaf.build(base, values, actions)


def _parse_object(cursor: TokenCursor, carrier: Carrier, document: Document) -> Any:
    if isinstance(carrier, PresheafCarrier):
        name = cursor.expect(Token.IDENT)
        if name.text not in document.presheaves:
            raise ParseError(
                name.line, name.column, f"unknown presheaf '{name.text}'"
            )
        presheaf = document.presheaves[name.text]
        if presheaf.base != carrier.base:
            raise IllFormed(f"presheaf '{name.text}' lives on another base")
        return presheaf
    elements, order = _element_set(cursor)
    if isinstance(carrier, FinPosetCarrier):
        return FinPoset(tuple(elements), tuple(order))
    if order:
        raise cursor.error("sets carry no order")
    return FinSet(tuple(elements))


def _parse_morphism(cursor: TokenCursor, source: Any, target: Any) -> Any:
    if isinstance(source, Presheaf):
        cursor.expect(Token.LBRACE)
        components: dict[str, dict[str, str]] = {}
        while cursor.at(Token.IDENT):
            obj = _name(cursor)
            cursor.expect(Token.COLON)
            components[obj] = _braced_pairs(cursor)
            if not cursor.accept(Token.COMMA):
                break
        cursor.expect(Token.RBRACE)
        return NatTrans.build(source, target, components)
    return FinMap(source, target, tuple(_braced_pairs(cursor).items()))


def _parse_diagram(
    cursor: TokenCursor, shape: FinCategory, carrier: Carrier, document: Document
) -> Diagram:
    objects: dict[str, Any] = {}
    maps: dict[str, Any] = {}
    cursor.expect(Token.LBRACE)
    while not cursor.accept(Token.RBRACE):
        head = cursor.expect(Token.IDENT)
        cursor.expect(Token.EQUALS)
        if head.text in shape.objects:
            objects[head.text] = _parse_object(cursor, carrier, document)
        elif head.text in shape.generators:
            source, target = shape.source(head.text), shape.target(head.text)
            if source not in objects or target not in objects:
                raise ParseError(
                    head.line,
                    head.column,
                    f"declare {source} and {target} before the arrow {head.text}",
                )
            maps[head.text] = _parse_morphism(cursor, objects[source], objects[target])
        else:
            raise ParseError(
                head.line, head.column, f"'{head.text}' is not in the shape"
            )
        cursor.expect(Token.SEMI)
    return Diagram.build(carrier, shape, objects, maps)


def _parse_cocone(
    cursor: TokenCursor, base: FinCategory, name: str
) -> CoconePresentation:
    apex = None
    legs: list[tuple[str, str]] = []
    relations: list[tuple] = []
    cursor.expect(Token.LBRACE)
    while not cursor.accept(Token.RBRACE):
        keyword = cursor.expect(Token.IDENT)
        if keyword.text == "apex":
            apex = _name(cursor)
        elif keyword.text == "leg":
            j = _name(cursor)
            cursor.expect(Token.EQUALS)
            legs.append((j, _name(cursor)))
        elif keyword.text == "rel":
            i = _name(cursor)
            cursor.expect(Token.EQUALS)
            s = _name(cursor)
            cursor.expect(Token.ARROW)
            sigma = _name(cursor)
            cursor.expect(Token.COMMA)
            t = _name(cursor)
            cursor.expect(Token.ARROW)
            tau = _name(cursor)
            relations.append((i, s, sigma, t, tau))
        else:
            raise ParseError(
                keyword.line, keyword.column, f"unknown statement '{keyword.text}'"
            )
        cursor.expect(Token.SEMI)
    if apex is None:
        raise IllFormed(f"cocone '{name}' names no apex")
    presentation = CoconePresentation(base, apex, tuple(legs), tuple(relations), name)
    return presentation.validate()


def parse_document(text: str) -> Document:
    """
    Raises:
        ParseError: On syntax errors.
        IllFormed: On blocks that do not validate.
    """
    cursor = TokenCursor.of(text)
    document = Document()
    while not cursor.at(Token.END):
        keyword = cursor.expect(Token.IDENT)
        name = _name(cursor)
        if keyword.text == "category":
            cursor.expect(Token.LBRACE)
            category = parse_category_body(cursor, Token.RBRACE, name=name)
            cursor.expect(Token.RBRACE)
            document.categories[name] = category
        elif keyword.text == "presheaf":
            cursor.expect(Token.IDENT, "on")
            base = document.category(_shape_name(cursor))
            document.presheaves[name] = _parse_presheaf(cursor, base)
        elif keyword.text == "diagram":
            cursor.expect(Token.IDENT, "on")
            shape = document.category(_shape_name(cursor))
            cursor.expect(Token.IDENT, "in")
            carrier = _parse_carrier(cursor, document)
            diagram = _parse_diagram(cursor, shape, carrier, document)
            document.diagrams[name] = DiagramBlock(diagram, carrier)
        elif keyword.text == "cocone":
            cursor.expect(Token.IDENT, "on")
            base = document.category(_shape_name(cursor))
            document.cocones[name] = _parse_cocone(cursor, base, name)
        else:
            raise ParseError(
                keyword.line, keyword.column, f"unknown block '{keyword.text}'"
            )
    return document


def _parse_carrier(cursor: TokenCursor, document: Document) -> Carrier:
    selector = _name(cursor)
    if selector != "presheaf":
        return carrier_for(selector)
    cursor.expect(Token.COLON)
    return PresheafCarrier(document.category(_shape_name(cursor)))


def load_document(path: str | Path) -> Document:
    return parse_document(Path(path).read_text(encoding="utf-8"))
