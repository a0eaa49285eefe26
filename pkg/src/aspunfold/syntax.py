"""Ground disjunctive programs: atoms, literals, rules and structural queries.

Atom names live in two namespaces.  User programs may only use plain
identifiers; the transformations introduce marked atoms that render with a
fixed prefix (``p__`` potential, ``c__`` complement, ``s__`` support) plus a
handful of reserved names (``__f``, ``__u``, ``cl__<i>``, ``ncl__<i>``).  The
parser rejects reserved spellings in user input, so marked atoms are fresh by
construction and every atom has a unique rendering.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator


class Marker(enum.Enum):
    PLAIN = "plain"
    POTENTIAL = "potential"
    COMPLEMENT = "complement"
    SUPPORT = "support"
    RESERVED = "reserved"


_MARK_PREFIX = {
    Marker.POTENTIAL: "p__",
    Marker.COMPLEMENT: "c__",
    Marker.SUPPORT: "s__",
}

_PLAIN_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
_RESERVED_RE = re.compile(r"(?:__f|__u|cl__[0-9]+|ncl__[0-9]+)\Z")
# Prefixes a user-written atom may not start with.
RESERVED_PREFIXES = ("p__", "c__", "s__", "cl__", "ncl__", "__")


def has_reserved_prefix(name: str) -> bool:
    return name.startswith(RESERVED_PREFIXES)


@dataclass(frozen=True)
class Atom:
    """Interned ground atom: a marker plus the rendering of its base atom."""

    name: str
    marker: Marker = Marker.PLAIN

    def __post_init__(self) -> None:
        if self.marker is Marker.PLAIN:
            if not _PLAIN_RE.fullmatch(self.name) or has_reserved_prefix(self.name):
                raise ValueError(f"invalid plain atom name: {self.name!r}")
        elif self.marker is Marker.RESERVED:
            if not _RESERVED_RE.fullmatch(self.name):
                raise ValueError(f"invalid reserved atom name: {self.name!r}")
        else:
            # The base must itself be a valid rendering.
            parse_atom_text(self.name)

    @property
    def text(self) -> str:
        prefix = _MARK_PREFIX.get(self.marker, "")
        return prefix + self.name

    def __lt__(self, other: "Atom") -> bool:
        return self.text < other.text

    def __repr__(self) -> str:
        return f"Atom({self.text})"


def parse_atom_text(text: str) -> Atom:
    """Inverse of Atom.text; raises ValueError on spellings no atom renders to."""
    if _RESERVED_RE.fullmatch(text):
        return Atom(text, Marker.RESERVED)
    for marker, prefix in _MARK_PREFIX.items():
        if text.startswith(prefix):
            return Atom(text[len(prefix):], marker)
    if _PLAIN_RE.fullmatch(text) and not has_reserved_prefix(text):
        return Atom(text)
    raise ValueError(f"not a valid atom rendering: {text!r}")


def potential(a: Atom) -> Atom:
    return Atom(a.text, Marker.POTENTIAL)


def complement(a: Atom) -> Atom:
    return Atom(a.text, Marker.COMPLEMENT)


def support(a: Atom) -> Atom:
    return Atom(a.text, Marker.SUPPORT)


def base_atom(a: Atom) -> Atom:
    """The atom a mark was applied to; identity for plain/reserved atoms."""
    if a.marker in _MARK_PREFIX:
        return parse_atom_text(a.name)
    return a


F_ATOM = Atom("__f", Marker.RESERVED)
U_ATOM = Atom("__u", Marker.RESERVED)


def clause_atom(i: int) -> Atom:
    return Atom(f"cl__{i}", Marker.RESERVED)


def clause_negation_atom(i: int) -> Atom:
    return Atom(f"ncl__{i}", Marker.RESERVED)


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    @property
    def text(self) -> str:
        return self.atom.text if self.positive else f"not {self.atom.text}"

    def negated(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def __lt__(self, other: "Literal") -> bool:
        return (self.atom.text, self.positive) < (other.atom.text, other.positive)


@dataclass(frozen=True)
class Rule:
    """Disjunctive rule ``head <- pos, not neg`` with duplicate-free parts."""

    head: frozenset[Atom]
    pos: frozenset[Atom] = frozenset()
    neg: frozenset[Atom] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "head", frozenset(self.head))
        object.__setattr__(self, "pos", frozenset(self.pos))
        object.__setattr__(self, "neg", frozenset(self.neg))
        if not self.head:
            raise ValueError("rule head must be nonempty")

    @property
    def is_normal(self) -> bool:
        return len(self.head) == 1

    @property
    def is_fact(self) -> bool:
        return not self.pos and not self.neg

    @property
    def atoms(self) -> frozenset[Atom]:
        return self.head | self.pos | self.neg

    def body_literals(self) -> Iterator[Literal]:
        for a in self.pos:
            yield Literal(a, True)
        for a in self.neg:
            yield Literal(a, False)

    def render(self) -> str:
        head = " | ".join(a.text for a in sorted(self.head))
        body = [a.text for a in sorted(self.pos)]
        body += [f"not {a.text}" for a in sorted(self.neg)]
        if body:
            return f"{head} :- {', '.join(body)}."
        return f"{head}."


def occurring_atoms(rules: Iterable[Rule]) -> frozenset[Atom]:
    out: set[Atom] = set()
    for r in rules:
        out |= r.atoms
    return frozenset(out)


@dataclass(frozen=True)
class Program:
    """Ordered rule list over a Herbrand base.

    The base always contains every occurring atom; a larger base may be
    declared for programs whose interpretations range over extra atoms.
    """

    rules: tuple[Rule, ...]
    base: frozenset[Atom] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        declared = frozenset(self.base) if self.base is not None else frozenset()
        object.__setattr__(self, "base", occurring_atoms(self.rules) | declared)

    @property
    def is_normal(self) -> bool:
        return all(r.is_normal for r in self.rules)

    @property
    def is_positive(self) -> bool:
        return all(not r.neg for r in self.rules)

    def render(self) -> str:
        if not self.rules:
            return ""
        return "\n".join(r.render() for r in self.rules) + "\n"


def render_program(p: Program) -> str:
    return p.render()


def split_program(p: Program) -> tuple[Program, Program, frozenset[Atom]]:
    """Partition into normal and proper-disjunctive parts plus the latter's head atoms."""
    normal = tuple(r for r in p.rules if r.is_normal)
    disjunctive = tuple(r for r in p.rules if not r.is_normal)
    heads: set[Atom] = set()
    for r in disjunctive:
        heads |= r.head
    return (
        Program(normal, base=p.base),
        Program(disjunctive, base=p.base),
        frozenset(heads),
    )
