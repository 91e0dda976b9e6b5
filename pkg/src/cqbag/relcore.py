"""Signatures, terms, queries and finite structures.

Everything here is immutable. Queries are Boolean: every variable is
existentially quantified, and applying a query to a structure yields a
natural number (see :mod:`cqbag.bageval`).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

VENUS = "venus"
MARS = "mars"
V_REL = "V"
R_REL = "R"
RESERVED_RELATIONS = frozenset({V_REL, R_REL})
RESERVED_CONSTANTS = frozenset({VENUS, MARS})

_ALIEN_RE = re.compile(r"x[0-9]+")


class CQBagError(Exception):
    """Base class for all errors raised by this package."""


class SignatureError(CQBagError):
    pass


class QueryError(CQBagError):
    pass


class StructureError(CQBagError):
    pass


class ParseError(CQBagError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


# ---------------------------------------------------------------------------
# signatures


@dataclass(frozen=True)
class Signature:
    relations: tuple[tuple[str, int], ...] = ()
    constants: frozenset[str] = frozenset()

    def __init__(self, relations: Mapping[str, int] | Iterable[tuple[str, int]] = (),
                 constants: Iterable[str] = ()):
        items = list(relations.items()) if isinstance(relations, Mapping) else list(relations)
        seen: dict[str, int] = {}
        for name, arity in items:
            if not isinstance(arity, int) or arity < 1:
                raise SignatureError(f"relation {name!r} must have arity >= 1, got {arity!r}")
            if name in seen and seen[name] != arity:
                raise SignatureError(f"relation {name!r} declared with arities {seen[name]} and {arity}")
            seen[name] = arity
        for name in RESERVED_RELATIONS & seen.keys():
            if seen[name] != 2:
                raise SignatureError(f"relation {name!r} is reserved as binary")
        object.__setattr__(self, "relations", tuple(sorted(seen.items())))
        object.__setattr__(self, "constants", frozenset(constants))

    @cached_property
    def arity(self) -> dict[str, int]:
        return dict(self.relations)

    def is_extension(self) -> bool:
        return (self.arity.get(V_REL) == 2 and self.arity.get(R_REL) == 2
                and RESERVED_CONSTANTS <= self.constants)

    def is_base(self) -> bool:
        return not (RESERVED_RELATIONS & self.arity.keys()) and not (RESERVED_CONSTANTS & self.constants)

    def base(self) -> Signature:
        """Drop V, R, venus and mars."""
        return Signature({n: a for n, a in self.relations if n not in RESERVED_RELATIONS},
                         self.constants - RESERVED_CONSTANTS)

    def extend(self) -> Signature:
        if not self.is_base():
            raise SignatureError("only a base signature can be extended")
        return Signature(dict(self.relations, **{V_REL: 2, R_REL: 2}), self.constants | RESERVED_CONSTANTS)

    def union(self, other: Signature) -> Signature:
        return Signature(list(self.relations) + list(other.relations), self.constants | other.constants)

    def includes(self, other: Signature) -> bool:
        mine = self.arity
        return (all(mine.get(n) == a for n, a in other.relations)
                and other.constants <= self.constants)

    def __str__(self) -> str:
        rels = ", ".join(f"{n}/{a}" for n, a in self.relations)
        consts = ", ".join(sorted(self.constants))
        return f"sig {rels}" + (f" ; const {consts}" if consts else "")


# ---------------------------------------------------------------------------
# terms and atoms


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Const:
    name: str

    def __str__(self) -> str:
        return "@" + self.name


@dataclass(frozen=True, order=True)
class Node:
    """A literal vertex of some structure, produced by substituting a variable."""
    name: str

    def __str__(self) -> str:
        return "#" + self.name


Term = Union[Var, Const, Node]


def _term_key(t: Term) -> tuple[int, str]:
    return ({Var: 0, Const: 1, Node: 2}[type(t)], t.name)


@dataclass(frozen=True)
class Atom:
    rel: str
    args: tuple[Term, ...]

    def __init__(self, rel: str, args: Iterable[Term]):
        object.__setattr__(self, "rel", rel)
        object.__setattr__(self, "args", tuple(args))
        if not self.args:
            raise QueryError(f"atom {rel} needs at least one argument")

    def terms(self) -> tuple[Term, ...]:
        return self.args

    def sort_key(self):
        return (0, self.rel, tuple(_term_key(t) for t in self.args))

    def __str__(self) -> str:
        return f"{self.rel}({','.join(map(str, self.args))})"


@dataclass(frozen=True)
class Neq:
    left: Term
    right: Term

    def terms(self) -> tuple[Term, ...]:
        return (self.left, self.right)

    def sort_key(self):
        return (1, "", (_term_key(self.left), _term_key(self.right)))

    def __str__(self) -> str:
        return f"{self.left}!={self.right}"


AnyAtom = Union[Atom, Neq]


def _map_terms(atom: AnyAtom, f) -> AnyAtom:
    if isinstance(atom, Atom):
        return Atom(atom.rel, (f(t) for t in atom.args))
    return Neq(f(atom.left), f(atom.right))


def is_alien_name(name: str) -> bool:
    return _ALIEN_RE.fullmatch(name) is not None


# ---------------------------------------------------------------------------
# queries


@dataclass(frozen=True)
class CQ:
    """A Boolean conjunctive query: an ordered sequence of atoms.

    Duplicate atoms are kept; they never change homomorphism counts.
    Every variable of an inequality atom must also occur in a relational atom.
    """
    atoms: tuple[AnyAtom, ...] = ()

    def __init__(self, atoms: Iterable[AnyAtom] = ()):
        object.__setattr__(self, "atoms", tuple(atoms))
        rel_vars = {t for a in self.atoms if isinstance(a, Atom) for t in a.args if isinstance(t, Var)}
        for a in self.atoms:
            if isinstance(a, Neq):
                for t in a.terms():
                    if isinstance(t, Var) and t not in rel_vars:
                        raise QueryError(f"inequality variable {t} does not occur in any relational atom")
        arities: dict[str, int] = {}
        for a in self.relational():
            if arities.setdefault(a.rel, len(a.args)) != len(a.args):
                raise QueryError(f"relation {a.rel} used with arities {arities[a.rel]} and {len(a.args)}")
        clash = {v.name for v in self.variables()} & {c.name for c in self.constants()}
        if clash:
            raise QueryError(f"names used both as variable and constant: {sorted(clash)}")

    def relational(self) -> tuple[Atom, ...]:
        return tuple(a for a in self.atoms if isinstance(a, Atom))

    def inequalities(self) -> tuple[Neq, ...]:
        return tuple(a for a in self.atoms if isinstance(a, Neq))

    def variables(self) -> tuple[Var, ...]:
        """Variables in order of first occurrence."""
        out: dict[Var, None] = {}
        for a in self.atoms:
            for t in a.terms():
                if isinstance(t, Var):
                    out.setdefault(t)
        return tuple(out)

    def constants(self) -> frozenset[Const]:
        return frozenset(t for a in self.atoms for t in a.terms() if isinstance(t, Const))

    def nodes(self) -> frozenset[Node]:
        return frozenset(t for a in self.atoms for t in a.terms() if isinstance(t, Node))

    def signature(self) -> Signature:
        """The smallest signature the query is over."""
        return Signature({a.rel: len(a.args) for a in self.relational()}, {c.name for c in self.constants()})

    def rename(self, mapping: Mapping[Var, Term]) -> CQ:
        return CQ(_map_terms(a, lambda t: mapping.get(t, t) if isinstance(t, Var) else t) for a in self.atoms)

    def dedup(self) -> CQ:
        """Drop exact-duplicate relational atoms, keeping first occurrences."""
        seen: set = set()
        out = []
        for a in self.atoms:
            if isinstance(a, Atom):
                if a in seen:
                    continue
                seen.add(a)
            out.append(a)
        return CQ(out)

    def __and__(self, other: CQ) -> CQ:
        return conjoin(self, other)

    def __len__(self) -> int:
        return len(self.atoms)

    def __str__(self) -> str:
        return " & ".join(map(str, self.atoms)) if self.atoms else "true"


def _fresh(base: str, used, start: dict[str, int] | None = None) -> str:
    """First ``base_i`` for which ``used`` is false; ``start`` remembers where to resume per base."""
    i = start.get(base, 1) if start is not None else 1
    while used(f"{base}_{i}"):
        i += 1
    if start is not None:
        start[base] = i + 1
    return f"{base}_{i}"


def _disjointify(cqs: Sequence[CQ]) -> list[CQ]:
    taken: set[str] = set()
    counters: dict[str, int] = {}
    out = []
    for cq in cqs:
        local = {v.name for v in cq.variables()}
        mapping = {}
        for v in cq.variables():
            if v.name in taken:
                new = _fresh(v.name, lambda n: n in taken or n in local, counters)
                local.add(new)
                mapping[v] = Var(new)
        out.append(cq.rename(mapping) if mapping else cq)
        taken.update(v.name for v in out[-1].variables())
    return out


def conjoin(*cqs: CQ) -> CQ:
    """Conjunction of independent CQs; clashing variables of later conjuncts are renamed apart."""
    return CQ(a for cq in _disjointify(cqs) for a in cq.atoms)


@dataclass(frozen=True)
class UCQ:
    """A nonempty union of CQs with pairwise variable-disjoint disjuncts."""
    disjuncts: tuple[CQ, ...]

    def __init__(self, disjuncts: Iterable[CQ] | CQ):
        if isinstance(disjuncts, CQ):
            disjuncts = (disjuncts,)
        ds = tuple(disjuncts)
        if not ds:
            raise QueryError("a UCQ needs at least one disjunct")
        object.__setattr__(self, "disjuncts", tuple(_disjointify(ds)))
        arities: dict[str, int] = {}
        for d in self.disjuncts:
            for a in d.relational():
                if arities.setdefault(a.rel, len(a.args)) != len(a.args):
                    raise QueryError(f"relation {a.rel} used with different arities across disjuncts")

    def variables(self) -> tuple[Var, ...]:
        return tuple(v for d in self.disjuncts for v in d.variables())

    def signature(self) -> Signature:
        sig = Signature()
        for d in self.disjuncts:
            sig = sig.union(d.signature())
        return sig

    def __len__(self) -> int:
        return len(self.disjuncts)

    def __iter__(self) -> Iterator[CQ]:
        return iter(self.disjuncts)

    def __str__(self) -> str:
        return " | ".join(map(str, self.disjuncts))


def as_ucq(q: CQ | UCQ) -> UCQ:
    return q if isinstance(q, UCQ) else UCQ((q,))


def is_pleasant(q: CQ | UCQ) -> bool:
    """Every relational atom of every disjunct mentions at least one variable."""
    return all(any(isinstance(t, Var) for t in a.args)
               for d in as_ucq(q) for a in d.relational())


# ---------------------------------------------------------------------------
# structures


Fact = tuple[str, tuple[str, ...]]


@dataclass(frozen=True)
class Structure:
    signature: Signature
    vertices: frozenset[str]
    facts: frozenset[Fact]
    interpretation: tuple[tuple[str, str], ...] = field(default=())

    def __init__(self, signature: Signature, facts: Iterable[Fact] = (),
                 interpretation: Mapping[str, str] | None = None, vertices: Iterable[str] = ()):
        facts = frozenset((rel, tuple(args)) for rel, args in facts)
        interp = dict(interpretation or {})
        verts = set(vertices)
        ar = signature.arity
        for rel, args in facts:
            if rel not in ar:
                raise StructureError(f"fact {rel}{args} uses a relation outside the signature")
            if len(args) != ar[rel]:
                raise StructureError(f"fact {rel}({','.join(args)}) has arity {len(args)}, expected {ar[rel]}")
            verts.update(args)
        missing = signature.constants - interp.keys()
        if missing:
            raise StructureError(f"uninterpreted constants: {sorted(missing)}")
        extra = interp.keys() - signature.constants
        if extra:
            raise StructureError(f"interpretation of constants outside the signature: {sorted(extra)}")
        loose = set(interp.values()) - verts
        if loose:
            raise StructureError(f"constants interpreted outside the vertex set: {sorted(loose)}")
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "vertices", frozenset(verts))
        object.__setattr__(self, "facts", facts)
        object.__setattr__(self, "interpretation", tuple(sorted(interp.items())))

    @cached_property
    def interp(self) -> dict[str, str]:
        return dict(self.interpretation)

    @cached_property
    def tuples(self) -> dict[str, frozenset[tuple[str, ...]]]:
        out: dict[str, set] = {name: set() for name, _ in self.signature.relations}
        for rel, args in self.facts:
            out[rel].add(args)
        return {k: frozenset(v) for k, v in out.items()}

    @cached_property
    def _lookup_cache(self) -> dict:
        return {}

    def lookup(self, rel: str, bound: tuple[tuple[int, str], ...]) -> tuple[tuple[str, ...], ...]:
        """All tuples of ``rel`` agreeing with the (position, vertex) pairs in ``bound``."""
        key = (rel, bound)
        cache = self._lookup_cache
        hit = cache.get(key)
        if hit is None:
            hit = tuple(t for t in self.tuples.get(rel, ()) if all(t[i] == v for i, v in bound))
            cache[key] = hit
        return hit

    def holds(self, rel: str, args: tuple[str, ...]) -> bool:
        return args in self.tuples.get(rel, ())

    def sorted_vertices(self) -> list[str]:
        return sorted(self.vertices)

    def __str__(self) -> str:
        return format_structure(self)


def restrict(d: Structure, a: Iterable[str]) -> Structure:
    """The substructure of ``d`` induced by the vertex set ``a``."""
    a = frozenset(a)
    if not a <= d.vertices:
        raise StructureError(f"vertices not in structure: {sorted(a - d.vertices)}")
    dropped = {c for c, v in d.interpretation if v not in a}
    if dropped:
        raise StructureError(f"restriction drops interpreted constants: {sorted(dropped)}")
    facts = (f for f in d.facts if all(v in a for v in f[1]))
    return Structure(d.signature, facts, d.interp, a)


def canonical_structure(cq: CQ) -> Structure:
    """Vertices are the variables and constants of ``cq``; facts are its relational atoms."""
    if cq.inequalities():
        raise QueryError("inequality atoms have no counterpart in a canonical structure")
    if cq.nodes():
        raise QueryError("canonical_structure expects a query without substituted vertices")
    facts = [(a.rel, tuple(t.name for t in a.args)) for a in cq.relational()]
    consts = {c.name: c.name for c in cq.constants()}
    verts = [v.name for v in cq.variables()]
    return Structure(cq.signature(), facts, consts, verts)


def venus_atoms(sig: Signature) -> list[Atom]:
    """Variable-free atoms over ``sig`` plus the constant venus in which venus occurs."""
    base = sig.base()
    pool = [Const(VENUS)] + [Const(c) for c in sorted(base.constants)]
    out = []
    for rel, arity in base.relations:
        for args in itertools.product(pool, repeat=arity):
            if Const(VENUS) in args:
                out.append(Atom(rel, args))
    return out


@dataclass(frozen=True)
class StructureFlags:
    good: bool
    foggy: bool
    very_good: bool
    non_trivial: bool


def _ground(t: Term, d: Structure) -> str:
    if isinstance(t, Const):
        return d.interp[t.name]
    if isinstance(t, Node):
        return t.name
    raise QueryError(f"term {t} is not ground")


def is_good(d: Structure) -> bool:
    if not d.signature.is_extension():
        raise SignatureError("goodness is defined for structures over an extended signature")
    ven = d.interp[VENUS]
    if not (d.holds(V_REL, (ven, ven)) and d.holds(R_REL, (ven, ven))):
        return False
    return all(d.holds(a.rel, tuple(_ground(t, d) for t in a.args)) for a in venus_atoms(d.signature))


def classify_structure(d: Structure) -> StructureFlags:
    if not d.signature.is_extension():
        raise SignatureError("classify_structure needs a structure over an extended signature")
    ven = d.interp[VENUS]
    good = is_good(d)
    foggy = good and all(t[1] == ven for t in d.lookup(V_REL, ((0, ven),)))
    loops = {t[0] for t in d.tuples[R_REL] if t[0] == t[1]}
    very_good = foggy and loops == {ven}
    return StructureFlags(good, foggy, very_good, d.interp[MARS] != ven)


# ---------------------------------------------------------------------------
# text formats

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<neq>!=)
  | (?P<punct>[(),&|])
  | (?P<const>@[A-Za-z0-9_']+)
  | (?P<node>\#[A-Za-z0-9_']+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _QueryParser:
    def __init__(self, text: str, signature: Signature | None, allow_aliens: bool):
        self.toks = _tokenize(text)
        self.i = 0
        self.signature = signature
        self.allow_aliens = allow_aliens
        self.wild = 0
        named = {v for k, v, _ in self.toks if k == "name"}
        self.taken = set(named)

    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind: str | None = None, value: str | None = None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def fresh_wildcard(self) -> Var:
        while True:
            self.wild += 1
            name = f"_w{self.wild}"
            if name not in self.taken:
                self.taken.add(name)
                return Var(name)

    def ucq(self) -> UCQ:
        ds = [self.cq()]
        while self.peek()[1] == "|":
            self.take(value="|")
            ds.append(self.cq())
        self.take("eof")
        return UCQ(ds)

    def cq(self) -> CQ:
        start = self.peek()[2]
        if self.peek()[0] == "name" and self.peek()[1] == "true" and self.peek(1)[1] != "(":
            self.take()
            return CQ()
        atoms = [self.atom()]
        while self.peek()[1] == "&":
            self.take(value="&")
            atoms.append(self.atom())
        try:
            return CQ(atoms)
        except QueryError as e:
            raise ParseError(str(e), start) from None

    def atom(self) -> AnyAtom:
        tok = self.peek()
        if tok[0] == "name" and self.peek(1)[1] == "(":
            self.take()
            self.take(value="(")
            args = [self.term()]
            while self.peek()[1] == ",":
                self.take(value=",")
                args.append(self.term())
            self.take(value=")")
            if self.signature is not None:
                ar = self.signature.arity
                if tok[1] not in ar:
                    raise ParseError(f"unknown relation {tok[1]}", tok[2])
                if ar[tok[1]] != len(args):
                    raise ParseError(f"relation {tok[1]} has arity {ar[tok[1]]}, got {len(args)} arguments", tok[2])
            return Atom(tok[1], args)
        left = self.term()
        self.take("neq")
        return Neq(left, self.term())

    def term(self) -> Term:
        kind, value, pos = self.take()
        if kind == "const":
            name = value[1:]
            if self.signature is not None and name not in self.signature.constants:
                raise ParseError(f"unknown constant {value}", pos)
            return Const(name)
        if kind == "node":
            return Node(value[1:])
        if kind == "name":
            if value == "_":
                return self.fresh_wildcard()
            if not (value[0].islower() or value[0] == "_"):
                raise ParseError(f"variables must start with a lowercase letter: {value}", pos)
            if not self.allow_aliens and is_alien_name(value):
                raise ParseError(f"variable name {value} is reserved for aliens", pos)
            return Var(value)
        raise ParseError(f"expected a term, found {value or 'end of input'!r}", pos)


def parse_query(text: str, signature: Signature | None = None, *, allow_aliens: bool = False) -> UCQ:
    """Parse ``CQ ('|' CQ)*``; wildcards ``_`` become fresh variables ``_w1, _w2, ...``.

    When ``signature`` is given, relations and constants are checked against it.
    Names ``x1, x2, ...`` are reserved for aliens unless ``allow_aliens`` is set.
    """
    return _QueryParser(text, signature, allow_aliens).ucq()


def parse_cq(text: str, signature: Signature | None = None, *, allow_aliens: bool = False) -> CQ:
    q = parse_query(text, signature, allow_aliens=allow_aliens)
    if len(q) != 1:
        raise ParseError(f"expected a single CQ, got {len(q)} disjuncts")
    return q.disjuncts[0]


def format_query(q: CQ | UCQ) -> str:
    return str(q)


_SIG_ITEM = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_']*)\s*/\s*([0-9]+)\s*")
_CONST_ITEM = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_']*)\s*=\s*(\w+)\s*")
_FACT = re.compile(r"([A-Za-z_][A-Za-z0-9_']*)\s*\(([^()]*)\)")
_VERTEX = re.compile(r"\w+")


def parse_structure(text: str) -> Structure:
    """Parse the structure format: a ``sig`` header, then one fact or ``vertex`` line each.

    Header: ``sig E/2, P/1 ; const a=v0, venus=v1``. Lines starting with ``#`` are comments.
    """
    lines = [(n, ln.strip()) for n, ln in enumerate(text.splitlines(), 1)]
    lines = [(n, ln) for n, ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0][1].startswith("sig"):
        raise ParseError("structure text must start with a 'sig' header", 0)
    header = lines[0][1][3:]
    sig_part, _, const_part = header.partition(";")
    rels = []
    for item in filter(str.strip, sig_part.split(",")):
        m = _SIG_ITEM.fullmatch(item)
        if not m:
            raise ParseError(f"bad signature item {item.strip()!r} on line {lines[0][0]}")
        rels.append((m.group(1), int(m.group(2))))
    const_part = const_part.strip()
    interp = {}
    if const_part:
        if not const_part.startswith("const"):
            raise ParseError(f"expected 'const' after ';' on line {lines[0][0]}")
        for item in filter(str.strip, const_part[5:].split(",")):
            m = _CONST_ITEM.fullmatch(item)
            if not m:
                raise ParseError(f"bad constant item {item.strip()!r} on line {lines[0][0]}")
            interp[m.group(1)] = m.group(2)
    try:
        sig = Signature(rels, interp.keys())
    except SignatureError as e:
        raise ParseError(str(e)) from None
    facts, verts = [], list(interp.values())
    for n, ln in lines[1:]:
        if ln.startswith("vertex"):
            for v in filter(None, (s.strip() for s in ln[6:].replace(",", " ").split())):
                if not _VERTEX.fullmatch(v):
                    raise ParseError(f"bad vertex name {v!r} on line {n}")
                verts.append(v)
            continue
        m = _FACT.fullmatch(ln)
        if not m:
            raise ParseError(f"cannot parse line {n}: {ln!r}")
        args = tuple(s.strip() for s in m.group(2).split(","))
        if not all(_VERTEX.fullmatch(a) for a in args):
            raise ParseError(f"bad vertex in fact on line {n}: {ln!r}")
        if m.group(1) not in sig.arity:
            raise ParseError(f"unknown relation {m.group(1)} on line {n}")
        if sig.arity[m.group(1)] != len(args):
            raise ParseError(f"arity mismatch on line {n}: {m.group(1)} expects {sig.arity[m.group(1)]} arguments")
        facts.append((m.group(1), args))
    try:
        return Structure(sig, facts, interp, verts)
    except StructureError as e:
        raise ParseError(str(e)) from None


def format_structure(d: Structure) -> str:
    head = "sig " + ", ".join(f"{n}/{a}" for n, a in d.signature.relations)
    if d.interpretation:
        head += " ; const " + ", ".join(f"{c}={v}" for c, v in d.interpretation)
    lines = [head]
    used = {v for _, args in d.facts for v in args}
    isolated = sorted(d.vertices - used)
    if isolated:
        lines.append("vertex " + " ".join(isolated))
    lines.extend(f"{rel}({','.join(args)})" for rel, args in sorted(d.facts))
    return "\n".join(lines) + "\n"
