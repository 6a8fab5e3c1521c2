"""Model sets, theories, definable sets and the finite formula quotient.

Two formulas are interchangeable for every notion in this package as soon as
they have the same models and their negations have the same models, so a
formula is represented by its *fingerprint* ``(pos, neg) = (M(a), M(!a))``.
Valuation sets are int bitmasks over the structure's valuation indices.
Sets of fingerprints are int bitmasks over the indices of a
:class:`FingerprintUniverse`, whose members are kept in canonical order of
their witness formulas (so lower index means canonically smaller witness).
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from functools import lru_cache

from .formula import (
    FALSE, PREC_AND, PREC_OR, PREC_PRIMARY, TRUE, And, Atom, Formula, Not, Or,
    canonical_key, parse, precedence, render, wrap,
)
from .semantics import Structure, TruthValue, value_and, value_not, value_or

__all__ = [
    "DEFAULT_CAP", "CapExceeded", "Fingerprint", "FingerprintUniverse",
    "DefinableFamily", "Space", "fingerprint", "clone_universe",
    "definable_family", "check_assumptions", "AssumptionReport", "bits",
    "popcount", "pair_not", "pair_or", "pair_and",
]

DEFAULT_CAP = 100_000


def bits(mask: int):
    """Indices of the set bits of ``mask``, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def pair_not(p):
    return (p[1], p[0])


def pair_or(a, b):
    return (a[0] | b[0], a[1] & b[1])


def pair_and(a, b):
    return (a[0] & b[0], a[1] | b[1])


class CapExceeded(RuntimeError):
    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"fingerprint closure exceeded cap ({count} > {cap})")


def resolve_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("PREFCONS_CAP")
    return int(env) if env else DEFAULT_CAP


@dataclass(frozen=True)
class Fingerprint:
    pos: int
    neg: int
    witness: Formula = field(compare=False, hash=False)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.pos, self.neg)

    def value_at(self, i: int) -> TruthValue:
        return TruthValue.from_bits(bool(self.pos >> i & 1), bool(self.neg >> i & 1))

    def __str__(self):
        return render(self.witness)


def fingerprint(structure: Structure, f: Formula) -> Fingerprint:
    """Fingerprint of ``f`` computed by evaluation; the witness is ``f``."""
    pos = neg = 0
    for i, val in enumerate(structure.value_vector(f)):
        if val.has1:
            pos |= 1 << i
        if val.has0:
            neg |= 1 << i
    return Fingerprint(pos, neg, f)


class FingerprintUniverse:
    """A finite set of fingerprints, closed under the connectives when built
    by :func:`clone_universe`."""

    def __init__(self, structure: Structure, members, closed: bool = True):
        self.structure = structure
        self.members = tuple(sorted(members, key=lambda m: canonical_key(m.witness)))
        self.closed = closed
        self.pos = [m.pos for m in self.members]
        self.neg = [m.neg for m in self.members]
        self.index = {m.pair: i for i, m in enumerate(self.members)}
        self.negation = [self.index.get((m.neg, m.pos)) for m in self.members]
        self._or: dict[tuple[int, int], int | None] = {}
        self._and: dict[tuple[int, int], int | None] = {}

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> Fingerprint:
        return self.members[i]

    @property
    def full_mask(self) -> int:
        return (1 << len(self.members)) - 1

    def find(self, pair) -> int | None:
        return self.index.get(tuple(pair))

    def or_index(self, i: int, j: int) -> int | None:
        key = (i, j)
        if key not in self._or:
            self._or[key] = self.index.get(pair_or(self.members[i].pair, self.members[j].pair))
        return self._or[key]

    def and_index(self, i: int, j: int) -> int | None:
        key = (i, j)
        if key not in self._and:
            self._and[key] = self.index.get(pair_and(self.members[i].pair, self.members[j].pair))
        return self._and[key]


@lru_cache(maxsize=32)
def clone_universe(structure: Structure, cap: int | None = None) -> FingerprintUniverse:
    """Close {atoms, true, false} under !, | and & on fingerprints.

    Candidates are expanded in canonical order of their rendered text, so the
    first formula reaching a fingerprint is its canonically smallest witness.
    The best text is tracked per (fingerprint, precedence class) because
    whether a subformula needs parentheses depends only on its class.
    Expansion stops once every discovered fingerprint has a witness: every
    combination of witnessed fingerprints has then been discovered, so the
    set is closed.
    """
    cap = resolve_cap(cap)
    heap: list = []
    best: dict = {}
    done: set = set()
    seen: set = set()
    witness: dict = {}
    top_class: dict = {}
    entries: list = []
    push = heapq.heappush

    def offer(pair, cls, text, node):
        key = (pair, cls)
        if key in done:
            return
        rank = (len(text), text)
        old = best.get(key)
        if old is not None and old <= rank:
            return
        best[key] = rank
        push(heap, (len(text), text, pair, cls, node))
        if pair not in seen:
            seen.add(pair)
            if len(seen) > cap:
                raise CapExceeded(len(seen), cap)

    for seed in [Atom(a) for a in structure.atoms] + [TRUE, FALSE]:
        offer(fingerprint(structure, seed).pair, PREC_PRIMARY, render(seed), seed)

    while heap and len(witness) < len(seen):
        _, text, pair, cls, node = heapq.heappop(heap)
        if (pair, cls) in done:
            continue
        done.add((pair, cls))
        # an earlier (hence no longer) entry of a tighter class beats this one
        # in every context
        if top_class.get(pair, 0) >= cls:
            continue
        top_class[pair] = cls
        f = _build(node)
        witness.setdefault(pair, f)
        w_or = text
        w_and = text if cls >= PREC_AND else f"({text})"
        w_prim = text if cls >= PREC_PRIMARY else f"({text})"
        new = (pair, w_or, w_and, w_prim, f)
        entries.append(new)
        offer((pair[1], pair[0]), PREC_PRIMARY, "!" + w_prim, ("!", f))
        p0, p1 = pair
        for other in entries:
            q = other[0]
            q0, q1 = q
            offer((q0 | p0, q1 & p1), PREC_OR, other[1] + " | " + w_and, ("|", other[4], f))
            offer((q0 & p0, q1 | p1), PREC_AND, other[2] + " & " + w_prim, ("&", other[4], f))
            if other is not new:
                offer((p0 | q0, p1 & q1), PREC_OR, w_or + " | " + other[2], ("|", f, other[4]))
                offer((p0 & q0, p1 | q1), PREC_AND, w_and + " & " + other[3], ("&", f, other[4]))

    members = [Fingerprint(p, n, w) for (p, n), w in witness.items()]
    return FingerprintUniverse(structure, members, closed=True)


def _build(node) -> Formula:
    if isinstance(node, Formula):
        return node
    if node[0] == "!":
        return Not(node[1])
    if node[0] == "|":
        return Or(node[1], node[2])
    return And(node[1], node[2])


@dataclass
class DefinableFamily:
    """The sets M(Gamma); ``witness[V]`` is a fingerprint mask Gamma with M(Gamma) = V."""

    sets: tuple[int, ...]
    witness: dict[int, int]
    index: dict[int, int] = field(init=False)

    def __post_init__(self):
        self.index = {v: i for i, v in enumerate(self.sets)}

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, v: int) -> bool:
        return v in self.index

    def is_union_closed(self) -> bool:
        return all((a | b) in self.index for a in self.sets for b in self.sets)

    def is_intersection_closed(self) -> bool:
        return all((a & b) in self.index for a in self.sets for b in self.sets)


def definable_family(universe: FingerprintUniverse, full: int, cap: int | None = None) -> DefinableFamily:
    cap = resolve_cap(cap)
    found = {full: 0}
    for i, p in enumerate(universe.pos):
        found.setdefault(p, 1 << i)
    frontier = list(found)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(found):
                c = a & b
                if c not in found:
                    found[c] = found[a] | found[b]
                    fresh.append(c)
                    if len(found) > cap:
                        raise CapExceeded(len(found), cap)
        frontier = fresh
    ordered = tuple(sorted(found, key=lambda v: (popcount(v), v)))
    return DefinableFamily(ordered, found)


class Space:
    """A structure together with its fingerprint universe and definable family.

    ``exhaustive`` is False when the universe is only a sample of the formula
    quotient; quantified checks over such a space can refute but not certify.
    """

    def __init__(self, structure: Structure, universe: FingerprintUniverse,
                 family: DefinableFamily, exhaustive: bool = True):
        self.structure = structure
        self.universe = universe
        self.family = family
        self.exhaustive = exhaustive
        self.full = structure.full
        self._theory: dict[int, int] = {}
        self._mod: dict[int, int] = {}

    @classmethod
    def build(cls, structure: Structure, cap: int | None = None) -> "Space":
        return _build_space(structure, resolve_cap(cap))

    @classmethod
    def sampled(cls, structure: Structure, formulas=()) -> "Space":
        """Space over the fingerprints of ``formulas``, the atoms, the constants
        and their negations (not closed under | and &)."""
        seeds = [Atom(a) for a in structure.atoms] + [TRUE, FALSE] + list(formulas)
        seeds += [Not(f) for f in seeds]
        best: dict = {}
        for f in seeds:
            fp = fingerprint(structure, f)
            if fp.pair not in best or canonical_key(f) < canonical_key(best[fp.pair].witness):
                best[fp.pair] = fp
        universe = FingerprintUniverse(structure, best.values(), closed=False)
        family = definable_family(universe, structure.full)
        return cls(structure, universe, family, exhaustive=False)

    # -- lookups ----------------------------------------------------------

    @property
    def D(self) -> tuple[int, ...]:
        return self.family.sets

    def __repr__(self):
        return (f"Space({self.structure.kind.value}, atoms={','.join(self.structure.atoms)}, "
                f"|V|={len(self.structure)}, |U|={len(self.universe)}, |D|={len(self.family)})")

    def fingerprint(self, f: Formula | str) -> Fingerprint:
        if isinstance(f, str):
            f = parse(f)
        fp = fingerprint(self.structure, f)
        i = self.universe.find(fp.pair)
        return self.universe[i] if i is not None else fp

    def index(self, item) -> int:
        """Universe index of a Fingerprint, Formula or formula text."""
        if isinstance(item, int):
            return item
        if not isinstance(item, Fingerprint):
            item = self.fingerprint(item)
        i = self.universe.find(item.pair)
        if i is None:
            raise KeyError(f"{item} is not in the fingerprint universe")
        return i

    def mask(self, items) -> int:
        out = 0
        for item in items:
            out |= 1 << self.index(item)
        return out

    def fingerprints(self, mask: int) -> list[Fingerprint]:
        return [self.universe[i] for i in bits(mask)]

    def texts(self, mask: int) -> list[str]:
        return [render(self.universe[i].witness) for i in bits(mask)]

    # -- M, T, Td, Tc -----------------------------------------------------

    def mod_set(self, gamma) -> int:
        """M(Gamma) for a fingerprint mask or an iterable of fingerprints."""
        if isinstance(gamma, int):
            cached = self._mod.get(gamma)
            if cached is not None:
                return cached
            out = self.full
            pos = self.universe.pos
            for i in bits(gamma):
                out &= pos[i]
            self._mod[gamma] = out
            return out
        out = self.full
        for item in gamma:
            if not isinstance(item, Fingerprint):
                item = self.fingerprint(item)
            out &= item.pos
        return out

    def theory(self, v: int) -> int:
        cached = self._theory.get(v)
        if cached is not None:
            return cached
        out = 0
        for i, p in enumerate(self.universe.pos):
            if v & ~p == 0:
                out |= 1 << i
        self._theory[v] = out
        return out

    def theory_d(self, v: int) -> int:
        neg = self.universe.neg
        return sum(1 << i for i in bits(self.theory(v)) if v & ~neg[i])

    def theory_c(self, v: int) -> int:
        neg = self.universe.neg
        return sum(1 << i for i in bits(self.theory(v)) if v & ~neg[i] == 0)

    def in_C(self, v: int) -> bool:
        return self.theory_c(v) == 0

    def closure(self, v: int) -> int:
        """M(T(V)): the least definable superset of V."""
        return self.mod_set(self.theory(v))

    def entails(self, gamma, phi) -> bool:
        if not isinstance(phi, Fingerprint):
            phi = self.fingerprint(phi)
        return self.mod_set(gamma) & ~phi.pos == 0

    def is_consistent(self, gamma) -> bool:
        return self.in_C(self.mod_set(gamma))

    def c_vdash(self, gamma: int) -> int:
        """C_|-(Gamma) = T(M(Gamma)) as a fingerprint mask."""
        return self.theory(self.mod_set(gamma))

    def swap(self, mask: int) -> int:
        """Image of a fingerprint mask under negation (closed universes)."""
        out = 0
        neg = self.universe.negation
        for i in bits(mask):
            j = neg[i]
            if j is not None:
                out |= 1 << j
        return out


@lru_cache(maxsize=32)
def _build_space(structure: Structure, cap: int) -> Space:
    universe = clone_universe(structure, cap)
    family = definable_family(universe, structure.full, cap)
    return Space(structure, universe, family, exhaustive=True)


@dataclass
class AssumptionReport:
    A1: bool
    A2: bool
    A3: bool
    A2_witness: tuple | None = None
    A3_witness: tuple | None = None

    def lines(self, prefix="assumptions"):
        yield f"{prefix}.A1={str(self.A1).lower()}"
        yield f"{prefix}.A2={str(self.A2).lower()}"
        if self.A2_witness:
            v, alpha = self.A2_witness
            yield f"{prefix}.A2.witness=V:{v:#x} alpha:{alpha}"
        yield f"{prefix}.A3={str(self.A3).lower()}"
        if self.A3_witness:
            yield f"{prefix}.A3.witness={self.A3_witness}"


def check_assumptions(space: Space) -> AssumptionReport:
    """A1 holds by construction. A2 is checked over D x universe. A3 is
    checked by evaluating the compound witness formulas with the truth
    tables and comparing model sets with the set-algebra prediction."""
    u = space.universe
    a2_witness = None
    for v in space.D:
        for i, fp in enumerate(u):
            if v & ~fp.pos and v & ~fp.neg and (v & fp.pos) & ~fp.neg == 0:
                a2_witness = (v, render(fp.witness))
                break
        if a2_witness:
            break

    # Evaluate the compound witnesses through the truth tables: member i has
    # value x exactly on the valuations in layer[i][x], so the models of
    # op(a, b) are the union of layer[i][x] & layer[j][y] over table cells
    # (x, y) whose result contains 1.
    domain = space.structure.kind.values
    full = space.full
    layer = []
    for fp in u:
        layer.append({x: (fp.pos if x.has1 else full & ~fp.pos) & (fp.neg if x.has0 else full & ~fp.neg)
                      for x in domain})

    def cells(op):
        return [(x, y) for x in domain for y in domain if op(x, y).has1]

    laws = {
        "a|b": cells(value_or),
        "a&b": cells(value_and),
        "!(a|b)": cells(lambda x, y: value_not(value_or(x, y))),
        "!a&!b": cells(lambda x, y: value_and(value_not(x), value_not(y))),
        "!(a&b)": cells(lambda x, y: value_not(value_and(x, y))),
        "!a|!b": cells(lambda x, y: value_or(value_not(x), value_not(y))),
    }
    double_neg = [x for x in domain if value_not(value_not(x)).has1]

    a3_witness = None
    n = len(u)
    for i in range(n):
        li = layer[i]
        if sum(li[x] for x in double_neg) != u.pos[i]:
            a3_witness = ("!!a", render(u[i].witness))
            break
        for j in range(n):
            lj = layer[j]
            m = {}
            for name, pairs in laws.items():
                out = 0
                for x, y in pairs:
                    out |= li[x] & lj[y]
                m[name] = out
            bad = None
            if m["a|b"] != u.pos[i] | u.pos[j]:
                bad = "a|b"
            elif m["a&b"] != u.pos[i] & u.pos[j]:
                bad = "a&b"
            elif m["!(a|b)"] != m["!a&!b"]:
                bad = "!(a|b)"
            elif m["!(a&b)"] != m["!a|!b"]:
                bad = "!(a&b)"
            if bad:
                a3_witness = (bad, render(u[i].witness), render(u[j].witness))
                break
        if a3_witness:
            break
    return AssumptionReport(True, a2_witness is None, a3_witness is None, a2_witness, a3_witness)
