"""Choice functions over the definable family and preference structures.

A choice function is stored as a table from definable valuation sets
(bitmasks) to valuation sets. Preference structures keep, for every state,
the bitmask of states strictly preferred to it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .modeltheory import Space, bits
from .semantics import Structure, parse_valuation

__all__ = [
    "Report", "PreferenceStructure", "ChoiceFunction", "choice_from_structure",
    "is_choice", "is_coherent", "is_locally_monotonic", "is_dp", "is_cp",
    "is_smooth", "is_transitive", "is_irreflexive", "mu_sharp",
    "extend_to_powerset", "search_representation", "parse_structure",
    "dump_structure", "dump_choice", "StructureFormatError",
]


@dataclass
class Report:
    """Outcome of a property check; ``witness`` is the first violation found."""

    ok: bool
    witness: tuple | None = None
    name: str = ""

    def __bool__(self):
        return self.ok


class PreferenceStructure:
    """States labelled by valuation indices, with ``s < t`` read as "s is
    preferred to t"."""

    def __init__(self, structure: Structure, labels, prec=(), names=None):
        self.structure = structure
        self.labels = tuple(labels)
        n = len(self.labels)
        for lab in self.labels:
            if not 0 <= lab < len(structure):
                raise ValueError(f"label {lab} is not a valuation index")
        self.names = tuple(names) if names is not None else tuple(f"s{i}" for i in range(n))
        self.prec = frozenset(prec)
        pred = [0] * n
        for a, b in self.prec:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"preference ({a}, {b}) mentions an unknown state")
            pred[b] |= 1 << a
        self.pred = tuple(pred)
        by_label: dict[int, int] = {}
        for s, lab in enumerate(self.labels):
            by_label[lab] = by_label.get(lab, 0) | 1 << s
        self._by_label = by_label

    def __len__(self):
        return len(self.labels)

    def states_of(self, v: int) -> int:
        """L(V) as a state bitmask."""
        out = 0
        for lab, states in self._by_label.items():
            if v >> lab & 1:
                out |= states
        return out

    def preferred_states(self, states: int) -> int:
        pred = self.pred
        return sum(1 << s for s in bits(states) if pred[s] & states == 0)

    def mu(self, v: int) -> int:
        """mu_R(V): valuations of V labelling some preferred state of L(V)."""
        out = 0
        for s in bits(self.preferred_states(self.states_of(v))):
            out |= 1 << self.labels[s]
        return out

    def is_transitive(self) -> bool:
        pred = self.pred
        for b in range(len(self)):
            for a in bits(pred[b]):
                if pred[a] & ~pred[b]:
                    return False
        return True

    def is_irreflexive(self) -> bool:
        return all(not (self.pred[s] >> s & 1) for s in range(len(self)))


def is_transitive(r: PreferenceStructure) -> bool:
    return r.is_transitive()


def is_irreflexive(r: PreferenceStructure) -> bool:
    return r.is_irreflexive()


def is_smooth(r: PreferenceStructure, family) -> Report:
    for v in family:
        states = r.states_of(v)
        best = r.preferred_states(states)
        for s in bits(states & ~best):
            if r.pred[s] & best == 0:
                return Report(False, (v, r.names[s]), "smooth")
    return Report(True, name="smooth")


class ChoiceFunction:
    """A function from the definable family of ``space`` to valuation sets."""

    def __init__(self, space: Space, table: dict[int, int]):
        self.space = space
        self.table = dict(table)
        missing = [v for v in space.D if v not in self.table]
        if missing:
            raise ValueError(f"choice function undefined on {len(missing)} definable sets")

    def __call__(self, v: int) -> int:
        return self.table[v]

    def __eq__(self, other):
        return isinstance(other, ChoiceFunction) and all(
            self.table[v] == other.table[v] for v in self.space.D)

    def __repr__(self):
        return f"ChoiceFunction({len(self.table)} sets)"

    @classmethod
    def identity(cls, space: Space) -> "ChoiceFunction":
        return cls(space, {v: v for v in space.D})

    @classmethod
    def from_callable(cls, space: Space, fn) -> "ChoiceFunction":
        return cls(space, {v: fn(v) for v in space.D})


def choice_from_structure(r: PreferenceStructure, space: Space) -> ChoiceFunction:
    return ChoiceFunction(space, {v: r.mu(v) for v in space.D})


def is_choice(mu: ChoiceFunction) -> Report:
    for v in mu.space.D:
        if mu(v) & ~v:
            return Report(False, (v,), "choice")
    return Report(True, name="choice")


def _subset_pairs(family):
    for v in family:
        for w in family:
            if v & ~w == 0:
                yield v, w


def is_coherent(mu: ChoiceFunction) -> Report:
    """V <= W implies mu(W) & V <= mu(V)."""
    for v, w in _subset_pairs(mu.space.D):
        extra = mu(w) & v & ~mu(v)
        if extra:
            return Report(False, (v, w, (extra & -extra).bit_length() - 1), "coherent")
    return Report(True, name="coherent")


def is_locally_monotonic(mu: ChoiceFunction) -> Report:
    """mu(W) <= V <= W implies mu(V) <= mu(W)."""
    for v, w in _subset_pairs(mu.space.D):
        if mu(w) & ~v == 0 and mu(v) & ~mu(w):
            return Report(False, (v, w), "LM")
    return Report(True, name="LM")


def is_dp(mu: ChoiceFunction) -> Report:
    family = mu.space.family
    for v in mu.space.D:
        if mu(v) not in family:
            return Report(False, (v,), "DP")
    return Report(True, name="DP")


def is_cp(mu: ChoiceFunction) -> Report:
    space = mu.space
    for v in space.D:
        if space.in_C(v) and not space.in_C(mu(v)):
            return Report(False, (v,), "CP")
    return Report(True, name="CP")


def mu_sharp(space: Space, f) -> ChoiceFunction:
    """mu^f(V): members v of V such that v is in f(W) for every definable
    W with v in W <= V. ``f`` is a mapping or callable on the family."""
    get = f.__getitem__ if hasattr(f, "__getitem__") else f
    table = {}
    for v in space.D:
        rejected = 0
        for w in space.D:
            if w & ~v == 0:
                rejected |= w & ~get(w)
        table[v] = v & ~rejected
    return ChoiceFunction(space, table)


def extend_to_powerset(mu: ChoiceFunction):
    """mu'(V) = V & mu(M(T(V))), defined on every valuation set."""
    space = mu.space

    def extended(v: int) -> int:
        return v & mu(space.closure(v))

    return extended


def search_representation(mu: ChoiceFunction, copies: int = 2, budget: int = 20000,
                          seed: int = 0, exhaustive_limit: int = 16):
    """Look for a preference structure R with mu_R = mu on the family.

    States are ``copies`` copies of each valuation. When the number of
    candidate preference pairs is at most ``exhaustive_limit`` every relation
    is tried; otherwise ``budget`` random relations are sampled. Returns
    ``(R or None, exhaustive)``.
    """
    structure = mu.space.structure
    family = mu.space.D
    labels = [v for v in range(len(structure)) for _ in range(copies)]
    n = len(labels)
    pairs = [(a, b) for a in range(n) for b in range(n)]
    target = [mu(v) for v in family]

    def matches(prec) -> PreferenceStructure | None:
        r = PreferenceStructure(structure, labels, prec)
        if all(r.mu(v) == t for v, t in zip(family, target)):
            return r
        return None

    if len(pairs) <= exhaustive_limit:
        for chosen in itertools.product((False, True), repeat=len(pairs)):
            r = matches([p for p, keep in zip(pairs, chosen) if keep])
            if r is not None:
                return r, True
        return None, True
    rng = random.Random(seed)
    for _ in range(budget):
        density = rng.random()
        r = matches([p for p in pairs if rng.random() < density])
        if r is not None:
            return r, False
    return None, False


class StructureFormatError(ValueError):
    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


def parse_structure(structure: Structure, text: str) -> PreferenceStructure:
    """Read ``state <id> label <valuation>`` and ``prefer <id> <id>`` lines."""
    names: list[str] = []
    labels: list[int] = []
    index: dict[str, int] = {}
    prec = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "state":
            if len(parts) < 4 or parts[2] != "label":
                raise StructureFormatError(no, "expected 'state <id> label <valuation>'")
            if parts[1] in index:
                raise StructureFormatError(no, f"duplicate state {parts[1]!r}")
            try:
                val = parse_valuation(structure, " ".join(parts[3:]))
            except (ValueError, KeyError) as exc:
                raise StructureFormatError(no, str(exc)) from None
            index[parts[1]] = len(names)
            names.append(parts[1])
            labels.append(structure.index_of(val))
        elif parts[0] == "prefer":
            if len(parts) != 3:
                raise StructureFormatError(no, "expected 'prefer <id> <id>'")
            try:
                prec.append((index[parts[1]], index[parts[2]]))
            except KeyError as exc:
                raise StructureFormatError(no, f"unknown state {exc.args[0]!r}") from None
        else:
            raise StructureFormatError(no, f"unknown directive {parts[0]!r}")
    return PreferenceStructure(structure, labels, prec, names)


def dump_structure(r: PreferenceStructure) -> str:
    lines = []
    for name, lab in zip(r.names, r.labels):
        lines.append(f"state {name} label {r.structure.valuations[lab]}")
    for a, b in sorted(r.prec):
        lines.append(f"prefer {r.names[a]} {r.names[b]}")
    return "\n".join(lines) + "\n"


def dump_choice(mu: ChoiceFunction) -> str:
    def fmt(mask):
        return "{" + ",".join(str(i) for i in bits(mask)) + "}"

    return "".join(f"V#{k}: {fmt(v)} -> {fmt(mu(v))}\n" for k, v in enumerate(mu.space.D))
