"""Preferential and preferential-discriminative consequence relations.

A relation is tabulated over the definable family: ``table[V]`` is the
fingerprint mask of the consequences of any premise set whose model set is V.
"""

from __future__ import annotations

from .choice import ChoiceFunction
from .modeltheory import Fingerprint, Space

__all__ = ["PLAIN", "DISCRIMINATIVE", "ConsequenceRelation", "induce"]

PLAIN = "plain"
DISCRIMINATIVE = "discriminative"


class ConsequenceRelation:
    """``choice`` is kept when the relation was induced from a choice
    function; it lets queries outside the fingerprint universe be answered
    directly. ``c0_conflicts`` lists the definable sets on which a relation
    built from an arbitrary function gave different answers for two premise
    sets with the same models."""

    def __init__(self, space: Space, mode: str, table: dict[int, int] | None = None,
                 choice=None, c0_conflicts=()):
        if mode not in (PLAIN, DISCRIMINATIVE, "custom"):
            raise ValueError(f"unknown mode {mode!r}")
        self.space = space
        self.mode = mode
        self.choice = choice
        self.c0_conflicts = tuple(c0_conflicts)
        self._table = dict(table) if table is not None else {}

    def __repr__(self):
        return f"ConsequenceRelation({self.mode}, {len(self._table)} sets)"

    @property
    def table(self) -> dict[int, int]:
        for v in self.space.D:
            self[v]
        return self._table

    def __getitem__(self, v: int) -> int:
        """C|~ of any premise set with model set ``v`` (fingerprint mask)."""
        out = self._table.get(v)
        if out is None:
            if self.choice is None:
                raise KeyError(f"relation has no entry for valuation set {v:#x}")
            chosen = self.choice(v)
            out = self.space.theory(chosen) if self.mode == PLAIN else self.space.theory_d(chosen)
            self._table[v] = out
        return out

    def premises(self, gamma) -> int:
        """Model set of a premise collection (formulas, texts, fingerprints or a mask)."""
        if isinstance(gamma, int):
            return self.space.mod_set(gamma)
        out = self.space.full
        for item in gamma:
            fp = item if isinstance(item, Fingerprint) else self.space.fingerprint(item)
            out &= fp.pos
        return out

    def holds(self, gamma, phi) -> bool:
        v = self.premises(gamma)
        fp = phi if isinstance(phi, Fingerprint) else self.space.fingerprint(phi)
        if self.choice is not None and self.mode != "custom":
            chosen = self.choice(v)
            if chosen & ~fp.pos:
                return False
            return self.mode == PLAIN or bool(chosen & ~fp.neg)
        return bool(self[v] >> self.space.index(fp) & 1)

    def consequences(self, gamma) -> int:
        return self[self.premises(gamma)]

    def equals(self, other: "ConsequenceRelation") -> bool:
        return all(self[v] == other[v] for v in self.space.D)

    @classmethod
    def from_function(cls, space: Space, fn, mode: str = "custom") -> "ConsequenceRelation":
        """Tabulate an arbitrary premise-mask -> consequence-mask function.

        Each definable set V is represented by T(V); the canonical witness
        premise set of V is also evaluated and any disagreement is recorded
        as a c0 conflict.
        """
        table = {}
        conflicts = []
        for v in space.D:
            full_theory = space.theory(v)
            table[v] = fn(full_theory)
            gamma = space.family.witness[v]
            if gamma != full_theory and fn(gamma) != table[v]:
                conflicts.append(v)
        return cls(space, mode, table, c0_conflicts=conflicts)


def induce(mu, mode: str = PLAIN, space: Space | None = None) -> ConsequenceRelation:
    """Relation induced by a choice function (or any callable on valuation
    sets when ``space`` is given): plain T(mu(V)), discriminative Td(mu(V))."""
    if isinstance(mu, ChoiceFunction):
        space = mu.space
        rel = ConsequenceRelation(space, mode, choice=mu)
        rel.table  # tabulate eagerly over the family
        return rel
    if space is None:
        raise ValueError("a space is required when inducing from a callable")
    return ConsequenceRelation(space, mode, choice=mu)
