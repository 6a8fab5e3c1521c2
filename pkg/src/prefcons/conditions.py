"""Conditions c0..c12 on tabulated relations, the H / layer / beta / F / G
constructions used to rebuild a choice function from a discriminative
relation, system P and the KLM conditions.

Notation used throughout, for a definable set V (the models of Gamma):

* ``K(V)``: consequences of Gamma, a fingerprint mask;
* ``X(V) = V & M(K(V))``: the models of Gamma together with its consequences;
* ``H(V)``: the negations of the non-consequences that X cannot refute,
  iterated to a fixpoint; ``R(V) = X(V) & M(H(V))``.

Quantification over premise sets goes through the definable family; where a
condition states Gamma as a subset of something, T(V) (the largest premise set
with models V) is used. Note that a formula set S is included in T(Y) exactly
when Y is included in M(S); the set-level checks below lean on this.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .consequence import ConsequenceRelation
from .formula import Not, Or, render
from .modeltheory import Fingerprint, Space, bits, pair_and, pair_or
from .semantics import evaluate, value_or

__all__ = [
    "CONDITIONS", "ConditionReport", "SampledModeWarning", "NoWitness",
    "LayerDecomposition", "check_condition", "check_conditions", "compute_H",
    "compute_M_layers", "raw_layers", "synth_beta", "compute_F", "compute_G",
    "check_system_P", "check_KLM", "analysis",
]

CONDITIONS = tuple(f"c{i}" for i in range(13))


class SampledModeWarning(UserWarning):
    """Raised as a warning when a check runs over a sampled universe; a pass
    there does not certify the condition."""


class NoWitness(RuntimeError):
    pass


@dataclass
class ConditionReport:
    condition: str
    ok: bool
    witness: tuple | None = None
    sampled: bool = False
    detail: str = ""

    def __bool__(self):
        return self.ok


@dataclass
class LayerDecomposition:
    layers: list[int]
    remainders: list[int] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.layers)

    @property
    def m_plus(self) -> int:
        out = 0
        for layer in self.layers:
            out |= layer
        return out

    def layer(self, i: int) -> int:
        """M_i (1-based); empty past the last non-empty layer."""
        return self.layers[i - 1] if 1 <= i <= len(self.layers) else 0

    def remainder(self, i: int) -> int:
        """X minus M_1..M_{i-1} (1-based)."""
        if i - 1 < len(self.remainders):
            return self.remainders[i - 1]
        return self.remainders[-1]


class Analysis:
    """Per-relation cache of the derived sets."""

    def __init__(self, rel: ConsequenceRelation):
        self.rel = rel
        self.space: Space = rel.space
        self.pos = rel.space.universe.pos
        self.neg = rel.space.universe.neg
        self._x: dict[int, int] = {}
        self._h: dict[int, tuple[int, int, int]] = {}
        self._negt: dict[int, int] = {}
        self._layers: dict[int, LayerDecomposition] = {}

    def K(self, v: int) -> int:
        return self.rel[v]

    def MK(self, v: int) -> int:
        return self.space.mod_set(self.rel[v])

    def X(self, v: int) -> int:
        out = self._x.get(v)
        if out is None:
            out = self._x[v] = v & self.MK(v)
        return out

    def neg_theory(self, y: int) -> int:
        """Fingerprints whose negation holds throughout y (y <= neg)."""
        out = self._negt.get(y)
        if out is None:
            out = sum(1 << i for i, n in enumerate(self.neg) if y & ~n == 0)
            self._negt[y] = out
        return out

    def H(self, v: int) -> tuple[int, int, int]:
        """(generators, model set, mask): H(V) is the set of negations of the
        generator fingerprints; ``mask`` holds those negations present in the
        universe."""
        cached = self._h.get(v)
        if cached is not None:
            return cached
        k = self.K(v)
        x = self.X(v)
        gens = 0
        model = self.space.full
        current = x
        while True:
            step = 0
            for b in bits(self.space.theory(current) & ~k):
                if current & ~self.neg[b]:
                    step |= 1 << b
            gens |= step
            for b in bits(step):
                model &= self.neg[b]
            nxt = x & model
            if nxt == current:
                break
            current = nxt
        mask = self.space.swap(gens) if self.space.universe.closed else _swap_partial(self.space, gens)
        self._h[v] = (gens, model, mask)
        return self._h[v]

    def MH(self, v: int) -> int:
        return self.H(v)[1]

    def R(self, v: int) -> int:
        return self.X(v) & self.MH(v)

    def layers(self, v: int) -> LayerDecomposition:
        out = self._layers.get(v)
        if out is None:
            out = self._layers[v] = raw_layers(self.space, self.K(v), self.X(v))
        return out


def _swap_partial(space: Space, mask: int) -> int:
    out = 0
    for i in bits(mask):
        j = space.universe.find((space.universe.neg[i], space.universe.pos[i]))
        if j is not None:
            out |= 1 << j
    return out


def analysis(rel: ConsequenceRelation) -> Analysis:
    a = getattr(rel, "_analysis", None)
    if a is None:
        a = Analysis(rel)
        rel._analysis = a
    return a


def raw_layers(space: Space, k: int, x: int) -> LayerDecomposition:
    """M_1, M_2, ... for consequences ``k`` and base set ``x``."""
    neg = space.universe.neg
    layers = []
    remainders = []
    y = x
    while True:
        remainders.append(y)
        layer = 0
        for b in bits(space.theory(y) & ~k):
            layer |= y & ~neg[b]
        if not layer:
            break
        layers.append(layer)
        y &= ~layer
    return LayerDecomposition(layers, remainders)


def compute_H(rel: ConsequenceRelation, v: int) -> frozenset:
    """H for the premise class with models ``v``, as fingerprints."""
    a = analysis(rel)
    gens = a.H(v)[0]
    u = rel.space.universe
    out = set()
    for b in bits(gens):
        j = u.find((u.neg[b], u.pos[b]))
        if j is not None:
            out.add(u[j])
        else:
            out.add(Fingerprint(u.neg[b], u.pos[b], Not(u[b].witness)))
    return frozenset(out)


def compute_M_layers(rel: ConsequenceRelation, v: int) -> LayerDecomposition:
    return analysis(rel).layers(v)


def synth_beta(rel: ConsequenceRelation, v: int) -> Fingerprint:
    """beta(Gamma): per layer, the canonically smallest admissible beta_j for
    each valuation of the layer, disjoined left to right, then the layer
    disjunctions disjoined left to right."""
    a = analysis(rel)
    dec = a.layers(v)
    if not dec.layers:
        raise NoWitness("no layer is non-empty")
    u = rel.space.universe
    k = a.K(v)
    total = None
    for i, layer in enumerate(dec.layers, 1):
        y = dec.remainder(i)
        candidates = rel.space.theory(y) & ~k
        part = None
        for valuation in bits(layer):
            choice = next((b for b in bits(candidates) if not u.neg[b] >> valuation & 1), None)
            if choice is None:
                raise NoWitness(f"no admissible beta for v{valuation} in layer {i}")
            fp = u[choice]
            part = fp if part is None else _or(part, fp)
        total = part if total is None else _or(total, part)
    found = u.find(total.pair)
    return u[found] if found is not None else total


def _or(a: Fingerprint, b: Fingerprint) -> Fingerprint:
    p = pair_or(a.pair, b.pair)
    return Fingerprint(p[0], p[1], Or(a.witness, b.witness))


def compute_F(rel: ConsequenceRelation, v: int) -> tuple[Fingerprint, ...]:
    a = analysis(rel)
    if not a.layers(v).layers:
        return ()
    beta = synth_beta(rel, v)
    u = rel.space.universe
    found = u.find((beta.neg, beta.pos))
    return (u[found] if found is not None else Fingerprint(beta.neg, beta.pos, Not(beta.witness)),)


def compute_G(rel: ConsequenceRelation, v: int) -> int:
    """G as a fingerprint mask."""
    a = analysis(rel)
    space = rel.space
    u = space.universe
    k = a.K(v)
    x = a.X(v)
    out = 0
    for i in range(len(u)):
        if k >> i & 1:
            continue
        j = u.negation[i] if u.closed else u.find((u.neg[i], u.pos[i]))
        if j is not None and k >> j & 1:
            continue
        if space.theory_d(x & u.pos[i]) & ~k == 0:
            out |= 1 << i
    return out


# -- conditions -------------------------------------------------------------

def _mu_f(space: Space, f) -> dict[int, int]:
    table = {}
    for v in space.D:
        rejected = 0
        for w in space.D:
            if w & ~v == 0:
                rejected |= w & ~f(w)
        table[v] = v & ~rejected
    return table


def _c0(a: Analysis):
    if a.rel.c0_conflicts:
        return (a.space.family.index[a.rel.c0_conflicts[0]],)
    return None


def _c1(a: Analysis):
    for v in a.space.D:
        if a.space.theory(a.MK(v)) != a.K(v):
            return (a.space.family.index[v],)
    return None


def _c2(a: Analysis):
    for v in a.space.D:
        missing = a.space.theory(v) & ~a.K(v)
        if missing:
            return (a.space.family.index[v], _first(a, missing))
    return None


def _c3(a: Analysis):
    fam = a.space.family
    for v in a.space.D:
        mk = a.MK(v)
        for w in a.space.D:
            if mk & w & ~a.MK(v & w):
                return (fam.index[v], fam.index[w])
    return None


def _c4(a: Analysis):
    fam = a.space.family
    for v in a.space.D:
        k = a.K(v)
        for w in a.space.D:
            if w & ~v == 0 and a.space.theory(w) & ~k == 0 and k & ~a.K(w):
                return (fam.index[v], fam.index[w])
    return None


def _c5(a: Analysis):
    sharp = _mu_f(a.space, a.MK)
    for v in a.space.D:
        if a.space.theory(sharp[v]) != a.K(v):
            return (a.space.family.index[v],)
    return None


def _c6(a: Analysis):
    for v in a.space.D:
        k, x = a.K(v), a.X(v)
        for b in bits(a.space.theory(x) & ~k):
            bad = a.neg_theory(x & a.neg[b]) & k
            if bad:
                return (a.space.family.index[v], _first(a, bad), _text(a, b))
    return None


def _c7(a: Analysis):
    u = a.space.universe
    for v in a.space.D:
        k, x = a.K(v), a.X(v)
        for al in bits(a.space.theory(x) & ~k):
            for be in bits(a.space.theory(x & a.neg[al]) & ~k):
                j = u.or_index(al, be)
                if j is not None and k >> j & 1:
                    return (a.space.family.index[v], _text(a, al), _text(a, be))
    return None


def _c8(a: Analysis):
    for v in a.space.D:
        bad = a.K(v) & a.neg_theory(a.X(v))
        if bad:
            return (a.space.family.index[v], _first(a, bad))
    return None


def _c9(a: Analysis):
    fam = a.space.family
    for v in a.space.D:
        bound = a.MK(v) & a.MH(v)
        for w in a.space.D:
            if v & ~w == 0 and a.R(w) & v & ~bound:
                return (fam.index[v], fam.index[w])
    return None


def _c10(a: Analysis):
    fam = a.space.family
    for v in a.space.D:
        bound = a.MK(v) & a.MH(v)
        rv = a.R(v)
        for w in a.space.D:
            if w & ~v == 0 and rv & ~w == 0 and a.R(w) & ~bound:
                return (fam.index[v], fam.index[w])
    return None


def _c11(a: Analysis):
    space = a.space
    for v in space.D:
        if not space.in_C(v):
            continue
        k, mk = a.K(v), a.MK(v)
        if not space.in_C(mk):
            return (space.family.index[v], "inconsistent")
        if space.theory(v) & ~k:
            return (space.family.index[v], "not reflexive")
        if space.theory(mk) != k:
            return (space.family.index[v], "not closed")
    return None


def _c12(a: Analysis):
    sharp = _mu_f(a.space, a.R)
    for v in a.space.D:
        if a.space.theory(a.R(v)) != a.space.theory(sharp[v]):
            return (a.space.family.index[v],)
    return None


_CHECKS = {
    "c0": _c0, "c1": _c1, "c2": _c2, "c3": _c3, "c4": _c4, "c5": _c5, "c6": _c6,
    "c7": _c7, "c8": _c8, "c9": _c9, "c10": _c10, "c11": _c11, "c12": _c12,
}


def _first(a: Analysis, mask: int) -> str:
    return _text(a, (mask & -mask).bit_length() - 1)


def _text(a: Analysis, i: int) -> str:
    return render(a.space.universe[i].witness)


def check_condition(rel: ConsequenceRelation, cid: str) -> ConditionReport:
    if cid not in _CHECKS:
        raise KeyError(f"unknown condition {cid!r}")
    sampled = not rel.space.exhaustive
    if sampled:
        warnings.warn(f"{cid} checked over a sampled universe; a pass is not a proof",
                      SampledModeWarning, stacklevel=2)
    witness = _CHECKS[cid](analysis(rel))
    return ConditionReport(cid, witness is None, witness, sampled)


def check_conditions(rel: ConsequenceRelation, cids) -> dict[str, ConditionReport]:
    return {cid: check_condition(rel, cid) for cid in cids}


# -- system P and KLM -------------------------------------------------------

def check_system_P(rel: ConsequenceRelation) -> ConditionReport:
    """The six rules of system P on single-formula premises.

    ``a -> b`` is read as ``!a | b`` and ``a <-> b`` as
    ``(!a | b) & (!b | a)``; validity means every valuation satisfies it.
    """
    space = rel.space
    u = space.universe
    full = space.full
    n = len(u)
    pairs = [m.pair for m in u]
    cons = [rel[p[0]] for p in pairs]

    def implies(a, b):
        return pair_or((a[1], a[0]), b)

    def valid(p):
        return p[0] == full

    for a in range(n):
        if not cons[a] >> a & 1:
            return ConditionReport("P", False, ("Reflexivity", _t(u, a)), not space.exhaustive)
    for a in range(n):
        for b in range(n):
            iff = pair_and(implies(pairs[a], pairs[b]), implies(pairs[b], pairs[a]))
            if valid(iff) and cons[a] != cons[b]:
                return ConditionReport("P", False, ("LLE", _t(u, a), _t(u, b)), not space.exhaustive)
    # Right Weakening: consequences are closed upward under valid implication
    for g in range(n):
        for a in bits(cons[g]):
            for b in range(n):
                if not cons[g] >> b & 1 and valid(implies(pairs[a], pairs[b])):
                    return ConditionReport("P", False, ("RW", _t(u, a), _t(u, b), _t(u, g)),
                                           not space.exhaustive)
    for a in range(n):
        for b in range(n):
            conj = pair_and(pairs[a], pairs[b])
            k_conj = rel[conj[0]]
            if cons[a] >> b & 1:
                if k_conj & ~cons[a]:
                    return ConditionReport("P", False, ("Cut", _t(u, a), _t(u, b)), not space.exhaustive)
                if cons[a] & ~k_conj:
                    return ConditionReport("P", False, ("CM", _t(u, a), _t(u, b)), not space.exhaustive)
            disj = pair_or(pairs[a], pairs[b])
            if cons[a] & cons[b] & ~rel[disj[0]]:
                return ConditionReport("P", False, ("Or", _t(u, a), _t(u, b)), not space.exhaustive)
    return ConditionReport("P", True, None, not space.exhaustive)


def _t(u, i):
    return render(u[i].witness)


def check_KLM(space: Space) -> dict[str, ConditionReport]:
    """KLM0 (negation is classical), KLM1 (disjunction is classical) and
    KLM2 (compactness, automatic over a finite valuation set)."""
    u = space.universe
    structure = space.structure
    out = {}
    bad = None
    for i, fp in enumerate(u):
        wrong = fp.neg ^ (space.full & ~fp.pos)
        if wrong:
            k = (wrong & -wrong).bit_length() - 1
            bad = (f"v{k}", str(structure.valuations[k]), render(fp.witness))
            break
    out["KLM0"] = ConditionReport("KLM0", bad is None, bad, not space.exhaustive)

    values = [[evaluate(val, fp.witness) for val in structure.valuations] for fp in u]
    bad = None
    for i in range(len(u)):
        for j in range(len(u)):
            for k in range(len(structure)):
                lhs = values[i][k].has1 or values[j][k].has1
                if value_or(values[i][k], values[j][k]).has1 != lhs:
                    bad = (f"v{k}", render(u[i].witness), render(u[j].witness))
                    break
            if bad:
                break
        if bad:
            break
    out["KLM1"] = ConditionReport("KLM1", bad is None, bad, not space.exhaustive)
    out["KLM2"] = ConditionReport("KLM2", True, None, False, "finite valuation set")
    return out
