import pytest

from prefcons.choice import ChoiceFunction, is_coherent
from prefcons.conditions import compute_H
from prefcons.consequence import DISCRIMINATIVE, PLAIN, induce
from prefcons.harness import (
    THEOREMS, CoverageIncomplete, _random_relation, gen_choice_function,
    gen_preference_structure, lemma_violations, oracle_H_formula_enum,
    oracle_mu_sharp, verify_lemmas, verify_theorem,
)
from prefcons.modeltheory import Space
from prefcons.semantics import Structure


def test_generators_are_deterministic(four_p):
    a = gen_preference_structure(four_p.structure, 11, copies=2, density=0.4)
    b = gen_preference_structure(four_p.structure, 11, copies=2, density=0.4)
    assert a.prec == b.prec and a.labels == b.labels
    assert gen_choice_function(four_p, 3) == gen_choice_function(four_p, 3)


def test_ranked_generation_is_a_strict_order(classical_pq):
    for seed in range(20):
        r = gen_preference_structure(classical_pq.structure, seed, copies=2, density=0.6,
                                     force_transitive=True, force_irreflexive=True)
        assert r.is_transitive() and r.is_irreflexive()


def test_coherent_generation(j3_p):
    assert all(is_coherent(gen_choice_function(j3_p, s, "coherent")) for s in range(20))
    with pytest.raises(ValueError):
        gen_choice_function(j3_p, 0, "nonsense")


def test_oracle_mu_sharp_on_identity(classical_p):
    for v in classical_p.D:
        assert oracle_mu_sharp(classical_p, lambda w: w, v) == v


def test_oracle_H_matches_on_four(four_p):
    compared = nonempty = 0
    for seed in range(12):
        for rel in (_random_relation(four_p, seed),
                    induce(gen_choice_function(four_p, seed), DISCRIMINATIVE)):
            for v in four_p.D:
                result = oracle_H_formula_enum(rel, v, depth=4)
                assert result.complete
                assert result.fingerprints == {m.pair for m in compute_H(rel, v)}
                compared += 1
                nonempty += bool(result.fingerprints)
    assert compared >= 20 and nonempty > 0


def test_oracle_H_shallow_is_incomplete(four_p):
    rel = _random_relation(four_p, 1)
    with pytest.raises(CoverageIncomplete):
        oracle_H_formula_enum(rel, four_p.full, depth=1, strict=True)
    shallow = oracle_H_formula_enum(rel, four_p.full, depth=1)
    assert not shallow.complete


def test_identity_has_no_lemma_violations(j3_pq):
    mu = ChoiceFunction.identity(j3_pq)
    rel = induce(mu, DISCRIMINATIVE)
    assert lemma_violations(rel, "layers") == []
    assert lemma_violations(rel, "fixpoint") == []
    assert lemma_violations(rel, "reconstruction", mu, a2=True, cp=True) == []


@pytest.mark.parametrize("name,seeds", [("classical_pq", 30), ("four_p", 60), ("j3_p", 60), ("j3_pq", 8)])
def test_lemma_suites(name, seeds, request):
    report = verify_lemmas(request.getfixturevalue(name), range(seeds))
    assert report.ok, report.failures[:5]
    assert report.counts["fixpoint"] > 0 and report.counts["reconstruction"] > 0


def test_lemma_checks_detect_broken_layers(four_p):
    # a relation whose consequences ignore the premises entirely breaks the
    # reconstruction, which the checker must notice
    mu = gen_choice_function(four_p, 2, "coherent", density=0.5)
    rel = induce(ChoiceFunction(four_p, {v: four_p.full for v in four_p.D}), DISCRIMINATIVE)
    assert lemma_violations(rel, "reconstruction", mu, a2=False, cp=False)


@pytest.mark.parametrize("theorem,name,variants", [
    ("repClaSyn", "classical_pq", None),
    ("repGen", "four_p", None),
    ("repGen", "classical_pq", None),
    ("repArgSyn", "j3_p", (0, 1, 2, 3)),
    ("repArgSyn", "four_p", (0, 1)),
    ("repGenArg", "j3_p", None),
    ("repGenArg", "four_p", None),
    ("karl-search", "classical_p", None),
    ("P-bridge", "classical_pq", None),
])
def test_theorems_hold(theorem, name, variants, request):
    report = verify_theorem(theorem, request.getfixturevalue(name), range(30), variants)
    assert report.ok, report.failures[:5]
    assert report.cases > 0


def test_variants_needing_A2_are_skipped_in_four(four_p):
    report = verify_theorem("repArgSyn", four_p, range(5), (2,))
    assert report.cases == 0 and report.notes


def test_report_lines(classical_pq):
    report = verify_theorem("P-bridge", classical_pq, range(3))
    lines = list(report.lines())
    assert lines[0] == "verify.theorem=P-bridge"
    assert lines[-1] == "verify.pass=true"


def test_bad_requests(classical_pq):
    with pytest.raises(KeyError):
        verify_theorem("nope", classical_pq)
    with pytest.raises(ValueError):
        verify_theorem("repGen", Space.sampled(Structure("four", "pqr")))
    assert set(THEOREMS) >= {"repClaSyn", "repGen", "repArgSyn", "repGenArg"}


def test_density_zero_gives_no_preferences(classical_pq):
    assert gen_preference_structure(classical_pq.structure, 5, density=0).prec == frozenset()


def test_arbitrary_mode_is_a_choice_and_can_be_incoherent(classical_p):
    functions = [gen_choice_function(classical_p, seed) for seed in range(1000)]
    assert all(mu(v) & ~v == 0 for mu in functions for v in classical_p.D)
    assert any(not is_coherent(mu) for mu in functions)


def test_oracle_H_examples(four_p):
    identity = induce(ChoiceFunction.identity(four_p), PLAIN)
    for depth in (1, 2, 3, 4):
        for v in four_p.D:
            assert oracle_H_formula_enum(identity, v, depth).fingerprints == frozenset()
    for seed in range(6):
        rel = induce(gen_choice_function(four_p, seed), DISCRIMINATIVE)
        for v in four_p.D:
            ours = {m.pair for m in compute_H(rel, v)}
            assert oracle_H_formula_enum(rel, v, depth=1).fingerprints <= ours
