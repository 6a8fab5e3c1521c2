import itertools
import random

import pytest

from prefcons.choice import (
    ChoiceFunction, PreferenceStructure, StructureFormatError, choice_from_structure,
    dump_choice, dump_structure, extend_to_powerset, is_choice, is_coherent, is_cp,
    is_dp, is_locally_monotonic, is_smooth, mu_sharp, parse_structure,
    search_representation,
)
from prefcons.fixtures import nixon_preference
from prefcons.formula import parse
from prefcons.harness import gen_choice_function, gen_preference_structure, oracle_mu_sharp
from prefcons.modeltheory import bits
from prefcons.semantics import Structure

SPACES = ["classical_p", "classical_pq", "four_p", "j3_p", "j3_pq"]


def test_preferred_states_and_mu():
    s = Structure("classical", "p")
    r = PreferenceStructure(s, [0, 1], [(1, 0)])
    assert r.mu(0b11) == 0b10
    assert r.mu(0b01) == 0b01
    assert r.is_transitive() and r.is_irreflexive()


def test_copies_make_labels_survive():
    s = Structure("classical", "p")
    # state 2 also carries v0 and nothing beats it
    r = PreferenceStructure(s, [0, 1, 0], [(1, 0)])
    assert r.mu(0b11) == 0b11


def test_rejects_bad_states():
    s = Structure("classical", "p")
    with pytest.raises(ValueError):
        PreferenceStructure(s, [0, 5])
    with pytest.raises(ValueError):
        PreferenceStructure(s, [0, 1], [(0, 7)])


@pytest.mark.parametrize("name", SPACES)
def test_structures_give_coherent_choices(name, request):
    space = request.getfixturevalue(name)
    for seed in range(60):
        r = gen_preference_structure(space.structure, seed, copies=1 + seed % 2,
                                     density=random.Random(seed).random())
        mu = choice_from_structure(r, space)
        assert is_choice(mu)
        assert is_coherent(mu), seed


@pytest.mark.parametrize("name", SPACES)
def test_smooth_transitive_irreflexive_gives_lm(name, request):
    space = request.getfixturevalue(name)
    checked = 0
    for seed in range(60):
        r = gen_preference_structure(space.structure, seed, copies=1 + seed % 2, density=0.4,
                                     force_transitive=True, force_irreflexive=True)
        assert r.is_transitive() and r.is_irreflexive()
        if not is_smooth(r, space.D):
            continue
        checked += 1
        mu = choice_from_structure(r, space)
        assert is_coherent(mu) and is_locally_monotonic(mu), seed
    assert checked > 0


def test_incoherent_function_detected(classical_p):
    table = {v: v for v in classical_p.D}
    table[0b11] = 0b01
    table[0b01] = 0
    report = is_coherent(ChoiceFunction(classical_p, table))
    assert not report
    v, w, x = report.witness
    assert v & ~w == 0 and table[w] >> x & 1 and v >> x & 1 and not table[v] >> x & 1


def test_lm_failure(classical_p):
    table = {v: v for v in classical_p.D}
    table[0b11] = 0
    report = is_locally_monotonic(ChoiceFunction(classical_p, table))
    assert not report
    v, w = report.witness
    assert table[w] & ~v == 0 and v & ~w == 0 and table[v] & ~table[w]


def test_dp_and_cp(four_p):
    full = four_p.full
    # a single valuation is rarely definable in FOUR
    lonely = next(1 << i for i in range(4) if (1 << i) not in four_p.family)
    mu = ChoiceFunction(four_p, {v: (lonely if v == full else v) for v in four_p.D})
    assert not is_dp(mu)
    assert is_dp(ChoiceFunction.identity(four_p))
    assert is_cp(ChoiceFunction.identity(four_p))


def test_partial_table_rejected(classical_p):
    with pytest.raises(ValueError):
        ChoiceFunction(classical_p, {classical_p.full: 0})


def test_mu_sharp_trivial_cases(four_p):
    assert mu_sharp(four_p, lambda v: v) == ChoiceFunction.identity(four_p)
    empty = mu_sharp(four_p, lambda v: 0)
    assert all(empty(v) == 0 for v in four_p.D)


@pytest.mark.parametrize("name", SPACES)
def test_mu_sharp_is_coherent_choice_and_matches_oracle(name, request):
    space = request.getfixturevalue(name)
    rng = random.Random(0)
    for _ in range(30):
        f = {v: rng.randrange(space.full + 1) for v in space.D}
        mu = mu_sharp(space, f)
        assert is_choice(mu) and is_coherent(mu)
        for v in space.D:
            assert mu(v) == oracle_mu_sharp(space, f, v)


@pytest.mark.parametrize("name", SPACES)
def test_mu_sharp_recovers_generating_theories(name, request):
    space = request.getfixturevalue(name)
    for seed in range(30):
        mu = gen_choice_function(space, seed, "coherent", density=0.3)
        f = {v: space.closure(mu(v)) for v in space.D}
        sharp = mu_sharp(space, f)
        for v in space.D:
            assert f[v] == space.closure(sharp(v))


def test_extend_to_powerset(four_p):
    mu = gen_choice_function(four_p, 3, "coherent", density=0.5)
    ext = extend_to_powerset(mu)
    for v in four_p.D:
        assert ext(v) == mu(v)
    assert ext(0) == 0
    for v in range(four_p.full + 1):
        assert ext(v) == v & mu(four_p.closure(v))


def test_extension_of_coherent_is_coherent(four_p):
    for seed in range(20):
        ext = extend_to_powerset(gen_choice_function(four_p, seed, "coherent", density=0.4))
        for v, w in itertools.product(range(four_p.full + 1), repeat=2):
            if v & ~w == 0:
                assert ext(w) & v & ~ext(v) == 0


def test_search_finds_representations(classical_p):
    for seed in range(10):
        mu = gen_choice_function(classical_p, seed, "coherent", copies=2, density=0.4)
        r, exhaustive = search_representation(mu, copies=2)
        assert exhaustive and r is not None
        assert choice_from_structure(r, classical_p) == mu


def test_search_rejects_incoherent(classical_p):
    table = {v: v for v in classical_p.D}
    table[0b01] = 0
    table[0b11] = 0b01
    r, exhaustive = search_representation(ChoiceFunction(classical_p, table), copies=2)
    assert exhaustive and r is None


def test_structure_file_round_trip():
    s = Structure("four", "pq")
    r = gen_preference_structure(s, 4, copies=2, density=0.1)
    again = parse_structure(s, dump_structure(r))
    assert again.labels == r.labels and again.prec == r.prec


def test_structure_file_comments_and_labels():
    s = Structure("classical", "pq")
    r = parse_structure(s, "# demo\nstate a label v3\nstate b label p=0 q=1  # note\nprefer a b\n")
    assert r.labels == (3, 2) and r.prec == {(0, 1)}


@pytest.mark.parametrize("text,line", [
    ("state a v1\n", 1),
    ("state a label v1\nstate a label v2\n", 2),
    ("state a label v1\nprefer a b\n", 2),
    ("state a label p=top q=t\n", 1),
    ("bogus\n", 1),
])
def test_structure_file_errors(text, line):
    with pytest.raises(StructureFormatError) as info:
        parse_structure(Structure("classical", "pq"), text)
    assert info.value.line_no == line


def test_dump_choice_format(classical_p):
    text = dump_choice(ChoiceFunction.identity(classical_p))
    lines = text.splitlines()
    assert len(lines) == len(classical_p.D)
    assert lines[0] == "V#0: {} -> {}"
    assert lines[-1] == "V#3: {0,1} -> {0,1}"


def test_nixon_classical_structure(classical_pqr):
    r = nixon_preference("classical")
    assert not r.is_transitive()
    assert r.is_irreflexive()
    assert not is_smooth(r, classical_pqr.D)
    assert r.mu(classical_pqr.fingerprint("q & r").pos) == 0
    assert is_coherent(choice_from_structure(r, classical_pqr))


def test_nixon_four_structure():
    r = nixon_preference("four")
    assert len(r) == 64 and r.is_irreflexive()
    chosen = r.mu(r.structure.models(parse("q & r")))
    assert chosen and all(r.structure.satisfies(v, parse("p")) for v in bits(chosen))
