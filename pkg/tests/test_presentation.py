"""Presentation parsing, secondary/power relation derivation, expansion."""

import pytest

from quandleforge import (
    EdgeLabeling,
    EnumerationLimits,
    GeneratorSymbol,
    GroupWord,
    ParseError,
    Presentation,
    PrimaryRelation,
    UniversalRelation,
    enumerate_quandle,
    expand_relations,
    parse_presentation,
    parse_word,
    power_relations,
    secondary_of,
)


def test_parse_basic():
    pres = parse_presentation(
        "gens: a b c\nedges: a:1 b:2 c:3\nlabels: 3 3 2\nrel * : a b c'\n"
    )
    assert [g.name for g in pres.generators] == ["a", "b", "c"]
    assert len(pres.universals) == 1
    assert len(pres.primaries) == 0
    assert pres.labels == (3, 3, 2)


def test_parse_free_presentation():
    pres = parse_presentation("gens: a\nedges: a:1\nlabels: 5\n")
    assert len(pres.generators) == 1
    assert pres.universals == ()


def test_parse_label_below_one():
    with pytest.raises(ParseError):
        parse_presentation("gens: a b\nedges: a:1 b:2\nlabels: 0 2\n")


def test_parse_primary_relation():
    pres = parse_presentation(
        "gens: a b c\nedges: a:1 b:2 c:3\nlabels: 2 2 2\nrel a : b b' (ab)^2 = c\n"
    )
    rel = pres.primaries[0]
    assert rel.lhs_base.name == "a"
    assert rel.rhs.name == "c"
    syms = {g.name: g for g in pres.generators}
    assert rel.word == parse_word("a b a b", syms)


@pytest.mark.parametrize(
    "text, message",
    [
        ("gens: a\nedges: a:1\nlabels: 1\nrel * : z\n", "unknown generator"),
        ("gens: a b\nedges: a:1\nlabels: 1 1\n", "missing from"),
        ("gens: a\nedges: a:3\nlabels: 1\n", "labels"),
        ("gens: a\nlabels: 1\nbogus: x\nedges: a:1\n", "unknown key"),
        ("gens: a\nedges: a:1\nlabels: 1\nrel a : a\n", "="),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(ParseError) as err:
        parse_presentation(text)
    assert message in str(err.value)


def _simple(labels=(2, 2)):
    a = GeneratorSymbol(0, "a")
    b = GeneratorSymbol(1, "b")
    syms = {"a": a, "b": b}
    return a, b, syms


def test_secondary_of_examples():
    a, b, syms = _simple()
    c = GeneratorSymbol(2, "c")
    syms["c"] = c
    rel = PrimaryRelation(a, parse_word("b", syms), c)
    assert secondary_of(rel).word == parse_word("b' a b c'", syms)
    rel = PrimaryRelation(a, GroupWord(), b)
    assert secondary_of(rel).word == parse_word("a b'", syms)
    # a^[a] = a reduces to nothing and is dropped as vacuous
    rel = PrimaryRelation(a, parse_word("a", syms), a)
    assert secondary_of(rel) is None


def test_power_relations_theta():
    pres = parse_presentation("gens: a b c\nedges: a:1 b:2 c:3\nlabels: 3 3 2\n")
    words = [str(rel.word) for rel in power_relations(pres)]
    assert words == ["a a a", "b b b", "c c"]


def test_power_relations_label_one():
    pres = parse_presentation("gens: a\nedges: a:1\nlabels: 1\n")
    assert [str(rel.word) for rel in power_relations(pres)] == ["a"]


def test_power_relations_gkmn():
    pres = parse_presentation(
        "gens: a b c d e f\nedges: a:1 b:2 c:3 d:4 e:5 f:6\nlabels: 2 2 3 4 2 2\n"
    )
    words = [str(rel.word) for rel in power_relations(pres)]
    assert words == ["a a", "b b", "c c c", "d d d d", "e e", "f f"]


def test_expand_relations_counts():
    # one primary, no universals, two generators labeled (2,2):
    # expansion adds the primary's conjugate and two power relations
    pres = parse_presentation(
        "gens: a b\nedges: a:1 b:2\nlabels: 2 2\nrel a : b = b\n"
    )
    out = expand_relations(pres)
    assert len(out.primaries) == 1
    assert len(out.universals) == 3

    free = parse_presentation("gens: a\nedges: a:1\nlabels: 4\n")
    assert len(expand_relations(free).universals) == 1


def test_expand_relations_idempotent():
    pres = parse_presentation(
        "gens: a b c\nedges: a:1 b:2 c:3\nlabels: 3 3 2\nrel * : a b c\nrel a : b = c\n"
    )
    once = expand_relations(pres)
    twice = expand_relations(once)
    assert [r.word for r in once.universals] == [r.word for r in twice.universals]
    assert once.primaries == twice.primaries


def test_expand_deduplicates():
    pres = parse_presentation(
        "gens: a b\nedges: a:1 b:2\nlabels: 2 2\nrel * : a a\nrel * : a a\nrel * : b b\n"
    )
    out = expand_relations(pres)
    assert len(out.universals) == 2


def test_universal_relation_rejects_empty():
    with pytest.raises(ValueError):
        UniversalRelation(GroupWord())


def test_labeling_validation():
    with pytest.raises(ValueError):
        EdgeLabeling((2, 0))
    a = GeneratorSymbol(0, "a")
    with pytest.raises(ValueError):
        Presentation([a], {a: 2}, EdgeLabeling((2,)))


THETA = "gens: a b c\nedges: a:1 b:2 c:3\nlabels: 3 3 2\nrel * : a b c\n"


def _size(pres, limit=30000):
    res = enumerate_quandle(expand_relations(pres), EnumerationLimits(limit, 10**8))
    return res.stats.live if res.completed else None


def test_secondary_loops_close_on_enumerated_quandle():
    pres = parse_presentation(
        "gens: a b c\nedges: a:1 b:2 c:3\nlabels: 3 3 2\nrel a : b = c\nrel * : a b c\n"
    )
    expanded = expand_relations(pres)
    graph = enumerate_quandle(expanded, EnumerationLimits(10000, 10**8)).graph
    sec = secondary_of(pres.primaries[0])
    for v in graph.live_vertices():
        cur = v
        for letter in sec.word:
            cur = graph.action(letter.gen.id, cur, letter.sign)
        assert cur == v


def test_quotient_monotonicity():
    """Adding a universal relation never increases the enumerated size,
    and dropping a redundant relation leaves it unchanged."""
    base = parse_presentation(THETA)
    assert _size(base) == 14
    strengthened = Presentation(
        base.generators,
        base.edge_of,
        base.labeling,
        base.primaries,
        base.universals + (UniversalRelation(parse_word("a", {g.name: g for g in base.generators})),),
    )
    assert _size(strengthened) <= 14

    # the second theta vertex relation is the inverse of the first; adding
    # it changes nothing
    syms = {g.name: g for g in base.generators}
    redundant = Presentation(
        base.generators,
        base.edge_of,
        base.labeling,
        base.primaries,
        base.universals + (UniversalRelation(parse_word("c' b' a'", syms)),),
    )
    assert _size(redundant) == 14
