"""Word-core tests: free reduction, inversion, the re-association rule."""

import random

import pytest

from quandleforge import (
    EnumerationLimits,
    GeneratorSymbol,
    GroupWord,
    Letter,
    ParseError,
    QuandleExpr,
    act,
    enumerate_quandle,
    expand_relations,
    free_reduce,
    invert,
    parse_presentation,
    parse_word,
    power_word,
    quandle_table,
)

A, B, C, D = (GeneratorSymbol(i, n) for i, n in enumerate("abcd"))
SYMS = {"a": A, "b": B, "c": C, "d": D}


def w(text):
    return parse_word(text, SYMS)


def test_free_reduce_examples():
    assert free_reduce([Letter(A, 1), Letter(A, -1), Letter(B, 1)]) == w("b")
    assert free_reduce([]) == GroupWord()
    assert free_reduce([Letter(A, 1), Letter(B, 1), Letter(B, -1), Letter(A, -1)]) == GroupWord()


def test_free_reduce_idempotent_random():
    rng = random.Random(20240511)
    gens = [A, B, C, D]
    for _ in range(300):
        letters = [Letter(rng.choice(gens), rng.choice((1, -1))) for _ in range(rng.randint(0, 64))]
        once = free_reduce(letters)
        assert free_reduce(once.letters) == once


def test_invert_examples():
    assert invert(w("a b'")) == w("b a'")
    assert invert(GroupWord()) == GroupWord()
    assert invert(w("c c c")) == w("c' c' c'")


def test_invert_involution_and_antihomomorphism():
    rng = random.Random(998)
    gens = [A, B, C]
    for _ in range(200):
        u = free_reduce(Letter(rng.choice(gens), rng.choice((1, -1))) for _ in range(rng.randint(0, 20)))
        v = free_reduce(Letter(rng.choice(gens), rng.choice((1, -1))) for _ in range(rng.randint(0, 20)))
        assert invert(invert(u)) == u
        assert invert(u * v) == invert(v) * invert(u)


def test_power_word():
    assert power_word(C, 3) == w("c c c")
    assert power_word(A, 1) == w("a")
    assert power_word(D, 2) == w("d d")
    with pytest.raises(ValueError):
        power_word(A, 0)
    with pytest.raises(ValueError):
        power_word(A, -2)


def test_act_examples():
    ae = QuandleExpr(A, GroupWord())
    be = QuandleExpr(B, GroupWord())
    assert act(ae, be, 1) == QuandleExpr(A, w("b"))
    x = QuandleExpr(A, w("c"))
    y = QuandleExpr(B, w("d"))
    assert act(x, y, 1) == QuandleExpr(A, w("c d' b d"))
    assert act(x, y, -1) == QuandleExpr(A, w("c d' b' d"))


def test_act_inverse_cancels():
    x = QuandleExpr(A, w("c b"))
    y = QuandleExpr(B, w("d c"))
    assert act(act(x, y, 1), y, -1) == x
    assert act(act(x, y, -1), y, 1) == x


THETA = """
gens: a b c
edges: a:1 b:2 c:3
labels: 3 3 2
rel * : a b c
"""


@pytest.mark.parametrize("labels", [(2, 2, 2), (3, 3, 2)])
def test_act_agrees_with_cayley_graph(labels):
    """Evaluating expressions letter-by-letter on the Cayley graph matches
    evaluating act-normalized expressions, exhaustively over elements of
    quandles with at most 64 elements."""
    pres = expand_relations(parse_presentation(THETA).with_labels(labels))
    graph = enumerate_quandle(pres, EnumerationLimits(10000, 10**8)).graph
    table = quandle_table(graph)
    order = graph.live_vertices()
    index = {v: i for i, v in enumerate(order)}
    assert len(order) <= 64

    # one expression per element, found by breadth-first search
    exprs = {}
    queue = []
    for gen in pres.generators:
        v = graph.find(graph.basepoint[gen.id])
        if v not in exprs:
            exprs[v] = QuandleExpr(gen, GroupWord())
            queue.append(v)
    while queue:
        v = queue.pop(0)
        for gen in pres.generators:
            for sign in (1, -1):
                nxt = graph.action(gen.id, v, sign)
                if nxt not in exprs:
                    exprs[nxt] = QuandleExpr(
                        exprs[v].base, exprs[v].exponent * GroupWord([Letter(gen, sign)])
                    )
                    queue.append(nxt)
    assert len(exprs) == len(order)

    for xv, xe in exprs.items():
        for yv, ye in exprs.items():
            for sign in (1, -1):
                via_act = graph.evaluate(act(xe, ye, sign))
                if sign > 0:
                    via_table = order[table[index[xv], index[yv]]]
                else:
                    col = table[:, index[yv]]
                    via_table = order[int((col == index[xv]).nonzero()[0][0])]
                assert via_act == via_table


def test_parse_word_syntax():
    assert parse_word("(ab)^3", SYMS) == w("a b a b a b")
    assert parse_word("c^2", SYMS) == w("c c")
    assert parse_word("(ab)^-1", SYMS) == w("b' a'")
    assert parse_word("a'", SYMS) == GroupWord([Letter(A, -1)])
    assert parse_word("  a  b'c ", SYMS) == w("a b' c")
    assert parse_word("(a b)^0", SYMS) == GroupWord()
    assert parse_word("a''", SYMS) == w("a")


@pytest.mark.parametrize("bad", ["(ab", "ab)", "x", "a^", "a^-", "(a)^x"])
def test_parse_word_errors(bad):
    with pytest.raises(ParseError):
        parse_word(bad, SYMS)
