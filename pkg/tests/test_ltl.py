import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polytrace.ltl import (
    FALSE,
    TRUE,
    Always,
    And,
    Atom,
    Eventually,
    FormulaSyntaxError,
    Implies,
    Not,
    Or,
    UnknownAtomError,
    Until,
    atoms,
    depth,
    lasso_check,
    parse_formula,
)
from oracles import ltl_oracle as oracle
from polytrace.trace_gen import LassoWord

a, b, c = Atom("a"), Atom("b"), Atom("c")


def L(*letters):
    return tuple(frozenset(x.split()) if isinstance(x, str) else frozenset(x) for x in letters)


class TestParser:
    def test_examples(self):
        assert parse_formula("G (g2 -> g3)") == Always(Implies(Atom("g2"), Atom("g3")))
        assert parse_formula("g1") == Atom("g1")
        assert parse_formula("F (g2 & F G g1)") == Eventually(And(Atom("g2"), Eventually(Always(Atom("g1")))))

    def test_precedence(self):
        assert parse_formula("a | b & c") == Or(a, And(b, c))
        assert parse_formula("a -> b -> c") == Implies(a, Implies(b, c))
        assert parse_formula("a U b U c") == Until(a, Until(b, c))
        assert parse_formula("a & b U c") == And(a, Until(b, c))
        assert parse_formula("!a U b") == Until(Not(a), b)
        assert parse_formula("G a -> F b") == Implies(Always(a), Eventually(b))
        assert parse_formula("(a | b) & c") == And(Or(a, b), c)
        assert parse_formula("true U false") == Until(TRUE, FALSE)

    def test_comments_and_whitespace(self):
        assert parse_formula("# contact\n  G !g4  # never\n") == Always(Not(Atom("g4")))

    def test_round_trip_through_str(self):
        for text in ["G (g2 -> g3)", "F (g2 & F G g1)", "a U (b | !c)", "(a -> b) -> c", "!(a U b)"]:
            f = parse_formula(text)
            assert parse_formula(str(f)) == f

    @pytest.mark.parametrize("text", ["", "a &", "(a", "a)", "a b", "G", "a -> ", "a $ b", "U a", "a X b"])
    def test_errors(self, text):
        with pytest.raises(FormulaSyntaxError) as info:
            parse_formula(text)
        assert info.value.pos >= 0

    def test_error_mentions_position(self):
        with pytest.raises(FormulaSyntaxError) as info:
            parse_formula("G (a & )")
        assert info.value.pos == 7

    def test_atoms_and_depth(self):
        f = parse_formula("F (g2 & F G g1)")
        assert atoms(f) == {"g1", "g2"}
        assert depth(f) == 4
        assert depth(a) == 0

    def test_operators(self):
        assert (a & b) == And(a, b)
        assert (a | b) == Or(a, b)
        assert ~a == Not(a)


class TestLassoCheck:
    def test_examples(self):
        assert lasso_check(((), L("a")), Always(a)).satisfied
        w = (L(""), L("a"))
        assert lasso_check(w, parse_formula("F G a")).satisfied
        assert not lasso_check(w, parse_formula("G a")).satisfied

    def test_until_is_non_strict(self):
        assert lasso_check(((), L("b")), Until(a, b)).satisfied
        assert not lasso_check(((), L("a")), Until(a, b)).satisfied
        assert lasso_check((L("a", "a"), L("b")), Until(a, b)).satisfied
        assert not lasso_check((L("a", ""), L("b")), Until(a, b)).satisfied

    def test_until_wraps_around_loop(self):
        # witness for b only reachable by wrapping from the loop end
        w = (L(), L("b", "a", "a"))
        v = lasso_check(w, Until(a, b))
        assert v.per_position == (True, True, True)
        assert lasso_check((L(), L("b", "", "a")), Until(a, b)).per_position == (True, False, True)

    def test_verdict_matches_position_zero(self):
        v = lasso_check((L("a"), L("b")), Eventually(b))
        assert v.satisfied == v.per_position[0]
        assert len(v.per_position) == 2

    def test_lasso_word_input(self):
        w = LassoWord(L("a"), L("b"))
        assert lasso_check(w, parse_formula("a & F G b")).satisfied

    def test_unknown_atom(self):
        with pytest.raises(UnknownAtomError):
            lasso_check(((), L("a")), parse_formula("G z"), alphabet=["a"])

    def test_empty_loop(self):
        with pytest.raises(ValueError):
            lasso_check((L("a"), ()), a)

    def test_mission_trace(self):
        g = {k: Atom(f"g{k}") for k in range(1, 18)}
        prefix = L(
            "g1 g3 g13", "g1 g3", "g3", "g3 g7", "g3 g5 g7", "g3 g7", "g3", "g2 g3", "g3"
        )
        loop = L("g1 g3")

        def any_of(ids):
            f = g[ids[0]]
            for k in ids[1:]:
                f = Or(f, g[k])
            return f

        phi_c = Always(Implies(g[2], g[3]))
        phi_g = Eventually(And(g[2], Eventually(Always(g[1]))))
        phi_i = Not(any_of([4, 6, 8, 10, 12, 14, 16]))
        phi_o = Not(any_of([5, 7, 9, 11, 13, 15, 17]))
        phi_d = Always(Implies(g[2], Always(phi_o)))
        phi = And(And(And(phi_c, phi_g), Always(phi_i)), phi_d)
        alphabet = [f"g{k}" for k in range(1, 18)]
        assert lasso_check((prefix, loop), phi, alphabet=alphabet).satisfied
        # same mission written in the surface syntax
        text = (
            "G (g2 -> g3) & F (g2 & F G g1)"
            " & G !(g4 | g6 | g8 | g10 | g12 | g14 | g16)"
            " & G (g2 -> G !(g5 | g7 | g9 | g11 | g13 | g15 | g17))"
        )
        assert lasso_check((prefix, loop), parse_formula(text), alphabet=alphabet).satisfied
        # contact without the exterior letter breaks the contact clause
        broken = prefix[:7] + L("g2") + prefix[8:]
        assert not lasso_check((broken, loop), phi).satisfied


ATOMS = [Atom(x) for x in "pqrs"]


def formulas(max_depth=4):
    leaves = st.sampled_from(ATOMS + [TRUE, FALSE])

    def extend(children):
        return st.one_of(
            children.map(Not),
            children.map(Eventually),
            children.map(Always),
            st.tuples(children, children).map(lambda t: And(*t)),
            st.tuples(children, children).map(lambda t: Or(*t)),
            st.tuples(children, children).map(lambda t: Implies(*t)),
            st.tuples(children, children).map(lambda t: Until(*t)),
        )

    return st.recursive(leaves, extend, max_leaves=8).filter(lambda f: depth(f) <= max_depth)


letter_st = st.frozensets(st.sampled_from("pqrs"), max_size=4)
lasso_st = st.tuples(
    st.lists(letter_st, max_size=6).map(tuple),
    st.lists(letter_st, min_size=1, max_size=6).map(tuple),
)


@settings(max_examples=400, deadline=None)
@given(lasso_st, formulas())
def test_matches_oracle(word, f):
    v = lasso_check(word, f)
    n = len(word[0]) + len(word[1])
    assert v.per_position == tuple(oracle(word, f, i) for i in range(n))


@settings(max_examples=200, deadline=None)
@given(lasso_st, formulas(3))
def test_derived_operator_equivalences(word, f):
    assert lasso_check(word, Always(f)).per_position == lasso_check(word, Not(Eventually(Not(f)))).per_position
    assert lasso_check(word, Eventually(f)).per_position == lasso_check(word, Until(TRUE, f)).per_position


@settings(max_examples=200, deadline=None)
@given(st.lists(letter_st, min_size=1, max_size=6).map(tuple), formulas(), st.integers(0, 5))
def test_loop_rotation(loop, f, r):
    r %= len(loop)
    base = lasso_check(((), loop), f)
    rotated = lasso_check(((), loop[r:] + loop[:r]), f)
    assert rotated.satisfied == base.per_position[r]
    # unrolling part of the loop into the prefix describes the same word
    unrolled = lasso_check((loop[:r], loop[r:] + loop[:r]), f)
    assert unrolled.satisfied == base.satisfied


@settings(max_examples=200, deadline=None)
@given(lasso_st, formulas(), st.integers(0, 20))
def test_stutter_insensitive(word, f, k):
    prefix, loop = word
    if not prefix:
        return
    k %= len(prefix)
    stuttered = prefix[: k + 1] + prefix[k:]
    assert lasso_check((stuttered, loop), f).satisfied == lasso_check(word, f).satisfied


def test_many_random_pairs_fast():
    rng = random.Random(11)

    def rand_formula(d):
        if d == 0 or rng.random() < 0.25:
            return rng.choice(ATOMS[:3] + [TRUE])
        op = rng.randrange(7)
        if op < 3:
            return (Not, Eventually, Always)[op](rand_formula(d - 1))
        return (And, Or, Implies, Until)[op - 3](rand_formula(d - 1), rand_formula(d - 1))

    def rand_word():
        pick = lambda: frozenset(x for x in "pqr" if rng.random() < 0.4)  # noqa: E731
        return tuple(pick() for _ in range(rng.randint(0, 6))), tuple(pick() for _ in range(rng.randint(1, 6)))

    for _ in range(300):
        w, f = rand_word(), rand_formula(4)
        assert lasso_check(w, f).satisfied == oracle(w, f)
