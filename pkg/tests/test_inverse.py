import pytest

from negbeta.analysis import analyze
from negbeta.dynamics import validate_expansion
from negbeta.errors import NegBetaError
from negbeta.inverse import construct_pi, construct_state, rho_of, y_digits
from negbeta.words import word, words_over


def test_rho_of_pure_integer_expansion():
    assert str(rho_of(word("(2)"))) == "21"


def test_rho_of_golden_expansion():
    assert str(rho_of(word("1(0)"))) == "312"


def test_rho_slots_the_last_rank_next_to_position_q():
    # for 21(0): tails order gives sigma = 321 and p+q = 4 is even, so the
    # final entry sits directly below the rank at position q
    rho = rho_of(word("21(0)"))
    q, p, _ = word("21(0)").padded_form()
    assert rho(p + q) == rho(q) - (-1) ** (p + q)
    assert str(rho) == "4321"


def test_rho_rank_rule_holds_generally():
    for w in ["(2)", "1(0)", "21(0)", "(21)", "211(210)"]:
        w = word(w)
        q, p, _ = w.padded_form()
        rho = rho_of(w)
        assert rho(p + q) == rho(q) - (-1) ** (p + q)


def test_y_digits_for_constant_expansion():
    w = word("(2)")
    assert y_digits(w, rho_of(w), vacuous_bonus=False) == (0, 2)
    assert y_digits(w, rho_of(w), vacuous_bonus=True) == (0, 3)


def test_y_digits_for_golden():
    w = word("1(0)")
    assert y_digits(w, rho_of(w), vacuous_bonus=False) == (1, 1, 0)


def test_construct_pure_two():
    state = construct_state(word("(2)"))
    assert str(state.result) == "1243"
    assert state.c == 2 and not state.vacuous_bonus
    assert analyze(state.result).b_minus.exact == 2


def test_construct_golden():
    pi = construct_pi(word("1(0)"))
    assert str(pi) == "14523"
    assert analyze(pi).a == word("1(0)")


def test_construct_tribonacci_like():
    pi = construct_pi(word("21(0)"))
    assert analyze(pi).b_decimal(3) == "2.247"
    assert analyze(pi).a == word("21(0)")


def test_construct_rejects_non_expansions():
    with pytest.raises(NegBetaError):
        construct_pi(word("(10)"))


def test_proof_stage_identities_on_small_corpus():
    from negbeta.permutations import landmarks

    corpus = [w for w in words_over(3, 2, 3)
              if _safe_validate(w)]
    assert corpus
    for w in corpus:
        state = construct_state(w, check_expansion=False)
        q, p, _ = w.padded_form()
        lm = landmarks(state.result)
        rho_inv = state.rho.inverse()
        assert lm.m == state.c + rho_inv[p + q - 1]
        pi = state.result
        assert pi(pi.n) == pi(state.c + q) - (-1) ** (p + q)


def test_every_s4_threshold_is_reconstructed():
    # each base occurring as a length-4 threshold comes back from its own
    # expansion of 1 through the inverse construction
    from negbeta.analysis import analyze, spectrum
    from negbeta.dynamics import BetaValue, expansion_of_one

    for group in spectrum(4):
        if group.value == 1:
            continue
        beta = (BetaValue.from_rational(group.value.exact) if group.value.is_rational()
                else BetaValue.from_algebraic(group.value))
        d1 = expansion_of_one(beta).word
        assert d1 is not None
        pi = construct_pi(d1)
        r = analyze(pi)
        assert r.b_minus != 1 and group.value.equals(r.b_minus)


def test_literal_reading_has_an_uncovered_configuration():
    # the printed insertion display does not cover (31): difference two,
    # successor rank above, empty range; the certified vector resolves it
    w = word("(31)")
    with pytest.raises(NegBetaError):
        y_digits(w, rho_of(w), strict=True)
    assert y_digits(w, rho_of(w), strict=False) == (3, 1, 0)


def _safe_validate(w):
    from negbeta.errors import NegBetaError

    try:
        return validate_expansion(w)
    except NegBetaError:
        return False
