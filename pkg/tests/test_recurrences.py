import pytest

from skeinlab import recurrences as R
from skeinlab.generators import borromean, generate
from skeinlab.kauffman import bracket
from skeinlab.laurent import parse

DELTA = parse("-A^2 - A^-2")


def test_hopf_chain_closed_and_recursive():
    assert R.kb_hopfchain(1) == parse("1")
    assert R.kb_hopfchain(2) == parse("-A^4 - A^-4")
    for n in range(1, 10):
        assert R.kb_hopfchain(n) == R.kb_hopfchain_recursive(n) == parse("-A^4 - A^-4") ** (n - 1)


def test_hopf_ring_values():
    assert R.kb_hopfring(1) == parse("A^-6")
    assert R.kb_hopfring(2) == parse("-A^6 - A^-2 + A^-6 - A^-10")
    for n in range(1, 13):
        assert R.kb_hopfring(n) == R.kb_hopfring_closed(n)


def test_double_hopf_bases():
    assert R.kb_dblhopfchain(2) == DELTA
    assert R.kb_dblhopfchain(4) == parse("-A^14 - A^6 - 2A^2 - 2A^-2 - A^-6 - A^-14")
    assert R.kb_dblhopfhalfring(3) == parse("A^16 + A^8 + 2")
    assert R.kb_dblhopfring(2) == parse("-A^18 - A^10 + A^6 - A^2")


def test_double_hopf_frozen_values():
    # frozen from diagram evaluation
    assert R.kb_dblhopfchain(6) == parse(
        "-A^26 - A^18 - 3A^14 - A^10 - 4A^6 - 6A^2 - 6A^-2 - 4A^-6 - A^-10 - 3A^-14 - A^-18 - A^-26")
    assert R.kb_dblhopfhalfring(5) == parse(
        "A^28 + 2A^16 + A^8 + 2A^4 + 3 + 3A^-4 + 2A^-12 + A^-16 + A^-24")
    assert R.kb_dblhopfring(4) == parse(
        "-A^30 + A^26 - A^22 - A^14 - 2A^2 - A^-2 - A^-6 - A^-14 - A^-22")
    assert R.kb_dblhopfring(6) == parse(
        "-A^42 + 2A^38 - 2A^34 - 2A^30 + 2A^26 - A^22 - 3A^14 - A^10 - 4A^6 - 6A^2 - 4A^-2"
        " - 4A^-6 - 3A^-10 - 3A^-14 - 2A^-22 + A^-30 - A^-34")


def test_double_hopf_displayed_variants_differ_from_diagrams():
    # the printed index-4 ring value and the printed half-ring formula disagree with diagrams
    assert R.kb_dblhopfring(4, displayed=True) == R.DBLHOPFRING_4_DISPLAYED
    assert R.kb_dblhopfring(4, displayed=True) != bracket(generate("dbl_hopf_ring", 4))
    assert R.kb_dblhopfhalfring(5, displayed=True) != bracket(generate("dbl_hopf_half_ring", 5))
    # evaluated at A = 1 a 5-component link must give delta^4 = 16
    assert R.kb_dblhopfhalfring(5).coefficient_sum() == 16
    assert R.kb_dblhopfhalfring(5, displayed=True).coefficient_sum() != 16


def test_brunnian_chain_bases():
    assert R.kb_brunnianchain(2) == parse("-A^4 - A^-4")
    assert R.kb_brunnianchaindblleft(3) == parse("-A^4 - A^-4") ** 2
    assert R.kb_brunnianchaindblends(4) == R.kb_dblhopfchain(4)
    assert R.kb_brunnianchain(3) == bracket(borromean())


def test_half_ring_bases_and_mirror():
    plus, minus = R.kb_brunnianhalfring(3, "plus"), R.kb_brunnianhalfring(3, "-")
    assert plus == parse("2 + A^-8 + A^-16")
    assert minus == parse("A^16 + A^8 + 2")
    assert minus == plus.substitute_inverse()


def test_brunnian_ring_values():
    assert R.kb_brunnianring(1) == parse("1")
    assert R.kb_brunnianring(2) == parse(
        "-A^22 + 2A^18 - 2A^14 + 3A^10 - 2A^6 - A^2 - A^-2 - 2A^-6 + 3A^-10 - 2A^-14 + 2A^-18 - A^-22")
    assert R.kb_brunnianring(2, displayed=True) == parse("A^4 + 2 + A^-4")
    # a 2-component link evaluates to delta at A = 1, i.e. -2; the printed seed gives 4
    assert R.kb_brunnianring(2).coefficient_sum() == -2
    assert R.kb_brunnianring(2, displayed=True).coefficient_sum() == 4


def test_brunnian_ring_displayed_forms_agree():
    # both spellings of the loop value, and both spellings of the printed seed
    assert parse("-A^-2 - A^2") == DELTA
    assert R.BR_RING_UNLINK == -(parse("-A^-2 - A^2") ** 4) + 3 * parse("-A^-2 - A^2") ** 2 + 5
    assert parse("A^4 + 2 + A^-4") == DELTA ** 2
    assert R.BR_RING_UNLINK.coefficient_sum() == -16 + 12 + 5


@pytest.mark.parametrize("n", range(1, 7))
def test_l2_single_entry_is_hopf_ring(n):
    assert R.kb_l2hopfchain([n]) == R.kb_hopfring(n)


def test_l2_zero_entries_delegate():
    assert R.kb_l2hopfchain([0, 0]) == R.kb_dblhopfchain(4)
    assert R.kb_l2hopfring([0, 0, 0]) == R.kb_dblhopfring(6)


def test_l2_ring_rotation_invariance():
    for hand in ("same", "opposite"):
        assert R.kb_l2hopfring([1, 2, 3], hand) == R.kb_l2hopfring([2, 3, 1], hand)


def test_l2_errors():
    with pytest.raises(ValueError):
        R.kb_l2hopfchain([])
    with pytest.raises(ValueError):
        R.kb_l2hopfring([1, -1])


def test_index_errors():
    for fn, bad in [(R.kb_hopfchain, 0), (R.kb_dblhopfchain, 3), (R.kb_dblhopfhalfring, 4),
                    (R.kb_dblhopfring, 5), (R.kb_brunnianhalfring, 2)]:
        with pytest.raises(ValueError):
            fn(bad) if fn is not R.kb_brunnianhalfring else fn(bad, "plus")


def test_all_values_have_whole_powers():
    vals = [R.kb_hopfring(5), R.kb_dblhopfring(8), R.kb_brunnianring(4), R.kb_brunnianhalfring(6, "+"),
            R.kb_l2hopfring([2, 3])]
    for v in vals:
        assert all(e % 2 == 0 for e in v.terms)


def test_l2brunnian_single_entries():
    for n in range(2, 6):
        c = R.l2brunnian_reduce([n])
        assert not c.terms and c.scalar == R.kb_brunnianring(n)
    c = R.l2brunnian_reduce(["4+"])
    assert not c.terms and c.scalar == R.kb_brunnianhalfring(4, "+")


def test_l2brunnian_one_rule():
    c = R.l2brunnian_reduce([1, 2])
    c = R.l2brunnian_reduce([1, 0])
    assert set(c.terms) == {((0, ""), (0, "")), ((0, "+"), (0, ""))}
    assert c.terms[((0, ""), (0, ""))] == R.ONE_RULE[0]
    assert c.terms[((0, "+"), (0, ""))] == parse("A^10 + A^6 - 2A^2 - 2A^-2 + A^-6 + A^-10")


def test_l2brunnian_three_plus_rule():
    c = R.l2brunnian_reduce(["3+", "0+"])
    assert set(c.terms) == {((0, "+"), (0, "+"))}
    assert c.terms[((0, "+"), (0, "+"))] == parse("A^10 - A^6 + A^2 - A^-6 + A^-10 - A^-14")
    assert c.scalar == parse("A^12 + 3 - A^-4 + A^-8") * DELTA * DELTA


def test_l2brunnian_terminates_on_bases():
    c = R.l2brunnian_reduce([3, "4-", 2])
    for key in c.terms:
        assert all(n == 0 for n, _ in key)
    assert str(c) != "0"
    assert c.to_json()["terms"]
