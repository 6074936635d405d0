from collections import Counter

import pytest

from fixtures import CE4, CH7, ch7_gold, tup
from oiescore.model import Part, Token, TupleRecord, normalize, scored_bag, slot_order, tuple_length


def test_tuple_length_counts_every_part():
    g = ch7_gold().tuples[2]  # (his parents ; had to flee from ; hungary ; during world war ii)
    # 2 + 4 + 1 + 4 tokens, none inferred
    assert tuple_length(g, include_inferred=True) == 11
    assert tuple_length(g, include_inferred=False) == 11


def test_tuple_length_skips_inferred_words_on_request():
    g = ch7_gold().tuples[4]  # ([chilly] [gonzales] ; [has] ; parents)
    assert tuple_length(g, include_inferred=False) == 1
    assert tuple_length(g, include_inferred=True) == 4


def test_tuple_length_single_token_parts():
    t = TupleRecord("s", tuple(Part(s, (Token(w),)) for s, w in [("arg1", "a"), ("rel", "b"), ("arg2", "c")]))
    assert tuple_length(t, True) == 3


def test_scored_bag():
    rel = ch7_gold().tuples[2].part("rel")
    assert scored_bag(rel, True) == Counter({"had": 1, "to": 1, "flee": 1, "from": 1})

    in_2017 = tup(CE4, "advanced economies ; [advanced] ; 1.8 percent ; [in] 2017").part("arg3")
    assert scored_bag(in_2017, False) == Counter({"2017": 1})
    assert scored_bag(in_2017, True) == Counter({"in": 1, "2017": 1})

    p = Part("arg2", tuple(Token(normalize(w)) for w in "World War II war".split()))
    assert scored_bag(p, True)["war"] == 2


def test_scored_bag_of_missing_part_is_empty():
    assert scored_bag(None, True) == Counter()


def test_parts_are_kept_in_slot_order():
    t = TupleRecord("s", (Part("arg2", ()), Part("rel", ()), Part("arg1", ())))
    assert t.slots == ("arg1", "rel", "arg2")
    assert [slot_order(s) for s in ("arg1", "rel", "arg2", "arg5")] == [0, 1, 2, 5]


def test_duplicate_slots_rejected():
    with pytest.raises(ValueError):
        TupleRecord("s", (Part("rel", ()), Part("rel", ())))


def test_unknown_slot_rejected():
    with pytest.raises(ValueError):
        Part("subject", ())


def test_inferred_token_cannot_have_index():
    with pytest.raises(ValueError):
        Token("is", 3, inferred=True)


def test_normalize_composes_and_casefolds():
    assert normalize("Café") == "café"
    assert normalize("STRASSE") == normalize("straße")


def test_tuple_str_brackets_inferred_words():
    assert str(tup(CH7, "[chilly] [gonzales] ; [has] ; parents")) == "([chilly] [gonzales] ; [has] ; parents)"
