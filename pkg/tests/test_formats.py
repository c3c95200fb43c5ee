import pytest

from mudsim.errors import ParseError
from mudsim.formats import (
    format_dfa,
    format_setparity,
    format_symindex,
    parse_dfa,
    parse_ints,
    parse_setparity,
    parse_symindex,
)
from mudsim.simulator import keep_first_dfa, parity_dfa, sum_mod_dfa

SUM_MOD_3 = """\
# sum of the input mod 3
states: 0 1 2
alphabet: 0 1 2
n: 4
delta:
0 0 -> 0
0 1 -> 1
0 2 -> 2
1 0 -> 1
1 1 -> 2
1 2 -> 0
2 0 -> 2
2 1 -> 0
2 2 -> 1
eta:
0 -> 0
1 -> 1
2 -> 2
"""


def test_parse_ints():
    assert parse_ints("3 7\n\n 2 # trailing\n-4") == [3, 7, 2, -4]
    with pytest.raises(ParseError, match="line 2"):
        parse_ints("1\nx\n")


def test_setparity_roundtrip():
    recs = parse_setparity("0 1\n 3 0\n")
    assert recs == [(0, 1), (3, 0)]
    assert parse_setparity(format_setparity(recs)) == recs
    with pytest.raises(ParseError, match="line 2"):
        parse_setparity("0 1\n1 2\n")
    with pytest.raises(ParseError, match="line 1"):
        parse_setparity("0 1 1\n")


def test_symindex_roundtrip():
    recs = parse_symindex("a 1 0 2\nb 2 1 1\n")
    assert recs == [("a", 1, 0, 2), ("b", 2, 1, 1)]
    assert parse_symindex(format_symindex(recs)) == recs
    with pytest.raises(ParseError, match="line 1"):
        parse_symindex("c 1 0 2\n")


def test_parse_dfa():
    dfa = parse_dfa(SUM_MOD_3)
    assert dfa.states == ("0", "1", "2") and dfa.n == 4
    assert dfa.f(["1", "2", "2", "1"]) == "0"


@pytest.mark.parametrize("dfa", [parity_dfa(3), sum_mod_dfa(3, 5), keep_first_dfa([0, 1], 2)], ids=repr)
def test_dfa_roundtrip_preserves_function(dfa):
    text = format_dfa(dfa)
    back = parse_dfa(text)
    assert len(back.states) == len(dfa.states) and back.n == dfa.n
    assert back.f([str(a) for a in [dfa.alphabet[0]] * dfa.n]) == str(dfa.f([dfa.alphabet[0]] * dfa.n))


def test_malformed_delta_row_reports_line():
    bad = SUM_MOD_3.replace("1 1 -> 2", "1 1 2")
    with pytest.raises(ParseError, match="line 10"):
        parse_dfa(bad)
    unknown = SUM_MOD_3.replace("2 2 -> 1", "2 2 -> 7")
    with pytest.raises(ParseError, match="line 14"):
        parse_dfa(unknown)


def test_missing_header_and_partial_delta():
    with pytest.raises(ParseError, match="missing 'n:'"):
        parse_dfa(SUM_MOD_3.replace("n: 4\n", ""))
    with pytest.raises(ParseError, match="not total"):
        parse_dfa(SUM_MOD_3.replace("2 2 -> 1\n", ""))
    with pytest.raises(ParseError, match="line 1"):
        parse_dfa("delta -> x\n")
