"""Truth tables for FOUR and J3, transcribed cell by cell.

Rows are v(a), columns v(b), both in the order f, t, top, bot.
"""

NOT_FOUR = {"f": "t", "t": "f", "top": "top", "bot": "bot"}

OR_FOUR = {
    "f":   {"f": "f",   "t": "t", "top": "top", "bot": "bot"},
    "t":   {"f": "t",   "t": "t", "top": "t",   "bot": "t"},
    "top": {"f": "top", "t": "t", "top": "top", "bot": "t"},
    "bot": {"f": "bot", "t": "t", "top": "t",   "bot": "bot"},
}

AND_FOUR = {
    "f":   {"f": "f", "t": "f",   "top": "f",   "bot": "f"},
    "t":   {"f": "f", "t": "t",   "top": "top", "bot": "bot"},
    "top": {"f": "f", "t": "top", "top": "top", "bot": "f"},
    "bot": {"f": "f", "t": "bot", "top": "f",   "bot": "bot"},
}

NOT_J3 = {"f": "t", "t": "f", "top": "top"}

OR_J3 = {
    "f":   {"f": "f",   "t": "t", "top": "top"},
    "t":   {"f": "t",   "t": "t", "top": "t"},
    "top": {"f": "top", "t": "t", "top": "top"},
}

AND_J3 = {
    "f":   {"f": "f", "t": "f",   "top": "f"},
    "t":   {"f": "f", "t": "t",   "top": "top"},
    "top": {"f": "f", "t": "top", "top": "top"},
}


def table_cells(kind):
    """Yield (formula text, assignment, expected value) for every cell."""
    tables = {"four": (NOT_FOUR, OR_FOUR, AND_FOUR), "j3": (NOT_J3, OR_J3, AND_J3)}[kind]
    neg, disj, conj = tables
    for a, out in neg.items():
        yield "!a", {"a": a}, out
    for symbol, table in (("|", disj), ("&", conj)):
        for a, row in table.items():
            for b, out in row.items():
                yield f"a {symbol} b", {"a": a, "b": b}, out


# (premises, conclusion, expected) for the Nixon diamond relations.
NIXON_CLASSICAL = [
    (["r"], "!p", True),
    (["r", "p"], "!p", False),
    (["q"], "p", True),
    (["q", "!p"], "p", False),
]

NIXON_FOUR = [
    (["r"], "!p", True),
    (["r", "p"], "!p", False),
    (["q"], "p", True),
    (["q", "!p"], "p", False),
    (["p", "!p", "q"], "p", True),
    (["p", "!p", "q"], "!p", True),
    (["p", "!p", "q"], "q", True),
    (["p", "!p", "q"], "!q", False),
    (["q", "r"], "p", True),
    (["q", "r"], "!p", True),
    (["q", "r"], "q", True),
    (["q", "r"], "!q", False),
    (["q", "r"], "r", True),
    (["q", "r"], "!r", False),
    (["!r", "r | q"], "q", False),
]

NIXON_FOUR_DISCRIMINATIVE = [
    (["p", "!p", "q"], "p", False),
    (["p", "!p", "q"], "!p", False),
    (["p", "!p", "q"], "q", True),
]
