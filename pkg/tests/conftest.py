import pytest

from hbeq import AlphabetPair, Workspace, parse_program

P_TEXT = "a | b.\na :- b.\n"
Q_TEXT = "a :- not b.\nb :- not a.\na :- b.\n"


class Ex:
    """The running pair of two-atom programs over one shared workspace, with name-based helpers."""

    def __init__(self):
        self.ws = Workspace("ab")
        self.P = parse_program(P_TEXT, self.ws)
        self.Q = parse_program(Q_TEXT, self.ws)
        self.U = self.ws.mask("ab")

    def m(self, names: str) -> int:
        return self.ws.mask(names)

    def ab(self, heads: str, bodies: str) -> AlphabetPair:
        return AlphabetPair(self.m(heads), self.m(bodies))

    def prog(self, text: str):
        return parse_program(text, self.ws)

    def pairs(self, c):
        return {("".join(self.ws.names(x)), "".join(self.ws.names(y))) for x, y in c}


@pytest.fixture
def ex():
    return Ex()


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record():
    """Log one acceptance line, echo it, and fail the test if it did not pass."""
    def _record(number: int, ok: bool, detail: str):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
