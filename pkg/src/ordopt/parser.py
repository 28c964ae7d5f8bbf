
"""
Parser for sweep value expressions.

Two forms are accepted:

    1,2,5                 an explicit list
    0.1:0.9:9[:linear]    ``steps`` points from ``start`` to ``stop``
    100:100000:4:log      the same, spaced geometrically

The grammar is handled by lark; :func:`parse_values` returns either a
:class:`ValueList` or a :class:`ValueRange`.
"""

from dataclasses import dataclass
from typing import List, Literal, Sequence, Tuple, Union

from lark import Lark, Token, Transformer
from lark.exceptions import LarkError

from .user_error import UsageError


GRAMMAR = r"""
start: value_range | value_list

value_list: number ("," number)*
value_range: number ":" number ":" number (":" SCALE)?

number: SIGNED_NUMBER

SCALE: "linear" | "log"

%import common.SIGNED_NUMBER
%import common.WS
%ignore WS
"""

Scale = Literal["linear", "log"]


@dataclass(frozen=True)
class ValueList:
    values: Tuple[float, ...]


@dataclass(frozen=True)
class ValueRange:
    start: float
    stop: float
    steps: int
    scale: Scale


SweepValues = Union[ValueList, ValueRange]


class _ValuesTransformer(Transformer[Token, SweepValues]):
    def number(self, items: Sequence[Token]) -> float:
        return float(items[0].value)

    def value_list(self, items: Sequence[float]) -> ValueList:
        return ValueList(tuple(items))

    def value_range(self, items: Sequence[Union[float, Token]]) -> ValueRange:
        start, stop, steps = items[0], items[1], items[2]
        assert isinstance(start, float) and isinstance(stop, float)
        assert isinstance(steps, float)
        if steps != int(steps):
            raise UsageError("Sweep step count must be an integer, got %r." % steps)
        scale: Scale = "linear"
        if len(items) > 3:
            tok = items[3]
            assert isinstance(tok, Token)
            scale = "log" if tok.value == "log" else "linear"
        return ValueRange(start, stop, int(steps), scale)

    def start(self, items: List[SweepValues]) -> SweepValues:
        return items[0]


_parser = Lark(
    GRAMMAR,
    parser="lalr",
    propagate_positions=False,
    maybe_placeholders=False,
)


def parse_values(text: str) -> SweepValues:
    try:
        tree = _parser.parse(text)
    except LarkError as ex:
        raise UsageError("Cannot parse sweep values %r: expected a list like '1,2,5' "
                         "or a range like 'start:stop:steps[:linear|log]'." % text) from ex
    # UsageError derives from BaseException, so lark does not wrap it.
    return _ValuesTransformer().transform(tree)
