"""Named integer inequalities, kept with their evaluated value for certificates."""

import operator
from dataclasses import dataclass
from typing import Any

_RELATIONS = {
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
    "==": operator.eq,
}


@dataclass(frozen=True)
class Inequality:
    """`expression` evaluated to `value`, required to stand in `relation` to `bound`."""

    name: str
    expression: str
    value: int
    relation: str
    bound: int = 0

    def __post_init__(self) -> None:
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    @property
    def holds(self) -> bool:
        return _RELATIONS[self.relation](self.value, self.bound)

    def __str__(self) -> str:
        return f"{self.expression} = {self.value} {self.relation} {self.bound}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "expression": self.expression,
            "value": self.value,
            "relation": self.relation,
            "bound": self.bound,
            "holds": self.holds,
        }
