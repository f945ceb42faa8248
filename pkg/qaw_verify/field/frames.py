# Copyright (c) 2024-present, Royal Bank of Canada.
# All rights reserved.
#
# This source code is licensed under the license found in the
# LICENSE file in the root directory of this source tree.


import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, Tuple

from qaw_verify.field.monomial import ParamMonomial, monomial
from qaw_verify.field.point import PointEnv, eval_monomial


@dataclass(frozen=True)
class Frame:
    """
    A set of frame variables together with the relabelings that leave the
    studied expressions invariant.

    ``blocks`` are permuted independently of each other. ``solved`` lists
    variables eliminated by a constraint; they are never sampled, their values
    are computed from the free ones.
    """

    name: str
    variables: Tuple[str, ...]
    blocks: Tuple[Tuple[str, ...], ...] = ()
    solved: Tuple[Tuple[str, ParamMonomial], ...] = ()

    @property
    def free_variables(self) -> Tuple[str, ...]:
        solved = dict(self.solved)
        return tuple(name for name in self.variables if name not in solved)

    def relabelings(self) -> Iterator[Dict[str, str]]:
        choices = [[dict(zip(block, image)) for image in itertools.permutations(block)] for block in self.blocks]
        for combo in itertools.product(*choices):
            mapping = {}
            for part in combo:
                mapping.update(part)
            yield mapping

    def reduce(self, m: ParamMonomial) -> ParamMonomial:
        if not self.solved:
            return m
        return m.substitute(dict(self.solved))

    def complete(self, env: PointEnv) -> PointEnv:
        if not self.solved:
            return env
        return env.with_values(**{name: eval_monomial(expr, env) for name, expr in self.solved})

    def __str__(self) -> str:
        return self.name


BCDEF = Frame("BCDEF", ("b", "c", "d", "e", "f"), blocks=(("c", "d", "e", "f"),))
AW = Frame("AW", ("a1", "a2", "a3", "a4", "t"), blocks=(("a1", "a2", "a3", "a4"),))
# balancing condition q^(1-n) abc = def of a terminating balanced 4phi3
ABCDEF = Frame(
    "ABCDEF",
    ("a", "b", "c", "d", "e", "f"),
    blocks=(("a", "b", "c"), ("d", "e", "f")),
    solved=(("f", monomial(q=1, n=-1, a=1, b=1, c=1, d=-1, e=-1)),),
)

__frames__ = {frame.name: frame for frame in (BCDEF, AW, ABCDEF)}


def get_frame(name: str) -> Frame:
    try:
        return __frames__[name]
    except KeyError as e:
        raise ValueError(f"Unknown frame {name}") from e
