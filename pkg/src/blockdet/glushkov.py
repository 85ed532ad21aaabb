"""The Glushkov (position) automaton of a block regular expression."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .automaton import BlockAutomaton, Transition, to_json
from .syntax import Empty, MarkedExpression, RegexAst, mark, positions

INITIAL_STATE = "i"


@dataclass(frozen=True)
class GlushkovAutomaton:
    """A position automaton together with its state -> position table."""

    automaton: BlockAutomaton
    position_of_state: Mapping


def glushkov(expr: RegexAst | MarkedExpression) -> GlushkovAutomaton:
    """Build the position automaton: states are the positions plus a fresh
    initial, transitions follow First/Follow, finals are Last (and the
    initial when the expression is nullable)."""
    marked = expr if isinstance(expr, MarkedExpression) else mark(expr)
    if isinstance(marked.ast, Empty):
        raise ValueError("the empty expression has no Glushkov automaton here")
    table = positions(marked)
    name = {p: p.state_name() for p in marked.positions}
    states = {INITIAL_STATE, *name.values()}
    transitions = {
        Transition(INITIAL_STATE, p.block, name[p]) for p in table.first
    }
    for source, followers in table.follow.items():
        for p in followers:
            transitions.add(Transition(name[source], p.block, name[p]))
    finals = {name[p] for p in table.last}
    if table.nullable:
        finals.add(INITIAL_STATE)
    automaton = BlockAutomaton.make(
        states=states,
        initials={INITIAL_STATE},
        finals=finals,
        transitions=transitions,
        alphabet={p.block for p in marked.positions},
    )
    return GlushkovAutomaton(automaton, {name[p]: p for p in marked.positions})


def check_glushkov_shape(a: BlockAutomaton) -> bool:
    """Necessary conditions for being a Glushkov automaton: standard (one
    initial, never re-entered) and homogeneous (a state is always entered
    with the same label)."""
    if len(a.initials) != 1:
        return False
    (initial,) = a.initials
    entering: dict = {}
    for t in a.transitions:
        if t.target == initial:
            return False
        if entering.setdefault(t.target, t.label) != t.label:
            return False
    return True


def alphabetic_image(a: BlockAutomaton, mapping: Mapping) -> BlockAutomaton:
    """Relabel transitions through an injection of the used alphabet."""
    used = {t.label for t in a.transitions}
    missing = [b for b in used if b not in mapping]
    if missing:
        raise ValueError(f"mapping is not defined on {sorted(missing)}")
    images = [mapping[b] for b in used]
    if len(set(images)) != len(images):
        raise ValueError("mapping is not injective on the used alphabet")
    return BlockAutomaton.make(
        states=a.states,
        initials=a.initials,
        finals=a.finals,
        transitions={(t.source, mapping[t.label], t.target) for t in a.transitions},
    )


def glushkov_to_json(g: GlushkovAutomaton) -> dict:
    data = to_json(g.automaton)
    data["positions"] = {
        state: {"index": p.index, "block": p.block.letters}
        for state, p in sorted(g.position_of_state.items())
    }
    return data
