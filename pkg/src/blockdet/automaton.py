"""Block automata and their core algebra.

Transition labels are blocks (non-empty words over the base alphabet); plain
automata are the width-1 case.  Automata are kept partial and trimmed: there
is no sink completion, and derived operations normalise the alphabet to the
labels actually used.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .syntax import BlockSymbol


@dataclass(frozen=True, order=True)
class Transition:
    source: str
    label: BlockSymbol
    target: str

    def __str__(self) -> str:
        return f"{self.source} -{self.label.letters}-> {self.target}"


@dataclass(frozen=True)
class BlockAutomaton:
    alphabet: frozenset
    states: frozenset
    initials: frozenset
    finals: frozenset
    transitions: frozenset

    def __post_init__(self):
        if not self.initials <= self.states:
            raise ValueError("initial states must be states")
        if not self.finals <= self.states:
            raise ValueError("final states must be states")
        for t in self.transitions:
            if t.source not in self.states or t.target not in self.states:
                raise ValueError(f"transition endpoints must be states: {t}")
            if t.label not in self.alphabet:
                raise ValueError(f"transition label not in the alphabet: {t}")

    @classmethod
    def make(
        cls,
        states: Iterable[str] = (),
        initials: Iterable[str] = (),
        finals: Iterable[str] = (),
        transitions: Iterable = (),
        alphabet: Iterable | None = None,
    ) -> "BlockAutomaton":
        """Build an automaton, coercing (source, label, target) triples."""
        coerced = frozenset(_coerce_transition(t) for t in transitions)
        used = frozenset(t.label for t in coerced)
        if alphabet is None:
            full = used
        else:
            full = frozenset(
                b if isinstance(b, BlockSymbol) else BlockSymbol(b) for b in alphabet
            ) | used
        return cls(full, frozenset(states), frozenset(initials), frozenset(finals), coerced)

    @property
    def width(self) -> int:
        return max((b.width for b in self.alphabet), default=0)

    def sorted_transitions(self) -> list[Transition]:
        return sorted(self.transitions)


def _coerce_transition(t) -> Transition:
    if isinstance(t, Transition):
        return t
    source, label, target = t
    if not isinstance(label, BlockSymbol):
        label = BlockSymbol(label)
    return Transition(source, label, target)


EMPTY_AUTOMATON = BlockAutomaton.make()


def fresh_name(used: Iterable[str], base: str) -> str:
    """Return ``base`` primed until it avoids every name in ``used``."""
    taken = set(used)
    name = base
    while name in taken:
        name += "'"
    return name


def _adjacency(a: BlockAutomaton) -> dict:
    out: dict = {q: [] for q in a.states}
    for t in a.sorted_transitions():
        out[t.source].append(t)
    return out


# --- acceptance and enumeration ----------------------------------------------


def accepts(a: BlockAutomaton, word: str) -> bool:
    """True iff the word factors into transition labels along an accepting path."""
    adjacency = _adjacency(a)
    seen = {(q, 0) for q in a.initials}
    agenda = list(seen)
    while agenda:
        state, pos = agenda.pop()
        if pos == len(word) and state in a.finals:
            return True
        for t in adjacency[state]:
            end = pos + t.label.width
            if end <= len(word) and word.startswith(t.label.letters, pos):
                step = (t.target, end)
                if step not in seen:
                    seen.add(step)
                    agenda.append(step)
    return False


def enumerate_words(a: BlockAutomaton, maxlen: int) -> list[str]:
    """Accepted words over the base alphabet up to ``maxlen`` letters,
    in length-then-lexicographic order."""
    if maxlen < 0:
        raise ValueError("maxlen must be >= 0")
    flat = expand_blocks(a)
    adjacency = _adjacency(flat)
    letters = sorted(b.letters for b in flat.alphabet)
    out: list[str] = []
    level: dict[str, frozenset] = {"": frozenset(flat.initials)}
    for _ in range(maxlen + 1):
        for word in sorted(level):
            if level[word] & flat.finals:
                out.append(word)
        nxt: dict[str, set] = {}
        for word, reached in level.items():
            for letter in letters:
                targets = {
                    t.target
                    for q in reached
                    for t in adjacency[q]
                    if t.label.letters == letter
                }
                if targets:
                    nxt.setdefault(word + letter, set()).update(targets)
        level = {w: frozenset(s) for w, s in nxt.items()}
        if not level:
            break
    return out


# --- trimming, standardization, expansion --------------------------------------


def trim(a: BlockAutomaton) -> BlockAutomaton:
    """Drop states that are not both accessible and co-accessible."""
    forward = _reachable(a.transitions, a.initials, reverse=False)
    backward = _reachable(a.transitions, a.finals, reverse=True)
    keep = forward & backward
    return BlockAutomaton.make(
        states=keep,
        initials=a.initials & keep,
        finals=a.finals & keep,
        transitions=[t for t in a.transitions if t.source in keep and t.target in keep],
    )


def _reachable(transitions, seeds, reverse: bool) -> set:
    edges: dict = {}
    for t in transitions:
        src, dst = (t.target, t.source) if reverse else (t.source, t.target)
        edges.setdefault(src, []).append(dst)
    seen = set(seeds)
    agenda = list(seeds)
    while agenda:
        q = agenda.pop()
        for nxt in edges.get(q, ()):
            if nxt not in seen:
                seen.add(nxt)
                agenda.append(nxt)
    return seen


def standardize(a: BlockAutomaton) -> BlockAutomaton:
    """Give the automaton a single initial state without incoming transitions.

    Follows the textbook construction: a fresh initial copies every transition
    leaving an old initial state, and is final iff some old initial was.
    States made unreachable are dropped.
    """
    start = fresh_name(a.states, "i'")
    copied = {
        Transition(start, t.label, t.target)
        for t in a.transitions
        if t.source in a.initials
    }
    transitions = set(a.transitions) | copied
    finals = set(a.finals)
    if a.initials & a.finals:
        finals.add(start)
    reachable = _reachable(transitions, {start}, reverse=False)
    return BlockAutomaton.make(
        states=reachable,
        initials={start},
        finals={q for q in finals if q in reachable},
        transitions=[t for t in transitions if t.source in reachable],
    )


def expand_blocks(a: BlockAutomaton) -> BlockAutomaton:
    """Replace every block transition by a chain of width-1 transitions."""
    if a.width <= 1:
        return a
    states = set(a.states)
    transitions: list[tuple[str, str, str]] = []
    counter = 0
    for t in a.sorted_transitions():
        letters = t.label.letters
        if len(letters) == 1:
            transitions.append((t.source, letters, t.target))
            continue
        previous = t.source
        for offset, letter in enumerate(letters):
            last = offset == len(letters) - 1
            if last:
                nxt = t.target
            else:
                nxt = fresh_name(states, f"@{counter}")
                counter += 1
                states.add(nxt)
            transitions.append((previous, letter, nxt))
            previous = nxt
    return BlockAutomaton.make(
        states=states,
        initials=a.initials,
        finals=a.finals,
        transitions=transitions,
    )


# --- determinization and minimization -------------------------------------------


def is_deterministic(a: BlockAutomaton) -> bool:
    """Single initial state and at most one transition per (state, label)."""
    if len(a.initials) != 1:
        return False
    seen = set()
    for t in a.transitions:
        key = (t.source, t.label)
        if key in seen:
            return False
        seen.add(key)
    return True


def determinize(a: BlockAutomaton) -> BlockAutomaton:
    """Subset construction; result is deterministic and trimmed."""
    if a.width > 1:
        raise ValueError("determinize expects a width-1 automaton; expand blocks first")
    if not a.initials:
        return EMPTY_AUTOMATON
    adjacency = _adjacency(a)
    letters = sorted(a.alphabet)
    start = frozenset(a.initials)
    subsets = [start]
    seen = {start}
    moves: list[tuple[frozenset, BlockSymbol, frozenset]] = []
    agenda = deque([start])
    while agenda:
        subset = agenda.popleft()
        for letter in letters:
            targets = frozenset(
                t.target for q in subset for t in adjacency[q] if t.label == letter
            )
            if not targets:
                continue
            moves.append((subset, letter, targets))
            if targets not in seen:
                seen.add(targets)
                subsets.append(targets)
                agenda.append(targets)
    names = _name_groups(subsets)
    det = BlockAutomaton.make(
        states=[names[s] for s in subsets],
        initials=[names[start]],
        finals=[names[s] for s in subsets if s & a.finals],
        transitions=[(names[s], letter, names[t]) for s, letter, t in moves],
    )
    return trim(det)


def _name_groups(groups: Iterable[frozenset]) -> dict:
    """Name each state group: bare member name for singletons, {a,b} otherwise."""
    names: dict = {}
    taken: set[str] = set()
    for group in groups:
        members = sorted(group)
        base = members[0] if len(members) == 1 else "{" + ",".join(members) + "}"
        name = fresh_name(taken, base)
        taken.add(name)
        names[group] = name
    return names


def minimize(a: BlockAutomaton) -> BlockAutomaton:
    """Merge states with equal right languages (partial-DFA Moore refinement).

    Missing transitions are kept missing, so they distinguish states from
    looping ones; the result is the unique minimal trimmed partial DFA.
    """
    if not is_deterministic(a) and a.states:
        raise ValueError("minimize expects a deterministic automaton")
    a = trim(a)
    if not a.states:
        return a
    step: dict[str, dict[BlockSymbol, str]] = {q: {} for q in a.states}
    for t in a.transitions:
        step[t.source][t.label] = t.target
    labels = sorted(a.alphabet)
    block_of = {q: (q in a.finals) for q in a.states}
    while True:
        signature = {
            q: (block_of[q], tuple(block_of.get(step[q].get(b)) for b in labels))
            for q in a.states
        }
        fresh_ids: dict = {}
        for q in sorted(a.states):
            fresh_ids.setdefault(signature[q], len(fresh_ids))
        refined = {q: fresh_ids[signature[q]] for q in a.states}
        if len(set(refined.values())) == len(set(block_of.values())):
            break
        block_of = refined
    groups: dict[int, set] = {}
    for q in a.states:
        groups.setdefault(block_of[q], set()).add(q)
    names = _name_groups([frozenset(g) for g in groups.values()])
    rename = {q: names[frozenset(groups[block_of[q]])] for q in a.states}
    return BlockAutomaton.make(
        states=set(rename.values()),
        initials={rename[q] for q in a.initials},
        finals={rename[q] for q in a.finals},
        transitions={(rename[t.source], t.label, rename[t.target]) for t in a.transitions},
    )


# --- isomorphism and equivalence --------------------------------------------------


def isomorphic(a: BlockAutomaton, b: BlockAutomaton) -> bool:
    """Label-respecting bijection test for deterministic trimmed automata,
    via canonical breadth-first numbering from the initial state."""
    return _canonical(a) == _canonical(b)


def _canonical(a: BlockAutomaton):
    a = trim(a)
    if not a.states:
        return (0, frozenset(), frozenset())
    if not is_deterministic(a):
        raise ValueError("isomorphic expects deterministic automata")
    step: dict[str, dict[BlockSymbol, str]] = {q: {} for q in a.states}
    for t in a.transitions:
        step[t.source][t.label] = t.target
    (initial,) = a.initials
    number = {initial: 0}
    order = deque([initial])
    while order:
        q = order.popleft()
        for label in sorted(step[q]):
            target = step[q][label]
            if target not in number:
                number[target] = len(number)
                order.append(target)
    if len(number) != len(a.states):
        raise ValueError("isomorphic expects trimmed automata")
    transitions = frozenset(
        (number[t.source], t.label, number[t.target]) for t in a.transitions
    )
    finals = frozenset(number[q] for q in a.finals)
    return (len(a.states), finals, transitions)


def equivalent(a: BlockAutomaton, b: BlockAutomaton) -> bool:
    """Language equality over the base alphabet."""
    return isomorphic(
        minimize(determinize(expand_blocks(a))),
        minimize(determinize(expand_blocks(b))),
    )


# --- serialization -----------------------------------------------------------------


def to_json(a: BlockAutomaton) -> dict:
    return {
        "alphabet": sorted(b.letters for b in a.alphabet),
        "states": sorted(a.states),
        "initials": sorted(a.initials),
        "finals": sorted(a.finals),
        "transitions": [
            {"from": t.source, "label": t.label.letters, "to": t.target}
            for t in a.sorted_transitions()
        ],
    }


def from_json(data: Mapping) -> BlockAutomaton:
    try:
        return BlockAutomaton.make(
            states=[str(q) for q in data["states"]],
            initials=[str(q) for q in data["initials"]],
            finals=[str(q) for q in data["finals"]],
            transitions=[
                (str(t["from"]), str(t["label"]), str(t["to"]))
                for t in data["transitions"]
            ],
            alphabet=[str(b) for b in data.get("alphabet", ())],
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed automaton JSON: {exc}") from exc


def to_dot(a: BlockAutomaton) -> str:
    lines = ["digraph automaton {", "  rankdir=LR;"]
    for q in sorted(a.states):
        shape = "doublecircle" if q in a.finals else "circle"
        lines.append(f'  "{q}" [shape={shape}];')
    for n, q in enumerate(sorted(a.initials)):
        lines.append(f'  "__start{n}" [shape=point, style=invis];')
        lines.append(f'  "__start{n}" -> "{q}";')
    for t in a.sorted_transitions():
        lines.append(f'  "{t.source}" -> "{t.target}" [label="{t.label.letters}"];')
    lines.append("}")
    return "\n".join(lines)
