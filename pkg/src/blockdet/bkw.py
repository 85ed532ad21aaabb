"""Orbit analysis, the BKW decision procedure for one-unambiguity, and the
alphabetic-image certificate for k-block deterministic languages."""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Iterable

from .automaton import (
    BlockAutomaton,
    determinize,
    expand_blocks,
    is_deterministic,
    minimize,
    trim,
)
from .determinism import is_k_block_deterministic
from .glushkov import GlushkovAutomaton, alphabetic_image, glushkov
from .syntax import BlockSymbol, Empty, RegexAst


# --- orbits --------------------------------------------------------------------


@dataclass(frozen=True)
class Orbit:
    states: frozenset
    trivial: bool
    in_gates: frozenset
    out_gates: frozenset


@dataclass(frozen=True)
class OrbitDecomposition:
    orbits: tuple

    def orbit_of(self, state: str) -> Orbit:
        for orbit in self.orbits:
            if state in orbit.states:
                return orbit
        raise KeyError(state)

    def nontrivial(self) -> tuple:
        return tuple(o for o in self.orbits if not o.trivial)


def orbit_decomposition(a: BlockAutomaton) -> OrbitDecomposition:
    """Strongly connected components with gates and triviality flags."""
    components = _tarjan(a)
    edges = {(t.source, t.target) for t in a.transitions}
    orbits = []
    for component in components:
        # trivial = singleton without a self-loop
        trivial = len(component) == 1 and not any((q, q) in edges for q in component)
        in_gates = {
            q
            for q in component
            if q in a.initials
            or any(t.target == q and t.source not in component for t in a.transitions)
        }
        out_gates = {
            q
            for q in component
            if q in a.finals
            or any(t.source == q and t.target not in component for t in a.transitions)
        }
        orbits.append(
            Orbit(frozenset(component), trivial, frozenset(in_gates), frozenset(out_gates))
        )
    orbits.sort(key=lambda o: sorted(o.states))
    return OrbitDecomposition(tuple(orbits))


def _tarjan(a: BlockAutomaton) -> list[set]:
    """Iterative Tarjan SCC over the transition graph."""
    edges: dict = {q: [] for q in a.states}
    for t in a.transitions:
        edges[t.source].append(t.target)
    index: dict = {}
    lowlink: dict = {}
    on_stack: set = set()
    stack: list = []
    components: list[set] = []
    counter = 0
    for root in sorted(a.states):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, child_i = work.pop()
            if child_i == 0:
                index[node] = lowlink[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            advanced = False
            for i in range(child_i, len(edges[node])):
                nxt = edges[node][i]
                if nxt not in index:
                    work.append((node, i + 1))
                    work.append((nxt, 0))
                    advanced = True
                    break
                if nxt in on_stack:
                    lowlink[node] = min(lowlink[node], index[nxt])
            if advanced:
                continue
            if lowlink[node] == index[node]:
                component = set()
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.add(member)
                    if member == node:
                        break
                components.append(component)
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[node])
    return components


@dataclass(frozen=True)
class OrbitPropertyResult:
    holds: bool
    orbit: frozenset | None = None
    pair: tuple | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.holds


def orbit_property(a: BlockAutomaton) -> OrbitPropertyResult:
    """All out-gates of each orbit agree on finality and on every transition
    leaving the orbit."""
    outside: dict = {}
    for t in a.transitions:
        outside.setdefault(t.source, set()).add((t.label, t.target))
    for orbit in orbit_decomposition(a).orbits:
        gates = sorted(orbit.out_gates)
        leaving = {
            g: {(b, r) for (b, r) in outside.get(g, ()) if r not in orbit.states}
            for g in gates
        }
        for p in gates:
            for q in gates:
                if p == q:
                    continue
                if p in a.finals and q not in a.finals:
                    return OrbitPropertyResult(
                        False, orbit.states, (p, q), f"{p} is final but {q} is not"
                    )
                for b, r in sorted(leaving[p]):
                    if (b, r) not in leaving[q]:
                        return OrbitPropertyResult(
                            False,
                            orbit.states,
                            (p, q),
                            f"{p} leaves via {p} -{b.letters}-> {r} but {q} does not",
                        )
    return OrbitPropertyResult(True)


def consistent_symbols(a: BlockAutomaton) -> frozenset:
    """Symbols whose transitions from every final state share one target."""
    if not a.states:
        return frozenset()
    if not is_deterministic(a):
        raise ValueError("consistent symbols are defined on deterministic automata")
    step: dict = {}
    for t in a.transitions:
        step[(t.source, t.label)] = t.target
    consistent = set()
    for symbol in a.alphabet:
        targets = {step.get((f, symbol)) for f in a.finals}
        if len(targets) == 1 and None not in targets:
            consistent.add(symbol)
    return frozenset(consistent)


def s_cut(a: BlockAutomaton, symbols: Iterable) -> BlockAutomaton:
    """Remove the `symbols`-labelled transitions leaving final states, then trim."""
    cut_set = frozenset(symbols)
    if cut_set and not cut_set <= consistent_symbols(a):
        raise ValueError("s_cut needs a consistent symbol set")
    kept = [
        t
        for t in a.transitions
        if not (t.source in a.finals and t.label in cut_set)
    ]
    return trim(
        BlockAutomaton.make(
            states=a.states,
            initials=a.initials,
            finals=a.finals,
            transitions=kept,
        )
    )


def orbit_automaton(a: BlockAutomaton, state: str) -> BlockAutomaton:
    """Restrict to the orbit of `state`, making it initial and the orbit's
    out-gates final."""
    orbit = orbit_decomposition(a).orbit_of(state)
    return BlockAutomaton.make(
        states=orbit.states,
        initials={state},
        finals=orbit.out_gates,
        transitions=[
            t
            for t in a.transitions
            if t.source in orbit.states and t.target in orbit.states
        ],
    )


# --- the BKW test -----------------------------------------------------------------


@dataclass(frozen=True)
class BkwNode:
    """One recursion step of the BKW test."""

    fingerprint: str
    consistent: tuple
    orbit_property_holds: bool | None
    failure: str | None
    violating_orbit: frozenset | None = None
    violating_pair: tuple | None = None
    context: str | None = None
    children: tuple = field(default=())

    @property
    def ok(self) -> bool:
        return self.failure is None and all(child.ok for child in self.children)


@dataclass(frozen=True)
class BkwTrace:
    verdict: bool
    steps: BkwNode


def bkw_test(a: BlockAutomaton) -> BkwTrace:
    """Recursive decision procedure for one-unambiguity.

    On a minimal DFA the verdict decides one-unambiguity of the language;
    on a merely deterministic automaton a passing verdict is a sufficient
    certificate.
    """
    if a.states and not is_deterministic(a):
        raise ValueError("the BKW test needs a deterministic automaton")
    root = _bkw_node(trim(a), None)
    return BkwTrace(root.ok, root)


def _bkw_node(a: BlockAutomaton, context: str | None) -> BkwNode:
    fingerprint = f"{len(a.states)} states, {len(a.transitions)} transitions"
    if not a.states:
        return BkwNode(fingerprint, (), True, None, context=context)
    symbols = consistent_symbols(a)
    consistent = tuple(sorted(b.letters for b in symbols))
    decomposition = orbit_decomposition(a)
    single_nontrivial = (
        len(decomposition.orbits) == 1 and not decomposition.orbits[0].trivial
    )
    if single_nontrivial and not symbols:
        return BkwNode(fingerprint, (), None, "no-consistent-symbol", context=context)
    cut = s_cut(a, symbols)
    holds = orbit_property(cut)
    if not holds:
        return BkwNode(
            fingerprint,
            consistent,
            False,
            "orbit-property",
            violating_orbit=holds.orbit,
            violating_pair=holds.pair,
            context=context,
        )
    children = []
    for orbit in orbit_decomposition(cut).nontrivial():
        label = "{" + ",".join(sorted(orbit.states)) + "}"
        for q in sorted(orbit.states):
            sub = minimize(orbit_automaton(cut, q))
            children.append(_bkw_node(sub, f"orbit {label} from {q}, minimized"))
    failure = None if all(child.ok for child in children) else "recursion"
    return BkwNode(
        fingerprint,
        consistent,
        True,
        failure,
        context=context,
        children=tuple(children),
    )


def bkw_to_json(trace: BkwTrace) -> dict:
    return {"verdict": trace.verdict, "steps": _node_json(trace.steps)}


def _node_json(node: BkwNode) -> dict:
    data = {
        "fingerprint": node.fingerprint,
        "S": list(node.consistent),
        "orbitProperty": node.orbit_property_holds,
        "failure": node.failure,
        "children": [_node_json(child) for child in node.children],
    }
    if node.violating_orbit is not None:
        data["violatingOrbit"] = sorted(node.violating_orbit)
    if node.violating_pair is not None:
        data["violatingPair"] = list(node.violating_pair)
    if node.context is not None:
        data["context"] = node.context
    return data


def render_trace(trace: BkwTrace) -> str:
    lines = [f"verdict: {'pass' if trace.verdict else 'fail'}"]

    def walk(node: BkwNode, depth: int):
        pad = "  " * depth
        head = node.context or "input"
        lines.append(f"{pad}{head}: {node.fingerprint}, S={{{','.join(node.consistent)}}}")
        if node.failure == "orbit-property":
            orbit = ",".join(sorted(node.violating_orbit or ()))
            lines.append(f"{pad}  FAIL orbit property on {{{orbit}}} (pair {node.violating_pair})")
        elif node.failure == "no-consistent-symbol":
            lines.append(f"{pad}  FAIL single non-trivial orbit without a consistent symbol")
        for child in node.children:
            walk(child, depth + 1)

    walk(trace.steps, 0)
    return "\n".join(lines)


# --- language-level wrappers ----------------------------------------------------


def minimal_dfa(x: RegexAst | GlushkovAutomaton | BlockAutomaton) -> BlockAutomaton:
    """Minimal DFA of the denoted language over the base alphabet."""
    if isinstance(x, RegexAst):
        if isinstance(x, Empty):
            a = BlockAutomaton.make()
        else:
            a = glushkov(x).automaton
    elif isinstance(x, GlushkovAutomaton):
        a = x.automaton
    else:
        a = x
    return minimize(determinize(expand_blocks(a)))


def is_one_unambiguous(x: RegexAst | GlushkovAutomaton | BlockAutomaton) -> bool:
    """BKW test over the minimal DFA of the denoted language."""
    return bkw_test(minimal_dfa(x)).verdict


_FRESH_LETTERS = string.ascii_uppercase + string.ascii_lowercase + string.digits


def block_abstraction(a: BlockAutomaton) -> BlockAutomaton:
    """Injectively rename each distinct block to a fresh width-1 symbol."""
    used = sorted({t.label for t in a.transitions})
    if len(used) > len(_FRESH_LETTERS):
        raise ValueError("too many distinct blocks to abstract")
    mapping = {b: BlockSymbol(_FRESH_LETTERS[i]) for i, b in enumerate(used)}
    return alphabetic_image(a, mapping)


def certify_k_block_language(a: BlockAutomaton, k: int) -> bool:
    """Sufficient certificate that L(a) is k-block deterministic: the
    automaton is k-block deterministic and its block abstraction is a
    deterministic automaton passing the BKW test."""
    if not is_k_block_deterministic(a, k):
        return False
    abstraction = block_abstraction(a)
    if not is_deterministic(abstraction):
        return False
    return bkw_test(abstraction).verdict
