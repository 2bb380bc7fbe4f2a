"""Proof workspace graphs: nodes, justifications, completeness and needed-set analysis.

A graph starts with premise nodes and one unjustified conclusion placeholder.
Verified steps either append a derived node, convert a pending subgoal node,
or justify the conclusion (which completes the problem). A node is *needed*
when deleting it (and everything depending on it) would leave the solution
incomplete; that is exactly the backward justification closure of the
justified conclusion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .formulas import Formula, render
from .rules import Rule


class NodeKind(Enum):
    PREMISE = "premise"
    DERIVED = "derived"
    CONCLUSION = "conclusion"
    ASSERTION_PENDING = "assertion"


class NodeColor(Enum):
    GREEN = "green"
    YELLOW = "yellow"
    GRAY = "gray"
    CYAN = "cyan"


class IncompleteProof(Exception):
    pass


@dataclass(frozen=True)
class Justification:
    rule: Rule
    sources: tuple[int, ...]


@dataclass
class ProofNode:
    id: int
    statement: Formula
    kind: NodeKind
    justification: Optional[Justification] = None
    color: Optional[NodeColor] = None
    number: Optional[int] = None

    @property
    def label(self) -> str:
        """Workspace label: the display number, 'C' for the conclusion, '?' while pending."""
        if self.kind is NodeKind.CONCLUSION:
            return "C"
        if self.kind is NodeKind.ASSERTION_PENDING:
            return "?"
        return str(self.number)

    @property
    def justified(self) -> bool:
        return self.kind in (NodeKind.PREMISE, NodeKind.DERIVED) or (
            self.justification is not None
        )


@dataclass
class SolutionSummary:
    complete: bool
    length: Optional[int] = None


class ProofGraph:
    """One problem attempt: an append-only list of nodes plus the goal formula."""

    def __init__(self, problem_id: str, premises: Iterable[Formula], conclusion: Formula):
        self.problem_id = problem_id
        self.conclusion = conclusion
        self.nodes: list[ProofNode] = []
        self._next_id = 1
        self._next_number = 1
        for p in premises:
            self._append(ProofNode(self._next_id, p, NodeKind.PREMISE, number=self._next_number))
            self._next_number += 1
        self.conclusion_node = ProofNode(self._next_id, conclusion, NodeKind.CONCLUSION)
        self._append(self.conclusion_node)
        self._premise_count = self._next_number - 1

    def _append(self, node: ProofNode) -> ProofNode:
        self.nodes.append(node)
        self._next_id += 1
        return node

    def node(self, node_id: int) -> ProofNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(f"no node {node_id}")

    @property
    def complete(self) -> bool:
        return any(
            n.justification is not None and n.statement == self.conclusion for n in self.nodes
        )

    def statements(self) -> set[str]:
        """Rendered statements currently established (pending subgoals and the
        unjustified conclusion are goals, not knowledge)."""
        out = set()
        for n in self.nodes:
            if n.kind in (NodeKind.PREMISE, NodeKind.DERIVED):
                out.add(render(n.statement))
            elif n.kind is NodeKind.CONCLUSION and n.justification is not None:
                out.add(render(n.statement))
        return out

    def source_nodes(self) -> list[ProofNode]:
        """Nodes usable as step sources (justified ones)."""
        return [
            n
            for n in self.nodes
            if n.kind in (NodeKind.PREMISE, NodeKind.DERIVED)
        ]

    def apply_step(
        self,
        statement: Formula,
        rule: Rule,
        source_ids: tuple[int, ...],
        color: Optional[NodeColor] = None,
    ) -> ProofNode:
        """Record one verified derivation.

        Deriving the conclusion justifies the placeholder; deriving a pending
        subgoal's statement converts that node into a numbered derived node;
        anything else appends a new node. Verification happens upstream.
        """
        just = Justification(rule, tuple(source_ids))
        if statement == self.conclusion and self.conclusion_node.justification is None:
            self.conclusion_node.justification = just
            return self.conclusion_node
        for n in self.nodes:
            if n.kind is NodeKind.ASSERTION_PENDING and n.statement == statement:
                n.kind = NodeKind.DERIVED
                n.justification = just
                n.color = color
                n.number = self._next_number
                self._next_number += 1
                return n
        node = ProofNode(
            self._next_id, statement, NodeKind.DERIVED, just, color, self._next_number
        )
        self._next_number += 1
        return self._append(node)

    def add_assertion(self, statement: Formula) -> ProofNode:
        """Add a cyan pending subgoal node (unjustified, unnumbered)."""
        node = ProofNode(
            self._next_id, statement, NodeKind.ASSERTION_PENDING, color=NodeColor.CYAN
        )
        return self._append(node)

    def remove_pending(self, node_id: int) -> ProofNode:
        node = self.node(node_id)
        if node.kind is not NodeKind.ASSERTION_PENDING:
            raise ValueError(f"node {node_id} is not a pending subgoal")
        self.nodes.remove(node)
        return node

    def reset(self) -> None:
        """Restart the attempt: drop derived and pending nodes, keep the frame.

        Display numbering restarts after the premises; node ids keep counting
        so every node created in the session stays uniquely identified.
        """
        self.nodes = [
            n for n in self.nodes if n.kind in (NodeKind.PREMISE, NodeKind.CONCLUSION)
        ]
        self.conclusion_node.justification = None
        self._next_number = self._premise_count + 1


def needed_set(g: ProofGraph) -> set[int]:
    """Node ids whose deletion (with cascade) would break the solution.

    Equals the justified conclusion node plus the transitive closure of its
    justification sources, premises included.
    """
    if not g.complete:
        raise IncompleteProof(f"proof of {g.problem_id!r} is not complete")
    goal = next(
        n for n in g.nodes if n.justification is not None and n.statement == g.conclusion
    )
    by_id = {n.id: n for n in g.nodes}
    needed: set[int] = set()
    stack = [goal.id]
    while stack:
        nid = stack.pop()
        if nid in needed:
            continue
        needed.add(nid)
        just = by_id[nid].justification
        if just is not None:
            stack.extend(just.sources)
    return needed


def solution_summary(g: ProofGraph) -> SolutionSummary:
    """Completeness plus solution length (derived statements in a complete solution)."""
    if not g.complete:
        return SolutionSummary(False)
    length = sum(1 for n in g.nodes if n.kind is NodeKind.DERIVED)
    if g.conclusion_node.justification is not None:
        length += 1
    return SolutionSummary(True, length)
