"""Token-trie storage for multi-word dictionary terms.

Each term is a root-to-node path of normalized tokens; the node ending a
path carries the term record. Interior nodes carry no code and never
produce annotations on their own.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True)
class Term:
    """A dictionary entry: normalized token path, surface label, code."""

    tokens: tuple[str, ...]
    label: str
    code: str


class TrieNode:
    __slots__ = ("token", "children", "terminal", "sorted_tokens")

    def __init__(self, token: str | None = None):
        self.token = token
        self.children: dict[str, TrieNode] = {}
        self.terminal: Term | None = None
        self.sorted_tokens: tuple[str, ...] = ()

    def __repr__(self) -> str:
        return (
            f"TrieNode({self.token!r}, children={len(self.children)}, "
            f"terminal={self.terminal is not None})"
        )


class DictionaryTrie:
    """Mutable while loading; ``freeze()`` before matching."""

    def __init__(self) -> None:
        self.root = TrieNode()
        self.term_count = 0
        self.bigram_index = None  # built by freeze()
        self._frozen = False

    @property
    def frozen(self) -> bool:
        return self._frozen

    def insert_term(self, term: Term) -> "DictionaryTrie":
        if self._frozen:
            raise ValueError("trie is frozen; build a new one to add terms")
        if not term.tokens:
            raise ValueError(f"term {term.label!r} has no tokens")
        if not term.code:
            raise ValueError(f"term {term.label!r} has an empty code")
        node = self.root
        for token in term.tokens:
            node = node.children.setdefault(token, TrieNode(token))
        if node.terminal is None:
            self.term_count += 1
        node.terminal = term  # last write wins; the coder resolves codes first
        return self

    def freeze(self) -> "DictionaryTrie":
        """Build the bigram index and lock the trie for concurrent matching."""
        if not self._frozen:
            from .matcher import build_bigram_index

            for node in self.iter_nodes():
                node.sorted_tokens = tuple(sorted(node.children))
            self._frozen = True
            self.bigram_index = build_bigram_index(self)
        return self

    def iter_nodes(self) -> Iterator[TrieNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(node.children.values())

    def iter_terms(self) -> Iterator[Term]:
        for node in self.iter_nodes():
            if node.terminal is not None:
                yield node.terminal

    def code_count(self) -> int:
        return len({term.code for term in self.iter_terms()})

    def lookup_path(self, tokens: Iterable[str]) -> TrieNode | None:
        """Walk a token sequence from the root; None if the path breaks off."""
        node = self.root
        for token in tokens:
            node = node.children.get(token)
            if node is None:
                return None
        return node


def child_lookup(node: TrieNode, token: str) -> TrieNode | None:
    """The direct child reached by *token*, if any; never searches deeper."""
    return node.children.get(token)


def children_tokens(node: TrieNode) -> set[str]:
    """Candidate dictionary tokens available at this tree position."""
    return set(node.children)
