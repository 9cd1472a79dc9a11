"""Path contexts: the AST route between two leaves, with a stable encoding.

A context is rendered as ``source_text,path_encoding,target_text`` where the
encoding lists ancestor labels from the source leaf up to the lowest common
ancestor (suffixed with an up arrow), the LCA label bare, and labels back
down to the target leaf (prefixed with a down arrow).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotALeaf, SameLeaf
from .hashing import fnv1a64
from .minilang import AstNode, LeafToken, leaves

UP = "↑"
DOWN = "↓"

DEFAULT_MAX_LENGTH = 8
DEFAULT_MAX_WIDTH = 2


@dataclass(frozen=True)
class PathContext:
    source_text: str
    path_encoding: str
    target_text: str
    hash: int

    @property
    def context_string(self) -> str:
        return f"{self.source_text},{self.path_encoding},{self.target_text}"

    @property
    def node_count(self) -> int:
        """Number of AST nodes on the path (ancestors + LCA + descendants)."""
        return self.path_encoding.count(UP) + self.path_encoding.count(DOWN) + 1


def make_context(source_text: str, path_encoding: str, target_text: str) -> PathContext:
    full = f"{source_text},{path_encoding},{target_text}"
    return PathContext(source_text, path_encoding, target_text, fnv1a64(full))


def _depth(node: AstNode) -> int:
    d = 0
    while node.parent is not None:
        node = node.parent
        d += 1
    return d


def _check_leaf_of(root: AstNode, leaf: LeafToken) -> None:
    if not isinstance(leaf, LeafToken) or leaf.parent is None:
        raise NotALeaf(f"{leaf!r} is not a leaf of the given tree")
    node = leaf.parent
    while node.parent is not None:
        node = node.parent
    if node is not root:
        raise NotALeaf(f"leaf {leaf.text!r} does not belong to the given tree")


def path_between(root: AstNode, a: LeafToken, b: LeafToken) -> PathContext:
    """Context for the unique tree path from leaf ``a`` to leaf ``b``.

    Found by lifting both parents to equal depth and climbing in lockstep
    until they meet at the LCA.
    """
    _check_leaf_of(root, a)
    _check_leaf_of(root, b)
    if a is b:
        raise SameLeaf(f"both endpoints are the same leaf {a.text!r}")

    up: list[str] = []
    down: list[str] = []
    na, nb = a.parent, b.parent
    da, db = _depth(na), _depth(nb)
    while da > db:
        up.append(na.label)
        na = na.parent
        da -= 1
    while db > da:
        down.append(nb.label)
        nb = nb.parent
        db -= 1
    while na is not nb:
        up.append(na.label)
        down.append(nb.label)
        na = na.parent
        nb = nb.parent
    encoding = "".join(f"{label}{UP}" for label in up)
    encoding += na.label
    encoding += "".join(f"{DOWN}{label}" for label in reversed(down))
    return make_context(a.text, encoding, b.text)


def all_path_contexts(
    root: AstNode,
    max_length: int = DEFAULT_MAX_LENGTH,
    max_width: int = DEFAULT_MAX_WIDTH,
) -> list[PathContext]:
    """Contexts for every ordered leaf pair (i < j), optionally capped.

    ``max_length`` bounds the number of nodes on the path and ``max_width``
    the leaf-index distance; either cap is disabled by passing 0.
    """
    if max_length < 0 or max_width < 0:
        raise ValueError("caps must be >= 0 (0 disables the cap)")
    leaf_list = leaves(root)
    contexts: list[PathContext] = []
    for i, source in enumerate(leaf_list):
        for j in range(i + 1, len(leaf_list)):
            if max_width and j - i > max_width:
                break
            context = path_between(root, source, leaf_list[j])
            if max_length and context.node_count > max_length:
                continue
            contexts.append(context)
    return contexts
