"""Free groups, their conjugacy sub-PMQs, and braid moves on decompositions.

Words in the free group on generators x_1, ..., x_k are tuples of nonzero
integers, +-i standing for x_i^(+-1).  The union of the trivial element and
the conjugacy classes of x_1, ..., x_l is a sub-PMQ with trivial product;
its nontrivial elements have a unique normal form w^-1 x_nu w with w reduced
and not starting with x_nu^(+-1).

A decomposition of x_1...x_r into r such factors can be carried back to
(x_1, ..., x_r) by braid moves.  The algorithm works on *generalised
decompositions*: formal trees of products and one-letter conjugations.  A
tree whose straightforward computation cancels contains a sub-tree of one of
ten shapes, each of which can be replaced by a lighter tree computing the
same group element; replacements of shapes (3) and (4) move a whole factor
across a neighbouring one and emit the corresponding standard moves, all
other shapes leave the factor sequence unchanged.  Iterating until no shape
matches terminates (the weight strictly drops) on the tree
x_1 . x_2 . ... . x_r.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Union

from .core import PmqGroupPair
from .errors import PreconditionError, StructureError

Word = tuple[int, ...]

__all__ = [
    "free_reduce",
    "word_mul",
    "word_inv",
    "word_conj",
    "word_conj_inv",
    "abelianization",
    "fq_decompose",
    "fq_element",
    "evaluate_pair_map",
    "Leaf",
    "Prod",
    "Conj",
    "GenDecomp",
    "prod_of",
    "gd_weight",
    "gd_evaluate",
    "decomposition_to_gd",
    "gd_to_decomposition",
    "normalize_decomposition",
    "braid_act",
    "braid_act_word",
]


# ---------------------------------------------------------------------------
# reduced words

def free_reduce(word: Iterable[int]) -> Word:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[int] = []
    for letter in word:
        if letter == 0:
            raise StructureError("0 is not a letter")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def word_mul(*words: Iterable[int]) -> Word:
    cat: list[int] = []
    for w in words:
        cat.extend(w)
    return free_reduce(cat)


def word_inv(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def word_conj(a: Sequence[int], w: Sequence[int]) -> Word:
    """a^w = w^-1 a w."""
    return word_mul(word_inv(w), a, w)


def word_conj_inv(a: Sequence[int], w: Sequence[int]) -> Word:
    """a^(w^-1) = w a w^-1."""
    return word_mul(w, a, word_inv(w))


def abelianization(word: Sequence[int], k: int) -> tuple[int, ...]:
    out = [0] * k
    for letter in word:
        out[abs(letter) - 1] += 1 if letter > 0 else -1
    return tuple(out)


# ---------------------------------------------------------------------------
# membership in the conjugacy sub-PMQ

def fq_decompose(g: Sequence[int], k: int, l: int) -> Optional[tuple[int, Word]]:
    """Normal form of g in the sub-PMQ on the first l generators.

    Returns (nu, w) with g = w^-1 x_nu w, w reduced and not starting with
    x_nu^(+-1); the unit is reported as (0, ()); None when g does not belong.
    A reduced word lies in the sub-PMQ iff it is a palindromic sandwich
    u . x_nu . u^-1-reversed with nu <= l.
    """
    g = free_reduce(g)
    if any(abs(x) > k for x in g):
        raise StructureError(f"letter outside the free group on {k} generators")
    if not g:
        return (0, ())
    if len(g) % 2 == 0:
        return None
    m = len(g) // 2
    mid = g[m]
    if mid < 0 or mid > l:
        return None
    w = g[m + 1 :]
    if g[:m] != word_inv(w):
        return None
    return (mid, w)


def fq_element(nu: int, w: Sequence[int]) -> Word:
    """The group element w^-1 x_nu w in reduced form."""
    return word_conj((nu,), w)


def evaluate_pair_map(
    pair: PmqGroupPair,
    targets: Sequence[int],
    group_targets: Sequence[int],
    g: Sequence[int],
    k: Optional[int] = None,
) -> int:
    """Image of g under the PMQ map determined on a PMQ-group pair by sending
    x_1..x_l to PMQ elements and x_{l+1}..x_k to group elements.

    The image of g = w^-1 x_nu w is the target of x_nu acted on by the image
    of w under the induced group homomorphism.  Returns the index of the
    image in the pair's PMQ.
    """
    l = len(targets)
    if k is None:
        k = l + len(group_targets)
    if l + len(group_targets) != k:
        raise StructureError("targets must cover x_1..x_k")
    nf = fq_decompose(g, k, l)
    if nf is None:
        raise PreconditionError("element lies outside the sub-PMQ on the first l generators")
    nu, w = nf
    q, grp, e, r = pair.pmq, pair.group, pair.e_map, pair.r_action

    def phi(letter: int) -> int:
        i = abs(letter)
        img = e[targets[i - 1]] if i <= l else group_targets[i - l - 1]
        return img if letter > 0 else grp.inverse(img)

    if nu == 0:
        return q.unit
    gw = grp.unit
    for letter in w:
        gw = grp.mult[gw][phi(letter)]
    return r[gw][targets[nu - 1]]


# ---------------------------------------------------------------------------
# generalised decompositions

@dataclass(frozen=True)
class Leaf:
    nu: int


@dataclass(frozen=True)
class Prod:
    children: tuple["GenDecomp", ...]


@dataclass(frozen=True)
class Conj:
    child: "GenDecomp"
    gen: int
    sign: int


GenDecomp = Union[Leaf, Prod, Conj]


def prod_of(*parts: GenDecomp) -> GenDecomp:
    """n-ary product with built-in associativity: product children are
    spliced so product nodes never have product children."""
    flat: list[GenDecomp] = []
    for p in parts:
        if isinstance(p, Prod):
            flat.extend(p.children)
        else:
            flat.append(p)
    if len(flat) == 1:
        return flat[0]
    return Prod(tuple(flat))


def _walk_nodes(x: GenDecomp):
    """All nodes, depth first; iterative because conjugation chains can be
    arbitrarily deep."""
    stack = [x]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Prod):
            stack.extend(node.children)
        elif isinstance(node, Conj):
            stack.append(node.child)


def gd_weight(x: GenDecomp) -> int:
    w = 0
    for node in _walk_nodes(x):
        if isinstance(node, Leaf):
            w += 1
        elif isinstance(node, Conj):
            w += 2
    return w


def gd_leaves(x: GenDecomp) -> int:
    return sum(1 for node in _walk_nodes(x) if isinstance(node, Leaf))


def gd_formal_word(x: GenDecomp) -> Word:
    """The formal straightforward computation, without any reduction."""
    out: list[int] = []
    stack: list = [x]
    while stack:
        item = stack.pop()
        if isinstance(item, int):
            out.append(item)
        elif isinstance(item, Leaf):
            out.append(item.nu)
        elif isinstance(item, Prod):
            stack.extend(reversed(item.children))
        else:
            g = item.gen if item.sign > 0 else -item.gen
            stack.append(g)
            stack.append(item.child)
            stack.append(-g)
    return tuple(out)


def gd_evaluate(x: GenDecomp) -> tuple[Word, bool]:
    """Formal word and a flag telling whether reducing it cancels letters.

    The formal word has length equal to the weight of the tree.
    """
    w = gd_formal_word(x)
    return w, len(free_reduce(w)) < len(w)


def decomposition_to_gd(factors: Sequence[tuple[int, Word]]) -> GenDecomp:
    """The tree of a factor sequence: each factor (nu, w) becomes the leaf
    x_nu wrapped in one conjugation per letter of w, innermost first."""
    parts: list[GenDecomp] = []
    for nu, w in factors:
        node: GenDecomp = Leaf(nu)
        for letter in w:
            node = Conj(node, abs(letter), 1 if letter > 0 else -1)
        parts.append(node)
    if not parts:
        raise StructureError("empty decomposition")
    return prod_of(*parts)


def gd_to_decomposition(x: GenDecomp) -> list[Word]:
    """Factor sequence of a tree: the leaves left to right, each conjugated
    by every conjugation enclosing it, innermost first."""
    out: list[Word] = []
    stack: list[tuple[GenDecomp, Word]] = [(x, ())]
    while stack:
        node, outer = stack.pop()
        if isinstance(node, Leaf):
            out.append(word_conj((node.nu,), outer))
        elif isinstance(node, Prod):
            stack.extend((c, outer) for c in reversed(node.children))
        else:
            letter = node.gen if node.sign > 0 else -node.gen
            stack.append((node.child, (letter,) + outer))
    return out


# ---------------------------------------------------------------------------
# the ten-shape rewriter

@dataclass
class _Match:
    kind: str              # "pair" shapes live in a product, "node" shapes at a Conj
    path: tuple[int, ...]  # child indices from the root to the matched node
    index: int             # for pair shapes: left position within the product
    shape: int             # 1..10
    leaf_offset: int       # leaves strictly left of the matched sub-tree


def _leaf_counts(root: GenDecomp) -> dict[int, int]:
    """Leaves below each node, keyed by id; one iterative pass."""
    order: list[GenDecomp] = list(_walk_nodes(root))
    counts: dict[int, int] = {}
    for node in reversed(order):
        if isinstance(node, Leaf):
            counts[id(node)] = 1
        elif isinstance(node, Conj):
            counts[id(node)] = counts[id(node.child)]
        else:
            counts[id(node)] = sum(counts[id(c)] for c in node.children)
    return counts


def _scan(root: GenDecomp) -> Optional[_Match]:
    """Innermost-first, leftmost-first search for a replaceable shape.

    Iterative post-order: children are examined before their parent, left to
    right, so the first reported match is the leftmost innermost one.
    """
    counts = _leaf_counts(root)
    stack: list[tuple[GenDecomp, tuple[int, ...], int, bool]] = [(root, (), 0, False)]
    while stack:
        node, path, offset, expanded = stack.pop()
        if isinstance(node, Leaf):
            continue
        if not expanded:
            stack.append((node, path, offset, True))
            if isinstance(node, Prod):
                entries = []
                off = offset
                for i, c in enumerate(node.children):
                    entries.append((c, path + (i,), off, False))
                    off += counts[id(c)]
                stack.extend(reversed(entries))
            else:
                stack.append((node.child, path + (0,), offset, False))
            continue
        if isinstance(node, Prod):
            off = offset
            for i in range(len(node.children) - 1):
                a, b = node.children[i], node.children[i + 1]
                shape = _pair_shape(a, b)
                if shape is not None:
                    return _Match("pair", path, i, shape, off)
                off += counts[id(a)]
        else:
            shape = _conj_shape(node)
            if shape is not None:
                return _Match("node", path, 0, shape, offset)
    return None


def _pair_shape(a: GenDecomp, b: GenDecomp) -> Optional[int]:
    if isinstance(a, Conj) and isinstance(b, Conj) and a.gen == b.gen and a.sign == b.sign:
        return 1 if a.sign > 0 else 2
    if isinstance(a, Leaf) and isinstance(b, Conj) and b.gen == a.nu and b.sign > 0:
        return 3
    if isinstance(b, Leaf) and isinstance(a, Conj) and a.gen == b.nu and a.sign < 0:
        return 4
    return None


def _conj_shape(node: Conj) -> Optional[int]:
    c = node.child
    if isinstance(c, Conj) and c.gen == node.gen and c.sign == -node.sign:
        return 5
    if isinstance(c, Leaf) and c.nu == node.gen:
        return 10
    if isinstance(c, Prod):
        first, last = c.children[0], c.children[-1]
        if node.sign > 0:
            if isinstance(first, Leaf) and first.nu == node.gen:
                return 3   # (x_i . y)^(x_i)
            if isinstance(last, Conj) and last.gen == node.gen and last.sign < 0:
                return 8
            if isinstance(first, Conj) and first.gen == node.gen and first.sign < 0:
                return 9
        else:
            if isinstance(last, Leaf) and last.nu == node.gen:
                return 4   # (y . x_i)^(x_i^-1)
            if isinstance(last, Conj) and last.gen == node.gen and last.sign > 0:
                return 6
            if isinstance(first, Conj) and first.gen == node.gen and first.sign > 0:
                return 7
    return None


def _replace_pair(a: GenDecomp, b: GenDecomp, shape: int, offset: int) -> tuple[GenDecomp, list[int]]:
    if shape in (1, 2):
        return Conj(prod_of(a.child, b.child), a.gen, a.sign), []
    if shape == 3:
        # x_i . (y)^(x_i)  ->  y . x_i, one negative move per leaf of y
        s = gd_leaves(b.child)
        t = offset + 1
        return prod_of(b.child, a), [-(t + u) for u in range(s)]
    # shape 4: (y)^(x_i^-1) . x_i  ->  x_i . y, positive moves right-to-left
    s = gd_leaves(a.child)
    t = offset + 1
    return prod_of(b, a.child), [t + s - 1 - u for u in range(s)]


def _replace_node(node: Conj, shape: int, offset: int) -> tuple[GenDecomp, list[int]]:
    c = node.child
    if shape == 5:
        return c.child, []
    if shape == 10:
        return c, []
    if shape == 3:
        # (x_i . y)^(x_i)  ->  y . x_i
        rest = prod_of(*c.children[1:])
        s = gd_leaves(rest)
        t = offset + 1
        return prod_of(rest, c.children[0]), [-(t + u) for u in range(s)]
    if shape == 4:
        # (y . x_i)^(x_i^-1)  ->  x_i . y
        rest = prod_of(*c.children[:-1])
        s = gd_leaves(rest)
        t = offset + 1
        return prod_of(c.children[-1], rest), [t + s - 1 - u for u in range(s)]
    if shape == 6:
        head = prod_of(*c.children[:-1])
        return prod_of(Conj(head, node.gen, -1), c.children[-1].child), []
    if shape == 7:
        tail = prod_of(*c.children[1:])
        return prod_of(c.children[0].child, Conj(tail, node.gen, -1)), []
    if shape == 8:
        head = prod_of(*c.children[:-1])
        return prod_of(Conj(head, node.gen, 1), c.children[-1].child), []
    # shape 9
    tail = prod_of(*c.children[1:])
    return prod_of(c.children[0].child, Conj(tail, node.gen, 1)), []


def _ancestors(root: GenDecomp, path: tuple[int, ...]) -> list[GenDecomp]:
    nodes = [root]
    for i in path:
        node = nodes[-1]
        nodes.append(node.children[i] if isinstance(node, Prod) else node.child)
    return nodes


def _reassemble(ancestors: list[GenDecomp], path: tuple[int, ...], cur: GenDecomp) -> GenDecomp:
    """Replace the node at the end of the ancestor chain and rebuild upwards,
    re-normalising products on the way."""
    for node, i in zip(reversed(ancestors[:-1]), reversed(path)):
        if isinstance(node, Prod):
            cur = prod_of(*(node.children[:i] + (cur,) + node.children[i + 1 :]))
        else:
            cur = Conj(cur, node.gen, node.sign)
    return cur


def _rebuild(root: GenDecomp, path: tuple[int, ...], repl: GenDecomp) -> GenDecomp:
    return _reassemble(_ancestors(root, path), path, repl)


def _rebuild_pair(root: GenDecomp, path: tuple[int, ...], index: int, repl: GenDecomp) -> GenDecomp:
    ancestors = _ancestors(root, path)
    parent = ancestors[-1]
    assert isinstance(parent, Prod)
    merged = prod_of(*(parent.children[:index] + (repl,) + parent.children[index + 2 :]))
    return _reassemble(ancestors, path, merged)


def _node_at(root: GenDecomp, path: tuple[int, ...]) -> GenDecomp:
    return _ancestors(root, path)[-1]


def normalize_decomposition(
    factors: Sequence[tuple[int, Word]], k: int, l: int
) -> list[int]:
    """Rewrite a decomposition of x_1...x_r into the trivial one, returning
    a move log that carries the input factor sequence to (x_1, ..., x_r)
    under ``braid_act_word``.

    The product of the factors must be x_1...x_r in the free group, with
    r = len(factors) <= l <= k; anything else is rejected before rewriting.
    """
    r = len(factors)
    if not (r <= l <= k):
        raise PreconditionError(f"need r <= l <= k, got r={r}, l={l}, k={k}")
    value = word_mul(*(fq_element(nu, w) for nu, w in factors))
    target = tuple(range(1, r + 1))
    if value != target:
        raise PreconditionError("factors do not multiply to x_1...x_r")
    for nu, w in factors:
        if not (1 <= nu <= l):
            raise PreconditionError(f"factor generator x_{nu} outside the first l")
        if w != free_reduce(w) or (w and abs(w[0]) == nu):
            raise PreconditionError("factor conjugator not in normal form")

    tree = decomposition_to_gd(factors)
    log: list[int] = []
    weight = gd_weight(tree)
    # every replacement removes one conjugation pair or more: -2 per step,
    # -4 for the double-cancellation shape
    drop = {1: 2, 2: 2, 3: 2, 4: 2, 5: 4, 6: 2, 7: 2, 8: 2, 9: 2, 10: 2}
    while True:
        m = _scan(tree)
        if m is None:
            break
        if m.kind == "pair":
            parent = _node_at(tree, m.path)
            a, b = parent.children[m.index], parent.children[m.index + 1]
            repl, moves = _replace_pair(a, b, m.shape, m.leaf_offset)
            tree = _rebuild_pair(tree, m.path, m.index, repl)
        else:
            node = _node_at(tree, m.path)
            repl, moves = _replace_node(node, m.shape, m.leaf_offset)
            tree = _rebuild(tree, m.path, repl)
        log.extend(moves)
        weight -= drop[m.shape]

    expected: GenDecomp = prod_of(*(Leaf(i) for i in target)) if r > 1 else Leaf(1)
    assert weight == gd_weight(tree) == r, "weight bookkeeping out of sync"
    assert tree == expected, "rewriting did not reach the trivial tree"
    return log


# ---------------------------------------------------------------------------
# braid moves

def braid_act(
    seq: Sequence, i: int, sign: int, conj: Callable, conj_inv: Callable
) -> tuple:
    """Standard move at 1-based position i over any quandle-bearing carrier:
    positive (.., a, b, ..) -> (.., b, a^b, ..), negative its inverse."""
    if not (1 <= i <= len(seq) - 1):
        raise IndexError(f"move position {i} out of range")
    a, b = seq[i - 1], seq[i]
    pair = (b, conj(a, b)) if sign > 0 else (conj_inv(b, a), a)
    return tuple(seq[: i - 1]) + pair + tuple(seq[i + 1 :])


def braid_act_word(seq: Sequence[Word], moves: Iterable[int]) -> tuple[Word, ...]:
    """Apply a signed move log to a tuple of free-group elements."""
    cur = tuple(seq)
    for m in moves:
        cur = braid_act(cur, abs(m), 1 if m > 0 else -1, word_conj, word_conj_inv)
    return cur
