"""Generation of the tree families entering the iterated Duhamel expansion.

Trees are generated by shape class with fresh symbolic leaf frequencies
(named deterministically in depth-first order); one symbolic tree stands for
the whole family of integer frequency assignments.  Sums over concrete
frequencies happen only in the evaluators, under an explicit truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .scalars import FreqVector
from .trees import (T1, T2, DecoratedTree, canonicalize, is_non_resonant,
                    leaf, node, order, relabel_fresh, resonant_nodes)


@dataclass(frozen=True)
class TreeSpaceSpec:
    """Which family to generate: order (exact or bound), parity, resonance."""

    order: int
    parity: int = 0
    resonant: bool = False
    cumulative: bool = False  # True: all orders up to `order`

    def __post_init__(self):
        if self.order < 0 or self.parity not in (0, 1):
            raise ValueError("order must be >= 0 and parity in {0, 1}")
        if self.resonant and self.order < 1:
            raise ValueError("resonant families start at order 1")


def _fresh():
    counter = itertools.count(1)
    return lambda: next(counter)


def _branch_options(mu: int, parity: int, fresh) -> list[DecoratedTree]:
    """A branch hanging off an oscillation node: a bare leaf (order 0) or a
    t1-edge chain topped by a planted t2 tree of order ``mu``."""
    if mu == 0:
        return [leaf(T1, parity, FreqVector.of(fresh()))]
    out = []
    for sub in _gen_hat_raw(mu, parity, fresh):
        out.append(DecoratedTree(T1, parity, sub.freq, (sub,)))
    return out


def _gen_hat_raw(m: int, j: int, fresh) -> list[DecoratedTree]:
    """Planted t2 trees of order m, parity j, with fresh leaf symbols."""
    if m < 1:
        return []
    out = []
    for mu1 in range(m):
        for mu2 in range(m - mu1):
            mu3 = m - 1 - mu1 - mu2
            for b1 in _branch_options(mu1, j, fresh):
                for b2 in _branch_options(mu2, j, fresh):
                    for b3 in _branch_options(mu3, 1 - j, fresh):
                        out.append(node(T2, j, [b1, b2, b3]))
    return out


def gen_That(spec: TreeSpaceSpec) -> list[DecoratedTree]:
    """Non-resonant planted t2 trees of the requested order and parity.

    One canonical representative per shape class, leaf symbols relabelled
    depth-first from ``k1``.
    """
    if spec.resonant:
        raise ValueError("use gen_That_res for resonant families")
    orders = range(1, spec.order + 1) if spec.cumulative else [spec.order]
    seen: dict[tuple, DecoratedTree] = {}
    for m in orders:
        for t in _gen_hat_raw(m, spec.parity, _fresh()):
            t = relabel_fresh(t)
            if is_non_resonant(t):
                seen.setdefault(t.sort_key(), t)
    return sorted(seen.values(), key=lambda t: (order(t), t.sort_key()))


def gen_T0(spec: TreeSpaceSpec) -> list[DecoratedTree]:
    """Trees of the Duhamel series space: a bare leaf plus every planted t2
    tree wrapped under a t1 root edge, up to the requested order."""
    if spec.resonant:
        raise ValueError("the Duhamel series space is non-resonant")
    j = spec.parity
    out = [leaf(T1, j, FreqVector.of(1))]
    top = spec.order
    for m in range(1, top + 1):
        hat = gen_That(TreeSpaceSpec(order=m, parity=j))
        for sub in hat:
            out.append(canonicalize(DecoratedTree(T1, j, sub.freq, (sub,))))
    if not spec.cumulative and spec.order > 0:
        out = [t for t in out if order(t) == spec.order]
    return sorted(out, key=lambda t: (order(t), t.sort_key()))


def resonant_letter_patterns(target: FreqVector, parity: int,
                             fresh) -> list[DecoratedTree]:
    """The two leaf-identification patterns of a resonant cherry whose root
    frequency equals ``target``.

    Both patterns share one canonical form; they are kept as distinct list
    entries because the series sums count them separately.
    """
    a = FreqVector.of(fresh())
    if parity == 0:
        t = node(T2, 0, [leaf(T1, 1, a), leaf(T1, 0, a), leaf(T1, 0, target)])
    else:
        t = node(T2, 1, [leaf(T1, 1, a), leaf(T1, 1, target), leaf(T1, 0, a)])
    return [t, t]


def nonresonant_letter_at(target: FreqVector, parity: int,
                          fresh) -> DecoratedTree:
    """A symbolic cherry with root frequency ``target``: two fresh leaves and
    one leaf carrying the frequency forced by the node identity."""
    a = FreqVector.of(fresh())
    b = FreqVector.of(fresh())
    if parity == 0:
        forced = target + a - b  # root = -a + b + forced
        return node(T2, 0, [leaf(T1, 1, a), leaf(T1, 0, b),
                            leaf(T1, 0, forced)])
    forced = a + b - target  # root = -(-a - b + forced)
    return node(T2, 1, [leaf(T1, 1, a), leaf(T1, 1, b),
                        leaf(T1, 0, forced)])


def gen_That_res(spec: TreeSpaceSpec) -> list[DecoratedTree]:
    """Trees with exactly one resonant oscillation node (a cherry node).

    Order 1: the resonant cherry itself.  Higher orders: a resonant cherry
    grafted on a leaf of a non-resonant tree of one order less.  Every
    canonical shape appears exactly twice, once per identification pattern.
    """
    if not spec.resonant:
        raise ValueError("gen_That_res generates resonant families")
    orders = range(1, spec.order + 1) if spec.cumulative else [spec.order]
    shapes: dict[tuple, DecoratedTree] = {}
    for m in orders:
        for t in _res_shapes(m, spec.parity):
            shapes.setdefault(t.sort_key(), t)
    out = []
    for t in sorted(shapes.values(), key=lambda t: (order(t), t.sort_key())):
        out.extend([t, t])
    return out


def _res_shapes(m: int, j: int) -> list[DecoratedTree]:
    if m == 1:
        fresh = _fresh()
        f = FreqVector.of(fresh())
        pat = resonant_letter_patterns(f, j, fresh)[0]
        return [relabel_fresh(pat)]
    out = []
    for base in gen_That(TreeSpaceSpec(order=m - 1, parity=j)):
        start = max(base.symbols(), default=0) + 1
        counter = itertools.count(start)
        fresh = lambda: next(counter)  # noqa: E731
        for path in base.leaf_paths():
            lf = base.at(path)
            sigma = resonant_letter_patterns(lf.freq, lf.parity, fresh)[0]
            grown = DecoratedTree(lf.kind, lf.parity, lf.freq, (sigma,))
            t = relabel_fresh(base.replace_at(path, grown))
            if len(resonant_nodes(t)) == 1:
                out.append(t)
    return out


def alphabet_letters(parityset=(0, 1)) -> list[DecoratedTree]:
    """The cherry templates generating the word alphabet, one per parity."""
    out = []
    for p in sorted(set(parityset)):
        fresh = _fresh()
        a, b, c = (FreqVector.of(fresh()) for _ in range(3))
        if p == 0:
            out.append(node(T2, 0, [leaf(T1, 1, a), leaf(T1, 0, b),
                                    leaf(T1, 0, c)]))
        else:
            out.append(node(T2, 1, [leaf(T1, 1, a), leaf(T1, 1, b),
                                    leaf(T1, 0, c)]))
    return out
