"""Hopf-algebraic operations: shuffle algebra on words, the pruning
coproduct on decorated forests, grafting and its adjoint, arborification in
two formulations, and the tree-alphabet word expansion.

One parametric cut engine drives both settings:

* ``generic``  - every edge may be cut; letters are single-edge trees;
* ``fourier``  - only ``t2`` edges may be cut, cut edges stay on the pruned
  side, and the trunk keeps a leaf carrying the cut subtree's frequency
  (this falls out of the planted representation for free); letters are
  one-level ``t2`` trees (cherries).

Words are stored with index 0 the root-most letter; appending at the end of
storage prepends on the left of the conventional display.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .scalars import ONE, Scalar
from .trees import (EMPTY_FOREST, T2, DecoratedTree, Forest, canonicalize,
                    render, render_forest, symmetry_factor)

GENERIC = "generic"
FOURIER = "fourier"


def _cuttable(mode: str) -> Callable[[DecoratedTree], bool]:
    if mode == GENERIC:
        return lambda t: True
    if mode == FOURIER:
        return lambda t: t.kind == T2
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Linear combinations
# ---------------------------------------------------------------------------

class LinComb:
    """Finite formal sum over a hashable basis with exact Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        if terms:
            for k, v in (terms.items() if isinstance(terms, dict) else terms):
                self.add_term(k, v)

    @staticmethod
    def single(key, coeff=1) -> "LinComb":
        out = LinComb()
        out.add_term(key, coeff)
        return out

    def add_term(self, key, coeff) -> None:
        c = Scalar.of(coeff)
        if c.is_zero():
            return
        v = self.terms.get(key)
        v = c if v is None else v + c
        if v.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = v

    def __add__(self, other: "LinComb") -> "LinComb":
        out = LinComb(dict(self.terms))
        for k, v in other.terms.items():
            out.add_term(k, v)
        return out

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + other.scale(-1)

    def scale(self, c) -> "LinComb":
        c = Scalar.of(c)
        out = LinComb()
        for k, v in self.terms.items():
            out.add_term(k, v * c)
        return out

    def map_basis(self, f) -> "LinComb":
        out = LinComb()
        for k, v in self.terms.items():
            out.add_term(f(k), v)
        return out

    def flat_map(self, f: Callable[[object], "LinComb"]) -> "LinComb":
        out = LinComb()
        for k, v in self.terms.items():
            for kk, vv in f(k).terms.items():
                out.add_term(kk, v * vv)
        return out

    def filter(self, pred) -> "LinComb":
        out = LinComb()
        for k, v in self.terms.items():
            if pred(k):
                out.add_term(k, v)
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, LinComb) and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*{k}" for k, v in self.terms.items())


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Word:
    """Sequence of letter trees; stored index 0 is the root-most letter."""

    letters: tuple[DecoratedTree, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def append(self, letter: DecoratedTree) -> "Word":
        return Word(self.letters + (letter,))

    def prepend(self, letter: DecoratedTree) -> "Word":
        return Word((letter,) + self.letters)

    def concat(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "eps"
        # display order: last stored letter leftmost
        return " ".join(render(l) for l in reversed(self.letters))


EMPTY_WORD = Word()


def shuffle(u: Word, v: Word) -> LinComb:
    """Sum over all interleavings preserving each word's stored order."""
    out = LinComb()
    n, m = len(u), len(v)
    for positions in itertools.combinations(range(n + m), n):
        seq: list[DecoratedTree | None] = [None] * (n + m)
        for i, p in enumerate(positions):
            seq[p] = u.letters[i]
        it = iter(v.letters)
        merged = tuple(x if x is not None else next(it) for x in seq)
        out.add_term(Word(merged), 1)
    return out


def shuffle_comb(a: LinComb, b: LinComb) -> LinComb:
    out = LinComb()
    for w1, c1 in a:
        for w2, c2 in b:
            for w, c in shuffle(w1, w2):
                out.add_term(w, c1 * c2 * c)
    return out


def deconcat(w: Word) -> LinComb:
    """All stored-order splittings ``(head, tail)``, boundary splits included.

    The stored head is the root-most part, so in the display convention the
    pair reads (suffix, prefix).
    """
    out = LinComb()
    for i in range(len(w) + 1):
        out.add_term((Word(w.letters[:i]), Word(w.letters[i:])), 1)
    return out


def antipode_shuffle(w: Word) -> LinComb:
    """Signed reversal; verified against the defining identity in the tests."""
    return LinComb.single(Word(tuple(reversed(w.letters))),
                          (-1) ** len(w))


def antipode_comb(a: LinComb) -> LinComb:
    return a.flat_map(antipode_shuffle)


# ---------------------------------------------------------------------------
# Cut engine
# ---------------------------------------------------------------------------

def _cut_terms(t: DecoratedTree, cuttable) -> list[
        tuple[tuple[DecoratedTree, ...], DecoratedTree | None]]:
    """All admissible cut-sets of one planted tree.

    Returns pairs (pruned subtrees, trunk); trunk ``None`` means the root
    edge itself was cut.  The empty cut (nothing pruned) is included.
    """
    out: list[tuple[tuple[DecoratedTree, ...], DecoratedTree | None]] = []
    if cuttable(t):
        out.append(((t,), None))
    child_terms = [_cut_terms(c, cuttable) for c in t.children]
    for combo in itertools.product(*child_terms):
        pruned: tuple[DecoratedTree, ...] = ()
        kids = []
        for p, trunk in combo:
            pruned += p
            if trunk is not None:
                kids.append(trunk)
        out.append((pruned, canonicalize(
            DecoratedTree(t.kind, t.parity, t.freq, tuple(kids)))))
    return out


def _single_cut_terms(t: DecoratedTree, cuttable) -> list[
        tuple[DecoratedTree, DecoratedTree | None]]:
    """Cut-sets of size exactly one: pairs (pruned tree, trunk-or-None)."""
    out: list[tuple[DecoratedTree, DecoratedTree | None]] = []
    if cuttable(t):
        out.append((t, None))
    for i, c in enumerate(t.children):
        for pruned, trunk in _single_cut_terms(c, cuttable):
            kids = list(t.children)
            if trunk is None:
                kids.pop(i)
            else:
                kids[i] = trunk
            out.append((pruned, canonicalize(
                DecoratedTree(t.kind, t.parity, t.freq, tuple(kids)))))
    return out


def bck_coproduct(x, mode: str = FOURIER) -> LinComb:
    """Pruning coproduct: sum over admissible cuts of (pruned ⊗ trunk).

    Multiplicative over forest products; includes the boundary terms
    ``x ⊗ 1`` and ``1 ⊗ x``.  Keys are pairs of Forests.
    """
    cuttable = _cuttable(mode)
    forest = x if isinstance(x, Forest) else Forest.of(x)
    out = LinComb.single((EMPTY_FOREST, EMPTY_FOREST))
    for t in forest.trees:
        tree_comb = LinComb()
        for pruned, trunk in _cut_terms(t, cuttable):
            trunk_forest = EMPTY_FOREST if trunk is None else Forest.of(trunk)
            tree_comb.add_term((Forest.of(*pruned), trunk_forest), 1)
        out = _tensor_mul(out, tree_comb)
    return out


def _tensor_mul(a: LinComb, b: LinComb) -> LinComb:
    out = LinComb()
    for (p1, t1), c1 in a:
        for (p2, t2), c2 in b:
            out.add_term((p1 * p2, t1 * t2), c1 * c2)
    return out


# ---------------------------------------------------------------------------
# Grafting and its adjoint
# ---------------------------------------------------------------------------

def graft(sigma: DecoratedTree, tau, mode: str = FOURIER) -> LinComb:
    """Grafting sum.

    In fourier mode ``sigma`` must be a planted t2 tree and attaches only at
    leaves whose frequency and edge parity match its own; incompatible leaf
    targets contribute zero.  In generic mode it attaches at every node.
    Grafting onto the empty forest returns ``sigma`` itself.
    """
    if isinstance(tau, Forest):
        if tau.is_unit():
            return LinComb.single(canonicalize(sigma))
        if len(tau.trees) == 1:
            tau = tau.trees[0]
        else:
            raise ValueError("grafting targets a single tree or the unit")
    out = LinComb()
    if mode == FOURIER:
        if sigma.kind != T2:
            raise ValueError("fourier grafting requires a planted t2 tree")
        for path in tau.leaf_paths():
            lf = tau.at(path)
            if lf.freq == sigma.freq and lf.parity == sigma.parity:
                grown = DecoratedTree(lf.kind, lf.parity, lf.freq, (sigma,))
                out.add_term(canonicalize(tau.replace_at(path, grown)), 1)
        return out
    if mode == GENERIC:
        for path in _node_paths(tau):
            u = tau.at(path)
            grown = DecoratedTree(u.kind, u.parity, u.freq,
                                  u.children + (sigma,))
            out.add_term(canonicalize(tau.replace_at(path, grown)), 1)
        return out
    raise ValueError(f"unknown mode {mode!r}")


def _node_paths(t: DecoratedTree) -> list[tuple[int, ...]]:
    out = [()]
    for i, c in enumerate(t.children):
        out.extend((i,) + p for p in _node_paths(c))
    return out


def graft_adjoint(tau: DecoratedTree, mode: str = FOURIER) -> LinComb:
    """Single-cut coproduct dual to grafting; keys are (Forest, Forest) pairs.

    Each single cut contributes with coefficient one (plus the ``tau ⊗ 1``
    term), consistently with :func:`bck_coproduct`'s cut semantics.
    """
    cuttable = _cuttable(mode)
    out = LinComb()
    for pruned, trunk in _single_cut_terms(tau, cuttable):
        trunk_forest = EMPTY_FOREST if trunk is None else Forest.of(trunk)
        out.add_term((Forest.of(pruned), trunk_forest), 1)
    return out


def inner_product(a, b) -> int:
    """Pairing ``<a,b> = delta(a,b) * S(b)`` with the edge-shape factor."""
    fa = a if isinstance(a, Forest) else Forest.of(canonicalize(a))
    fb = b if isinstance(b, Forest) else Forest.of(canonicalize(b))
    fa = Forest.of(*(canonicalize(t) for t in fa.trees))
    fb = Forest.of(*(canonicalize(t) for t in fb.trees))
    return symmetry_factor(fb) if fa == fb else 0


def pair_tensor(comb: LinComb, left, right) -> Scalar:
    """Pair a (Forest, Forest) combination against ``left ⊗ right``."""
    total = Scalar.of(0)
    for (p, t), c in comb:
        total = total + c * Scalar.of(inner_product(p, left)) \
            * Scalar.of(inner_product(t, right))
    return total


# ---------------------------------------------------------------------------
# Letters and arborification
# ---------------------------------------------------------------------------

def is_letter(t: DecoratedTree, mode: str = FOURIER) -> bool:
    """Letter test: one-level t2 tree (fourier) or single-edge tree (generic)."""
    if mode == GENERIC:
        return t.is_leaf()
    return t.kind == T2 and bool(t.children) and \
        all(c.is_leaf() for c in t.children)


class ArborifyError(ValueError):
    pass


def arborify(x, variant: str = "coproduct", mode: str = FOURIER) -> LinComb:
    """Arborification: tree to sum of words, one per linear extension of the
    cuttable-edge poset; multiplicative into shuffle over forest products.

    ``variant='coproduct'`` peels the root letter (stored index 0) via the
    pruning coproduct; ``variant='adjoint'`` peels a top letter via the
    single-cut adjoint.  Both return identical combinations.
    """
    if isinstance(x, Forest):
        out = LinComb.single(EMPTY_WORD)
        for t in x.trees:
            out = shuffle_comb(out, arborify(t, variant, mode))
        return out
    t = canonicalize(x)
    out = LinComb()
    if variant == "coproduct":
        for (pruned, trunk), c in bck_coproduct(t, mode):
            if len(trunk.trees) != 1:
                continue
            letter = trunk.trees[0]
            if not is_letter(letter, mode):
                continue
            sub = arborify(pruned, variant, mode)
            for w, cc in sub:
                out.add_term(w.prepend(letter), c * cc)
    elif variant == "adjoint":
        for (pruned, trunk), c in graft_adjoint(t, mode):
            if len(pruned.trees) != 1:
                continue
            letter = pruned.trees[0]
            if not is_letter(letter, mode):
                continue
            sub = arborify(trunk, variant, mode)
            for w, cc in sub:
                out.add_term(w.append(letter), c * cc)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if out.is_zero():
        raise ArborifyError(
            f"no admissible letter decomposition for {render(t)}; "
            "a cut produced a tree deeper than one level")
    return out


def cut_poset_linear_extension_count(t: DecoratedTree,
                                     mode: str = FOURIER) -> int:
    """Number of linear extensions of the cuttable-edge ancestor poset.

    Brute-force oracle: counts topological sorts of the edge set.
    """
    cuttable = _cuttable(mode)
    edges: list[tuple[int, ...]] = []

    def walk(u: DecoratedTree, path: tuple[int, ...]):
        if cuttable(u):
            edges.append(path)
        for i, c in enumerate(u.children):
            walk(c, path + (i,))

    walk(t, ())

    def count(remaining: frozenset) -> int:
        if not remaining:
            return 1
        total = 0
        # peel any minimal remaining edge (no remaining proper ancestor)
        for e in remaining:
            if not any(f != e and e[:len(f)] == f for f in remaining):
                total += count(remaining - {e})
        return total

    return count(frozenset(edges))


# ---------------------------------------------------------------------------
# Word expansion over the tree alphabet
# ---------------------------------------------------------------------------

def hairer_kelly(x, form: str = "coproduct") -> LinComb:
    """Word expansion over the full tree alphabet (generic cuts).

    ``form='coproduct'`` uses the pruning coproduct with the augmentation
    projector on the trunk slot; ``form='adjoint'`` uses the single-cut
    adjoint with the projector on the pruned slot.
    """
    if isinstance(x, Forest):
        out = LinComb.single(EMPTY_WORD)
        for t in x.trees:
            out = shuffle_comb(out, hairer_kelly(t, form))
        return out
    t = canonicalize(x)
    out = LinComb()
    if form == "coproduct":
        for (pruned, trunk), c in bck_coproduct(t, GENERIC):
            if trunk.is_unit() or len(trunk.trees) != 1:
                continue
            sub = hairer_kelly(pruned, form)
            for w, cc in sub:
                out.add_term(w.prepend(trunk.trees[0]), c * cc)
    elif form == "adjoint":
        for (pruned, trunk), c in graft_adjoint(t, GENERIC):
            if pruned.is_unit() or len(pruned.trees) != 1:
                continue
            sub = hairer_kelly(trunk, form)
            for w, cc in sub:
                out.add_term(w.append(pruned.trees[0]), c * cc)
    else:
        raise ValueError(f"unknown form {form!r}")
    return out
