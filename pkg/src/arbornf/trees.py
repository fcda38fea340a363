"""Planted decorated trees and forests.

A tree value represents a planted rooted tree: the object itself is the root
edge (decorated by an operator kind ``t1``/``t2`` and a conjugation parity)
together with the node above it (decorated by a frequency form) and that
node's child subtrees.  The implicit planted root carries no decoration.

Inner nodes satisfy the Kirchhoff-type identity
``(-1)**parity * freq == sum((-1)**c.parity * c.freq)`` over the children.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .scalars import (FreqPolynomial, FreqVector, poly_square_of_linear,
                      sym_name)

T1 = "t1"
T2 = "t2"

# dispersion sign fixed by the algebra context: P_t1 = -x**2, P_t2 = +x**2
_DISPERSION_SIGN = {T1: -1, T2: 1}


def dispersion_poly(kind: str, parity: int, f: FreqVector) -> FreqPolynomial:
    """The phase polynomial attached to one edge: ``(-1)**p * P_kind(f)``.

    The argument reflection ``(-1)**p * f`` drops out of the square, leaving
    an overall sign ``(-1)**p``.
    """
    sign = _DISPERSION_SIGN[kind] * (1 if parity == 0 else -1)
    return poly_square_of_linear(f, sign)


@dataclass(frozen=True)
class DecoratedTree:
    kind: str
    parity: int
    freq: FreqVector
    children: tuple["DecoratedTree", ...] = ()

    def is_leaf(self) -> bool:
        return not self.children

    def sort_key(self) -> tuple:
        return (self.kind, self.parity,
                tuple(c.sort_key() for c in self.children),
                self.freq.coeffs)

    def shape_key(self) -> tuple:
        """Edge-decorated shape with frequency decorations erased."""
        return (self.kind, self.parity,
                tuple(sorted(c.shape_key() for c in self.children)))

    def subtrees(self) -> Iterator["DecoratedTree"]:
        yield self
        for c in self.children:
            yield from c.subtrees()

    def leaves(self) -> list["DecoratedTree"]:
        return [t for t in self.subtrees() if t.is_leaf()]

    def leaf_paths(self) -> list[tuple[int, ...]]:
        """Paths (child-index sequences) to every leaf, depth-first."""
        if self.is_leaf():
            return [()]
        out = []
        for i, c in enumerate(self.children):
            out.extend((i,) + p for p in c.leaf_paths())
        return out

    def at(self, path: tuple[int, ...]) -> "DecoratedTree":
        t = self
        for i in path:
            t = t.children[i]
        return t

    def replace_at(self, path: tuple[int, ...],
                   new: "DecoratedTree") -> "DecoratedTree":
        if not path:
            return new
        i = path[0]
        kids = list(self.children)
        kids[i] = kids[i].replace_at(path[1:], new)
        return DecoratedTree(self.kind, self.parity, self.freq, tuple(kids))

    def symbols(self) -> set[int]:
        out: set[int] = set()
        for t in self.subtrees():
            out.update(t.freq.symbols())
        return out

    def rename(self, mapping) -> "DecoratedTree":
        return DecoratedTree(self.kind, self.parity, self.freq.rename(mapping),
                             tuple(c.rename(mapping) for c in self.children))

    def __str__(self) -> str:
        return render(self)


def leaf(kind: str, parity: int, freq: FreqVector) -> DecoratedTree:
    return DecoratedTree(kind, parity, freq)


def node(kind: str, parity: int,
         children: Iterable[DecoratedTree]) -> DecoratedTree:
    """Build an inner node, deriving its frequency from the children."""
    kids = tuple(children)
    total = FreqVector()
    for c in kids:
        total = total + (c.freq if c.parity == 0 else -c.freq)
    freq = total if parity == 0 else -total
    return canonicalize(DecoratedTree(kind, parity, freq, kids))


def canonicalize(t: DecoratedTree) -> DecoratedTree:
    """Sort children recursively by the canonical total order."""
    if t.is_leaf():
        return t
    kids = tuple(sorted((canonicalize(c) for c in t.children),
                        key=DecoratedTree.sort_key))
    return DecoratedTree(t.kind, t.parity, t.freq, kids)


def validate_frequency_identity(t: DecoratedTree) -> None:
    """Raise ValueError naming the offending node if the identity fails."""
    if t.is_leaf():
        return
    total = FreqVector()
    for c in t.children:
        total = total + (c.freq if c.parity == 0 else -c.freq)
    lhs = t.freq if t.parity == 0 else -t.freq
    if lhs != total:
        raise ValueError(
            f"frequency identity violated at node {render(t)}: "
            f"(-1)^p*f = {lhs}, children give {total}")
    for c in t.children:
        validate_frequency_identity(c)


# ---------------------------------------------------------------------------
# Forests
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Forest:
    """Commutative multiset of trees; the empty forest is the unit."""

    trees: tuple[DecoratedTree, ...] = ()

    @staticmethod
    def of(*trees: DecoratedTree) -> "Forest":
        return Forest(tuple(sorted(trees, key=DecoratedTree.sort_key)))

    def is_unit(self) -> bool:
        return not self.trees

    def __mul__(self, other: "Forest") -> "Forest":
        return Forest.of(*(self.trees + other.trees))

    def __str__(self) -> str:
        return render_forest(self)


EMPTY_FOREST = Forest()


def forest_product(f: Forest, g: Forest) -> Forest:
    return f * g


# ---------------------------------------------------------------------------
# Gradings and combinatorial factors
# ---------------------------------------------------------------------------

def order(t: DecoratedTree) -> int:
    """Number of t2 (oscillatory-integral) edges."""
    return (1 if t.kind == T2 else 0) + sum(order(c) for c in t.children)


def order_forest(f: Forest) -> int:
    return sum(order(t) for t in f.trees)


def _grouped_factor(trees: Iterable[DecoratedTree],
                    key: Callable[[DecoratedTree], tuple],
                    self_factor: Callable[[DecoratedTree], int]) -> int:
    groups: dict[tuple, list[DecoratedTree]] = {}
    for t in trees:
        groups.setdefault(key(t), []).append(t)
    out = 1
    for g in groups.values():
        n = len(g)
        for i in range(2, n + 1):
            out *= i
        for t in g:
            out *= self_factor(t)
    return out


def symmetry_factor(x) -> int:
    """Multiplicity factor computed on the edge-decorated shape only."""
    if isinstance(x, Forest):
        return _grouped_factor(x.trees, DecoratedTree.shape_key,
                               symmetry_factor)
    return _grouped_factor(x.children, DecoratedTree.shape_key,
                           symmetry_factor)


def automorphism_count(x) -> int:
    """Number of automorphisms preserving all decorations (frequencies too)."""
    if isinstance(x, Forest):
        return _grouped_factor(x.trees, DecoratedTree.sort_key,
                               automorphism_count)
    return _grouped_factor(x.children, DecoratedTree.sort_key,
                           automorphism_count)


def brute_force_automorphisms(t: DecoratedTree,
                              with_freq: bool = False) -> int:
    """Count decoration-preserving automorphisms by node-bijection enumeration.

    With ``with_freq=False`` frequencies are erased, which is the convention
    entering the series weights.  Exponential in the node count; oracle only.
    """
    import itertools

    paths: list[tuple[int, ...]] = []

    def walk(u: DecoratedTree, p: tuple[int, ...]):
        paths.append(p)
        for i, c in enumerate(u.children):
            walk(c, p + (i,))

    walk(t, ())

    def deco(p: tuple[int, ...]):
        u = t.at(p)
        return (u.kind, u.parity) + ((u.freq.coeffs,) if with_freq else ())

    index = {p: i for i, p in enumerate(paths)}
    parents = [index[p[:-1]] if p else -1 for p in paths]
    decos = [deco(p) for p in paths]
    n = 0
    for perm in itertools.permutations(range(len(paths))):
        if perm[0] != 0:
            continue
        if all(decos[perm[i]] == decos[i]
               and (parents[i] == -1 or perm[parents[i]] == parents[perm[i]])
               for i in range(len(paths))):
            n += 1
    return n


# ---------------------------------------------------------------------------
# Oscillation polynomial and resonance
# ---------------------------------------------------------------------------

def freq_F(x) -> FreqPolynomial:
    """Total oscillation: sum of edge phase polynomials; additive on forests."""
    if isinstance(x, Forest):
        out = FreqPolynomial()
        for t in x.trees:
            out = out + freq_F(t)
        return out
    out = dispersion_poly(x.kind, x.parity, x.freq)
    for c in x.children:
        out = out + freq_F(c)
    return out


def local_phase(t: DecoratedTree) -> FreqPolynomial:
    """Phase polynomial of the node above this edge: own edge plus child edges."""
    out = dispersion_poly(t.kind, t.parity, t.freq)
    for c in t.children:
        out = out + dispersion_poly(c.kind, c.parity, c.freq)
    return out


def oscillation_nodes(t: DecoratedTree) -> list[DecoratedTree]:
    """Inner nodes sitting atop a t2 edge; these are where integration happens.

    Nodes atop t1 edges are either leaves or carry a single t2 child with the
    same frequency, so their local phase vanishes identically by construction
    and carries no information.
    """
    return [u for u in t.subtrees() if u.kind == T2 and not u.is_leaf()]


def is_non_resonant(t: DecoratedTree) -> bool:
    """True iff no oscillation node has an identically zero local phase."""
    return all(not local_phase(u).is_zero() for u in oscillation_nodes(t))


def resonant_nodes(t: DecoratedTree) -> list[DecoratedTree]:
    return [u for u in oscillation_nodes(t) if local_phase(u).is_zero()]


def relabel_fresh(t: DecoratedTree, start: int = 1) -> DecoratedTree:
    """Deterministically rename single-symbol leaf frequencies.

    Leaves are numbered in depth-first order after canonicalization; inner
    frequencies are recomputed from the identity.
    """
    t = canonicalize(t)
    mapping: dict[int, int] = {}
    nxt = start
    for lf in t.leaves():
        syms = sorted(lf.freq.symbols())
        if len(syms) != 1:
            raise ValueError("relabel_fresh requires single-symbol leaves")
        s = syms[0]
        if s not in mapping:
            mapping[s] = nxt
            nxt += 1

    def rebuild(u: DecoratedTree) -> DecoratedTree:
        if u.is_leaf():
            return DecoratedTree(u.kind, u.parity, u.freq.rename(mapping))
        return node(u.kind, u.parity, [rebuild(c) for c in u.children])

    return canonicalize(rebuild(t))


# ---------------------------------------------------------------------------
# Rendering and parsing
# ---------------------------------------------------------------------------

def render(t: DecoratedTree, fmt: str = "ascii") -> str:
    """Deterministic text encoding; grammar ``I[(kind,p)](freq; child, ...)``."""
    t = canonicalize(t)
    if fmt == "ascii":
        head = f"I[({t.kind},{t.parity})]"
        if t.is_leaf():
            return f"{head}({t.freq})"
        kids = ", ".join(render(c) for c in t.children)
        return f"{head}({t.freq}; {kids})"
    if fmt == "latex":
        sub = "\\mathfrak{t}_1" if t.kind == T1 else "\\mathfrak{t}_2"
        freq = str(t.freq).replace("*", " ")
        body = f"\\lambda_{{{freq}}}"
        if not t.is_leaf():
            body += " " + " ".join(render(c, "latex") for c in t.children)
        return f"\\mathcal{{I}}_{{({sub},{t.parity})}}({body})"
    raise ValueError(f"unknown format {fmt!r}")


def render_forest(f: Forest, fmt: str = "ascii") -> str:
    if f.is_unit():
        return "1"
    sep = " . " if fmt == "ascii" else " \\cdot "
    return sep.join(render(t, fmt) for t in f.trees)


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


_FREQ_TERM = re.compile(r"([+-]?)(\d*)\*?k(\d+)")


def _parse_freq(s: str, pos: int) -> FreqVector:
    if s.strip() == "0":
        return FreqVector()
    d: dict[int, int] = {}
    idx = 0
    text = s.strip()
    while idx < len(text):
        m = _FREQ_TERM.match(text, idx)
        if not m:
            raise ParseError(f"bad frequency term in {s!r}", pos + idx)
        sign = -1 if m.group(1) == "-" else 1
        mag = int(m.group(2)) if m.group(2) else 1
        sym = int(m.group(3))
        d[sym] = d.get(sym, 0) + sign * mag
        idx = m.end()
    return FreqVector.from_dict(d)


def parse(s: str) -> DecoratedTree:
    """Parse the ascii encoding produced by :func:`render`."""
    tree, pos = _parse_tree(s, 0)
    rest = s[pos:].strip()
    if rest:
        raise ParseError(f"trailing input {rest!r}", pos)
    return canonicalize(tree)


def _parse_tree(s: str, pos: int) -> tuple[DecoratedTree, int]:
    while pos < len(s) and s[pos].isspace():
        pos += 1
    m = re.match(r"I\[\((t1|t2),([01])\)\]\(", s[pos:])
    if not m:
        raise ParseError("expected 'I[(kind,parity)]('", pos)
    kind, parity = m.group(1), int(m.group(2))
    idx = pos + m.end()
    depth = 1
    start = idx
    # find matching close paren of the argument list
    while idx < len(s) and depth > 0:
        if s[idx] == "(":
            depth += 1
        elif s[idx] == ")":
            depth -= 1
        idx += 1
    if depth != 0:
        raise ParseError("unbalanced parentheses", pos)
    body = s[start:idx - 1]
    semi = _top_level_find(body, ";")
    if semi < 0:
        return DecoratedTree(kind, parity, _parse_freq(body, start)), idx
    freq = _parse_freq(body[:semi], start)
    kids = []
    child_pos = start + semi + 1
    for part in _top_level_split(body[semi + 1:], ","):
        child, _ = _parse_tree(part, 0)
        kids.append(child)
        child_pos += len(part) + 1
    return DecoratedTree(kind, parity, freq, tuple(kids)), idx


def _top_level_find(s: str, ch: str) -> int:
    depth = 0
    for i, c in enumerate(s):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == ch and depth == 0:
            return i
    return -1


def _top_level_split(s: str, ch: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for c in s:
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        if c == ch and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(c)
    parts.append("".join(cur))
    return [p for p in parts if p.strip()]
