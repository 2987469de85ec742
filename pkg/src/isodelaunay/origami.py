"""Square-tiled surfaces from permutation pairs.

An origami is given by permutations h (horizontal gluing: the right side of
square j meets the left side of square h(j)) and v (vertical: the top of
square j meets the bottom of square v(j)) acting transitively on 1..s.
Each square is cut along its positively sloped diagonal into a lower
triangle f{j}- and an upper triangle f{j}+.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

from .angles import AngleAssignment
from .ribbon import TriRibbonGraph

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, size: int | None = None) -> tuple[int, ...]:
    """Parse cycle notation like "(12)(3)(45)" into a 1-indexed image tuple.

    Entries may be comma- or whitespace-separated for values above 9;
    unmentioned symbols are fixed points.  ``size`` pads with fixed points.
    """
    text = text.strip()
    if not text or text in ("()", "id", "e"):
        cycles: list[list[int]] = []
    else:
        if not _CYCLE_RE.fullmatch(text.replace(")(", ")(").replace(" ", "")) and "(" not in text:
            raise ValueError(f"cannot parse permutation {text!r}")
        chunks = _CYCLE_RE.findall(text)
        if "".join(f"({c})" for c in chunks).replace(" ", "") != text.replace(" ", ""):
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = []
        for chunk in chunks:
            if "," in chunk or any(ch.isspace() for ch in chunk.strip()):
                parts = [p for p in re.split(r"[,\s]+", chunk.strip()) if p]
            else:
                parts = list(chunk.strip())
            cyc = [int(p) for p in parts]
            if any(x < 1 for x in cyc):
                raise ValueError(f"permutation symbols must be >= 1 in {text!r}")
            cycles.append(cyc)
    n = max([size or 1] + [x for cyc in cycles for x in cyc])
    image = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            image[a - 1] = b
    flat = [x for cyc in cycles for x in cyc]
    if len(flat) != len(set(flat)):
        raise ValueError(f"repeated symbol in {text!r}")
    return tuple(image)


def permutation_cycles(perm: tuple[int, ...]) -> list[tuple[int, ...]]:
    seen = set()
    cycles = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        cur = perm[start - 1]
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            cur = perm[cur - 1]
        cycles.append(tuple(cyc))
    return cycles


@dataclass(frozen=True)
class Origami:
    h: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self):
        if len(self.h) != len(self.v):
            raise ValueError("h and v act on different numbers of squares")
        if not is_transitive(self.h, self.v):
            raise ValueError("h and v do not act transitively; surface is disconnected")

    @property
    def squares(self) -> int:
        return len(self.h)

    @classmethod
    def from_strings(cls, h: str, v: str) -> "Origami":
        ph = parse_permutation(h)
        pv = parse_permutation(v)
        n = max(len(ph), len(pv))
        return cls(parse_permutation(h, n), parse_permutation(v, n))

    @classmethod
    def from_spec(cls, text: str) -> "Origami":
        """Parse a combined spec like "h=(12);v=(13)"."""
        fields = dict()
        for part in text.split(";"):
            key, _, val = part.partition("=")
            fields[key.strip()] = val.strip()
        if set(fields) != {"h", "v"}:
            raise ValueError(f"expected 'h=...;v=...', got {text!r}")
        return cls.from_strings(fields["h"], fields["v"])


def is_transitive(h: tuple[int, ...], v: tuple[int, ...]) -> bool:
    n = len(h)
    if n == 0:
        return False
    seen = {1}
    stack = [1]
    while stack:
        j = stack.pop()
        for img in (h[j - 1], v[j - 1]):
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return len(seen) == n


def _names(j: int):
    return f"b{j}", f"l{j}", f"d{j}"


def build_origami_graph(o: Origami) -> TriRibbonGraph:
    """Dual graph of the diagonal triangulation.

    Square j owns its bottom edge b{j}, left edge l{j} and diagonal d{j};
    its top edge is b{v(j)} and its right edge is l{h(j)}.  The lower
    triangle f{j}- has counterclockwise boundary (bottom, right, diagonal),
    the upper triangle f{j}+ has (diagonal, top, left).
    """
    edges = []
    faces = []
    for j in range(1, o.squares + 1):
        b, l, d = _names(j)
        edges += [b, l, d]
        right = f"l{o.h[j - 1]}"
        top = f"b{o.v[j - 1]}"
        faces.append((f"f{j}-", (b, right, d)))
        faces.append((f"f{j}+", (d, top, l)))
    return TriRibbonGraph(edges, faces)


def standard_angles(o: Origami) -> AngleAssignment:
    """Isosceles right triangles: the right angle sits opposite the diagonal."""
    theta: AngleAssignment = {}
    q = math.pi / 4
    for j in range(1, o.squares + 1):
        # lower boundary (b, r, d): right angle at the corner between b and r
        theta[(f"f{j}-", 0)] = 2 * q
        theta[(f"f{j}-", 1)] = q
        theta[(f"f{j}-", 2)] = q
        # upper boundary (d, t, l): right angle at the corner between t and l
        theta[(f"f{j}+", 0)] = q
        theta[(f"f{j}+", 1)] = 2 * q
        theta[(f"f{j}+", 2)] = q
    return theta


def equilateral_angles(o: Origami) -> AngleAssignment:
    graph = build_origami_graph(o)
    return {c: math.pi / 3 for c in graph.corners()}


@dataclass(frozen=True)
class Network:
    horizontal: tuple[tuple[int, ...], ...]
    vertical: tuple[tuple[int, ...], ...]
    geometrically_simple: bool
    arboreal: bool

    @property
    def cylinder_count(self) -> int:
        return len(self.horizontal) + len(self.vertical)


def network(o: Origami) -> Network:
    """Cylinder network: one vertex per cylinder, one intersection per square.

    Arboreality is decided both from the intersection graph being a tree and
    from the cycle-count identity #cycles(h) + #cycles(v) = s + 1; the two
    must agree.
    """
    hcyc = permutation_cycles(o.h)
    vcyc = permutation_cycles(o.v)
    cyl_of_h = {j: i for i, cyc in enumerate(hcyc) for j in cyc}
    cyl_of_v = {j: i for i, cyc in enumerate(vcyc) for j in cyc}
    pairs = [(cyl_of_h[j], cyl_of_v[j]) for j in range(1, o.squares + 1)]
    simple = len(pairs) == len(set(pairs))
    # tree check on the bipartite intersection graph Lambda
    n_vertices = len(hcyc) + len(vcyc)
    n_edges = o.squares
    tree = _lambda_connected(hcyc, vcyc, pairs) and n_edges == n_vertices - 1
    identity = len(hcyc) + len(vcyc) == o.squares + 1
    assert tree == identity
    return Network(tuple(hcyc), tuple(vcyc), simple, tree)


def _lambda_connected(hcyc, vcyc, pairs) -> bool:
    n_h = len(hcyc)
    adj: dict[int, set[int]] = {i: set() for i in range(n_h + len(vcyc))}
    for hc, vc in pairs:
        adj[hc].add(n_h + vc)
        adj[n_h + vc].add(hc)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(adj)


def canonical_matching(o: Origami) -> dict:
    """The per-square candidate pairing lower and upper triangles.

    In each square: bottom <-> top, right <-> left, diagonal <-> diagonal,
    which in slots is (f-, s) <-> (f+, s+1).  Z/3-equivariant by
    construction; whether it is a triangle matching is decided by
    verification against the cycle basis.
    """
    iota = {}
    for j in range(1, o.squares + 1):
        lo, hi = f"f{j}-", f"f{j}+"
        for s in range(3):
            iota[(lo, s)] = (hi, (s + 1) % 3)
            iota[(hi, (s + 1) % 3)] = (lo, s)
    return iota


def transitive_pairs_up_to_relabeling(s: int):
    """Transitive (h, v) pairs in Sym(s), one per simultaneous-conjugation class.

    Deduplicates by the lexicographically least simultaneous relabeling of
    the squares.  Intended for small s (exhaustive sweeps).
    """
    perms = list(itertools.permutations(range(1, s + 1)))
    seen = set()
    out = []
    for h in perms:
        for v in perms:
            if not is_transitive(h, v):
                continue
            key = min(
                (
                    tuple(g[h[_inv(g, x) - 1] - 1] for x in range(1, s + 1)),
                    tuple(g[v[_inv(g, x) - 1] - 1] for x in range(1, s + 1)),
                )
                for g in perms
            )
            if key in seen:
                continue
            seen.add(key)
            out.append(Origami(h, v))
    return out


def _inv(g: tuple[int, ...], x: int) -> int:
    return g.index(x) + 1
