"""Oriented rooted trees with labeled input tails, and their operad.

A tree is stored at the flag level: a set of half-edges (flags), a boundary
map flag -> vertex, and an involution pairing flags into edges (fixed points
are tails).  One involution-fixed flag is the root tail, the output; all
other tails are inputs and carry marking labels.  Orientation toward the
root is derived, never stored.

Equality is isomorphism respecting the root and the input labels, decided
through a canonical nested form: each vertex is encoded as its sorted input
labels plus its children's encodings sorted by their serialization, which is
also the JSON form ``{"inputs": [...], "children": [...]}``.

Trees are immutable and every operation returns a new tree, so values can
be shared freely.
"""

import json
from collections import Counter
from functools import lru_cache
from itertools import combinations, product

from .motive import MotClass, blowup_class, proj_class
from .genseries import stratum_factor_class


def _label_key(x):
    # total order for mixed int/str label sets
    return (x.__class__.__name__, x)


class RootedTree:
    __slots__ = (
        "flags",
        "vertices",
        "boundary",
        "involution",
        "root_tail",
        "input_labels",
        "_flags_at",
        "_depth",
        "_out_flag",
        "_canon",
    )

    def __init__(self, flags, vertices, boundary, involution, root_tail, input_labels):
        flags = frozenset(flags)
        vertices = frozenset(vertices)
        boundary = dict(boundary)
        involution = dict(involution)
        input_labels = dict(input_labels)

        if set(involution) != flags or set(boundary) != flags:
            raise ValueError("boundary and involution must be defined exactly on the flags")
        for f, g in involution.items():
            if g not in flags or involution[g] != f:
                raise ValueError("involution must square to the identity")
        if not set(boundary.values()) <= vertices:
            raise ValueError("boundary image must lie in the vertex set")
        if root_tail not in flags or involution[root_tail] != root_tail:
            raise ValueError("root tail must be an involution-fixed flag")

        tails = {f for f in flags if involution[f] == f}
        marked = set(input_labels.values())
        if len(marked) != len(input_labels) or marked != tails - {root_tail}:
            raise ValueError("input labels must biject onto the non-root tails")

        edges = {frozenset((f, involution[f])) for f in flags if involution[f] != f}
        if len(vertices) != len(edges) + 1:
            raise ValueError("flag data is not a tree (vertex/edge count)")

        flags_at = {v: set() for v in vertices}
        for f, v in boundary.items():
            flags_at[v].add(f)
        # orientation toward the root; also proves connectivity
        root_vertex = boundary[root_tail]
        depth = {root_vertex: 0}
        out_flag = {root_vertex: root_tail}
        frontier = [root_vertex]
        while frontier:
            v = frontier.pop()
            for f in flags_at[v]:
                g = involution[f]
                if g == f:
                    continue
                w = boundary[g]
                if w not in depth:
                    depth[w] = depth[v] + 1
                    out_flag[w] = g
                    frontier.append(w)
        if len(depth) != len(vertices):
            raise ValueError("flag data is not a tree (disconnected)")

        object.__setattr__(self, "flags", flags)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "boundary", boundary)
        object.__setattr__(self, "involution", involution)
        object.__setattr__(self, "root_tail", root_tail)
        object.__setattr__(self, "input_labels", input_labels)
        object.__setattr__(self, "_flags_at", flags_at)
        object.__setattr__(self, "_depth", depth)
        object.__setattr__(self, "_out_flag", out_flag)
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, name, value):
        raise AttributeError("RootedTree is immutable")

    # -- basic structure -------------------------------------------------

    @property
    def root_vertex(self):
        return self.boundary[self.root_tail]

    @property
    def markings(self):
        return frozenset(self.input_labels)

    def input_count(self):
        return len(self.input_labels)

    def edges(self):
        return {frozenset((f, g)) for f, g in self.involution.items() if f != g}

    def tails(self):
        return {f for f, g in self.involution.items() if f == g}

    def flags_at(self, v):
        return frozenset(self._flags_at[v])

    def in_degree(self, v):
        """Incoming tails plus edges from children; the outgoing flag is excluded."""
        return len(self._flags_at[v]) - 1

    def children(self, v):
        """Child vertices of v, via the edges not pointing toward the root."""
        out = []
        for f in self._flags_at[v]:
            g = self.involution[f]
            if g != f and self._out_flag[self.boundary[g]] == g:
                out.append(self.boundary[g])
        return out

    def mother(self, v):
        if v == self.root_vertex:
            return None
        return self.boundary[self.involution[self._out_flag[v]]]

    def is_stable(self):
        """Every vertex carries at least two incoming flags (tails or child edges)."""
        return all(self.in_degree(v) >= 2 for v in self.vertices)

    # -- canonical form and serialization ----------------------------------

    def to_nested(self):
        def build(v):
            inputs = tuple(
                sorted((m for m, f in self.input_labels.items() if self.boundary[f] == v), key=_label_key)
            )
            subs = tuple(sorted((build(w) for w in self.children(v)), key=_canon_str))
            return (inputs, subs)

        return build(self.root_vertex)

    def canonical_str(self):
        if self._canon is None:
            object.__setattr__(self, "_canon", _canon_str(self.to_nested()))
        return self._canon

    def __eq__(self, other):
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.canonical_str() == other.canonical_str()

    def __hash__(self):
        return hash(self.canonical_str())

    def __repr__(self):
        return "RootedTree(%s)" % self.canonical_str()

    def renumbered(self):
        """Same tree with small consecutive internal labels."""
        return RootedTree.from_nested(self.to_nested())

    def to_json(self):
        def conv(form):
            return {"inputs": list(form[0]), "children": [conv(c) for c in form[1]]}

        return conv(self.to_nested())

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_nested(cls, form):
        flags = []
        vertices = []
        boundary = {}
        involution = {}
        input_labels = {}
        counter = [0]

        def fresh():
            counter[0] += 1
            return counter[0]

        def build(node, incoming_flag):
            inputs, subs = node
            v = len(vertices)
            vertices.append(v)
            boundary[incoming_flag] = v
            for m in inputs:
                f = fresh()
                flags.append(f)
                boundary[f] = v
                involution[f] = f
                input_labels[m] = f
            for sub in subs:
                up, down = fresh(), fresh()
                flags.append(up)
                flags.append(down)
                involution[up] = down
                involution[down] = up
                boundary[up] = v
                build(sub, down)

        root_tail = 0
        flags.append(root_tail)
        involution[root_tail] = root_tail
        build(form, root_tail)
        return cls(flags, vertices, boundary, involution, root_tail, input_labels)

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)

        def conv(node):
            return (tuple(node["inputs"]), tuple(conv(c) for c in node.get("children", ())))

        return cls.from_nested(conv(obj))

    @classmethod
    def corolla(cls, markings):
        """Single vertex with the given input labels."""
        return cls.from_nested((tuple(sorted(set(markings), key=_label_key)), ()))

    @classmethod
    def unit(cls, label=1):
        """The one-input, one-output chain; composition identity."""
        return cls.corolla((label,))


@lru_cache(maxsize=None)
def _canon_str(form):
    inputs, subs = form
    return "(%s|%s)" % (",".join(repr(m) for m in inputs), ";".join(_canon_str(c) for c in subs))


# -- elementary morphisms ---------------------------------------------------


def is_stable(tau):
    return tau.is_stable()


def graft(tau, sigma, input_flag):
    """Plug the output of tau into the given input tail of sigma."""
    tree, _ = _graft(tau, sigma, input_flag)
    return tree


def _graft(tau, sigma, input_flag):
    if input_flag not in sigma.flags:
        raise ValueError("graft target flag is not a flag of the host tree")
    if input_flag == sigma.root_tail:
        raise ValueError("cannot graft into the root tail")
    if sigma.involution[input_flag] != input_flag:
        raise ValueError("graft target must be a tail, not an edge flag")
    consumed = next(m for m, f in sigma.input_labels.items() if f == input_flag)
    if tau.markings & (sigma.markings - {consumed}):
        raise ValueError("marking labels collide; relabel before grafting")

    def ta(x):
        return ("g0", x)

    def tb(x):
        return ("g1", x)

    flags = [ta(f) for f in tau.flags] + [tb(f) for f in sigma.flags]
    vertices = [ta(v) for v in tau.vertices] + [tb(v) for v in sigma.vertices]
    boundary = {ta(f): ta(v) for f, v in tau.boundary.items()}
    boundary.update({tb(f): tb(v) for f, v in sigma.boundary.items()})
    involution = {ta(f): ta(g) for f, g in tau.involution.items()}
    involution.update({tb(f): tb(g) for f, g in sigma.involution.items()})
    new_edge = (ta(tau.root_tail), tb(input_flag))
    involution[new_edge[0]] = new_edge[1]
    involution[new_edge[1]] = new_edge[0]
    input_labels = {m: ta(f) for m, f in tau.input_labels.items()}
    input_labels.update({m: tb(f) for m, f in sigma.input_labels.items() if m != consumed})
    tree = RootedTree(flags, vertices, boundary, involution, tb(sigma.root_tail), input_labels)
    return tree, frozenset(new_edge)


def contract_edge(tau, edge):
    """Contract a two-flag involution orbit, merging its endpoints."""
    edge = frozenset(edge)
    if len(edge) != 2:
        raise ValueError("an edge consists of two distinct flags")
    if not edge <= tau.flags:
        raise ValueError("edge flags do not belong to the tree")
    f, g = sorted(edge, key=lambda x: tau._depth[tau.boundary[x]])
    if tau.involution[f] != g:
        raise ValueError("flags are not matched by the involution (tails cannot be contracted)")
    keep = tau.boundary[f]  # parent side
    drop = tau.boundary[g]
    flags = tau.flags - edge
    vertices = tau.vertices - {drop}
    boundary = {h: (keep if tau.boundary[h] == drop else tau.boundary[h]) for h in flags}
    involution = {h: tau.involution[h] for h in flags}
    return RootedTree(flags, vertices, boundary, involution, tau.root_tail, tau.input_labels)


def graft_all(tau, args):
    """Graft args[k] into the k-th input of tau (inputs in sorted label order).

    Returns the intermediate grafted tree together with the tuple of new
    edges, one per argument.  Marking labels of the args must be pairwise
    disjoint.
    """
    slots = sorted(tau.input_labels, key=_label_key)
    if len(args) != len(slots):
        raise ValueError("arity mismatch: tree takes %d inputs, got %d" % (len(slots), len(args)))
    seen = set()
    for a in args:
        if a.markings & seen:
            raise ValueError("argument marking labels collide")
        seen |= a.markings

    def tt(x):
        return ("h", x)

    def tk(k, x):
        return ("a", k, x)

    flags = [tt(f) for f in tau.flags]
    vertices = [tt(v) for v in tau.vertices]
    boundary = {tt(f): tt(v) for f, v in tau.boundary.items()}
    involution = {tt(f): tt(g) for f, g in tau.involution.items()}
    input_labels = {}
    new_edges = []
    for k, (slot, arg) in enumerate(zip(slots, args)):
        flags.extend(tk(k, f) for f in arg.flags)
        vertices.extend(tk(k, v) for v in arg.vertices)
        boundary.update({tk(k, f): tk(k, v) for f, v in arg.boundary.items()})
        involution.update({tk(k, f): tk(k, g) for f, g in arg.involution.items()})
        input_labels.update({m: tk(k, f) for m, f in arg.input_labels.items()})
        e = (tt(tau.input_labels[slot]), tk(k, arg.root_tail))
        involution[e[0]] = e[1]
        involution[e[1]] = e[0]
        new_edges.append(frozenset(e))
    tree = RootedTree(flags, vertices, boundary, involution, tt(tau.root_tail), input_labels)
    return tree, tuple(new_edges)


def compose(tau, args):
    """Operadic composition: graft every argument, then contract the new edges.

    Argument k is plugged into the k-th input of tau (inputs ordered by
    label) after its markings are relabeled to the k-th block of
    1..sum(inputs), so the result has inputs labeled 1..sum(inputs).
    """
    slots = sorted(tau.input_labels, key=_label_key)
    if len(args) != len(slots):
        raise ValueError("arity mismatch: tree takes %d inputs, got %d" % (len(slots), len(args)))
    relabeled = []
    offset = 0
    for a in args:
        old = sorted(a.input_labels, key=_label_key)
        mapping = {o: offset + i + 1 for i, o in enumerate(old)}
        relabeled.append(permute_markings(a, mapping))
        offset += len(old)
    tree, new_edges = graft_all(tau, relabeled)
    for e in new_edges:
        tree = contract_edge(tree, e)
    return tree.renumbered()


def permute_markings(tau, pi):
    """Relabel the input tails by the bijection pi (a dict on the markings)."""
    if set(pi) != set(tau.input_labels):
        raise ValueError("permutation domain does not match the marking set")
    if len(set(pi.values())) != len(pi):
        raise ValueError("relabeling is not injective")
    input_labels = {pi[m]: f for m, f in tau.input_labels.items()}
    return RootedTree(
        tau.flags, tau.vertices, tau.boundary, tau.involution, tau.root_tail, input_labels
    )


def forget_marking(tau, s):
    """Drop one marking and contract any vertex that becomes unstable.

    A destabilized non-root vertex is contracted into its mother; a
    destabilized root with a child is merged with it.  A single bare vertex
    is returned as is.
    """
    if s not in tau.input_labels:
        raise ValueError("unknown marking %r" % (s,))
    f = tau.input_labels[s]
    flags = tau.flags - {f}
    boundary = {h: tau.boundary[h] for h in flags}
    involution = {h: tau.involution[h] for h in flags}
    input_labels = {m: h for m, h in tau.input_labels.items() if m != s}
    t = RootedTree(flags, tau.vertices, boundary, involution, tau.root_tail, input_labels)
    while len(t.vertices) > 1:
        unstable = sorted(
            (v for v in t.vertices if t.in_degree(v) < 2),
            key=lambda v: (t._depth[v], str(v)),
        )
        if not unstable:
            break
        v = unstable[0]
        if v == t.root_vertex:
            kids = t.children(v)
            if not kids:
                break
            edge = frozenset((t._out_flag[kids[0]], t.involution[t._out_flag[kids[0]]]))
        else:
            f_out = t._out_flag[v]
            edge = frozenset((f_out, t.involution[f_out]))
        t = contract_edge(t, edge)
    return t.renumbered()


# -- classes and point counts ----------------------------------------------


def tree_class(tau, d):
    """Class of the tree of projective d-spaces with shape tau.

    Computed by gluing root to leaf: every vertex after the root blows up a
    point of the current variety (codimension d) and glues a fresh P^d along
    its hyperplane to the exceptional divisor.  Equals N [P^d] - (N-1) for N
    vertices; for d = 1 that is N T + N + 1.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError("d must be a positive int")
    if not tau.is_stable():
        raise ValueError("unstable tree")
    pd = proj_class(d)
    hyper = proj_class(d - 1)
    total = pd
    for v in tau.vertices:
        if v == tau.root_vertex:
            continue
        total = blowup_class(total, MotClass.one(), d) + pd - hyper
    return total


def tree_points(tau, d, m):
    """Point count of the glued tree over the degree-m extension.

    For d = 1 a tree with N vertices has N(m+1) + 1 points.
    """
    return tree_class(tau, d).count_points(m)


class StratumDescriptor:
    """A boundary stratum: a stable tree together with the ambient dimension."""

    __slots__ = ("tree", "d")

    def __init__(self, tree, d):
        if not tree.is_stable():
            raise ValueError("stratum trees must be stable")
        if not isinstance(d, int) or d < 1:
            raise ValueError("d must be a positive int")
        object.__setattr__(self, "tree", tree)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("StratumDescriptor is immutable")

    def stratum_class(self):
        out = MotClass.one()
        for v in self.tree.vertices:
            out = out * stratum_factor_class(self.d, self.tree.in_degree(v))
        return out


# -- enumeration and the strata decomposition --------------------------------


def _partitions_min2(items):
    # set partitions with every block of size >= 2
    items = tuple(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for r in range(1, len(rest) + 1):
        for extra in combinations(rest, r):
            block = (first,) + extra
            left = tuple(x for x in rest if x not in extra)
            for tail in _partitions_min2(left):
                yield (block,) + tail


@lru_cache(maxsize=None)
def _stable_forms(labels):
    """Nested forms of all stable trees with the given input labels, sorted."""
    out = []
    label_set = set(labels)
    for r in range(len(labels) + 1):
        for root_inputs in combinations(labels, r):
            rest = tuple(sorted(label_set - set(root_inputs), key=_label_key))
            for blocks in _partitions_min2(rest):
                if len(root_inputs) + len(blocks) < 2:
                    continue
                options = [_stable_forms(tuple(sorted(b, key=_label_key))) for b in blocks]
                for chosen in product(*options):
                    form = (root_inputs, tuple(sorted(chosen, key=_canon_str)))
                    out.append(form)
    return tuple(sorted(out, key=_canon_str))


def enumerate_stable_trees(n):
    """All stable rooted trees with inputs labeled 1..n, each exactly once."""
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an int >= 2")
    return [RootedTree.from_nested(form) for form in _stable_forms(tuple(range(1, n + 1)))]


def _in_degrees(form):
    inputs, subs = form
    degrees = [len(inputs) + len(subs)]
    for sub in subs:
        degrees.extend(_in_degrees(sub))
    return degrees


def strata_sum(d, n):
    """Total class of the stratification by stable trees.

    Sums, over every stable tree with n inputs, the product over vertices of
    the stratum factor for the vertex's in-degree.  Equals tdn_class(d, n):
    the strata partition the compactified space.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError("d must be a positive int")
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an int >= 2")
    profiles = Counter(
        tuple(sorted(_in_degrees(form))) for form in _stable_forms(tuple(range(1, n + 1)))
    )
    factors = {}
    total = MotClass.zero()
    for profile, count in sorted(profiles.items()):
        cls = MotClass.one()
        for k in profile:
            if k not in factors:
                factors[k] = stratum_factor_class(d, k)
            cls = cls * factors[k]
        total = total + count * cls
    return total


def strata_table(d, n):
    """One StratumDescriptor per stable tree with n inputs, in canonical order."""
    return [StratumDescriptor(tree, d) for tree in enumerate_stable_trees(n)]
