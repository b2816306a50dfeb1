"""Expression calculus for torifications and their constructible closure.

Expressions are built from tori by finite products, disjoint unions, and
complements.  A complement carries an assignment sending each atomic piece
of the removed expression to an atomic piece of the ambient one of strictly
larger dimension; that structural rule stands in for embeddability, and all
the decompositions produced here satisfy it.

The atoms of an expression are the constituent cells with their dimensions:
a torus is one atom, atoms multiply through products (dimensions add along
the product path), unions concatenate atoms, and a complement exposes the
atoms of its ambient expression.

A ConstructibleTorification is a labeled list of expressions; its class is
the sum of the pieces' classes, and the decomposition is declared
constructible when that total is a nonnegative combination of torus powers.
"""

from itertools import product as iproduct

from .genseries import open_stratum_class
from .motive import MotClass


class TorifExpr:
    __slots__ = ()

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def __eq__(self, other):
        if not isinstance(other, TorifExpr):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "%s.from_json(%r)" % (type(self).__name__, self.to_json())


class Torus(TorifExpr):
    __slots__ = ("dim",)

    def __init__(self, dim):
        if not isinstance(dim, int) or dim < 0:
            raise ValueError("torus dimension must be a nonnegative int")
        object.__setattr__(self, "dim", dim)

    def _key(self):
        return ("torus", self.dim)

    def to_json(self):
        return {"op": "torus", "dim": self.dim}


class DisjointUnion(TorifExpr):
    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(parts)
        for p in parts:
            if not isinstance(p, TorifExpr):
                raise TypeError("union parts must be expressions")
        object.__setattr__(self, "parts", parts)

    def _key(self):
        return ("union", tuple(p._key() for p in self.parts))

    def to_json(self):
        return {"op": "union", "parts": [p.to_json() for p in self.parts]}


class Product(TorifExpr):
    __slots__ = ("factors",)

    def __init__(self, factors):
        factors = tuple(factors)
        for f in factors:
            if not isinstance(f, TorifExpr):
                raise TypeError("product factors must be expressions")
        object.__setattr__(self, "factors", factors)

    def _key(self):
        return ("product", tuple(f._key() for f in self.factors))

    def to_json(self):
        return {"op": "product", "factors": [f.to_json() for f in self.factors]}


class Complement(TorifExpr):
    __slots__ = ("ambient", "removed", "assignment")

    def __init__(self, ambient, removed, assignment=None):
        if not isinstance(ambient, TorifExpr) or not isinstance(removed, TorifExpr):
            raise TypeError("complement takes two expressions")
        if assignment is None:
            assignment = _auto_assignment(ambient, removed)
        else:
            assignment = tuple(assignment)
            if len(assignment) != len(atoms(removed)):
                raise ValueError("assignment must cover every atom of the removed expression")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "removed", removed)
        object.__setattr__(self, "assignment", assignment)

    def _key(self):
        return ("complement", self.ambient._key(), self.removed._key(), self.assignment)

    def to_json(self):
        return {
            "op": "complement",
            "ambient": self.ambient.to_json(),
            "removed": self.removed.to_json(),
            "assignment": [a for a in self.assignment],
        }


def expr_from_json(obj):
    op = obj["op"]
    if op == "torus":
        return Torus(obj["dim"])
    if op == "union":
        return DisjointUnion([expr_from_json(p) for p in obj["parts"]])
    if op == "product":
        return Product([expr_from_json(f) for f in obj["factors"]])
    if op == "complement":
        return Complement(
            expr_from_json(obj["ambient"]),
            expr_from_json(obj["removed"]),
            obj.get("assignment"),
        )
    raise ValueError("unknown expression op %r" % (op,))


def atoms(expr):
    """Dimensions of the constituent cells, in a fixed traversal order."""
    if isinstance(expr, Torus):
        return (expr.dim,)
    if isinstance(expr, DisjointUnion):
        out = ()
        for p in expr.parts:
            out += atoms(p)
        return out
    if isinstance(expr, Product):
        dims = [atoms(f) for f in expr.factors]
        return tuple(sum(combo) for combo in iproduct(*dims))
    if isinstance(expr, Complement):
        return atoms(expr.ambient)
    raise TypeError("not an expression: %r" % (expr,))


def dimension(expr):
    """Max atom dimension; -1 for an expression with no atoms."""
    dims = atoms(expr)
    return max(dims) if dims else -1


def _auto_assignment(ambient, removed):
    amb = atoms(ambient)
    target = None
    if amb:
        best = max(amb)
        target = amb.index(best)
    out = []
    for dim in atoms(removed):
        if target is not None and amb[target] > dim:
            out.append(target)
        else:
            # any strictly larger atom will do; None marks an unassignable atom
            pick = next((i for i, a in enumerate(amb) if a > dim), None)
            out.append(pick)
    return tuple(out)


def validate(expr, _path="$"):
    """Check the strict-dimension complement rule recursively.

    Returns (ok, diagnostics); never raises.
    """
    problems = []
    if isinstance(expr, Torus):
        pass
    elif isinstance(expr, DisjointUnion):
        for i, p in enumerate(expr.parts):
            problems.extend(validate(p, "%s.parts[%d]" % (_path, i))[1])
    elif isinstance(expr, Product):
        for i, f in enumerate(expr.factors):
            problems.extend(validate(f, "%s.factors[%d]" % (_path, i))[1])
    elif isinstance(expr, Complement):
        amb = atoms(expr.ambient)
        rem = atoms(expr.removed)
        for i, dim in enumerate(rem):
            j = expr.assignment[i]
            if j is None or not (0 <= j < len(amb)):
                problems.append("%s: removed atom %d (dim %d) has no ambient atom" % (_path, i, dim))
            elif amb[j] <= dim:
                problems.append(
                    "%s: removed atom %d (dim %d) assigned to ambient atom %d (dim %d), not strictly larger"
                    % (_path, i, dim, j, amb[j])
                )
        problems.extend(validate(expr.ambient, _path + ".ambient")[1])
        problems.extend(validate(expr.removed, _path + ".removed")[1])
    else:
        problems.append("%s: not an expression" % _path)
    return (not problems, problems)


def eval_class(expr):
    """Class of the expression: tori to T powers, unions to sums, products to
    products, complements to differences."""
    ok, problems = validate(expr)
    if not ok:
        raise ValueError("invalid complement assignment: " + "; ".join(problems))
    return _eval(expr)


def _eval(expr):
    if isinstance(expr, Torus):
        return MotClass.torus(expr.dim) if expr.dim else MotClass.one()
    if isinstance(expr, DisjointUnion):
        total = MotClass.zero()
        for p in expr.parts:
            total = total + _eval(p)
        return total
    if isinstance(expr, Product):
        total = MotClass.one()
        for f in expr.factors:
            total = total * _eval(f)
        return total
    return _eval(expr.ambient) - _eval(expr.removed)


class ConstructibleTorification:
    """Labeled pieces plus their cached total class."""

    __slots__ = ("pieces", "total_class")

    def __init__(self, pieces):
        pieces = tuple((str(label), expr) for label, expr in pieces)
        labels = [label for label, _ in pieces]
        if len(set(labels)) != len(labels):
            raise ValueError("piece labels must be distinct")
        total = MotClass.zero()
        for _, expr in pieces:
            total = total + eval_class(expr)
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "total_class", total)

    def __setattr__(self, name, value):
        raise AttributeError("ConstructibleTorification is immutable")

    def labels(self):
        return [label for label, _ in self.pieces]

    def piece(self, label):
        for lab, expr in self.pieces:
            if lab == label:
                return expr
        raise KeyError(label)

    def is_f1_constructible(self):
        return self.total_class.is_effective()

    def atom_dims(self):
        """Multiset of atom dimensions across all pieces, sorted."""
        dims = []
        for _, expr in self.pieces:
            dims.extend(atoms(expr))
        return tuple(sorted(dims))

    def __eq__(self, other):
        if not isinstance(other, ConstructibleTorification):
            return NotImplemented
        return self.pieces == other.pieces

    def __repr__(self):
        return "ConstructibleTorification(%d pieces, class %s)" % (len(self.pieces), self.total_class)

    def to_json(self):
        return {
            "pieces": [{"label": lab, "expr": expr.to_json()} for lab, expr in self.pieces],
            "class": self.total_class.to_json(),
        }


# -- standard decompositions -------------------------------------------------


def torify_proj_space(d):
    """Cellular torification of projective d-space.

    Cell k splits into its coordinate tori, one per subset: 2^0 + ... + 2^d
    atomic tori in total, with class sum_k (T+1)^k.
    """
    if not isinstance(d, int) or d < 0:
        raise ValueError("d must be a nonnegative int")
    pieces = []
    for k in range(d + 1):
        for mask in range(2**k):
            pieces.append(("cell%d:t%d" % (k, mask), Torus(bin(mask).count("1"))))
    return ConstructibleTorification(pieces)


def affine_space_expr(d):
    """Affine d-space as the product of d copies of (point + torus)."""
    if not isinstance(d, int) or d < 0:
        raise ValueError("d must be a nonnegative int")
    return Product([DisjointUnion([Torus(0), Torus(1)]) for _ in range(d)])


def affine_minus_points(d, r):
    """Affine d-space with r points removed, as a single expression.

    For d = 1 one of the removed points is taken to be the cell point, so
    the expression is the 1-torus minus r - 1 points; for d >= 2 the points
    are removed from the product cell structure.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError("d must be a positive int")
    if not isinstance(r, int) or r < 0:
        raise ValueError("r must be a nonnegative int")
    if d == 1:
        if r == 0:
            return DisjointUnion([Torus(0), Torus(1)])
        if r == 1:
            return Torus(1)
        if r == 2:
            return Complement(Torus(1), Torus(0))
        return Complement(Torus(1), DisjointUnion([Torus(0)] * (r - 1)))
    if r == 0:
        return affine_space_expr(d)
    return Complement(affine_space_expr(d), DisjointUnion([Torus(0)] * r))


def torify_tree_curve(tau):
    """Constructible torification of a stable tree of projective lines.

    The root component contributes two points and a torus; every other
    component loses one point to the gluing node, contributing a point and a
    torus.  The class of N glued lines is N T + N + 1.
    """
    if not tau.is_stable():
        raise ValueError("unstable tree")
    pieces = []
    order = sorted(tau.vertices, key=lambda v: (tau._depth[v], str(v)))
    for i, v in enumerate(order):
        if v == tau.root_vertex:
            pieces.append(("v%d:p0" % i, Torus(0)))
            pieces.append(("v%d:p1" % i, Torus(0)))
            pieces.append(("v%d:gm" % i, Torus(1)))
        else:
            pieces.append(("v%d:p" % i, Torus(0)))
            pieces.append(("v%d:gm" % i, Torus(1)))
    return ConstructibleTorification(pieces)


def _partitions(items):
    items = tuple(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for tail in _partitions(rest):
        yield ((first,),) + tail
        for i, block in enumerate(tail):
            yield tail[:i] + (block + (first,),) + tail[i + 1 :]


def constructible_open_stratum(d, n):
    """Expression for the configuration stratum as one constructible piece.

    Models a product of n - 2 punctured affine d-spaces with its diagonal
    locus removed: the locus where the coordinates are not pairwise distinct
    is the disjoint union, over non-discrete set partitions, of injective
    configurations, and those are chains of punctured affine spaces.  The
    class equals open_stratum_class(d, n); n = 2 is the empty product.
    """
    if not isinstance(d, int) or d < 1:
        raise ValueError("d must be a positive int")
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an int >= 2")
    m = n - 2
    if m == 0:
        expr = Product(())
    elif m == 1:
        expr = affine_minus_points(d, 2)
    else:
        ambient = Product([affine_minus_points(d, 2) for _ in range(m)])
        chains = []
        for blocks in _partitions(tuple(range(m))):
            k = len(blocks)
            if k == m:
                continue  # the discrete partition is the complement itself
            chains.append(Product([affine_minus_points(d, 2 + i) for i in range(k)]))
        expr = Complement(ambient, DisjointUnion(chains))
    ct = ConstructibleTorification([("stratum", expr)])
    if ct.total_class != open_stratum_class(d, n):
        raise AssertionError("stratum expression class drifted from the product formula")
    return ct


def product_torification(a, b, sep="x"):
    """Pairwise products of pieces, labeled 'left<sep>right'."""
    pieces = []
    for la, ea in a.pieces:
        for lb, eb in b.pieces:
            pieces.append(("%s%s%s" % (la, sep, lb), Product([ea, eb])))
    return ConstructibleTorification(pieces)


# -- complementedness and blowups ---------------------------------------------


def _normalize_selection(ct, sub):
    """Selection = mapping label -> None (whole piece) or a proper part."""
    if isinstance(sub, dict):
        sel = dict(sub)
    else:
        sel = {label: None for label in sub}
    known = set(ct.labels())
    for label in sel:
        if label not in known:
            raise ValueError("selection names unknown piece %r" % (label,))
    return sel


def is_strongly_complemented(ct, sub):
    """True iff the selected locus is a union of whole pieces.

    Then both the locus and its complement inherit decompositions from ct.
    A selection entry naming a proper part of a piece (a sublocus that does
    not fill its piece) breaks the condition.
    """
    sel = _normalize_selection(ct, sub)
    return all(part is None for part in sel.values())


def selection_class(ct, sub):
    sel = _normalize_selection(ct, sub)
    total = MotClass.zero()
    for label, part in sel.items():
        total = total + (eval_class(ct.piece(label)) if part is None else eval_class(part))
    return total


def blowup_decomposition(ct, center, codim):
    """Blow up along a strongly complemented center.

    The center pieces are replaced by their products with the torified
    exceptional projective space of dimension codim - 1; everything else is
    kept.  The total class obeys the blowup formula exactly.
    """
    if not isinstance(codim, int) or codim < 1:
        raise ValueError("codimension must be a positive int")
    sel = _normalize_selection(ct, center)
    if not is_strongly_complemented(ct, sel):
        raise ValueError("center is not strongly complemented")
    exceptional = torify_proj_space(codim - 1)
    pieces = []
    for label, expr in ct.pieces:
        if label in sel:
            for elab, eexpr in exceptional.pieces:
                pieces.append(("%s*E[%s]" % (label, elab), Product([expr, eexpr])))
        else:
            pieces.append((label, expr))
    return ConstructibleTorification(pieces)


def equiv_shadow(a, b, level):
    """Combinatorial shadow of torification equivalence.

    strong: the labeled piece lists agree exactly (the identity map is a
    piece-to-piece match).  weak: the multisets of atomic dimensions agree
    and the total classes agree.  Only the shadow is decided here; witness
    isomorphisms are out of reach of the combinatorial data.
    """
    if level == "strong":
        return sorted(a.pieces, key=lambda p: p[0]) == sorted(b.pieces, key=lambda p: p[0])
    if level == "weak":
        return a.atom_dims() == b.atom_dims() and a.total_class == b.total_class
    raise ValueError("level must be 'strong' or 'weak'")
