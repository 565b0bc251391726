"""Edge-symmetric double groupoids with connections, crossed modules, cubes.

A square

        a
      x --> .
    c |     | b        reads: top a, right b, left c, bottom d,
      v     v          commuting when a-then-b equals c-then-d.
      . --> .
        d

Squares compose vertically (+1, matching bottom against top) and
horizontally (+2, matching right against left); both compositions are
groupoid structures over the same edge groupoid and satisfy the interchange
law.  The connections G-(e) = (e, 1, e, 1) and G+(e) = (1, e, 1, e) are the
canonical corner fillers; they obey the transport law: the connection of a
composite edge is a two-by-two composite of the connections of its factors
padded with degenerate squares.

Two models are built here: the double groupoid of commuting squares of any
finite groupoid, and the double groupoid of a crossed module (P, M, d),
whose squares are boundary tuples together with a filler m in M subject to
d(m) = d^-1 c^-1 a b (the boundary loop read off the square in path order).
A cube (six squares with matched edges) is commutative when its top face
equals the folded composite of the other five with connection squares
filling the four corners of the net; the exact layout is fixed in
`net_composite`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FiniteGroup, FiniteGroupoid, one_object_groupoid
from .errors import (
    NotACrossedModule,
    NotACube,
    NotComposable,
    NotSpecialDouble,
)


# ---------------------------------------------------------------------------
# squares and double groupoids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Square:
    top: object
    right: object
    left: object
    bottom: object
    filler: object = None


@dataclass(frozen=True, eq=False)
class DoubleGroupoid:
    """Square set over an edge groupoid, with composition data.

    ``kind`` is "commuting" (squares carry no filler) or "xmod" (fillers in
    the crossed module's group M, with `xmod`, `edge_elem` and `elem_edge`
    populated).
    """

    edge: FiniteGroupoid
    squares: frozenset
    kind: str
    xmod: object = None
    edge_elem: dict = None
    elem_edge: dict = None

    def seq(self, x, y):
        """Edge x followed by edge y."""
        return self.edge.comp[(y, x)]

    def einv(self, x):
        return self.edge.inv[x]

    def has_square(self, u: Square) -> bool:
        return u in self.squares


def _check_member(D: DoubleGroupoid, u: Square) -> Square:
    if not D.has_square(u):
        raise NotComposable(f"square {u!r} does not belong to this double groupoid")
    return u


def _act(D: DoubleGroupoid, edge, m):
    """Action of an edge (as a P element) on a filler."""
    return D.xmod.action[(D.edge_elem[edge], m)]


def eps1(D: DoubleGroupoid, e) -> Square:
    """Degenerate square for vertical composition: (e, 1, 1, e)."""
    G = D.edge
    filler = None if D.kind == "commuting" else D.xmod.M.identity
    return Square(e, G.id_of[G.tgt[e]], G.id_of[G.src[e]], e, filler)


def eps2(D: DoubleGroupoid, e) -> Square:
    """Degenerate square for horizontal composition: (1, e, e, 1)."""
    G = D.edge
    filler = None if D.kind == "commuting" else D.xmod.M.identity
    return Square(G.id_of[G.src[e]], e, e, G.id_of[G.tgt[e]], filler)


def gamma_minus(D: DoubleGroupoid, e) -> Square:
    """Connection with e on top and left: (e, 1, e, 1)."""
    G = D.edge
    filler = None if D.kind == "commuting" else D.xmod.M.identity
    return Square(e, G.id_of[G.tgt[e]], e, G.id_of[G.tgt[e]], filler)


def gamma_plus(D: DoubleGroupoid, e) -> Square:
    """Connection with e on right and bottom: (1, e, 1, e)."""
    G = D.edge
    filler = None if D.kind == "commuting" else D.xmod.M.identity
    return Square(G.id_of[G.src[e]], e, G.id_of[G.src[e]], e, filler)


def compose_squares(D: DoubleGroupoid, direction: int, u: Square, v: Square) -> Square:
    """u then v: downward for direction 1, rightward for direction 2."""
    _check_member(D, u)
    _check_member(D, v)
    if direction == 1:
        if v.top != u.bottom:
            raise NotComposable("vertical composition needs v.top == u.bottom")
        if D.kind == "commuting":
            filler = None
        else:
            M = D.xmod.M
            filler = M.mul[(v.filler, _act(D, D.einv(v.right), u.filler))]
        out = Square(u.top, D.seq(u.right, v.right), D.seq(u.left, v.left), v.bottom, filler)
    elif direction == 2:
        if v.left != u.right:
            raise NotComposable("horizontal composition needs v.left == u.right")
        if D.kind == "commuting":
            filler = None
        else:
            M = D.xmod.M
            filler = M.mul[(_act(D, D.einv(v.bottom), u.filler), v.filler)]
        out = Square(D.seq(u.top, v.top), v.right, u.left, D.seq(u.bottom, v.bottom), filler)
    else:
        raise NotComposable(f"direction must be 1 or 2, got {direction!r}")
    return _check_member(D, out)


def inverse_square(D: DoubleGroupoid, direction: int, u: Square) -> Square:
    _check_member(D, u)
    if direction == 1:
        if D.kind == "commuting":
            filler = None
        else:
            M = D.xmod.M
            filler = M.inv[_act(D, u.right, u.filler)]
        out = Square(u.bottom, D.einv(u.right), D.einv(u.left), u.top, filler)
    elif direction == 2:
        if D.kind == "commuting":
            filler = None
        else:
            M = D.xmod.M
            filler = _act(D, u.bottom, D.xmod.M.inv[u.filler])
        out = Square(D.einv(u.top), u.left, u.right, D.einv(u.bottom), filler)
    else:
        raise NotComposable(f"direction must be 1 or 2, got {direction!r}")
    return _check_member(D, out)


def commuting_squares(G: FiniteGroupoid) -> DoubleGroupoid:
    """All boundary tuples with a-then-b equal to c-then-d."""
    squares = set()
    for a in G.arrows:
        for b in G.arrows:
            if G.tgt[a] != G.src[b]:
                continue
            ab = G.comp[(b, a)]
            for c in G.arrows:
                if G.src[c] != G.src[a]:
                    continue
                for d in G.arrows:
                    if G.src[d] != G.tgt[c] or G.tgt[d] != G.tgt[b]:
                        continue
                    if G.comp[(d, c)] == ab:
                        squares.add(Square(a, b, c, d))
    return DoubleGroupoid(G, frozenset(squares), "commuting")


# ---------------------------------------------------------------------------
# crossed modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CrossedModule:
    """Groups P and M with boundary M -> P and a P-action on M.

    With products written in path order the axioms read
    d(p.m) = p d(m) p^-1 and (dm).m' = m m' m^-1.
    """

    P: FiniteGroup
    M: FiniteGroup
    boundary: dict
    action: dict  # (p, m) -> m


def validate_crossed_module(X: CrossedModule) -> list:
    bad = []
    P, M = X.P, X.M
    for m in M.elements:
        if X.boundary.get(m) not in set(P.elements):
            bad.append(("boundary-total", m))
    if bad:
        return bad
    for m in M.elements:
        for n in M.elements:
            if X.boundary[M.mul[(m, n)]] != P.mul[(X.boundary[m], X.boundary[n])]:
                bad.append(("boundary-homomorphism", (m, n)))
    for p in P.elements:
        for m in M.elements:
            if (p, m) not in X.action or X.action[(p, m)] not in set(M.elements):
                bad.append(("action-total", (p, m)))
    if bad:
        return bad
    for m in M.elements:
        if X.action[(P.identity, m)] != m:
            bad.append(("action-identity", m))
    for p in P.elements:
        for q in P.elements:
            for m in M.elements:
                if X.action[(P.mul[(p, q)], m)] != X.action[(p, X.action[(q, m)])]:
                    bad.append(("action-compose", (p, q, m)))
    for p in P.elements:
        for m in M.elements:
            for n in M.elements:
                if X.action[(p, M.mul[(m, n)])] != M.mul[(X.action[(p, m)], X.action[(p, n)])]:
                    bad.append(("action-homomorphism", (p, m, n)))
    for p in P.elements:
        for m in M.elements:
            lhs = X.boundary[X.action[(p, m)]]
            rhs = P.mul[(P.mul[(p, X.boundary[m])], P.inv[p])]
            if lhs != rhs:
                bad.append(("equivariance", (p, m)))
    for m in M.elements:
        for n in M.elements:
            lhs = X.action[(X.boundary[m], n)]
            rhs = M.mul[(M.mul[(m, n)], M.inv[m])]
            if lhs != rhs:
                bad.append(("peiffer", (m, n)))
    return bad


def inner_crossed_module(K: FiniteGroup) -> CrossedModule:
    action = {
        (p, m): K.mul[(K.mul[(p, m)], K.inv[p])]
        for p in K.elements
        for m in K.elements
    }
    return CrossedModule(K, K, {m: m for m in K.elements}, action)


def trivial_boundary_crossed_module(P: FiniteGroup, M: FiniteGroup) -> CrossedModule:
    """Central-style data: trivial boundary, trivial action (M must be abelian)."""
    if not M.is_abelian():
        raise NotACrossedModule("trivial boundary and action need an abelian M")
    action = {(p, m): m for p in P.elements for m in M.elements}
    return CrossedModule(P, M, {m: P.identity for m in M.elements}, action)


def xmod_to_double(X: CrossedModule) -> DoubleGroupoid:
    """Squares are boundary tuples with fillers m satisfying dm = d^-1 c^-1 a b."""
    bad = validate_crossed_module(X)
    if bad:
        raise NotACrossedModule(f"axiom failures: {bad[:3]!r}")
    edge = one_object_groupoid(X.P)
    name = {}
    for k in X.P.elements:
        name[k] = "id:o" if k == X.P.identity else f"g:{k}"
    elem = {v: k for k, v in name.items()}

    def seq(x, y):
        return edge.comp[(y, x)]

    squares = set()
    arrows = edge.arrows
    for a in arrows:
        for b in arrows:
            for c in arrows:
                for d in arrows:
                    loop = seq(seq(seq(edge.inv[d], edge.inv[c]), a), b)
                    defect = elem[loop]
                    for m in X.M.elements:
                        if X.boundary[m] == defect:
                            squares.add(Square(a, b, c, d, m))
    return DoubleGroupoid(edge, frozenset(squares), "xmod", X, elem, name)


def double_to_xmod(D: DoubleGroupoid) -> tuple[CrossedModule, dict]:
    """Extract the crossed module of a one-object double groupoid.

    P is the edge vertex group; M consists of the squares with all faces
    but the top degenerate, multiplied horizontally; the boundary reads the
    top edge and the action conjugates through connection squares.  Returns
    the crossed module and the extraction tables.
    """
    G = D.edge
    if len(G.objects) != 1:
        raise NotSpecialDouble("crossed module extraction needs one edge object")
    for e in G.arrows:
        if not (D.has_square(gamma_minus(D, e)) and D.has_square(gamma_plus(D, e))):
            raise NotSpecialDouble(f"missing connection squares for edge {e!r}")
    obj = G.objects[0]
    one = G.id_of[obj]

    edges = tuple(sorted(G.arrows, key=repr))
    P = FiniteGroup(
        edges,
        {(x, y): D.seq(x, y) for x in edges for y in edges},
        one,
        {x: G.inv[x] for x in edges},
    )
    m_squares = tuple(
        sorted(
            (u for u in D.squares if u.right == one and u.left == one and u.bottom == one),
            key=repr,
        )
    )
    ident = next(u for u in m_squares if u.top == one and _is_trivial_filler(D, u))
    mul = {}
    for u in m_squares:
        for v in m_squares:
            mul[(u, v)] = compose_squares(D, 2, u, v)
    inv = {u: inverse_square(D, 2, u) for u in m_squares}
    M = FiniteGroup(m_squares, mul, ident, inv)
    boundary = {u: u.top for u in m_squares}

    def act(p_edge, u):
        left = compose_squares(D, 2, gamma_minus(D, p_edge), u)
        conj = compose_squares(D, 2, left, inverse_square(D, 2, gamma_minus(D, p_edge)))
        pinv = G.inv[p_edge]
        corner = compose_squares(D, 1, gamma_plus(D, pinv), gamma_minus(D, pinv))
        return compose_squares(D, 1, conj, corner)

    action = {(p, u): act(p, u) for p in edges for u in m_squares}
    X = CrossedModule(P, M, boundary, action)
    bad = validate_crossed_module(X)
    if bad:
        raise NotSpecialDouble(f"extracted data fails crossed module axioms: {bad[:3]!r}")
    return X, {"edges": edges, "m_squares": m_squares}


def _is_trivial_filler(D: DoubleGroupoid, u: Square) -> bool:
    if D.kind == "commuting":
        return True
    return u.filler == D.xmod.M.identity


def roundtrip_isomorphism(X: CrossedModule) -> dict:
    """Explicit isomorphism X -> double_to_xmod(xmod_to_double(X))."""
    D = xmod_to_double(X)
    Y, _tables = double_to_xmod(D)
    phi_p = {p: D.elem_edge[p] for p in X.P.elements}
    phi_m = {
        m: Square(D.elem_edge[X.boundary[m]], "id:o", "id:o", "id:o", m)
        for m in X.M.elements
    }
    ok = (
        sorted(map(repr, phi_p.values())) == sorted(map(repr, Y.P.elements))
        and sorted(map(repr, phi_m.values())) == sorted(map(repr, Y.M.elements))
        and all(
            phi_p[X.P.mul[(p, q)]] == Y.P.mul[(phi_p[p], phi_p[q])]
            for p in X.P.elements
            for q in X.P.elements
        )
        and all(
            phi_m[X.M.mul[(m, n)]] == Y.M.mul[(phi_m[m], phi_m[n])]
            for m in X.M.elements
            for n in X.M.elements
        )
        and all(phi_p[X.boundary[m]] == Y.boundary[phi_m[m]] for m in X.M.elements)
        and all(
            phi_m[X.action[(p, m)]] == Y.action[(phi_p[p], phi_m[m])]
            for p in X.P.elements
            for m in X.M.elements
        )
    )
    return {"double": D, "extracted": Y, "phi_p": phi_p, "phi_m": phi_m, "is_isomorphism": ok}


# ---------------------------------------------------------------------------
# law checks
# ---------------------------------------------------------------------------


def transport_check(D: DoubleGroupoid) -> list:
    """Both connections against all composable edge pairs; empty iff the law holds."""
    G = D.edge
    bad = []
    for e in G.arrows:
        for f in G.arrows:
            if G.src[f] != G.tgt[e]:
                continue
            ef = D.seq(e, f)
            row1 = compose_squares(D, 2, gamma_minus(D, e), eps1(D, f))
            row2 = compose_squares(D, 2, eps2(D, f), gamma_minus(D, f))
            if compose_squares(D, 1, row1, row2) != gamma_minus(D, ef):
                bad.append(("transport-minus", (e, f)))
            row1 = compose_squares(D, 2, gamma_plus(D, e), eps2(D, e))
            row2 = compose_squares(D, 2, eps1(D, e), gamma_plus(D, f))
            if compose_squares(D, 1, row1, row2) != gamma_plus(D, ef):
                bad.append(("transport-plus", (e, f)))
    return bad


@dataclass(frozen=True)
class InterchangeReport:
    ok: bool
    method: str
    blocks_checked: int
    witnesses: tuple


def _interchange_direct(D: DoubleGroupoid) -> InterchangeReport:
    by_left: dict = {}
    by_top: dict = {}
    for u in D.squares:
        by_left.setdefault(u.left, []).append(u)
        by_top.setdefault(u.top, []).append(u)
    bad = []
    blocks = 0
    for u in D.squares:
        for v in by_left.get(u.right, ()):
            uv = compose_squares(D, 2, u, v)
            for w in by_top.get(u.bottom, ()):
                uw = compose_squares(D, 1, u, w)
                for z in by_top.get(v.bottom, ()):
                    if z.left != w.right:
                        continue
                    blocks += 1
                    lhs = compose_squares(D, 1, uv, compose_squares(D, 2, w, z))
                    rhs = compose_squares(D, 2, uw, compose_squares(D, 1, v, z))
                    if lhs != rhs:
                        bad.append((u, v, w, z))
    return InterchangeReport(not bad, "direct", blocks, tuple(bad[:3]))


def _interchange_factored(D: DoubleGroupoid) -> InterchangeReport:
    """Exhaustive check through the block equation's closed form.

    For fillered squares the two sides of the interchange law always share
    their boundary, and cancelling the common outer factors reduces the law
    for every block to m_z . (g^-1 . m_u) = ((d(m_z) g^-1) . m_u) . m_z with
    g ranging over P and m_u, m_z over M.  Checking that identity for all
    triples therefore covers every composable block exactly.
    """
    X = D.xmod
    P, M = X.P, X.M
    bad = []
    count = 0
    for mz in M.elements:
        for mu in M.elements:
            for g in P.elements:
                count += 1
                ginv = P.inv[g]
                lhs = M.mul[(mz, X.action[(ginv, mu)])]
                rhs = M.mul[(X.action[(P.mul[(X.boundary[mz], ginv)], mu)], mz)]
                if lhs != rhs:
                    bad.append((mz, mu, g))
    return InterchangeReport(not bad, "factored", count, tuple(bad[:3]))


def interchange_check(D: DoubleGroupoid, method: str = "auto") -> InterchangeReport:
    """(u +2 v) +1 (w +2 z) == (u +1 w) +2 (v +1 z) over all blocks.

    ``direct`` enumerates blocks; ``factored`` (fillered squares only) uses
    the equivalent per-triple identity; ``auto`` picks direct when the block
    count stays small.
    """
    if method == "direct":
        return _interchange_direct(D)
    if method == "factored":
        if D.kind != "xmod":
            raise NotSpecialDouble("factored interchange needs filler structure")
        return _interchange_factored(D)
    n = len(D.squares)
    if D.kind == "xmod" and n > 40:
        return _interchange_factored(D)
    return _interchange_direct(D)


def square_groupoid_axioms(D: DoubleGroupoid, direction: int, max_squares: int = 40) -> list:
    """Identity, inverse and associativity laws of one composition.

    Exhaustive; guarded by a size limit since associativity is cubic.
    """
    if len(D.squares) > max_squares:
        raise OverflowError(f"axiom sweep limited to {max_squares} squares")
    bad = []
    for u in D.squares:
        if direction == 1:
            lid, rid = eps1(D, u.top), eps1(D, u.bottom)
        else:
            lid, rid = eps2(D, u.left), eps2(D, u.right)
        if compose_squares(D, direction, lid, u) != u:
            bad.append(("left-identity", u))
        if compose_squares(D, direction, u, rid) != u:
            bad.append(("right-identity", u))
        inv = inverse_square(D, direction, u)
        if compose_squares(D, direction, u, inv) != (lid if direction else None):
            bad.append(("inverse", u))
    pairs = []
    for u in D.squares:
        for v in D.squares:
            try:
                pairs.append((u, v, compose_squares(D, direction, u, v)))
            except NotComposable:
                continue
    comp = {(u, v): uv for (u, v, uv) in pairs}
    for (u, v, uv) in pairs:
        for w in D.squares:
            if (v, w) in comp:
                left = comp.get((uv, w))
                right = comp.get((u, comp[(v, w)]))
                if left != right:
                    bad.append(("associativity", (u, v, w)))
    return bad


# ---------------------------------------------------------------------------
# cubes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cube:
    """Six faces; the shell conventions are checked by `validate_cube`.

    With F = (a, b, c, d) in front, K = (a', b', c', d') in back, and depth
    edges p, q, r, s at the four front corners, the faces sit as
    T = (a, q, p, a'), B = (d, s, r, d'), L = (c, r, p, c'), R = (b, s, q, b').
    """

    top: Square
    bottom: Square
    left: Square
    right: Square
    front: Square
    back: Square


def validate_cube(D: DoubleGroupoid, cube: Cube) -> None:
    for face in (cube.top, cube.bottom, cube.left, cube.right, cube.front, cube.back):
        if not D.has_square(face):
            raise NotACube(f"face {face!r} is not a square here")
    F, K, T, B, L, R = cube.front, cube.back, cube.top, cube.bottom, cube.left, cube.right
    checks = [
        (T.top, F.top),
        (T.bottom, K.top),
        (B.top, F.bottom),
        (B.bottom, K.bottom),
        (L.top, F.left),
        (L.bottom, K.left),
        (L.left, T.left),
        (L.right, B.left),
        (R.top, F.right),
        (R.bottom, K.right),
        (R.left, T.right),
        (R.right, B.right),
    ]
    for i, (x, y) in enumerate(checks):
        if x != y:
            raise NotACube(f"edge identification {i} fails: {x!r} != {y!r}")


def net_composite(D: DoubleGroupoid, cube: Cube) -> Square:
    """Fold the five non-top faces flat and compose, corners filled by
    connections:

        [ G+(c)    front    -2 G+(b)   ]
        [ left     bottom   -2 right   ]
        [ -1 G+(c'), -1 back, G-(b'^-1)]
    """
    F, K, B, L, R = cube.front, cube.back, cube.bottom, cube.left, cube.right
    c, b = F.left, F.right
    cp, bp = K.left, K.right
    row1 = compose_squares(D, 2, compose_squares(D, 2, gamma_plus(D, c), F), inverse_square(D, 2, gamma_plus(D, b)))
    row2 = compose_squares(D, 2, compose_squares(D, 2, L, B), inverse_square(D, 2, R))
    row3 = compose_squares(
        D,
        2,
        compose_squares(D, 2, inverse_square(D, 1, gamma_plus(D, cp)), inverse_square(D, 1, K)),
        gamma_minus(D, D.einv(bp)),
    )
    return compose_squares(D, 1, compose_squares(D, 1, row1, row2), row3)


def is_commutative_cube(D: DoubleGroupoid, cube: Cube) -> bool:
    validate_cube(D, cube)
    return cube.top == net_composite(D, cube)


def prism_cube(D: DoubleGroupoid, u: Square) -> Cube:
    """u as front and back of a depth-degenerate cube."""
    return Cube(
        top=eps1(D, u.top),
        bottom=eps1(D, u.bottom),
        left=eps1(D, u.left),
        right=eps1(D, u.right),
        front=u,
        back=u,
    )


def corner_square(D: DoubleGroupoid, e) -> Square:
    """(1, e, e, 1): the two-connection composite filling an inner corner."""
    return compose_squares(D, 1, gamma_plus(D, e), gamma_minus(D, e))


def square_as_cube(D: DoubleGroupoid, u: Square, bottom: Square | None = None) -> Cube:
    """u as the lid of a height-degenerate cube; `bottom` defaults to u."""
    return Cube(
        top=u,
        bottom=bottom if bottom is not None else u,
        left=corner_square(D, u.left),
        right=corner_square(D, u.right),
        front=eps1(D, u.top),
        back=eps1(D, u.bottom),
    )


def compose_cubes(D: DoubleGroupoid, direction: int, c1: Cube, c2: Cube) -> Cube:
    """Cube composition in direction 1 (down), 2 (right) or 3 (deep)."""
    validate_cube(D, c1)
    validate_cube(D, c2)
    if direction == 1:
        if c1.bottom != c2.top:
            raise NotComposable("direction 1 needs bottom == top")
        cube = Cube(
            top=c1.top,
            bottom=c2.bottom,
            left=compose_squares(D, 2, c1.left, c2.left),
            right=compose_squares(D, 2, c1.right, c2.right),
            front=compose_squares(D, 1, c1.front, c2.front),
            back=compose_squares(D, 1, c1.back, c2.back),
        )
    elif direction == 2:
        if c1.right != c2.left:
            raise NotComposable("direction 2 needs right == left")
        cube = Cube(
            top=compose_squares(D, 2, c1.top, c2.top),
            bottom=compose_squares(D, 2, c1.bottom, c2.bottom),
            left=c1.left,
            right=c2.right,
            front=compose_squares(D, 2, c1.front, c2.front),
            back=compose_squares(D, 2, c1.back, c2.back),
        )
    elif direction == 3:
        if c1.back != c2.front:
            raise NotComposable("direction 3 needs back == front")
        cube = Cube(
            top=compose_squares(D, 1, c1.top, c2.top),
            bottom=compose_squares(D, 1, c1.bottom, c2.bottom),
            left=compose_squares(D, 1, c1.left, c2.left),
            right=compose_squares(D, 1, c1.right, c2.right),
            front=c1.front,
            back=c2.back,
        )
    else:
        raise NotComposable(f"direction must be 1, 2 or 3, got {direction!r}")
    validate_cube(D, cube)
    return cube


def cube_composition_closure(D: DoubleGroupoid, c1: Cube, c2: Cube, direction: int) -> dict:
    """Compose two commutative cubes and report the composite's verdict."""
    if not is_commutative_cube(D, c1) or not is_commutative_cube(D, c2):
        raise NotACube("closure check expects commutative inputs")
    composite = compose_cubes(D, direction, c1, c2)
    return {
        "direction": direction,
        "commutative": is_commutative_cube(D, composite),
        "composite": composite,
    }


@dataclass(frozen=True, eq=False)
class SquareTables:
    """Indexed composition tables for exhaustive sweeps.

    Built by evaluating the square operations once per pair, so every table
    entry is an actual operation result; sweeps over the tables check the
    same identities as the object API at a fraction of the cost.
    """

    D: DoubleGroupoid
    squares: tuple
    index: dict
    comp1: dict
    comp2: dict
    inv1: dict
    inv2: dict
    gplus: dict
    gminus: dict
    eps1_of: dict

    def net(self, B: int, L: int, R: int, F: int, K: int) -> int:
        sq = self.squares
        c, b = sq[F].left, sq[F].right
        cp, bp = sq[K].left, sq[K].right
        row1 = self.comp2[
            (self.comp2[(self.gplus[c], F)], self.inv2[self.gplus[b]])
        ]
        row2 = self.comp2[(self.comp2[(L, B)], self.inv2[R])]
        row3 = self.comp2[
            (
                self.comp2[(self.inv1[self.gplus[cp]], self.inv1[K])],
                self.gminus[self.D.einv(bp)],
            )
        ]
        return self.comp1[(self.comp1[(row1, row2)], row3)]

    def is_commutative(self, cube: tuple) -> bool:
        T, B, L, R, F, K = cube
        return T == self.net(B, L, R, F, K)


def square_tables(D: DoubleGroupoid) -> SquareTables:
    squares = tuple(sorted(D.squares, key=repr))
    index = {u: i for i, u in enumerate(squares)}
    comp1, comp2 = {}, {}
    by_top: dict = {}
    by_left: dict = {}
    for v in squares:
        by_top.setdefault(v.top, []).append(v)
        by_left.setdefault(v.left, []).append(v)
    for u in squares:
        for v in by_top.get(u.bottom, ()):
            comp1[(index[u], index[v])] = index[compose_squares(D, 1, u, v)]
        for v in by_left.get(u.right, ()):
            comp2[(index[u], index[v])] = index[compose_squares(D, 2, u, v)]
    inv1 = {index[u]: index[inverse_square(D, 1, u)] for u in squares}
    inv2 = {index[u]: index[inverse_square(D, 2, u)] for u in squares}
    gplus = {e: index[gamma_plus(D, e)] for e in D.edge.arrows}
    gminus = {e: index[gamma_minus(D, e)] for e in D.edge.arrows}
    eps1_of = {e: index[eps1(D, e)] for e in D.edge.arrows}
    return SquareTables(D, squares, index, comp1, comp2, inv1, inv2, gplus, gminus, eps1_of)


def cube_closure_sweep(D: DoubleGroupoid) -> dict:
    """Exhaustively compose all pairs of commutative cubes in each direction.

    Returns counts plus the (hopefully empty) list of violating pairs.
    Cube shells are handled as index 6-tuples (top, bottom, left, right,
    front, back) over the square tables.
    """
    tab = square_tables(D)
    idx = tab.index
    cubes = [
        (idx[c.top], idx[c.bottom], idx[c.left], idx[c.right], idx[c.front], idx[c.back])
        for c in enumerate_cubes(D)
    ]
    commutative = [c for c in cubes if tab.is_commutative(c)]
    by_top: dict = {}
    by_left: dict = {}
    by_front: dict = {}
    for c in commutative:
        by_top.setdefault(c[0], []).append(c)
        by_left.setdefault(c[2], []).append(c)
        by_front.setdefault(c[4], []).append(c)
    violations = []
    checked = 0
    c1_, c2_ = tab.comp1, tab.comp2
    for c1 in commutative:
        T1, B1, L1, R1, F1, K1 = c1
        for c2 in by_top.get(B1, ()):
            out = (T1, c2[1], c2_[(L1, c2[2])], c2_[(R1, c2[3])], c1_[(F1, c2[4])], c1_[(K1, c2[5])])
            checked += 1
            if not tab.is_commutative(out):
                violations.append((1, c1, c2))
        for c2 in by_left.get(R1, ()):
            out = (c2_[(T1, c2[0])], c2_[(B1, c2[1])], L1, c2[3], c2_[(F1, c2[4])], c2_[(K1, c2[5])])
            checked += 1
            if not tab.is_commutative(out):
                violations.append((2, c1, c2))
        for c2 in by_front.get(K1, ()):
            out = (c1_[(T1, c2[0])], c1_[(B1, c2[1])], c1_[(L1, c2[2])], c1_[(R1, c2[3])], F1, c2[5])
            checked += 1
            if not tab.is_commutative(out):
                violations.append((3, c1, c2))
    return {
        "cubes": len(cubes),
        "commutative": len(commutative),
        "composites_checked": checked,
        "violations": violations,
    }


def enumerate_cubes(D: DoubleGroupoid) -> list[Cube]:
    """All cube shells over D (intended for the small corpus instances)."""
    by_boundary: dict = {}
    for u in D.squares:
        by_boundary.setdefault((u.top, u.right, u.left, u.bottom), []).append(u)

    def faces(a, b, c, d):
        return by_boundary.get((a, b, c, d), ())

    G = D.edge
    arrows = G.arrows
    out = []
    for F in D.squares:
        a, b, c, d = F.top, F.right, F.left, F.bottom
        for p in arrows:
            if G.src[p] != G.src[a]:
                continue
            for q in arrows:
                if G.src[q] != G.tgt[a]:
                    continue
                for r in arrows:
                    if G.src[r] != G.src[d]:
                        continue
                    for s in arrows:
                        if G.src[s] != G.tgt[d]:
                            continue
                        for ap in arrows:
                            if G.src[ap] != G.tgt[p] or G.tgt[ap] != G.tgt[q]:
                                continue
                            for dp in arrows:
                                if G.src[dp] != G.tgt[r] or G.tgt[dp] != G.tgt[s]:
                                    continue
                                for cp in arrows:
                                    if G.src[cp] != G.tgt[p] or G.tgt[cp] != G.tgt[r]:
                                        continue
                                    for bp in arrows:
                                        if G.src[bp] != G.tgt[q] or G.tgt[bp] != G.tgt[s]:
                                            continue
                                        for T in faces(a, q, p, ap):
                                            for B in faces(d, s, r, dp):
                                                for L in faces(c, r, p, cp):
                                                    for R in faces(b, s, q, bp):
                                                        for K in faces(ap, bp, cp, dp):
                                                            out.append(Cube(T, B, L, R, F, K))
    return out
