"""Pushouts of presented groupoids, vertex group presentations, HNN shapes.

The pushout of presentations B <- A -> C glues objects with a union-find
over f(a) ~ g(a), keeps the generators of B and C, and adds one relation
f(e) = g(e) per generator e of A on top of the translated relations of B
and C.  The universal property holds by construction and is additionally
checked against finite targets by `mediating_morphism`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    InvalidPresentationMorphism,
    NotConnected,
    WrongShape,
)
from .presentations import (
    NEG,
    POS,
    FpGroupoid,
    PresentationToGroupoidMap,
    Word,
    check_word,
    empty_word,
    reduce_word,
    reflexive_graph,
    word_inverse,
    word_source,
    word_target,
)
from .rewriting import GroupRewriting, enumerate_elements, free_reduce, knuth_bendix


# ---------------------------------------------------------------------------
# presentation morphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PresentationMorphism:
    """Objects to objects, generators to words of the target presentation."""

    source: FpGroupoid
    target: FpGroupoid
    obj_map: dict
    gen_map: dict  # generator -> Word in the target

    def apply_word(self, w: Word) -> Word:
        out = empty_word(self.obj_map[w.start])
        tgt_graph = self.target.graph
        for (e, s) in reversed(w.letters):
            im = self.gen_map[e]
            if s == NEG:
                im = word_inverse(tgt_graph, im)
            out = Word(out.start, im.letters + out.letters)
        return reduce_word(out)


def validate_presentation_morphism(m: PresentationMorphism) -> tuple[bool, list, list]:
    """Returns (definitely_ok, violations, assumed).

    Endpoint conditions are exact.  Relation preservation is checked by
    reduction when the target is free; otherwise it is recorded as assumed.
    """
    violations, assumed = [], []
    A, B = m.source, m.target
    for x in A.objects:
        if m.obj_map.get(x) not in set(B.objects):
            violations.append(("object-image", x))
    for e in A.generators():
        im = m.gen_map.get(e)
        if im is None:
            violations.append(("generator-image-missing", e))
            continue
        try:
            check_word(B.graph, im)
        except Exception as exc:  # noqa: BLE001 - collected into the report
            violations.append(("generator-image-word", (e, str(exc))))
            continue
        if word_source(im) != m.obj_map[A.graph.src[e]] or word_target(B.graph, im) != m.obj_map[A.graph.tgt[e]]:
            violations.append(("generator-image-endpoints", e))
    if violations:
        return False, violations, assumed
    for (w1, w2) in A.relations:
        im1, im2 = m.apply_word(w1), m.apply_word(w2)
        if B.is_free():
            if reduce_word(im1) != reduce_word(im2):
                violations.append(("relation-image", (w1, w2)))
        else:
            assumed.append((w1, w2))
    return not violations, violations, assumed


# ---------------------------------------------------------------------------
# pushout
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PushoutResult:
    apex: FpGroupoid
    inj_left: PresentationMorphism
    inj_right: PresentationMorphism
    transcript: dict


def _union_find_classes(items, pairs):
    parent = {i: i for i in items}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (a, b) in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    classes: dict = {}
    for i in items:
        classes.setdefault(find(i), []).append(i)
    # canonical representative name: sorted tagged members joined
    rep = {}
    for members in classes.values():
        name = "{" + ",".join(sorted(f"{t}.{m}" for (t, m) in members)) + "}"
        for m in members:
            rep[m] = name
    return rep


def pushout(f: PresentationMorphism, g: PresentationMorphism) -> PushoutResult:
    """Pushout of B <-f- A -g-> C in presented groupoids."""
    if f.source is not g.source:
        raise WrongShape("the two morphisms must share their source presentation")
    ok_f, viol_f, assumed_f = validate_presentation_morphism(f)
    ok_g, viol_g, assumed_g = validate_presentation_morphism(g)
    if not ok_f or not ok_g:
        raise InvalidPresentationMorphism(f"leg violations: {viol_f + viol_g!r}")
    A, B, C = f.source, f.target, g.target

    tagged_objs = [("B", x) for x in B.objects] + [("C", x) for x in C.objects]
    glue = [((("B", f.obj_map[a])), (("C", g.obj_map[a]))) for a in A.objects]
    rep = _union_find_classes(tagged_objs, glue)

    def b_obj(x):
        return rep[("B", x)]

    def c_obj(x):
        return rep[("C", x)]

    gen_edges = []
    for e in B.generators():
        gen_edges.append((f"B.{e}", b_obj(B.graph.src[e]), b_obj(B.graph.tgt[e])))
    for e in C.generators():
        gen_edges.append((f"C.{e}", c_obj(C.graph.src[e]), c_obj(C.graph.tgt[e])))
    apex_graph = reflexive_graph(sorted(set(rep.values())), gen_edges)

    def translate(w: Word, tag, obj_of) -> Word:
        letters = tuple((f"{tag}.{e}", s) for (e, s) in w.letters)
        return Word(obj_of(w.start), letters)

    relations = []
    for (w1, w2) in B.relations:
        relations.append((translate(w1, "B", b_obj), translate(w2, "B", b_obj)))
    for (w1, w2) in C.relations:
        relations.append((translate(w1, "C", c_obj), translate(w2, "C", c_obj)))
    glue_relations = []
    for e in A.generators():
        left = translate(f.gen_map[e], "B", b_obj)
        right = translate(g.gen_map[e], "C", c_obj)
        glue_relations.append((left, right))
    apex = FpGroupoid(apex_graph, tuple(relations + glue_relations))

    inj_left = PresentationMorphism(
        B,
        apex,
        {x: b_obj(x) for x in B.objects},
        {e: Word(b_obj(B.graph.src[e]), ((f"B.{e}", POS),)) for e in B.generators()},
    )
    inj_right = PresentationMorphism(
        C,
        apex,
        {x: c_obj(x) for x in C.objects},
        {e: Word(c_obj(C.graph.src[e]), ((f"C.{e}", POS),)) for e in C.generators()},
    )
    glued = {(reduce_word(l).letters, reduce_word(r).letters) for (l, r) in glue_relations}
    square = {}
    for e in A.generators():
        lw = inj_left.apply_word(f.gen_map[e])
        rw = inj_right.apply_word(g.gen_map[e])
        square[e] = {
            "left_image": lw,
            "right_image": rw,
            "agree_syntactically": lw == rw,
            "glued_by_relation": (lw.letters, rw.letters) in glued or (rw.letters, lw.letters) in glued,
        }
    transcript = {
        "object_classes": rep,
        "square_on_generators": square,
        "assumed_relation_images": assumed_f + assumed_g,
    }
    return PushoutResult(apex, inj_left, inj_right, transcript)


def van_kampen(
    piW: FpGroupoid,
    piU: FpGroupoid,
    piV: FpGroupoid,
    i: PresentationMorphism,
    j: PresentationMorphism,
) -> PushoutResult:
    """Pushout of piU <- piW -> piV, labelled as a base-point cover computation.

    The inputs are user-supplied presentations of the three pieces on the
    shared base points; this wrapper never computes them from point-set data.
    """
    if i.source is not piW or j.source is not piW or i.target is not piU or j.target is not piV:
        raise WrongShape("morphism endpoints do not match the three presentations")
    out = pushout(i, j)
    out.transcript["provenance"] = {
        "pieces": {"intersection": "piW", "left": "piU", "right": "piV"},
        "result": "fundamental groupoid presentation of the union",
    }
    return out


def mediating_morphism(
    result: PushoutResult,
    qB: PresentationToGroupoidMap,
    qC: PresentationToGroupoidMap,
) -> PresentationToGroupoidMap:
    """The unique map out of the apex through both injections, for a cocone.

    Raises InvalidPresentationMorphism when the given maps do not form a
    cocone or the induced map breaks a relation (cannot happen for genuine
    cocones).
    """
    apex = result.apex
    B, C = result.inj_left.source, result.inj_right.source
    H = qB.target
    if qC.target is not H:
        raise InvalidPresentationMorphism("cocone legs land in different groupoids")
    obj_map = {}
    for x in B.objects:
        obj_map.setdefault(result.inj_left.obj_map[x], qB.obj_map[x])
        if obj_map[result.inj_left.obj_map[x]] != qB.obj_map[x]:
            raise InvalidPresentationMorphism("cocone objects disagree on a glued class")
    for x in C.objects:
        obj_map.setdefault(result.inj_right.obj_map[x], qC.obj_map[x])
        if obj_map[result.inj_right.obj_map[x]] != qC.obj_map[x]:
            raise InvalidPresentationMorphism("cocone objects disagree on a glued class")
    gen_map = {}
    for e in B.generators():
        gen_map[f"B.{e}"] = qB.gen_map[e]
    for e in C.generators():
        gen_map[f"C.{e}"] = qC.gen_map[e]
    u = PresentationToGroupoidMap(apex, H, obj_map, gen_map)
    if not u.respects_relations():
        raise InvalidPresentationMorphism("cocone does not respect a pushout relation")
    return u


# ---------------------------------------------------------------------------
# vertex group presentations via spanning trees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple  # words ((gen, sign), ...) in path order

    def rewriting(self, **kw) -> GroupRewriting:
        return knuth_bendix(self.generators, self.relators, **kw)

    def element_count_up_to(self, length: int, **kw) -> int:
        system = self.rewriting(**kw)
        return len(enumerate_elements(system, length))


def spanning_tree(P: FpGroupoid, base) -> dict:
    """Breadth-first tree from the base object: object -> (edge, sign, parent).

    Tie-breaking is lexicographic on generator ids so output is reproducible.
    The base maps to None.  Raises NotConnected when some object is missed.
    """
    graph = P.graph
    if base not in set(graph.objects):
        raise NotConnected(f"unknown base object {base!r}")
    adj: dict = {x: [] for x in graph.objects}
    for e in sorted(P.generators()):
        adj[graph.src[e]].append((e, POS, graph.tgt[e]))
        adj[graph.tgt[e]].append((e, NEG, graph.src[e]))
    tree = {base: None}
    frontier = [base]
    while frontier:
        nxt = []
        for x in frontier:
            for (e, s, y) in sorted(adj[x], key=lambda t: (t[0], -t[1])):
                if y not in tree:
                    tree[y] = (e, s, x)
                    nxt.append(y)
        frontier = nxt
    if set(tree) != set(graph.objects):
        missing = sorted(set(map(str, set(graph.objects) - set(tree))))
        raise NotConnected(f"objects unreachable from {base!r}: {missing}")
    return tree


def _tree_path(P: FpGroupoid, tree: dict, x) -> Word:
    """Word base -> x along the tree."""
    letters = []
    cur = x
    while tree[cur] is not None:
        e, s, parent = tree[cur]
        letters.append((e, s))
        cur = parent
    return Word(cur, tuple(letters))


def vertex_group_presentation(P: FpGroupoid, base, tree: dict | None = None) -> GroupPresentation:
    """Present the vertex group of a connected presentation at the base.

    Each generator e becomes the loop (path to src e) . e . (path back from
    tgt e); tree edges collapse to the trivial word and are dropped.
    """
    if tree is None:
        tree = spanning_tree(P, base)
    graph = P.graph
    paths = {x: _tree_path(P, tree, x) for x in graph.objects}
    tree_edges = {t[0] for t in tree.values() if t is not None}

    def loop_letters(e, s):
        # path-order relator contribution of a signed letter
        if e in tree_edges:
            return ()
        return ((e, s),)

    def translate(w: Word):
        out = []
        for (e, s) in reversed(w.letters):  # path order: first-acting first
            out.extend(loop_letters(e, s))
        return free_reduce(tuple(out))

    gens = tuple(sorted(e for e in P.generators() if e not in tree_edges))
    relators = []
    for (w1, w2) in P.relations:
        r = free_reduce(translate(w1) + tuple((e, -s) for (e, s) in reversed(translate(w2))))
        if r and r not in relators:
            relators.append(r)
    return GroupPresentation(gens, tuple(relators))


# ---------------------------------------------------------------------------
# HNN-shaped pushouts
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HnnInput:
    """Span data for a stable-letter pushout.

    `vertex` presents the vertex group K, `edge` the edge group C, and
    phi/psi send each generator of C to a path-order word over K's
    generators, both group embeddings of C into K as far as the caller
    asserts (relator images are checked by bounded rewriting).
    """

    vertex: GroupPresentation
    edge: GroupPresentation
    phi: dict
    psi: dict


def hnn_from_pushout(data: HnnInput) -> tuple[GroupPresentation, PushoutResult]:
    """Stable-letter presentation from the two-object gluing pushout.

    Builds the span where the edge group sits at both ends of an interval
    with vertex group C, maps into C x interval on one side and into K on
    the other, computes the pushout, retracts to the single object, and
    eliminates the copied edge generators.  The result is
    <K-gens, u | K-relators, u phi(a) u^-1 psi(a)^-1>.
    """
    K, C = data.vertex, data.edge
    for a in C.generators:
        if a not in data.phi or a not in data.psi:
            raise WrongShape(f"missing image for edge generator {a!r}")
    # bounded sanity check: relators of C must die under phi and psi in K
    system = knuth_bendix(K.generators, K.relators)
    if system.complete:
        for r in C.relators:
            for name, images in (("phi", data.phi), ("psi", data.psi)):
                w: tuple = ()
                for (a, s) in r:
                    im = tuple(images[a])
                    w = w + (im if s == POS else tuple((g, -t) for (g, t) in reversed(im)))
                if system.reduce(w) != ():
                    raise WrongShape(f"{name} does not kill the edge relator {r!r}")

    # presentations as one- and two-object groupoids
    def group_as_presentation(pres: GroupPresentation, obj, prefix):
        graph = reflexive_graph([obj], [(f"{prefix}{g}", obj, obj) for g in pres.generators])
        rels = []
        for r in pres.relators:
            letters = tuple((f"{prefix}{g}", s) for (g, s) in reversed(r))  # to composition order
            rels.append((Word(obj, letters), empty_word(obj)))
        return FpGroupoid(graph, tuple(rels))

    A_graph = reflexive_graph(["0", "1"], [(f"a0.{g}", "0", "0") for g in C.generators] + [(f"a1.{g}", "1", "1") for g in C.generators])
    A_rels = []
    for r in C.relators:
        for tag, obj in (("a0", "0"), ("a1", "1")):
            letters = tuple((f"{tag}.{g}", s) for (g, s) in reversed(r))
            A_rels.append((Word(obj, letters), empty_word(obj)))
    A = FpGroupoid(A_graph, tuple(A_rels))

    # B = C x interval: loops c.<g> at 0 plus the interval edge u: 1 -> 0,
    # oriented so the loop at 1 reads u . c . u^-1 in path order
    B_graph = reflexive_graph(["0", "1"], [(f"c.{g}", "0", "0") for g in C.generators] + [("u", "1", "0")])
    B_rels = []
    for r in C.relators:
        letters = tuple((f"c.{g}", s) for (g, s) in reversed(r))
        B_rels.append((Word("0", letters), empty_word("0")))
    B = FpGroupoid(B_graph, tuple(B_rels))

    Kpres = group_as_presentation(K, "k", "k.")

    def to_word(obj, letters_path_order):
        return Word(obj, tuple(reversed(tuple(letters_path_order))))

    f = PresentationMorphism(
        A,
        B,
        {"0": "0", "1": "1"},
        {
            **{f"a0.{g}": Word("0", ((f"c.{g}", POS),)) for g in C.generators},
            **{
                # path order u, c, u^-1; composition order reverses it
                f"a1.{g}": Word("1", (("u", NEG), (f"c.{g}", POS), ("u", POS)))
                for g in C.generators
            },
        },
    )
    g_map = {}
    for a in C.generators:
        for tag, images in (("a0", data.phi), ("a1", data.psi)):
            letters = tuple((f"k.{x}", s) for (x, s) in images[a])
            g_map[f"{tag}.{a}"] = to_word("k", letters)
    g = PresentationMorphism(A, Kpres, {"0": "k", "1": "k"}, g_map)

    result = pushout(f, g)
    pres = vertex_group_presentation(result.apex, next(iter(result.apex.objects)))

    # Tietze: eliminate the copied edge generators c.<g> = phi(g)
    subs = {}
    for a in C.generators:
        letters = tuple((f"C.k.{x}", s) for (x, s) in data.phi[a])
        subs[f"B.c.{a}"] = letters

    def substitute(word):
        out: list = []
        for (e, s) in word:
            if e in subs:
                im = subs[e]
                out.extend(im if s == POS else [(g2, -s2) for (g2, s2) in reversed(im)])
            else:
                out.append((e, s))
        return free_reduce(tuple(out))

    gens = tuple(e for e in pres.generators if e not in subs)
    relators = []
    for r in pres.relators:
        r2 = substitute(r)
        if r2 and r2 not in relators and tuple((e, -s) for (e, s) in reversed(r2)) not in relators:
            relators.append(r2)
    # drop defining relators that became trivial and rename to friendly ids
    rename = {"B.u": "u"}
    for x in K.generators:
        rename[f"C.k.{x}"] = str(x)

    def rn(word):
        return tuple((rename.get(e, e), s) for (e, s) in word)

    final = GroupPresentation(
        tuple(rename.get(e, e) for e in gens),
        tuple(rn(r) for r in relators),
    )
    return final, result
