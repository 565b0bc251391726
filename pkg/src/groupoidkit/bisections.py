"""Local bisections, their inverse semigroup, and window extendibility.

A local bisection is a section of the source map on an open set of objects
whose target shadow is a homeomorphism onto an open image.  The product
(s*t)(x) = s(beta t x) . t(x) shrinks domains and makes the set of local
bisections an inverse semigroup; window-valued continuous bisections
generate the sub-inverse-semigroup of iterated local procedures.

Extendibility asks whether the window topology spreads to the whole arrow
set: the candidate topology is generated by the window's opens together
with their images under left translation by generated bisections.  Success
requires the window to sit inside the result as an open subspace with its
own topology, and composition and inversion of the ambient groupoid to be
continuous.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .core import FiniteGroupoid, FiniteTopology, topology_from_subbase
from .errors import OutOfDomain
from .germs import germ_closure, window_germs
from .presentations import LocalGroupoidData


# ---------------------------------------------------------------------------
# local bisections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalBisection:
    """Partial section of the source map; equality is extensional."""

    domain: frozenset
    values: tuple  # sorted ((point, arrow), ...)

    def as_dict(self) -> dict:
        return dict(self.values)

    def value_at(self, x):
        for (p, a) in self.values:
            if p == x:
                return a
        raise OutOfDomain(f"{x!r} not in the domain")

    @property
    def is_empty(self) -> bool:
        return not self.values


def make_bisection(mapping: dict) -> LocalBisection:
    return LocalBisection(
        frozenset(mapping),
        tuple(sorted(mapping.items(), key=lambda kv: repr(kv[0]))),
    )


EMPTY_BISECTION = make_bisection({})


def identity_bisection(G: FiniteGroupoid, domain) -> LocalBisection:
    return make_bisection({x: G.id_of[x] for x in domain})


def is_valid_bisection(G: FiniteGroupoid, T0: FiniteTopology, s: LocalBisection) -> bool:
    """Open domain, source section, target shadow an open homeomorphism."""
    m = s.as_dict()
    if not T0.is_open(s.domain):
        return False
    for p, a in m.items():
        if a not in set(G.arrows) or G.src[a] != p:
            return False
    beta = {p: G.tgt[a] for (p, a) in m.items()}
    if len(set(beta.values())) != len(beta):
        return False
    image = frozenset(beta.values())
    if not T0.is_open(image):
        return False
    for p in s.domain:
        if not {beta[q] for q in (T0.min_open[p] & s.domain)} <= T0.min_open[beta[p]]:
            return False
    inv_beta = {v: k for k, v in beta.items()}
    for w in image:
        for w2 in T0.min_open[w] & image:
            if inv_beta[w2] not in T0.min_open[inv_beta[w]]:
                return False
    return True


def is_window_bisection(D: LocalGroupoidData, s: LocalBisection) -> bool:
    """Member of the generating family: window values, window continuity."""
    if not is_valid_bisection(D.G, D.t_objects, s):
        return False
    m = s.as_dict()
    if not set(m.values()) <= D.window:
        return False
    TW, T0 = D.t_window, D.t_objects
    for p in s.domain:
        if not {m[q] for q in (T0.min_open[p] & s.domain)} <= TW.min_open[m[p]]:
            return False
    return True


def compose_bisections(G: FiniteGroupoid, s: LocalBisection, t: LocalBisection) -> LocalBisection:
    """(s*t)(x) = s(beta t x) . t(x) on {x in dom t : beta t x in dom s}.

    The result's domain can be smaller than dom t and may be empty; the
    empty bisection is a legal value (the semigroup zero).
    """
    ms, mt = s.as_dict(), t.as_dict()
    out = {}
    for x, a in mt.items():
        y = G.tgt[a]
        if y in ms:
            out[x] = G.comp[(ms[y], a)]
    return make_bisection(out)


def relative_inverse(G: FiniteGroupoid, s: LocalBisection) -> LocalBisection:
    """s' with domain beta s (dom s) and s'(y) = inv(s(beta^-1 y))."""
    m = s.as_dict()
    out = {}
    for x, a in m.items():
        out[G.tgt[a]] = G.inv[a]
    return make_bisection(out)


def left_translate(G: FiniteGroupoid, s: LocalBisection, g):
    """L_s(g) = s(beta g) . g, defined when beta g lies in dom s."""
    m = s.as_dict()
    y = G.tgt[g]
    if y not in m:
        raise OutOfDomain(f"target {y!r} of {g!r} outside the bisection domain")
    return G.comp[(m[y], g)]


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def local_bisections(G: FiniteGroupoid, T0: FiniteTopology) -> list[LocalBisection]:
    """All local bisections of G over T0 (small instances only)."""
    out = []
    by_src: dict = {}
    for a in G.arrows:
        by_src.setdefault(G.src[a], []).append(a)
    for U in T0.opens():
        pts = sorted(U, key=repr)
        cands = [sorted(by_src.get(p, []), key=repr) for p in pts]
        for choice in iproduct(*cands):
            s = make_bisection(dict(zip(pts, choice)))
            if is_valid_bisection(G, T0, s):
                out.append(s)
    return sorted(set(out), key=lambda s: (len(s.domain), s.values))


def w_bisections(D: LocalGroupoidData) -> list[LocalBisection]:
    """All window-valued continuous local bisections (the local procedures)."""
    out = []
    by_src: dict = {}
    for w in D.window:
        by_src.setdefault(D.G.src[w], []).append(w)
    for U in D.t_objects.opens():
        pts = sorted(U, key=repr)
        cands = [sorted(by_src.get(p, []), key=repr) for p in pts]
        for choice in iproduct(*cands):
            s = make_bisection(dict(zip(pts, choice)))
            if is_window_bisection(D, s):
                out.append(s)
    return sorted(set(out), key=lambda s: (len(s.domain), s.values))


# ---------------------------------------------------------------------------
# the inverse semigroup of iterated local procedures
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class InverseSemigroup:
    """Closure of a bisection family under * and relative inverses."""

    groupoid: FiniteGroupoid
    elements: tuple  # sorted LocalBisections

    def multiply(self, s: LocalBisection, t: LocalBisection) -> LocalBisection:
        return compose_bisections(self.groupoid, s, t)

    def inverse(self, s: LocalBisection) -> LocalBisection:
        return relative_inverse(self.groupoid, s)

    def idempotents(self) -> tuple:
        return tuple(s for s in self.elements if self.multiply(s, s) == s)

    def table(self) -> dict:
        return {
            (s, t): self.multiply(s, t)
            for s in self.elements
            for t in self.elements
        }


def generate_semigroup(G: FiniteGroupoid, gens, max_elements: int | None = None) -> InverseSemigroup:
    """Close gens and their relative inverses under the * product.

    Left multiplication by the inverse-closed seed reaches every finite
    product, so the work queue stays linear in the closure size.  Raises
    OverflowError beyond max_elements (used by tests to skip oversized
    corpus instances rather than stall).
    """
    seed = set(gens)
    for s in list(seed):
        seed.add(relative_inverse(G, s))
    seen = set(seed)
    queue = list(seed)
    seed_list = sorted(seed, key=lambda s: (len(s.domain), s.values))
    while queue:
        t = queue.pop()
        for g in seed_list:
            st = compose_bisections(G, g, t)
            if st not in seen:
                if max_elements is not None and len(seen) >= max_elements:
                    raise OverflowError(f"semigroup closure exceeded {max_elements} elements")
                seen.add(st)
                queue.append(st)
    return InverseSemigroup(G, tuple(sorted(seen, key=lambda s: (len(s.domain), s.values))))


def inverse_semigroup_laws(S: InverseSemigroup) -> list:
    """Violations of s s' s = s, s' s s' = s', and commuting idempotents."""
    bad = []
    for s in S.elements:
        sp = S.inverse(s)
        if S.multiply(S.multiply(s, sp), s) != s:
            bad.append(("ss's=s", s))
        if S.multiply(S.multiply(sp, s), sp) != sp:
            bad.append(("s'ss'=s'", s))
    idem = S.idempotents()
    for e in idem:
        for f in idem:
            if S.multiply(e, f) != S.multiply(f, e):
                bad.append(("idempotents-commute", (e, f)))
    return bad


# ---------------------------------------------------------------------------
# sectionability and extendibility
# ---------------------------------------------------------------------------


def is_sectionable(D: LocalGroupoidData) -> bool:
    """Every window arrow lies on some window bisection through its source.

    Checked on germs: a window germ at alpha(w) with value w restricts a
    window bisection through w and conversely.
    """
    gens = window_germs(D)
    hit = {(g.base, g.value) for g in gens}
    return all((D.G.src[w], w) in hit for w in D.window)


@dataclass(frozen=True, eq=False)
class ExtendibilityResult:
    ok: bool
    topology: FiniteTopology
    failures: tuple  # (kind, witness) pairs

    def __bool__(self) -> bool:
        return self.ok


def check_extendible(D: LocalGroupoidData) -> ExtendibilityResult:
    """Try to extend the window topology to the whole arrow set.

    The candidate topology is generated by the window's basic opens plus
    left-translation images L_s(V) with s running over the generated
    bisections.  Each L_s(V) is a union of germ-level pieces, so the germs
    suffice as translation data.  Failure kinds:

    - ``window-not-open``: W is not open in the result;
    - ``window-subspace``: the result does not restrict to the window
      topology on W (witness: an arrow whose neighbourhood filter changed);
    - ``composition-discontinuous`` / ``inversion-discontinuous``: witnessed
      by a composable pair or arrow.
    """
    G, TW, T0 = D.G, D.t_window, D.t_objects
    _, closure = germ_closure(D)

    beta_fibres: dict = {}
    for v in D.window:
        beta_fibres.setdefault(G.tgt[v], []).append(v)

    subbase: set = set(TW.base())
    for germ in closure:
        m = germ.as_dict()
        for V in TW.base():
            piece = frozenset(
                G.comp[(m[G.tgt[v]], v)]
                for v in V
                if G.tgt[v] in m
            )
            if piece:
                subbase.add(piece)
    T_arr = topology_from_subbase(G.arrows, subbase)

    failures = []
    if not T_arr.is_open(D.window):
        failures.append(("window-not-open", None))
    sub = T_arr.subspace(D.window)
    for w in sorted(D.window, key=repr):
        if sub.min_open[w] != TW.min_open[w]:
            failures.append(("window-subspace", w))
            break
    for g in G.arrows:
        if not {G.inv[a] for a in T_arr.min_open[g]} <= T_arr.min_open[G.inv[g]]:
            failures.append(("inversion-discontinuous", g))
            break
    done = False
    for (h, g) in G.composable_pairs():
        hg = G.comp[(h, g)]
        for h2 in T_arr.min_open[h]:
            for g2 in T_arr.min_open[g]:
                if G.tgt[g2] != G.src[h2]:
                    continue
                if G.comp[(h2, g2)] not in T_arr.min_open[hg]:
                    failures.append(("composition-discontinuous", (h, g, h2, g2)))
                    done = True
                    break
            if done:
                break
        if done:
            break
    return ExtendibilityResult(not failures, T_arr, tuple(failures))
