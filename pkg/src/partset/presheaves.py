"""Presheaves and diagrams of partitioned sets over a finite index category.

A presheaf on C is stored as a diagram over C^op, so natural transformations,
enumeration, limits and lifting work uniformly for both variances.
"""

import itertools
from dataclasses import dataclass
from typing import Dict, Hashable, Iterator, List, Mapping, Optional, Tuple

from .categories import (Diagram, FiniteCategory, NatTrans, iter_nat_trans, nat_compose,
                         parallel_pair_category)
from .enrichment import SM7Result, hom_object
from .errors import MalformedError, PreconditionError, ShapeError
from .fixtures import d_square
from .homotopy import homotopy_equalizer
from .limits import colimit, limit, pullback
from .morphisms import (ClassificationReport, Morphism, classify, compose, identity, iter_morphisms)
from .objects import PartitionedSet, enumerate_objects_upto, point


class Presheaf(Diagram):
    """Contravariant functor C -> partitioned sets.

    ``restrictions[u]`` for an arrow u: c -> d of C is the map X(d) -> X(c).
    """

    def __init__(self, site: FiniteCategory, objects: Mapping[Hashable, PartitionedSet],
                 restrictions: Mapping[str, Morphism] = ()):
        self.site = site
        super().__init__(site.op(), objects, restrictions)

    @property
    def restrictions(self) -> Dict[str, Morphism]:
        return self.arrows


def like(template: Diagram, objects, arrows) -> Diagram:
    """A diagram of the same kind (presheaf or covariant) as ``template``."""
    if isinstance(template, Presheaf):
        return Presheaf(template.site, objects, arrows)
    return Diagram(template.category, objects, arrows)


def parallel_pair(f: Morphism, g: Morphism) -> Diagram:
    """The covariant diagram A => X over the parallel-pair category."""
    if f.source != g.source or f.target != g.target:
        raise ShapeError("maps are not parallel")
    return Diagram(parallel_pair_category(), {0: f.source, 1: f.target}, {"f": f, "g": g})


def terminal_diagram(template: Diagram) -> Diagram:
    P = point()
    cat = template.category
    return like(template, {c: P for c in cat.objects}, {n: identity(P) for n in cat.arrows})


def to_terminal(X: Diagram) -> NatTrans:
    T = terminal_diagram(X)
    return NatTrans(X, T, {c: Morphism(X[c], T[c], [()] * len(X[c])) for c in X.category.objects})


@dataclass(frozen=True)
class PointwiseReport:
    components: Dict[Hashable, ClassificationReport]

    @property
    def pointwise_weq(self) -> bool:
        return all(r.weak_equivalence for r in self.components.values())

    @property
    def pointwise_fibration(self) -> bool:
        return all(r.fibration for r in self.components.values())

    @property
    def pointwise_cofibration(self) -> bool:
        """All components injective. Not the class of projective cofibrations."""
        return all(r.cofibration for r in self.components.values())

    def render(self) -> str:
        return "\n".join([
            f"pointwise_weak_equivalence: {str(self.pointwise_weq).lower()}",
            f"pointwise_fibration: {str(self.pointwise_fibration).lower()}",
            f"pointwise_injective: {str(self.pointwise_cofibration).lower()}",
        ])


def classify_pointwise(phi: NatTrans) -> PointwiseReport:
    return PointwiseReport({c: classify(m) for c, m in phi.components.items()})


class DiagramOfDiagrams:
    """A functor J -> (diagrams over C): one diagram per object of J and one
    natural transformation per non-identity arrow of J."""

    def __init__(self, shape: FiniteCategory, diagrams: Mapping[Hashable, Diagram],
                 maps: Mapping[str, NatTrans] = ()):
        self.shape = shape
        self.diagrams = {j: diagrams[j] for j in shape.objects}
        self.maps = {n: maps[n] for n in shape.arrows}
        cats = {d.category for d in self.diagrams.values()}
        if len(cats) > 1:
            raise MalformedError("diagrams live over different index categories")
        for n, (a, b) in shape.arrows.items():
            if self.maps[n].source != self.diagrams[a] or self.maps[n].target != self.diagrams[b]:
                raise MalformedError(f"map for arrow {n} has the wrong endpoints")
        for (g, f), h in shape.table.items():
            if nat_compose(self.maps[g], self.maps[f]) != self.maps[h]:
                raise MalformedError(f"not functorial at {g}.{f}")

    @property
    def template(self) -> Diagram:
        return next(iter(self.diagrams.values()))

    def at(self, c) -> Diagram:
        """The J-diagram of values at object c."""
        return Diagram(self.shape, {j: d[c] for j, d in self.diagrams.items()},
                       {n: m[c] for n, m in self.maps.items()})


def presheaf_limit(F: DiagramOfDiagrams) -> Tuple[Diagram, Dict[Hashable, NatTrans]]:
    """Pointwise limit with induced restrictions, and its legs."""
    tmpl = F.template
    cat = tmpl.category
    cones = {c: limit(F.at(c)) for c in cat.objects}
    js = list(F.shape.objects)
    arrows = {}
    for n, (a, b) in cat.arrows.items():
        La, Lb = cones[a].apex, cones[b].apex
        arrows[n] = Morphism(La, Lb, [tuple(F.diagrams[j].arrows[n](x) for j, x in zip(js, t))
                                      for t in La.elements])
    L = like(tmpl, {c: cones[c].apex for c in cat.objects}, arrows)
    legs = {j: NatTrans(L, F.diagrams[j], {c: cones[c].legs[j] for c in cat.objects}) for j in js}
    return L, legs


def presheaf_colimit(F: DiagramOfDiagrams) -> Tuple[Diagram, Dict[Hashable, NatTrans]]:
    """Pointwise colimit with induced restrictions, and its legs."""
    tmpl = F.template
    cat = tmpl.category
    cocones = {c: colimit(F.at(c)) for c in cat.objects}
    arrows = {}
    for n, (a, b) in cat.arrows.items():
        mapping = {}
        for j, D in F.diagrams.items():
            for x in D[a].elements:
                mapping[cocones[a].legs[j](x)] = cocones[b].legs[j](D.arrows[n](x))
        arrows[n] = Morphism(cocones[a].apex, cocones[b].apex, mapping)
    Q = like(tmpl, {c: cocones[c].apex for c in cat.objects}, arrows)
    legs = {j: NatTrans(F.diagrams[j], Q, {c: cocones[c].legs[j] for c in cat.objects})
            for j in F.shape.objects}
    return Q, legs


def presheaf_colimit_map(F: DiagramOfDiagrams, G: DiagramOfDiagrams,
                         components: Mapping[Hashable, NatTrans]) -> NatTrans:
    """Map of pointwise colimits induced by a map of diagrams of diagrams."""
    QF, legsF = presheaf_colimit(F)
    QG, legsG = presheaf_colimit(G)
    comps = {}
    for c in QF.category.objects:
        mapping = {}
        for j, D in F.diagrams.items():
            for x in D[c].elements:
                mapping[legsF[j][c](x)] = legsG[j][c](components[j][c](x))
        comps[c] = Morphism(QF[c], QG[c], mapping)
    return NatTrans(QF, QG, comps)


def presheaf_homotopy_equalizer(phi: NatTrans, psi: NatTrans) -> Tuple[Diagram, NatTrans]:
    """Homotopy equalizer at every object, with restrictions inherited from the source."""
    if phi.source != psi.source or phi.target != psi.target:
        raise ShapeError("natural transformations are not parallel")
    X = phi.source
    cat = X.category
    parts = {c: homotopy_equalizer(phi[c], psi[c]) for c in cat.objects}
    arrows = {}
    for n, (a, b) in cat.arrows.items():
        Ha, Hb = parts[a][0], parts[b][0]
        arrows[n] = Morphism(Ha, Hb, [X.arrows[n](x) for x in Ha.elements])
    H = like(X, {c: parts[c][0] for c in cat.objects}, arrows)
    return H, NatTrans(H, X, {c: parts[c][1] for c in cat.objects})


def power_object(X: Diagram, K: PartitionedSet, limit: Optional[int] = None) -> Diagram:
    """X^K(c) = Hom(K, X(c)); arrows act by postcomposition."""
    cat = X.category
    objs = {c: hom_object(K, X[c], limit) for c in cat.objects}
    arrows = {}
    for n, (a, b) in cat.arrows.items():
        m = X.arrows[n]
        arrows[n] = Morphism(objs[a], objs[b], [compose(m, h) for h in objs[a].elements])
    return like(X, objs, arrows)


def power_map_base(phi: NatTrans, K: PartitionedSet, limit: Optional[int] = None) -> NatTrans:
    """X^K -> Y^K induced by phi: X -> Y."""
    XK, YK = power_object(phi.source, K, limit), power_object(phi.target, K, limit)
    return NatTrans(XK, YK, {c: Morphism(XK[c], YK[c], [compose(phi[c], h) for h in XK[c].elements])
                             for c in XK.category.objects})


def power_map_exponent(X: Diagram, u: Morphism, limit: Optional[int] = None) -> NatTrans:
    """X^K -> X^K' induced by u: K' -> K."""
    XK, XK2 = power_object(X, u.target, limit), power_object(X, u.source, limit)
    return NatTrans(XK, XK2, {c: Morphism(XK[c], XK2[c], [compose(h, u) for h in XK[c].elements])
                              for c in XK.category.objects})


def presheaf_hom(X: Diagram, Y: Diagram, limit: Optional[int] = None) -> PartitionedSet:
    """Natural transformations X -> Y, equivalent iff componentwise equivalent."""
    labels = {}
    for phi in iter_nat_trans(X, Y, limit):
        labels[phi] = tuple(tuple(Y[c].block_index(y) for y in m.table)
                            for c, m in phi.components.items())
    return PartitionedSet.from_labels(labels)


def presheaf_exponential_law(X: Diagram, Y: Diagram, K: PartitionedSet,
                             limit: Optional[int] = None) -> Tuple[Morphism, Morphism]:
    """Hom(K, Hom(X, Y)) -> Hom(X, Y^K), g -> (x in X(c) -> (k -> g(k)_c(x))),
    and its inverse h -> (k -> (x in X(c) -> h_c(x)(k)))."""
    HXY = presheaf_hom(X, Y, limit)
    left = hom_object(K, HXY, limit)
    YK = power_object(Y, K, limit)
    right = presheaf_hom(X, YK, limit)
    objs = list(X.category.objects)

    def eps(g: Morphism) -> NatTrans:
        comps = {}
        for c in objs:
            comps[c] = Morphism.trusted(X[c], YK[c], (
                Morphism.trusted(K, Y[c], (g(k)[c](x) for k in K.elements)) for x in X[c].elements))
        return NatTrans(X, YK, comps, check=False)

    def eps_inv(h: NatTrans) -> Morphism:
        table = []
        for k in K.elements:
            comps = {c: Morphism.trusted(X[c], Y[c], (h[c](x)(k) for x in X[c].elements)) for c in objs}
            table.append(NatTrans(X, Y, comps, check=False))
        return Morphism.trusted(K, HXY, table)

    forward = Morphism(left, right, [eps(g) for g in left.elements])
    backward = Morphism(right, left, [eps_inv(h) for h in right.elements])
    return forward, backward


def presheaf_sm7_map(j: NatTrans, p: NatTrans, limit: Optional[int] = None) -> SM7Result:
    """(j^*, p_*): Hom(B, X) -> Hom(A, X) x_{Hom(A, Y)} Hom(B, Y), classified.

    p must be a pointwise fibration; j must be pointwise injective. Whether j is
    a projective cofibration is not decided here.
    """
    rj, rp = classify_pointwise(j), classify_pointwise(p)
    if not rp.pointwise_fibration:
        raise PreconditionError("p is not a pointwise fibration")
    if not rj.pointwise_cofibration:
        raise PreconditionError("j is not pointwise injective")
    A, B, X, Y = j.source, j.target, p.source, p.target
    HAX, HAY = presheaf_hom(A, X, limit), presheaf_hom(A, Y, limit)
    HBX, HBY = presheaf_hom(B, X, limit), presheaf_hom(B, Y, limit)
    post = Morphism(HAX, HAY, [nat_compose(p, phi) for phi in HAX.elements])
    pre = Morphism(HBY, HAY, [nat_compose(psi, j) for psi in HBY.elements])
    P, _, _ = pullback(post, pre)
    corner = Morphism(HBX, P, [(nat_compose(phi, j), nat_compose(p, phi)) for phi in HBX.elements])
    return SM7Result(corner, classify(corner), rj.pointwise_weq or rp.pointwise_weq)


# lifting in diagram categories

def diagram_lift_search(left: NatTrans, right: NatTrans, top: NatTrans, bottom: NatTrans,
                        limit: Optional[int] = None) -> Optional[NatTrans]:
    for s in iter_nat_trans(left.target, right.source, limit):
        if nat_compose(s, left) == top and nat_compose(right, s) == bottom:
            return s
    return None


def diagram_commuting_squares(j: NatTrans, p: NatTrans, limit: Optional[int] = None
                              ) -> Iterator[Tuple[NatTrans, NatTrans]]:
    bottoms = list(iter_nat_trans(j.target, p.target, limit))
    for top in iter_nat_trans(j.source, p.source, limit):
        pt = nat_compose(p, top)
        for bottom in bottoms:
            if nat_compose(bottom, j) == pt:
                yield top, bottom


def diagram_has_rlp(p: NatTrans, j: NatTrans, limit: Optional[int] = None) -> bool:
    return all(diagram_lift_search(j, p, top, bottom, limit) is not None
               for top, bottom in diagram_commuting_squares(j, p, limit))


def diagram_has_llp(j: NatTrans, p: NatTrans, limit: Optional[int] = None) -> bool:
    return diagram_has_rlp(p, j, limit)


def d_square_map() -> NatTrans:
    """The fixed map of parallel pairs (1 => {1 2}) -> ({1 2} => {1 2 3})."""
    sq = d_square()
    src = parallel_pair(sq["f"], sq["g"])
    tgt = parallel_pair(sq["h"], sq["k"])
    return NatTrans(src, tgt, {0: sq["alpha"], 1: sq["beta"]})


def d_diagram_fibrancy(D: Diagram, limit: Optional[int] = None) -> bool:
    """Whether the map from a parallel pair A => X to the terminal pair has the
    right lifting property against the fixed square map."""
    if D.category != parallel_pair_category() or isinstance(D, Presheaf):
        raise ShapeError("fibrancy test needs a covariant diagram over the parallel-pair category")
    return diagram_has_rlp(to_terminal(D), d_square_map(), limit)


def generating_cofibration(site: FiniteCategory, c0, i: Morphism) -> NatTrans:
    """The representable at c0 tensored with i: at each object c, one copy of i
    for every arrow c -> c0, restricted by precomposition. Elements are (arrow, x)."""
    if c0 not in site.objects:
        raise MalformedError("unknown object")
    K, L = i.source, i.target

    def tensor(Z: PartitionedSet) -> Dict[Hashable, PartitionedSet]:
        return {c: PartitionedSet([(u, z) for z in b] for u in site.hom(c, c0) for b in Z.blocks)
                for c in site.objects}

    objs_K, objs_L = tensor(K), tensor(L)

    def restrictions(objs):
        out = {}
        for n, (c, d) in site.arrows.items():
            out[n] = Morphism(objs[d], objs[c], [(site.compose(u, n), z) for u, z in objs[d].elements])
        return out

    A = Presheaf(site, objs_K, restrictions(objs_K))
    B = Presheaf(site, objs_L, restrictions(objs_L))
    return NatTrans(A, B, {c: Morphism(A[c], B[c], [(u, i(z)) for u, z in A[c].elements])
                           for c in site.objects})


def enumerate_diagrams(template_category: FiniteCategory, max_size: int, presheaf_site=None
                       ) -> List[Diagram]:
    """All diagrams over a category whose objects are canonical partitioned sets of
    size <= max_size. With ``presheaf_site`` set, returns presheaves on that site
    (whose diagram category must be ``template_category``)."""
    cat = template_category
    objs = list(cat.objects)
    pool = enumerate_objects_upto(max_size)
    out = []
    for choice in itertools.product(pool, repeat=len(objs)):
        assign = dict(zip(objs, choice))
        arrows = list(cat.arrows)
        options = [list(iter_morphisms(assign[cat.arrows[n][0]], assign[cat.arrows[n][1]]))
                   for n in arrows]
        for ms in itertools.product(*options):
            amap = dict(zip(arrows, ms))
            if any(compose(amap[g], amap[f]) != amap[h] for (g, f), h in cat.table.items()):
                continue
            if presheaf_site is not None:
                out.append(Presheaf(presheaf_site, assign, amap))
            else:
                out.append(Diagram(cat, assign, amap))
    return out
