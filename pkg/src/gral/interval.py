"""Interval structure, homotopy calculus, fundamental groupoids, squares.

The constructions here are written against an abstract realizer-category
interface (`RealizerCategory`): a cartesian closed category presented by
operations with enumerable hom-sets, carrying an interval object family
I0..I3 with structure maps and copairing witnesses for the two interval
pushouts.  The groupoid instance (`GpdRealizer`) is the one that ships;
a partial second instance lives in `assemblies` for checking the interval
internal to the category of assemblies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .errors import BoundaryError, CapabilityError, StructuralError
from .groupoids import (
    DEFAULT_CAPS, ExpGpd, FinGroupoid, GFunctor, NatIso, ProductGpd, SizeCaps,
    compose_functors, exponential as gpd_exponential, functors_between,
    identity_functor, product as gpd_product, terminal_groupoid,
)

Map = Any  # GFunctor in the groupoid instance; realized morphisms in others


@dataclass
class IntervalData:
    """The interval object family with its nine structure maps.

    I0 is terminal; zero/one are the cosource/cotarget, star the coidentity,
    sigma the coinverse, two the cocomposition, i0/i1 and j0/j1 the pushout
    injections of the double- and triple-length intervals.
    """

    I0: Any
    I1: Any
    I2: Any
    I3: Any
    zero: Map
    one: Map
    star: Map
    sigma: Map
    two: Map
    i0: Map
    i1: Map
    j0: Map
    j1: Map


@dataclass
class ProdObj:
    obj: Any
    p1: Map
    p2: Map
    pair: Callable[[Map, Map], Map]


@dataclass
class ExpObj:
    obj: Any
    ev: Map                       # over product(obj, base).obj
    prod_with_base: ProdObj       # the product ev is defined on


class RealizerCategory:
    """Operations of a realizer category; subclasses provide primitives.

    Derived combinators (swap, binary map product, uncurrying, path algebra,
    fundamental groupoids) are implemented here once, against the
    primitives.
    """

    interval: IntervalData
    can_fill_squares: bool = False

    # -- primitives -------------------------------------------------------

    def obj_key(self, a) -> Any:
        raise NotImplementedError

    def dom(self, f) -> Any:
        raise NotImplementedError

    def cod(self, f) -> Any:
        raise NotImplementedError

    def identity(self, a) -> Map:
        raise NotImplementedError

    def compose(self, g: Map, f: Map) -> Map:
        raise NotImplementedError

    def hom(self, a, b) -> list[Map]:
        raise NotImplementedError

    def label(self, f: Map) -> str:
        raise NotImplementedError

    @property
    def terminal(self):
        return self.interval.I0

    def terminal_map(self, a) -> Map:
        raise NotImplementedError

    def product(self, a, b) -> ProdObj:
        raise NotImplementedError

    def exponential(self, base, target) -> ExpObj:
        """Exponential target^base with evaluation."""
        raise NotImplementedError

    def transpose(self, k: Map, prod: ProdObj, base, target) -> Map:
        """lambda(k): Z -> target^base for k: Z x base -> target."""
        raise NotImplementedError

    def copair2(self, beta: Map, alpha: Map) -> Map:
        """[beta, alpha]: I2 -> A with .i0 = alpha, .i1 = beta."""
        raise NotImplementedError

    def copair3(self, u: Map, v: Map) -> Map:
        """[u, v]: I3 -> A with .j0 = u, .j1 = v (requires u.i1 = v.i0)."""
        raise NotImplementedError

    def fill_square(self, top: Map, bottom: Map, left: Map, right: Map) -> Map:
        """Unique I1 x I1 -> A restricting to the given boundary paths.

        Convention: restriction at second coordinate 0/1 is top/bottom, at
        first coordinate 0/1 is left/right; requires right.top = bottom.left
        as path composites.
        """
        raise CapabilityError("square filling unavailable in this instance")

    def boundary_inv(self, sq: "HSquare") -> Map:
        """The unique cell with the given boundary square of homotopies."""
        raise CapabilityError("cell filling unavailable in this instance")

    # -- derived combinators ----------------------------------------------

    def map_eq(self, f: Map, g: Map) -> bool:
        return f == g

    def swap(self, a, b) -> Map:
        pab = self.product(a, b)
        return self.product(b, a).pair(pab.p2, pab.p1)

    def times(self, f: Map, g: Map) -> Map:
        """f x g on the canonical products."""
        p = self.product(self.dom(f), self.dom(g))
        q = self.product(self.cod(f), self.cod(g))
        return q.pair(self.compose(f, p.p1), self.compose(g, p.p2))

    def uncurry(self, f: Map, base, target) -> Map:
        """mu(f) = ev . (f x id): Z x base -> target for f: Z -> target^base."""
        e = self.exponential(base, target)
        return self.compose(e.ev, self.times(f, self.identity(base)))

    def point_as_map(self, e: Map, base, target) -> Map:
        """Convert a point of target^base into a map base -> target."""
        iv = self.interval
        mu = self.uncurry(e, base, target)          # I0 x base -> target
        p = self.product(iv.I0, base)
        section = p.pair(self.terminal_map(base), self.identity(base))
        return self.compose(mu, section)

    def const_path_map(self, a) -> Map:
        """lambda(p1): a -> a^I1, sending a point to its constant path."""
        iv = self.interval
        p = self.product(a, iv.I1)
        return self.transpose(p.p1, p, iv.I1, a)

    # -- path algebra -------------------------------------------------------

    def path_src(self, alpha: Map) -> Map:
        return self.compose(alpha, self.interval.zero)

    def path_tgt(self, alpha: Map) -> Map:
        return self.compose(alpha, self.interval.one)

    def path_id(self, pt: Map) -> Map:
        return self.compose(pt, self.interval.star)

    def path_inv(self, alpha: Map) -> Map:
        return self.compose(alpha, self.interval.sigma)

    def concat(self, beta: Map, alpha: Map) -> Map:
        """[beta, alpha]: I2 -> A for nose-to-tail paths (beta.0 = alpha.1)."""
        if not self.map_eq(self.path_src(beta), self.path_tgt(alpha)):
            raise BoundaryError("paths do not match nose to tail")
        return self.copair2(beta, alpha)

    def path_compose(self, beta: Map, alpha: Map) -> Map:
        """Concatenation reparameterised back to a single path."""
        return self.compose(self.concat(beta, alpha), self.interval.two)

    # -- fundamental groupoid ------------------------------------------------

    def pi(self, a) -> "PiData":
        key = self.obj_key(a)
        cache = getattr(self, "_pi_cache", None)
        if cache is None:
            cache = {}
            self._pi_cache = cache
        if key not in cache:
            cache[key] = _build_pi(self, a)
        return cache[key]

    def pi_obj_id(self, pt: Map) -> str:
        return "pt:" + self.label(pt)

    def pi_mor_id(self, path: Map) -> str:
        return "path:" + self.label(path)

    def pi_map(self, f: Map) -> GFunctor:
        """Post-composition functor Pi(dom f) -> Pi(cod f)."""
        pa = self.pi(self.dom(f))
        pb = self.pi(self.cod(f))
        omap = {o: self.pi_obj_id(self.compose(f, pa.point_of[o]))
                for o in pa.gpd.objects}
        mmap = {m: self.pi_mor_id(self.compose(f, pa.path_of[m]))
                for m in pa.gpd.morphisms}
        return GFunctor(pa.gpd, pb.gpd, omap, mmap)


@dataclass
class PiData:
    """Fundamental groupoid of an object: points and paths, with lookups."""

    gpd: FinGroupoid
    point_of: dict[str, Map]
    path_of: dict[str, Map]


def _build_pi(r: RealizerCategory, a) -> PiData:
    iv = r.interval
    points = {r.pi_obj_id(p): p for p in r.hom(iv.I0, a)}
    paths = {r.pi_mor_id(al): al for al in r.hom(iv.I1, a)}
    mors = {m: (r.pi_obj_id(r.path_src(al)), r.pi_obj_id(r.path_tgt(al)))
            for m, al in paths.items()}
    comp = {}
    for m2, b in paths.items():
        for m1, al in paths.items():
            if mors[m1][1] == mors[m2][0]:
                comp[(m2, m1)] = r.pi_mor_id(r.path_compose(b, al))
    ident = {o: r.pi_mor_id(r.path_id(p)) for o, p in points.items()}
    inv = {m: r.pi_mor_id(r.path_inv(al)) for m, al in paths.items()}
    gpd = FinGroupoid(sorted(points), mors, comp, ident, inv)
    return PiData(gpd, points, paths)


# -- homotopies -------------------------------------------------------------

@dataclass
class Homotopy:
    """A homotopy lhs => rhs between maps a -> b, carried by its body.

    The body is a map (a x I1) -> b on the canonical product, restricting
    to lhs at 0 and rhs at 1.
    """

    r: RealizerCategory
    lhs: Map
    rhs: Map
    body: Map

    @property
    def a(self):
        return self.r.dom(self.lhs)

    @property
    def b(self):
        return self.r.cod(self.lhs)

    def check(self) -> None:
        if not (self.r.map_eq(homotopy_dom(self), self.lhs)
                and self.r.map_eq(homotopy_cod(self), self.rhs)):
            raise BoundaryError("homotopy body does not restrict to its boundary")

    def __eq__(self, other) -> bool:
        return isinstance(other, Homotopy) and self.r.map_eq(self.body, other.body)


def _end_section(r: RealizerCategory, a, end: Map) -> Map:
    """<id_a, end . !>: a -> a x I1 for an endpoint I0 -> I1."""
    p = r.product(a, r.interval.I1)
    return p.pair(r.identity(a), r.compose(end, r.terminal_map(a)))


def homotopy_dom(h: Homotopy) -> Map:
    return h.r.compose(h.body, _end_section(h.r, h.a, h.r.interval.zero))


def homotopy_cod(h: Homotopy) -> Map:
    return h.r.compose(h.body, _end_section(h.r, h.a, h.r.interval.one))


def identity_homotopy(r: RealizerCategory, f: Map) -> Homotopy:
    p = r.product(r.dom(f), r.interval.I1)
    return Homotopy(r, f, f, r.compose(f, p.p1))


def inverse_homotopy(h: Homotopy) -> Homotopy:
    r = h.r
    body = r.compose(h.body, r.times(r.identity(h.a), r.interval.sigma))
    return Homotopy(r, h.rhs, h.lhs, body)


def homotopy_copair(h2: Homotopy, h1: Homotopy) -> Map:
    """[H', H]: a x I2 -> b via the exponential transpose trick."""
    r = h1.r
    iv = r.interval
    a, b = h1.a, h1.b
    lam1 = r.transpose(r.compose(h1.body, r.swap(iv.I1, a)),
                       r.product(iv.I1, a), a, b)
    lam2 = r.transpose(r.compose(h2.body, r.swap(iv.I1, a)),
                       r.product(iv.I1, a), a, b)
    cp = r.copair2(lam2, lam1)                       # I2 -> b^a
    return r.compose(r.uncurry(cp, a, b), r.swap(a, iv.I2))


def vcomp(h2: Homotopy, h1: Homotopy) -> Homotopy:
    """Vertical composition h2 . h1 (requires dom(h2) = cod(h1))."""
    r = h1.r
    if not r.map_eq(h2.lhs, h1.rhs):
        raise BoundaryError("vertical composition: boundaries do not match")
    body = r.compose(homotopy_copair(h2, h1),
                     r.times(r.identity(h1.a), r.interval.two))
    return Homotopy(r, h1.lhs, h2.rhs, body)


def hcomp(h2: Homotopy, h1: Homotopy) -> Homotopy:
    """Horizontal composition of h1: f => g (a -> b) with h2: h => k (b -> c)."""
    r = h1.r
    iv = r.interval
    if r.obj_key(h1.b) != r.obj_key(r.dom(h2.lhs)):
        raise BoundaryError("horizontal composition: middle object mismatch")
    a = h1.a
    pa = r.product(a, iv.I1)
    pii = r.product(iv.I1, iv.I1)
    diag = pii.pair(r.identity(iv.I1), r.identity(iv.I1))
    spread = r.times(r.identity(a), diag)            # a x I1 -> a x (I1 x I1)
    pa_ii = r.product(a, pii.obj)
    inner = r.product(pa.obj, iv.I1)
    assoc = inner.pair(
        pa.pair(pa_ii.p1, r.compose(pii.p1, pa_ii.p2)),
        r.compose(pii.p2, pa_ii.p2),
    )                                                # a x (I1 x I1) -> (a x I1) x I1
    body = r.compose(h2.body, r.compose(r.times(h1.body, r.identity(iv.I1)),
                                        r.compose(assoc, spread)))
    return Homotopy(r, r.compose(h2.lhs, h1.lhs), r.compose(h2.rhs, h1.rhs), body)


def pi_homotopy(h: Homotopy) -> NatIso:
    """The natural isomorphism Pi(lhs) => Pi(rhs) induced by a homotopy."""
    r = h.r
    pa = r.pi(h.a)
    pf = r.pi_map(h.lhs)
    pg = r.pi_map(h.rhs)
    comps = {}
    for o, pt in pa.point_of.items():
        p = r.product(h.a, r.interval.I1)
        leg = p.pair(r.compose(pt, r.interval.star), r.identity(r.interval.I1))
        comps[o] = r.pi_mor_id(r.compose(h.body, leg))
    return NatIso(pf, pg, comps)


def pi_path_diagonal(h: Homotopy, alpha: Map) -> Map:
    """Pi(H)(alpha, i): the diagonal path through the naturality square."""
    r = h.r
    p = r.product(h.a, r.interval.I1)
    return r.compose(h.body, p.pair(alpha, r.identity(r.interval.I1)))


# -- squares ----------------------------------------------------------------

@dataclass
class HSquare:
    """A commutative square of homotopies (a 2-cell of the square category).

    top/bottom run in the first interval direction, left/right in the
    second; commutativity means vcomp(right, top) = vcomp(bottom, left).
    """

    top: Homotopy
    bottom: Homotopy
    left: Homotopy
    right: Homotopy

    def check(self) -> None:
        r = self.top.r
        if not (r.map_eq(self.top.lhs, self.left.lhs)
                and r.map_eq(self.top.rhs, self.right.lhs)
                and r.map_eq(self.bottom.lhs, self.left.rhs)
                and r.map_eq(self.bottom.rhs, self.right.rhs)):
            raise BoundaryError("square corners do not match")
        if vcomp(self.right, self.top) != vcomp(self.bottom, self.left):
            raise BoundaryError("square does not commute")

    def __eq__(self, other) -> bool:
        return (isinstance(other, HSquare)
                and self.top == other.top and self.bottom == other.bottom
                and self.left == other.left and self.right == other.right)


def _corner_section(r: RealizerCategory, a, s: Optional[Map], t: Optional[Map]):
    """Section of (a x I1) x I1 fixing interval coordinates where given."""
    iv = r.interval
    pa = r.product(a, iv.I1)
    outer = r.product(pa.obj, iv.I1)
    if s is None and t is not None:
        # a x I1 -> (a x I1) x I1 freezing the second coordinate at t
        return outer.pair(r.identity(pa.obj), r.compose(t, r.terminal_map(pa.obj)))
    if s is not None and t is None:
        # a x I1 -> (a x I1) x I1 freezing the first coordinate at s
        leg1 = pa.pair(pa.p1, r.compose(s, r.terminal_map(pa.obj)))
        return outer.pair(leg1, pa.p2)
    raise StructuralError("exactly one coordinate must be frozen")


def homotopy_from_body(r: RealizerCategory, body: Map, base) -> Homotopy:
    """Wrap a map base x I1 -> b as a homotopy, reading off its boundary."""
    lhs = r.compose(body, _end_section(r, base, r.interval.zero))
    rhs = r.compose(body, _end_section(r, base, r.interval.one))
    return Homotopy(r, lhs, rhs, body)


def boundary(r: RealizerCategory, cell: Map, a, b) -> HSquare:
    """The four edges of a cell (a x I1) x I1 -> b."""
    iv = r.interval

    def edge(s, t):
        return homotopy_from_body(r, r.compose(cell, _corner_section(r, a, s, t)), a)

    return HSquare(edge(None, iv.zero), edge(None, iv.one),
                   edge(iv.zero, None), edge(iv.one, None))


def cell_vcomp(r: RealizerCategory, c2: Map, c1: Map, a, b) -> Map:
    """Compose cells in the second interval direction (as homotopies over a x I1)."""
    pa = r.product(a, r.interval.I1)
    return vcomp(homotopy_from_body(r, c2, pa.obj),
                 homotopy_from_body(r, c1, pa.obj)).body


def _swap_cell_coords(r: RealizerCategory, a) -> Map:
    """(a x I1) x I1 -> (a x I1) x I1 exchanging the two interval coordinates."""
    iv = r.interval
    pa = r.product(a, iv.I1)
    outer = r.product(pa.obj, iv.I1)
    leg1 = pa.pair(r.compose(pa.p1, outer.p1), outer.p2)
    leg2 = r.compose(pa.p2, outer.p1)
    return outer.pair(leg1, leg2)


def cell_hcomp(r: RealizerCategory, c2: Map, c1: Map, a, b) -> Map:
    """Compose cells in the first interval direction."""
    sw = _swap_cell_coords(r, a)
    out = cell_vcomp(r, r.compose(c2, sw), r.compose(c1, sw), a, b)
    return r.compose(out, sw)


def square_vcomp(s2: HSquare, s1: HSquare) -> HSquare:
    """Stack squares in the second direction (s1 on top of s2)."""
    return HSquare(s1.top, s2.bottom,
                   vcomp(s2.left, s1.left), vcomp(s2.right, s1.right))


def square_hcomp(s2: HSquare, s1: HSquare) -> HSquare:
    """Paste squares side by side in the first direction."""
    return HSquare(vcomp(s2.top, s1.top), vcomp(s2.bottom, s1.bottom),
                   s1.left, s2.right)


# -- the groupoid instance ---------------------------------------------------

def chain_groupoid(n: int) -> FinGroupoid:
    """Codiscrete groupoid on objects 0..n with morphisms named p{a}{b}."""
    objs = [str(k) for k in range(n + 1)]
    mors = {}
    for x in objs:
        for y in objs:
            mors[_chain_mid(x, y)] = (x, y)
    comp = {}
    for x in objs:
        for y in objs:
            for z in objs:
                comp[(_chain_mid(y, z), _chain_mid(x, y))] = _chain_mid(x, z)
    ident = {x: _chain_mid(x, x) for x in objs}
    inv = {_chain_mid(x, y): _chain_mid(y, x) for x in objs for y in objs}
    return FinGroupoid(objs, mors, comp, ident, inv)


def _chain_mid(a: str, b: str) -> str:
    return f"id_{a}" if a == b else f"p{a}{b}"


class GpdRealizer(RealizerCategory):
    """Finite groupoids with the walking-isomorphism interval.

    `discrete=True` degenerates the interval to the terminal groupoid
    (I1 = I2 = I3 = I0), which recovers the classical discrete situation.
    """

    can_fill_squares = True

    def __init__(self, caps: SizeCaps = DEFAULT_CAPS, discrete: bool = False):
        self.caps = caps
        self.discrete = discrete
        self._hom_cache: dict = {}
        self._prod_cache: dict = {}
        self._exp_cache: dict = {}
        if discrete:
            t = terminal_groupoid("0")
            ident = identity_functor(t)
            self.interval = IntervalData(t, t, t, t, ident, ident, ident,
                                         ident, ident, ident, ident, ident, ident)
            self._i1_gen = None
        else:
            self.interval = _standard_interval()
            self._i1_gen = "p01"

    # primitives

    def obj_key(self, a: FinGroupoid):
        return a.serial

    def dom(self, f: GFunctor):
        return f.dom

    def cod(self, f: GFunctor):
        return f.cod

    def identity(self, a: FinGroupoid) -> GFunctor:
        return identity_functor(a)

    def compose(self, g: GFunctor, f: GFunctor) -> GFunctor:
        return compose_functors(g, f)

    def hom(self, a: FinGroupoid, b: FinGroupoid) -> list[GFunctor]:
        key = (a.serial, b.serial)
        if key not in self._hom_cache:
            self._hom_cache[key] = functors_between(a, b)
        return self._hom_cache[key]

    def label(self, f: GFunctor) -> str:
        iv = self.interval
        if f.dom.serial == iv.I0.serial:
            return f.omap[f.dom.objects[0]]
        if self._i1_gen is not None and f.dom.serial == iv.I1.serial:
            return f.mmap[self._i1_gen]
        objs = ",".join(f"{x}>{f.omap[x]}" for x in f.dom.objects)
        mors = ",".join(f"{m}>{f.mmap[m]}" for m in f.dom.morphisms)
        return f"[{objs}|{mors}]"

    def terminal_map(self, a: FinGroupoid) -> GFunctor:
        t = self.interval.I0
        o = t.objects[0]
        return GFunctor(a, t, {x: o for x in a.objects},
                        {m: t.id_of(o) for m in a.morphisms})

    def product(self, a: FinGroupoid, b: FinGroupoid) -> ProdObj:
        key = (a.serial, b.serial)
        if key not in self._prod_cache:
            p = gpd_product(a, b, self.caps)
            self._prod_cache[key] = GpdProd(p.gpd, p.p1, p.p2, p.pair, p)
        return self._prod_cache[key]

    def exponential(self, base: FinGroupoid, target: FinGroupoid) -> ExpObj:
        key = (base.serial, target.serial)
        if key not in self._exp_cache:
            e = gpd_exponential(base, target, self.caps)
            prod = self.product(e.gpd, base)
            ev = _gpd_eval(e, prod, base, target)
            self._exp_cache[key] = GpdExp(e.gpd, ev, prod, e)
        return self._exp_cache[key]

    def transpose(self, k: GFunctor, prod: ProdObj, base, target) -> GFunctor:
        e: GpdExp = self.exponential(base, target)
        raw: ProductGpd = prod.raw
        z = raw.p1.cod
        omap = {}
        kz: dict[str, GFunctor] = {}
        for zo in z.objects:
            f = GFunctor(base, target,
                         {a: k.omap[raw.opair[(zo, a)]] for a in base.objects},
                         {m: k.mmap[raw.mpair[(z.id_of(zo), m)]] for m in base.morphisms})
            kz[zo] = f
            omap[zo] = e.raw.obj_of(f)
        mmap = {}
        for v in z.morphisms:
            s, t = z.mors[v]
            n = NatIso(kz[s], kz[t],
                       {a: k.mmap[raw.mpair[(v, base.id_of(a))]] for a in base.objects})
            mmap[v] = e.raw.mor_of(n)
        return GFunctor(z, e.obj, omap, mmap)

    def copair2(self, beta: GFunctor, alpha: GFunctor) -> GFunctor:
        iv = self.interval
        if self.discrete:
            if alpha != beta:
                raise BoundaryError("degenerate copair needs equal legs")
            return alpha
        if self.compose(beta, iv.zero) != self.compose(alpha, iv.one):
            raise BoundaryError("copair legs do not match nose to tail")
        a = alpha.cod
        omap = {"0": alpha.omap["0"], "1": alpha.omap["1"], "2": beta.omap["1"]}
        gen = {"p01": alpha.mmap["p01"], "p12": beta.mmap["p01"]}
        return _chain_functor(iv.I2, a, omap, gen)

    def copair3(self, u: GFunctor, v: GFunctor) -> GFunctor:
        iv = self.interval
        if self.discrete:
            if u != v:
                raise BoundaryError("degenerate copair needs equal legs")
            return u
        if self.compose(u, iv.i1) != self.compose(v, iv.i0):
            raise BoundaryError("copair legs do not agree on the shared half")
        a = u.cod
        omap = {"0": u.omap["0"], "1": u.omap["1"], "2": u.omap["2"],
                "3": v.omap["2"]}
        gen = {"p01": u.mmap["p01"], "p12": u.mmap["p12"], "p23": v.mmap["p12"]}
        return _chain_functor(iv.I3, a, omap, gen)

    def fill_square(self, top, bottom, left, right) -> GFunctor:
        if self.discrete:
            return top
        iv = self.interval
        c = top.cod
        prod = self.product(iv.I1, iv.I1).raw
        corner = {("0", "0"): self._path_end(left, "0"),
                  ("0", "1"): self._path_end(left, "1"),
                  ("1", "0"): self._path_end(right, "0"),
                  ("1", "1"): self._path_end(right, "1")}
        if (corner[("0", "0")] != self._path_end(top, "0")
                or corner[("1", "0")] != self._path_end(top, "1")
                or corner[("0", "1")] != self._path_end(bottom, "0")
                or corner[("1", "1")] != self._path_end(bottom, "1")):
            raise BoundaryError("square boundary paths do not share corners")
        if c.compose(right.mmap["p01"], top.mmap["p01"]) != \
                c.compose(bottom.mmap["p01"], left.mmap["p01"]):
            raise BoundaryError("square of paths does not commute")

        def horiz(u: str, t: str) -> Optional[str]:
            if iv.I1.is_identity(u):
                return None
            edge = top if t == "0" else bottom
            m = edge.mmap["p01"]
            return m if u == "p01" else c.inv_of(m)

        def vert(s: str, v: str) -> Optional[str]:
            if iv.I1.is_identity(v):
                return None
            edge = left if s == "0" else right
            m = edge.mmap["p01"]
            return m if v == "p01" else c.inv_of(m)

        omap = {prod.opair[st]: corner[st] for st in corner}
        mmap = {}
        for (u, vv), mid in prod.mpair.items():
            s, s2 = iv.I1.mors[u]
            t, t2 = iv.I1.mors[vv]
            val = c.id_of(corner[(s, t)])
            h = horiz(u, t)
            if h is not None:
                val = c.compose(h, val)
            w = vert(s2, vv)
            if w is not None:
                val = c.compose(w, val)
            mmap[mid] = val
        return GFunctor(prod.p1.dom, c, omap, mmap)

    def _path_end(self, path: GFunctor, end: str) -> str:
        return path.omap[end]

    def boundary_inv(self, sq: HSquare) -> GFunctor:
        """The unique cell with the given boundary (groupoid instance)."""
        if self.discrete:
            return sq.top.body
        sq.check()
        r = self
        iv = r.interval
        a, b = sq.top.a, sq.top.b
        pa = r.product(a, iv.I1).raw
        outer = r.product(pa.p1.dom, iv.I1).raw
        corners = {("0", "0"): sq.top.lhs, ("1", "0"): sq.top.rhs,
                   ("0", "1"): sq.bottom.lhs, ("1", "1"): sq.bottom.rhs}

        def hcomp_at(u: str, t: str, ao: str) -> Optional[str]:
            if iv.I1.is_identity(u):
                return None
            edge = sq.top if t == "0" else sq.bottom
            m = edge.body.mmap[pa.mpair[(a.id_of(ao), "p01")]]
            return m if u == "p01" else b.inv_of(m)

        def vcomp_at(s: str, v: str, ao: str) -> Optional[str]:
            if iv.I1.is_identity(v):
                return None
            edge = sq.left if s == "0" else sq.right
            m = edge.body.mmap[pa.mpair[(a.id_of(ao), "p01")]]
            return m if v == "p01" else b.inv_of(m)

        omap = {}
        for ao in a.objects:
            for s in ("0", "1"):
                for t in ("0", "1"):
                    omap[outer.opair[(pa.opair[(ao, s)], t)]] = corners[(s, t)].omap[ao]
        split = {imid: (am, u) for (am, u), imid in pa.mpair.items()}
        mmap = {}
        for (inner_m, v), mid in outer.mpair.items():
            am, u = split[inner_m]
            s, s2 = iv.I1.mors[u]
            t, _t2 = iv.I1.mors[v]
            a_tgt = a.mors[am][1]
            val = corners[(s, t)].mmap[am]
            h = hcomp_at(u, t, a_tgt)
            if h is not None:
                val = b.compose(h, val)
            w = vcomp_at(s2, v, a_tgt)
            if w is not None:
                val = b.compose(w, val)
            mmap[mid] = val
        return GFunctor(outer.p1.dom, b, omap, mmap)


@dataclass
class GpdProd(ProdObj):
    raw: ProductGpd = None


@dataclass
class GpdExp(ExpObj):
    raw: ExpGpd = None


def _gpd_eval(e: ExpGpd, prod: ProdObj, base: FinGroupoid, target: FinGroupoid) -> GFunctor:
    raw: ProductGpd = prod.raw
    omap = {}
    for (fo, a), oid in raw.opair.items():
        omap[oid] = e.obj_to_functor[fo].omap[a]
    mmap = {}
    for (n, m), mid in raw.mpair.items():
        iso = e.mor_to_natiso[n]
        s, _t = base.mors[m]
        mmap[mid] = target.compose(iso.tgt.mmap[m], iso.components[s])
    return GFunctor(raw.p1.dom, target, omap, mmap)


def _chain_functor(dom: FinGroupoid, cod: FinGroupoid,
                   omap: dict[str, str], gen: dict[str, str]) -> GFunctor:
    """Extend generator images p{k}{k+1} to the full chain groupoid table."""
    mmap: dict[str, str] = {}
    objs = sorted(dom.objects, key=int)
    for x in objs:
        mmap[dom.id_of(x)] = cod.id_of(omap[x])
    for i in range(len(objs)):
        for j in range(len(objs)):
            if i == j:
                continue
            lo, hi = min(i, j), max(i, j)
            m = cod.id_of(omap[str(lo)])
            for k in range(lo, hi):
                m = cod.compose(gen[f"p{k}{k + 1}"], m)
            if i > j:
                m = cod.inv_of(m)
            mmap[f"p{i}{j}"] = m
    return GFunctor(dom, cod, omap, mmap)


def _standard_interval() -> IntervalData:
    I0 = terminal_groupoid("0")
    I1 = chain_groupoid(1)
    I2 = chain_groupoid(2)
    I3 = chain_groupoid(3)
    pt = I0.objects[0]

    def point(cod: FinGroupoid, obj: str) -> GFunctor:
        return GFunctor(I0, cod, {pt: obj}, {I0.id_of(pt): cod.id_of(obj)})

    zero = point(I1, "0")
    one = point(I1, "1")
    star = GFunctor(I1, I0, {"0": pt, "1": pt},
                    {m: I0.id_of(pt) for m in I1.morphisms})
    sigma = _chain_functor(I1, I1, {"0": "1", "1": "0"}, {"p01": "p10"})
    two = _chain_functor(I1, I2, {"0": "0", "1": "2"}, {"p01": "p02"})
    i0 = _chain_functor(I1, I2, {"0": "0", "1": "1"}, {"p01": "p01"})
    i1 = _chain_functor(I1, I2, {"0": "1", "1": "2"}, {"p01": "p12"})
    j0 = _chain_functor(I2, I3, {"0": "0", "1": "1", "2": "2"},
                        {"p01": "p01", "p12": "p12"})
    j1 = _chain_functor(I2, I3, {"0": "1", "1": "2", "2": "3"},
                        {"p01": "p12", "p12": "p23"})
    return IntervalData(I0, I1, I2, I3, zero, one, star, sigma, two, i0, i1, j0, j1)


def gpd_interval(caps: SizeCaps = DEFAULT_CAPS) -> GpdRealizer:
    """The shipped instance: groupoids with the walking-isomorphism interval."""
    return GpdRealizer(caps=caps)


def gpd_discrete_interval(caps: SizeCaps = DEFAULT_CAPS) -> GpdRealizer:
    """Degenerate instance with I1 = I2 = I3 = I0."""
    return GpdRealizer(caps=caps, discrete=True)


def path_of_morphism(r: GpdRealizer, a: FinGroupoid, m: str) -> GFunctor:
    """The path I1 -> a tracing the morphism m."""
    if r._i1_gen is None:
        raise CapabilityError("paths require the standard interval")
    s, t = a.mors[m]
    return _chain_functor(r.interval.I1, a, {"0": s, "1": t}, {"p01": m})


def point_of_object(r: GpdRealizer, a: FinGroupoid, x: str) -> GFunctor:
    """The point I0 -> a picking the object x."""
    t = r.interval.I0
    return GFunctor(t, a, {t.objects[0]: x}, {t.id_of(t.objects[0]): a.id_of(x)})


def nat_iso_functor_form(r: GpdRealizer, n: NatIso,
                         i1: Optional[FinGroupoid] = None) -> GFunctor:
    """The functor X x I1 -> Y packaging a natural isomorphism.

    `i1` is the walking-iso groupoid used for the cylinder; it defaults to
    the realizer interval but may be any chain_groupoid(1) copy.
    """
    i1 = i1 if i1 is not None else r.interval.I1
    F, G = n.src, n.tgt
    x, y = F.dom, F.cod
    pa = r.product(x, i1).raw
    omap = {}
    for xo in x.objects:
        omap[pa.opair[(xo, "0")]] = F.omap[xo]
        omap[pa.opair[(xo, "1")]] = G.omap[xo]
    mmap = {}
    for (m, u), mid in pa.mpair.items():
        s, s2 = i1.mors[u]
        xt = x.mors[m][1]
        base = F.mmap[m] if s == "0" else G.mmap[m]
        if s == s2:
            mmap[mid] = base
        elif (s, s2) == ("0", "1"):
            mmap[mid] = y.compose(n.components[xt], base)
        else:
            mmap[mid] = y.compose(y.inv_of(n.components[xt]), base)
    return GFunctor(pa.p1.dom, y, omap, mmap)


def homotopy_from_nat_iso(r: GpdRealizer, n: NatIso) -> Homotopy:
    """Package a natural isomorphism as a homotopy (its functor form)."""
    return Homotopy(r, n.src, n.tgt, nat_iso_functor_form(r, n))


def nat_iso_from_homotopy(h: Homotopy) -> NatIso:
    """Extract the componentwise natural isomorphism from a homotopy."""
    r: GpdRealizer = h.r
    x = h.a
    pa = r.product(x, r.interval.I1).raw
    comps = {xo: h.body.mmap[pa.mpair[(x.id_of(xo), "p01")]] for xo in x.objects}
    return NatIso(h.lhs, h.rhs, comps)


def pi_base_iso(r: GpdRealizer, a: FinGroupoid) -> GFunctor:
    """The explicit isomorphism Pi(A) -> A in the groupoid instance."""
    if r._i1_gen is None:
        raise CapabilityError("Pi(A) = A requires the standard interval")
    pa = r.pi(a)
    omap = {o: p.omap[r.interval.I0.objects[0]] for o, p in pa.point_of.items()}
    mmap = {m: al.mmap[r._i1_gen] for m, al in pa.path_of.items()}
    return GFunctor(pa.gpd, a, omap, mmap)


# -- cogroupoid axiom checking ----------------------------------------------

@dataclass
class AxiomReport:
    """Per-diagram pass/fail entries plus free-form notes."""

    entries: list[tuple[str, bool, str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.entries.append((name, ok, detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.entries)

    def failed(self) -> list[str]:
        return [name for name, ok, _ in self.entries if not ok]


def check_cogroupoid(r: RealizerCategory, iv: Optional[IntervalData] = None,
                     probes: Optional[list] = None) -> AxiomReport:
    """Scan the interval diagrams and both pushout universal properties.

    The second coinverse diagram is checked in its symmetric form with
    codomain I1 (the asymmetric printed form does not typecheck); a note
    records this.
    """
    iv = iv or r.interval
    rep = AxiomReport()
    rep.notes.append("coinverse-right checked with codomain I1 (symmetric form)")
    probes = probes if probes is not None else [iv.I0, iv.I1, iv.I2, iv.I3]

    def check(name: str, run: Callable[[], bool], detail: str = ""):
        # a copair whose legs fail to match is itself an axiom violation
        try:
            ok = run()
        except BoundaryError as exc:
            ok = False
            detail = str(exc)
        rep.add(name, ok, detail)

    c = r.compose
    ident = r.identity
    check("I0-terminal", lambda: all(len(r.hom(x, iv.I0)) == 1 for x in probes),
          "hom(X, I0) is a singleton for every probe")
    check("endpoint-cocomposition-0",
          lambda: r.map_eq(c(iv.two, iv.zero), c(iv.i0, iv.zero)))
    check("endpoint-cocomposition-1",
          lambda: r.map_eq(c(iv.two, iv.one), c(iv.i1, iv.one)))
    check("coidentity-endpoints",
          lambda: r.map_eq(c(iv.star, iv.zero), ident(iv.I0))
          and r.map_eq(c(iv.star, iv.one), ident(iv.I0)),
          "star absorbs both endpoints")
    check("sigma-endpoints",
          lambda: r.map_eq(c(iv.sigma, iv.zero), iv.one)
          and r.map_eq(c(iv.sigma, iv.one), iv.zero),
          "sigma swaps the endpoints")
    check("sigma-involution",
          lambda: r.map_eq(c(iv.sigma, iv.sigma), ident(iv.I1)))
    check("coidentity",
          lambda: r.map_eq(c(r.copair2(ident(iv.I1), c(iv.zero, iv.star)), iv.two),
                           ident(iv.I1))
          and r.map_eq(c(r.copair2(c(iv.one, iv.star), ident(iv.I1)), iv.two),
                       ident(iv.I1)),
          "copairing with a degenerate path is neutral")
    check("coassociativity",
          lambda: r.map_eq(
              c(r.copair2(c(iv.j1, iv.two), c(iv.j0, iv.i0)), iv.two),
              c(r.copair2(c(iv.j1, iv.i1), c(iv.j0, iv.two)), iv.two)))
    check("coinverse-left",
          lambda: r.map_eq(c(r.copair2(ident(iv.I1), iv.sigma), iv.two),
                           c(iv.one, iv.star)))
    check("coinverse-right",
          lambda: r.map_eq(c(r.copair2(iv.sigma, ident(iv.I1)), iv.two),
                           c(iv.zero, iv.star)))

    ok2, detail2 = _check_pushout2(r, iv, probes)
    rep.add("pushout-I2", ok2, detail2)
    ok3, detail3 = _check_pushout3(r, iv, probes)
    rep.add("pushout-I3", ok3, detail3)
    return rep


def _check_pushout2(r: RealizerCategory, iv: IntervalData, probes) -> tuple[bool, str]:
    for x in probes:
        paths = r.hom(iv.I1, x)
        cands = r.hom(iv.I2, x)
        for alpha in paths:
            for beta in paths:
                if not r.map_eq(r.compose(beta, iv.zero), r.compose(alpha, iv.one)):
                    continue
                cp = r.copair2(beta, alpha)
                if not (r.map_eq(r.compose(cp, iv.i0), alpha)
                        and r.map_eq(r.compose(cp, iv.i1), beta)):
                    return False, "copair does not restrict to its legs"
                n = sum(1 for m in cands
                        if r.map_eq(r.compose(m, iv.i0), alpha)
                        and r.map_eq(r.compose(m, iv.i1), beta))
                if n != 1:
                    return False, f"expected a unique copairing, found {n}"
    return True, ""


def _check_pushout3(r: RealizerCategory, iv: IntervalData, probes) -> tuple[bool, str]:
    for x in probes:
        doubles = r.hom(iv.I2, x)
        cands = r.hom(iv.I3, x)
        for u in doubles:
            for v in doubles:
                if not r.map_eq(r.compose(u, iv.i1), r.compose(v, iv.i0)):
                    continue
                cp = r.copair3(u, v)
                if not (r.map_eq(r.compose(cp, iv.j0), u)
                        and r.map_eq(r.compose(cp, iv.j1), v)):
                    return False, "copair does not restrict to its legs"
                n = sum(1 for m in cands
                        if r.map_eq(r.compose(m, iv.j0), u)
                        and r.map_eq(r.compose(m, iv.j1), v))
                if n != 1:
                    return False, f"expected a unique copairing, found {n}"
    return True, ""
