"""Finite groupoids as total tables, with the categorical toolkit on top.

Everything downstream (intervals, assemblies, fibrations, dependent
products) reduces to finite scans over the tables defined here.  All values
are immutable after construction and safe to share.

Identifier conventions: objects and morphisms are opaque strings; composite
constructions build deterministic synthetic ids (tupled names for products,
enumeration-indexed names for exponentials), so golden files are stable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import SizeCapError, StructuralError

_serial_counter = itertools.count()


@dataclass(frozen=True)
class SizeCaps:
    """Limits enforced by the enumerating constructions."""

    max_objects: int = 64
    max_morphisms: int = 4096


DEFAULT_CAPS = SizeCaps()


@dataclass
class ValidationReport:
    """Axiom failures found by a validator; empty means valid."""

    failures: list[tuple[str, str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, kind: str, detail: str) -> None:
        self.failures.append((kind, detail))

    def __repr__(self) -> str:
        status = "ok" if self.ok else f"{len(self.failures)} failure(s)"
        return f"ValidationReport({status})"


class FinGroupoid:
    """A finite groupoid given by total composition/identity/inverse tables.

    `comp[(g, f)]` is defined exactly when target(f) == source(g) and holds
    the composite g after f.  Construction checks structure (no dangling
    identifiers, total tables); the groupoid axioms themselves are checked
    by `validate_groupoid`, so deliberately broken tables can be built for
    fault-injection tests.
    """

    __slots__ = (
        "objects", "morphisms", "mors", "comp", "ident", "inv",
        "serial", "_hom", "_components", "_key",
    )

    def __init__(
        self,
        objects: Iterable[str],
        mors: dict[str, tuple[str, str]],
        comp: dict[tuple[str, str], str],
        ident: dict[str, str],
        inv: dict[str, str],
    ):
        self.objects: tuple[str, ...] = tuple(objects)
        self.mors: dict[str, tuple[str, str]] = dict(mors)
        self.morphisms: tuple[str, ...] = tuple(self.mors)
        self.comp: dict[tuple[str, str], str] = dict(comp)
        self.ident: dict[str, str] = dict(ident)
        self.inv: dict[str, str] = dict(inv)
        self.serial: int = next(_serial_counter)
        self._hom: Optional[dict[tuple[str, str], tuple[str, ...]]] = None
        self._components = None
        self._key = None
        self._check_structure()

    def _check_structure(self) -> None:
        oset = set(self.objects)
        if len(oset) != len(self.objects):
            raise StructuralError("duplicate object identifier")
        for m, (s, t) in self.mors.items():
            if s not in oset or t not in oset:
                raise StructuralError(f"morphism {m!r} has dangling endpoint")
        for x in self.objects:
            if x not in self.ident:
                raise StructuralError(f"object {x!r} lacks an identity entry")
            i = self.ident[x]
            if i not in self.mors:
                raise StructuralError(f"identity of {x!r} dangles: {i!r}")
            if self.mors[i] != (x, x):
                raise StructuralError(f"identity of {x!r} is not an endomorphism")
        for m in self.mors:
            if m not in self.inv:
                raise StructuralError(f"morphism {m!r} lacks an inverse entry")
            if self.inv[m] not in self.mors:
                raise StructuralError(f"inverse of {m!r} dangles")
        for (g, f), h in self.comp.items():
            if g not in self.mors or f not in self.mors or h not in self.mors:
                raise StructuralError(f"comp entry ({g!r},{f!r}) dangles")
            if self.src(g) != self.tgt(f):
                raise StructuralError(f"comp entry ({g!r},{f!r}) is not composable")
        for f in self.mors:
            for g in self.mors:
                if self.src(g) == self.tgt(f) and (g, f) not in self.comp:
                    raise StructuralError(f"comp table missing entry ({g!r},{f!r})")

    # -- basic accessors -------------------------------------------------

    def src(self, m: str) -> str:
        return self.mors[m][0]

    def tgt(self, m: str) -> str:
        return self.mors[m][1]

    def compose(self, g: str, f: str) -> str:
        """Composite g after f."""
        return self.comp[(g, f)]

    def compose_path(self, *ms: str) -> str:
        """Compose a sequence listed codomain-first: compose_path(h, g, f)."""
        out = ms[-1]
        for m in reversed(ms[:-1]):
            out = self.compose(m, out)
        return out

    def id_of(self, x: str) -> str:
        return self.ident[x]

    def inv_of(self, m: str) -> str:
        return self.inv[m]

    def is_identity(self, m: str) -> bool:
        return self.ident[self.src(m)] == m

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        if self._hom is None:
            table: dict[tuple[str, str], list[str]] = {}
            for m in self.morphisms:
                table.setdefault(self.mors[m], []).append(m)
            self._hom = {k: tuple(v) for k, v in table.items()}
        return self._hom.get((a, b), ())

    def key(self) -> tuple:
        """Canonical structural fingerprint (extensional table equality)."""
        if self._key is None:
            self._key = (
                tuple(sorted(self.objects)),
                tuple(sorted((m, s, t) for m, (s, t) in self.mors.items())),
                tuple(sorted((g, f, h) for (g, f), h in self.comp.items())),
                tuple(sorted(self.ident.items())),
                tuple(sorted(self.inv.items())),
            )
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinGroupoid):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"FinGroupoid({len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    # -- component structure ---------------------------------------------

    def components(self) -> list["_Component"]:
        """Connected components with spanning data, cached.

        Each component carries a base object, a composite tree morphism
        base -> x for every object x in it, and the vertex group at the
        base.  This is the backbone of functor/natural-iso enumeration.
        """
        if self._components is None:
            self._components = _split_components(self)
        return self._components


@dataclass
class _Component:
    base: str
    objects: tuple[str, ...]
    tree: dict[str, str]          # x -> composite morphism base -> x
    vertex_group: tuple[str, ...]  # hom(base, base)


def _split_components(g: FinGroupoid) -> list[_Component]:
    seen: set[str] = set()
    comps: list[_Component] = []
    neighbours: dict[str, list[tuple[str, str]]] = {x: [] for x in g.objects}
    for m in g.morphisms:
        s, t = g.mors[m]
        neighbours[s].append((t, m))
    for base in sorted(g.objects):
        if base in seen:
            continue
        tree: dict[str, str] = {base: g.id_of(base)}
        order = [base]
        seen.add(base)
        frontier = [base]
        while frontier:
            nxt: list[str] = []
            for x in frontier:
                for (t, m) in sorted(neighbours[x], key=lambda p: (p[0], p[1])):
                    if t not in seen:
                        seen.add(t)
                        tree[t] = g.compose(m, tree[x])
                        order.append(t)
                        nxt.append(t)
            frontier = nxt
        comps.append(_Component(base, tuple(sorted(order)), tree, g.hom(base, base)))
    return comps


# -- validation -----------------------------------------------------------

def validate_groupoid(g: FinGroupoid) -> ValidationReport:
    """Scan every axiom instance; report violations (empty report = valid)."""
    rep = ValidationReport()
    for (gg, ff), h in g.comp.items():
        if g.src(h) != g.src(ff) or g.tgt(h) != g.tgt(gg):
            rep.add("comp-typing", f"{gg}o{ff}={h} has wrong endpoints")
    for f in g.morphisms:
        i_s, i_t = g.id_of(g.src(f)), g.id_of(g.tgt(f))
        if g.compose(f, i_s) != f:
            rep.add("id-right", f"{f}o{i_s} != {f}")
        if g.compose(i_t, f) != f:
            rep.add("id-left", f"{i_t}o{f} != {f}")
        v = g.inv_of(f)
        if g.mors[v] != (g.tgt(f), g.src(f)):
            rep.add("inv-typing", f"inverse of {f} has wrong endpoints")
            continue
        if g.compose(v, f) != g.id_of(g.src(f)):
            rep.add("inv-left", f"{v}o{f} != id_{g.src(f)}")
        if g.compose(f, v) != g.id_of(g.tgt(f)):
            rep.add("inv-right", f"{f}o{v} != id_{g.tgt(f)}")
    for f in g.morphisms:
        for gg in g.morphisms:
            if g.src(gg) != g.tgt(f):
                continue
            gf = g.compose(gg, f)
            for h in g.morphisms:
                if g.src(h) != g.tgt(gg):
                    continue
                if g.compose(h, gf) != g.compose(g.compose(h, gg), f):
                    rep.add("assoc", f"({h}o{gg})o{f} != {h}o({gg}o{f})")
    return rep


# -- small builders --------------------------------------------------------

def terminal_groupoid(name: str = "*") -> FinGroupoid:
    i = f"id_{name}"
    return FinGroupoid([name], {i: (name, name)}, {(i, i): i}, {name: i}, {i: i})


def discrete(objects: Iterable[str]) -> FinGroupoid:
    objs = list(objects)
    mors = {f"id_{x}": (x, x) for x in objs}
    comp = {(f"id_{x}", f"id_{x}"): f"id_{x}" for x in objs}
    return FinGroupoid(objs, mors, comp, {x: f"id_{x}" for x in objs},
                       {f"id_{x}": f"id_{x}" for x in objs})


def codiscrete(objects: Iterable[str]) -> FinGroupoid:
    """Exactly one morphism in every hom-set."""
    objs = list(objects)
    mors = {}
    for a in objs:
        for b in objs:
            mors[_cod_mid(a, b)] = (a, b)
    comp = {}
    for a in objs:
        for b in objs:
            for c in objs:
                comp[(_cod_mid(b, c), _cod_mid(a, b))] = _cod_mid(a, c)
    ident = {a: _cod_mid(a, a) for a in objs}
    inv = {_cod_mid(a, b): _cod_mid(b, a) for a in objs for b in objs}
    return FinGroupoid(objs, mors, comp, ident, inv)


def _cod_mid(a: str, b: str) -> str:
    return f"id_{a}" if a == b else f"{a}~{b}"


def cyclic_group(n: int, prefix: str = "z") -> FinGroupoid:
    """One-object groupoid with vertex group Z_n."""
    if n < 1:
        raise StructuralError("cyclic group order must be >= 1")
    obj = f"{prefix}*"
    names = [f"id_{obj}" if k == 0 else f"{prefix}{k}" for k in range(n)]
    mors = {names[k]: (obj, obj) for k in range(n)}
    comp = {}
    for a in range(n):
        for b in range(n):
            comp[(names[a], names[b])] = names[(a + b) % n]
    return FinGroupoid([obj], mors, comp, {obj: names[0]},
                       {names[k]: names[(-k) % n] for k in range(n)})


def disjoint_union(parts: list[FinGroupoid], tags: Optional[list[str]] = None) -> FinGroupoid:
    tags = tags or [f"u{i}" for i in range(len(parts))]
    objs: list[str] = []
    mors: dict[str, tuple[str, str]] = {}
    comp: dict[tuple[str, str], str] = {}
    ident: dict[str, str] = {}
    inv: dict[str, str] = {}
    for tag, p in zip(tags, parts):
        ob = {x: f"{tag}.{x}" for x in p.objects}
        mo = {m: f"{tag}.{m}" for m in p.morphisms}
        objs.extend(ob[x] for x in p.objects)
        for m, (s, t) in p.mors.items():
            mors[mo[m]] = (ob[s], ob[t])
        for (g, f), h in p.comp.items():
            comp[(mo[g], mo[f])] = mo[h]
        for x, i in p.ident.items():
            ident[ob[x]] = mo[i]
        for m, v in p.inv.items():
            inv[mo[m]] = mo[v]
    return FinGroupoid(objs, mors, comp, ident, inv)


def relabel(g: FinGroupoid, omap: dict[str, str], mmap: dict[str, str]) -> FinGroupoid:
    """Rename objects/morphisms along bijections (an isomorphic copy)."""
    return FinGroupoid(
        [omap[x] for x in g.objects],
        {mmap[m]: (omap[s], omap[t]) for m, (s, t) in g.mors.items()},
        {(mmap[a], mmap[b]): mmap[c] for (a, b), c in g.comp.items()},
        {omap[x]: mmap[i] for x, i in g.ident.items()},
        {mmap[m]: mmap[v] for m, v in g.inv.items()},
    )


# -- functors and natural isomorphisms ------------------------------------

class GFunctor:
    """A functor between finite groupoids, as total object/morphism tables."""

    __slots__ = ("dom", "cod", "omap", "mmap", "_key")

    def __init__(self, dom: FinGroupoid, cod: FinGroupoid,
                 omap: dict[str, str], mmap: dict[str, str]):
        self.dom = dom
        self.cod = cod
        self.omap = omap
        self.mmap = mmap
        self._key = None

    def o(self, x: str) -> str:
        return self.omap[x]

    def m(self, f: str) -> str:
        return self.mmap[f]

    def key(self) -> tuple:
        if self._key is None:
            self._key = (
                tuple(self.omap[x] for x in self.dom.objects),
                tuple(self.mmap[m] for m in self.dom.morphisms),
            )
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, GFunctor):
            return NotImplemented
        return (self.dom.serial == other.dom.serial
                and self.cod.serial == other.cod.serial
                and self.key() == other.key())

    def __hash__(self) -> int:
        return hash((self.dom.serial, self.cod.serial, self.key()))

    def __repr__(self) -> str:
        return f"GFunctor({len(self.dom.objects)}obj -> {len(self.cod.objects)}obj)"


def identity_functor(g: FinGroupoid) -> GFunctor:
    return GFunctor(g, g, {x: x for x in g.objects}, {m: m for m in g.morphisms})


def compose_functors(g: GFunctor, f: GFunctor) -> GFunctor:
    if g.dom.serial != f.cod.serial:
        raise StructuralError("functor composition: boundary mismatch")
    return GFunctor(f.dom, g.cod,
                    {x: g.omap[f.omap[x]] for x in f.dom.objects},
                    {m: g.mmap[f.mmap[m]] for m in f.dom.morphisms})


def is_functor(f: GFunctor) -> ValidationReport:
    """Total-table scan of functor laws."""
    rep = ValidationReport()
    dom, cod = f.dom, f.cod
    for x in dom.objects:
        if f.omap.get(x) not in cod.ident:
            rep.add("omap", f"object {x} maps to nothing in codomain")
    for m in dom.morphisms:
        fm = f.mmap.get(m)
        if fm is None or fm not in cod.mors:
            rep.add("mmap", f"morphism {m} maps to nothing in codomain")
            continue
        s, t = dom.mors[m]
        if cod.mors[fm] != (f.omap[s], f.omap[t]):
            rep.add("mmap-typing", f"image of {m} has wrong endpoints")
    if not rep.ok:
        return rep
    for x in dom.objects:
        if f.mmap[dom.id_of(x)] != cod.id_of(f.omap[x]):
            rep.add("functor-id", f"identity at {x} not preserved")
    for (g, m), h in dom.comp.items():
        if cod.compose(f.mmap[g], f.mmap[m]) != f.mmap[h]:
            rep.add("functor-comp", f"composition {g}o{m} not preserved")
    return rep


class NatIso:
    """A natural isomorphism between parallel functors, componentwise."""

    __slots__ = ("src", "tgt", "components", "_key")

    def __init__(self, src: GFunctor, tgt: GFunctor, components: dict[str, str]):
        self.src = src
        self.tgt = tgt
        self.components = components
        self._key = None

    def at(self, x: str) -> str:
        return self.components[x]

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(self.components[x] for x in self.src.dom.objects)
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, NatIso):
            return NotImplemented
        return self.src == other.src and self.tgt == other.tgt and self.key() == other.key()

    def __hash__(self) -> int:
        return hash((self.src.dom.serial, self.key()))

    def __repr__(self) -> str:
        return f"NatIso({len(self.components)} components)"


def is_nat_iso(n: NatIso) -> ValidationReport:
    rep = ValidationReport()
    F, G = n.src, n.tgt
    if F.dom.serial != G.dom.serial or F.cod.serial != G.cod.serial:
        rep.add("parallel", "source and target functors are not parallel")
        return rep
    cod = F.cod
    for x in F.dom.objects:
        c = n.components.get(x)
        if c is None or c not in cod.mors:
            rep.add("component", f"component at {x} dangles")
            continue
        if cod.mors[c] != (F.omap[x], G.omap[x]):
            rep.add("component-typing", f"component at {x} has wrong endpoints")
    if not rep.ok:
        return rep
    for m in F.dom.morphisms:
        s, t = F.dom.mors[m]
        if cod.compose(n.components[t], F.mmap[m]) != cod.compose(G.mmap[m], n.components[s]):
            rep.add("naturality", f"naturality square at {m} does not commute")
    return rep


def identity_nat_iso(f: GFunctor) -> NatIso:
    return NatIso(f, f, {x: f.cod.id_of(f.omap[x]) for x in f.dom.objects})


def vcompose_nat_isos(b: NatIso, a: NatIso) -> NatIso:
    """Vertical composite b after a (componentwise composition)."""
    cod = a.src.cod
    return NatIso(a.src, b.tgt,
                  {x: cod.compose(b.components[x], a.components[x])
                   for x in a.src.dom.objects})


def invert_nat_iso(n: NatIso) -> NatIso:
    cod = n.src.cod
    return NatIso(n.tgt, n.src, {x: cod.inv_of(n.components[x]) for x in n.src.dom.objects})


def whisker_left(g: GFunctor, n: NatIso) -> NatIso:
    """g * n for n between functors into dom(g)."""
    return NatIso(compose_functors(g, n.src), compose_functors(g, n.tgt),
                  {x: g.mmap[n.components[x]] for x in n.src.dom.objects})


def whisker_right(n: NatIso, f: GFunctor) -> NatIso:
    """n * f for f into the domain of n's boundary functors."""
    return NatIso(compose_functors(n.src, f), compose_functors(n.tgt, f),
                  {x: n.components[f.omap[x]] for x in f.dom.objects})


# -- enumeration -----------------------------------------------------------

def _generating_words(g: FinGroupoid, base: str) -> tuple[list[str], dict[str, list[str]]]:
    """Greedy generating set of the vertex group plus a word for each element."""
    elems = g.hom(base, base)
    words: dict[str, list[str]] = {g.id_of(base): []}
    gens: list[str] = []
    while len(words) < len(elems):
        fresh = min(e for e in elems if e not in words)
        gens.append(fresh)
        frontier = True
        while frontier:
            frontier = False
            for e in list(words):
                for s in gens:
                    n = g.compose(e, s)
                    if n not in words:
                        words[n] = words[e] + [s]
                        frontier = True
                    n2 = g.compose(s, e)
                    if n2 not in words:
                        words[n2] = [s] + words[e]
                        frontier = True
    return gens, words


def _group_homs(dom: FinGroupoid, base: str, cod: FinGroupoid, cobase: str) -> list[dict[str, str]]:
    """All group homomorphisms hom(base,base) -> hom(cobase,cobase)."""
    G = dom.hom(base, base)
    H = cod.hom(cobase, cobase)
    gens, words = _generating_words(dom, base)
    out: list[dict[str, str]] = []
    for images in itertools.product(H, repeat=len(gens)):
        table = dict(zip(gens, images))
        hom_map = {}
        ok = True
        for e in G:
            img = cod.id_of(cobase)
            for s in words[e]:
                img = cod.compose(img, table[s])
            hom_map[e] = img
        for a in G:
            for b in G:
                if cod.compose(hom_map[a], hom_map[b]) != hom_map[dom.compose(a, b)]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(hom_map)
    return out


def functors_between(dom: FinGroupoid, cod: FinGroupoid,
                     cap: Optional[int] = None) -> list[GFunctor]:
    """Every functor dom -> cod, enumerated deterministically.

    Per connected component: an image for the base object, a group
    homomorphism between vertex groups, and an image morphism for each
    spanning-tree edge; the rest of the table is forced.
    """
    comps = dom.components()
    per_comp: list[list[tuple]] = []
    for c in comps:
        choices: list[tuple] = []
        for yb in sorted(cod.objects):
            for rho in _group_homs(dom, c.base, cod, yb):
                tree_imgs: list[list[tuple[str, str]]] = []
                for x in c.objects:
                    if x == c.base:
                        continue
                    opts = [(x, m) for m in sorted(cod.morphisms) if cod.src(m) == yb]
                    tree_imgs.append(opts)
                for pick in itertools.product(*tree_imgs):
                    choices.append((yb, rho, dict(pick)))
        per_comp.append(choices)
    out: list[GFunctor] = []
    for combo in itertools.product(*per_comp):
        omap: dict[str, str] = {}
        tree_map: dict[str, str] = {}
        rho_of: dict[str, dict[str, str]] = {}
        base_of: dict[str, str] = {}
        for c, (yb, rho, picks) in zip(comps, combo):
            for x in c.objects:
                base_of[x] = c.base
                rho_of[x] = rho
                if x == c.base:
                    omap[x] = yb
                    tree_map[x] = cod.id_of(yb)
                else:
                    m = picks[x]
                    omap[x] = cod.tgt(m)
                    tree_map[x] = m
        mmap: dict[str, str] = {}
        for f in dom.morphisms:
            s, t = dom.mors[f]
            c = next(cc for cc in comps if s in cc.objects)
            g = dom.compose_path(dom.inv_of(c.tree[t]), f, c.tree[s])
            mmap[f] = cod.compose_path(tree_map[t], rho_of[s][g], cod.inv_of(tree_map[s]))
        out.append(GFunctor(dom, cod, omap, mmap))
        if cap is not None and len(out) > cap:
            raise SizeCapError("functor enumeration", len(out), cap)
    return out


def nat_isos_between(F: GFunctor, G: GFunctor) -> list[NatIso]:
    """Every natural isomorphism F => G (empty if none)."""
    if F.dom.serial != G.dom.serial or F.cod.serial != G.cod.serial:
        return []
    dom, cod = F.dom, F.cod
    comps = dom.components()
    per_comp: list[list[dict[str, str]]] = []
    for c in comps:
        options: list[dict[str, str]] = []
        for cb in cod.hom(F.omap[c.base], G.omap[c.base]):
            assign = {}
            for x in c.objects:
                t = c.tree[x]
                assign[x] = cod.compose_path(G.mmap[t], cb, cod.inv_of(F.mmap[t]))
            options.append(assign)
        per_comp.append(options)
    out: list[NatIso] = []
    for combo in itertools.product(*per_comp):
        components: dict[str, str] = {}
        for assign in combo:
            components.update(assign)
        cand = NatIso(F, G, components)
        good = True
        for m in dom.morphisms:
            s, t = dom.mors[m]
            if cod.compose(components[t], F.mmap[m]) != cod.compose(G.mmap[m], components[s]):
                good = False
                break
        if good:
            out.append(cand)
    return out


# -- products, pullbacks, exponentials -------------------------------------

def pair_id(a: str, b: str) -> str:
    return f"({a},{b})"


@dataclass
class ProductGpd:
    """A binary product with its projections and pairing data."""

    gpd: FinGroupoid
    p1: GFunctor
    p2: GFunctor
    opair: dict[tuple[str, str], str]
    mpair: dict[tuple[str, str], str]

    def pair(self, f: GFunctor, g: GFunctor) -> GFunctor:
        """Universal map <f,g> for a cone f: Z -> X, g: Z -> Y."""
        if f.dom.serial != g.dom.serial:
            raise StructuralError("pairing: cone legs have different domains")
        return GFunctor(
            f.dom, self.gpd,
            {z: self.opair[(f.omap[z], g.omap[z])] for z in f.dom.objects},
            {m: self.mpair[(f.mmap[m], g.mmap[m])] for m in f.dom.morphisms},
        )


def product(x: FinGroupoid, y: FinGroupoid, caps: SizeCaps = DEFAULT_CAPS) -> ProductGpd:
    n_obj = len(x.objects) * len(y.objects)
    n_mor = len(x.morphisms) * len(y.morphisms)
    if n_obj > caps.max_objects:
        raise SizeCapError("product objects", n_obj, caps.max_objects)
    if n_mor > caps.max_morphisms:
        raise SizeCapError("product morphisms", n_mor, caps.max_morphisms)
    opair = {(a, b): pair_id(a, b) for a in x.objects for b in y.objects}
    mpair = {(f, g): pair_id(f, g) for f in x.morphisms for g in y.morphisms}
    mors = {mpair[(f, g)]: (opair[(x.src(f), y.src(g))], opair[(x.tgt(f), y.tgt(g))])
            for f in x.morphisms for g in y.morphisms}
    comp = {}
    for (f2, g2) in mpair:
        for (f1, g1) in mpair:
            if x.src(f2) == x.tgt(f1) and y.src(g2) == y.tgt(g1):
                comp[(mpair[(f2, g2)], mpair[(f1, g1)])] = \
                    mpair[(x.compose(f2, f1), y.compose(g2, g1))]
    ident = {opair[(a, b)]: mpair[(x.id_of(a), y.id_of(b))] for a in x.objects for b in y.objects}
    inv = {mpair[(f, g)]: mpair[(x.inv_of(f), y.inv_of(g))] for f in x.morphisms for g in y.morphisms}
    gpd = FinGroupoid([opair[(a, b)] for a in x.objects for b in y.objects],
                      mors, comp, ident, inv)
    p1 = GFunctor(gpd, x,
                  {opair[(a, b)]: a for a in x.objects for b in y.objects},
                  {mpair[(f, g)]: f for f in x.morphisms for g in y.morphisms})
    p2 = GFunctor(gpd, y,
                  {opair[(a, b)]: b for a in x.objects for b in y.objects},
                  {mpair[(f, g)]: g for f in x.morphisms for g in y.morphisms})
    return ProductGpd(gpd, p1, p2, opair, mpair)


@dataclass
class PullbackGpd:
    gpd: FinGroupoid
    p1: GFunctor
    p2: GFunctor
    opair: dict[tuple[str, str], str]
    mpair: dict[tuple[str, str], str]

    def pair(self, f: GFunctor, g: GFunctor) -> GFunctor:
        return GFunctor(
            f.dom, self.gpd,
            {z: self.opair[(f.omap[z], g.omap[z])] for z in f.dom.objects},
            {m: self.mpair[(f.mmap[m], g.mmap[m])] for m in f.dom.morphisms},
        )


def pullback(f: GFunctor, g: GFunctor) -> PullbackGpd:
    """Strict pullback of the cospan f: X -> Z <- Y : g."""
    if f.cod.serial != g.cod.serial:
        raise StructuralError("pullback: codomain mismatch")
    x, y = f.dom, g.dom
    objs = [(a, b) for a in x.objects for b in y.objects if f.omap[a] == g.omap[b]]
    ms = [(m, n) for m in x.morphisms for n in y.morphisms if f.mmap[m] == g.mmap[n]]
    opair = {ab: pair_id(*ab) for ab in objs}
    mpair = {mn: pair_id(*mn) for mn in ms}
    mors = {mpair[(m, n)]: (opair[(x.src(m), y.src(n))], opair[(x.tgt(m), y.tgt(n))])
            for (m, n) in ms}
    comp = {}
    for (m2, n2) in ms:
        for (m1, n1) in ms:
            if x.src(m2) == x.tgt(m1) and y.src(n2) == y.tgt(n1):
                comp[(mpair[(m2, n2)], mpair[(m1, n1)])] = \
                    mpair[(x.compose(m2, m1), y.compose(n2, n1))]
    ident = {opair[(a, b)]: mpair[(x.id_of(a), y.id_of(b))] for (a, b) in objs}
    inv = {mpair[(m, n)]: mpair[(x.inv_of(m), y.inv_of(n))] for (m, n) in ms}
    gpd = FinGroupoid([opair[ab] for ab in objs], mors, comp, ident, inv)
    p1 = GFunctor(gpd, x, {opair[ab]: ab[0] for ab in objs}, {mpair[mn]: mn[0] for mn in ms})
    p2 = GFunctor(gpd, y, {opair[ab]: ab[1] for ab in objs}, {mpair[mn]: mn[1] for mn in ms})
    return PullbackGpd(gpd, p1, p2, opair, mpair)


def triple_id(a: str, b: str, r: str) -> str:
    return f"({a},{b};{r})"


@dataclass
class IsoCommaGpd:
    """Pseudopullback: objects carry a connecting isomorphism."""

    gpd: FinGroupoid
    p1: GFunctor
    p2: GFunctor
    generic: NatIso
    otriple: dict[tuple[str, str, str], str]
    mpair: dict[tuple[str, str, str], str]  # (p, q, source triple id) -> id

    def pair(self, s: GFunctor, t: GFunctor, phi: NatIso) -> GFunctor:
        """Universal map [s,t,phi] for a cone with connecting 2-cell."""
        omap = {w: self.otriple[(s.omap[w], t.omap[w], phi.components[w])]
                for w in s.dom.objects}
        mmap = {}
        for m in s.dom.morphisms:
            src = omap[s.dom.src(m)]
            mmap[m] = self.mpair[(s.mmap[m], t.mmap[m], src)]
        return GFunctor(s.dom, self.gpd, omap, mmap)


def iso_comma(f: GFunctor, g: GFunctor) -> IsoCommaGpd:
    """Objects (a, b, r: f a -> g b); morphisms (p, q) with g q . r = r' . f p."""
    if f.cod.serial != g.cod.serial:
        raise StructuralError("iso-comma: codomain mismatch")
    x, y, z = f.dom, g.dom, f.cod
    triples = [(a, b, r) for a in x.objects for b in y.objects
               for r in z.hom(f.omap[a], g.omap[b])]
    otriple = {t: triple_id(*t) for t in triples}
    conn = {otriple[t]: t[2] for t in triples}
    objs = [otriple[t] for t in triples]
    mors: dict[str, tuple[str, str]] = {}
    minfo: dict[str, tuple[str, str, str, str]] = {}  # id -> (p, q, src, tgt)
    mpair: dict[tuple[str, str, str], str] = {}
    for (a, b, r) in triples:
        src = otriple[(a, b, r)]
        for p in x.morphisms:
            if x.src(p) != a:
                continue
            for q in y.morphisms:
                if y.src(q) != b:
                    continue
                r2 = z.compose_path(g.mmap[q], r, z.inv_of(f.mmap[p]))
                tgt = otriple[(x.tgt(p), y.tgt(q), r2)]
                mid = f"({p},{q})@{src}"
                mors[mid] = (src, tgt)
                minfo[mid] = (p, q, src, tgt)
                mpair[(p, q, src)] = mid
    comp = {}
    for m2, (p2, q2, s2, t2) in minfo.items():
        for m1, (p1, q1, s1, t1) in minfo.items():
            if t1 == s2:
                comp[(m2, m1)] = mpair[(x.compose(p2, p1), y.compose(q2, q1), s1)]
    ident = {otriple[(a, b, r)]: mpair[(x.id_of(a), y.id_of(b), otriple[(a, b, r)])]
             for (a, b, r) in triples}
    inv = {}
    for m, (p, q, s, t) in minfo.items():
        inv[m] = mpair[(x.inv_of(p), y.inv_of(q), t)]
    gpd = FinGroupoid(objs, mors, comp, ident, inv)
    p1f = GFunctor(gpd, x, {otriple[t]: t[0] for t in triples},
                   {m: minfo[m][0] for m in mors})
    p2f = GFunctor(gpd, y, {otriple[t]: t[1] for t in triples},
                   {m: minfo[m][1] for m in mors})
    generic = NatIso(compose_functors(f, p1f), compose_functors(g, p2f), dict(conn))
    return IsoCommaGpd(gpd, p1f, p2f, generic, otriple, mpair)


@dataclass
class ExpGpd:
    """Exponential y^x: objects are functors, morphisms natural isomorphisms."""

    gpd: FinGroupoid
    obj_to_functor: dict[str, GFunctor]
    mor_to_natiso: dict[str, NatIso]
    functor_to_obj: dict[tuple, str]
    natiso_to_mor: dict[tuple, str]

    def obj_of(self, f: GFunctor) -> str:
        return self.functor_to_obj[f.key()]

    def mor_of(self, n: NatIso) -> str:
        return self.natiso_to_mor[(n.src.key(), n.key())]


def exponential(x: FinGroupoid, y: FinGroupoid, caps: SizeCaps = DEFAULT_CAPS) -> ExpGpd:
    fs = functors_between(x, y)
    if len(fs) > caps.max_objects:
        raise SizeCapError("exponential objects", len(fs), caps.max_objects)
    obj_to_functor = {f"f{i}": F for i, F in enumerate(fs)}
    functor_to_obj = {F.key(): o for o, F in obj_to_functor.items()}
    mors: dict[str, tuple[str, str]] = {}
    mor_to_natiso: dict[str, NatIso] = {}
    natiso_to_mor: dict[tuple, str] = {}
    count = 0
    for oa, F in obj_to_functor.items():
        for ob, G in obj_to_functor.items():
            for n in nat_isos_between(F, G):
                mid = f"t{count}"
                count += 1
                if count > caps.max_morphisms:
                    raise SizeCapError("exponential morphisms", count, caps.max_morphisms)
                mors[mid] = (oa, ob)
                mor_to_natiso[mid] = n
                natiso_to_mor[(F.key(), n.key())] = mid
    comp = {}
    for m2, n2 in mor_to_natiso.items():
        for m1, n1 in mor_to_natiso.items():
            if mors[m1][1] == mors[m2][0]:
                cmp_iso = vcompose_nat_isos(n2, n1)
                comp[(m2, m1)] = natiso_to_mor[(n1.src.key(), cmp_iso.key())]
    ident = {}
    for o, F in obj_to_functor.items():
        ident[o] = natiso_to_mor[(F.key(), identity_nat_iso(F).key())]
    inv = {}
    for m, n in mor_to_natiso.items():
        ninv = invert_nat_iso(n)
        inv[m] = natiso_to_mor[(ninv.src.key(), ninv.key())]
    gpd = FinGroupoid(list(obj_to_functor), mors, comp, ident, inv)
    return ExpGpd(gpd, obj_to_functor, mor_to_natiso, functor_to_obj, natiso_to_mor)


# -- isofibrations and equivalences ----------------------------------------

@dataclass
class Cleavage:
    """Deterministic lifts: for (y, q: F y -> z') a morphism from y over q.

    Lifts of identities are normalized to identities.
    """

    functor: GFunctor
    lifts: dict[tuple[str, str], str]

    def lift(self, y: str, q: str) -> str:
        return self.lifts[(y, q)]


@dataclass
class LiftFailure:
    obj: str
    arrow: str


def isofibration_cleavage(f: GFunctor):
    """Cleavage if f is an isofibration, else the witnessing failure.

    The chosen lift is the lexicographically least candidate, except that
    identities lift to identities.
    """
    dom, cod = f.dom, f.cod
    lifts: dict[tuple[str, str], str] = {}
    for y in dom.objects:
        fy = f.omap[y]
        for q in cod.morphisms:
            if cod.src(q) != fy:
                continue
            if cod.is_identity(q):
                lifts[(y, q)] = dom.id_of(y)
                continue
            cands = sorted(m for m in dom.morphisms
                           if dom.src(m) == y and f.mmap[m] == q)
            if not cands:
                return LiftFailure(y, q)
            lifts[(y, q)] = cands[0]
    return Cleavage(f, lifts)


@dataclass
class EquivalenceData:
    """An adjoint-free equivalence: both functors plus unit/counit isos.

    unit: identity => bwd . fwd, counit: identity => fwd . bwd.
    """

    fwd: GFunctor
    bwd: GFunctor
    unit: NatIso
    counit: NatIso


@dataclass
class EquivalenceFailure:
    reason: str
    detail: str


def validate_equivalence(e: EquivalenceData) -> ValidationReport:
    rep = ValidationReport()
    for n, name in ((e.unit, "unit"), (e.counit, "counit")):
        sub = is_nat_iso(n)
        for kind, detail in sub.failures:
            rep.add(f"{name}-{kind}", detail)
    if e.unit.src != identity_functor(e.fwd.dom):
        rep.add("unit-src", "unit does not start at the identity functor")
    if e.unit.tgt != compose_functors(e.bwd, e.fwd):
        rep.add("unit-tgt", "unit does not end at bwd o fwd")
    if e.counit.src != identity_functor(e.bwd.dom):
        rep.add("counit-src", "counit does not start at the identity functor")
    if e.counit.tgt != compose_functors(e.fwd, e.bwd):
        rep.add("counit-tgt", "counit does not end at fwd o bwd")
    return rep


def equivalence_inverse(f: GFunctor):
    """Pseudoinverse data if f is an equivalence, else the failing condition.

    Representatives are chosen lexicographically.
    """
    dom, cod = f.dom, f.cod
    for a in dom.objects:
        for b in dom.objects:
            seen: dict[str, str] = {}
            for m in dom.hom(a, b):
                fm = f.mmap[m]
                if fm in seen:
                    return EquivalenceFailure("faithful", f"{seen[fm]} and {m} collapse")
                seen[fm] = m
            for v in cod.hom(f.omap[a], f.omap[b]):
                if v not in seen:
                    return EquivalenceFailure("full", f"{v} has no preimage in hom({a},{b})")
    theta: dict[str, str] = {}   # y -> iso y -> f(bwd y)
    bwd_o: dict[str, str] = {}
    for y in sorted(cod.objects):
        found = False
        # prefer a strict preimage (so the inverse of an identity-like
        # functor is identity-like), then lexicographic order
        for a in sorted(dom.objects, key=lambda a: (f.omap[a] != y, a)):
            isos = sorted(cod.hom(y, f.omap[a]),
                          key=lambda m: (not cod.is_identity(m), m))
            if isos:
                bwd_o[y] = a
                theta[y] = isos[0]
                found = True
                break
        if not found:
            return EquivalenceFailure("essentially-surjective", f"{y} not isomorphic to any image")
    # preimage lookup for full+faithful f
    def preimage(a: str, b: str, v: str) -> str:
        for m in dom.hom(a, b):
            if f.mmap[m] == v:
                return m
        raise StructuralError("fullness lookup failed")  # unreachable after checks
    bwd_m: dict[str, str] = {}
    for q in cod.morphisms:
        y, y2 = cod.mors[q]
        v = cod.compose_path(theta[y2], q, cod.inv_of(theta[y]))
        bwd_m[q] = preimage(bwd_o[y], bwd_o[y2], v)
    bwd = GFunctor(cod, dom, bwd_o, bwd_m)
    unit_c = {a: preimage(a, bwd_o[f.omap[a]], theta[f.omap[a]]) for a in dom.objects}
    unit = NatIso(identity_functor(dom), compose_functors(bwd, f), unit_c)
    counit = NatIso(identity_functor(cod), compose_functors(f, bwd), dict(theta))
    return EquivalenceData(f, bwd, unit, counit)


def is_isofibration(f: GFunctor) -> bool:
    return isinstance(isofibration_cleavage(f), Cleavage)


def is_equivalence(f: GFunctor) -> bool:
    return isinstance(equivalence_inverse(f), EquivalenceData)
