"""Weak dependent products and modest fibrations.

Objects of the dependent product carry an explicit section of the homotopy
fibre together with a chosen realizer point and filler; the product is
weak precisely because those choices are data.  Everything is enumerated
per fibre under the ambient size caps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from .errors import BoundaryError, SizeCapError, StructuralError
from .groupoids import (
    Cleavage, DEFAULT_CAPS, FinGroupoid, GFunctor, NatIso, ValidationReport,
    compose_functors, functors_between, nat_isos_between,
)
from .assemblies import (
    Assembly, RealizedMorphism, _identity_eps, compose_morphisms, is_modest,
)
from .interval import Homotopy, RealizerCategory, homotopy_cod, homotopy_dom
from .pathcat import (
    FibrationData, PullbackAssembly, _path_point, _square_path, is_fibration,
    pullback_assembly,
)


def _fibre_obj_id(y: str, u: str) -> str:
    return f"({y}|{u})"


def _fibre_mor_id(q: str, u: str) -> str:
    return f"({q}|{u})"


@dataclass
class HomotopyFibre:
    """The homotopy fibre of f over a point, as a pseudopullback.

    Objects are pairs (y, u: F y -> z); the realizer type is the product of
    the domain realizer type with the path object of the codomain type.
    """

    asm: Assembly
    proj: RealizedMorphism          # to the domain of f
    z: str
    f: RealizedMorphism
    obj_of: dict[tuple[str, str], str]
    mor_of: dict[tuple[str, str], str]
    data_of: dict[str, tuple[str, str]]


def homotopy_fibre(f: RealizedMorphism, z: str) -> HomotopyFibre:
    r = f.src.r
    iv = r.interval
    y_asm, z_asm = f.src, f.tgt
    if z not in z_asm.base.objects:
        raise StructuralError(f"{z!r} is not an object of the codomain")
    zb = z_asm.base
    cexp = r.exponential(iv.I1, z_asm.rtype)
    rprod = r.product(y_asm.rtype, cexp.obj)
    piy, piz = y_asm.pi, z_asm.pi

    objs: dict[tuple[str, str], str] = {}
    for y in y_asm.base.objects:
        for u in zb.hom(f.fun.omap[y], z):
            objs[(y, u)] = _fibre_obj_id(y, u)
    mors: dict[str, tuple[str, str]] = {}
    mor_of: dict[tuple[str, str], str] = {}
    minfo: dict[str, tuple[str, str, str]] = {}     # mid -> (q, u_src, u_tgt)
    for (y, u), oid in objs.items():
        for q in y_asm.base.morphisms:
            if y_asm.base.src(q) != y:
                continue
            u2 = zb.compose(u, zb.inv_of(f.fun.mmap[q]))
            mid = _fibre_mor_id(q, u)
            mors[mid] = (oid, objs[(y_asm.base.tgt(q), u2)])
            mor_of[(q, u)] = mid
            minfo[mid] = (q, u, u2)
    comp = {}
    for m2, (q2, us2, ut2) in minfo.items():
        for m1, (q1, us1, ut1) in minfo.items():
            if mors[m1][1] == mors[m2][0]:
                comp[(m2, m1)] = mor_of[(y_asm.base.compose(q2, q1), us1)]
    ident = {objs[(y, u)]: mor_of[(y_asm.base.id_of(y), u)] for (y, u) in objs}
    inv = {m: mor_of[(y_asm.base.inv_of(q), ut)] for m, (q, us, ut) in minfo.items()}
    base = FinGroupoid(list(objs.values()), mors, comp, ident, inv)

    omap = {}
    for (y, u), oid in objs.items():
        omap[oid] = r.pi_obj_id(rprod.pair(
            piy.point_of[y_asm.rfun.omap[y]],
            _path_point(r, piz.path_of[z_asm.rfun.mmap[u]])))
    mmap = {}
    for mid, (q, u, u2) in minfo.items():
        lam = _square_path(
            r,
            piz.path_of[z_asm.rfun.mmap[f.fun.mmap[q]]],
            piz.path_of[piz.gpd.id_of(z_asm.rfun.omap[z])],
            piz.path_of[z_asm.rfun.mmap[u]],
            piz.path_of[z_asm.rfun.mmap[u2]],
            z_asm.rtype)
        mmap[mid] = r.pi_mor_id(rprod.pair(
            piy.path_of[y_asm.rfun.mmap[q]], lam))
    pi_t = r.pi(rprod.obj)
    rfun = GFunctor(base, pi_t.gpd, omap, mmap)
    asm = Assembly(r, base, rprod.obj, rfun)
    proj_fun = GFunctor(base, y_asm.base,
                        {oid: y for (y, u), oid in objs.items()},
                        {mid: q for mid, (q, _u, _u2) in minfo.items()})
    proj = RealizedMorphism(asm, y_asm, proj_fun, rprod.p1,
                            _identity_eps(asm, y_asm, proj_fun, rprod.p1))
    return HomotopyFibre(asm, proj, z, f, objs, mor_of,
                         {oid: yu for yu, oid in objs.items()})


def fibre_map(hf_src: HomotopyFibre, hf_tgt: HomotopyFibre,
              rmor: str) -> RealizedMorphism:
    """F|r : F|z -> F|z', post-composing the connecting path with r."""
    f = hf_src.f
    r = f.src.r
    zb = f.tgt.base
    if zb.mors[rmor] != (hf_src.z, hf_tgt.z):
        raise BoundaryError("the connecting morphism does not match the fibres")
    omap = {}
    mmap = {}
    for oid, (y, u) in hf_src.data_of.items():
        omap[oid] = hf_tgt.obj_of[(y, zb.compose(rmor, u))]
    for (q, u), mid in hf_src.mor_of.items():
        mmap[mid] = hf_tgt.mor_of[(q, zb.compose(rmor, u))]
    fun = GFunctor(hf_src.asm.base, hf_tgt.asm.base, omap, mmap)
    e = r.identity(hf_src.asm.rtype)
    piz = f.tgt.pi
    rprod = r.product(f.src.rtype, r.exponential(r.interval.I1, f.tgt.rtype).obj)
    piy = f.src.pi
    comps = {}
    for oid, (y, u) in hf_src.data_of.items():
        ru = zb.compose(rmor, u)
        lam = _square_path(
            r,
            piz.path_of[piz.gpd.id_of(f.tgt.rfun.omap[zb.src(u)])],
            piz.path_of[f.tgt.rfun.mmap[rmor]],
            piz.path_of[f.tgt.rfun.mmap[u]],
            piz.path_of[f.tgt.rfun.mmap[ru]],
            f.tgt.rtype)
        comps[oid] = r.pi_mor_id(rprod.pair(
            piy.path_of[piy.gpd.id_of(f.src.rfun.omap[y])], lam))
    left = compose_functors(r.pi_map(e), hf_src.asm.rfun)
    right = compose_functors(hf_tgt.asm.rfun, fun)
    return RealizedMorphism(hf_src.asm, hf_tgt.asm, fun, e,
                            NatIso(left, right, comps))


@dataclass
class DepProd:
    """The dependent product of g: X -> Y along f: Y -> Z, with evaluation."""

    g: FibrationData
    f: FibrationData
    asm: Assembly                               # Pi_F X
    fib: FibrationData                          # Pi_F(G): Pi_F X -> Z
    fibres: dict[str, HomotopyFibre]
    obj_data: dict[str, tuple[str, GFunctor, str, NatIso]]   # (z, H, point, eps)
    mor_data: dict[str, tuple[str, NatIso, str]]             # (r, psi, f-path)
    obj_index: dict[tuple, str]
    mor_index: dict[tuple, str]
    rt_prod: Any                                 # C x A^(B x C^I1)
    exp: Any                                     # the realizer exponential
    fstar: PullbackAssembly                      # F* Pi_F X
    ev: RealizedMorphism                         # F* Pi_F X -> X, over Y

    def obj_id(self, z: str, H: GFunctor, point: str, eps: NatIso) -> str:
        return self.obj_index[(z, H.key(), point, eps.key())]

    def mor_id(self, src: str, rmor: str, psi: NatIso, fpath: str) -> str:
        return self.mor_index[(src, rmor, psi.key(), fpath)]


def _eval_exp_path(r, path_f, pt, base, target):
    iv = r.interval
    mu = r.uncurry(path_f, base, target)
    p = r.product(iv.I1, base)
    return r.compose(mu, p.pair(r.identity(iv.I1),
                                r.compose(pt, r.terminal_map(iv.I1))))


def dependent_product(g: FibrationData, f: FibrationData,
                      max_objects: Optional[int] = None) -> DepProd:
    """Enumerate Pi_F X with its fibration, chosen lifts, and evaluation.

    g: X -> Y and f: Y -> Z are fibrations.  Objects over z are tuples of a
    strictly-over-Y section H of the homotopy fibre, a realizer point e and
    a filler eps with (mu(e), eps) realizing H.
    """
    if g.tgt != f.src:
        raise BoundaryError("the fibrations are not composable")
    r = g.src.r
    cap = max_objects if max_objects is not None \
        else getattr(r, "caps", DEFAULT_CAPS).max_objects
    x_asm, y_asm, z_asm = g.src, g.tgt, f.tgt
    fibres = {z: homotopy_fibre(f.morphism, z) for z in z_asm.base.objects}
    bc = next(iter(fibres.values())).asm.rtype
    exp = r.exponential(bc, x_asm.rtype)
    pie = r.pi(exp.obj)
    pix = x_asm.pi

    obj_data: dict[str, tuple[str, GFunctor, str, NatIso]] = {}
    obj_index: dict[tuple, str] = {}
    count = 0
    point_left: dict[tuple[str, str], GFunctor] = {}
    for z, hf in fibres.items():
        sections = [H for H in functors_between(hf.asm.base, x_asm.base)
                    if compose_functors(g.morphism.fun, H) == hf.proj.fun]
        for po in pie.gpd.objects:
            key = (z, po)
            point_left[key] = compose_functors(
                r.pi_map(r.point_as_map(pie.point_of[po], bc, x_asm.rtype)),
                hf.asm.rfun)
        for H in sections:
            right = compose_functors(x_asm.rfun, H)
            for po in pie.gpd.objects:
                for eps in nat_isos_between(point_left[(z, po)], right):
                    oid = f"d{count}"
                    count += 1
                    if count > cap:
                        raise SizeCapError("dependent product objects", count, cap)
                    obj_data[oid] = (z, H, po, eps)
                    obj_index[(z, H.key(), po, eps.key())] = oid

    # evaluate exponential paths at the realizer points of fibre objects
    path_eval: dict[tuple[str, str], str] = {}
    for mo, pf in pie.path_of.items():
        for z, hf in fibres.items():
            for oid2, (y, u) in hf.data_of.items():
                pt = r.pi(bc).point_of[hf.asm.rfun.omap[oid2]]
                path_eval[(mo, hf.asm.rfun.omap[oid2])] = r.pi_mor_id(
                    _eval_exp_path(r, pf, pt, bc, x_asm.rtype))

    fmaps: dict[tuple[str, str], RealizedMorphism] = {}

    def fmap(rmor: str) -> RealizedMorphism:
        zs, zt = z_asm.base.mors[rmor]
        if (rmor, zs) not in fmaps:
            fmaps[(rmor, zs)] = fibre_map(fibres[zs], fibres[zt], rmor)
        return fmaps[(rmor, zs)]

    mors: dict[str, tuple[str, str]] = {}
    mor_data: dict[str, tuple[str, NatIso, str]] = {}
    mor_index: dict[tuple, str] = {}
    mcount = 0
    pxg = pix.gpd
    for oa, (z, H, po, eps) in obj_data.items():
        hf = fibres[z]
        for ob, (z2, H2, po2, eps2) in obj_data.items():
            for rmor in z_asm.base.hom(z, z2):
                fr = fmap(rmor)
                target_fun = compose_functors(H2, fr.fun)
                pe2 = r.pi_map(r.point_as_map(pie.point_of[po2], bc, x_asm.rtype))
                # zeta boundary at level 1
                zeta1 = {}
                for oid2 in hf.asm.base.objects:
                    zeta1[oid2] = pxg.compose(
                        eps2.components[fr.fun.omap[oid2]],
                        pe2.mmap[fr.eps.components[oid2]])
                for psi in nat_isos_between(H, target_fun):
                    vertical = all(
                        g.morphism.fun.mmap[psi.components[oid2]]
                        == y_asm.base.id_of(hf.proj.fun.omap[oid2])
                        for oid2 in hf.asm.base.objects)
                    if not vertical:
                        continue
                    for fpath in pie.gpd.hom(po, po2):
                        ok = all(
                            pxg.compose(zeta1[oid2],
                                        path_eval[(fpath, hf.asm.rfun.omap[oid2])])
                            == pxg.compose(x_asm.rfun.mmap[psi.components[oid2]],
                                           eps.components[oid2])
                            for oid2 in hf.asm.base.objects)
                        if not ok:
                            continue
                        mid = f"e{mcount}"
                        mcount += 1
                        mors[mid] = (oa, ob)
                        mor_data[mid] = (rmor, psi, fpath)
                        mor_index[(oa, rmor, psi.key(), fpath)] = mid

    comp = {}
    for m2, (r2, psi2, f2) in mor_data.items():
        for m1, (r1, psi1, f1) in mor_data.items():
            if mors[m1][1] != mors[m2][0]:
                continue
            src = mors[m1][0]
            z1 = obj_data[src][0]
            fr1 = fmap(r1)
            comps = {oid2: g.src.base.compose(
                psi2.components[fr1.fun.omap[oid2]], psi1.components[oid2])
                for oid2 in fibres[z1].asm.base.objects}
            psi = NatIso(psi1.src,
                         compose_functors(obj_data[mors[m2][1]][1],
                                          fmap(z_asm.base.compose(r2, r1)).fun),
                         comps)
            comp[(m2, m1)] = mor_index[(src, z_asm.base.compose(r2, r1),
                                        psi.key(), pie.gpd.compose(f2, f1))]
    ident = {}
    for oid, (z, H, po, eps) in obj_data.items():
        ident[oid] = mor_index[(oid, z_asm.base.id_of(z),
                                NatIso(H, H, {o: x_asm.base.id_of(H.omap[o])
                                              for o in fibres[z].asm.base.objects}).key(),
                                pie.gpd.id_of(po))]
    inv = {}
    for mid, (rm, psi, fp) in mor_data.items():
        src, tgt = mors[mid]
        z2 = obj_data[tgt][0]
        frinv = fmap(z_asm.base.inv_of(rm))
        comps = {oid2: x_asm.base.inv_of(psi.components[
            frinv.fun.omap[oid2]]) for oid2 in fibres[z2].asm.base.objects}
        psi_inv = NatIso(obj_data[tgt][1],
                         compose_functors(obj_data[src][1], frinv.fun), comps)
        inv[mid] = mor_index[(tgt, z_asm.base.inv_of(rm), psi_inv.key(),
                              pie.gpd.inv_of(fp))]
    base = FinGroupoid(list(obj_data), mors, comp, ident, inv)

    rt_prod = r.product(z_asm.rtype, exp.obj)
    piz = z_asm.pi
    omap = {oid: r.pi_obj_id(rt_prod.pair(piz.point_of[z_asm.rfun.omap[z]],
                                          pie.point_of[po]))
            for oid, (z, H, po, eps) in obj_data.items()}
    mmap = {mid: r.pi_mor_id(rt_prod.pair(piz.path_of[z_asm.rfun.mmap[rm]],
                                          pie.path_of[fp]))
            for mid, (rm, psi, fp) in mor_data.items()}
    pi_t = r.pi(rt_prod.obj)
    rfun = GFunctor(base, pi_t.gpd, omap, mmap)
    asm = Assembly(r, base, rt_prod.obj, rfun)

    proj_fun = GFunctor(base, z_asm.base,
                        {oid: obj_data[oid][0] for oid in obj_data},
                        {mid: mor_data[mid][0] for mid in mor_data})
    proj = RealizedMorphism(asm, z_asm, proj_fun, rt_prod.p1,
                            _identity_eps(asm, z_asm, proj_fun, rt_prod.p1))

    # chosen lifts: reindex the section backwards, keep the realizer point
    lifts: dict[tuple[str, str], str] = {}
    pe_cache: dict[str, Any] = {}
    for oid, (z, H, po, eps) in obj_data.items():
        if po not in pe_cache:
            pe_cache[po] = r.pi_map(r.point_as_map(pie.point_of[po], bc,
                                                   x_asm.rtype))
        for rmor in z_asm.base.morphisms:
            if z_asm.base.src(rmor) != z:
                continue
            if z_asm.base.is_identity(rmor):
                lifts[(oid, rmor)] = base.id_of(oid)
                continue
            z2 = z_asm.base.tgt(rmor)
            rinv = z_asm.base.inv_of(rmor)
            frinv = fmap(rinv)
            h2 = compose_functors(H, frinv.fun)
            pe = pe_cache[po]
            eps2 = {oid2: pxg.compose(eps.components[frinv.fun.omap[oid2]],
                                      pe.mmap[frinv.eps.components[oid2]])
                    for oid2 in fibres[z2].asm.base.objects}
            left2 = point_left[(z2, po)]
            eps2_iso = NatIso(left2, compose_functors(x_asm.rfun, h2), eps2)
            tgt_oid = obj_index[(z2, h2.key(), po, eps2_iso.key())]
            psi = NatIso(H, compose_functors(h2, fmap(rmor).fun),
                         {o: x_asm.base.id_of(H.omap[o])
                          for o in fibres[z].asm.base.objects})
            mid = mor_index[(oid, rmor, psi.key(), pie.gpd.id_of(po))]
            if mors[mid][1] != tgt_oid:
                raise StructuralError("chosen lift misses the forced target")
            lifts[(oid, rmor)] = mid
    fib = FibrationData(proj, Cleavage(proj_fun, lifts))

    fstar = pullback_assembly(f.morphism, proj)
    ev = _build_ev(r, g, f, fibres, obj_data, mor_data, fstar, exp, bc, rt_prod)
    return DepProd(g, f, asm, fib, fibres, obj_data, mor_data, obj_index,
                   mor_index, rt_prod, exp, fstar, ev)


def _build_ev(r, g, f, fibres, obj_data, mor_data, fstar, exp, bc, rt_prod):
    x_asm, y_asm, z_asm = g.src, g.tgt, f.tgt
    raw = fstar.raw
    omap = {}
    for (y, doid), oid in raw.opair.items():
        z, H, po, eps = obj_data[doid]
        omap[oid] = H.omap[fibres[z].obj_of[(y, z_asm.base.id_of(z))]]
    mmap = {}
    for (q, dmid), mid in raw.mpair.items():
        src_pb, tgt_pb = raw.gpd.mors[mid]
        y = fstar.p1.fun.omap[src_pb]
        z, H, po, eps = obj_data[fstar.p2.fun.omap[src_pb]]
        H2 = obj_data[fstar.p2.fun.omap[tgt_pb]][1]
        rm, psi, fp = mor_data[dmid]
        qhat = fibres[z_asm.base.tgt(rm)].mor_of[(q, rm)]
        mmap[mid] = x_asm.base.compose(
            H2.mmap[qhat],
            psi.components[fibres[z].obj_of[(y, z_asm.base.id_of(z))]])
    ev_fun = GFunctor(raw.gpd, x_asm.base, omap, mmap)

    iv = r.interval
    rtriple = fstar.rprod                    # B x (C x E)
    cpath = r.const_path_map(z_asm.rtype)
    pi_b = rtriple.p1
    pi_ce = rtriple.p2
    pi_c = r.compose(rt_prod.p1, pi_ce)
    pi_e = r.compose(rt_prod.p2, pi_ce)
    bc_prod = r.product(y_asm.rtype, r.exponential(iv.I1, z_asm.rtype).obj)
    leg_bc = bc_prod.pair(pi_b, r.compose(cpath, pi_c))
    epair = r.product(exp.obj, bc)
    e_ev = r.compose(exp.ev, epair.pair(pi_e, leg_bc))
    comps = {}
    for (y, doid), oid in raw.opair.items():
        z, H, po, eps = obj_data[doid]
        comps[oid] = eps.components[fibres[z].obj_of[(y, z_asm.base.id_of(z))]]
    left = compose_functors(r.pi_map(e_ev), fstar.asm.rfun)
    right = compose_functors(x_asm.rfun, ev_fun)
    return RealizedMorphism(fstar.asm, x_asm, ev_fun, e_ev,
                            NatIso(left, right, comps))


def dp_transpose(dp: DepProd, r_mor: RealizedMorphism, s: RealizedMorphism,
                 fw: PullbackAssembly) -> RealizedMorphism:
    """The universal map T: W -> Pi_F X for s: F*W -> X over Y.

    The section carried by T w straightens s along the cleavages of f and
    g, so that it lies strictly over Y and evaluation recovers s exactly.
    """
    r = dp.asm.r
    iv = r.interval
    g, f = dp.g, dp.f
    x_asm, y_asm, z_asm = g.src, g.tgt, f.tgt
    w_asm = r_mor.src
    if compose_functors(f.morphism.fun, fw.p1.fun) \
            != compose_functors(r_mor.fun, fw.p2.fun):
        raise BoundaryError("the pullback does not match the cospan")
    if compose_functors(g.morphism.fun, s.fun) != fw.p1.fun:
        raise BoundaryError("s must lie over Y")
    bc = dp.fibres[next(iter(dp.fibres))].asm.rtype
    pie = r.pi(dp.exp.obj)
    pix, piy, piw = x_asm.pi, y_asm.pi, w_asm.pi
    pxg = pix.gpd
    raw = fw.raw
    rprod_bd = fw.rprod                      # B x D

    def ell(y: str, u: str) -> str:
        return f.lift(y, u)

    def eta(xo: str, back: str) -> str:
        return g.lift(xo, back)

    def slice_point(zr, dom_obj):
        pd = r.product(dom_obj, bc)
        bcp = r.product(y_asm.rtype, r.exponential(iv.I1, z_asm.rtype).obj)
        lifted = r.compose(s.e, rprod_bd.pair(
            r.compose(bcp.p1, pd.p2), r.compose(zr, pd.p1)))
        return r.transpose(lifted, pd, bc, x_asm.rtype)

    omap: dict[str, str] = {}
    h_of: dict[str, GFunctor] = {}
    eta_of: dict[str, dict[str, str]] = {}
    for w in w_asm.base.objects:
        z = r_mor.fun.omap[w]
        hf = dp.fibres[z]
        lifts = {}
        etas = {}
        h_omap = {}
        for oid, (y, u) in hf.data_of.items():
            l = ell(y, u)
            uy = y_asm.base.tgt(l)
            s_obj = s.fun.omap[raw.opair[(uy, w)]]
            et = eta(s_obj, y_asm.base.inv_of(l))
            lifts[oid] = l
            etas[oid] = et
            h_omap[oid] = x_asm.base.tgt(et)
        h_mmap = {}
        for (q, u), mid in hf.mor_of.items():
            src_oid, tgt_oid = hf.asm.base.mors[mid]
            l1, l2 = lifts[src_oid], lifts[tgt_oid]
            sigma1 = y_asm.base.compose_path(l2, q, y_asm.base.inv_of(l1))
            smor = s.fun.mmap[raw.mpair[(sigma1, w_asm.base.id_of(w))]]
            h_mmap[mid] = x_asm.base.compose_path(
                etas[tgt_oid], smor, x_asm.base.inv_of(etas[src_oid]))
        H = GFunctor(hf.asm.base, x_asm.base, h_omap, h_mmap)
        h_of[w] = H
        eta_of[w] = etas
        e_w = slice_point(piw.point_of[w_asm.rfun.omap[w]], iv.I0)
        po = r.pi_obj_id(e_w)
        pe = r.pi_map(r.point_as_map(pie.point_of[po], bc, x_asm.rtype))
        comps = {}
        for oid, (y, u) in hf.data_of.items():
            pair_path = rprod_bd.pair(
                piy.path_of[y_asm.rfun.mmap[lifts[oid]]],
                piw.path_of[piw.gpd.id_of(w_asm.rfun.omap[w])])
            t1 = r.pi_map(s.e).mmap[r.pi_mor_id(pair_path)]
            t2 = s.eps.components[raw.opair[(y_asm.base.tgt(lifts[oid]), w)]]
            t3 = x_asm.rfun.mmap[etas[oid]]
            comps[oid] = pxg.compose(t3, pxg.compose(t2, t1))
        left = compose_functors(pe, hf.asm.rfun)
        right = compose_functors(x_asm.rfun, H)
        eps = NatIso(left, right, comps)
        omap[w] = dp.obj_id(z, H, po, eps)

    mmap: dict[str, str] = {}
    for v in w_asm.base.morphisms:
        ws, wt = w_asm.base.mors[v]
        rv = r_mor.fun.mmap[v]
        z = r_mor.fun.omap[ws]
        hf = dp.fibres[z]
        H = h_of[ws]
        comps = {}
        for oid, (y, u) in hf.data_of.items():
            l_u = ell(y, u)
            l_rvu = ell(y, f.tgt.base.compose(rv, u))
            qv = y_asm.base.compose(l_rvu, y_asm.base.inv_of(l_u))
            smor = s.fun.mmap[raw.mpair[(qv, v)]]
            tgt_hf = dp.fibres[r_mor.fun.omap[wt]]
            tgt_oid = tgt_hf.obj_of[(y, f.tgt.base.compose(rv, u))]
            comps[oid] = x_asm.base.compose_path(
                eta_of[wt][tgt_oid], smor, x_asm.base.inv_of(eta_of[ws][oid]))
        target_fun = compose_functors(h_of[wt],
                                      fibre_map(hf, dp.fibres[r_mor.fun.omap[wt]],
                                                rv).fun)
        psi = NatIso(H, target_fun, comps)
        fpath = slice_point(piw.path_of[w_asm.rfun.mmap[v]], iv.I1)
        mmap[v] = dp.mor_id(omap[ws], rv, psi, r.pi_mor_id(fpath))
    fun = GFunctor(w_asm.base, dp.asm.base, omap, mmap)

    pd_full = r.product(w_asm.rtype, bc)
    bcp = r.product(y_asm.rtype, r.exponential(iv.I1, z_asm.rtype).obj)
    k_g = r.compose(s.e, rprod_bd.pair(r.compose(bcp.p1, pd_full.p2),
                                       pd_full.p1))
    lam_g = r.transpose(k_g, pd_full, bc, x_asm.rtype)
    e_t = dp.rt_prod.pair(r_mor.e, lam_g)
    piz = z_asm.pi
    comps = {}
    for w in w_asm.base.objects:
        po_stored = dp.obj_data[omap[w]][2]
        po_found = r.pi_obj_id(r.compose(lam_g, piw.point_of[w_asm.rfun.omap[w]]))
        if po_found != po_stored:
            raise StructuralError("transpose realizer misses the chosen point")
        comps[w] = r.pi_mor_id(dp.rt_prod.pair(
            piz.path_of[r_mor.eps.components[w]],
            pie.path_of[pie.gpd.id_of(po_stored)]))
    left = compose_functors(r.pi_map(e_t), w_asm.rfun)
    right = compose_functors(dp.asm.rfun, fun)
    return RealizedMorphism(w_asm, dp.asm, fun, e_t, NatIso(left, right, comps))


def fstar_map(dp: DepProd, fw: PullbackAssembly,
              t: RealizedMorphism) -> RealizedMorphism:
    """F*T: F*W -> F* Pi_F X induced by T on the pullbacks."""
    return dp.fstar.pair(fw.p1, compose_morphisms(t, fw.p2))


# -- modest fibrations ---------------------------------------------------------

def is_modest_fibration(fib: FibrationData):
    """Every fibre assembly has a fully faithful realizability functor."""
    for z in fib.tgt.base.objects:
        ok, witness = is_modest(fib.fibre(z))
        if not ok:
            return False, (z, witness)
    return True, None


def check_modest_closure(composable: list[tuple[FibrationData, FibrationData]],
                         pif_inputs: list[tuple[FibrationData, FibrationData]],
                         ) -> ValidationReport:
    """Composition closure and closure of the dependent product.

    composable: pairs (m2, m1) of modest fibrations with m1.tgt = m2.src;
    pif_inputs: pairs (g, f) with g modest, checking Pi_F(G) modest.
    """
    rep = ValidationReport()
    for i, (m2, m1) in enumerate(composable):
        comp = is_fibration(compose_morphisms(m2.morphism, m1.morphism))
        if not isinstance(comp, FibrationData):
            rep.add("composite-fibration", f"pair {i}: composite not a fibration")
            continue
        ok, witness = is_modest_fibration(comp)
        if not ok:
            rep.add("composite-modest", f"pair {i}: {witness}")
    for i, (g, f) in enumerate(pif_inputs):
        dp = dependent_product(g, f)
        ok, witness = is_modest_fibration(dp.fib)
        if not ok:
            rep.add("pif-modest", f"input {i}: {witness}")
    return rep


# -- the chaotic inclusion -----------------------------------------------------

def nabla(r: RealizerCategory, x: FinGroupoid, rtype, a0: str) -> Assembly:
    """Constant realizers: every object gets the point a0."""
    pi = r.pi(rtype)
    if a0 not in pi.gpd.objects:
        raise StructuralError(f"{a0!r} is not a point of the realizer object")
    rfun = GFunctor(x, pi.gpd, {o: a0 for o in x.objects},
                    {m: pi.gpd.id_of(a0) for m in x.morphisms})
    return Assembly(r, x, rtype, rfun)


def realize_into_nabla(w: Assembly, target: Assembly,
                       fun: GFunctor) -> RealizedMorphism:
    """Any functor into a chaotic assembly, realized by (a0 . !, id)."""
    r = w.r
    pi_t = target.pi
    a0 = next(iter(set(target.rfun.omap.values())))
    e = r.compose(pi_t.point_of[a0], r.terminal_map(w.rtype))
    return RealizedMorphism(w, target, fun, e,
                            _identity_eps(w, target, fun, e))


# -- universal objects ---------------------------------------------------------

@dataclass
class UniversalObjectWitness:
    """A candidate universal object with per-probe pseudoretract data."""

    candidate: Any
    sections: dict[Any, Any] = field(default_factory=dict)      # key -> s_A
    retractions: dict[Any, Any] = field(default_factory=dict)   # key -> r_A
    homotopies: dict[Any, Homotopy] = field(default_factory=dict)


def universal_object_check(r: RealizerCategory, w: UniversalObjectWitness,
                           probes: list) -> ValidationReport:
    """Verify rho_A: r_A s_A => id_A for every supplied probe."""
    rep = ValidationReport()
    for a in probes:
        key = r.obj_key(a)
        if key not in w.homotopies:
            rep.add("missing", f"no witness supplied for probe {a!r}")
            continue
        s_a = w.sections[key]
        r_a = w.retractions[key]
        rho = w.homotopies[key]
        rs = r.compose(r_a, s_a)
        if not r.map_eq(homotopy_dom(rho), rs):
            rep.add("rho-dom", f"probe {a!r}: homotopy does not start at r.s")
        if not r.map_eq(homotopy_cod(rho), r.identity(a)):
            rep.add("rho-cod", f"probe {a!r}: homotopy does not end at id")
    return rep
