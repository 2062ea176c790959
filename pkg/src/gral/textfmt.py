"""Line-oriented text format for groupoids, assemblies and morphisms.

The format is versioned and diff-friendly: one record per line, sections
in a fixed canonical order on output (any order on input).  Assemblies and
morphisms reference their groupoid constituents by file name; a bundle
stitches several files into a single replayable payload.
"""

from __future__ import annotations

import json
from typing import Callable, Optional

from .errors import ParseError
from .groupoids import FinGroupoid, GFunctor, NatIso, compose_functors
from .assemblies import Assembly, RealizedMorphism

VERSION = "1"

_GROUPOID_SECTIONS = ("OBJECTS", "MORPHISMS", "ID", "INV", "COMP")
_ASSEMBLY_SECTIONS = ("RFUN-OBJ", "RFUN-MOR")
_MORPHISM_SECTIONS = ("FUN-OBJ", "FUN-MOR", "E-OBJ", "E-MOR", "EPS")


def serialize_groupoid(g: FinGroupoid) -> str:
    lines = [f"GRAL {VERSION} GROUPOID", "OBJECTS"]
    lines.extend(g.objects)
    lines.append("MORPHISMS")
    lines.extend(f"{m} {s} {t}" for m, (s, t) in
                 ((m, g.mors[m]) for m in g.morphisms))
    lines.append("ID")
    lines.extend(f"{x} {g.ident[x]}" for x in g.objects)
    lines.append("INV")
    lines.extend(f"{m} {g.inv[m]}" for m in g.morphisms)
    lines.append("COMP")
    lines.extend(f"{a} {b} {c}" for (a, b), c in sorted(g.comp.items()))
    lines.append("END")
    return "\n".join(lines) + "\n"


class _Reader:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.pos = 0

    def peek(self) -> Optional[str]:
        while self.pos < len(self.lines):
            line = self.lines[self.pos].strip()
            if line and not line.startswith("#"):
                return line
            self.pos += 1
        return None

    def next(self) -> str:
        line = self.peek()
        if line is None:
            raise ParseError("unexpected end of file", len(self.lines) + 1)
        self.pos += 1
        return line

    @property
    def lineno(self) -> int:
        return self.pos + 1


def _expect_header(rd: _Reader, kind: str) -> None:
    head = rd.next().split()
    if len(head) != 3 or head[0] != "GRAL" or head[2] != kind:
        raise ParseError(f"expected 'GRAL <version> {kind}' header", rd.lineno - 1)
    if head[1] != VERSION:
        raise ParseError(f"unsupported format version {head[1]}", rd.lineno - 1)


def _read_sections(rd: _Reader, known: tuple[str, ...]) -> dict[str, list[tuple[list[str], int]]]:
    sections: dict[str, list[tuple[list[str], int]]] = {}
    current: Optional[str] = None
    while True:
        line = rd.next()
        if line == "END":
            break
        if line in known or (line.split()[0] in ("BASE", "RTYPE", "SRC", "TGT")):
            toks = line.split()
            if len(toks) == 1:
                current = line
                sections.setdefault(current, [])
                continue
            sections.setdefault(toks[0], []).append((toks[1:], rd.lineno - 1))
            continue
        if current is None:
            raise ParseError(f"content outside any section: {line!r}", rd.lineno - 1)
        sections[current].append((line.split(), rd.lineno - 1))
    return sections


def parse_groupoid(text: str) -> FinGroupoid:
    rd = _Reader(text)
    _expect_header(rd, "GROUPOID")
    secs = _read_sections(rd, _GROUPOID_SECTIONS)
    for s in _GROUPOID_SECTIONS:
        if s not in secs:
            raise ParseError(f"missing section {s}", rd.lineno)
    objects = []
    for toks, ln in secs["OBJECTS"]:
        if len(toks) != 1:
            raise ParseError("expected one object identifier", ln, 2)
        objects.append(toks[0])
    mors = {}
    for toks, ln in secs["MORPHISMS"]:
        if len(toks) != 3:
            raise ParseError("expected 'id src tgt'", ln, len(toks) + 1)
        mors[toks[0]] = (toks[1], toks[2])
    ident = {}
    for toks, ln in secs["ID"]:
        if len(toks) != 2:
            raise ParseError("expected 'object identity'", ln, len(toks) + 1)
        ident[toks[0]] = toks[1]
    inv = {}
    for toks, ln in secs["INV"]:
        if len(toks) != 2:
            raise ParseError("expected 'morphism inverse'", ln, len(toks) + 1)
        inv[toks[0]] = toks[1]
    comp = {}
    for toks, ln in secs["COMP"]:
        if len(toks) != 3:
            raise ParseError("expected 'g f composite'", ln, len(toks) + 1)
        comp[(toks[0], toks[1])] = toks[2]
    return FinGroupoid(objects, mors, comp, ident, inv)


def groupoid_to_json(g: FinGroupoid) -> str:
    return json.dumps({
        "format": f"gral-{VERSION}-groupoid",
        "objects": list(g.objects),
        "morphisms": [[m, *g.mors[m]] for m in g.morphisms],
        "id": {x: g.ident[x] for x in g.objects},
        "inv": {m: g.inv[m] for m in g.morphisms},
        "comp": [[a, b, c] for (a, b), c in sorted(g.comp.items())],
    }, indent=0, sort_keys=True)


def groupoid_from_json(text: str) -> FinGroupoid:
    data = json.loads(text)
    return FinGroupoid(
        data["objects"],
        {m: (s, t) for m, s, t in data["morphisms"]},
        {(a, b): c for a, b, c in data["comp"]},
        data["id"], data["inv"])


class Loader:
    """Interns groupoids by structural key across several parses.

    Identity of parsed values is serial-based, so two files describing the
    same groupoid must resolve to one instance before their assemblies or
    morphisms can compose.
    """

    def __init__(self, r):
        self.r = r
        self._gpds: dict = {}

    def groupoid(self, text: str) -> FinGroupoid:
        g = parse_groupoid(text)
        return self._gpds.setdefault(g.key(), g)


def serialize_assembly(a: Assembly, base_name: str, rtype_name: str) -> str:
    lines = [f"GRAL {VERSION} ASSEMBLY", f"BASE {base_name}",
             f"RTYPE {rtype_name}", "RFUN-OBJ"]
    lines.extend(f"{x} {a.rfun.omap[x]}" for x in a.base.objects)
    lines.append("RFUN-MOR")
    lines.extend(f"{m} {a.rfun.mmap[m]}" for m in a.base.morphisms)
    lines.append("END")
    return "\n".join(lines) + "\n"


def parse_assembly(text: str, resolve: Callable[[str], str], r,
                   loader: Optional[Loader] = None) -> Assembly:
    loader = loader if loader is not None else Loader(r)
    rd = _Reader(text)
    _expect_header(rd, "ASSEMBLY")
    secs = _read_sections(rd, _ASSEMBLY_SECTIONS)
    for s in ("BASE", "RTYPE") + _ASSEMBLY_SECTIONS:
        if s not in secs:
            raise ParseError(f"missing section {s}", rd.lineno)
    base = loader.groupoid(resolve(secs["BASE"][0][0][0]))
    rtype = loader.groupoid(resolve(secs["RTYPE"][0][0][0]))
    pi = r.pi(rtype)
    omap = {}
    for toks, ln in secs["RFUN-OBJ"]:
        if len(toks) != 2:
            raise ParseError("expected 'object point'", ln, len(toks) + 1)
        if toks[1] not in pi.gpd.ident:
            raise ParseError(f"unknown point {toks[1]!r}", ln, 2)
        omap[toks[0]] = toks[1]
    mmap = {}
    for toks, ln in secs["RFUN-MOR"]:
        if len(toks) != 2:
            raise ParseError("expected 'morphism path'", ln, len(toks) + 1)
        if toks[1] not in pi.gpd.inv:
            raise ParseError(f"unknown path {toks[1]!r}", ln, 2)
        mmap[toks[0]] = toks[1]
    return Assembly(r, base, rtype, GFunctor(base, pi.gpd, omap, mmap))


def serialize_morphism(m: RealizedMorphism, src_name: str, tgt_name: str) -> str:
    lines = [f"GRAL {VERSION} MORPHISM", f"SRC {src_name}", f"TGT {tgt_name}",
             "FUN-OBJ"]
    lines.extend(f"{x} {m.fun.omap[x]}" for x in m.src.base.objects)
    lines.append("FUN-MOR")
    lines.extend(f"{p} {m.fun.mmap[p]}" for p in m.src.base.morphisms)
    lines.append("E-OBJ")
    lines.extend(f"{x} {m.e.omap[x]}" for x in m.e.dom.objects)
    lines.append("E-MOR")
    lines.extend(f"{p} {m.e.mmap[p]}" for p in m.e.dom.morphisms)
    lines.append("EPS")
    lines.extend(f"{x} {m.eps.components[x]}" for x in m.src.base.objects)
    lines.append("END")
    return "\n".join(lines) + "\n"


def parse_morphism(text: str, resolve: Callable[[str], str], r,
                   loader: Optional[Loader] = None) -> RealizedMorphism:
    loader = loader if loader is not None else Loader(r)
    rd = _Reader(text)
    _expect_header(rd, "MORPHISM")
    secs = _read_sections(rd, _MORPHISM_SECTIONS)
    for s in ("SRC", "TGT") + _MORPHISM_SECTIONS:
        if s not in secs:
            raise ParseError(f"missing section {s}", rd.lineno)
    src = parse_assembly(resolve(secs["SRC"][0][0][0]), resolve, r, loader)
    tgt = parse_assembly(resolve(secs["TGT"][0][0][0]), resolve, r, loader)

    def table(name: str) -> dict[str, str]:
        out = {}
        for toks, ln in secs[name]:
            if len(toks) != 2:
                raise ParseError(f"expected a two-column row in {name}", ln,
                                 len(toks) + 1)
            out[toks[0]] = toks[1]
        return out

    fun = GFunctor(src.base, tgt.base, table("FUN-OBJ"), table("FUN-MOR"))
    e = GFunctor(src.rtype, tgt.rtype, table("E-OBJ"), table("E-MOR"))
    left = compose_functors(r.pi_map(e), src.rfun)
    right = compose_functors(tgt.rfun, fun)
    eps = NatIso(left, right, table("EPS"))
    return RealizedMorphism(src, tgt, fun, e, eps)


# -- bundles ---------------------------------------------------------------

def serialize_bundle(files: dict[str, str]) -> str:
    lines = [f"GRAL {VERSION} BUNDLE"]
    for name in files:
        lines.append(f"--- FILE {name}")
        lines.append(files[name].rstrip("\n"))
    return "\n".join(lines) + "\n"


def parse_bundle(text: str) -> dict[str, str]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(f"GRAL {VERSION} BUNDLE"):
        raise ParseError("expected a bundle header", 1)
    files: dict[str, str] = {}
    name: Optional[str] = None
    chunk: list[str] = []
    for i, line in enumerate(lines[1:], start=2):
        if line.startswith("--- FILE "):
            if name is not None:
                files[name] = "\n".join(chunk) + "\n"
            name = line[len("--- FILE "):].strip()
            chunk = []
        elif name is not None:
            chunk.append(line)
        elif line.strip():
            raise ParseError("content before the first file marker", i)
    if name is not None:
        files[name] = "\n".join(chunk) + "\n"
    return files


def bundle_assembly(a: Assembly, name: str = "main") -> str:
    files = {
        f"{name}.base.gpd": serialize_groupoid(a.base),
        f"{name}.rtype.gpd": serialize_groupoid(a.rtype),
        f"{name}.asm": serialize_assembly(a, f"{name}.base.gpd",
                                          f"{name}.rtype.gpd"),
    }
    return serialize_bundle(files)


def load_assembly_bundle(text: str, r, name: str = "main") -> Assembly:
    files = parse_bundle(text)
    return parse_assembly(files[f"{name}.asm"], files.__getitem__, r)


def bundle_morphism(m: RealizedMorphism) -> str:
    files = {
        "src.base.gpd": serialize_groupoid(m.src.base),
        "src.rtype.gpd": serialize_groupoid(m.src.rtype),
        "tgt.base.gpd": serialize_groupoid(m.tgt.base),
        "tgt.rtype.gpd": serialize_groupoid(m.tgt.rtype),
        "src.asm": serialize_assembly(m.src, "src.base.gpd", "src.rtype.gpd"),
        "tgt.asm": serialize_assembly(m.tgt, "tgt.base.gpd", "tgt.rtype.gpd"),
        "main.mor": serialize_morphism(m, "src.asm", "tgt.asm"),
    }
    return serialize_bundle(files)


def load_morphism_bundle(text: str, r,
                         loader: Optional[Loader] = None) -> RealizedMorphism:
    files = parse_bundle(text)
    return parse_morphism(files["main.mor"], files.__getitem__, r, loader)


def detect_kind(text: str) -> str:
    head = text.lstrip().splitlines()[0].split() if text.strip() else []
    if len(head) == 3 and head[0] == "GRAL":
        return head[2]
    raise ParseError("not a gral file", 1)
