"""DOT, ASCII and JSON output for affine, Kac, Vogan and double Vogan diagrams."""
from __future__ import annotations

from dataclasses import dataclass

from .diagram import SCHEMA, AffineDiagram, DiagramError
from .kac import Painting
from .sympairs import DoubleVoganDiagram
from .vogan import AffineVoganDiagram


@dataclass(frozen=True)
class Decorations:
    black: frozenset[int] = frozenset()
    circled: frozenset[int] = frozenset()
    d: tuple[int, ...] | None = None


def _unpack(x) -> tuple[AffineDiagram, Decorations]:
    if isinstance(x, AffineDiagram):
        return x, Decorations()
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], Painting):
        return x[0], Decorations(black=x[1].black)
    if isinstance(x, AffineVoganDiagram):
        return x.diagram, Decorations(circled=x.c, d=x.d)
    if isinstance(x, DoubleVoganDiagram):
        return x.diagram, Decorations(black=x.p.black, circled=x.c, d=x.d)
    raise TypeError(f"cannot render {type(x).__name__}")


def _label(ad: AffineDiagram, v: int) -> str:
    if v == 0:
        return "phi"
    return f"a{v}" if ad.r == 1 else f"x{v}"


def _d_pairs(dec: Decorations) -> list[tuple[int, int]]:
    if dec.d is None:
        return []
    return [(v, w) for v, w in enumerate(dec.d) if v < w]


def _bond(ad: AffineDiagram, i: int, j: int) -> tuple[int, int | None]:
    """(number of lines, vertex the arrow points to or None)."""
    a, b = abs(ad.cartan[i][j]), abs(ad.cartan[j][i])
    if a == b:
        return a * b, None
    lines = max(a, b)
    # the arrow points at the shorter root
    return lines, j if ad.norms[i] > ad.norms[j] else i


def to_dot(x) -> str:
    ad, dec = _unpack(x)
    t = ad.type
    out = [f'graph "{t}^{ad.r}" {{', "  node [shape=circle, fontsize=10];"]
    for v in range(ad.size):
        attrs = [f'label="{_label(ad, v)}"', f'xlabel="{ad.marks[v]}"']
        if v in dec.circled:
            attrs.append("shape=doublecircle")
        if v in dec.black:
            attrs += ["style=filled", "fillcolor=black", "fontcolor=white"]
        out.append(f"  v{v} [{', '.join(attrs)}];")
    for i, j, _ in ad.edges():
        lines, head = _bond(ad, i, j)
        attrs = []
        if lines > 1:
            attrs.append('color="' + ":".join(["black"] * lines) + '"')
        if head is not None:
            tail = i if head == j else j
            out.append(f"  v{tail} -- v{head} [{', '.join(attrs + ['dir=forward'])}];")
        else:
            out.append(f"  v{i} -- v{j}" + (f" [{', '.join(attrs)}];" if attrs else ";"))
    for v, w in _d_pairs(dec):
        out.append(f"  v{v} -- v{w} [style=dashed, constraint=false, dir=both];")
    out.append("}")
    return "\n".join(out) + "\n"


def _glyph(v: int, dec: Decorations) -> str:
    core = "*" if v in dec.black else "o"
    return f"({core})" if v in dec.circled else f" {core} "


def _bond_glyph(ad: AffineDiagram, i: int, j: int) -> str:
    lines, head = _bond(ad, i, j)
    bar = {1: "---", 2: "===", 3: "%%%", 4: "###"}[lines]
    if head == j:
        return bar[:-1] + ">"
    if head == i:
        return "<" + bar[1:]
    return bar


def _path_order(ad: AffineDiagram) -> list[int] | None:
    deg = [len(ad.neighbors(v)) for v in range(ad.size)]
    if ad.size == 1:
        return [0]
    ends = [v for v in range(ad.size) if deg[v] == 1]
    if max(deg) > 2 or len(ends) != 2:
        return None
    order, prev = [min(ends)], None
    while len(order) < ad.size:
        nxt = [w for w in ad.neighbors(order[-1]) if w != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def to_ascii(x) -> str:
    ad, dec = _unpack(x)
    t = ad.type
    lines = [f"{t}^{ad.r}"]
    order = _path_order(ad)
    if order is not None:
        row, marks, names = "", "", ""
        for k, v in enumerate(order):
            if k:
                gap = _bond_glyph(ad, order[k - 1], v)
                row += gap
                marks += " " * len(gap)
                names += " " * len(gap)
            row += _glyph(v, dec)
            marks += f"{ad.marks[v]:^3}"
            names += f"{_label(ad, v):^3}"[:3].ljust(3)
        lines += [row.rstrip(), names.rstrip(), marks.rstrip()]
    else:
        for v in range(ad.size):
            lines.append(f"{_glyph(v, dec)} {_label(ad, v):<4} m={ad.marks[v]}")
        for i, j, _ in ad.edges():
            lines.append(f"  {_label(ad, i)} {_bond_glyph(ad, i, j)} {_label(ad, j)}")
    for v, w in _d_pairs(dec):
        lines.append(f"  {_label(ad, v)} <- - -> {_label(ad, w)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# JSON

def to_json(x) -> dict:
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[1], Painting):
        ad, p = x
        doc = ad.to_json()
        doc.update(kind="kac_diagram", black=list(p.sorted()))
        return doc
    if isinstance(x, (AffineDiagram, AffineVoganDiagram, DoubleVoganDiagram)):
        return x.to_json()
    raise TypeError(f"no JSON form for {type(x).__name__}")


def from_json(doc: dict):
    if not isinstance(doc, dict):
        raise DiagramError("diagram JSON must be an object")
    if doc.get("schema") != SCHEMA:
        raise DiagramError(f"unsupported schema {doc.get('schema')!r}; expected {SCHEMA!r}")
    kind = doc.get("kind")
    if kind == "affine_diagram":
        return AffineDiagram.from_json(doc)
    if kind == "kac_diagram":
        ad = AffineDiagram.from_json({k: v for k, v in doc.items() if k != "black"} | {"kind": "affine_diagram"})
        return ad, Painting.of(doc.get("black", ()))
    if kind == "affine_vogan":
        return AffineVoganDiagram.from_json(doc)
    if kind == "double_vogan":
        return DoubleVoganDiagram.from_json(doc)
    raise DiagramError(f"unknown diagram kind {kind!r}")
