"""SVG figures of a triangle, its cevian triad and the circles an identity uses.

Circles are coloured by the side of the identity their radius appears on:
yellow for the left-hand side, green for the right.  Every circle is checked
for tangency again before it is drawn.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from . import catalog
from .catalog import Identity, coordinate_scale, family_circles, figure_scale
from .centers import Custom, cevian_triad
from .circles import Circle, subdivide, tangency_residual, touches_host
from .errors import ConstructionFailed, GeometryError
from .expr import BinOp, Expr, Var
from .geometry import Triangle
from .harness import default_spec
from .sampling import sample_point, sample_triangle
from .scalar import approx

TANGENCY_TOLERANCE = 1e-9

PALETTE = {"lhs": "#e8c547", "rhs": "#5aa469", "other": "#8a8a8a"}


@dataclass(frozen=True)
class Style:
    triangle_stroke: float = 2.0
    cevian_stroke: float = 1.0
    circle_stroke: float = 1.2
    font_size: float = 12.0
    palette: dict = field(default_factory=lambda: dict(PALETTE))


@dataclass(frozen=True)
class FigureScene:
    """What to draw: vertices, center, families and size of the output picture.

    ``vertices`` are kept raw so a degenerate input surfaces as
    ConstructionFailed when rendered.
    """

    vertices: tuple
    center: object  # CenterKind or Custom
    families: tuple = ()  # ((family, label letter), ...)
    sides: dict = field(default_factory=dict)  # (letter, index) -> "lhs" | "rhs"
    style: Style = field(default_factory=Style)
    viewport: tuple[int, int] = (640, 640)
    title: str = ""

    @property
    def twelve_circles(self) -> bool:
        return len(self.families) == 2


def _radius_terms(expr: Expr, found: set) -> set:
    if isinstance(expr, Var):
        if expr.name in ("r", "R") and expr.index is not None:
            found.add((expr.name, expr.index))
    elif isinstance(expr, BinOp):
        _radius_terms(expr.left, found)
        _radius_terms(expr.right, found)
    return found


def scene_for(identity: Identity | str, T: Triangle | None = None, k: int = 0, **kw) -> FigureScene:
    """Scene for ``identity`` on ``T`` (default: its sampler's k-th triangle)."""
    if isinstance(identity, str):
        identity = catalog.get(identity)
    spec = default_spec(identity)
    if T is None:
        T = sample_triangle(spec, k)
    if identity.center is None:
        center = Custom(sample_point(spec, k, T))
    else:
        center = identity.center
    families = []
    if identity.family is not None:
        families.append((identity.family, "r"))
    if identity.second_family is not None:
        families.append((identity.second_family, "R"))
    sides = {term: "lhs" for term in _radius_terms(identity.lhs, set())}
    sides.update({term: "rhs" for term in _radius_terms(identity.rhs, set())})
    return FigureScene(T.vertices, center, tuple(families), sides, title=identity.id, **kw)


def _fmt(x: float) -> str:
    text = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


class _Frame:
    """Maps plane coordinates into the viewport, y pointing up."""

    def __init__(self, points, circles, viewport, margin=24.0):
        xs = [p[0] for p in points] + [c[0] - c[2] for c in circles] + [c[0] + c[2] for c in circles]
        ys = [p[1] for p in points] + [c[1] - c[2] for c in circles] + [c[1] + c[2] for c in circles]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys)) or 1.0
        self.width, self.height = viewport
        self.k = (min(self.width, self.height) - 2 * margin) / span
        self.margin = margin

    def point(self, x: float, y: float) -> tuple[str, str]:
        return _fmt(self.margin + (x - self.x0) * self.k), _fmt(self.margin + (self.y1 - y) * self.k)

    def length(self, r: float) -> str:
        return _fmt(r * self.k)


def _validated(circles: list[Circle], T: Triangle) -> None:
    base = coordinate_scale(T)
    for c in circles:
        residual = float(tangency_residual(c)) / figure_scale(c, base)
        if residual > TANGENCY_TOLERANCE:
            raise ConstructionFailed(f"circle at {c.center} misses a tangent line by {residual:.3g}")
        if not touches_host(c):
            raise ConstructionFailed(f"circle at {c.center} touches its side outside the segment")


def render_figure(scene: FigureScene) -> str:
    """The scene as an SVG 1.1 document; identical scenes give identical bytes."""
    ctx = approx(53)
    try:
        T = Triangle(*scene.vertices)
        triad = cevian_triad(T.to(ctx), scene.center, ctx)
        sub = subdivide(T, triad)
        drawn = [(letter, family_circles(sub, family, ctx)) for family, letter in scene.families]
    except GeometryError as exc:
        raise ConstructionFailed(f"cannot build the scene: {exc}") from exc
    for _, circles in drawn:
        _validated(circles, T)

    A, B, C = triad.triangle.vertices
    named = {"A": A, "B": B, "C": C, "P": triad.P, "D": triad.D, "E": triad.E, "F": triad.F}
    pts = {name: (float(p.x), float(p.y)) for name, p in named.items()}
    discs = [
        (letter, i, (float(c.center.x), float(c.center.y), float(c.radius)))
        for letter, circles in drawn
        for i, c in enumerate(circles, 1)
    ]
    frame = _Frame(list(pts.values()), [d[2] for d in discs], scene.viewport)
    style = scene.style
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{scene.viewport[0]}" '
        f'height="{scene.viewport[1]}" viewBox="0 0 {scene.viewport[0]} {scene.viewport[1]}">',
    ]
    if scene.title:
        out.append(f"<title>{escape(scene.title)}</title>")
    out.append('<rect width="100%" height="100%" fill="white"/>')

    for letter, i, (x, y, r) in discs:
        side = scene.sides.get((letter, i), "other")
        cx, cy = frame.point(x, y)
        out.append(
            f'<circle class="{side}" cx="{cx}" cy="{cy}" r="{frame.length(r)}" '
            f'fill="{style.palette[side]}" fill-opacity="0.35" stroke="{style.palette[side]}" '
            f'stroke-width="{_fmt(style.circle_stroke)}"/>'
        )
    corners = " ".join(",".join(frame.point(*pts[n])) for n in "ABC")
    out.append(
        f'<polygon points="{corners}" fill="none" stroke="black" stroke-width="{_fmt(style.triangle_stroke)}"/>'
    )
    for vertex, foot in (("A", "D"), ("B", "E"), ("C", "F")):
        (x1, y1), (x2, y2) = frame.point(*pts[vertex]), frame.point(*pts[foot])
        out.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" '
            f'stroke-width="{_fmt(style.cevian_stroke)}"/>'
        )
    font = _fmt(style.font_size)
    for name, (x, y) in pts.items():
        px, py = frame.point(x, y)
        out.append(f'<text x="{px}" y="{py}" font-size="{font}" font-family="sans-serif">{name}</text>')
    for letter, i, (x, y, _) in discs:
        px, py = frame.point(x, y)
        out.append(
            f'<text x="{px}" y="{py}" font-size="{font}" font-family="sans-serif" '
            f'text-anchor="middle">{letter}{i}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def circle_classes(svg: str) -> dict[str, int]:
    """Count of drawn circles per palette class, read back from an SVG string."""
    counts: dict[str, int] = {}
    for part in svg.split("<circle ")[1:]:
        cls = part.split('class="', 1)[1].split('"', 1)[0]
        counts[cls] = counts.get(cls, 0) + 1
    return counts

