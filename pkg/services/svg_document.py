from __future__ import annotations

from typing import Dict
from xml.sax.saxutils import escape, quoteattr


class SVGDocument:
    """Append-only SVG 1.1 text builder."""

    def __init__(self) -> None:
        self.svg = ""

    def header(self, width: int, height: int) -> None:
        self.svg += f"""<?xml version="1.0" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" xmlns="http://www.w3.org/2000/svg">
"""

    def style(self, content: str) -> None:
        self.svg += f"<style>\n{content}</style>\n"

    def group_start(self, attr: Dict[str, str]) -> None:
        g_attr = [f"{key}={quoteattr(value)}" for key, value in attr.items() if key in ("id", "class")]
        self.svg += f'<g {" ".join(g_attr)}>\n'
        if "title" in attr:
            self.svg += f"<title>{escape(attr['title'])}</title>\n"

    def group_end(self) -> None:
        self.svg += "</g>\n"

    def circle(self, cx: float, cy: float, r: float, css_class: str, extra: str = "") -> None:
        self.svg += f'<circle class="{css_class}" cx="{cx:.3f}" cy="{cy:.3f}" r="{r:.3f}" {extra}/>\n'

    def line(self, x1: float, y1: float, x2: float, y2: float, css_class: str, extra: str = "") -> None:
        self.svg += (
            f'<line class="{css_class}" x1="{x1:.3f}" y1="{y1:.3f}" '
            f'x2="{x2:.3f}" y2="{y2:.3f}" {extra}/>\n'
        )

    def path(self, d: str, css_class: str, extra: str = "") -> None:
        self.svg += f'<path class="{css_class}" d="{d}" {extra}/>\n'

    def text(self, x: float, y: float, string: str, extra: str = "") -> None:
        self.svg += f'<text x="{x:.3f}" y="{y:.3f}" {extra}>{escape(string)}</text>\n'

    def get_svg(self) -> str:
        return f"{self.svg}</svg>\n"
