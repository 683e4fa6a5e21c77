"""
Polygon document format

JSON with every coordinate stored as a "num/den" string, so a pair read
back from disk is exactly the pair that was written.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from ..config.settings import SYSTEM_CONFIG
from ..core.errors import DocumentError, InvalidParams, InvalidPolygon
from ..geometry.kernel import Point, format_rational, parse_rational
from ..geometry.polygon import Polygon

FORMAT_VERSION = SYSTEM_CONFIG.get("format_version", 1)


@dataclass
class PolygonEntry:
    name: str
    polygon: Polygon
    style: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        entry: Dict[str, Any] = {
            "name": self.name,
            "vertices": [[format_rational(v.x), format_rational(v.y)] for v in self.polygon.vertices],
        }
        if self.style is not None:
            entry["style"] = self.style
        return entry

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "PolygonEntry":
        try:
            name = data["name"]
            raw_vertices = data["vertices"]
        except (KeyError, TypeError) as e:
            raise DocumentError(f"polygon entry is missing {e}")
        if not isinstance(name, str) or not isinstance(raw_vertices, list):
            raise DocumentError(f"malformed polygon entry {name!r}")

        vertices = []
        for pair in raw_vertices:
            if not isinstance(pair, list) or len(pair) != 2 or not all(isinstance(c, str) for c in pair):
                raise DocumentError(f"polygon {name!r}: vertices must be [\"num/den\", \"num/den\"] pairs")
            try:
                vertices.append(Point(parse_rational(pair[0]), parse_rational(pair[1])))
            except InvalidParams as e:
                raise DocumentError(f"polygon {name!r}: {e.message}")
        try:
            polygon = Polygon(tuple(vertices))
        except InvalidPolygon as e:
            raise DocumentError(f"polygon {name!r}: {e.message}")
        return cls(name, polygon, data.get("style"))


@dataclass
class PolygonDocument:
    polygons: List[PolygonEntry] = field(default_factory=list)
    format_version: int = FORMAT_VERSION

    @classmethod
    def from_pair(
        cls,
        p: Polygon,
        q: Polygon,
        names: Tuple[str, str] = ("P", "Q"),
        styles: Tuple[Optional[str], Optional[str]] = ("red", "blue"),
    ) -> "PolygonDocument":
        return cls([PolygonEntry(names[0], p, styles[0]), PolygonEntry(names[1], q, styles[1])])

    def pair(self) -> Tuple[Polygon, Polygon]:
        if len(self.polygons) != 2:
            raise DocumentError(f"expected exactly two polygons, found {len(self.polygons)}")
        return self.polygons[0].polygon, self.polygons[1].polygon

    def to_dict(self) -> Dict[str, Any]:
        return {
            "format_version": self.format_version,
            "polygons": [entry.to_dict() for entry in self.polygons],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def loads(cls, text: str) -> "PolygonDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DocumentError(f"not a JSON document: {e}")
        if not isinstance(data, dict):
            raise DocumentError("document root must be an object")
        version = data.get("format_version")
        if version != FORMAT_VERSION:
            raise DocumentError(f"unsupported format_version {version!r}, expected {FORMAT_VERSION}")
        polygons = data.get("polygons")
        if not isinstance(polygons, list):
            raise DocumentError("document needs a \"polygons\" list")
        return cls([PolygonEntry.from_dict(entry) for entry in polygons], version)

    def write(self, path: Union[str, Path]):
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def read(cls, path: Union[str, Path]) -> "PolygonDocument":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise DocumentError(f"cannot read {path}: {e.strerror}")
        return cls.loads(text)
