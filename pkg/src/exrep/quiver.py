"""Quivers (finite directed graphs) and relation expressions."""

from __future__ import annotations

from dataclasses import dataclass


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex labels")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        dup = set(names) & set(self.vertices)
        if dup:
            raise QuiverError(f"names used for both vertex and arrow: {sorted(dup)}")
        for a in self.arrows:
            if a.source not in self.vertices or a.target not in self.vertices:
                raise QuiverError(f"arrow {a.name} has undeclared endpoint")

    def vertex_index(self, label: str) -> int:
        try:
            return self.vertices.index(label)
        except ValueError:
            raise QuiverError(f"unknown vertex {label!r}") from None

    def arrow_index(self, name: str) -> int:
        for i, a in enumerate(self.arrows):
            if a.name == name:
                return i
        raise QuiverError(f"unknown arrow {name!r}")

    def path_endpoints(self, arrow_names: tuple[str, ...]) -> tuple[str, str]:
        """Source and target of a composable arrow-name sequence."""
        if not arrow_names:
            raise QuiverError("empty path has no endpoints")
        arrows = [self.arrows[self.arrow_index(n)] for n in arrow_names]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise QuiverError(f"path {'*'.join(arrow_names)} breaks at {a.name}*{b.name}")
        return arrows[0].source, arrows[-1].target


@dataclass(frozen=True)
class RelationExpr:
    """A K-linear combination of parallel paths, each of length >= 2.

    terms: tuple of (coefficient, arrow-name tuple).
    """

    terms: tuple[tuple[object, tuple[str, ...]], ...]

    def validate(self, quiver: Quiver) -> tuple[str, str]:
        """Check composability/parallelism; returns the common (source, target)."""
        if not self.terms:
            raise QuiverError("empty relation")
        endpoints = None
        for _, path in self.terms:
            if len(path) < 2:
                raise QuiverError(f"relation path {'*'.join(path)} has length < 2 (not admissible)")
            ep = quiver.path_endpoints(path)
            if endpoints is None:
                endpoints = ep
            elif ep != endpoints:
                raise QuiverError(
                    f"relation terms are not parallel: {'*'.join(path)} runs {ep[0]}->{ep[1]}, "
                    f"expected {endpoints[0]}->{endpoints[1]}"
                )
        return endpoints
