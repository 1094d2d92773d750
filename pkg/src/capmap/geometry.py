"""Triangles given by side lengths and, optionally, vertices.

Side ``sides[k]`` is opposite vertex ``k``, so the interior angle at vertex
``k`` is the angle opposite ``sides[k]``.
"""

from dataclasses import dataclass
import cmath
import math

from capmap.errors import DegenerateTriangleError, DomainError


def _as_complex(v):
    return complex(v)


@dataclass(frozen=True)
class Triangle:
    sides: tuple
    vertices: tuple = None

    def __post_init__(self):
        sides = tuple(float(s) for s in self.sides)
        if len(sides) != 3:
            raise DomainError("a triangle has three sides")
        if not all(math.isfinite(s) and s > 0 for s in sides):
            raise DegenerateTriangleError(f"side lengths must be positive: {sides}")
        a, b, c = sides
        if not (a < b + c and b < a + c and c < a + b):
            raise DegenerateTriangleError(
                f"sides {sides} violate the strict triangle inequality")
        object.__setattr__(self, "sides", sides)
        if self.vertices is not None:
            verts = tuple(_as_complex(v) for v in self.vertices)
            if len(verts) != 3:
                raise DomainError("a triangle has three vertices")
            measured = _sides_of(verts)
            for s, m in zip(sides, measured):
                if abs(s - m) > 1e-12 * max(s, m):
                    raise DomainError(
                        f"vertices {verts} do not reproduce sides {sides}")
            object.__setattr__(self, "vertices", verts)

    @classmethod
    def from_vertices(cls, vertices):
        verts = tuple(_as_complex(v) for v in vertices)
        return cls(_sides_of(verts), verts)

    @classmethod
    def from_sides(cls, a, b, c):
        """Place vertex 0 at the origin and vertex 1 at (c, 0), counterclockwise."""
        tri = cls((a, b, c))
        alpha = tri.angles()[0]
        verts = (0j, complex(tri.sides[2], 0.0), tri.sides[1] * cmath.exp(1j * alpha))
        return cls(tri.sides, verts)

    @classmethod
    def isosceles(cls, theta):
        """Apex ``theta`` at the origin, unit legs symmetric about the real axis.

        Vertex order is apex, lower, upper, which is counterclockwise.
        """
        if not 0 < theta < math.pi:
            raise DomainError("apex angle must lie in (0, pi)")
        lo = cmath.exp(-0.5j * theta)
        return cls.from_vertices((0j, lo, lo.conjugate()))

    def angles(self):
        """Interior angles (alpha, beta, gamma) opposite sides (a, b, c)."""
        a, b, c = self.sides
        return (
            _arccos((b * b + c * c - a * a) / (2 * b * c)),
            _arccos((a * a + c * c - b * b) / (2 * a * c)),
            _arccos((a * a + b * b - c * c) / (2 * a * b)),
        )

    def scaled(self, s):
        verts = None if self.vertices is None else tuple(s * v for v in self.vertices)
        return Triangle(tuple(s * x for x in self.sides), verts)

    def is_counterclockwise(self):
        if self.vertices is None:
            raise DomainError("orientation needs vertices")
        v0, v1, v2 = self.vertices
        return ((v1 - v0).conjugate() * (v2 - v0)).imag > 0

    def perimeter(self):
        return sum(self.sides)


def _arccos(x):
    return math.acos(min(1.0, max(-1.0, x)))


def _sides_of(verts):
    v0, v1, v2 = verts
    sides = (abs(v1 - v2), abs(v0 - v2), abs(v0 - v1))
    return sides


def contains(vertices, z, tol=0.0):
    """True if ``z`` lies in the closed triangle (vertices in either order)."""
    v0, v1, v2 = (complex(v) for v in vertices)
    sign = 1.0 if ((v1 - v0).conjugate() * (v2 - v0)).imag > 0 else -1.0
    for p, q in ((v0, v1), (v1, v2), (v2, v0)):
        edge = q - p
        if sign * (edge.conjugate() * (z - p)).imag < -tol * abs(edge):
            return False
    return True
