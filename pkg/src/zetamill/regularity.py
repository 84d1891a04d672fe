"""Nondegeneracy testing for toric hypersurfaces.

A Laurent polynomial is regular for its Newton polytope when no face
restriction shares a torus zero with all its toric partials.  The test here
is a bounded semi-decision: it searches torus points over extensions
F_{q^j}, j <= extension_bound, face by face in increasing dimension, and
returns either the first witness (in canonical face order) or a
regular-up-to-bound verdict.  RegularUpTo(b) is not a proof of regularity
over the algebraic closure.
"""

from dataclasses import dataclass

import numpy as np

from .config import effective_cap
from .errors import CapExceeded, ZetamillError
from .ffield import FieldElem, make_field
from .fieldvec import eval_laurent_vec, torus_blocks, vecfield
from .lattice import Face
from .laurent import LaurentPoly, evaluate, face_restrict, newton_polytope, toric_partial


@dataclass(frozen=True)
class RegularityVerdict:
    regular: bool
    bound: int
    face: Face | None = None
    witness: tuple | None = None     # coefficient vectors of the torus point
    extension: int | None = None

    def __bool__(self):
        return self.regular

    def to_json(self):
        out = {"regular": self.regular, "checked_up_to_extension": self.bound}
        if not self.regular:
            out["face_vertices"] = [list(v) for v in self.face.vertices]
            out["witness"] = [list(c) for c in self.witness]
            out["extension"] = self.extension
        return out


def is_delta_regular(f: LaurentPoly, extension_bound: int = 2, cap=None) -> RegularityVerdict:
    """Bounded search for a common torus zero of f restricted to each face
    of its Newton polytope together with all toric partials of the
    restriction.  Vertex faces pass structurally: a single monomial never
    vanishes on the torus."""
    if f.is_zero:
        raise ZetamillError("regularity of the zero polynomial")
    cap = effective_cap(cap)
    delta = newton_polytope(f)
    F = f.field
    n = f.n
    for face in delta.faces():            # increasing dimension, deterministic
        if face.dim == 0 and len(face.vertices) == 1:
            continue
        g = face_restrict(f, face, delta)
        system = [g] + [pd for i in range(1, n + 1)
                        if not (pd := toric_partial(g, i)).is_zero]
        witness = _common_torus_zero(system, F, extension_bound, cap, face)
        if witness is not None:
            point, j = witness
            E = make_field(F.p, F.k * j)
            for poly in system:
                val = evaluate(poly, [FieldElem(c) for c in point], E)
                if any(val.coeffs):
                    raise ZetamillError("witness failed re-verification")  # kernel bug
            return RegularityVerdict(regular=False, bound=extension_bound,
                                     face=face, witness=point, extension=j)
    return RegularityVerdict(regular=True, bound=extension_bound)


def _common_torus_zero(system, F, extension_bound, cap, face):
    n = system[0].n
    for j in range(1, extension_bound + 1):
        E = make_field(F.p, F.k * j)
        size = (E.order - 1) ** n
        if size > cap:
            raise CapExceeded(
                f"regularity scan at extension {j} needs {size} points > cap {cap} "
                f"(face with vertices {list(face.vertices)})",
                estimated=size, cap=cap)
        vf = vecfield(E)
        for coords in torus_blocks(vf, n):
            common = None
            for poly in system:
                vals = eval_laurent_vec(vf, poly, coords)
                mask = (vals == 0)
                common = mask if common is None else (common & mask)
                if not common.any():
                    break
            if common is not None and common.any():
                at = int(np.argmax(common))
                point = tuple(E.unpack(int(c[at])) for c in coords)
                return point, j
    return None


def cy_singular_parameters(n: int, Fk) -> set:
    """Parameters y with y^(n+1) = (n+1)^(n+1): the degenerate members of
    the x_1 + ... + x_n + 1/(x_1...x_n) - y family, found symbolically.
    Used to cross-validate the search-based verdicts."""
    target = Fk.from_int((n + 1) ** (n + 1))
    return {y for y in Fk.elements() if Fk.pow(y, n + 1) == target}
