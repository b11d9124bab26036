"""Small rings and modules used by the demos, the worksheets and the tests."""

from __future__ import annotations

from functools import lru_cache

from .gbres import Ideal, ModulePres, QuotientRing
from .homlat import PrimeCandidate, prime
from .modops import ideal_times_module, syzygy
from .polycore import PolyRing


def ring(variables: str, *relations: str) -> QuotientRing:
    S = PolyRing(tuple(variables.split(",")) if "," in variables else tuple(variables))
    return QuotientRing.make(S, list(relations))


def cyclic(R: QuotientRing, *gens: str, name: str = "") -> ModulePres:
    return ModulePres.cyclic(R, list(gens), name=name or "R/(" + ",".join(gens) + ")")


def ideal_module(R: QuotientRing, *gens: str, name: str = "") -> ModulePres:
    M = ideal_times_module(Ideal.make(R, [R.ambient(g) for g in gens]), ModulePres.free(R))
    M.name = name or "(" + ",".join(gens) + ")"
    return M


def residue_field(R: QuotientRing) -> ModulePres:
    return ModulePres.cyclic(R, R.ambient.gens(), name="k")


def primes(R: QuotientRing, *gen_lists) -> list:
    return [prime(R, [R.ambient(g) for g in gens]) if gens else PrimeCandidate(Ideal.make(R, []))
            for gens in gen_lists]


# ---------- named fixtures ----------

@lru_cache(maxsize=None)
def node() -> QuotientRing:
    """``F_p[x,y]/(xy)``: a one-dimensional hypersurface."""
    return ring("xy", "x*y")


@lru_cache(maxsize=None)
def plane_pair() -> QuotientRing:
    """``F_p[x,y,z]/(xy)``: two planes meeting in a line, Gorenstein of dimension 2."""
    return ring("xyz", "x*y")


@lru_cache(maxsize=None)
def polynomial3() -> QuotientRing:
    return ring("xyz")


@lru_cache(maxsize=None)
def twisted_cubic() -> QuotientRing:
    """The affine cone over the twisted cubic: CM of dimension 2, not Gorenstein."""
    return ring("abcd", "a*c-b^2", "a*d-b*c", "b*d-c^2")


def twisted_cubic_primes(R: QuotientRing = None) -> list:
    R = R or twisted_cubic()
    return primes(R, (), ("a", "b", "c"), ("b", "c", "d"), ("a", "b", "c", "d"))


def plane_pair_primes(R: QuotientRing = None) -> list:
    from .linkverify import ring_variable_primes
    return ring_variable_primes(R or plane_pair())


def linked_corpus() -> list:
    """Modules over Gorenstein rings, each paired with its ring label."""
    out = []
    R1 = node()
    out += [cyclic(R1, "x"), cyclic(R1, "y"), residue_field(R1), ideal_module(R1, "x", "y", name="m")]
    R2 = plane_pair()
    k2 = residue_field(R2)
    out += [cyclic(R2, "x"), cyclic(R2, "y"), k2, ideal_module(R2, "x", "y", "z", name="m"),
            cyclic(R2, "x", "z"), syzygy(k2, 2)]
    R3 = polynomial3()
    k3 = residue_field(R3)
    out += [k3, ideal_module(R3, "x", "y", "z", name="m"), cyclic(R3, "x")]
    return out
