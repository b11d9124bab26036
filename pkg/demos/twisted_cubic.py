"""A non-Gorenstein example: the cone over the twisted cubic.

Its canonical module is the ideal (a, b).  The ideal (a, b, c) is a maximal
Cohen-Macaulay module whose linked module is not Cohen-Macaulay, and the
depth of M/cM predicts this.

    python3 demos/twisted_cubic.py
"""

from __future__ import annotations

from modlink.cohatt import canonical_module
from modlink.corpus import ideal_module, twisted_cubic
from modlink.homlat import depth_profile
from modlink.linkverify import verify_thm_B
from modlink.modops import iso_probe, lambda_


def main():
    R = twisted_cubic()
    w = canonical_module(R)
    print("omega vs (a,b):", iso_probe(w, ideal_module(R, "a", "b")))
    cubic = [str(g) for g in R.defining_ideal]
    for gens in (("a", "b"), ("a", "b", "c")):
        M = ideal_module(R, *gens)
        L = lambda_(M)
        print(f"\nM = ({','.join(gens)}): {depth_profile(M)}")
        print(f"lambda M: {depth_profile(L)}")
        v = verify_thm_B(M.over_ambient(), L.over_ambient(), cubic, cubic + ["a", "b"])
        print(v, v.sides, v.evidence)


if __name__ == "__main__":
    main()
