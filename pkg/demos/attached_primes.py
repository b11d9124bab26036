"""Serre conditions against attached primes, on the maximal ideal of F_p[x,y,z]/(xy).

The maximal ideal has depth 1 in a ring of dimension 2, so it fails S~_2
exactly at the maximal ideal; that prime shows up as the attached prime of
the first local cohomology of its linked module.

    python3 demos/attached_primes.py
"""

from __future__ import annotations

from modlink.cohatt import att_local_cohomology, cohomology_table
from modlink.corpus import ideal_module, plane_pair
from modlink.linkverify import ring_variable_primes, verify_cor_5_3, verify_thm_3_3, verify_thm_3_12
from modlink.modops import lambda_


def main():
    R = plane_pair()
    P = ring_variable_primes(R)
    m = ideal_module(R, "x", "y", "z", name="m")
    L = lambda_(m)
    print("local cohomology of m:")
    print(cohomology_table(m, (-3, 3)))
    print("local cohomology of lambda m:")
    print(cohomology_table(L, (-3, 3)))
    print("\n", att_local_cohomology(L, 1))
    for v in (verify_thm_3_3(m, P, 2, P), verify_thm_3_12(m, P), verify_cor_5_3(m, 2, P)):
        print(f"\n{v}")
        for k, s in v.sides.items():
            print(f"   {k}: {s}")


if __name__ == "__main__":
    main()
