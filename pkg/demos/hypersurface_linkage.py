"""Walk through horizontal linkage over F_p[x,y]/(xy).

    python3 demos/hypersurface_linkage.py
"""

from __future__ import annotations

from modlink.corpus import cyclic, node, residue_field
from modlink.gbres import hilbert_dims, minimal_presentation
from modlink.linkverify import is_horizontally_linked
from modlink.modops import iso_probe, lambda_, syzygy, transpose


def show(label, M, window=(0, 4)):
    P = minimal_presentation(M)
    print(f"{label:12} generators in degrees {list(P.gens_twists)}, dims {hilbert_dims(P, window).values()}")


def main():
    R = node()
    Rx, Ry = cyclic(R, "x"), cyclic(R, "y")
    print(f"ring: {R}\n")
    show("R/(x)", Rx)
    show("syzygy", syzygy(Rx))
    show("transpose", transpose(Rx))
    show("lambda", lambda_(Rx))
    print("\nlambda(R/(x)) vs R/(y):", iso_probe(lambda_(Rx), Ry))
    print("lambda^2(R/(x)) vs R/(x):", iso_probe(lambda_(lambda_(Rx)), Rx))
    for M in (Rx, residue_field(R)):
        c = is_horizontally_linked(M)
        print(f"\n{M.name}: stable={c.stable}, Ext^1(Tr M, R)=0: {c.ext1_vanishes}, roundtrip {c.lambda_roundtrip}")


if __name__ == "__main__":
    main()
