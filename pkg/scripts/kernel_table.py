"""Tabulate Belyi points per sample shift and compare kernel-side with contiguity-side R0."""
from hypgamma.admissibility import find_quadruple
from hypgamma.algebra import number_field
from hypgamma.catalog import load_catalog
from hypgamma.contiguity import shift_relation, substitute_line
from hypgamma.kernel import belyi_z0, r0_from_kernel


def main():
    seen = {}
    for e in load_catalog():
        if e.source != "sample" or e.shift is None:
            continue
        pts = seen.setdefault(e.shift, belyi_z0(e.shift))
        hit = [p for p in pts if p.z0 == e.z0]
        q = find_quadruple(e.shift, e.offsets, e.z0)
        K = number_field([q.z0, *q.offsets])
        R, _ = substitute_line(shift_relation(q.gamma), q.offsets, q.gamma, z0=q.z0, K=K)
        rc = R.leading_ratio()
        rk = r0_from_kernel(e.shift, hit[0].z0, hit[0].x1) if hit else None
        print(f"{str(e.shift):12s} z0={e.z0.to_text():24s} belyi={'yes' if hit else 'NO ':3s} "
              f"R0(contiguity)={rc.to_text():20s} R0(kernel)={rk.to_text() if rk else '-'}")
    for g, pts in sorted(seen.items()):
        print(f"{g}: candidates {[p.z0.to_text() for p in pts]}")


if __name__ == "__main__":
    main()
