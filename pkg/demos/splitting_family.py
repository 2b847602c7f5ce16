"""A sub-series member deforms into a parabolic point plus an A-type point."""

from singkit.catalog import splitting_family

for k, l, q, r in [(5, 4, 3, 3), (6, 4, 3, 3), (6, 5, 4, 2), (4, 4, 3, 3)]:
    fam = splitting_family(k, l, q, r)
    print(f"F = {fam.polynomial}")
    for t in (0, 1):
        rep = fam.fiber_report(t)
        print(f"  t = {t}: tau at 0 = {rep.origin_tau}, at (-t,0,0) = {rep.split_tau}, "
              f"whole fiber = {rep.total_tau}, tau(T_{k},{q},{r}) = {rep.expected_tau}")
