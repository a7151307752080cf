"""
Approaching the sharp constant
==============================

The main weighted inequality

    (|Q - gamma| / p) ||f N^{-gamma/p}||_p^p
        <= ||Rf N^{-alpha}||_p * ||f N^{-beta/(p-1)}||_p^{p-1}

has sharp constant |Q - gamma|/p, attained in the limit by profiles that
solve g' = -c_s r^{lam-1} g.  Truncating that profile to an annulus
[eps, r_out] gives an admissible field whose quotient sits *above* the
sharp constant and descends toward it as the annulus widens.  This script
watches the descent on two groups.
"""

from hgineq import default_norm, parse_group, sharpness_scan

for name in ("r:3", "heis1"):
    group = parse_group(name)
    norm = default_norm(group)

    # p = 2, alpha = 0, beta = 1 -> gamma = 2.  On R^3 the target is
    # |3 - 2| / 2 = 0.5; on the Heisenberg group |4 - 2| / 2 = 1.0.
    scan = sharpness_scan(group, norm, p=2.0, alpha=0.0, beta=1.0)
    print(f"{name}: target |Q - gamma|/p = {scan.target:g}")
    for entry in scan.entries:
        if entry.get("attained") is None:
            print(f"  [{entry['eps']:8.0e}, {entry['r_out']:8.0e}]  "
                  f"skipped: {entry['skipped']}")
        else:
            print(f"  [{entry['eps']:8.0e}, {entry['r_out']:8.0e}]  "
                  f"attained {entry['attained']:.10f}   gap {entry['gap']:+.3e}")
    print(f"  best gap: {scan.best_gap:.4%}\n")

# beta = p - 1 - alpha(p-1) would put us on the exponential branch; with
# alpha = beta = 0 the extremizer is exp(-r), and convergence is far
# faster than the power branch's 1/log(r_out/eps) law.
group = parse_group("r:3")
norm = default_norm(group)
scan = sharpness_scan(group, norm, p=2.0, alpha=0.0, beta=0.0,
                      schedule=[(1e-1, 1e1), (1e-2, 1e2), (1e-4, 1e4)])
print(f"r:3 exponential branch, target {scan.target:g}")
for entry in scan.entries:
    print(f"  [{entry['eps']:8.0e}, {entry['r_out']:8.0e}]  "
          f"attained {entry['attained']:.12f}")
