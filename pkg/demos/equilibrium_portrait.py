"""Walk through the equilibrium structure of the harvested system.

The predator equation factors as s*y*(1 - y/x)*(y - m), so every
equilibrium sits on one of three lines: the prey axis (predator extinct),
the horizontal line y = m (population pinned at the Allee threshold), and
the diagonal y = x (predator at its prey-proportional capacity).  Each
line carries a quadratic in x, so the whole portrait is closed form.
"""
import allee_lab as al

SCENARIOS = [
    ("light harvest", al.ModelParams(q=1.0, s=1.0, h=0.05, m=0.2)),
    ("moderate harvest", al.ModelParams(q=1.0, s=1.0, h=0.15, m=0.2)),
    ("boundary fold (h = 1/4)", al.ModelParams(q=1.0, s=1.0, h=0.25, m=0.2)),
    ("collision at (m, m)", al.ModelParams(q=1.0, s=1.0, h=0.12, m=0.2)),
    ("cusp configuration", al.cusp_base_params(1.0, 0.1)),
]

for title, p in SCENARIOS:
    print(f"\n=== {title}:  q={p.q:g} s={p.s:g} h={p.h:g} m={p.m:g}")
    t = al.thresholds(p)
    print(f"    fold harvests: boundary {t.h2:g}, diagonal {t.h3:g}; "
          f"collision harvest h1 = {t.h1:g}")
    portrait = al.full_portrait(p)
    if not portrait:
        print("    no equilibria in the admissible region")
        continue
    for e in portrait:
        lam = ", ".join(f"{z.real:+.4f}{z.imag:+.4f}j" for z in e.eigenvalues)
        print(f"    {e.label:6s} ({e.x:.4f}, {e.y:.4f})  {e.classification.value:12s} "
              f"eigenvalues [{lam}]")
