# Kobayashi-Luebke-type inequalities and their equality cases.
#
# For Hermite-Einstein curvature data the classical pointwise inequality
# bounds (r-1)c_1^2 - 2r c_2 against zero; the Segre-form version bounds
# s_2 ^ omega^{n-2} by lambda^2 r(r+1)/(2n^2) omega^n.  Equality in the
# first means projective flatness, in the second the stronger condition
# that the curvature is an omega-multiple of the identity.

import numpy as np

import segreform as sf

n, r, lam = 2, 2, 0.8
w = sf.Kaehler11.euclidean(n)

t = sf.project_to_he(sf.random_curvature(n, r, seed=21), w, lam)
he, slope = sf.is_hermite_einstein(t, w)
print("Hermite-Einstein:", he, " slope:", round(slope, 12))

print("\nclassical check:", sf.kl_classical(t, w))
out = sf.kl_segre(t, w)
print("Segre-form check:", {k: round(v, 6) if isinstance(v, float) else v
                            for k, v in out.items()})

# the same margin assembled independently through c_1 = eta + f omega
alt = sf.kl_segre_margin_primitive(t, w)
print("primitive-path margin:", round(alt["margin"], 6),
      " (direct:", round(out["margin"], 6), ")")

# equality families ------------------------------------------------------
strong = sf.strong_flat_tensor(n, r, w, lam)
print("\nomega-proportional instance:", sf.kl_segre(strong, w))
print("flatness:", sf.flatness_detectors(strong, w))

flat = sf.projectively_flat_tensor(n, r, seed=5, w=w, lam=lam)
print("\nbeta-tensor-identity instance:")
print("  classical:", sf.kl_classical(flat, w))         # equality fires
print("  Segre-form margin:", round(sf.kl_segre(flat, w)["margin"], 6), "(strict)")
print("  flatness:", sf.flatness_detectors(flat, w))
print("  bound for flat instances:", sf.projective_flat_bound(flat, w))

# directional bound behind the proof: gamma_2 of the directional form
v = np.array([1.0, 1.0j])
print("\ndirectional bound:", sf.gamma2_bound(t, w, v))

# surface comparison of the two bounds (n = 2)
print("\nsurface comparison:", sf.surface_compare(t, w))

# rescaling omega rescales the slope inversely and changes no verdicts
he2, slope2 = sf.is_hermite_einstein(t, 2.0 * w)
print("\nslope under omega -> 2 omega:", round(slope2, 12))
