"""The loss kernels and the hard/semi-hard/easy negative taxonomy.

Places words at controlled angles so every distance is easy to read, then
evaluates each hinge and classifies candidate negatives against a margin.
"""

import numpy as np

from lexfit import (
    EmbeddingStore,
    asymmetric_norm_loss,
    classify_negative,
    contrastive_loss,
    distance,
    preservation_loss,
    quadruplet_hierarchy_loss,
    triplet_attract_loss,
)

def at_angle(deg, norm=1.0):
    theta = np.deg2rad(deg)
    return [norm * np.cos(theta), norm * np.sin(theta)]

# anchor at 0 deg; synonym, hypernym, and negatives fan out from it
words = ["anchor", "synonym", "hypernym", "neg_near", "neg_mid", "neg_far"]
store = EmbeddingStore(
    words, [at_angle(0), at_angle(10), at_angle(35), at_angle(20), at_angle(70), at_angle(160)]
)
D = lambda a, b: distance(store.current[store.row_of(a)], store.current[store.row_of(b)])

print("distances from the anchor:")
for w in words[1:]:
    print(f"  D(anchor, {w:8s}) = {D('anchor', w):.3f}")

print("\ntriplet attract (margin 0.9): pull synonym in, push each negative out")
res = triplet_attract_loss(0, 1, [3, 4, 5], 0.9, store)
print(f"  loss {res.loss:.3f}, active hinges {res.n_active}/{res.n_hinges}, "
      f"gradient rows {sorted(res.grads)}")

print("\nquadruplet (margins 0.001 / 0.6): synonym closer than hypernym, both inside negatives")
res = quadruplet_hierarchy_loss(0, 1, 2, [4], 0.001, 0.6, store)
print(f"  loss {res.loss:.3f}, active hinges {res.n_active}/{res.n_hinges}")

print("\ncontrastive on a dissimilar pair (margin 0.9): active only inside the margin")
for neg in ("neg_near", "neg_far"):
    res = contrastive_loss(0, store.row_of(neg), 0, 0.9, store)
    print(f"  vs {neg:8s}: loss {res.loss:.3f}")

print("\nnorm-asymmetry hinge: fires only while the hyponym is the longer vector")
tall = EmbeddingStore(["hypo", "hyper"], [at_angle(0, norm=3.0), at_angle(5, norm=1.0)])
res = asymmetric_norm_loss(0, 1, 1.0, tall)
print(f"  norms (3.0, 1.0): loss {res.loss:.3f}")
res = asymmetric_norm_loss(1, 0, 1.0, tall)
print(f"  norms (1.0, 3.0): loss {res.loss:.3f}")

print("\npreservation is zero until vectors move:")
print(f"  at load time: loss {preservation_loss([0, 1], store, 0.001).loss}")
store.current[1] = at_angle(90)
print(f"  after rotating one row to orthogonal: "
      f"loss {preservation_loss([0, 1], store, 0.001).loss:.4f}")
store.current[1] = at_angle(10)

print("\nnegative taxonomy against positive at 10 deg (D=0.015), margin 0.9:")
for cand in ("neg_near", "neg_mid", "neg_far"):
    kind = classify_negative(0, 1, store.row_of(cand), 0.9, store)
    print(f"  {cand:8s} (D={D('anchor', cand):.3f}) -> {kind}")
