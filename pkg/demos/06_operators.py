# # Set-level operators on explicit families

from desire_kernel.model import Gamble, OptionSet
from desire_kernel.operators import (
    FiniteFamily,
    chull_contains,
    k3_combine,
    rn_transform,
    rp_contains,
    rs_contains,
    su_contains,
)

a, b = Gamble.of(1, -1), Gamble.of(-1, 1)
AB = OptionSet.of(a, b)

# ## Combining two desirable sets pairwise

coeffs = {(u, v): (1, 1) for u in AB for v in AB}
coeffs[(a, a)] = (1, 0)
print(k3_combine(AB, AB, coeffs))

# ## Removing non-positive options

K = FiniteFamily.of([[(-1, 0), (1, 1)]], 2)
for s in rn_transform(K):
    print("RN:", s)
print("su", su_contains(K, OptionSet.of((1, 1))), "rs", rs_contains(K, OptionSet.of((1, 1))))

# ## Removing positive combinations

print(rp_contains(FiniteFamily.of([[(-1, 1), (-2, 2)]], 2), OptionSet.of((-1, 1))))
print(chull_contains(OptionSet.of((1, 0), (0, 1)), Gamble.of(1, 1)))
