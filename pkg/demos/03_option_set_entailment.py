# # Entailment for sets of desirable option sets
#
# Asserting the option set {a, b} desirable means: at least one of a, b is.
# With a = (1, -1) and b = (-1, 1) neither is desirable on its own, but
# consequences follow.

import json

from desire_kernel import (
    Gamble,
    OptionSet,
    OptionSetAssessment,
    k_consistent,
    k_entails,
    verify_certificate,
)

a, b = Gamble.of(1, -1), Gamble.of(-1, 1)
A = OptionSetAssessment.of([[a, b]])

# ## Consistency

print("consistent:", k_consistent(A).answer)
print("both as singletons:", k_consistent(OptionSetAssessment.of([[a], [b]])).answer)

# ## {a, a+b, 2b} is entailed
#
# The certificate has one branch per way of choosing the desirable member.

B = OptionSet.of(a, a + b, 2 * b)
v = k_entails(A, B)
print(v.answer)
print(json.dumps(v.certificate.to_json(), indent=1))
print("re-verified:", verify_certificate(A, B, v.certificate))

# ## {0} is not
#
# The refusal names a selection whose generated cone meets every assessed set
# and misses the query.

v = k_entails(A, OptionSet.of((0, 0)))
print(v.answer, v.certificate.to_json())
print("re-verified:", verify_certificate(A, OptionSet.of((0, 0)), v.certificate))
