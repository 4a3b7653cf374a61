# # Mixing entailment
#
# Under the mixing extension an option set is accepted as soon as some
# convex mixture of its members is desirable.

from desire_kernel import OptionSet, OptionSetAssessment, k_entails, k_entails_mixing

vacuous = OptionSetAssessment.of([], n=2)
B = OptionSet.of((-1, 2), (2, -1))

print("plain:", k_entails(vacuous, B).answer)
v = k_entails_mixing(vacuous, B)
print("mixing:", v.answer)

# The witness is the mixture weight mu and the cone decomposition of the mixed point.

w = v.certificate.branches[0].witness
print("mu =", [str(m) for m in w.mu], "point =", w.point(B))
