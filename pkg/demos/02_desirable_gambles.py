# # Desirable gambles and lower previsions
#
# Two states, one assessed gamble g = (-1, 2): lose 1 if x1, win 2 if x2.
# Together with every non-negative non-zero gamble it generates a cone of
# desirable gambles.

from desire_kernel import (
    CredalSet,
    DesirabilityModel,
    Gamble,
    GambleAssessment,
    OptionSet,
    cone_contains,
    d_maximality_choice,
    lower_prevision,
)
from desire_kernel.desirability import envelope_from_strict, strict_desirable_under_lowprev

G = Gamble.of
gens = GambleAssessment.of([(-1, 2)])

# ## Membership, with a witness
#
# (-2, 4) is twice the generator; (1, 0) is a background positive; (-1, 1)
# would need lambda >= 1 and lambda <= 1/2 at once.

for f in (G(-2, 4), G(1, 0), G(-1, 1)):
    w = cone_contains(gens, f)
    print(f, "->", w.to_json() if w else "not desirable")

# ## Lower previsions
#
# The supremum price mu at which f - mu stays desirable.

for f in (G(0, 1), G(1, 0)):
    print("P", f, "=", lower_prevision(gens, f))

# Cancelling generators put zero in the cone: the supremum is unbounded.

print(lower_prevision(GambleAssessment.of([(1, -1), (-1, 1)]), G(0, 1)))

# ## Maximality
#
# (-1, 2) beats (0, 0) because their difference is a generator.

model = DesirabilityModel(gens)
print(d_maximality_choice(model, OptionSet.of((0, 0), (-1, 2))))

# ## Credal sets and their lower envelope
#
# The envelope can be read off the strict predicate "P(f) > 0" alone.

m = CredalSet.of([("1/3", "2/3"), ("3/4", "1/4")])
f = G("1/2", -3)
print("strictly desirable:", strict_desirable_under_lowprev(m, f))
print("envelope from predicate:", envelope_from_strict(m, f), "vertex minimum:", m.lower(f))
