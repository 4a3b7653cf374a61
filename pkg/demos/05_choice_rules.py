# # Choice and rejection
#
# An option u is rejected from S when S - u (dropping the zero) is entailed.

from desire_kernel import (
    CredalSet,
    Gamble,
    OptionSet,
    OptionSetAssessment,
    arch_margin,
    choice_set,
    d_maximality_choice,
    e_admissible_choice,
    reject_set,
    totality_query,
)

A = OptionSetAssessment.of([[(1, -1), (-1, 1)]])
S = OptionSet.of((0, 0), (1, -1), (-1, 1))
print("rejected:", reject_set(A, S), "chosen:", choice_set(A, S))

# ## Credal decision rules
#
# E-admissible options maximise expectation for some prevision; maximal
# options are undominated under the lower envelope.  The hedge (2/5, 2/5)
# is never dominated, yet no single prevision ranks it first.

M = CredalSet.of([(1, 0), (0, 1)])
T = OptionSet.of((1, 0), (0, 1), ("2/5", "2/5"), ("-1/2", "-1/2"))
print("E-admissible:", e_admissible_choice(M, T))
print("maximal:     ", d_maximality_choice(M, T))

# ## Archimedean margin
#
# How far can (1, 1) be shifted down and stay entailed?  Up to 1, not including it.

m = arch_margin(OptionSetAssessment.of([], n=2), OptionSet.of((1, 1)))
print("margin", m.value, "attained" if m.attained else "not attained")

# ## Totality on a gamble

print("total on (1,-1):", totality_query(A, Gamble.of(1, -1)).answer)
