# # Exact simplex over the rationals
#
# Every query in the package bottoms out in a linear program solved with
# Fractions.  This script walks through the three possible outcomes and
# the infeasibility certificate that comes with a refusal.

from fractions import Fraction

from desire_kernel.lp import LinearProgram, check_farkas, check_solution, lp_solve

# ## A bounded program
#
# maximise 3x + 2y subject to x + y <= 4 and x + 3y <= 6.

lp = LinearProgram.build([3, 2], [[1, 1], [1, 3]], ["<=", "<="], [4, 6])
out = lp_solve(lp)
print(out.status.value, out.value, out.x)
assert check_solution(lp, out.x)

# Thirds stay thirds.

lp = LinearProgram.build([1], [[3]], ["<="], [1])
print(lp_solve(lp).value)  # 1/3, not 0.333...

# ## Infeasible: the outcome carries a Farkas vector

lp = LinearProgram.build([1, 1], [[1, 1], [1, 1]], ["<=", ">="], [1, 2])
out = lp_solve(lp)
print(out.status.value, "farkas y =", [str(y) for y in out.farkas])
print("certificate checks:", check_farkas(lp, out.farkas))

# ## Unbounded

print(lp_solve(LinearProgram.build([1, -1], [[1, -1]], [">="], [0])).status.value)

# ## Degenerate programs terminate
#
# Beale's classical cycling example: the textbook largest-coefficient rule
# cycles forever, the smallest-index rule used here does not.

q = Fraction
lp = LinearProgram.build(
    [q(3, 4), -20, q(1, 2), -6],
    [[q(1, 4), -8, -1, 9], [q(1, 2), -12, q(-1, 2), 3], [0, 0, 1, 0]],
    ["<=", "<=", "<="],
    [0, 0, 1],
)
out = lp_solve(lp)
print("value", out.value, "after", out.pivots, "pivots")
