"""The exact coefficient table of the operator series.

Every term of the expansion is indexed by a word (n_1, ..., n_k) of
nonnegative integers, standing for the composition of curvature-derivative
operators of orders n_1 ... n_k.  The coefficient of a word is the exact
rational 1 / (prod n_j! * c), where c follows the suffix recurrence
c = |word| (|word| + 1) c(tail).

This script prints the table through degree 6 (thirteen terms), checks the
closed-form coefficients against the homogeneous recurrence, and shows the
Fibonacci-like growth of the number of words per degree.
"""

from dexpseries import (
    closed_form_series,
    denominator,
    recurrence_series,
    series_table,
    words_of_degree,
)

table = series_table(closed_form_series(6))
print(f"{'word':>12} {'degree':>6} {'coefficient':>14}")
for word, deg, coeff in table:
    label = "[" + ",".join(map(str, word)) + "]"
    print(f"{label:>12} {deg:>6} {str(coeff):>14}")
print(f"\n{len(table)} terms of degree <= 6")

# the worked example for the denominator recurrence:
# degree([2,0,1]) = 9, so c = 9*10 * 7*8 * 3*4 = 32400
print("\ndenominator of [2,0,1]:", denominator((2, 0, 1)))

# the two constructions of the series must agree term by term, exactly
for n in range(13):
    assert recurrence_series(n) == closed_form_series(n)
print("recurrence == closed form for every degree through 12 (exact rationals)")

counts = [len(words_of_degree(n)) for n in range(13)]
print("\nwords per degree 0..12:", counts)
print("cumulative:", sum(counts))
