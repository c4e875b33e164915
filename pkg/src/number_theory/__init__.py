# Congruences, counterexample witnesses and diagonal ratios.
