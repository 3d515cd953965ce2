# Exact sparse polynomial arithmetic over Gaussian rationals
