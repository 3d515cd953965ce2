# Quantum side: Dunkl operators, Jack polynomials, Baker-Akhiezer functions and S-matrices
