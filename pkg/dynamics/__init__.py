# Classical flows: Hamiltonians, the adaptive integrator and Poisson brackets
