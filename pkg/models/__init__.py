# Domain models: angular algebra, radial functions, states, potentials, shifts and the quadrature oracle
