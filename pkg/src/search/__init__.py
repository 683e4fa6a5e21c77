# Exhaustive and randomized search oracles
