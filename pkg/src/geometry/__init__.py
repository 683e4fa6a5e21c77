# Exact geometry: rationals, predicates and polygon operations
