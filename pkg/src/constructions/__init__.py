# Extremal polygon constructions
