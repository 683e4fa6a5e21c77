# Utility modules for polymax
