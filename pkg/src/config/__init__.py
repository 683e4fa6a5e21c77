# Configuration modules for polymax
