# Core error types for polymax
