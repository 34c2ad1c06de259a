"""Identity suites and the runner behind ``spin-chebyshev verify``."""
