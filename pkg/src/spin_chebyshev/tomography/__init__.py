"""Phase-space distributions and tomographic reconstruction."""
