"""Matrix representations of spin operators."""
