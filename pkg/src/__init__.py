"""Sample init file for src directory."""
