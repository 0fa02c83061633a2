"""Instance files, fixtures, random generation, and the command line."""
