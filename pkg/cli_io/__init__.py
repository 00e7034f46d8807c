# cli_io/__init__.py
# This package holds the command-line surface.
