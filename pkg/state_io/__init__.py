# state_io/__init__.py
# This package reads and writes JSON state files and sweep templates.
