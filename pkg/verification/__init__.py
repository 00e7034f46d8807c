# verification/__init__.py
# This package holds the seeded property suites behind the verify command.
