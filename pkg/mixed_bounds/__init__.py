# mixed_bounds/__init__.py
# Convex-roof upper bounds for mixed states and the lower-bound relations between measure families.
