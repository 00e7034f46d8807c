# measures/__init__.py
# Per-cut concurrences, the five hierarchical measure families and their closed forms.
