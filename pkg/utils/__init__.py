# utils/__init__.py
# Shared helpers: error types, configuration, load-time normalization and output formatting.
