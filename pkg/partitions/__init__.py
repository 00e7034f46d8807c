# partitions/__init__.py
# k-partitions of subsystem indices and their Stirling-number counts.
