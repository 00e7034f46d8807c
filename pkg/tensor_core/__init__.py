# tensor_core/__init__.py
# Dense pure/mixed multipartite states, partial traces, Schmidt spectra and subsystem permutations.
