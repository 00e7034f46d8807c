# sweeps/__init__.py
# This package runs theta sweeps over one-parameter state families and inspects the curves.
