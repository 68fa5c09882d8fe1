"""Kernel selection: compiled extension if built, pure-Python otherwise."""

try:
    from percolab.kernels import _census as _impl

    BACKEND = "cython"
except ImportError:  # extension not built; correctness preserved, speed lost
    from percolab.kernels import fallback as _impl

    BACKEND = "python"

component_roots = _impl.component_roots
subset_scan = _impl.subset_scan
trial_census = _impl.trial_census
trial_stats = _impl.trial_stats

__all__ = ["BACKEND", "component_roots", "subset_scan", "trial_census", "trial_stats"]
