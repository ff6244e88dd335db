"""Network reliability loss under periodic demand."""

try:
    # installed wheel layout: the extension lives inside the package
    from . import _periloss as _ext
except ImportError:
    # dev layout: the extension sits on PYTHONPATH in the build tree
    import _periloss as _ext

ConfigError = _ext.ConfigError
DataError = _ext.DataError
__version__ = _ext.__version__
availability = _ext.availability
delta = _ext.delta
fit_tickets = _ext.fit_tickets
fourier_bound = _ext.fourier_bound
loss_limit = _ext.loss_limit
single_cell_study = _ext.single_cell_study
wrapped_sup_distance = _ext.wrapped_sup_distance
write_ticket_fixture = _ext.write_ticket_fixture

__all__ = [
    "ConfigError",
    "DataError",
    "__version__",
    "availability",
    "delta",
    "fit_tickets",
    "fourier_bound",
    "loss_limit",
    "single_cell_study",
    "wrapped_sup_distance",
    "write_ticket_fixture",
]
