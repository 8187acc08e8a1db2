try:
    from .version import version as __version__
except ImportError:  # not installed
    __version__ = 'unknown'
