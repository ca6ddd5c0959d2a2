from .init import main  # noqa: F401
