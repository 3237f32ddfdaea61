from .settings import DensitySettings

__all__ = ["DensitySettings"]
