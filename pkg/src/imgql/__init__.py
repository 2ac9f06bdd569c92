"""Global spatial model checking of 2D raster images.

The logic operators work on boolean numpy images and return boolean images;
``imgql.dsl`` interprets ImgQL scripts on top of them.
"""

from .grid import Adjacency, GridDims

__version__ = "0.1.0"

__all__ = ["Adjacency", "GridDims", "__version__"]
