from .checks import gradient_check
from .quadrature import PolygonQuadrature, polygon_quadrature, segment_quadrature
from .serendipity import serendipity
from .wachspress import BasisEval, wachspress

__all__ = [
    "BasisEval",
    "PolygonQuadrature",
    "wachspress",
    "serendipity",
    "polygon_quadrature",
    "segment_quadrature",
    "gradient_check",
]
