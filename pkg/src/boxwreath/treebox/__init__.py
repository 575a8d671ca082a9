from .ball import (
    BALL_VERTEX_CAP,
    LegalColouring,
    TreeBall,
    ball_from_json,
    ball_to_json,
    build_ball,
    is_legal,
    legal_colouring,
    legality_problems,
    random_legal_colouring,
)
from .universal import *  # noqa: F401,F403
from .universal import __all__ as _universal_all

__all__ = [
    "BALL_VERTEX_CAP",
    "LegalColouring",
    "TreeBall",
    "ball_from_json",
    "ball_to_json",
    "build_ball",
    "is_legal",
    "legal_colouring",
    "legality_problems",
    "random_legal_colouring",
] + list(_universal_all)
