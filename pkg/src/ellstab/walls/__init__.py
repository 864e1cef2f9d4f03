from ellstab.walls.candidates import candidate_classes  # noqa: F401
from ellstab.walls.correspondence import (  # noqa: F401
    boundedness_probe,
    correspondence_check,
)
from ellstab.walls.family import (  # noqa: F401
    FamilyKind,
    StabilityFamily,
    Wall,
    stability_family,
)
from ellstab.walls.find_walls import find_walls, weight_curves  # noqa: F401
