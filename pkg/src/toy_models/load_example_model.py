from fractions import Fraction

from ellstab.lattice import chern_class, surface_geometry

# Weierstraß fibrations over P¹ with K_X = (e - 2) f.
EXAMPLE_SURFACES = {
    "product": {"e": 0, "kx_f": -2},
    "rational": {"e": 1, "kx_f": -1},
    "k3": {"e": 2, "kx_f": 0},
}


def load_example_surface(surface_name):
    """Geometry and distinguished classes of an example surface.

    Args:
        surface_name (str): One of ``"product"``, ``"rational"`` and ``"k3"``.

    Returns:
        dict: ``"geometry"`` (SurfaceGeometry with ``m = e + 1``) and ``"classes"``,
            a dictionary with the skyscraper sheaf, the structure sheaf, the structure
            sheaf of a fiber and the structure sheaf of the section.

    """
    if surface_name not in EXAMPLE_SURFACES:
        raise ValueError(f"Surface {surface_name} not recognized.")

    data = EXAMPLE_SURFACES[surface_name]
    e = Fraction(data["e"])
    geometry = surface_geometry(e, e + 1, data["kx_f"])

    # ch(O_C) = (0, C, -C²/2): ch₂ vanishes on a fiber and is e/2 on the section.
    classes = {
        "skyscraper": chern_class(s=1),
        "structure_sheaf": chern_class(n=1),
        "fiber": chern_class(y=1),
        "section": chern_class(x=1, s=e / 2),
    }
    return {"geometry": geometry, "classes": classes}
