"""Coamoeba and zonotope chains of real lines in projective space.

Builds the two chains exactly (integer pi-unit lattice data), verifies
that their sum is a cycle, computes its homology class, pushes everything
to the 2-torus through a planar vector configuration, and cross-checks
the resulting covering degrees with independent winding-number oracles.
"""

from .chain_builder import (
    CoamoebaSkeleton,
    CycleReport,
    EdgeChain,
    HomologyClass2,
    Triangle,
    TriangleChain,
    ZonotopePath,
    block_vectors,
    chain_boundary,
    coamoeba_boundary,
    coamoeba_vertices,
    homology_class,
    verify_cycle,
    zonotope_chain,
    zonotope_path,
)
from .degree_oracle import (
    ClosedPolygon2,
    SampleReport,
    TorusPoint2,
    boundary_polygons,
    class_oracle_2d,
    coamoeba_degree,
    cover_degree_triangles,
    cover_multiplicity_triangles,
    cycle_degree,
    pushed_zonotope_chain,
    random_generic_theta,
    sample_coamoeba,
    torus_degree_polygon,
    torus_degree_triangles,
    winding_number,
)
from .gale_plane import (
    BConfig,
    GaleDualA,
    PlanarPathImage,
    Pushforward,
    ZonotopeB,
    aligned_vectors,
    d_b,
    d_b_chamber,
    gale_dual,
    minkowski_vertices_bruteforce,
    normalized_volume,
    push_class,
    pushforward_chain,
    pushforward_for,
    pushforward_path,
    validate_bconfig,
    zonotope_b,
)
from .line_model import (
    INFINITY,
    AffineForm,
    AffineLine,
    Block,
    line_from_bconfig,
    line_from_forms,
    sign_at_minus_infinity,
    zero_of_form,
)
from .render import RenderOptions, multiplicity_grid, render_cover, render_torus

__version__ = "0.1.0"
