"""Kernel for finitely presented semistrict higher categories.

Diagrams are encoded as zigzags: a diagram of dimension n is a list of
cospans of (n-1)-dimensional rewrites over a source (n-1)-diagram.
The package provides construction (globes, attachment), homotopy moves
(contraction and expansion), typechecking, layout, geometry and export,
plus a replayable workspace, a CLI and an HTTP service.
"""

from .interner import Interner, current_interner, set_interner
from .diagram import (
    KernelError,
    ApplicationError,
    CompositionError,
    Generator,
    Cospan,
    Cone,
    Identity0,
    Atom0,
    RewriteN,
    Diagram0,
    DiagramN,
    mk_generator,
    mk_identity0,
    mk_atom0,
    mk_cospan,
    mk_cone,
    mk_rewriten,
    mk_diagram0,
    mk_diagramn,
    identity_rewrite,
    identity_diagram,
    is_identity_rewrite,
    rewrite_dimension,
    diagram_dimension,
    forward_apply,
    backward_apply,
    all_slices,
    regular_slices,
    singular_slices,
    regular_slice,
    singular_slice,
    diagram_source,
    diagram_target,
    check_diagram,
)
from .compose import compose, check_rewrite, strip_frames, strip_diagram
from .globe import BoundaryError, make_globe, attach, reflect
from .explode import Edge, ExplosionGraph, explode, visible_generator, project_generators
from .embed import Embedding, find_embeddings, filter_embeddings, extract_embedding
from .collapse import (
    CollapseError,
    Collapsed,
    QuotientGraph,
    collapse,
    framing,
    canonical_form,
    quotients_equal,
)
from .homotopy import ContractionError, ExpansionError, colimit, contract, expand
from .signature import (
    SignatureError,
    SignatureEntry,
    Signature,
    DEFAULT_COLORS,
    SHAPES,
)
from .typecheck import (
    IllTypedError,
    format_location,
    atomic_pieces,
    canonical_neighbourhood,
    typecheck,
    is_well_typed,
)
from .simplex import SolverError, InfeasibleError, UnboundedError, solve_lp
from .layout import (
    LayoutRangeError,
    LayoutVar,
    LinearProgram,
    Layout,
    build_constraints,
    solve,
    layout,
)
from .geometry import (
    GeometryError,
    Cube,
    Simplex,
    Geometry,
    mesh,
    subdivide,
    cube_to_simplices,
    simplex_volume,
    cube_volume,
    slice_4d,
    face_incidence,
)
from .render import RenderError, emit_svg, emit_tikz, emit_stl, scene_elements
from .workspace import (
    WorkspaceError,
    ReplayError,
    ParseError,
    ViewPath,
    Workspace,
    parse_view_path,
    default_view,
    resolve_view,
    expand_crossing,
    replay,
    dump_log,
    parse_log,
    save_workspace,
    load_workspace,
    action_to_json,
    action_from_json,
)

__all__ = [
    "Interner",
    "current_interner",
    "set_interner",
    "KernelError",
    "ApplicationError",
    "CompositionError",
    "Generator",
    "Cospan",
    "Cone",
    "Identity0",
    "Atom0",
    "RewriteN",
    "Diagram0",
    "DiagramN",
    "mk_generator",
    "mk_identity0",
    "mk_atom0",
    "mk_cospan",
    "mk_cone",
    "mk_rewriten",
    "mk_diagram0",
    "mk_diagramn",
    "identity_rewrite",
    "identity_diagram",
    "is_identity_rewrite",
    "rewrite_dimension",
    "diagram_dimension",
    "forward_apply",
    "backward_apply",
    "all_slices",
    "regular_slices",
    "singular_slices",
    "regular_slice",
    "singular_slice",
    "diagram_source",
    "diagram_target",
    "check_diagram",
    "compose",
    "check_rewrite",
    "strip_frames",
    "strip_diagram",
    "BoundaryError",
    "make_globe",
    "attach",
    "reflect",
    "Edge",
    "ExplosionGraph",
    "explode",
    "visible_generator",
    "project_generators",
    "Embedding",
    "find_embeddings",
    "filter_embeddings",
    "extract_embedding",
    "CollapseError",
    "Collapsed",
    "QuotientGraph",
    "collapse",
    "framing",
    "canonical_form",
    "quotients_equal",
    "ContractionError",
    "ExpansionError",
    "colimit",
    "contract",
    "expand",
    "SignatureError",
    "SignatureEntry",
    "Signature",
    "DEFAULT_COLORS",
    "SHAPES",
    "IllTypedError",
    "format_location",
    "atomic_pieces",
    "canonical_neighbourhood",
    "typecheck",
    "is_well_typed",
    "SolverError",
    "InfeasibleError",
    "UnboundedError",
    "solve_lp",
    "LayoutRangeError",
    "LayoutVar",
    "LinearProgram",
    "Layout",
    "build_constraints",
    "solve",
    "layout",
    "GeometryError",
    "Cube",
    "Simplex",
    "Geometry",
    "mesh",
    "subdivide",
    "cube_to_simplices",
    "simplex_volume",
    "cube_volume",
    "slice_4d",
    "face_incidence",
    "RenderError",
    "emit_svg",
    "emit_tikz",
    "emit_stl",
    "scene_elements",
    "WorkspaceError",
    "ReplayError",
    "ParseError",
    "ViewPath",
    "Workspace",
    "parse_view_path",
    "default_view",
    "resolve_view",
    "expand_crossing",
    "replay",
    "dump_log",
    "parse_log",
    "save_workspace",
    "load_workspace",
    "action_to_json",
    "action_from_json",
]
