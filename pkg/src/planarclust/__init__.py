"""Clustered 3-colouring of planar graphs with separator and treewidth tools."""

from .errors import PreconditionError
from .peel import PeelReport, peel_low_treewidth, peel_threshold
from .pipeline import (Colouring, PipelineParams, face_weights_from_separator,
                       lmst_three_colour, three_colour, two_colour,
                       verify_clustering)
from .plane import (Face, FaceWeighting, GraphStructureError, PlaneGraph,
                    components, incident_faces, induced_subgraph, trace_faces,
                    validate, weight_sum)
from .separators import (Noose, SeparatorResult, balanced_cycle_separator,
                         low_tw_q_separator, minimalize_q_separator,
                         noose_separator, q_separator, triangulate,
                         vertex_balanced_separator)
from .treewidth import (TreeDecomposition, gm_exact_small,
                        grid_minor_exact_small, td_q_separator, tw_exact_small,
                        tw_upper_bound, tw_weight_bound, validate_td)

__version__ = "0.1.0"
