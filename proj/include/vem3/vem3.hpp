#pragma once

#include "vem3/core.hpp"
#include "vem3/polygon3.hpp"
#include "vem3/mesh.hpp"
#include "vem3/local_frame.hpp"
#include "vem3/geometry.hpp"
#include "vem3/quadrature.hpp"
#include "vem3/face_projection.hpp"
#include "vem3/pde.hpp"
#include "vem3/element_assembly.hpp"
#include "vem3/boundary.hpp"
#include "vem3/solver.hpp"
#include "vem3/error_norms.hpp"
#include "vem3/poisson.hpp"
#include "vem3/svg_plot.hpp"
#include "vem3/study.hpp"
