#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vem3 {

using Point = Eigen::Vector3d;
using Point2 = Eigen::Vector2d;

/// Vertex index into PolyhedralMesh::nodes (0-based).
using VertexId = std::size_t;

/// A face is an ordered vertex loop, counterclockwise seen from the element interior.
using Face = std::vector<VertexId>;

/// An element is its list of faces.
using Element = std::vector<Face>;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: configuration strings, presets, malformed mesh files.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Structurally invalid mesh (bad indices, open surfaces, non-manifold faces).
class MeshError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Failures that arise while computing: degenerate geometry, singular systems.
class NumericalError : public Error {
public:
    using Error::Error;
};

class GeometryError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SolverError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Coordinates of the listed vertices, in order.
inline std::vector<Point> gather(const std::vector<Point>& nodes, const Face& face)
{
    std::vector<Point> out;
    out.reserve(face.size());
    for (VertexId v : face) out.push_back(nodes[v]);
    return out;
}

} // namespace vem3
