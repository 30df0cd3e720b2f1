// Error types shared by the whole library.
#pragma once

#include <stdexcept>
#include <string>

namespace arrange {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Algebra
struct DimensionMismatch : Error { using Error::Error; };
struct CoefficientOverflow : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };

// Model
struct DegenerateEdge : Error { using Error::Error; };
struct OpenChain : Error { using Error::Error; };
struct NonPlanarFace : Error { using Error::Error; };

// Arrangement
struct EmptyArrangement : Error { using Error::Error; };
struct DegenerateGeometry : Error { using Error::Error; };
struct NonManifoldInput : Error { using Error::Error; };
struct NonTerminating : Error { using Error::Error; };
struct ToleranceCollision : Error { using Error::Error; };
struct AmbiguousOuter : Error { using Error::Error; };
struct PointOnBoundary : Error { using Error::Error; };
struct ContainerNotFound : Error { using Error::Error; };

// I/O
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };

}  // namespace arrange
